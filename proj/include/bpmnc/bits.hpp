#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bpmnc {

// Fixed-width bit array backed by 64-bit limbs. Bit 0 is the least
// significant bit of limb 0, so a width-256 value reads like an EVM word.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t width) : width_(width), limbs_((width + 63) / 64, 0) {}

  static Bits from_u64(std::size_t width, std::uint64_t value) {
    Bits b(width);
    if (!b.limbs_.empty()) b.limbs_[0] = value;
    b.trim();
    return b;
  }

  // Parses "0x..." (or bare) hexadecimal. Throws std::invalid_argument.
  static Bits from_hex(std::size_t width, std::string_view hex);

  std::size_t width() const noexcept { return width_; }

  bool test(std::size_t i) const noexcept {
    return i < width_ && ((limbs_[i / 64] >> (i % 64)) & 1U);
  }
  void set(std::size_t i, bool v = true) noexcept {
    if (i >= width_) return;
    if (v)
      limbs_[i / 64] |= (std::uint64_t{1} << (i % 64));
    else
      limbs_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }
  void reset(std::size_t i) noexcept { set(i, false); }

  bool any() const noexcept {
    return std::any_of(limbs_.begin(), limbs_.end(), [](auto l) { return l != 0; });
  }
  bool none() const noexcept { return !any(); }
  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto l : limbs_) n += static_cast<std::size_t>(__builtin_popcountll(l));
    return n;
  }
  // Highest set bit + 1; 0 when empty.
  std::size_t bit_length() const noexcept {
    for (std::size_t i = limbs_.size(); i-- > 0;)
      if (limbs_[i]) return i * 64 + 64 - static_cast<std::size_t>(__builtin_clzll(limbs_[i]));
    return 0;
  }

  // True when every bit of `mask` is also set here.
  bool contains(const Bits& mask) const noexcept {
    for (std::size_t i = 0; i < limbs_.size() && i < mask.limbs_.size(); ++i)
      if ((limbs_[i] & mask.limbs_[i]) != mask.limbs_[i]) return false;
    for (std::size_t i = limbs_.size(); i < mask.limbs_.size(); ++i)
      if (mask.limbs_[i]) return false;
    return true;
  }
  bool intersects(const Bits& other) const noexcept {
    for (std::size_t i = 0; i < std::min(limbs_.size(), other.limbs_.size()); ++i)
      if (limbs_[i] & other.limbs_[i]) return true;
    return false;
  }

  Bits& operator&=(const Bits& o) noexcept {
    for (std::size_t i = 0; i < limbs_.size(); ++i)
      limbs_[i] &= i < o.limbs_.size() ? o.limbs_[i] : 0;
    return *this;
  }
  Bits& operator|=(const Bits& o) noexcept {
    for (std::size_t i = 0; i < limbs_.size() && i < o.limbs_.size(); ++i) limbs_[i] |= o.limbs_[i];
    trim();
    return *this;
  }
  Bits operator~() const {
    Bits r = *this;
    for (auto& l : r.limbs_) l = ~l;
    r.trim();
    return r;
  }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

  // Copy of this value reinterpreted at a different width (zero-extended or
  // truncated), with every bit moved up by `shift` positions.
  Bits resized(std::size_t width, std::size_t shift = 0) const {
    Bits r(width);
    for (std::size_t i = 0; i < width_; ++i)
      if (test(i)) r.set(i + shift);
    return r;
  }

  std::uint64_t low_u64() const noexcept { return limbs_.empty() ? 0 : limbs_[0]; }

  // Lowercase hex without leading zeros, "0x" prefixed ("0x0" for zero).
  std::string to_hex() const;
  // Decimal rendering, as a contract source literal would carry it.
  std::string to_decimal() const;

  friend bool operator==(const Bits& a, const Bits& b) noexcept {
    return a.width_ == b.width_ && a.limbs_ == b.limbs_;
  }
  friend bool operator<(const Bits& a, const Bits& b) noexcept {
    if (a.width_ != b.width_) return a.width_ < b.width_;
    return std::lexicographical_compare(a.limbs_.rbegin(), a.limbs_.rend(), b.limbs_.rbegin(),
                                        b.limbs_.rend());
  }

  std::size_t hash() const noexcept {
    std::size_t h = width_ * 0x9e3779b97f4a7c15ULL;
    for (auto l : limbs_) h ^= std::hash<std::uint64_t>{}(l) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  void trim() noexcept {
    if (width_ % 64 && !limbs_.empty()) limbs_.back() &= (std::uint64_t{1} << (width_ % 64)) - 1;
  }

  std::size_t width_ = 0;
  std::vector<std::uint64_t> limbs_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept { return b.hash(); }
};

inline Bits Bits::from_hex(std::size_t width, std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw std::invalid_argument("empty hex literal");
  Bits b(width);
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    char c = *it;
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw std::invalid_argument("bad hex digit");
    for (int k = 0; k < 4; ++k) {
      if (!((v >> k) & 1)) continue;
      if (bit + k >= width) throw std::invalid_argument("hex literal exceeds width");
      b.set(bit + k);
    }
  }
  return b;
}

inline std::string Bits::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  std::size_t n = bit_length();
  if (n == 0) return "0x0";
  for (std::size_t nib = (n + 3) / 4; nib-- > 0;) {
    int v = 0;
    for (int k = 0; k < 4; ++k)
      if (test(nib * 4 + k)) v |= 1 << k;
    out.push_back(digits[v]);
  }
  return "0x" + out;
}

inline std::string Bits::to_decimal() const {
  // Repeated division by 10 over 32-bit chunks.
  std::vector<std::uint32_t> parts;
  for (auto l : limbs_) {
    parts.push_back(static_cast<std::uint32_t>(l));
    parts.push_back(static_cast<std::uint32_t>(l >> 32));
  }
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  if (parts.empty()) return "0";
  std::string digits;
  while (!parts.empty()) {
    std::uint64_t rem = 0;
    for (std::size_t i = parts.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | parts[i];
      parts[i] = static_cast<std::uint32_t>(cur / 10);
      rem = cur % 10;
    }
    digits.push_back(static_cast<char>('0' + rem));
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
  }
  return {digits.rbegin(), digits.rend()};
}

}  // namespace bpmnc
