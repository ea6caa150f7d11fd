#include "bpmnc/event_log.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "bpmnc/error.hpp"

namespace bpmnc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_uint(std::string_view s, std::uint64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool valid_atom(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) return false;
  return true;
}

}  // namespace

EventLog parse_log(std::string_view text) {
  EventLog log;
  std::map<std::string, std::size_t> index;
  std::map<std::string, std::uint64_t> weights;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::MalformedLog, "line " + std::to_string(line_no) + ": " + why);
  };
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.starts_with("#!weight")) {
      std::string_view rest = trim(line.substr(8));
      auto eq = rest.rfind('=');
      std::uint64_t w = 0;
      if (eq == std::string_view::npos || !parse_uint(rest.substr(eq + 1), w) || w == 0)
        fail("weight directive needs <trace_id>=<positive integer>");
      weights[std::string(trim(rest.substr(0, eq)))] = w;
      continue;
    }
    if (line.front() == '#') continue;
    if (line == "trace_id,seq,label,assignments") continue;
    auto fields = split(line, ',');
    if (fields.size() != 4) fail("expected 4 comma-separated fields, found " + std::to_string(fields.size()));
    std::string id(trim(fields[0]));
    if (id.empty()) fail("empty trace id");
    std::uint64_t seq = 0;
    if (!parse_uint(fields[1], seq)) fail("sequence number is not an unsigned integer");
    std::string label(trim(fields[2]));
    if (label.empty()) fail("empty label");
    TraceEvent ev{label, {}};
    std::string_view assigns = trim(fields[3]);
    if (!assigns.empty()) {
      for (std::string_view tok : split(assigns, ';')) {
        tok = trim(tok);
        auto eq = tok.find('=');
        if (eq == std::string_view::npos) fail("assignment token '" + std::string(tok) + "' lacks '='");
        std::string_view atom = trim(tok.substr(0, eq)), val = trim(tok.substr(eq + 1));
        if (!valid_atom(atom)) fail("bad atom name in '" + std::string(tok) + "'");
        if (val != "0" && val != "1") fail("assignment value must be 0 or 1 in '" + std::string(tok) + "'");
        if (ev.assignment.count(std::string(atom))) fail("atom " + std::string(atom) + " assigned twice");
        ev.assignment[std::string(atom)] = val == "1";
      }
    }
    auto [it, inserted] = index.emplace(id, log.traces.size());
    if (inserted) log.traces.push_back(Trace{id, 1, {}});
    Trace& t = log.traces[it->second];
    if (seq != t.events.size())
      fail("trace " + id + " expects seq " + std::to_string(t.events.size()) + ", got " + std::to_string(seq));
    t.events.push_back(std::move(ev));
  }
  for (const auto& [id, w] : weights) {
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorKind::MalformedLog, "weight given for unknown trace " + id);
    log.traces[it->second].weight = w;
  }
  return log;
}

std::string write_log(const EventLog& log) {
  std::ostringstream out;
  out << "trace_id,seq,label,assignments\n";
  for (const auto& t : log.traces)
    if (t.weight != 1) out << "#!weight " << t.id << "=" << t.weight << "\n";
  for (const auto& t : log.traces) {
    for (std::size_t i = 0; i < t.events.size(); ++i) {
      out << t.id << ',' << i << ',' << t.events[i].label << ',';
      bool first = true;
      for (const auto& [a, v] : t.events[i].assignment) {
        out << (first ? "" : ";") << a << '=' << (v ? 1 : 0);
        first = false;
      }
      out << '\n';
    }
  }
  return out.str();
}

EventLog read_log_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_log(ss.str());
}

void write_log_file(const std::string& path, const EventLog& log) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << write_log(log);
}

}  // namespace bpmnc
