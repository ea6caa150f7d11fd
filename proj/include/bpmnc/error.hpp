#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bpmnc {

enum class ErrorKind {
  MalformedDocument,
  DanglingFlowReference,
  UnsupportedElement,
  CardinalityViolation,
  DefaultFlowAmbiguity,
  WidthMismatch,
  NotEnabled,
  StateSpaceBudgetExceeded,
  UnsupportedNodeKind,
  UnsoundModel,
  UnsafeModel,
  NonSafeInput,
  PatternMismatch,
  UnresolvedProvenance,
  MarkingWidthExceeded,
  PredicateWidthExceeded,
  InstanceAlreadyCompleted,
  UnknownLabel,
  MalformedLog,
  MalformedManifest,
  TransactionExceedsBlockLimit,
  InsufficientDistinctTraces,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the toolchain. `witness` carries a firing sequence
// for UnsoundModel / UnsafeModel, and is empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::vector<std::string> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witness_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedDocument: return "MalformedDocument";
    case ErrorKind::DanglingFlowReference: return "DanglingFlowReference";
    case ErrorKind::UnsupportedElement: return "UnsupportedElement";
    case ErrorKind::CardinalityViolation: return "CardinalityViolation";
    case ErrorKind::DefaultFlowAmbiguity: return "DefaultFlowAmbiguity";
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::NotEnabled: return "NotEnabled";
    case ErrorKind::StateSpaceBudgetExceeded: return "StateSpaceBudgetExceeded";
    case ErrorKind::UnsupportedNodeKind: return "UnsupportedNodeKind";
    case ErrorKind::UnsoundModel: return "UnsoundModel";
    case ErrorKind::UnsafeModel: return "UnsafeModel";
    case ErrorKind::NonSafeInput: return "NonSafeInput";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
    case ErrorKind::UnresolvedProvenance: return "UnresolvedProvenance";
    case ErrorKind::MarkingWidthExceeded: return "MarkingWidthExceeded";
    case ErrorKind::PredicateWidthExceeded: return "PredicateWidthExceeded";
    case ErrorKind::InstanceAlreadyCompleted: return "InstanceAlreadyCompleted";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::MalformedLog: return "MalformedLog";
    case ErrorKind::MalformedManifest: return "MalformedManifest";
    case ErrorKind::TransactionExceedsBlockLimit: return "TransactionExceedsBlockLimit";
    case ErrorKind::InsufficientDistinctTraces: return "InsufficientDistinctTraces";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace bpmnc
