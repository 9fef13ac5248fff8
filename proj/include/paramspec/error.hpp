#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace paramspec {

enum class ErrorKind {
  SyntaxError,
  UnknownSort,
  DuplicateSort,
  ReservedName,
  UnknownOp,
  DuplicateOp,
  UnboundVariable,
  DuplicateVariable,
  VariableShadowsConstant,
  ArityMismatch,
  SortMismatch,
  MissingParamSort,
  BadParamConst,
  NameMismatch,
  EndpointMismatch,
  UnmappedSymbol,
  InvalidMorphism,
  NotDecorated,
  AlreadyParameterized,
  AlreadyHasConstant,
  ConeMismatch,
  UnknownElement,
  DuplicateElement,
  MissingCarrier,
  MissingTableEntry,
  DuplicateTableEntry,
  MissingInterpretation,
  SearchSpaceOverflow,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorKind kind);

struct SourceLocation {
  int line = 1;
  int column = 1;
  bool operator==(const SourceLocation&) const = default;
};

/// The single exception type of the library. `kind()` classifies the failure;
/// `detail()` is the message without kind or location prefix.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail,
        std::optional<SourceLocation> location = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::optional<SourceLocation>& location() const noexcept {
    return location_;
  }

 private:
  ErrorKind kind_;
  std::string detail_;
  std::optional<SourceLocation> location_;
};

}  // namespace paramspec
