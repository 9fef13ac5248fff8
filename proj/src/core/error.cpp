#include "paramspec/error.hpp"

namespace paramspec {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownSort: return "UnknownSort";
    case ErrorKind::DuplicateSort: return "DuplicateSort";
    case ErrorKind::ReservedName: return "ReservedName";
    case ErrorKind::UnknownOp: return "UnknownOp";
    case ErrorKind::DuplicateOp: return "DuplicateOp";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ErrorKind::VariableShadowsConstant: return "VariableShadowsConstant";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::MissingParamSort: return "MissingParamSort";
    case ErrorKind::BadParamConst: return "BadParamConst";
    case ErrorKind::NameMismatch: return "NameMismatch";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::UnmappedSymbol: return "UnmappedSymbol";
    case ErrorKind::InvalidMorphism: return "InvalidMorphism";
    case ErrorKind::NotDecorated: return "NotDecorated";
    case ErrorKind::AlreadyParameterized: return "AlreadyParameterized";
    case ErrorKind::AlreadyHasConstant: return "AlreadyHasConstant";
    case ErrorKind::ConeMismatch: return "ConeMismatch";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::DuplicateElement: return "DuplicateElement";
    case ErrorKind::MissingCarrier: return "MissingCarrier";
    case ErrorKind::MissingTableEntry: return "MissingTableEntry";
    case ErrorKind::DuplicateTableEntry: return "DuplicateTableEntry";
    case ErrorKind::MissingInterpretation: return "MissingInterpretation";
    case ErrorKind::SearchSpaceOverflow: return "SearchSpaceOverflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string format(ErrorKind kind, const std::string& detail,
                   const std::optional<SourceLocation>& loc) {
  std::string out;
  if (loc) {
    out += std::to_string(loc->line) + ":" + std::to_string(loc->column) + ": ";
  }
  out += to_string(kind);
  out += ": ";
  out += detail;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string detail,
             std::optional<SourceLocation> location)
    : std::runtime_error(format(kind, detail, location)),
      kind_(kind),
      detail_(std::move(detail)),
      location_(location) {}

}  // namespace paramspec
