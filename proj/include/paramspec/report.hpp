#pragma once

#include <string>
#include <utility>
#include <vector>

#include "paramspec/model.hpp"

namespace paramspec {

/// Outcome of one verification. Serializes to a line-oriented text block and
/// to one JSON record.
struct CheckRecord {
  std::string name;
  bool passed = false;
  std::vector<std::pair<std::string, std::size_t>> cardinalities;
  /// The first two cardinalities are the two sides of a claimed bijection.
  bool bijection = false;
  /// Human-readable lines: the explicit pairing, counterexamples.
  std::vector<std::string> details;
  /// Models backing the check (e.g. the terminal extension); written to disk
  /// by the CLI on request.
  std::vector<FinModel> witness_models;
  /// Paths of witness files, filled in once written.
  std::vector<std::string> witness_files;

  std::string to_text() const;
};

struct Report {
  std::vector<CheckRecord> records;

  bool passed() const;
  std::string to_text() const;
  std::string to_json() const;
};

}  // namespace paramspec
