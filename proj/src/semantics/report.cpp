#include "paramspec/report.hpp"

#include <algorithm>

#include "json.hpp"

namespace paramspec {

std::string CheckRecord::to_text() const {
  std::string out = name + ": " + (passed ? "PASS" : "FAIL") + "\n";
  for (const auto& [what, n] : cardinalities) {
    out += "  |" + what + "| = " + std::to_string(n) + "\n";
  }
  if (bijection && cardinalities.size() >= 2) {
    out += "  " + std::to_string(cardinalities[0].second) + " ↔ " +
           std::to_string(cardinalities[1].second) + "\n";
  }
  for (const auto& d : details) out += "  " + d + "\n";
  for (const auto& f : witness_files) out += "  witness: " + f + "\n";
  return out;
}

bool Report::passed() const {
  return std::all_of(records.begin(), records.end(),
                     [](const CheckRecord& r) { return r.passed; });
}

std::string Report::to_text() const {
  std::string out;
  for (const auto& r : records) out += r.to_text();
  return out;
}

std::string Report::to_json() const {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json card = nlohmann::ordered_json::object();
    for (const auto& [what, n] : r.cardinalities) card[what] = n;
    checks.push_back({{"name", r.name},
                      {"status", r.passed ? "pass" : "fail"},
                      {"cardinalities", card},
                      {"details", r.details},
                      {"witness_files", r.witness_files}});
  }
  nlohmann::ordered_json doc = {{"status", passed() ? "pass" : "fail"},
                                {"checks", checks}};
  return doc.dump(2) + "\n";
}

}  // namespace paramspec
