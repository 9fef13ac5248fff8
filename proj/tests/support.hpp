#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "paramspec/construct.hpp"
#include "paramspec/dsl.hpp"
#include "paramspec/semantics.hpp"

namespace test {

inline std::string fixture_path(const std::string& name) {
  return std::string(PARAMSPEC_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline paramspec::SpecRef spec(const std::string& name) {
  return paramspec::share(paramspec::parse_spec(read_fixture(name)));
}

inline paramspec::FinModel model(const std::string& name,
                                 const paramspec::SpecRef& s) {
  return paramspec::parse_model(read_fixture(name), s);
}

inline paramspec::TheoryMorphism morphism(const std::string& name,
                                          const paramspec::SpecRef& source,
                                          const paramspec::SpecRef& target) {
  return paramspec::parse_morphism(read_fixture(name), source, target);
}

inline paramspec::Term v(const std::string& name) { return paramspec::Term::var(name); }

template <typename... Args>
paramspec::Term app(const std::string& name, Args... args) {
  return paramspec::Term::app(name, {args...});
}

}  // namespace test
