#pragma once

// Surface syntax for specifications (.eqth), finite models (.model) and
// morphisms (.mor). Printing is canonical: parse(print(x)) == x, and
// print(parse(text)) == text for canonically formatted text.

#include <string>
#include <string_view>

#include "paramspec/core.hpp"
#include "paramspec/model.hpp"
#include "paramspec/morphism.hpp"

namespace paramspec {

enum class FileKind { Spec, Model, Morphism, Unknown };

struct SourceFile {
  std::string path;
  std::string text;
  FileKind kind = FileKind::Unknown;
};

FileKind file_kind(std::string_view path);

/// Reads a file and checks that it is UTF-8. Throws IoError or SyntaxError.
SourceFile load_source(const std::string& path);

/// Writes `text` to `path`, replacing it. Throws IoError.
void save_text(const std::string& path, const std::string& text);

/// Parses and validates. Diagnostics carry line:column.
DecoratedSpec parse_spec(std::string_view text);
std::string print_spec(const DecoratedSpec& spec);

/// The model header must name `spec`; otherwise NameMismatch.
FinModel parse_model(std::string_view text, const SpecRef& spec);
std::string print_model(const FinModel& model);

/// The header endpoints must name `source` and `target`.
TheoryMorphism parse_morphism(std::string_view text, const SpecRef& source,
                              const SpecRef& target);
std::string print_morphism(const TheoryMorphism& m);

/// Source and target names from a morphism header, without parsing the body.
std::pair<std::string, std::string> morphism_endpoints(std::string_view text);

/// Spec name of a model header.
std::string model_spec_name(std::string_view text);

}  // namespace paramspec
