#pragma once

// Finite models: carriers are ordered lists of element labels, operations are
// total tables indexed row-major over the domain product (first argument most
// significant). Elements are referred to by their index in the carrier.

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "paramspec/core.hpp"
#include "paramspec/morphism.hpp"

namespace paramspec {

using Elem = std::size_t;
using Env = std::map<std::string, Elem>;

struct FinModel {
  std::string name;
  SpecRef spec;
  bool partial = false;
  std::map<SortName, std::vector<std::string>> carriers;
  std::map<std::string, std::vector<Elem>> tables;

  bool has_carrier(const SortName& sort) const { return carriers.count(sort) > 0; }
  bool has_table(const std::string& op) const { return tables.count(op) > 0; }
  const std::vector<std::string>& carrier(const SortName& sort) const;
  std::size_t size(const SortName& sort) const { return carrier(sort).size(); }

  /// Number of tuples in the product of the carriers of `type`.
  std::size_t product_size(const ProductType& type) const;
  /// Row-major index of a tuple in the product of the carriers of `type`.
  std::size_t product_index(const ProductType& type,
                            std::span<const Elem> tuple) const;
  /// Inverse of product_index.
  std::vector<Elem> product_tuple(const ProductType& type, std::size_t index) const;

  /// Throws MissingInterpretation when the op has no table.
  Elem apply(const OpDecl& op, std::span<const Elem> args) const;

  Elem element(const SortName& sort, std::string_view label) const;
  const std::string& label(const SortName& sort, Elem e) const;
};

using ModelRef = std::shared_ptr<const FinModel>;

/// Equality of structure: same carriers (with labels), same tables, same
/// partiality. Model names and spec identity are ignored.
bool same_structure(const FinModel& a, const FinModel& b);

/// Checks carriers, table sizes and ranges, and totality unless partial.
void require_well_formed(const FinModel& model);

/// The partial model with no carriers and no tables.
FinModel empty_model(const SpecRef& spec);

/// Restriction to the pure sub-spec: all carriers, tables of pure ops only.
FinModel pure_part(const FinModel& model);

Elem eval_term(const FinModel& model, const Env& env, const Term& t);

struct SatisfactionReport {
  struct Failure {
    std::size_t equation = 0;
    std::vector<std::pair<std::string, std::string>> env;
    std::string lhs_value;
    std::string rhs_value;
  };
  std::vector<Failure> failures;
  /// Equations checked only vacuously because some context carrier is empty.
  std::vector<std::size_t> vacuous;

  bool ok() const noexcept { return failures.empty(); }
  std::string to_text(const DecoratedSpec& spec) const;
};

/// Exhaustive satisfaction check over all environments. With
/// `only_interpreted`, equations mentioning an op without a table (or a sort
/// without a carrier) are skipped instead of raising MissingInterpretation.
SatisfactionReport check_model(const FinModel& model,
                               bool only_interpreted = false);

/// True iff the equation holds in the model; stops at the first failure.
bool satisfies(const FinModel& model, const Equation& eq);

struct ModelMorphism {
  ModelRef source;
  ModelRef target;
  std::map<SortName, std::vector<Elem>> components;

  bool operator==(const ModelMorphism& other) const;
};

/// Checks component ranges and naturality for every op of the spec. On
/// failure, describes the first violation in `why` when given.
bool is_model_morphism(const ModelMorphism& m, std::string* why = nullptr);

/// m^md: the model M o m of the source of `m`. The carrier of a sort mapped
/// to a product is the product of carriers (labels joined with '.', the unit
/// carrier is {unit}); tables are obtained by evaluating the image terms.
FinModel reduct(const FinModel& model, const TheoryMorphism& m);

/// Reduct of a model morphism along a theory morphism (precomposition).
ModelMorphism reduct(const ModelMorphism& mm, const TheoryMorphism& m);

/// The model morphism obtained by evaluating the components of a 2-cell in a
/// model of its target spec: reduct(M, source_mor) -> reduct(M, target_mor).
ModelMorphism whisker_model(const NatTransPresentation& nt, const FinModel& model);

}  // namespace paramspec
