#pragma once

// Exhaustive finite-model semantics: enumeration of models extending a base,
// terminal extensions of parameterized specs, parameter passing on models and
// machine checks of the model-level bijections.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paramspec/construct.hpp"
#include "paramspec/model.hpp"
#include "paramspec/report.hpp"

namespace paramspec {

/// Maximum carrier size per sort that is not fixed by the base model.
using Bounds = std::map<SortName, std::size_t>;

struct SearchOptions {
  /// Upper bound on the number of candidate table assignments of a search.
  std::uint64_t cap = 10'000'000;
  /// Exhaustive uniqueness checks of model morphisms are skipped above this
  /// number of candidate component functions.
  std::uint64_t exhaustive_morphism_limit = 4096;
};

/// Number of candidate table assignments models_extending would visit.
/// Saturates at UINT64_MAX.
std::uint64_t count_candidates(const DecoratedSpec& spec, const FinModel& base,
                               const Bounds& bounds);

/// Visits every total model of `spec` that extends `base` (same carriers and
/// tables wherever `base` has them) and satisfies all equations. Sorts not
/// interpreted by `base` range over carriers of size 0..bound. The order is
/// deterministic: carrier sizes in increasing lexicographic order, then op
/// tables lexicographically in declaration order. `visit` returns false to
/// stop. Throws SearchSpaceOverflow past `options.cap`.
void for_each_model_extending(const SpecRef& spec, const FinModel& base,
                              const Bounds& bounds, const SearchOptions& options,
                              const std::function<bool(const FinModel&)>& visit);

std::vector<FinModel> models_extending(const SpecRef& spec, const FinModel& base,
                                       const Bounds& bounds,
                                       const SearchOptions& options = {});

/// Bounds giving every sort of `spec` the same maximum size.
Bounds uniform_bounds(const DecoratedSpec& spec, std::size_t max_size);

/// The model of pr.param_spec over `base` whose parameter carrier is the set
/// of all families of tables for the non-pure ops satisfying the translated
/// equations, with f'(alpha, x) = alpha_f(x). `base` must interpret every
/// sort and every pure op of the source spec.
FinModel terminal_extension(const ParamResult& pr, const FinModel& base,
                            const SearchOptions& options = {});

struct TerminalityWitness {
  FinModel model;
  ModelMorphism morphism;
  /// Number of model morphisms over the base found by exhaustive search, or
  /// nullopt when the search space exceeded the limit.
  std::optional<std::uint64_t> exhaustive_count;
};

/// The unique morphism n -> candidate that is the identity off the parameter
/// sort, if it exists. Sets `why` on failure (no morphism, or not unique).
std::optional<ModelMorphism> morphism_into_candidate(const FinModel& n,
                                                     const FinModel& candidate,
                                                     const ParamResult& pr,
                                                     std::string* why = nullptr);

struct TerminalityResult {
  bool terminal = false;
  std::size_t models_checked = 0;
  std::vector<TerminalityWitness> witnesses;
  std::string failure;
};

/// Checks that every model of pr.param_spec extending `base` (parameter sort
/// bounded by `bounds`) has exactly one morphism over the base into
/// `candidate`.
TerminalityResult check_terminality(const FinModel& candidate,
                                    const ParamResult& pr, const FinModel& base,
                                    const Bounds& bounds,
                                    const SearchOptions& options = {});

struct PassingResult {
  FinModel model;          // model of the source spec
  ModelMorphism morphism;  // reduct(model, t_A) -> M_A
};

/// M with M(f) = M_A(f')(alpha, -), and the morphism that is the identity off
/// the parameter sort and the constant alpha on it.
PassingResult param_passing_model(const ParamResult& pr, const FinModel& model_a,
                                  Elem alpha);

/// Mod(S_a)|M_A is in bijection with M_A(A) by evaluation at a.
CheckRecord verify_bijection_adding(const ParamResult& pr, const FinModel& model_a,
                                    const SearchOptions& options = {});

/// Mod(S_a)|M_A ~ pairs (M, m) ~ M_A(A), via (j^md, t^md) and via
/// param_passing_model.
CheckRecord verify_bijection_passing(const ParamResult& pr,
                                     const FinModel& model_a,
                                     const FinModel& base,
                                     const SearchOptions& options = {});

/// The terminal extension's parameter carrier is in bijection with
/// Mod(S)|base via alpha |-> M_{A,alpha}.
CheckRecord verify_exact_parameterization(const ParamResult& pr,
                                          const FinModel& base,
                                          const SearchOptions& options = {});

/// Evaluates both paths of every naturality square of the 2-cell in `model`.
bool check_nat_trans(const NatTransPresentation& nt, const FinModel& model);

/// True iff reducts along f and g agree on every model of their common target
/// within `bounds`.
bool morphisms_semantically_equal(const TheoryMorphism& f, const TheoryMorphism& g,
                                  const Bounds& bounds,
                                  const SearchOptions& options = {});

/// Both composites of naturality_square(sigma), compared generator-wise and
/// semantically within `bounds` on the models of S'_a.
CheckRecord verify_naturality(const TheoryMorphism& sigma, std::size_t max_size,
                              const SearchOptions& options = {});

/// CheckRecord wrapper around check_terminality.
CheckRecord verify_terminality(const ParamResult& pr, const FinModel& base,
                               std::size_t param_bound,
                               const SearchOptions& options = {});

}  // namespace paramspec
