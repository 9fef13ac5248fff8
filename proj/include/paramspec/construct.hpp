#pragma once

// Parameterization passes on presentations.
//
// parameterize adds a parameter sort A as a new first argument of every
// non-pure operation and threads one shared parameter variable through every
// equation. The remaining passes build the surrounding structure:
//
//   erasure_morphism      t_A : S_A -> S        (A collapses to the unit type)
//   add_parameter         S_a = S_A + (a : -> A)
//   parameter_inclusion   j_A : S_A -> S_a
//   passing_morphism      j   : S -> S_a,       f |-> f'(a, -)
//   passing_cell          t   : j o t_A => j_A, t_A-component = a
//   cokleisli             G(S_A): S_A ops made pure, plus a : -> A
//   unit_morphism         S -> G(F(S))
//   transpose_up/down     the adjunction bijection on morphisms
//   mediate               the mediator out of S_a for a lax cocone
//   naturality_square     the two composites S -> S'_a for sigma : S -> S'

#include <map>
#include <string>
#include <utility>

#include "paramspec/core.hpp"
#include "paramspec/morphism.hpp"

namespace paramspec {

struct ParamResult {
  SpecRef source;
  SpecRef param_spec;
  /// f |-> f' for non-pure ops, f |-> f for pure ops.
  std::map<std::string, std::string> op_link;
  std::string param_var{kParamVar};

  const SortName& param_sort() const { return *param_spec->param_sort; }
  const std::string& linked(const std::string& op) const;
};

/// Names of the parameterized operations: f |-> f' for every non-pure f,
/// with extra primes where a name is already taken.
std::map<std::string, std::string> parameterized_op_names(
    const DecoratedSpec& spec);

/// Translation of a term of `spec` into the parameterized spec. Pure
/// applications are kept, non-pure ones receive `param_var` as first argument.
Term translate_term(const Term& t, const DecoratedSpec& spec,
                    std::string_view param_var = kParamVar);
Term translate_term(const Term& t, const std::map<std::string, std::string>& link,
                    const DecoratedSpec& spec, std::string_view param_var);

/// F_param. Throws AlreadyParameterized if `spec` already has a parameter
/// sort, ReservedName if an equation already binds the parameter variable.
ParamResult parameterize(const SpecRef& spec);
inline ParamResult parameterize(const DecoratedSpec& spec) {
  return parameterize(share(spec));
}

/// t_A : S_A -> S, sending A to the unit type and f' to f.
TheoryMorphism erasure_morphism(const ParamResult& pr);

/// Adjoins a fresh non-pure constant a : -> A and records it as the parameter.
/// Throws MissingParamSort / AlreadyHasConstant.
SpecRef add_parameter(const DecoratedSpec& spec_a);
inline SpecRef add_parameter(const ParamResult& pr) {
  return add_parameter(*pr.param_spec);
}

/// j_A : S_A -> S_a for S_a = add_parameter(S_A).
TheoryMorphism parameter_inclusion(const SpecRef& spec_a, const SpecRef& with_const);

/// j : S -> S_a.
TheoryMorphism passing_morphism(const ParamResult& pr, const SpecRef& with_const);
TheoryMorphism passing_morphism(const ParamResult& pr);

/// G_param on a parameterized spec: all ops pure, plus a fresh non-pure
/// parameter constant.
SpecRef cokleisli(const DecoratedSpec& spec_a);

/// Unit S -> G(F(S)).
TheoryMorphism unit_morphism(const ParamResult& pr);
TheoryMorphism unit_morphism(const SpecRef& spec);

/// phi : S -> G(S_A) decorated  |->  F(S) -> S_A.
TheoryMorphism transpose_up(const TheoryMorphism& phi, const ParamResult& pr,
                            const SpecRef& spec_a);

/// psi : F(S) -> S_A  |->  S -> G(S_A).
TheoryMorphism transpose_down(const TheoryMorphism& psi, const ParamResult& pr);

/// t : j o t_A => j_A.
NatTransPresentation passing_cell(const ParamResult& pr);

/// A lax cocone with base t_A : S_A -> S.
struct LaxCocone {
  TheoryMorphism base;
  SpecRef apex;
  TheoryMorphism leg_a;  // S_A -> apex
  TheoryMorphism leg;    // S -> apex
  NatTransPresentation cell;  // leg o base => leg_a
};

/// (S_a, j_A, j, t).
LaxCocone canonical_cocone(const ParamResult& pr);

struct MediatorResult {
  TheoryMorphism mediator;
  bool commutes_with_leg_a = false;
  bool commutes_with_leg = false;
  bool commutes_with_cell = false;
};

/// The unique h : S_a -> apex with h o j_A = leg_a, h o j = leg and
/// h o t = cell. Throws ConeMismatch when the cone is not over t_A or one of
/// the three equations fails generator-wise.
MediatorResult mediate(const LaxCocone& cone, const ParamResult& pr);

/// F(sigma) : F(S) -> F(S') for a decorated sigma : S -> S'.
TheoryMorphism parameterize_morphism(const TheoryMorphism& sigma,
                                     const ParamResult& pr,
                                     const ParamResult& pr_target);

/// F'(sigma) : S_a -> S'_a, extending F(sigma) with a |-> a'.
TheoryMorphism parameterize_morphism_with_const(const TheoryMorphism& sigma,
                                                const ParamResult& pr,
                                                const ParamResult& pr_target);

/// (J_{S'} o sigma, F'(sigma) o J_S), both S -> S'_a. Throws NotDecorated.
std::pair<TheoryMorphism, TheoryMorphism> naturality_square(
    const TheoryMorphism& sigma);

}  // namespace paramspec
