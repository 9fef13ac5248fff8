#pragma once

// Morphisms between specifications and 2-cells between morphisms.
//
// A morphism sends each sort to a product of sorts and each operation
// f : S1..Sn -> S to a tuple of terms over the image context of S1..Sn, one
// term per factor of the image of S. Most images are single terms; the empty
// tuple occurs when a codomain is sent to the unit type.

#include <map>
#include <string>
#include <vector>

#include "paramspec/core.hpp"

namespace paramspec {

/// A tuple of terms in a context. Used for operation images, the result of
/// applying a morphism to a term, and 2-cell components.
struct TermTuple {
  Context context;
  std::vector<Term> terms;

  bool operator==(const TermTuple&) const = default;
};

bool alpha_equal(const TermTuple& a, const TermTuple& b);
std::string to_string(const TermTuple& t);

struct TheoryMorphism {
  std::string name;
  SpecRef source;
  SpecRef target;
  std::map<SortName, ProductType> sort_map;
  std::map<std::string, TermTuple> op_map;

  const ProductType& sort_image(const SortName& sort) const;
  const TermTuple& op_image(const std::string& op) const;
  ProductType image_type(const ProductType& type) const;
};

/// Validation of every morphism invariant; `decorated` also requires pure
/// operations to be sent to pure terms.
ValidationReport validate_morphism(const TheoryMorphism& m,
                                   bool decorated = false);
void require_valid(const TheoryMorphism& m, bool decorated = false);

bool is_decorated(const TheoryMorphism& m);

/// Equality of endpoints and sort maps, with alpha-equivalent op images.
bool same_generators(const TheoryMorphism& f, const TheoryMorphism& g);

/// Lists the generators on which `f` and `g` differ; empty when they agree.
std::vector<std::string> generator_differences(const TheoryMorphism& f,
                                               const TheoryMorphism& g);

TheoryMorphism identity_morphism(const SpecRef& spec);

/// Inclusion of `sub` into `super`; every sort and op of `sub` must occur in
/// `super` with the same signature.
TheoryMorphism inclusion_morphism(const SpecRef& sub, const SpecRef& super);

/// Image of a context: a variable of a sort sent to a k-factor product
/// becomes k variables (none for the unit type). Names avoid nullary ops of
/// the target.
Context image_context(const TheoryMorphism& m, const Context& ctx);

/// Applies `m` to a term typed in `ctx` over `m.source`. The result context is
/// image_context(m, ctx); the result has one term per factor of the image of
/// the term's sort.
TermTuple apply_morphism(const TheoryMorphism& m, const Context& ctx,
                         const Term& t);
TermTuple apply_morphism(const TheoryMorphism& m, const TermTuple& tuple);

/// g o f. Requires f.target == g.source.
TheoryMorphism compose_morphisms(const TheoryMorphism& g,
                                 const TheoryMorphism& f);

/// A 2-cell source_mor => target_mor, presented by one component per sort X
/// of the common source: a tuple of sort target_mor(X) in a context of sort
/// source_mor(X).
struct NatTransPresentation {
  TheoryMorphism source_mor;
  TheoryMorphism target_mor;
  std::map<SortName, TermTuple> components;

  const TermTuple& component(const SortName& sort) const;
};

void require_valid(const NatTransPresentation& nt);

/// Identity 2-cell on `m`.
NatTransPresentation identity_cell(const TheoryMorphism& m);

/// Whiskering h o t: both morphisms are post-composed with h and each
/// component is pushed through h.
NatTransPresentation whisker(const TheoryMorphism& h,
                             const NatTransPresentation& t);

/// Same endpoints (generator-wise) and alpha-equivalent components.
bool same_cell(const NatTransPresentation& a, const NatTransPresentation& b);

}  // namespace paramspec
