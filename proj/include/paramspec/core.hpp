#pragma once

// Syntactic universe of decorated equational specifications: sorts, flat
// product types, operations with a purity flag, typed terms over contexts of
// sorted variables, equations and whole specifications.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paramspec/error.hpp"

namespace paramspec {

using SortName = std::string;

/// A product of sorts in normal form. The empty sequence is the unit type 1.
using ProductType = std::vector<SortName>;

inline constexpr std::string_view kUnitSortName = "Unit";
inline constexpr std::string_view kParamVar = "p$";

struct OpDecl {
  std::string name;
  ProductType dom;
  SortName cod;
  bool pure = false;

  bool operator==(const OpDecl&) const = default;
};

struct Binding {
  std::string name;
  SortName sort;

  bool operator==(const Binding&) const = default;
};

/// Ordered sorted variables. Variable `i` is the i-th projection out of the
/// product of the binding sorts.
using Context = std::vector<Binding>;

const Binding* find_binding(const Context& ctx, std::string_view name);
ProductType context_type(const Context& ctx);

class Term {
 public:
  static Term var(std::string name);
  static Term app(std::string op, std::vector<Term> args = {});

  bool is_var() const noexcept { return kind_ == Kind::Var; }
  bool is_app() const noexcept { return kind_ == Kind::App; }
  /// Variable name or operation name.
  const std::string& name() const noexcept { return name_; }
  const std::vector<Term>& args() const noexcept { return args_; }

  bool operator==(const Term&) const = default;

 private:
  enum class Kind { Var, App };

  Term(Kind kind, std::string name, std::vector<Term> args)
      : kind_(kind), name_(std::move(name)), args_(std::move(args)) {}

  Kind kind_;
  std::string name_;
  std::vector<Term> args_;
};

/// Prints `x`, `c` (nullary op) or `f(t1, ..., tn)`.
std::string to_string(const Term& t);
std::string to_string(std::span<const Term> tuple);
std::string to_string(const Context& ctx);

struct Equation {
  Context context;
  Term lhs;
  Term rhs;

  bool operator==(const Equation&) const = default;
};

/// A multi-sorted presentation with a pure (wide) sub-signature and an
/// optional distinguished parameter sort and parameter constant.
struct DecoratedSpec {
  std::string name;
  std::vector<SortName> sorts;
  std::vector<OpDecl> ops;
  std::vector<Equation> eqs;
  std::optional<SortName> param_sort;
  std::optional<std::string> param_const;

  bool has_sort(std::string_view sort) const;
  const OpDecl* find_op(std::string_view op) const;
  const OpDecl& op(std::string_view op) const;

  bool operator==(const DecoratedSpec&) const = default;
};

using SpecRef = std::shared_ptr<const DecoratedSpec>;

inline SpecRef share(DecoratedSpec spec) {
  return std::make_shared<const DecoratedSpec>(std::move(spec));
}

// ---------------------------------------------------------------------------
// Typing

/// Returns the sort of `t` in `ctx`. Throws UnboundVariable, UnknownOp,
/// ArityMismatch or SortMismatch naming the offending subterm.
SortName typecheck_term(const Context& ctx, const Term& t,
                        const DecoratedSpec& spec);

/// True iff every operation symbol in `t` is pure. Typechecks first.
bool is_pure_term(const Context& ctx, const Term& t, const DecoratedSpec& spec);

/// Where a diagnostic points inside a specification.
struct SpecItem {
  enum class Section { Header, Sort, Op, Equation, Param };
  Section section = Section::Header;
  std::size_t index = 0;

  bool operator==(const SpecItem&) const = default;
};

struct Diagnostic {
  ErrorKind kind;
  std::string message;
  SpecItem item;
};

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return diagnostics.empty(); }
  bool contains(ErrorKind kind) const;
  std::string to_text() const;
};

ValidationReport validate_spec(const DecoratedSpec& spec);

/// Throws the first diagnostic of validate_spec (message lists all of them).
void require_valid(const DecoratedSpec& spec);

// ---------------------------------------------------------------------------
// Substitution

using Substitution = std::map<std::string, Term>;

/// Simultaneous substitution of variables. There are no binders in terms, so
/// this is capture-free by construction.
Term substitute(const Term& t, const Substitution& binding);

/// Substitution with sort checking: every replacement must have, in
/// `replacement_ctx`, the sort of the variable it replaces in `ctx`.
Term substitute_checked(const DecoratedSpec& spec, const Context& ctx,
                        const Term& t, const Substitution& binding,
                        const Context& replacement_ctx);

/// Positional alpha-equivalence: both contexts have the same sorts, and the
/// tuples agree after renaming variable i of `lhs_ctx` to variable i of
/// `rhs_ctx`.
bool alpha_equal(const Context& lhs_ctx, std::span<const Term> lhs,
                 const Context& rhs_ctx, std::span<const Term> rhs);

bool occurs_op(const Term& t, std::string_view op);
bool occurs_var(const Term& t, std::string_view var);

// ---------------------------------------------------------------------------
// Generators and naming

/// Returns `base` if unused, otherwise the first of base1, base2, ... unused.
std::string fresh_name(const std::string& base,
                       const std::vector<std::string>& used);

/// Canonical context for the generator term of `op`: variables x, y, z (or
/// x1..xn for larger arities); for a non-pure op whose first factor is the
/// parameter sort, that variable is `p$`. Names avoid nullary ops of `spec`.
Context generator_context(const DecoratedSpec& spec, const OpDecl& op);

/// `op(x1, ..., xn)` over the given generator context.
Term generator_term(const OpDecl& op, const Context& ctx);

}  // namespace paramspec
