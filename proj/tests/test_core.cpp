#include <functional>
#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace paramspec;
using test::app;
using test::v;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("typecheck_term") {
  auto sgp = test::spec("sgp.eqth");
  Context ctx{{"x", "G"}};
  CHECK(typecheck_term(ctx, app("prd", v("x"), v("x")), *sgp) == "G");
  CHECK(typecheck_term(ctx, v("x"), *sgp) == "G");
  CHECK(kind_of([&] { typecheck_term(ctx, app("prd", v("x")), *sgp); }) ==
        ErrorKind::ArityMismatch);
  CHECK(kind_of([&] { typecheck_term(ctx, v("y"), *sgp); }) == ErrorKind::UnboundVariable);
  CHECK(kind_of([&] { typecheck_term(ctx, app("mul", v("x")), *sgp); }) ==
        ErrorKind::UnknownOp);
  auto oper = test::spec("oper.eqth");
  Context cy{{"y", "Y"}};
  CHECK(kind_of([&] { typecheck_term(cy, app("f", v("y")), *oper); }) ==
        ErrorKind::SortMismatch);
}

TEST_CASE("is_pure_term") {
  auto nat = test::spec("nat.eqth");
  Context ctx{{"n", "N"}};
  CHECK(is_pure_term(ctx, v("n"), *nat));
  CHECK(is_pure_term({}, app("z"), *nat));
  CHECK_FALSE(is_pure_term({}, app("s", app("z")), *nat));
}

TEST_CASE("validate_spec") {
  CHECK(validate_spec(*test::spec("dm.eqth")).ok());

  DecoratedSpec bad = *test::spec("oper.eqth");
  bad.ops.push_back({"g", {"Y"}, "Y", false});
  bad.eqs.push_back({{{"x", "X"}}, v("x"), app("f", v("x"))});
  auto report = validate_spec(bad);
  CHECK(report.contains(ErrorKind::SortMismatch));

  DecoratedSpec no_sort = *test::spec("oper.eqth");
  no_sort.param_const = "a";
  CHECK(validate_spec(no_sort).contains(ErrorKind::MissingParamSort));

  DecoratedSpec reserved = *test::spec("oper.eqth");
  reserved.sorts.push_back("Unit");
  CHECK(validate_spec(reserved).contains(ErrorKind::ReservedName));
}

TEST_CASE("substitute") {
  CHECK(substitute(app("prd", v("x"), v("y")), {{"x", app("unt")}, {"y", app("unt")}}) ==
        app("prd", app("unt"), app("unt")));
  CHECK(substitute(v("x"), {{"x", app("s", app("z"))}}) == app("s", app("z")));
  CHECK(substitute(app("dif'", v("p"), v("x")), {{"p", app("a")}}) ==
        app("dif'", app("a"), v("x")));
  // simultaneous, not sequential
  CHECK(substitute(app("prd", v("x"), v("y")), {{"x", v("y")}, {"y", v("x")}}) ==
        app("prd", v("y"), v("x")));

  auto oper = test::spec("oper.eqth");
  CHECK(kind_of([&] {
          substitute_checked(*oper, {{"x", "X"}}, app("f", v("x")), {{"x", v("y")}},
                             {{"y", "Y"}});
        }) == ErrorKind::SortMismatch);
}

TEST_CASE("apply_morphism") {
  auto oper = test::spec("oper.eqth");
  ParamResult pr = parameterize(oper);
  TheoryMorphism t_a = erasure_morphism(pr);
  TermTuple out = apply_morphism(t_a, {{"p", "A"}, {"x", "X"}}, app("f'", v("p"), v("x")));
  CHECK(out.context == Context{{"x", "X"}});
  CHECK(out.terms == std::vector<Term>{app("f", v("x"))});

  auto sgp = test::spec("sgp.eqth");
  TheoryMorphism id = identity_morphism(sgp);
  Context ctx{{"x", "G"}, {"y", "G"}};
  Term t = app("prd", v("x"), app("prd", v("y"), v("x")));
  CHECK(apply_morphism(id, ctx, t).terms.front() == t);

  TheoryMorphism j = passing_morphism(parameterize(sgp));
  CHECK(apply_morphism(j, ctx, app("prd", v("x"), v("y"))).terms.front() ==
        app("prd'", app("a"), v("x"), v("y")));
}

TEST_CASE("compose_morphisms") {
  auto oper = test::spec("oper.eqth");
  ParamResult pr = parameterize(oper);
  SpecRef oper_a = add_parameter(pr);
  TheoryMorphism t_A = erasure_morphism(pr);
  LaxCocone cone{t_A, oper, t_A, identity_morphism(oper),
                 identity_cell(compose_morphisms(identity_morphism(oper), t_A))};
  TheoryMorphism t_a = mediate(cone, pr).mediator;
  TheoryMorphism j_A = parameter_inclusion(pr.param_spec, oper_a);
  TheoryMorphism j = passing_morphism(pr, oper_a);

  CHECK(same_generators(compose_morphisms(t_a, j_A), t_A));
  // oracle: apply t_a to each generator image of j and compare with the identity
  for (const auto& op : oper->ops) {
    TermTuple img = apply_morphism(t_a, j.op_image(op.name));
    CHECK(alpha_equal(img, identity_morphism(oper).op_image(op.name)));
  }
  CHECK(same_generators(compose_morphisms(t_a, j), identity_morphism(oper)));
  CHECK(same_generators(compose_morphisms(identity_morphism(oper), t_A), t_A));
  CHECK(kind_of([&] { compose_morphisms(j, j); }) == ErrorKind::EndpointMismatch);
}

TEST_CASE("alpha equality renames positionally") {
  TermTuple a{{{"x", "G"}, {"y", "G"}}, {app("prd", v("x"), v("y"))}};
  TermTuple b{{{"u", "G"}, {"w", "G"}}, {app("prd", v("u"), v("w"))}};
  TermTuple c{{{"u", "G"}, {"w", "G"}}, {app("prd", v("w"), v("u"))}};
  CHECK(alpha_equal(a, b));
  CHECK_FALSE(alpha_equal(a, c));
}

// Random trees over the Dm signature, some ill-typed; whenever typecheck_term
// returns a sort the tree must respect every arity and argument sort.
TEST_CASE("typing soundness under fuzzing") {
  auto dm = test::spec("dm.eqth");
  std::mt19937 rng(20261016);
  const std::vector<std::string> names{"prd", "unt", "dif", "x", "nope"};
  std::function<Term(int)> gen = [&](int depth) -> Term {
    const std::string& n = names[rng() % names.size()];
    if (n == "x" || depth == 0) return v("x");
    std::vector<Term> args;
    for (unsigned k = rng() % 3; k > 0; --k) args.push_back(gen(depth - 1));
    return Term::app(n, args);
  };
  std::function<bool(const Term&)> well_typed = [&](const Term& t) {
    if (t.is_var()) return t.name() == "x";
    const OpDecl* op = dm->find_op(t.name());
    if (!op || op->dom.size() != t.args().size()) return false;
    for (const auto& a : t.args()) {
      if (!well_typed(a)) return false;
    }
    return true;  // single sort G: arity is the only constraint
  };
  int accepted = 0;
  for (int i = 0; i < 2000; ++i) {
    Term t = gen(4);
    bool ok = true;
    try {
      typecheck_term({{"x", "G"}}, t, *dm);
    } catch (const Error&) {
      ok = false;
    }
    CHECK(ok == well_typed(t));
    accepted += ok;
  }
  CHECK(accepted > 0);
}

TEST_CASE("purity is closed under substitution") {
  auto nat = test::spec("nat.eqth");
  DecoratedSpec two = *nat;
  two.ops.push_back({"plus", {"N", "N"}, "N", true});
  Context ctx{{"m", "N"}, {"n", "N"}};
  std::vector<Term> pure{v("m"), app("z"), app("plus", v("m"), app("z"))};
  std::vector<Term> impure{app("s", v("n"))};
  for (const auto& t : pure) {
    for (const auto& u : pure) {
      Term r = substitute(t, {{"m", u}});
      CHECK(is_pure_term(ctx, r, two));
    }
    for (const auto& u : impure) {
      if (!occurs_var(t, "m")) continue;
      CHECK_FALSE(is_pure_term(ctx, substitute(t, {{"m", u}}), two));
    }
  }
}

TEST_CASE("apply_morphism respects substitution") {
  auto sgp = test::spec("sgp.eqth");
  auto oper = test::spec("oper.eqth");
  TheoryMorphism j = passing_morphism(parameterize(sgp));
  Context ctx{{"x", "G"}, {"y", "G"}};
  Term t = app("prd", v("x"), v("y"));
  Term u = app("prd", v("y"), v("y"));
  TermTuple lhs = apply_morphism(j, ctx, substitute(t, {{"x", u}}));
  TermTuple tt = apply_morphism(j, ctx, t);
  TermTuple uu = apply_morphism(j, ctx, u);
  Term rhs = substitute(tt.terms.front(), {{tt.context[0].name, uu.terms.front()}});
  CHECK(lhs.terms.front() == rhs);

  // through a sort sent to the unit type
  ParamResult pr = parameterize(oper);
  TheoryMorphism t_A = erasure_morphism(pr);
  TermTuple out = apply_morphism(t_A, {{"q", "A"}, {"x", "X"}}, app("f'", v("q"), v("x")));
  CHECK(out.terms.front() == app("f", v("x")));
}

TEST_CASE("composition is associative and unital on generators") {
  auto dm = test::spec("dm.eqth");
  auto mon = test::spec("mon.eqth");
  TheoryMorphism sigma = test::morphism("sigma_mon_dm.mor", mon, dm);
  ParamResult pr = parameterize(dm);
  TheoryMorphism j = passing_morphism(pr);
  SpecRef dm_a = j.target;
  TheoryMorphism h = identity_morphism(dm_a);
  CHECK(same_generators(compose_morphisms(h, compose_morphisms(j, sigma)),
                        compose_morphisms(compose_morphisms(h, j), sigma)));
  CHECK(same_generators(compose_morphisms(identity_morphism(dm), sigma), sigma));
  CHECK(same_generators(compose_morphisms(sigma, identity_morphism(mon)), sigma));
}

TEST_CASE("error text carries kind and location") {
  Error e(ErrorKind::UnknownSort, "sort Q", SourceLocation{3, 7});
  CHECK(std::string(e.what()).find("3:7") != std::string::npos);
  CHECK(std::string(e.what()).find("UnknownSort") != std::string::npos);
  CHECK(e.detail() == "sort Q");
}
