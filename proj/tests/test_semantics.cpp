#include <functional>
#include <set>

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

FinModel sgp_model(const std::vector<Elem>& table, std::size_t n) {
  auto sgp = test::spec("sgp.eqth");
  FinModel m = empty_model(sgp);
  m.name = "M";
  for (std::size_t i = 0; i < n; ++i) m.carriers["G"].push_back("g" + std::to_string(i));
  m.carriers["G"];
  m.tables["prd"] = table;
  return m;
}

std::vector<FinModel> all_models(const std::string& file, std::size_t bound) {
  auto s = test::spec(file);
  return models_extending(s, empty_model(s), uniform_bounds(*s, bound));
}

}  // namespace

TEST_CASE("eval_term and check_model on Z/2") {
  FinModel z2 = sgp_model({0, 1, 1, 0}, 2);
  CHECK(eval_term(z2, {{"x", 1}}, app("prd", v("x"), v("x"))) == 0);
  CHECK(eval_term(z2, {{"x", 1}, {"y", 0}}, app("prd", v("x"), v("y"))) == 1);
  CHECK(check_model(z2).ok());
  int triples = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) triples += ((x ^ (y ^ z)) == ((x ^ y) ^ z));
  CHECK(triples == 8);

  // 2-element magmas: the oracle tests associativity directly
  int assoc = 0;
  for (unsigned code = 0; code < 16; ++code) {
    std::vector<Elem> t{code & 1u, (code >> 1) & 1u, (code >> 2) & 1u, (code >> 3) & 1u};
    auto mul = [&](Elem a, Elem b) { return t[a * 2 + b]; };
    bool ok = true;
    for (Elem x = 0; x < 2; ++x)
      for (Elem y = 0; y < 2; ++y)
        for (Elem z = 0; z < 2; ++z) ok = ok && mul(x, mul(y, z)) == mul(mul(x, y), z);
    CHECK(check_model(sgp_model(t, 2)).ok() == ok);
    assoc += ok;
  }
  CHECK(all_models("sgp.eqth", 2).size() == static_cast<std::size_t>(assoc + 1 + 1));

  SUBCASE("failure report") {
    auto dm = test::spec("dm.eqth");
    FinModel m = test::model("dm_z2.model", dm);
    m.partial = false;
    m.tables["dif"] = {0, 1};
    SatisfactionReport r = check_model(m);
    REQUIRE_FALSE(r.ok());
    CHECK(r.failures.front().equation == 5);
    CHECK(r.failures.front().env == std::vector<std::pair<std::string, std::string>>{{"x", "g"}});
    CHECK(r.to_text(*dm).find("{x=g}") != std::string::npos);
    CHECK_FALSE(satisfies(m, dm->eqs[5]));
    CHECK(satisfies(m, dm->eqs[3]));
  }
  SUBCASE("empty carriers hold vacuously") {
    FinModel e = sgp_model({}, 0);
    SatisfactionReport r = check_model(e);
    CHECK(r.ok());
    CHECK(r.vacuous == std::vector<std::size_t>{0});
  }
  SUBCASE("missing tables") {
    FinModel m = test::model("oper2x2.model", test::spec("oper.eqth"));
    CHECK(kind_of([&] { eval_term(m, {{"x", 0}}, app("f", v("x"))); }) ==
          ErrorKind::MissingInterpretation);
    CHECK(check_model(test::model("dm_z2.model", test::spec("dm.eqth")), true).ok());
  }
}

TEST_CASE("reducts") {
  auto oper = test::spec("oper.eqth");
  ParamResult pr = parameterize(oper);
  FinModel m = models_extending(oper, test::model("oper2x2.model", oper), {}).at(2);
  CHECK(m.tables.at("f") == std::vector<Elem>{1, 0});

  FinModel ma = reduct(m, erasure_morphism(pr));
  CHECK(ma.carrier("A") == std::vector<std::string>{"unit"});
  CHECK(ma.tables.at("f'") == m.tables.at("f"));
  CHECK(check_model(ma).ok());
  CHECK(same_structure(reduct(m, identity_morphism(oper)), m));

  FinModel tm = terminal_extension(pr, test::model("oper2x2.model", oper));
  FinModel with_a = tm;
  with_a.spec = add_parameter(pr);
  with_a.tables["a"] = {2};
  FinModel back = reduct(with_a, passing_morphism(pr, with_a.spec));
  CHECK(back.tables.at("f") == std::vector<Elem>{1, 0});

  SUBCASE("product carriers") {
    auto sgp = test::spec("sgp.eqth");
    TheoryMorphism pair = parse_morphism(
        "morphism d : Oper -> Sgp { sort X -> G, G sort Y -> G op f(x, y) -> prd(x, y) }",
        oper, sgp);
    FinModel r = reduct(sgp_model({0, 1, 1, 0}, 2), pair);
    CHECK(r.carrier("X") == std::vector<std::string>{"g0.g0", "g0.g1", "g1.g0", "g1.g1"});
    CHECK(r.tables.at("f") == std::vector<Elem>{0, 1, 1, 0});
  }
}

TEST_CASE("models_extending") {
  auto oper = test::spec("oper.eqth");
  CHECK(models_extending(oper, test::model("oper2x2.model", oper), {}).size() == 4);

  // Dm over Z/2: the oracle tries the four unary maps against the dif laws
  auto dm = test::spec("dm.eqth");
  std::size_t oracle = 0;
  for (unsigned d0 = 0; d0 < 2; ++d0) {
    for (unsigned d1 = 0; d1 < 2; ++d1) {
      unsigned d[2]{d0, d1};
      bool ok = d[0] == 0;
      for (unsigned x = 0; x < 2; ++x) {
        ok = ok && d[d[x]] == 0;
        for (unsigned y = 0; y < 2; ++y) ok = ok && d[x ^ y] == (d[x] ^ d[y]);
      }
      oracle += ok;
    }
  }
  auto found = models_extending(dm, test::model("dm_z2.model", dm), {});
  CHECK(found.size() == oracle);
  CHECK(oracle == 1);
  CHECK(found.front().tables.at("dif") == std::vector<Elem>{0, 0});

  // St over 2 locations and 3 values: 3^2 observation maps
  auto st = test::spec("st.eqth");
  CHECK(models_extending(st, test::model("st2x3.model", st), {}).size() == 9);

  SUBCASE("free sorts") {
    // oracle: sum over |X|,|Y| <= 2 of |Y|^|X|
    std::size_t expected = 0;
    for (std::size_t x = 0; x <= 2; ++x)
      for (std::size_t y = 0; y <= 2; ++y) {
        std::size_t n = 1;
        for (std::size_t i = 0; i < x; ++i) n *= y;
        expected += n;
      }
    CHECK(all_models("oper.eqth", 2).size() == expected);
    CHECK(count_candidates(*oper, empty_model(oper), uniform_bounds(*oper, 2)) == expected);
  }
  SUBCASE("determinism") {
    auto a = all_models("dm.eqth", 2);
    auto b = all_models("dm.eqth", 2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(print_model(a[i]) == print_model(b[i]));
  }
  SUBCASE("overflow") {
    SearchOptions small;
    small.cap = 10;
    CHECK(kind_of([&] {
            models_extending(oper, empty_model(oper), uniform_bounds(*oper, 3), small);
          }) == ErrorKind::SearchSpaceOverflow);
  }
  SUBCASE("bad base") {
    CHECK(kind_of([&] { models_extending(oper, empty_model(oper), {}); }) ==
          ErrorKind::InvalidArgument);
  }
}

TEST_CASE("terminal_extension") {
  struct Case {
    const char* spec;
    const char* base;
    std::size_t size;
  };
  for (const Case c : {Case{"oper.eqth", "oper2x2.model", 4}, Case{"dm.eqth", "dm_z2.model", 1},
                       Case{"st.eqth", "st2x3.model", 9}}) {
    CAPTURE(c.spec);
    ParamResult pr = parameterize(test::spec(c.spec));
    FinModel base = test::model(c.base, pr.source);
    FinModel t = terminal_extension(pr, base);
    CHECK(t.size("A") == c.size);
    CHECK(check_model(t).ok());
    CHECK_FALSE(t.partial);
    CHECK(t.name == base.name + "_A");

    // every slice is a distinct model of the source extending the base
    std::set<std::string> slices;
    for (Elem alpha = 0; alpha < t.size("A"); ++alpha) {
      PassingResult p = param_passing_model(pr, t, alpha);
      CHECK(check_model(p.model).ok());
      CHECK(is_model_morphism(p.morphism));
      p.model.name = "S";
      slices.insert(print_model(p.model));
    }
    CHECK(slices.size() == c.size);

    TerminalityResult r = check_terminality(t, pr, base, {{pr.param_sort(), 2}});
    CHECK(r.terminal);
    CHECK(r.failure.empty());
  }
}

TEST_CASE("check_terminality rejects non-terminal candidates") {
  auto oper = test::spec("oper.eqth");
  ParamResult pr = parameterize(oper);
  FinModel base = test::model("oper2x2.model", oper);
  FinModel t = terminal_extension(pr, base);

  FinModel empty = t;
  empty.carriers["A"].clear();
  empty.tables["f'"].clear();
  TerminalityResult r = check_terminality(empty, pr, base, {{"A", 1}});
  CHECK_FALSE(r.terminal);
  CHECK_FALSE(r.failure.empty());

  FinModel doubled = t;
  doubled.carriers["A"].push_back("extra");
  auto& f = doubled.tables["f'"];
  f.push_back(f[0]);
  f.push_back(f[1]);
  CHECK_FALSE(check_terminality(doubled, pr, base, {{"A", 1}}).terminal);

  std::string why;
  FinModel one = models_extending(pr.param_spec, base, {{"A", 1}}).at(1);
  CHECK_FALSE(morphism_into_candidate(one, doubled, pr, &why));
  CHECK_FALSE(why.empty());
  CHECK(morphism_into_candidate(one, t, pr));
}

// N_A(A) = A x L x Z with
// v'((p, x, n), y) = n if x == y else lup(p, y).
TEST_CASE("update is the unique morphism into the terminal state model") {
  auto st = test::spec("st.eqth");
  ParamResult pr = parameterize(st);
  FinModel base = test::model("st2x3.model", st);
  FinModel t = terminal_extension(pr, base);
  const std::size_t nA = t.size("A"), nL = base.size("L"), nZ = base.size("Z");
  REQUIRE(nA == 9);
  const OpDecl& v_ = pr.param_spec->op("v'");
  auto lup = [&](Elem p, Elem y) { return t.apply(v_, std::vector<Elem>{p, y}); };

  FinModel n = t;
  n.name = "N";
  n.carriers["A"].clear();
  for (Elem p = 0; p < nA; ++p)
    for (Elem x = 0; x < nL; ++x)
      for (Elem k = 0; k < nZ; ++k)
        n.carriers["A"].push_back(t.label("A", p) + "_" + base.label("L", x) + "_" +
                                  base.label("Z", k));
  auto nu = [&](Elem p, Elem x, Elem k) { return (p * nL + x) * nZ + k; };
  std::vector<Elem> table(n.carriers["A"].size() * nL);
  for (Elem p = 0; p < nA; ++p)
    for (Elem x = 0; x < nL; ++x)
      for (Elem k = 0; k < nZ; ++k)
        for (Elem y = 0; y < nL; ++y)
          table[nu(p, x, k) * nL + y] = x == y ? k : lup(p, y);
  n.tables["v'"] = table;
  REQUIRE(check_model(n).ok());

  std::optional<ModelMorphism> m = morphism_into_candidate(n, t, pr);
  REQUIRE(m);
  CHECK(is_model_morphism(*m));
  const auto& upd = m->components.at("A");
  int checked = 0;
  for (Elem p = 0; p < nA; ++p)
    for (Elem x = 0; x < nL; ++x)
      for (Elem k = 0; k < nZ; ++k)
        for (Elem y = 0; y < nL; ++y) {
          CHECK(lup(upd[nu(p, x, k)], y) == (x == y ? k : lup(p, y)));
          ++checked;
        }
  CHECK(checked == 108);

  // uniqueness, by brute force over the maps that fix the base
  // (for each nu, the number of alpha whose row matches the row of nu)
  std::uint64_t count = 1;
  for (Elem i = 0; i < n.size("A"); ++i) {
    std::uint64_t hits = 0;
    for (Elem a = 0; a < nA; ++a) {
      bool same = true;
      for (Elem y = 0; y < nL; ++y) same = same && lup(a, y) == table[i * nL + y];
      hits += same;
    }
    count *= hits;
  }
  CHECK(count == 1);
}

TEST_CASE("param_passing_model") {
  auto oper = test::spec("oper.eqth");
  ParamResult pr = parameterize(oper);
  FinModel t = terminal_extension(pr, test::model("oper2x2.model", oper));
  PassingResult swap = param_passing_model(pr, t, 2);
  CHECK(swap.model.tables.at("f") == std::vector<Elem>{1, 0});
  CHECK(swap.morphism.components.at("A") == std::vector<Elem>{2});
  CHECK(swap.morphism.components.at("X") == std::vector<Elem>{0, 1});
  CHECK(kind_of([&] { param_passing_model(pr, t, 4); }) == ErrorKind::InvalidArgument);

  auto dm = test::spec("dm.eqth");
  ParamResult pd = parameterize(dm);
  FinModel base = test::model("dm_z2.model", dm);
  FinModel td = terminal_extension(pd, base);
  PassingResult p = param_passing_model(pd, td, 0);
  CHECK(p.model.tables.at("dif") == std::vector<Elem>{0, 0});
  CHECK(p.model.tables.at("prd") == base.tables.at("prd"));
  CHECK(p.model.tables.at("unt") == base.tables.at("unt"));
}

TEST_CASE("verification records") {
  auto oper = test::spec("oper.eqth");
  ParamResult pr = parameterize(oper);
  FinModel base = test::model("oper2x2.model", oper);
  FinModel t = terminal_extension(pr, base);

  CheckRecord adding = verify_bijection_adding(pr, t);
  CHECK(adding.passed);
  CHECK(adding.bijection);
  CHECK(adding.cardinalities.at(0).second == 4);
  CHECK(adding.cardinalities.at(1).second == 4);

  CheckRecord passing = verify_bijection_passing(pr, t, base);
  CHECK(passing.passed);

  CheckRecord exact = verify_exact_parameterization(pr, base);
  CHECK(exact.passed);
  CHECK(exact.to_text().find("4 ↔ 4") != std::string::npos);
  CHECK(exact.witness_models.size() == 1);

  CheckRecord term = verify_terminality(pr, base, 2);
  CHECK(term.passed);
  CHECK_FALSE(term.bijection);
  CHECK(term.to_text().find("↔") == std::string::npos);

  Report report{{adding, exact}};
  CHECK(report.passed());
  std::string json = report.to_json();
  CHECK(json.find("\"name\": \"adding\"") != std::string::npos);
  CHECK(json.find("\"status\": \"pass\"") != std::string::npos);
}

TEST_CASE("check_nat_trans") {
  auto oper = test::spec("oper.eqth");
  ParamResult pr = parameterize(oper);
  SpecRef oa = add_parameter(pr);
  NatTransPresentation cell = passing_cell(pr);
  auto models = models_extending(oa, empty_model(oa), uniform_bounds(*oa, 2));
  CHECK(models.size() > 10);
  for (const auto& m : models) {
    CHECK(check_nat_trans(cell, m));
    CHECK(check_nat_trans(identity_cell(cell.target_mor), m));
    ModelMorphism w = whisker_model(cell, m);
    CHECK(is_model_morphism(w));
    CHECK(w.components.at("A") == std::vector<Elem>{m.tables.at("a").at(0)});
  }

  // a corrupted component fails in some model: s'(a, n) is not always z
  ParamResult pn = parameterize(test::spec("nat.eqth"));
  SpecRef na = add_parameter(pn);
  NatTransPresentation bad = passing_cell(pn);
  bad.components["N"] = {{{"n", "N"}}, {app("z")}};
  bool caught = false;
  for (const auto& m : models_extending(na, empty_model(na), uniform_bounds(*na, 2))) {
    CHECK(check_nat_trans(passing_cell(pn), m));
    const bool fixed = m.tables.at("s'").at(m.tables.at("a").at(0) * m.size("N") +
                                             m.tables.at("z").at(0)) == m.tables.at("z").at(0);
    CHECK(check_nat_trans(bad, m) == fixed);
    caught = caught || !fixed;
  }
  CHECK(caught);
}

TEST_CASE("morphisms_semantically_equal") {
  auto oper = test::spec("oper.eqth");
  auto sgp = test::spec("sgp.eqth");
  TheoryMorphism sigma = test::morphism("sigma_oper_sgp.mor", oper, sgp);
  auto [l, r] = naturality_square(sigma);
  CHECK(morphisms_semantically_equal(l, r, uniform_bounds(*l.target, 2)));
  CHECK(morphisms_semantically_equal(sigma, sigma, uniform_bounds(*sgp, 2)));

  ParamResult pr = parameterize(oper);
  TheoryMorphism t = erasure_morphism(pr);
  TheoryMorphism other = parse_morphism(
      "morphism u : Oper_A -> Oper { sort A -> X sort X -> X sort Y -> Y "
      "op f'(p, x) -> f(x) }",
      pr.param_spec, oper);
  CHECK_FALSE(morphisms_semantically_equal(t, other, uniform_bounds(*oper, 2)));
  CHECK(kind_of([&] { morphisms_semantically_equal(t, sigma, {}); }) ==
        ErrorKind::EndpointMismatch);

  CheckRecord nat = verify_naturality(sigma, 2);
  CHECK(nat.passed);
}

TEST_CASE("evaluation at a is a bijection for every small M_A") {
  for (const char* name : {"oper.eqth", "dm.eqth"}) {
    CAPTURE(name);
    ParamResult pr = parameterize(test::spec(name));
    SpecRef sa = add_parameter(pr);
    auto models = models_extending(pr.param_spec, empty_model(pr.param_spec),
                                   uniform_bounds(*pr.param_spec, 2));
    CHECK(!models.empty());
    for (const auto& ma : models) {
      CheckRecord rec = verify_bijection_adding(pr, ma);
      CHECK(rec.passed);
      // oracle: extend by each constant value and test satisfaction directly
      std::size_t oracle = 0;
      for (Elem alpha = 0; alpha < ma.size(pr.param_sort()); ++alpha) {
        FinModel m = ma;
        m.spec = sa;
        m.tables["a"] = {alpha};
        oracle += check_model(m).ok();
      }
      CHECK(oracle == ma.size(pr.param_sort()));
      CHECK(rec.cardinalities.at(0).second == oracle);
    }
  }
}

TEST_CASE("reduct along t_A is injective") {
  for (const char* name : {"oper.eqth", "dm.eqth"}) {
    CAPTURE(name);
    auto s = test::spec(name);
    ParamResult pr = parameterize(s);
    TheoryMorphism t = erasure_morphism(pr);
    auto models = all_models(name, 2);
    std::set<std::string> images;
    for (const auto& m : models) {
      FinModel r = reduct(m, t);
      r.name = "R";
      CHECK(check_model(r).ok());
      images.insert(print_model(r));
    }
    CHECK(images.size() == models.size());
  }
}

TEST_CASE("satisfaction is stable under reduct along the unit") {
  // models of S_a satisfy the translated equations, so their reducts along
  // the unit satisfy the source equations
  for (const char* name : {"sgp.eqth", "mon.eqth", "dm.eqth"}) {
    CAPTURE(name);
    auto s = test::spec(name);
    ParamResult pr = parameterize(s);
    SpecRef sa = add_parameter(pr);
    TheoryMorphism eta = unit_morphism(pr);
    for (const auto& m : models_extending(sa, empty_model(sa), uniform_bounds(*sa, 2))) {
      CHECK(check_model(reduct(m, eta)).ok());
    }
  }
}
