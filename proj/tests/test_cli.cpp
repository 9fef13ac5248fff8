#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "paramspec/cli.hpp"
#include "support.hpp"

using namespace paramspec;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return test::fixture_path(name); }

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "paramspec_cli_test";
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("cli check and param") {
  Run r = run({"check", fx("dm.eqth")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("Dm") != std::string::npos);

  TempDir tmp;
  r = run({"param", fx("sgp.eqth"), "-o", tmp / "sgpA.eqth"});
  CHECK(r.code == cli::kOk);
  CHECK(slurp(tmp / "sgpA.eqth") == test::read_fixture("sgpA.eqth"));
  CHECK(run({"param", fx("nat.eqth")}).out == test::read_fixture("natA.eqth"));
  CHECK(run({"passing", fx("dm.eqth")}).out == test::read_fixture("j_dm.mor"));

  r = run({"param", fx("sgpA.eqth")});
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("AlreadyParameterized") != std::string::npos);
}

TEST_CASE("cli input errors") {
  Run r = run({"check", "/nonexistent/none.eqth"});
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("IoError") != std::string::npos);

  TempDir tmp;
  save_text(tmp / "bad.eqth", "spec Bad {\n  op f : X -> Y\n}\n");
  r = run({"check", tmp / "bad.eqth"});
  CHECK(r.code == cli::kInputError);
  CHECK(r.err.find("bad.eqth:2:3: UnknownSort") != std::string::npos);
  CHECK(r.err.find("\x1b[") == std::string::npos);

  CHECK(run({"verify", fx("oper.eqth"), "--which", "exact"}).code == cli::kInputError);
  CHECK(run({"verify", fx("oper.eqth"), "--which", "nonsense"}).code == cli::kInputError);
  CHECK(run({"bogus"}).code == cli::kInputError);
  CHECK(run({"terminal", fx("oper.eqth"), "--base", fx("z2mon.model")}).code ==
        cli::kInputError);
}

TEST_CASE("cli verify") {
  Run r = run({"verify", fx("oper.eqth"), "--which", "exact", "--base", fx("oper2x2.model")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("exact: PASS") != std::string::npos);
  CHECK(r.out.find("4 ↔ 4") != std::string::npos);

  r = run({"verify", fx("dm.eqth"), "--which", "adding", "--base", fx("dm_z2.model")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("1 ↔ 1") != std::string::npos);

  r = run({"verify", fx("st.eqth"), "--which", "passing", "--base", fx("st2x3.model"),
           "--format", "json"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.front() == '{');
  CHECK(r.out.find("\"status\": \"pass\"") != std::string::npos);

  r = run({"verify", fx("oper.eqth"), "--which", "naturality", "--sigma",
           fx("sigma_oper_sgp.mor"), "--sigma-target", fx("sgp.eqth")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("naturality: PASS") != std::string::npos);

  SUBCASE("overflow") {
    r = run({"verify", fx("oper.eqth"), "--which", "terminality", "--base",
             fx("oper2x2.model"), "--cap", "5"});
    CHECK(r.code == cli::kOverflow);
    CHECK(r.err.find("SearchSpaceOverflow") != std::string::npos);
  }
  SUBCASE("witnesses") {
    TempDir tmp;
    r = run({"verify", fx("oper.eqth"), "--which", "exact", "--base", fx("oper2x2.model"),
             "--witness-dir", tmp.path.string()});
    CHECK(r.code == cli::kOk);
    std::size_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(tmp.path)) {
      ++files;
      ParamResult pr = parameterize(test::spec("oper.eqth"));
      FinModel m = parse_model(slurp(e.path().string()), pr.param_spec);
      CHECK(m.size("A") == 4);
    }
    CHECK(files == 1);
  }
  SUBCASE("empty parameter carrier") {
    TempDir tmp;
    save_text(tmp / "empty.model",
              "model E for Oper_A {\n  sort A = {}\n  sort X = {x0, x1}\n"
              "  sort Y = {y0, y1}\n  op f' = {}\n}\n");
    r = run({"verify", fx("oper.eqth"), "--which", "adding", "--model-a", tmp / "empty.model"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("0 ↔ 0") != std::string::npos);
    r = run({"verify", fx("oper.eqth"), "--which", "passing", "--model-a", tmp / "empty.model"});
    CHECK(r.code == cli::kOk);
  }
}

TEST_CASE("cli models and terminal") {
  Run r = run({"models", fx("dm.eqth"), "--base", fx("dm_z2.model")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("// 1 model") != std::string::npos);

  r = run({"models", fx("oper.eqth"), "--max-carrier", "1"});
  CHECK(r.code == cli::kOk);
  // |Y|^|X| over |X|,|Y| <= 1: 1 + 1 + 0 + 1
  CHECK(r.out.find("// 3 models") != std::string::npos);

  TempDir tmp;
  r = run({"terminal", fx("st.eqth"), "--base", fx("st2x3.model"), "-o", tmp / "t.model"});
  CHECK(r.code == cli::kOk);
  ParamResult pr = parameterize(test::spec("st.eqth"));
  FinModel t = parse_model(slurp(tmp / "t.model"), pr.param_spec);
  CHECK(t.size("A") == 9);
  CHECK(check_model(t).ok());
}

TEST_CASE("cli pipeline") {
  TempDir tmp;
  REQUIRE(run({"param", fx("oper.eqth"), "-o", tmp / "operA.eqth"}).code == cli::kOk);
  REQUIRE(run({"addconst", tmp / "operA.eqth", "-o", tmp / "oper_a.eqth"}).code == cli::kOk);
  REQUIRE(run({"cokleisli", tmp / "operA.eqth", "-o", tmp / "oper_kl.eqth"}).code == cli::kOk);
  REQUIRE(run({"passing", fx("oper.eqth"), "-o", tmp / "j.mor"}).code == cli::kOk);
  REQUIRE(run({"terminal", fx("oper.eqth"), "--base", fx("oper2x2.model"), "-o",
               tmp / "operA.model"})
              .code == cli::kOk);

  // everything emitted re-parses and validates
  CHECK(run({"check", tmp / "oper_a.eqth"}).code == cli::kOk);
  CHECK(run({"check", tmp / "oper_kl.eqth"}).code == cli::kOk);
  DecoratedSpec a = parse_spec(slurp(tmp / "oper_a.eqth"));
  CHECK(a.param_const == std::optional<std::string>("a"));
  SpecRef oper = test::spec("oper.eqth");
  TheoryMorphism j = parse_morphism(slurp(tmp / "j.mor"), oper, share(a));
  CHECK(same_generators(j, passing_morphism(parameterize(oper))));

  Run r = run({"verify", fx("oper.eqth"), "--which", "adding", "--model-a",
               tmp / "operA.model"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("4 ↔ 4") != std::string::npos);
}

TEST_CASE("cli verify output is deterministic") {
  for (const char* which : {"adding", "passing", "exact", "terminality"}) {
    std::vector<std::string> args{"verify", fx("oper.eqth"), "--which", which, "--base",
                                  fx("oper2x2.model"), "--format", "json"};
    Run a = run(args);
    Run b = run(args);
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
  }
}
