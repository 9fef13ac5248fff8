#include "paramspec/cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "paramspec/construct.hpp"
#include "paramspec/dsl.hpp"
#include "paramspec/semantics.hpp"

namespace paramspec::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string base;
  std::string model_a;
  std::vector<std::string> bounds;
  std::optional<std::size_t> max_carrier;
  std::uint64_t cap = SearchOptions{}.cap;
  std::string which;
  std::string format = "text";
  std::string witness_dir;
  std::string sigma;
  std::string sigma_target;
};

// Error raised while reading a named file; the path prefixes the location.
struct FileError {
  std::string path;
  Error error;
};

template <typename F>
auto in_file(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw FileError{path, e};
  }
}

SpecRef load_spec(const std::string& path) {
  const SourceFile file = in_file(path, [&] { return load_source(path); });
  return in_file(path, [&] { return share(parse_spec(file.text)); });
}

FinModel load_model(const std::string& path, const SpecRef& spec) {
  const SourceFile file = in_file(path, [&] { return load_source(path); });
  return in_file(path, [&] { return parse_model(file.text, spec); });
}

TheoryMorphism load_morphism(const std::string& path, const SpecRef& source,
                             const SpecRef& target) {
  const SourceFile file = in_file(path, [&] { return load_source(path); });
  return in_file(path, [&] { return parse_morphism(file.text, source, target); });
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
  } else {
    save_text(o.output, text);
  }
}

Bounds parse_bounds(const Options& o, const DecoratedSpec& spec, std::size_t fallback) {
  Bounds b = uniform_bounds(spec, o.max_carrier.value_or(fallback));
  for (const auto& item : o.bounds) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::InvalidArgument, "bound '" + item + "' is not of the form S=k");
    }
    const std::string sort = item.substr(0, eq);
    if (!spec.has_sort(sort)) {
      throw Error(ErrorKind::UnknownSort, "bound names unknown sort " + sort);
    }
    try {
      std::size_t used = 0;
      const unsigned long k = std::stoul(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
      b[sort] = k;
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidArgument, "bound '" + item + "' is not of the form S=k");
    }
  }
  return b;
}

FinModel base_or_empty(const Options& o, const SpecRef& spec) {
  return o.base.empty() ? empty_model(spec) : load_model(o.base, spec);
}

FinModel require_base(const Options& o, const SpecRef& spec) {
  if (o.base.empty()) throw Error(ErrorKind::InvalidArgument, "--base is required");
  return load_model(o.base, spec);
}

int cmd_check(const Options& o, std::ostream& out) {
  const SourceFile file = in_file(o.input, [&] { return load_source(o.input); });
  const DecoratedSpec spec = in_file(o.input, [&] { return parse_spec(file.text); });
  out << "ok: " << spec.name << " (" << spec.sorts.size() << " sorts, " << spec.ops.size()
      << " ops, " << spec.eqs.size() << " equations)\n";
  return kOk;
}

int cmd_param(const Options& o, std::ostream& out) {
  emit(o, out, print_spec(*parameterize(load_spec(o.input)).param_spec));
  return kOk;
}

int cmd_addconst(const Options& o, std::ostream& out) {
  emit(o, out, print_spec(*add_parameter(*load_spec(o.input))));
  return kOk;
}

int cmd_cokleisli(const Options& o, std::ostream& out) {
  emit(o, out, print_spec(*cokleisli(*load_spec(o.input))));
  return kOk;
}

int cmd_passing(const Options& o, std::ostream& out) {
  emit(o, out, print_morphism(passing_morphism(parameterize(load_spec(o.input)))));
  return kOk;
}

SearchOptions search_options(const Options& o) {
  SearchOptions s;
  s.cap = o.cap;
  return s;
}

int cmd_models(const Options& o, std::ostream& out) {
  const SpecRef spec = load_spec(o.input);
  const FinModel base = base_or_empty(o, spec);
  std::string text;
  std::size_t n = 0;
  for_each_model_extending(spec, base, parse_bounds(o, *spec, 4), search_options(o),
                           [&](const FinModel& m) {
                             if (n++) text += "\n";
                             text += print_model(m);
                             return true;
                           });
  text += "// " + std::to_string(n) + (n == 1 ? " model\n" : " models\n");
  emit(o, out, text);
  return kOk;
}

int cmd_terminal(const Options& o, std::ostream& out) {
  const SpecRef spec = load_spec(o.input);
  const FinModel base = require_base(o, spec);
  emit(o, out, print_model(terminal_extension(parameterize(spec), base, search_options(o))));
  return kOk;
}

void write_witnesses(const Options& o, Report& report) {
  if (o.witness_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(o.witness_dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + o.witness_dir);
  for (auto& rec : report.records) {
    for (const auto& m : rec.witness_models) {
      const std::string path =
          (std::filesystem::path(o.witness_dir) / (rec.name + "_" + m.name + ".model"))
              .string();
      save_text(path, print_model(m));
      rec.witness_files.push_back(path);
    }
  }
}

int cmd_verify(const Options& o, std::ostream& out) {
  const SpecRef spec = load_spec(o.input);
  const SearchOptions search = search_options(o);
  Report report;
  if (o.which == "naturality") {
    if (o.sigma.empty() || o.sigma_target.empty()) {
      throw Error(ErrorKind::InvalidArgument,
                  "--which naturality needs --sigma and --sigma-target");
    }
    const SpecRef target = load_spec(o.sigma_target);
    const TheoryMorphism sigma = load_morphism(o.sigma, spec, target);
    report.records.push_back(verify_naturality(sigma, o.max_carrier.value_or(2), search));
  } else {
    const ParamResult pr = parameterize(spec);
    // with --model-a and no --base, the base is read off M_A
    auto model_a = [&] {
      return o.model_a.empty() ? terminal_extension(pr, require_base(o, spec), search)
                               : load_model(o.model_a, pr.param_spec);
    };
    if (o.which == "adding") {
      const FinModel ma = model_a();
      report.records.push_back(verify_bijection_adding(pr, ma, search));
      report.records.back().witness_models.push_back(ma);
    } else if (o.which == "passing") {
      const FinModel ma = model_a();
      const FinModel base = o.base.empty() ? ma : require_base(o, spec);
      report.records.push_back(verify_bijection_passing(pr, ma, base, search));
      report.records.back().witness_models.push_back(ma);
    } else if (o.which == "exact") {
      report.records.push_back(
          verify_exact_parameterization(pr, require_base(o, spec), search));
    } else if (o.which == "terminality") {
      const Bounds b = parse_bounds(o, *pr.param_spec, 4);
      report.records.push_back(
          verify_terminality(pr, require_base(o, spec), b.at(pr.param_sort()), search));
    }
  }
  write_witnesses(o, report);
  out << (o.format == "json" ? report.to_json() : report.to_text());
  return report.passed() ? kOk : kVerificationFailed;
}

bool use_colour(const std::ostream& err) {
  return &err == &std::cerr && std::getenv("NO_COLOR") == nullptr && isatty(2);
}

void report_error(std::ostream& err, const std::string& where, const Error& e) {
  const std::string tag = use_colour(err) ? "\033[1;31merror\033[0m" : "error";
  err << tag << ": ";
  if (!where.empty()) {
    err << where;
    if (e.location()) err << ":" << e.location()->line << ":" << e.location()->column;
    err << ": ";
  } else if (e.location()) {
    err << e.location()->line << ":" << e.location()->column << ": ";
  }
  err << to_string(e.kind()) << ": " << e.detail() << "\n";
}

int exit_code(const Error& e) {
  return e.kind() == ErrorKind::SearchSpaceOverflow ? kOverflow : kInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"paramspec: parameterization of decorated equational specifications"};
  app.name("paramspec");
  app.require_subcommand(1, 1);
  Options o;

  auto add_input = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("input", o.input, what)->required();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", o.output, "Output file (default: standard output)");
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--bound", o.bounds, "Carrier bound S=k for a sort (repeatable)");
    sub->add_option("--max-carrier", o.max_carrier, "Default carrier bound");
    sub->add_option("--cap", o.cap, "Maximum number of candidate tables");
  };

  CLI::App* check = app.add_subcommand("check", "Validate a specification");
  add_input(check, "Specification (.eqth)");
  CLI::App* param = app.add_subcommand("param", "Parameterize a specification");
  add_input(param, "Specification (.eqth)");
  add_output(param);
  CLI::App* addconst = app.add_subcommand("addconst", "Adjoin the parameter constant");
  add_input(addconst, "Parameterized specification (.eqth)");
  add_output(addconst);
  CLI::App* kl = app.add_subcommand("cokleisli", "Mark all ops pure and adjoin a constant");
  add_input(kl, "Parameterized specification (.eqth)");
  add_output(kl);
  CLI::App* passing = app.add_subcommand("passing", "Emit the parameter passing morphism");
  add_input(passing, "Specification (.eqth)");
  add_output(passing);
  CLI::App* models = app.add_subcommand("models", "List the models extending a base");
  add_input(models, "Specification (.eqth)");
  models->add_option("--base", o.base, "Base model (.model)");
  add_search(models);
  add_output(models);
  CLI::App* terminal = app.add_subcommand("terminal", "Build the terminal extension");
  add_input(terminal, "Specification (.eqth)");
  terminal->add_option("--base", o.base, "Base model (.model)")->required();
  terminal->add_option("--cap", o.cap, "Maximum number of candidate tables");
  add_output(terminal);
  CLI::App* verify = app.add_subcommand("verify", "Machine-check a bijection or law");
  add_input(verify, "Specification (.eqth)");
  verify->add_option("--base", o.base, "Base model (.model)");
  verify->add_option("--which", o.which, "Check to run")
      ->required()
      ->check(CLI::IsMember({"adding", "passing", "exact", "terminality", "naturality"}));
  verify->add_option("--model-a", o.model_a,
                     "Model of the parameterized spec (default: terminal extension)");
  verify->add_option("--sigma", o.sigma, "Morphism (.mor) for --which naturality");
  verify->add_option("--sigma-target", o.sigma_target, "Target specification of --sigma");
  verify->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--witness-dir", o.witness_dir, "Directory for witness models");
  add_search(verify);

  std::vector<std::string> argv_store{"paramspec"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (param->parsed()) return cmd_param(o, out);
    if (addconst->parsed()) return cmd_addconst(o, out);
    if (kl->parsed()) return cmd_cokleisli(o, out);
    if (passing->parsed()) return cmd_passing(o, out);
    if (models->parsed()) return cmd_models(o, out);
    if (terminal->parsed()) return cmd_terminal(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
  } catch (const FileError& e) {
    report_error(err, e.path, e.error);
    return exit_code(e.error);
  } catch (const Error& e) {
    report_error(err, "", e);
    return exit_code(e);
  }
  return kInputError;
}

}  // namespace paramspec::cli
