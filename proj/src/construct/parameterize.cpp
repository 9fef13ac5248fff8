#include <algorithm>

#include "paramspec/construct.hpp"

namespace paramspec {

const std::string& ParamResult::linked(const std::string& op) const {
  auto it = op_link.find(op);
  if (it == op_link.end()) {
    throw Error(ErrorKind::UnknownOp,
                "operation '" + op + "' is not an operation of " + source->name);
  }
  return it->second;
}

std::map<std::string, std::string> parameterized_op_names(
    const DecoratedSpec& spec) {
  std::vector<std::string> used;
  for (const auto& op : spec.ops) used.push_back(op.name);
  std::map<std::string, std::string> link;
  for (const auto& op : spec.ops) {
    if (op.pure) {
      link[op.name] = op.name;
      continue;
    }
    std::string primed = op.name + "'";
    while (std::find(used.begin(), used.end(), primed) != used.end()) {
      primed += "'";
    }
    used.push_back(primed);
    link[op.name] = primed;
  }
  return link;
}

// Structural recursion over the term; the cases are the pure/general rows of
// the elementary decorated specifications:
//   variable (projection)          x            |-> x
//   pure operation                 f(t1..tn)    |-> f(t1'..tn')
//   general operation              f(t1..tn)    |-> f'(p, t1'..tn')
// Composition and pairing need no separate case: the same p is passed to
// every general stage, so g(f(x)) becomes g'(p, f'(p, x)).
Term translate_term(const Term& t, const std::map<std::string, std::string>& link,
                    const DecoratedSpec& spec, std::string_view param_var) {
  if (t.is_var()) return t;
  const OpDecl& op = spec.op(t.name());
  std::vector<Term> args;
  args.reserve(t.args().size() + 1);
  if (!op.pure) args.push_back(Term::var(std::string(param_var)));
  for (const auto& a : t.args()) {
    args.push_back(translate_term(a, link, spec, param_var));
  }
  return Term::app(op.pure ? op.name : link.at(op.name), std::move(args));
}

Term translate_term(const Term& t, const DecoratedSpec& spec,
                    std::string_view param_var) {
  if (occurs_var(t, param_var)) {
    throw Error(ErrorKind::ReservedName,
                "parameter variable '" + std::string(param_var) +
                    "' already occurs in " + to_string(t));
  }
  return translate_term(t, parameterized_op_names(spec), spec, param_var);
}

ParamResult parameterize(const SpecRef& spec) {
  require_valid(*spec);
  if (spec->param_sort || spec->param_const) {
    throw Error(ErrorKind::AlreadyParameterized,
                "spec " + spec->name + " already has a parameter sort");
  }
  const std::string param_var{kParamVar};
  ParamResult pr;
  pr.source = spec;
  pr.op_link = parameterized_op_names(*spec);

  DecoratedSpec out;
  out.name = spec->name + "_A";
  const SortName param_sort = fresh_name("A", spec->sorts);
  out.sorts.push_back(param_sort);
  out.sorts.insert(out.sorts.end(), spec->sorts.begin(), spec->sorts.end());
  out.param_sort = param_sort;

  for (const auto& op : spec->ops) {
    if (op.pure) {
      out.ops.push_back(op);
      continue;
    }
    OpDecl primed{pr.op_link.at(op.name), {param_sort}, op.cod, false};
    primed.dom.insert(primed.dom.end(), op.dom.begin(), op.dom.end());
    out.ops.push_back(std::move(primed));
  }

  for (const auto& eq : spec->eqs) {
    if (find_binding(eq.context, param_var)) {
      throw Error(ErrorKind::ReservedName,
                  "equation context " + to_string(eq.context) +
                      " already binds the parameter variable");
    }
    Context ctx{{param_var, param_sort}};
    ctx.insert(ctx.end(), eq.context.begin(), eq.context.end());
    Equation translated{std::move(ctx),
                        translate_term(eq.lhs, pr.op_link, *spec, param_var),
                        translate_term(eq.rhs, pr.op_link, *spec, param_var)};
    out.eqs.push_back(std::move(translated));
  }

  require_valid(out);
  pr.param_spec = share(std::move(out));
  return pr;
}

TheoryMorphism erasure_morphism(const ParamResult& pr) {
  const DecoratedSpec& source = *pr.source;
  TheoryMorphism m;
  m.name = "t_" + source.name;
  m.source = pr.param_spec;
  m.target = pr.source;
  m.sort_map[pr.param_sort()] = {};
  for (const auto& s : source.sorts) m.sort_map[s] = {s};
  for (const auto& op : source.ops) {
    Context ctx = generator_context(source, op);
    m.op_map[pr.linked(op.name)] = {ctx, {generator_term(op, ctx)}};
  }
  return m;
}

namespace {

std::vector<std::string> names_in_use(const DecoratedSpec& spec) {
  std::vector<std::string> used;
  for (const auto& op : spec.ops) used.push_back(op.name);
  for (const auto& eq : spec.eqs) {
    for (const auto& b : eq.context) used.push_back(b.name);
  }
  used.emplace_back(kParamVar);
  return used;
}

std::string with_const_name(const std::string& name) {
  if (name.size() > 2 && name.ends_with("_A")) {
    return name.substr(0, name.size() - 2) + "_a";
  }
  return name + "_a";
}

}  // namespace

SpecRef add_parameter(const DecoratedSpec& spec_a) {
  require_valid(spec_a);
  if (!spec_a.param_sort) {
    throw Error(ErrorKind::MissingParamSort,
                "spec " + spec_a.name + " has no parameter sort");
  }
  if (spec_a.param_const) {
    throw Error(ErrorKind::AlreadyHasConstant,
                "spec " + spec_a.name + " already has parameter constant '" +
                    *spec_a.param_const + "'");
  }
  DecoratedSpec out = spec_a;
  out.name = with_const_name(spec_a.name);
  const std::string a = fresh_name("a", names_in_use(spec_a));
  out.ops.push_back({a, {}, *spec_a.param_sort, false});
  out.param_const = a;
  require_valid(out);
  return share(std::move(out));
}

SpecRef cokleisli(const DecoratedSpec& spec_a) {
  require_valid(spec_a);
  if (!spec_a.param_sort) {
    throw Error(ErrorKind::MissingParamSort,
                "spec " + spec_a.name + " has no parameter sort");
  }
  if (spec_a.param_const) {
    throw Error(ErrorKind::AlreadyHasConstant,
                "spec " + spec_a.name + " already has parameter constant '" +
                    *spec_a.param_const + "'");
  }
  DecoratedSpec out = spec_a;
  out.name = spec_a.name + "_kl";
  for (auto& op : out.ops) op.pure = true;
  const std::string a = fresh_name("a", names_in_use(spec_a));
  out.ops.push_back({a, {}, *spec_a.param_sort, false});
  out.param_const = a;
  require_valid(out);
  return share(std::move(out));
}

}  // namespace paramspec
