#include <algorithm>

#include "paramspec/core.hpp"

namespace paramspec {

Term Term::var(std::string name) { return Term(Kind::Var, std::move(name), {}); }

Term Term::app(std::string op, std::vector<Term> args) {
  return Term(Kind::App, std::move(op), std::move(args));
}

const Binding* find_binding(const Context& ctx, std::string_view name) {
  for (const auto& b : ctx) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

ProductType context_type(const Context& ctx) {
  ProductType out;
  out.reserve(ctx.size());
  for (const auto& b : ctx) out.push_back(b.sort);
  return out;
}

namespace {

void print_term(const Term& t, std::string& out) {
  out += t.name();
  if (t.is_var() || t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ", ";
    print_term(t.args()[i], out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print_term(t, out);
  return out;
}

std::string to_string(std::span<const Term> tuple) {
  if (tuple.size() == 1) return to_string(tuple.front());
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ", ";
    print_term(tuple[i], out);
  }
  out += ')';
  return out;
}

std::string to_string(const Context& ctx) {
  std::string out = "(";
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ", ";
    out += ctx[i].name + ":" + ctx[i].sort;
  }
  out += ')';
  return out;
}

SortName typecheck_term(const Context& ctx, const Term& t,
                        const DecoratedSpec& spec) {
  if (t.is_var()) {
    const Binding* b = find_binding(ctx, t.name());
    if (!b) {
      throw Error(ErrorKind::UnboundVariable,
                  "variable '" + t.name() + "' is not bound in context " +
                      to_string(ctx));
    }
    return b->sort;
  }
  const OpDecl* op = spec.find_op(t.name());
  if (!op) {
    throw Error(ErrorKind::UnknownOp, "unknown operation '" + t.name() +
                                          "' in term " + to_string(t));
  }
  if (op->dom.size() != t.args().size()) {
    throw Error(ErrorKind::ArityMismatch,
                "'" + op->name + "' expects " + std::to_string(op->dom.size()) +
                    " argument(s) but term " + to_string(t) + " has " +
                    std::to_string(t.args().size()));
  }
  for (std::size_t i = 0; i < op->dom.size(); ++i) {
    SortName got = typecheck_term(ctx, t.args()[i], spec);
    if (got != op->dom[i]) {
      throw Error(ErrorKind::SortMismatch,
                  "argument " + std::to_string(i + 1) + " of " + to_string(t) +
                      " is " + to_string(t.args()[i]) + " of sort " + got +
                      ", expected " + op->dom[i]);
    }
  }
  return op->cod;
}

namespace {

bool all_ops_pure(const Term& t, const DecoratedSpec& spec) {
  if (t.is_var()) return true;
  if (!spec.op(t.name()).pure) return false;
  return std::all_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return all_ops_pure(a, spec); });
}

}  // namespace

bool is_pure_term(const Context& ctx, const Term& t, const DecoratedSpec& spec) {
  typecheck_term(ctx, t, spec);
  return all_ops_pure(t, spec);
}

Term substitute(const Term& t, const Substitution& binding) {
  if (t.is_var()) {
    auto it = binding.find(t.name());
    return it == binding.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(substitute(a, binding));
  return Term::app(t.name(), std::move(args));
}

Term substitute_checked(const DecoratedSpec& spec, const Context& ctx,
                        const Term& t, const Substitution& binding,
                        const Context& replacement_ctx) {
  for (const auto& [var, replacement] : binding) {
    const Binding* b = find_binding(ctx, var);
    if (!b) {
      throw Error(ErrorKind::UnboundVariable,
                  "substituted variable '" + var + "' is not bound in " +
                      to_string(ctx));
    }
    SortName got = typecheck_term(replacement_ctx, replacement, spec);
    if (got != b->sort) {
      throw Error(ErrorKind::SortMismatch,
                  "cannot substitute " + to_string(replacement) + " of sort " +
                      got + " for " + var + ":" + b->sort);
    }
  }
  return substitute(t, binding);
}

namespace {

bool alpha_equal_term(const Term& a, const Term& b,
                      const std::map<std::string, std::string>& rename) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) {
    auto it = rename.find(a.name());
    const std::string& mapped = it == rename.end() ? a.name() : it->second;
    return mapped == b.name();
  }
  if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!alpha_equal_term(a.args()[i], b.args()[i], rename)) return false;
  }
  return true;
}

}  // namespace

bool alpha_equal(const Context& lhs_ctx, std::span<const Term> lhs,
                 const Context& rhs_ctx, std::span<const Term> rhs) {
  if (lhs_ctx.size() != rhs_ctx.size() || lhs.size() != rhs.size()) return false;
  std::map<std::string, std::string> rename;
  for (std::size_t i = 0; i < lhs_ctx.size(); ++i) {
    if (lhs_ctx[i].sort != rhs_ctx[i].sort) return false;
    rename[lhs_ctx[i].name] = rhs_ctx[i].name;
  }
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (!alpha_equal_term(lhs[i], rhs[i], rename)) return false;
  }
  return true;
}

bool occurs_op(const Term& t, std::string_view op) {
  if (t.is_var()) return false;
  if (t.name() == op) return true;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs_op(a, op); });
}

bool occurs_var(const Term& t, std::string_view var) {
  if (t.is_var()) return t.name() == var;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs_var(a, var); });
}

std::string fresh_name(const std::string& base,
                       const std::vector<std::string>& used) {
  auto taken = [&](const std::string& n) {
    return std::find(used.begin(), used.end(), n) != used.end();
  };
  if (!taken(base)) return base;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!taken(candidate)) return candidate;
  }
}

Context generator_context(const DecoratedSpec& spec, const OpDecl& op) {
  std::vector<std::string> used;
  for (const auto& o : spec.ops) {
    if (o.dom.empty()) used.push_back(o.name);
  }
  Context ctx;
  std::size_t first = 0;
  if (spec.param_sort && !op.dom.empty() && op.dom.front() == *spec.param_sort) {
    ctx.push_back({std::string(kParamVar), op.dom.front()});
    used.emplace_back(kParamVar);
    first = 1;
  }
  const std::size_t rest = op.dom.size() - first;
  static const char* const kShort[] = {"x", "y", "z"};
  for (std::size_t i = 0; i < rest; ++i) {
    std::string preferred =
        rest <= 3 ? kShort[i] : "x" + std::to_string(i + 1);
    std::string name = fresh_name(preferred, used);
    used.push_back(name);
    ctx.push_back({name, op.dom[first + i]});
  }
  return ctx;
}

Term generator_term(const OpDecl& op, const Context& ctx) {
  std::vector<Term> args;
  args.reserve(ctx.size());
  for (const auto& b : ctx) args.push_back(Term::var(b.name));
  return Term::app(op.name, std::move(args));
}

}  // namespace paramspec
