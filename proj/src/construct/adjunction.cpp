#include "paramspec/construct.hpp"

namespace paramspec {

namespace {

Term replace_constant(const Term& t, const std::string& constant,
                      const Term& replacement) {
  if (t.is_var()) return t;
  if (t.name() == constant && t.args().empty()) return replacement;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) {
    args.push_back(replace_constant(a, constant, replacement));
  }
  return Term::app(t.name(), std::move(args));
}

// Renames context variables that collide with `avoid` (e.g. a constant that
// the target spec adds).
TermTuple rename_away(TermTuple tuple, const std::string& avoid) {
  std::vector<std::string> used{avoid};
  for (const auto& b : tuple.context) used.push_back(b.name);
  Substitution sub;
  for (auto& b : tuple.context) {
    if (b.name != avoid) continue;
    std::string fresh = fresh_name(b.name + "'", used);
    used.push_back(fresh);
    sub.emplace(b.name, Term::var(fresh));
    b.name = fresh;
  }
  if (sub.empty()) return tuple;
  for (auto& t : tuple.terms) t = substitute(t, sub);
  return tuple;
}

}  // namespace

TheoryMorphism unit_morphism(const ParamResult& pr) {
  SpecRef target = cokleisli(*pr.param_spec);
  const std::string& a = *target->param_const;
  TheoryMorphism m;
  m.name = "eta_" + pr.source->name;
  m.source = pr.source;
  m.target = target;
  for (const auto& s : pr.source->sorts) m.sort_map[s] = {s};
  for (const auto& op : pr.source->ops) {
    Context ctx = generator_context(*target, op);
    Term image = generator_term(op, ctx);
    if (!op.pure) {
      std::vector<Term> args{Term::app(a)};
      args.insert(args.end(), image.args().begin(), image.args().end());
      image = Term::app(pr.linked(op.name), std::move(args));
    }
    m.op_map[op.name] = {ctx, {image}};
  }
  require_valid(m, true);
  return m;
}

TheoryMorphism unit_morphism(const SpecRef& spec) {
  return unit_morphism(parameterize(spec));
}

TheoryMorphism transpose_up(const TheoryMorphism& phi, const ParamResult& pr,
                            const SpecRef& spec_a) {
  if (!(*phi.source == *pr.source)) {
    throw Error(ErrorKind::EndpointMismatch,
                "transpose_up: source of " + phi.name + " is not " +
                    pr.source->name);
  }
  SpecRef kl = cokleisli(*spec_a);
  if (!(*phi.target == *kl)) {
    throw Error(ErrorKind::EndpointMismatch,
                "transpose_up: target of " + phi.name + " is not " + kl->name);
  }
  require_valid(phi);
  const std::string& a = *kl->param_const;
  const std::string param_var = pr.param_var;

  TheoryMorphism out;
  out.name = phi.name + "_up";
  out.source = pr.param_spec;
  out.target = spec_a;
  out.sort_map[pr.param_sort()] = {*spec_a->param_sort};
  for (const auto& s : pr.source->sorts) out.sort_map[s] = phi.sort_image(s);

  for (const auto& op : pr.source->ops) {
    const TermTuple& img = phi.op_image(op.name);
    if (op.pure) {
      for (const auto& t : img.terms) {
        if (occurs_op(t, a)) {
          throw Error(ErrorKind::NotDecorated,
                      "pure operation '" + op.name + "' is sent to " +
                          to_string(t) + ", which uses the parameter");
        }
      }
      out.op_map[op.name] = img;
      continue;
    }
    if (find_binding(img.context, param_var)) {
      throw Error(ErrorKind::ReservedName,
                  "image of '" + op.name + "' already binds " + param_var);
    }
    TermTuple up;
    up.context.push_back({param_var, *spec_a->param_sort});
    up.context.insert(up.context.end(), img.context.begin(), img.context.end());
    for (const auto& t : img.terms) {
      up.terms.push_back(replace_constant(t, a, Term::var(param_var)));
    }
    out.op_map[pr.linked(op.name)] = std::move(up);
  }
  require_valid(out);
  return out;
}

TheoryMorphism transpose_down(const TheoryMorphism& psi, const ParamResult& pr) {
  if (!(*psi.source == *pr.param_spec)) {
    throw Error(ErrorKind::EndpointMismatch,
                "transpose_down: source of " + psi.name + " is not " +
                    pr.param_spec->name);
  }
  require_valid(psi);
  const DecoratedSpec& spec_a = *psi.target;
  SpecRef kl = cokleisli(spec_a);
  const ProductType& param_image = psi.sort_image(pr.param_sort());
  if (param_image != ProductType{*spec_a.param_sort}) {
    throw Error(ErrorKind::InvalidMorphism,
                "transpose_down: " + psi.name +
                    " does not send the parameter sort to the parameter sort");
  }
  const std::string& a = *kl->param_const;

  TheoryMorphism out;
  out.name = psi.name + "_down";
  out.source = pr.source;
  out.target = kl;
  for (const auto& s : pr.source->sorts) out.sort_map[s] = psi.sort_image(s);

  for (const auto& op : pr.source->ops) {
    const TermTuple& img = psi.op_image(pr.linked(op.name));
    if (op.pure) {
      out.op_map[op.name] = rename_away(img, a);
      continue;
    }
    TermTuple down;
    down.context.assign(img.context.begin() + 1, img.context.end());
    Substitution sub{{img.context.front().name, Term::app(a)}};
    for (const auto& t : img.terms) down.terms.push_back(substitute(t, sub));
    out.op_map[op.name] = rename_away(std::move(down), a);
  }
  require_valid(out, true);
  return out;
}

}  // namespace paramspec
