#include "paramspec/construct.hpp"

namespace paramspec {

TheoryMorphism parameter_inclusion(const SpecRef& spec_a,
                                   const SpecRef& with_const) {
  TheoryMorphism m = inclusion_morphism(spec_a, with_const);
  m.name = "j_" + spec_a->name;
  return m;
}

TheoryMorphism passing_morphism(const ParamResult& pr, const SpecRef& with_const) {
  if (!with_const->param_const) {
    throw Error(ErrorKind::MissingParamSort,
                "spec " + with_const->name + " has no parameter constant");
  }
  const std::string& a = *with_const->param_const;
  TheoryMorphism m;
  m.name = "j_" + pr.source->name;
  m.source = pr.source;
  m.target = with_const;
  for (const auto& s : pr.source->sorts) m.sort_map[s] = {s};
  for (const auto& op : pr.source->ops) {
    Context ctx = generator_context(*with_const, op);
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

TheoryMorphism passing_morphism(const ParamResult& pr) {
  return passing_morphism(pr, add_parameter(pr));
}

NatTransPresentation passing_cell(const ParamResult& pr) {
  SpecRef with_const = add_parameter(pr);
  TheoryMorphism j = passing_morphism(pr, with_const);
  TheoryMorphism t_a = erasure_morphism(pr);
  NatTransPresentation cell{compose_morphisms(j, t_a),
                            parameter_inclusion(pr.param_spec, with_const),
                            {}};
  std::vector<std::string> constants;
  for (const auto& op : with_const->ops) {
    if (op.dom.empty()) constants.push_back(op.name);
  }
  const std::string x = fresh_name("x", constants);
  for (const auto& s : pr.param_spec->sorts) {
    if (s == pr.param_sort()) {
      cell.components[s] = {{}, {Term::app(*with_const->param_const)}};
    } else {
      cell.components[s] = {{{x, s}}, {Term::var(x)}};
    }
  }
  require_valid(cell);
  return cell;
}

LaxCocone canonical_cocone(const ParamResult& pr) {
  SpecRef with_const = add_parameter(pr);
  return {erasure_morphism(pr), with_const,
          parameter_inclusion(pr.param_spec, with_const),
          passing_morphism(pr, with_const), passing_cell(pr)};
}

namespace {

[[noreturn]] void cone_mismatch(const std::string& what,
                                const std::vector<std::string>& diffs = {}) {
  std::string msg = what;
  for (const auto& d : diffs) msg += "\n  " + d;
  throw Error(ErrorKind::ConeMismatch, msg);
}

bool is_identity_tuple(const TermTuple& c) {
  if (c.context.size() != c.terms.size()) return false;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    if (c.terms[i] != Term::var(c.context[i].name)) return false;
  }
  return true;
}

}  // namespace

MediatorResult mediate(const LaxCocone& cone, const ParamResult& pr) {
  const TheoryMorphism t_a = erasure_morphism(pr);
  if (!same_generators(cone.base, t_a)) {
    cone_mismatch("cone base is not the erasure morphism of " + pr.source->name);
  }
  if (!(*cone.leg_a.source == *pr.param_spec) ||
      !(*cone.leg.source == *pr.source) || !(*cone.leg_a.target == *cone.apex) ||
      !(*cone.leg.target == *cone.apex)) {
    cone_mismatch("cone legs do not have the expected endpoints");
  }
  require_valid(cone.leg_a);
  require_valid(cone.leg);
  require_valid(cone.cell);
  if (!same_generators(cone.cell.source_mor, compose_morphisms(cone.leg, t_a)) ||
      !same_generators(cone.cell.target_mor, cone.leg_a)) {
    cone_mismatch("cone 2-cell does not go from leg o base to leg_a");
  }
  for (const auto& s : pr.source->sorts) {
    if (!is_identity_tuple(cone.cell.component(s))) {
      cone_mismatch("cone 2-cell is not the identity at sort " + s);
    }
  }
  for (const auto& op : pr.source->ops) {
    if (op.pure &&
        !alpha_equal(cone.leg_a.op_image(op.name), cone.leg.op_image(op.name))) {
      cone_mismatch("legs disagree on pure operation '" + op.name + "'");
    }
  }

  SpecRef with_const = add_parameter(pr);
  const std::string& a = *with_const->param_const;
  TheoryMorphism h;
  h.name = "h_" + cone.apex->name;
  h.source = with_const;
  h.target = cone.apex;
  h.sort_map = cone.leg_a.sort_map;
  h.op_map = cone.leg_a.op_map;
  h.op_map[a] = cone.cell.component(pr.param_sort());
  require_valid(h);

  const LaxCocone canonical = canonical_cocone(pr);
  MediatorResult result{h, false, false, false};
  auto leg_a_diffs =
      generator_differences(compose_morphisms(h, canonical.leg_a), cone.leg_a);
  auto leg_diffs =
      generator_differences(compose_morphisms(h, canonical.leg), cone.leg);
  result.commutes_with_leg_a = leg_a_diffs.empty();
  result.commutes_with_leg = leg_diffs.empty();
  result.commutes_with_cell = same_cell(whisker(h, canonical.cell), cone.cell);
  if (!result.commutes_with_leg_a) cone_mismatch("h o j_A != leg_a", leg_a_diffs);
  if (!result.commutes_with_leg) cone_mismatch("h o j != leg", leg_diffs);
  if (!result.commutes_with_cell) cone_mismatch("h o t != cone 2-cell");
  return result;
}

TheoryMorphism parameterize_morphism(const TheoryMorphism& sigma,
                                     const ParamResult& pr,
                                     const ParamResult& pr_target) {
  require_valid(sigma, true);
  if (!(*sigma.source == *pr.source) || !(*sigma.target == *pr_target.source)) {
    throw Error(ErrorKind::EndpointMismatch,
                "parameterize_morphism: " + sigma.name +
                    " does not match the parameterized endpoints");
  }
  const std::string param_var = pr.param_var;
  TheoryMorphism out;
  out.name = "F_" + sigma.name;
  out.source = pr.param_spec;
  out.target = pr_target.param_spec;
  out.sort_map[pr.param_sort()] = {pr_target.param_sort()};
  for (const auto& s : pr.source->sorts) out.sort_map[s] = sigma.sort_image(s);

  for (const auto& op : pr.source->ops) {
    const TermTuple& img = sigma.op_image(op.name);
    TermTuple lifted;
    if (!op.pure) {
      if (find_binding(img.context, param_var)) {
        throw Error(ErrorKind::ReservedName,
                    "image of '" + op.name + "' already binds " + param_var);
      }
      lifted.context.push_back({param_var, pr_target.param_sort()});
    }
    lifted.context.insert(lifted.context.end(), img.context.begin(),
                          img.context.end());
    for (const auto& t : img.terms) {
      lifted.terms.push_back(
          translate_term(t, pr_target.op_link, *pr_target.source, param_var));
    }
    out.op_map[pr.linked(op.name)] = std::move(lifted);
  }
  require_valid(out);
  return out;
}

TheoryMorphism parameterize_morphism_with_const(const TheoryMorphism& sigma,
                                                const ParamResult& pr,
                                                const ParamResult& pr_target) {
  TheoryMorphism f = parameterize_morphism(sigma, pr, pr_target);
  SpecRef source = add_parameter(pr);
  SpecRef target = add_parameter(pr_target);
  f.name = "F'_" + sigma.name;
  f.source = source;
  f.target = target;
  f.op_map[*source->param_const] = {{}, {Term::app(*target->param_const)}};
  require_valid(f);
  return f;
}

std::pair<TheoryMorphism, TheoryMorphism> naturality_square(
    const TheoryMorphism& sigma) {
  ValidationReport report = validate_morphism(sigma, true);
  if (!report.ok()) {
    const bool undecorated = report.contains(ErrorKind::NotDecorated);
    throw Error(undecorated ? ErrorKind::NotDecorated
                            : report.diagnostics.front().kind,
                report.diagnostics.front().message);
  }
  ParamResult pr = parameterize(sigma.source);
  ParamResult pr_target = parameterize(sigma.target);
  SpecRef with_const = add_parameter(pr);
  SpecRef target_with_const = add_parameter(pr_target);
  TheoryMorphism j_source = passing_morphism(pr, with_const);
  TheoryMorphism j_target = passing_morphism(pr_target, target_with_const);
  TheoryMorphism lifted = parameterize_morphism_with_const(sigma, pr, pr_target);
  return {compose_morphisms(j_target, sigma), compose_morphisms(lifted, j_source)};
}

}  // namespace paramspec
