#include <algorithm>
#include <memory>

#include "paramspec/semantics.hpp"

namespace paramspec {

namespace {

// Carriers of the source sorts and tables of the pure source ops, as a
// partial model of `spec` (which must contain those symbols).
FinModel pure_base(const ParamResult& pr, const FinModel& base, const SpecRef& spec) {
  FinModel out;
  out.name = base.name;
  out.spec = spec;
  out.partial = true;
  for (const auto& s : pr.source->sorts) out.carriers[s] = base.carrier(s);
  for (const auto& op : pr.source->ops) {
    if (!op.pure) continue;
    auto it = base.tables.find(op.name);
    if (it == base.tables.end()) {
      throw Error(ErrorKind::MissingInterpretation,
                  "base model " + base.name + " does not interpret pure op '" +
                      op.name + "'");
    }
    out.tables[op.name] = it->second;
  }
  return out;
}

std::vector<const OpDecl*> non_pure_ops(const DecoratedSpec& spec) {
  std::vector<const OpDecl*> out;
  for (const auto& op : spec.ops) {
    if (!op.pure) out.push_back(&op);
  }
  return out;
}

// Rows of f'(alpha, -) in a model of the parameterized spec.
std::vector<Elem> slice(const FinModel& model, const OpDecl& primed, Elem alpha) {
  const auto& table = model.tables.at(primed.name);
  const std::size_t rows = table.size() / std::max<std::size_t>(model.size(primed.dom[0]), 1);
  return {table.begin() + static_cast<std::ptrdiff_t>(alpha * rows),
          table.begin() + static_cast<std::ptrdiff_t>((alpha + 1) * rows)};
}

bool agrees_off_parameter(const FinModel& n, const FinModel& c, const ParamResult& pr,
                          std::string* why) {
  for (const auto& s : pr.source->sorts) {
    if (n.carrier(s) != c.carrier(s)) {
      if (why) *why = "carriers of " + s + " differ from the base";
      return false;
    }
  }
  for (const auto& op : pr.source->ops) {
    if (op.pure && n.tables.at(op.name) != c.tables.at(op.name)) {
      if (why) *why = "pure op '" + op.name + "' differs from the base";
      return false;
    }
  }
  return true;
}

}  // namespace

FinModel terminal_extension(const ParamResult& pr, const FinModel& base,
                            const SearchOptions& options) {
  // One-point parameter: models of S_A over the base with |A| = 1 are exactly
  // the families of tables satisfying the translated equations.
  FinModel probe = pure_base(pr, base, pr.param_spec);
  probe.carriers[pr.param_sort()] = {"alpha"};
  std::vector<std::map<std::string, std::vector<Elem>>> families;
  const auto ops = non_pure_ops(*pr.source);
  for_each_model_extending(pr.param_spec, probe, {}, options, [&](const FinModel& m) {
    std::map<std::string, std::vector<Elem>> family;
    for (const OpDecl* op : ops) family[op->name] = m.tables.at(pr.linked(op->name));
    families.push_back(std::move(family));
    return true;
  });

  FinModel out = pure_base(pr, base, pr.param_spec);
  out.name = base.name + "_A";
  out.partial = false;
  auto& alphas = out.carriers[pr.param_sort()];
  for (std::size_t i = 0; i < families.size(); ++i) alphas.push_back("alpha" + std::to_string(i));
  for (const OpDecl* op : ops) {
    std::vector<Elem>& table = out.tables[pr.linked(op->name)];
    for (const auto& family : families) {
      const auto& rows = family.at(op->name);
      table.insert(table.end(), rows.begin(), rows.end());
    }
  }
  require_well_formed(out);
  SatisfactionReport report = check_model(out);
  if (!report.ok()) {
    throw Error(ErrorKind::InvalidArgument, "terminal extension fails its equations:\n" +
                                                report.to_text(*out.spec));
  }
  return out;
}

std::optional<ModelMorphism> morphism_into_candidate(const FinModel& n,
                                                     const FinModel& candidate,
                                                     const ParamResult& pr,
                                                     std::string* why) {
  if (!agrees_off_parameter(n, candidate, pr, why)) return std::nullopt;
  const SortName& a = pr.param_sort();
  const auto ops = non_pure_ops(*pr.source);
  ModelMorphism m;
  m.source = std::make_shared<const FinModel>(n);
  m.target = std::make_shared<const FinModel>(candidate);
  for (const auto& s : pr.source->sorts) {
    std::vector<Elem> id(n.size(s));
    for (Elem e = 0; e < id.size(); ++e) id[e] = e;
    m.components[s] = std::move(id);
  }
  std::vector<Elem>& at_a = m.components[a];
  for (Elem nu = 0; nu < n.size(a); ++nu) {
    std::vector<Elem> matches;
    for (Elem alpha = 0; alpha < candidate.size(a); ++alpha) {
      bool same = std::all_of(ops.begin(), ops.end(), [&](const OpDecl* op) {
        const OpDecl& primed = pr.param_spec->op(pr.linked(op->name));
        return slice(n, primed, nu) == slice(candidate, primed, alpha);
      });
      if (same) matches.push_back(alpha);
    }
    if (matches.size() != 1) {
      if (why) {
        *why = std::to_string(matches.size()) + " candidate images for " +
               n.label(a, nu) + " in " + n.name;
      }
      return std::nullopt;
    }
    at_a.push_back(matches.front());
  }
  std::string reason;
  if (!is_model_morphism(m, &reason)) {
    if (why) *why = reason;
    return std::nullopt;
  }
  return m;
}

namespace {

// Number of model morphisms n -> candidate that are the identity off A,
// found by trying every function n(A) -> candidate(A).
std::optional<std::uint64_t> count_morphisms(const FinModel& n, const FinModel& candidate,
                                             const ParamResult& pr,
                                             std::uint64_t limit) {
  const SortName& a = pr.param_sort();
  const std::size_t from = n.size(a);
  const std::size_t to = candidate.size(a);
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < from; ++i) {
    space *= to;
    if (space > limit) return std::nullopt;
  }
  ModelMorphism m;
  m.source = std::make_shared<const FinModel>(n);
  m.target = std::make_shared<const FinModel>(candidate);
  for (const auto& s : pr.source->sorts) {
    std::vector<Elem> id(n.size(s));
    for (Elem e = 0; e < id.size(); ++e) id[e] = e;
    m.components[s] = std::move(id);
  }
  std::uint64_t count = 0;
  if (from > 0 && to == 0) return count;
  std::vector<Elem>& f = m.components[a];
  f.assign(from, 0);
  while (true) {
    if (is_model_morphism(m)) ++count;
    std::size_t i = from;
    while (i > 0) {
      --i;
      if (f[i] + 1 < to) {
        ++f[i];
        break;
      }
      f[i] = 0;
      if (i == 0) return count;
    }
    if (from == 0) return count;
  }
}

}  // namespace

TerminalityResult check_terminality(const FinModel& candidate,
                                    const ParamResult& pr, const FinModel& base,
                                    const Bounds& bounds,
                                    const SearchOptions& options) {
  TerminalityResult result;
  require_well_formed(candidate);
  SatisfactionReport sat = check_model(candidate);
  if (!sat.ok()) {
    result.failure = "candidate is not a model:\n" + sat.to_text(*candidate.spec);
    return result;
  }
  const FinModel start = pure_base(pr, base, pr.param_spec);
  if (!agrees_off_parameter(candidate, start, pr, &result.failure)) {
    result.failure = "candidate does not extend the base: " + result.failure;
    return result;
  }
  Bounds only_a;
  only_a[pr.param_sort()] = bounds.count(pr.param_sort()) ? bounds.at(pr.param_sort()) : 0;
  result.terminal = true;
  for_each_model_extending(pr.param_spec, start, only_a, options, [&](const FinModel& n) {
    ++result.models_checked;
    std::string why;
    auto m = morphism_into_candidate(n, candidate, pr, &why);
    if (!m) {
      result.terminal = false;
      result.failure = n.name + ": " + why;
      return false;
    }
    auto count = count_morphisms(n, candidate, pr, options.exhaustive_morphism_limit);
    if (count && *count != 1) {
      result.terminal = false;
      result.failure = n.name + ": " + std::to_string(*count) +
                       " morphisms over the base";
      return false;
    }
    result.witnesses.push_back({n, *m, count});
    return true;
  });
  return result;
}

PassingResult param_passing_model(const ParamResult& pr, const FinModel& model_a,
                                  Elem alpha) {
  const SortName& a = pr.param_sort();
  if (alpha >= model_a.size(a)) {
    throw Error(ErrorKind::InvalidArgument,
                "argument index " + std::to_string(alpha) + " outside " + a);
  }
  FinModel m;
  m.name = model_a.name + "[" + model_a.label(a, alpha) + "]";
  m.spec = pr.source;
  for (const auto& s : pr.source->sorts) m.carriers[s] = model_a.carrier(s);
  for (const auto& op : pr.source->ops) {
    if (op.pure) {
      m.tables[op.name] = model_a.tables.at(op.name);
    } else {
      m.tables[op.name] = slice(model_a, pr.param_spec->op(pr.linked(op.name)), alpha);
    }
  }
  require_well_formed(m);
  SatisfactionReport sat = check_model(m);
  if (!sat.ok()) {
    throw Error(ErrorKind::InvalidArgument,
                "partial application fails an equation:\n" + sat.to_text(*m.spec));
  }

  ModelMorphism mor;
  mor.source = std::make_shared<const FinModel>(reduct(m, erasure_morphism(pr)));
  mor.target = std::make_shared<const FinModel>(model_a);
  for (const auto& s : pr.source->sorts) {
    std::vector<Elem> id(m.size(s));
    for (Elem e = 0; e < id.size(); ++e) id[e] = e;
    mor.components[s] = std::move(id);
  }
  mor.components[a] = {alpha};
  std::string why;
  if (!is_model_morphism(mor, &why)) {
    throw Error(ErrorKind::InvalidArgument, "passing morphism: " + why);
  }
  return {std::move(m), std::move(mor)};
}

}  // namespace paramspec
