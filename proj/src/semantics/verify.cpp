#include <algorithm>
#include <set>

#include "paramspec/semantics.hpp"

namespace paramspec {

namespace {

FinModel rebind(FinModel model, const SpecRef& spec) {
  model.spec = spec;
  model.partial = true;
  return model;
}

// f = {(x0) -> y0, (x1) -> y1}
std::string table_text(const FinModel& m, const OpDecl& op) {
  std::string out = op.name + " = {";
  const auto& table = m.tables.at(op.name);
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (r) out += ", ";
    auto args = m.product_tuple(op.dom, r);
    out += "(";
    for (std::size_t k = 0; k < args.size(); ++k) {
      if (k) out += ", ";
      out += m.label(op.dom[k], args[k]);
    }
    out += ") -> " + m.label(op.cod, table[r]);
  }
  return out + "}";
}

std::string non_pure_tables(const FinModel& m) {
  std::string out;
  for (const auto& op : m.spec->ops) {
    if (op.pure || !m.has_table(op.name)) continue;
    if (!out.empty()) out += "; ";
    out += table_text(m, op);
  }
  return out.empty() ? "(no non-pure ops)" : out;
}

FinModel source_base(const ParamResult& pr, const FinModel& base) {
  FinModel out;
  out.name = base.name;
  out.spec = pr.source;
  out.partial = true;
  for (const auto& s : pr.source->sorts) out.carriers[s] = base.carrier(s);
  for (const auto& op : pr.source->ops) {
    if (op.pure) out.tables[op.name] = base.tables.at(op.name);
  }
  return out;
}

void require_model(const FinModel& m) {
  require_well_formed(m);
  if (m.partial) {
    throw Error(ErrorKind::InvalidArgument, "model " + m.name + " must be total");
  }
  SatisfactionReport sat = check_model(m);
  if (!sat.ok()) {
    throw Error(ErrorKind::InvalidArgument,
                "model " + m.name + " fails its equations:\n" + sat.to_text(*m.spec));
  }
}

std::size_t count_semantic_agreement(const TheoryMorphism& f, const TheoryMorphism& g,
                                     const Bounds& bounds, const SearchOptions& options,
                                     std::string* counterexample) {
  std::size_t checked = 0;
  bool equal = true;
  for_each_model_extending(f.target, empty_model(f.target), bounds, options,
                           [&](const FinModel& m) {
                             ++checked;
                             if (!same_structure(reduct(m, f), reduct(m, g))) {
                               equal = false;
                               if (counterexample) *counterexample = m.name;
                               return false;
                             }
                             return true;
                           });
  return equal ? checked : static_cast<std::size_t>(-1);
}

}  // namespace

CheckRecord verify_bijection_adding(const ParamResult& pr, const FinModel& model_a,
                                    const SearchOptions& options) {
  require_model(model_a);
  SpecRef with_const = add_parameter(pr);
  const std::string& a = *with_const->param_const;
  const SortName& sort_a = pr.param_sort();
  CheckRecord rec;
  rec.name = "adding";
  rec.bijection = true;
  std::vector<Elem> values;
  for_each_model_extending(with_const, rebind(model_a, with_const), {}, options,
                           [&](const FinModel& m) {
                             const Elem v = m.tables.at(a).at(0);
                             rec.details.push_back(m.name + " |-> " + a + " = " +
                                                   m.label(sort_a, v));
                             values.push_back(v);
                             return true;
                           });
  std::set<Elem> distinct(values.begin(), values.end());
  rec.cardinalities = {{"Mod(" + with_const->name + ")|" + model_a.name, values.size()},
                       {model_a.name + "(" + sort_a + ")", model_a.size(sort_a)}};
  rec.passed = distinct.size() == values.size() && values.size() == model_a.size(sort_a);
  if (!rec.passed) rec.details.push_back("evaluation at " + a + " is not bijective");
  return rec;
}

CheckRecord verify_bijection_passing(const ParamResult& pr, const FinModel& model_a,
                                     const FinModel& base,
                                     const SearchOptions& options) {
  require_model(model_a);
  const SortName& sort_a = pr.param_sort();
  CheckRecord rec;
  rec.name = "passing";
  rec.bijection = true;
  rec.passed = true;
  auto fail = [&](std::string why) {
    rec.passed = false;
    rec.details.push_back(std::move(why));
  };

  // Pairs (M, m): M extends the base, m : t_A^md(M) -> M_A is the identity
  // off A; m_A is then a choice of one element.
  struct Pair {
    FinModel model;
    Elem alpha;
  };
  std::vector<Pair> pairs;
  const TheoryMorphism t_a = erasure_morphism(pr);
  for_each_model_extending(pr.source, source_base(pr, base), {}, options,
                           [&](const FinModel& m) {
                             ModelMorphism mor;
                             mor.source = std::make_shared<const FinModel>(reduct(m, t_a));
                             mor.target = std::make_shared<const FinModel>(model_a);
                             for (const auto& s : pr.source->sorts) {
                               std::vector<Elem> id(m.size(s));
                               for (Elem e = 0; e < id.size(); ++e) id[e] = e;
                               mor.components[s] = std::move(id);
                             }
                             for (Elem alpha = 0; alpha < model_a.size(sort_a); ++alpha) {
                               mor.components[sort_a] = {alpha};
                               if (is_model_morphism(mor)) pairs.push_back({m, alpha});
                             }
                             return true;
                           });

  auto find_pair = [&](const FinModel& m, Elem alpha) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i].alpha == alpha && same_structure(pairs[i].model, m)) {
        return static_cast<std::ptrdiff_t>(i);
      }
    }
    return -1;
  };

  // alpha |-> (M_{A,alpha}, const alpha)
  std::set<std::ptrdiff_t> hit;
  for (Elem alpha = 0; alpha < model_a.size(sort_a); ++alpha) {
    PassingResult p = param_passing_model(pr, model_a, alpha);
    const std::ptrdiff_t i = find_pair(p.model, p.morphism.components.at(sort_a).at(0));
    const std::string label = model_a.label(sort_a, alpha);
    if (i < 0) {
      fail(label + " |-> pair not found among extensions of the base");
      continue;
    }
    if (!hit.insert(i).second) fail(label + " |-> pair already hit");
    rec.details.push_back(label + " |-> (" + non_pure_tables(p.model) + ", m_" +
                          sort_a + " = " + label + ")");
  }
  if (hit.size() != pairs.size()) fail("some pairs are not of the form (M_alpha, alpha)");

  // (j^md, t^md) on Mod(S_a)|M_A lands on the same pairs.
  SpecRef with_const = add_parameter(pr);
  const TheoryMorphism j = passing_morphism(pr, with_const);
  const NatTransPresentation t = passing_cell(pr);
  std::size_t pointed = 0;
  for_each_model_extending(with_const, rebind(model_a, with_const), {}, options,
                           [&](const FinModel& ma) {
                             ++pointed;
                             FinModel m = reduct(ma, j);
                             ModelMorphism cell = whisker_model(t, ma);
                             std::string why;
                             if (!is_model_morphism(cell, &why)) {
                               fail(ma.name + ": t^md is not a model morphism: " + why);
                               return true;
                             }
                             if (find_pair(m, cell.components.at(sort_a).at(0)) < 0) {
                               fail(ma.name + ": (j^md, t^md) is not a pair over the base");
                             }
                             return true;
                           });

  rec.cardinalities = {{model_a.name + "(" + sort_a + ")", model_a.size(sort_a)},
                       {"pairs (M, m)", pairs.size()},
                       {"Mod(" + with_const->name + ")|" + model_a.name, pointed}};
  if (pointed != pairs.size()) fail("Mod(S_a)|M_A and the pair set differ in size");
  return rec;
}

CheckRecord verify_exact_parameterization(const ParamResult& pr,
                                          const FinModel& base,
                                          const SearchOptions& options) {
  CheckRecord rec;
  rec.name = "exact";
  rec.bijection = true;
  const FinModel terminal = terminal_extension(pr, base, options);
  const std::vector<FinModel> models =
      models_extending(pr.source, source_base(pr, base), {}, options);
  const SortName& sort_a = pr.param_sort();
  rec.cardinalities = {{terminal.name + "(" + sort_a + ")", terminal.size(sort_a)},
                       {"Mod(" + pr.source->name + ")|" + base.name, models.size()}};
  rec.passed = true;
  std::set<std::size_t> hit;
  for (Elem alpha = 0; alpha < terminal.size(sort_a); ++alpha) {
    const FinModel m = param_passing_model(pr, terminal, alpha).model;
    auto it = std::find_if(models.begin(), models.end(),
                           [&](const FinModel& n) { return same_structure(n, m); });
    const std::string label = terminal.label(sort_a, alpha);
    if (it == models.end()) {
      rec.passed = false;
      rec.details.push_back(label + " |-> no enumerated model");
      continue;
    }
    const std::size_t i = static_cast<std::size_t>(it - models.begin());
    if (!hit.insert(i).second) {
      rec.passed = false;
      rec.details.push_back(label + " |-> " + it->name + " already hit");
    }
    rec.details.push_back(label + " |-> " + it->name + ": " + non_pure_tables(*it));
  }
  if (hit.size() != models.size()) {
    rec.passed = false;
    rec.details.push_back("pairing is not surjective");
  }
  rec.witness_models.push_back(terminal);
  return rec;
}

bool check_nat_trans(const NatTransPresentation& nt, const FinModel& model) {
  return is_model_morphism(whisker_model(nt, model));
}

bool morphisms_semantically_equal(const TheoryMorphism& f, const TheoryMorphism& g,
                                  const Bounds& bounds, const SearchOptions& options) {
  if (!(*f.source == *g.source) || !(*f.target == *g.target)) {
    throw Error(ErrorKind::EndpointMismatch,
                f.name + " and " + g.name + " do not share endpoints");
  }
  return count_semantic_agreement(f, g, bounds, options, nullptr) !=
         static_cast<std::size_t>(-1);
}

CheckRecord verify_naturality(const TheoryMorphism& sigma, std::size_t max_size,
                              const SearchOptions& options) {
  CheckRecord rec;
  rec.name = "naturality";
  auto [left, right] = naturality_square(sigma);
  const auto diffs = generator_differences(left, right);
  for (const auto& op : sigma.source->ops) {
    rec.details.push_back(op.name + ": " + to_string(left.op_image(op.name)) + " | " +
                          to_string(right.op_image(op.name)));
  }
  for (const auto& d : diffs) rec.details.push_back("generator mismatch: " + d);
  std::string counterexample;
  const std::size_t checked = count_semantic_agreement(
      left, right, uniform_bounds(*left.target, max_size), options, &counterexample);
  const bool semantic = checked != static_cast<std::size_t>(-1);
  if (!semantic) rec.details.push_back("reducts differ on " + counterexample);
  rec.cardinalities = {{"generators", sigma.source->ops.size()}};
  if (semantic) rec.cardinalities.push_back({"models of " + left.target->name, checked});
  rec.passed = diffs.empty() && semantic;
  return rec;
}

CheckRecord verify_terminality(const ParamResult& pr, const FinModel& base,
                               std::size_t param_bound, const SearchOptions& options) {
  CheckRecord rec;
  rec.name = "terminality";
  const FinModel terminal = terminal_extension(pr, base, options);
  const SortName& sort_a = pr.param_sort();
  TerminalityResult r =
      check_terminality(terminal, pr, base, {{sort_a, param_bound}}, options);
  rec.passed = r.terminal;
  std::size_t exhaustive = 0;
  for (const auto& w : r.witnesses) {
    std::string line = w.model.name + " -> " + terminal.name + ": m_" + sort_a + " = [";
    const auto& comp = w.morphism.components.at(sort_a);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (i) line += ", ";
      line += w.model.label(sort_a, i) + " -> " + terminal.label(sort_a, comp[i]);
    }
    line += "]";
    if (w.exhaustive_count) {
      ++exhaustive;
      line += " (unique among all functions)";
    }
    rec.details.push_back(std::move(line));
  }
  if (!r.terminal) rec.details.push_back("not terminal: " + r.failure);
  rec.cardinalities = {{terminal.name + "(" + sort_a + ")", terminal.size(sort_a)},
                       {"extensions checked", r.models_checked},
                       {"exhaustively unique", exhaustive}};
  rec.witness_models.push_back(terminal);
  return rec;
}

}  // namespace paramspec
