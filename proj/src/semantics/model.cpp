#include "paramspec/model.hpp"

#include <algorithm>
#include <set>

namespace paramspec {

const std::vector<std::string>& FinModel::carrier(const SortName& sort) const {
  auto it = carriers.find(sort);
  if (it == carriers.end()) {
    throw Error(ErrorKind::MissingInterpretation,
                "model " + name + " has no carrier for sort " + sort);
  }
  return it->second;
}

std::size_t FinModel::product_size(const ProductType& type) const {
  std::size_t n = 1;
  for (const auto& s : type) n *= size(s);
  return n;
}

std::size_t FinModel::product_index(const ProductType& type,
                                    std::span<const Elem> tuple) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < type.size(); ++i) {
    index = index * size(type[i]) + tuple[i];
  }
  return index;
}

std::vector<Elem> FinModel::product_tuple(const ProductType& type,
                                          std::size_t index) const {
  std::vector<Elem> tuple(type.size());
  for (std::size_t i = type.size(); i-- > 0;) {
    const std::size_t n = size(type[i]);
    tuple[i] = index % n;
    index /= n;
  }
  return tuple;
}

Elem FinModel::apply(const OpDecl& op, std::span<const Elem> args) const {
  auto it = tables.find(op.name);
  if (it == tables.end()) {
    throw Error(ErrorKind::MissingInterpretation,
                "model " + name + " does not interpret '" + op.name + "'");
  }
  return it->second[product_index(op.dom, args)];
}

Elem FinModel::element(const SortName& sort, std::string_view label) const {
  const auto& c = carrier(sort);
  auto it = std::find(c.begin(), c.end(), label);
  if (it == c.end()) {
    throw Error(ErrorKind::UnknownElement, "'" + std::string(label) +
                                               "' is not an element of " + sort);
  }
  return static_cast<Elem>(it - c.begin());
}

const std::string& FinModel::label(const SortName& sort, Elem e) const {
  return carrier(sort).at(e);
}

bool same_structure(const FinModel& a, const FinModel& b) {
  return a.partial == b.partial && a.carriers == b.carriers &&
         a.tables == b.tables;
}

void require_well_formed(const FinModel& model) {
  const DecoratedSpec& spec = *model.spec;
  for (const auto& [sort, labels] : model.carriers) {
    if (!spec.has_sort(sort)) {
      throw Error(ErrorKind::UnknownSort,
                  "model " + model.name + " interprets unknown sort " + sort);
    }
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) {
      throw Error(ErrorKind::DuplicateElement,
                  "carrier of " + sort + " has a repeated element");
    }
  }
  for (const auto& sort : spec.sorts) {
    if (!model.partial && !model.has_carrier(sort)) {
      throw Error(ErrorKind::MissingCarrier,
                  "model " + model.name + " has no carrier for " + sort);
    }
  }
  for (const auto& [op_name, table] : model.tables) {
    const OpDecl* op = spec.find_op(op_name);
    if (!op) {
      throw Error(ErrorKind::UnknownOp,
                  "model " + model.name + " interprets unknown op " + op_name);
    }
    for (const auto& s : op->dom) {
      if (!model.has_carrier(s)) {
        throw Error(ErrorKind::MissingCarrier,
                    "table of " + op_name + " needs a carrier for " + s);
      }
    }
    if (!model.has_carrier(op->cod)) {
      throw Error(ErrorKind::MissingCarrier,
                  "table of " + op_name + " needs a carrier for " + op->cod);
    }
    if (table.size() != model.product_size(op->dom)) {
      throw Error(ErrorKind::MissingTableEntry,
                  "table of " + op_name + " has " + std::to_string(table.size()) +
                      " entries, expected " +
                      std::to_string(model.product_size(op->dom)));
    }
    for (Elem e : table) {
      if (e >= model.size(op->cod)) {
        throw Error(ErrorKind::UnknownElement,
                    "table of " + op_name + " leaves its codomain");
      }
    }
  }
  if (!model.partial) {
    for (const auto& op : spec.ops) {
      if (!model.has_table(op.name)) {
        throw Error(ErrorKind::MissingTableEntry,
                    "model " + model.name + " has no table for " + op.name);
      }
    }
  }
}

FinModel empty_model(const SpecRef& spec) {
  FinModel m;
  m.name = "empty";
  m.spec = spec;
  m.partial = true;
  return m;
}

FinModel pure_part(const FinModel& model) {
  FinModel out;
  out.name = model.name + "_0";
  out.spec = model.spec;
  out.partial = true;
  out.carriers = model.carriers;
  for (const auto& op : model.spec->ops) {
    auto it = model.tables.find(op.name);
    if (op.pure && it != model.tables.end()) out.tables.insert(*it);
  }
  return out;
}

Elem eval_term(const FinModel& model, const Env& env, const Term& t) {
  if (t.is_var()) {
    auto it = env.find(t.name());
    if (it == env.end()) {
      throw Error(ErrorKind::UnboundVariable,
                  "environment does not bind '" + t.name() + "'");
    }
    return it->second;
  }
  const OpDecl& op = model.spec->op(t.name());
  std::vector<Elem> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(eval_term(model, env, a));
  return model.apply(op, args);
}

namespace {

bool interprets(const FinModel& model, const Term& t) {
  if (t.is_var()) return true;
  if (!model.has_table(t.name())) return false;
  return std::all_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return interprets(model, a); });
}

bool interprets(const FinModel& model, const Equation& eq) {
  for (const auto& b : eq.context) {
    if (!model.has_carrier(b.sort)) return false;
  }
  return interprets(model, eq.lhs) && interprets(model, eq.rhs);
}

// Calls visit(env) for every environment over the context; stops when visit
// returns false. Returns false if stopped.
template <typename Visit>
bool for_each_env(const FinModel& model, const Context& ctx, Visit&& visit) {
  const ProductType type = context_type(ctx);
  const std::size_t n = model.product_size(type);
  Env env;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Elem> tuple = model.product_tuple(type, i);
    for (std::size_t k = 0; k < ctx.size(); ++k) env[ctx[k].name] = tuple[k];
    if (!visit(env)) return false;
  }
  return true;
}

}  // namespace

bool satisfies(const FinModel& model, const Equation& eq) {
  return for_each_env(model, eq.context, [&](const Env& env) {
    return eval_term(model, env, eq.lhs) == eval_term(model, env, eq.rhs);
  });
}

SatisfactionReport check_model(const FinModel& model, bool only_interpreted) {
  SatisfactionReport report;
  const auto& eqs = model.spec->eqs;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const Equation& eq = eqs[i];
    if (!interprets(model, eq)) {
      if (only_interpreted) continue;
      throw Error(ErrorKind::MissingInterpretation,
                  "model " + model.name + " does not interpret equation " +
                      std::to_string(i + 1));
    }
    if (model.product_size(context_type(eq.context)) == 0) {
      report.vacuous.push_back(i);
      continue;
    }
    const SortName sort = typecheck_term(eq.context, eq.lhs, *model.spec);
    for_each_env(model, eq.context, [&](const Env& env) {
      Elem l = eval_term(model, env, eq.lhs);
      Elem r = eval_term(model, env, eq.rhs);
      if (l != r) {
        SatisfactionReport::Failure f;
        f.equation = i;
        for (const auto& b : eq.context) {
          f.env.emplace_back(b.name, model.label(b.sort, env.at(b.name)));
        }
        f.lhs_value = model.label(sort, l);
        f.rhs_value = model.label(sort, r);
        report.failures.push_back(std::move(f));
      }
      return true;
    });
  }
  return report;
}

std::string SatisfactionReport::to_text(const DecoratedSpec& spec) const {
  std::string out;
  for (const auto& f : failures) {
    const Equation& eq = spec.eqs.at(f.equation);
    out += "equation " + std::to_string(f.equation + 1) + " " +
           to_string(eq.lhs) + " = " + to_string(eq.rhs) + " fails at {";
    for (std::size_t i = 0; i < f.env.size(); ++i) {
      if (i) out += ", ";
      out += f.env[i].first + "=" + f.env[i].second;
    }
    out += "}: " + f.lhs_value + " != " + f.rhs_value + "\n";
  }
  return out;
}

bool ModelMorphism::operator==(const ModelMorphism& other) const {
  return same_structure(*source, *other.source) &&
         same_structure(*target, *other.target) && components == other.components;
}

bool is_model_morphism(const ModelMorphism& m, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const FinModel& src = *m.source;
  const FinModel& tgt = *m.target;
  const DecoratedSpec& spec = *src.spec;
  for (const auto& sort : spec.sorts) {
    if (!src.has_carrier(sort)) continue;
    auto it = m.components.find(sort);
    if (it == m.components.end()) return fail("no component at " + sort);
    if (it->second.size() != src.size(sort)) {
      return fail("component at " + sort + " has the wrong size");
    }
    for (Elem e : it->second) {
      if (e >= tgt.size(sort)) return fail("component at " + sort + " leaves target");
    }
  }
  for (const auto& op : spec.ops) {
    if (!src.has_table(op.name) || !tgt.has_table(op.name)) continue;
    const std::size_t rows = src.product_size(op.dom);
    const auto& cod_map = m.components.at(op.cod);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<Elem> args = src.product_tuple(op.dom, r);
      std::vector<Elem> mapped(args.size());
      for (std::size_t k = 0; k < args.size(); ++k) {
        mapped[k] = m.components.at(op.dom[k])[args[k]];
      }
      if (cod_map[src.apply(op, args)] != tgt.apply(op, mapped)) {
        std::string at;
        for (std::size_t k = 0; k < args.size(); ++k) {
          if (k) at += ",";
          at += src.label(op.dom[k], args[k]);
        }
        return fail("not natural for " + op.name + " at (" + at + ")");
      }
    }
  }
  return true;
}

namespace {

std::vector<std::string> product_labels(const FinModel& model,
                                        const ProductType& type) {
  if (type.empty()) return {"unit"};
  const std::size_t n = model.product_size(type);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Elem> tuple = model.product_tuple(type, i);
    std::string label;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      if (k) label += '.';
      label += model.label(type[k], tuple[k]);
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

// Decomposes elements of reduct carriers (one per factor of `type`) into the
// flat tuple of elements of `model` over the concatenated images.
std::vector<Elem> flatten(const FinModel& model, const TheoryMorphism& m,
                          const ProductType& type, std::span<const Elem> elems) {
  std::vector<Elem> flat;
  for (std::size_t i = 0; i < type.size(); ++i) {
    auto part = model.product_tuple(m.sort_image(type[i]), elems[i]);
    flat.insert(flat.end(), part.begin(), part.end());
  }
  return flat;
}

}  // namespace

FinModel reduct(const FinModel& model, const TheoryMorphism& m) {
  FinModel out;
  out.name = model.name + "." + m.name;
  out.spec = m.source;
  out.partial = model.partial;
  const DecoratedSpec& source = *m.source;
  for (const auto& s : source.sorts) {
    const ProductType& img = m.sort_image(s);
    bool covered = std::all_of(img.begin(), img.end(), [&](const SortName& f) {
      return model.has_carrier(f);
    });
    if (covered) {
      out.carriers[s] = product_labels(model, img);
    } else {
      out.partial = true;
    }
  }
  for (const auto& op : source.ops) {
    bool covered = out.has_carrier(op.cod) &&
                   std::all_of(op.dom.begin(), op.dom.end(), [&](const SortName& s) {
                     return out.has_carrier(s);
                   });
    const TermTuple& img = m.op_image(op.name);
    covered = covered && std::all_of(img.terms.begin(), img.terms.end(),
                                     [&](const Term& t) { return interprets(model, t); });
    if (!covered) {
      out.partial = true;
      continue;
    }
    const ProductType& cod_img = m.sort_image(op.cod);
    const std::size_t rows = out.product_size(op.dom);
    std::vector<Elem> table(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<Elem> args = out.product_tuple(op.dom, r);
      std::vector<Elem> flat = flatten(model, m, op.dom, args);
      Env env;
      for (std::size_t k = 0; k < flat.size(); ++k) env[img.context[k].name] = flat[k];
      std::vector<Elem> values;
      values.reserve(img.terms.size());
      for (const auto& t : img.terms) values.push_back(eval_term(model, env, t));
      table[r] = model.product_index(cod_img, values);
    }
    out.tables[op.name] = std::move(table);
  }
  return out;
}

ModelMorphism reduct(const ModelMorphism& mm, const TheoryMorphism& m) {
  ModelMorphism out;
  out.source = std::make_shared<const FinModel>(reduct(*mm.source, m));
  out.target = std::make_shared<const FinModel>(reduct(*mm.target, m));
  for (const auto& s : m.source->sorts) {
    if (!out.source->has_carrier(s)) continue;
    const ProductType& img = m.sort_image(s);
    std::vector<Elem> comp(out.source->size(s));
    for (Elem e = 0; e < comp.size(); ++e) {
      std::vector<Elem> parts = mm.source->product_tuple(img, e);
      for (std::size_t k = 0; k < parts.size(); ++k) {
        parts[k] = mm.components.at(img[k])[parts[k]];
      }
      comp[e] = mm.target->product_index(img, parts);
    }
    out.components[s] = std::move(comp);
  }
  return out;
}

ModelMorphism whisker_model(const NatTransPresentation& nt, const FinModel& model) {
  ModelMorphism out;
  out.source = std::make_shared<const FinModel>(reduct(model, nt.source_mor));
  out.target = std::make_shared<const FinModel>(reduct(model, nt.target_mor));
  for (const auto& s : nt.source_mor.source->sorts) {
    const TermTuple& c = nt.component(s);
    const ProductType& from = nt.source_mor.sort_image(s);
    const ProductType& to = nt.target_mor.sort_image(s);
    std::vector<Elem> comp(out.source->size(s));
    for (Elem e = 0; e < comp.size(); ++e) {
      std::vector<Elem> parts = model.product_tuple(from, e);
      Env env;
      for (std::size_t k = 0; k < parts.size(); ++k) env[c.context[k].name] = parts[k];
      std::vector<Elem> values;
      for (const auto& t : c.terms) values.push_back(eval_term(model, env, t));
      comp[e] = model.product_index(to, values);
    }
    out.components[s] = std::move(comp);
  }
  return out;
}

}  // namespace paramspec
