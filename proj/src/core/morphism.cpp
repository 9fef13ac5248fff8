#include "paramspec/morphism.hpp"

#include <algorithm>
#include <set>

namespace paramspec {

bool alpha_equal(const TermTuple& a, const TermTuple& b) {
  return alpha_equal(a.context, a.terms, b.context, b.terms);
}

std::string to_string(const TermTuple& t) {
  return to_string(t.context) + " |- " + to_string(std::span<const Term>(t.terms));
}

const ProductType& TheoryMorphism::sort_image(const SortName& sort) const {
  auto it = sort_map.find(sort);
  if (it == sort_map.end()) {
    throw Error(ErrorKind::UnmappedSymbol,
                "morphism " + name + " does not map sort '" + sort + "'");
  }
  return it->second;
}

const TermTuple& TheoryMorphism::op_image(const std::string& op) const {
  auto it = op_map.find(op);
  if (it == op_map.end()) {
    throw Error(ErrorKind::UnmappedSymbol,
                "morphism " + name + " does not map operation '" + op + "'");
  }
  return it->second;
}

ProductType TheoryMorphism::image_type(const ProductType& type) const {
  ProductType out;
  for (const auto& s : type) {
    const auto& img = sort_image(s);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

namespace {

std::string describe(const TheoryMorphism& m) {
  return m.name + " : " + (m.source ? m.source->name : "?") + " -> " +
         (m.target ? m.target->name : "?");
}

}  // namespace

ValidationReport validate_morphism(const TheoryMorphism& m, bool decorated) {
  ValidationReport report;
  auto add = [&](ErrorKind kind, std::string msg, SpecItem item) {
    report.diagnostics.push_back({kind, describe(m) + ": " + msg, item});
  };
  if (!m.source || !m.target) {
    add(ErrorKind::EndpointMismatch, "missing endpoint", {});
    return report;
  }
  const auto& src = *m.source;
  const auto& tgt = *m.target;

  for (std::size_t i = 0; i < src.sorts.size(); ++i) {
    SpecItem item{SpecItem::Section::Sort, i};
    auto it = m.sort_map.find(src.sorts[i]);
    if (it == m.sort_map.end()) {
      add(ErrorKind::UnmappedSymbol, "sort '" + src.sorts[i] + "' is not mapped",
          item);
      continue;
    }
    for (const auto& s : it->second) {
      if (!tgt.has_sort(s)) {
        add(ErrorKind::UnknownSort,
            "sort '" + src.sorts[i] + "' is mapped to undeclared sort '" + s + "'",
            item);
      }
    }
  }
  for (const auto& [s, _] : m.sort_map) {
    if (!src.has_sort(s)) {
      add(ErrorKind::UnknownSort, "maps '" + s + "' which is not a source sort", {});
    }
  }
  if (!report.ok()) return report;

  for (std::size_t i = 0; i < src.ops.size(); ++i) {
    const OpDecl& op = src.ops[i];
    SpecItem item{SpecItem::Section::Op, i};
    auto it = m.op_map.find(op.name);
    if (it == m.op_map.end()) {
      add(ErrorKind::UnmappedSymbol, "operation '" + op.name + "' is not mapped",
          item);
      continue;
    }
    const TermTuple& img = it->second;
    if (context_type(img.context) != m.image_type(op.dom)) {
      add(ErrorKind::SortMismatch,
          "context " + to_string(img.context) + " of '" + op.name +
              "' is not the image of its domain",
          item);
      continue;
    }
    std::set<std::string> names;
    bool ctx_ok = true;
    for (const auto& b : img.context) {
      if (!names.insert(b.name).second) {
        add(ErrorKind::DuplicateVariable,
            "variable '" + b.name + "' bound twice in image of '" + op.name + "'",
            item);
        ctx_ok = false;
      }
      const OpDecl* shadow = tgt.find_op(b.name);
      if (shadow && shadow->dom.empty()) {
        add(ErrorKind::VariableShadowsConstant,
            "variable '" + b.name + "' shadows a constant of " + tgt.name, item);
        ctx_ok = false;
      }
    }
    if (!ctx_ok) continue;
    const ProductType& cod = m.sort_image(op.cod);
    if (cod.size() != img.terms.size()) {
      add(ErrorKind::ArityMismatch,
          "image of '" + op.name + "' has " + std::to_string(img.terms.size()) +
              " component(s), codomain image has " + std::to_string(cod.size()),
          item);
      continue;
    }
    try {
      for (std::size_t k = 0; k < cod.size(); ++k) {
        SortName got = typecheck_term(img.context, img.terms[k], tgt);
        if (got != cod[k]) {
          add(ErrorKind::SortMismatch,
              "image " + to_string(img.terms[k]) + " of '" + op.name +
                  "' has sort " + got + ", expected " + cod[k],
              item);
        } else if (decorated && op.pure &&
                   !is_pure_term(img.context, img.terms[k], tgt)) {
          add(ErrorKind::NotDecorated,
              "pure operation '" + op.name + "' is sent to non-pure term " +
                  to_string(img.terms[k]),
              item);
        }
      }
    } catch (const Error& e) {
      add(e.kind(), "image of '" + op.name + "': " + e.detail(), item);
    }
  }
  for (const auto& [o, _] : m.op_map) {
    if (!src.find_op(o)) {
      add(ErrorKind::UnknownOp, "maps '" + o + "' which is not a source operation",
          {});
    }
  }
  return report;
}

void require_valid(const TheoryMorphism& m, bool decorated) {
  ValidationReport report = validate_morphism(m, decorated);
  if (report.ok()) return;
  std::string message = "invalid morphism";
  for (const auto& d : report.diagnostics) message += "\n  " + d.message;
  throw Error(report.diagnostics.front().kind, message);
}

bool is_decorated(const TheoryMorphism& m) {
  for (const auto& op : m.source->ops) {
    if (!op.pure) continue;
    const TermTuple& img = m.op_image(op.name);
    for (const auto& t : img.terms) {
      if (!is_pure_term(img.context, t, *m.target)) return false;
    }
  }
  return true;
}

std::vector<std::string> generator_differences(const TheoryMorphism& f,
                                               const TheoryMorphism& g) {
  std::vector<std::string> diffs;
  if (!f.source || !g.source || !f.target || !g.target ||
      !(*f.source == *g.source) || !(*f.target == *g.target)) {
    diffs.push_back("endpoints differ");
    return diffs;
  }
  for (const auto& s : f.source->sorts) {
    if (f.sort_image(s) != g.sort_image(s)) diffs.push_back("sort " + s);
  }
  for (const auto& op : f.source->ops) {
    const TermTuple& a = f.op_image(op.name);
    const TermTuple& b = g.op_image(op.name);
    if (!alpha_equal(a, b)) {
      diffs.push_back("op " + op.name + ": " + to_string(a) + " vs " +
                      to_string(b));
    }
  }
  return diffs;
}

bool same_generators(const TheoryMorphism& f, const TheoryMorphism& g) {
  return generator_differences(f, g).empty();
}

TheoryMorphism identity_morphism(const SpecRef& spec) {
  return inclusion_morphism(spec, spec);
}

TheoryMorphism inclusion_morphism(const SpecRef& sub, const SpecRef& super) {
  TheoryMorphism m;
  m.name = sub == super ? "id_" + sub->name : "incl_" + sub->name;
  m.source = sub;
  m.target = super;
  for (const auto& s : sub->sorts) {
    if (!super->has_sort(s)) {
      throw Error(ErrorKind::UnknownSort,
                  "sort '" + s + "' of " + sub->name + " is not in " + super->name);
    }
    m.sort_map[s] = {s};
  }
  for (const auto& op : sub->ops) {
    const OpDecl* other = super->find_op(op.name);
    if (!other || other->dom != op.dom || other->cod != op.cod) {
      throw Error(ErrorKind::UnknownOp, "operation '" + op.name + "' of " +
                                            sub->name + " is not in " +
                                            super->name + " with the same type");
    }
    Context ctx = generator_context(*super, *other);
    m.op_map[op.name] = {ctx, {generator_term(op, ctx)}};
  }
  return m;
}

namespace {

std::vector<std::string> nullary_ops(const DecoratedSpec& spec) {
  std::vector<std::string> out;
  for (const auto& o : spec.ops) {
    if (o.dom.empty()) out.push_back(o.name);
  }
  return out;
}

// Image context together with the replacement variables of each source
// variable.
struct ContextImage {
  Context context;
  std::map<std::string, std::vector<Term>> expansion;
};

ContextImage expand_context(const TheoryMorphism& m, const Context& ctx) {
  ContextImage out;
  std::vector<std::string> used = nullary_ops(*m.target);
  for (const auto& b : ctx) used.push_back(b.name);
  std::vector<std::string> reserved = nullary_ops(*m.target);
  auto is_reserved = [&](const std::string& n) {
    return std::find(reserved.begin(), reserved.end(), n) != reserved.end();
  };

  for (const auto& b : ctx) {
    const ProductType& img = m.sort_image(b.sort);
    std::vector<Term>& vars = out.expansion[b.name];
    if (img.size() == 1) {
      std::string name = b.name;
      if (is_reserved(name)) {
        name = fresh_name(name + "'", used);
        used.push_back(name);
      }
      out.context.push_back({name, img.front()});
      vars.push_back(Term::var(name));
      continue;
    }
    for (std::size_t i = 0; i < img.size(); ++i) {
      std::string name = fresh_name(b.name + "_" + std::to_string(i + 1), used);
      used.push_back(name);
      out.context.push_back({name, img[i]});
      vars.push_back(Term::var(name));
    }
  }
  return out;
}

std::vector<Term> expand_term(const TheoryMorphism& m, const ContextImage& ci,
                              const Term& t) {
  if (t.is_var()) {
    auto it = ci.expansion.find(t.name());
    if (it == ci.expansion.end()) {
      throw Error(ErrorKind::UnboundVariable,
                  "variable '" + t.name() + "' is not bound");
    }
    return it->second;
  }
  const OpDecl& op = m.source->op(t.name());
  const TermTuple& img = m.op_image(op.name);
  if (t.args().size() != op.dom.size()) {
    throw Error(ErrorKind::ArityMismatch, "arity mismatch in " + to_string(t));
  }
  Substitution sub;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < op.dom.size(); ++i) {
    std::vector<Term> parts = expand_term(m, ci, t.args()[i]);
    if (parts.size() != m.sort_image(op.dom[i]).size()) {
      throw Error(ErrorKind::SortMismatch,
                  "argument " + to_string(t.args()[i]) + " of " + to_string(t) +
                      " does not have sort " + op.dom[i]);
    }
    for (auto& p : parts) {
      if (pos >= img.context.size()) {
        throw Error(ErrorKind::InvalidMorphism,
                    "image context of '" + op.name + "' is too short");
      }
      sub.emplace(img.context[pos++].name, std::move(p));
    }
  }
  std::vector<Term> out;
  out.reserve(img.terms.size());
  for (const auto& term : img.terms) out.push_back(substitute(term, sub));
  return out;
}

}  // namespace

Context image_context(const TheoryMorphism& m, const Context& ctx) {
  return expand_context(m, ctx).context;
}

TermTuple apply_morphism(const TheoryMorphism& m, const Context& ctx,
                         const Term& t) {
  typecheck_term(ctx, t, *m.source);
  ContextImage ci = expand_context(m, ctx);
  return {ci.context, expand_term(m, ci, t)};
}

TermTuple apply_morphism(const TheoryMorphism& m, const TermTuple& tuple) {
  ContextImage ci = expand_context(m, tuple.context);
  TermTuple out{ci.context, {}};
  for (const auto& t : tuple.terms) {
    typecheck_term(tuple.context, t, *m.source);
    auto parts = expand_term(m, ci, t);
    out.terms.insert(out.terms.end(), parts.begin(), parts.end());
  }
  return out;
}

TheoryMorphism compose_morphisms(const TheoryMorphism& g,
                                 const TheoryMorphism& f) {
  if (!f.target || !g.source || !(*f.target == *g.source)) {
    throw Error(ErrorKind::EndpointMismatch,
                "cannot compose " + describe(g) + " after " + describe(f));
  }
  TheoryMorphism out;
  out.name = g.name + "." + f.name;
  out.source = f.source;
  out.target = g.target;
  for (const auto& s : f.source->sorts) {
    out.sort_map[s] = g.image_type(f.sort_image(s));
  }
  for (const auto& op : f.source->ops) {
    out.op_map[op.name] = apply_morphism(g, f.op_image(op.name));
  }
  return out;
}

const TermTuple& NatTransPresentation::component(const SortName& sort) const {
  auto it = components.find(sort);
  if (it == components.end()) {
    throw Error(ErrorKind::UnmappedSymbol,
                "2-cell has no component at sort '" + sort + "'");
  }
  return it->second;
}

void require_valid(const NatTransPresentation& nt) {
  const auto& f = nt.source_mor;
  const auto& g = nt.target_mor;
  if (!(*f.source == *g.source) || !(*f.target == *g.target)) {
    throw Error(ErrorKind::EndpointMismatch,
                "2-cell between morphisms with different endpoints");
  }
  for (const auto& s : f.source->sorts) {
    const TermTuple& c = nt.component(s);
    if (context_type(c.context) != f.sort_image(s)) {
      throw Error(ErrorKind::SortMismatch,
                  "component at " + s + " has context " + to_string(c.context));
    }
    const ProductType& want = g.sort_image(s);
    if (c.terms.size() != want.size()) {
      throw Error(ErrorKind::ArityMismatch,
                  "component at " + s + " has the wrong number of factors");
    }
    for (std::size_t i = 0; i < want.size(); ++i) {
      SortName got = typecheck_term(c.context, c.terms[i], *f.target);
      if (got != want[i]) {
        throw Error(ErrorKind::SortMismatch,
                    "component at " + s + " has sort " + got + ", expected " +
                        want[i]);
      }
    }
  }
}

NatTransPresentation identity_cell(const TheoryMorphism& m) {
  NatTransPresentation nt{m, m, {}};
  for (const auto& s : m.source->sorts) {
    const ProductType& img = m.sort_image(s);
    TermTuple c;
    for (std::size_t i = 0; i < img.size(); ++i) {
      std::string v = img.size() == 1 ? "x" : "x" + std::to_string(i + 1);
      c.context.push_back({v, img[i]});
      c.terms.push_back(Term::var(v));
    }
    nt.components[s] = std::move(c);
  }
  return nt;
}

NatTransPresentation whisker(const TheoryMorphism& h,
                             const NatTransPresentation& t) {
  NatTransPresentation out{compose_morphisms(h, t.source_mor),
                           compose_morphisms(h, t.target_mor),
                           {}};
  for (const auto& [s, c] : t.components) {
    out.components[s] = apply_morphism(h, c);
  }
  return out;
}

bool same_cell(const NatTransPresentation& a, const NatTransPresentation& b) {
  if (!same_generators(a.source_mor, b.source_mor) ||
      !same_generators(a.target_mor, b.target_mor)) {
    return false;
  }
  for (const auto& s : a.source_mor.source->sorts) {
    if (!alpha_equal(a.component(s), b.component(s))) return false;
  }
  return true;
}

}  // namespace paramspec
