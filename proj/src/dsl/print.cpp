#include "paramspec/dsl.hpp"

namespace paramspec {

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

std::string print_spec(const DecoratedSpec& spec) {
  std::string out = "spec " + spec.name + " {\n";
  for (const auto& s : spec.sorts) {
    out += (spec.param_sort && *spec.param_sort == s ? "  param sort " : "  sort ") + s + "\n";
  }
  for (const auto& op : spec.ops) {
    if (spec.param_const && *spec.param_const == op.name) {
      out += "  param const " + op.name + " : " + op.cod + "\n";
      continue;
    }
    out += std::string("  ") + (op.pure ? "pure op " : "op ") + op.name + " : ";
    out += op.dom.empty() ? "-> " : join(op.dom, ", ") + " -> ";
    out += op.cod + "\n";
  }
  for (const auto& eq : spec.eqs) {
    out += "  eq " + to_string(eq.context) + " " + to_string(eq.lhs) + " = " +
           to_string(eq.rhs) + "\n";
  }
  out += "}\n";
  return out;
}

std::string print_model(const FinModel& model) {
  const DecoratedSpec& spec = *model.spec;
  std::string out = "model " + model.name + " for " + spec.name +
                    (model.partial ? " partial" : "") + " {\n";
  for (const auto& s : spec.sorts) {
    if (!model.has_carrier(s)) continue;
    out += "  sort " + s + " = {" + join(model.carrier(s), ", ") + "}\n";
  }
  for (const auto& op : spec.ops) {
    if (!model.has_table(op.name)) continue;
    const auto& table = model.tables.at(op.name);
    std::vector<std::string> entries;
    entries.reserve(table.size());
    for (std::size_t r = 0; r < table.size(); ++r) {
      auto args = model.product_tuple(op.dom, r);
      std::vector<std::string> labels;
      for (std::size_t k = 0; k < args.size(); ++k) {
        labels.push_back(model.label(op.dom[k], args[k]));
      }
      entries.push_back("(" + join(labels, ", ") + ") -> " + model.label(op.cod, table[r]));
    }
    out += "  op " + op.name + " = {" + join(entries, ", ") + "}\n";
  }
  out += "}\n";
  return out;
}

std::string print_morphism(const TheoryMorphism& m) {
  std::string out =
      "morphism " + m.name + " : " + m.source->name + " -> " + m.target->name + " {\n";
  for (const auto& s : m.source->sorts) {
    const ProductType& img = m.sort_image(s);
    out += "  sort " + s + " -> " + (img.empty() ? "()" : join(img, ",")) + "\n";
  }
  for (const auto& op : m.source->ops) {
    const TermTuple& img = m.op_image(op.name);
    std::vector<std::string> vars;
    for (const auto& b : img.context) vars.push_back(b.name);
    out += "  op " + op.name + "(" + join(vars, ", ") + ") -> " +
           to_string(std::span<const Term>(img.terms)) + "\n";
  }
  out += "}\n";
  return out;
}

}  // namespace paramspec
