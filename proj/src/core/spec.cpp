#include <algorithm>
#include <set>

#include "paramspec/core.hpp"

namespace paramspec {

bool DecoratedSpec::has_sort(std::string_view sort) const {
  return std::find(sorts.begin(), sorts.end(), sort) != sorts.end();
}

const OpDecl* DecoratedSpec::find_op(std::string_view name) const {
  for (const auto& o : ops) {
    if (o.name == name) return &o;
  }
  return nullptr;
}

const OpDecl& DecoratedSpec::op(std::string_view name) const {
  const OpDecl* o = find_op(name);
  if (!o) {
    throw Error(ErrorKind::UnknownOp, "no operation '" + std::string(name) +
                                          "' in spec " + this->name);
  }
  return *o;
}

bool ValidationReport::contains(ErrorKind kind) const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [&](const Diagnostic& d) { return d.kind == kind; });
}

std::string ValidationReport::to_text() const {
  std::string out;
  for (const auto& d : diagnostics) {
    out += to_string(d.kind);
    out += ": ";
    out += d.message;
    out += '\n';
  }
  return out;
}

namespace {

bool is_reserved_sort(std::string_view s) {
  return s == kUnitSortName || s == kParamVar;
}

class Validator {
 public:
  explicit Validator(const DecoratedSpec& spec) : spec_(spec) {}

  ValidationReport run() {
    if (spec_.name.empty()) {
      add(ErrorKind::SyntaxError, "specification has an empty name",
          {SpecItem::Section::Header, 0});
    }
    check_sorts();
    check_ops();
    check_params();
    check_equations();
    return std::move(report_);
  }

 private:
  void add(ErrorKind kind, std::string message, SpecItem item) {
    report_.diagnostics.push_back({kind, std::move(message), item});
  }

  void check_sorts() {
    std::set<SortName> seen;
    for (std::size_t i = 0; i < spec_.sorts.size(); ++i) {
      const auto& s = spec_.sorts[i];
      SpecItem item{SpecItem::Section::Sort, i};
      if (s.empty()) add(ErrorKind::SyntaxError, "empty sort name", item);
      if (is_reserved_sort(s)) {
        add(ErrorKind::ReservedName, "sort name '" + s + "' is reserved", item);
      }
      if (!seen.insert(s).second) {
        add(ErrorKind::DuplicateSort, "sort '" + s + "' declared twice", item);
      }
    }
  }

  void check_ops() {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < spec_.ops.size(); ++i) {
      const auto& o = spec_.ops[i];
      SpecItem item{SpecItem::Section::Op, i};
      if (o.name.empty()) add(ErrorKind::SyntaxError, "empty operation name", item);
      if (o.name == kParamVar) {
        add(ErrorKind::ReservedName, "operation name 'p$' is reserved", item);
      }
      if (!seen.insert(o.name).second) {
        add(ErrorKind::DuplicateOp, "operation '" + o.name + "' declared twice",
            item);
      }
      for (const auto& s : o.dom) {
        if (!spec_.has_sort(s)) {
          add(ErrorKind::UnknownSort,
              "operation '" + o.name + "' uses undeclared sort '" + s + "'",
              item);
        }
      }
      if (!spec_.has_sort(o.cod)) {
        add(ErrorKind::UnknownSort, "operation '" + o.name +
                                        "' has undeclared codomain '" + o.cod +
                                        "'",
            item);
      }
    }
  }

  void check_params() {
    SpecItem item{SpecItem::Section::Param, 0};
    if (spec_.param_sort && !spec_.has_sort(*spec_.param_sort)) {
      add(ErrorKind::UnknownSort,
          "parameter sort '" + *spec_.param_sort + "' is not declared", item);
    }
    if (!spec_.param_const) return;
    if (!spec_.param_sort) {
      add(ErrorKind::MissingParamSort,
          "parameter constant '" + *spec_.param_const +
              "' requires a parameter sort",
          item);
      return;
    }
    const OpDecl* c = spec_.find_op(*spec_.param_const);
    if (!c) {
      add(ErrorKind::BadParamConst,
          "parameter constant '" + *spec_.param_const + "' is not declared",
          item);
    } else if (!c->dom.empty() || c->cod != *spec_.param_sort || c->pure) {
      add(ErrorKind::BadParamConst,
          "parameter constant '" + c->name + "' must be a non-pure constant " +
              "of sort " + *spec_.param_sort,
          item);
    }
  }

  void check_equations() {
    for (std::size_t i = 0; i < spec_.eqs.size(); ++i) {
      const auto& eq = spec_.eqs[i];
      SpecItem item{SpecItem::Section::Equation, i};
      bool context_ok = true;
      std::set<std::string> names;
      for (const auto& b : eq.context) {
        if (!names.insert(b.name).second) {
          add(ErrorKind::DuplicateVariable,
              "variable '" + b.name + "' bound twice in " + to_string(eq.context),
              item);
          context_ok = false;
        }
        if (!spec_.has_sort(b.sort)) {
          add(ErrorKind::UnknownSort,
              "variable '" + b.name + "' has undeclared sort '" + b.sort + "'",
              item);
          context_ok = false;
        }
        const OpDecl* shadow = spec_.find_op(b.name);
        if (shadow && shadow->dom.empty()) {
          add(ErrorKind::VariableShadowsConstant,
              "variable '" + b.name + "' shadows constant '" + b.name + "'",
              item);
        }
      }
      if (!context_ok) continue;
      try {
        SortName l = typecheck_term(eq.context, eq.lhs, spec_);
        SortName r = typecheck_term(eq.context, eq.rhs, spec_);
        if (l != r) {
          add(ErrorKind::SortMismatch,
              "equation sides have different sorts: " + to_string(eq.lhs) +
                  " : " + l + " vs " + to_string(eq.rhs) + " : " + r,
              item);
        }
      } catch (const Error& e) {
        add(e.kind(), e.detail(), item);
      }
    }
  }

  const DecoratedSpec& spec_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_spec(const DecoratedSpec& spec) {
  return Validator(spec).run();
}

void require_valid(const DecoratedSpec& spec) {
  ValidationReport report = validate_spec(spec);
  if (report.ok()) return;
  std::string message = "spec " + spec.name + " is invalid";
  for (const auto& d : report.diagnostics) {
    message += "\n  ";
    message += to_string(d.kind);
    message += ": ";
    message += d.message;
  }
  throw Error(report.diagnostics.front().kind, message);
}

}  // namespace paramspec
