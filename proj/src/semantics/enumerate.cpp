#include <algorithm>
#include <cctype>
#include <limits>

#include "paramspec/semantics.hpp"

namespace paramspec {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t pow_sat(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = mul_sat(r, base);
    if (r == kSaturated || r == 0) break;
  }
  return r;
}

std::string element_prefix(const SortName& sort) {
  std::string p;
  for (char c : sort) p += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return p;
}

struct Plan {
  std::vector<SortName> free_sorts;
  std::vector<const OpDecl*> free_ops;
  FinModel seed;
};

Plan make_plan(const SpecRef& spec, const FinModel& base, const Bounds& bounds) {
  Plan plan;
  plan.seed.spec = spec;
  plan.seed.name = spec->name;
  for (const auto& [sort, labels] : base.carriers) {
    if (!spec->has_sort(sort)) {
      throw Error(ErrorKind::UnknownSort,
                  "base model interprets " + sort + ", which " + spec->name +
                      " does not declare");
    }
    plan.seed.carriers[sort] = labels;
  }
  for (const auto& sort : spec->sorts) {
    if (base.has_carrier(sort)) continue;
    if (!bounds.count(sort)) {
      throw Error(ErrorKind::InvalidArgument,
                  "no carrier bound for sort " + sort);
    }
    plan.free_sorts.push_back(sort);
  }
  for (const auto& [op_name, table] : base.tables) {
    if (!spec->find_op(op_name)) {
      throw Error(ErrorKind::UnknownOp, "base model interprets '" + op_name +
                                            "', which " + spec->name +
                                            " does not declare");
    }
    plan.seed.tables[op_name] = table;
  }
  for (const auto& op : spec->ops) {
    if (!base.has_table(op.name)) plan.free_ops.push_back(&op);
  }
  return plan;
}

// Calls f(sizes) for every assignment of sizes 0..bound to the free sorts,
// in lexicographic order (first free sort most significant).
template <typename F>
bool for_each_size(const Plan& plan, const Bounds& bounds, F&& f) {
  std::vector<std::size_t> sizes(plan.free_sorts.size(), 0);
  while (true) {
    if (!f(sizes)) return false;
    std::size_t i = sizes.size();
    while (i > 0) {
      --i;
      if (sizes[i] < bounds.at(plan.free_sorts[i])) {
        ++sizes[i];
        break;
      }
      sizes[i] = 0;
      if (i == 0) return true;
    }
    if (sizes.empty()) return true;
  }
}

void set_carriers(FinModel& model, const Plan& plan,
                  const std::vector<std::size_t>& sizes) {
  for (std::size_t i = 0; i < plan.free_sorts.size(); ++i) {
    const SortName& sort = plan.free_sorts[i];
    std::vector<std::string> labels;
    const std::string prefix = element_prefix(sort);
    for (std::size_t k = 0; k < sizes[i]; ++k) labels.push_back(prefix + std::to_string(k));
    model.carriers[sort] = std::move(labels);
  }
}

std::uint64_t candidates_for(const FinModel& model, const Plan& plan) {
  std::uint64_t n = 1;
  for (const OpDecl* op : plan.free_ops) {
    n = mul_sat(n, pow_sat(model.size(op->cod), model.product_size(op->dom)));
  }
  return n;
}

std::uint64_t total_candidates(const Plan& plan, const Bounds& bounds) {
  std::uint64_t total = 0;
  FinModel scratch = plan.seed;
  for_each_size(plan, bounds, [&](const std::vector<std::size_t>& sizes) {
    set_carriers(scratch, plan, sizes);
    const std::uint64_t c = candidates_for(scratch, plan);
    total = (kSaturated - total < c) ? kSaturated : total + c;
    return true;
  });
  return total;
}

// Position, in free-op order, after which an equation becomes checkable;
// -1 when it mentions no free op.
int ready_level(const Equation& eq, const Plan& plan) {
  int level = -1;
  for (std::size_t k = 0; k < plan.free_ops.size(); ++k) {
    const std::string& name = plan.free_ops[k]->name;
    if (occurs_op(eq.lhs, name) || occurs_op(eq.rhs, name)) level = static_cast<int>(k);
  }
  return level;
}

class Search {
 public:
  Search(const Plan& plan, const std::function<bool(const FinModel&)>& visit)
      : plan_(plan), visit_(visit) {
    const auto& eqs = plan.seed.spec->eqs;
    checks_.resize(plan.free_ops.size() + 1);
    for (const auto& eq : eqs) {
      checks_[static_cast<std::size_t>(ready_level(eq, plan) + 1)].push_back(&eq);
    }
  }

  // Returns false when the visitor asked to stop.
  bool run(FinModel& model) {
    if (!holds(model, 0)) return true;
    return assign(model, 0);
  }

 private:
  bool holds(const FinModel& model, std::size_t level) const {
    for (const Equation* eq : checks_[level]) {
      if (!satisfies(model, *eq)) return false;
    }
    return true;
  }

  bool assign(FinModel& model, std::size_t k) {
    if (k == plan_.free_ops.size()) {
      FinModel out = model;
      out.name = plan_.seed.spec->name + "_" + std::to_string(count_++);
      out.partial = false;
      return visit_(out);
    }
    const OpDecl& op = *plan_.free_ops[k];
    const std::size_t rows = model.product_size(op.dom);
    const std::size_t values = model.size(op.cod);
    if (rows > 0 && values == 0) return true;
    std::vector<Elem>& table = model.tables[op.name];
    table.assign(rows, 0);
    while (true) {
      if (holds(model, k + 1) && !assign(model, k + 1)) return false;
      std::size_t i = rows;
      while (i > 0) {
        --i;
        if (table[i] + 1 < values) {
          ++table[i];
          break;
        }
        table[i] = 0;
        if (i == 0) {
          model.tables.erase(op.name);
          return true;
        }
      }
      if (rows == 0) {
        model.tables.erase(op.name);
        return true;
      }
    }
  }

  const Plan& plan_;
  const std::function<bool(const FinModel&)>& visit_;
  std::vector<std::vector<const Equation*>> checks_;
  std::size_t count_ = 0;
};

}  // namespace

std::uint64_t count_candidates(const DecoratedSpec& spec, const FinModel& base,
                               const Bounds& bounds) {
  return total_candidates(make_plan(share(spec), base, bounds), bounds);
}

void for_each_model_extending(const SpecRef& spec, const FinModel& base,
                              const Bounds& bounds, const SearchOptions& options,
                              const std::function<bool(const FinModel&)>& visit) {
  Plan plan = make_plan(spec, base, bounds);
  const std::uint64_t total = total_candidates(plan, bounds);
  if (total > options.cap) {
    throw Error(ErrorKind::SearchSpaceOverflow,
                std::string("models of ") + spec->name + ": " +
                    (total == kSaturated ? std::string("more than 2^64")
                                         : std::to_string(total)) +
                    " candidate tables exceed the cap of " +
                    std::to_string(options.cap));
  }
  FinModel model = plan.seed;
  model.partial = true;
  require_well_formed(model);
  Search search(plan, visit);
  for_each_size(plan, bounds, [&](const std::vector<std::size_t>& sizes) {
    set_carriers(model, plan, sizes);
    return search.run(model);
  });
}

std::vector<FinModel> models_extending(const SpecRef& spec, const FinModel& base,
                                       const Bounds& bounds,
                                       const SearchOptions& options) {
  std::vector<FinModel> out;
  for_each_model_extending(spec, base, bounds, options, [&](const FinModel& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

Bounds uniform_bounds(const DecoratedSpec& spec, std::size_t max_size) {
  Bounds b;
  for (const auto& s : spec.sorts) b[s] = max_size;
  return b;
}

}  // namespace paramspec
