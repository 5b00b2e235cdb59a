#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <memory>
#include <queue>
#include <stdexcept>

#include "modcap/model.hpp"
#include "modcap/simplex.hpp"

namespace modcap {

namespace {

constexpr double kIntTol = 1e-6;

using Bounds = std::vector<std::pair<double, double>>;

Bounds root_bounds(const ModelSpec& model) {
  Bounds bounds;
  bounds.reserve(static_cast<std::size_t>(model.num_vars()));
  for (const auto& c : model.cols) {
    double lb = c.lb, ub = c.ub;
    if (c.kind == VarKind::Binary) {
      lb = std::max(lb, 0.0);
      ub = std::min(ub, 1.0);
    }
    bounds.emplace_back(lb, ub);
  }
  return bounds;
}

int most_fractional(const ModelSpec& model, const std::vector<double>& x) {
  int best = -1;
  double best_frac = kIntTol;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (model.cols[static_cast<std::size_t>(j)].kind == VarKind::Continuous) continue;
    const double v = x[static_cast<std::size_t>(j)];
    const double frac = std::fabs(v - std::round(v));
    const double dist = std::min(v - std::floor(v), std::ceil(v) - v);
    if (frac <= kIntTol) continue;
    if (dist > best_frac) {
      best_frac = dist;
      best = j;
    }
  }
  return best;
}

void round_integers(const ModelSpec& model, std::vector<double>& x) {
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.cols[static_cast<std::size_t>(j)].kind != VarKind::Continuous)
      x[static_cast<std::size_t>(j)] = std::round(x[static_cast<std::size_t>(j)]);
}

class InternalBackend final : public SolverBackend {
 public:
  SolveResult solve_lp(const ModelSpec& model) override {
    lp::LpSolution sol = lp::solve_lp(model);
    SolveResult result;
    result.status = sol.status;
    result.objective = sol.objective;
    result.x = std::move(sol.x);
    result.duals = std::move(sol.y);
    result.has_duals = result.status == SolveStatus::Optimal;
    return result;
  }

  SolveResult solve_mip(const ModelSpec& model, const MipOptions& options) override {
    if (!model.has_integers()) {
      SolveResult r = solve_lp(model);
      r.has_duals = false;
      r.duals.clear();
      return r;
    }
    return branch_and_bound(model, options);
  }

  std::string name() const override { return "internal"; }

 private:
  struct NodeRec {
    int parent = -1;
    int col = -1;  // bound change relative to parent
    double lb = 0.0, ub = 0.0;
    double estimate = -kInf;  // parent LP bound
    std::shared_ptr<lp::BasisState> hint;
  };

  struct QueueEntry {
    double estimate;
    int node;
    bool operator>(const QueueEntry& other) const {
      if (estimate != other.estimate) return estimate > other.estimate;
      return node > other.node;
    }
  };

  static Bounds bounds_for(const std::deque<NodeRec>& arena, int node, Bounds base) {
    for (int cur = node; cur >= 0; cur = arena[static_cast<std::size_t>(cur)].parent) {
      const NodeRec& rec = arena[static_cast<std::size_t>(cur)];
      if (rec.col < 0) continue;
      auto& b = base[static_cast<std::size_t>(rec.col)];
      // the deepest change wins; shallower records must not widen it
      b.first = std::max(b.first, rec.lb);
      b.second = std::min(b.second, rec.ub);
    }
    return base;
  }

  SolveResult branch_and_bound(const ModelSpec& model, const MipOptions& options) {
    const Bounds base = root_bounds(model);

    SolveResult incumbent;
    incumbent.status = SolveStatus::Infeasible;
    double incumbent_val = kInf;
    bool have_incumbent = false;

    auto try_incumbent = [&](const std::vector<double>& x, double objective) {
      if (objective < incumbent_val - 1e-12) {
        incumbent_val = objective;
        incumbent.objective = objective;
        incumbent.x = x;
        round_integers(model, incumbent.x);
        have_incumbent = true;
      }
    };

    if (options.warm_solution && check_feasible(model, *options.warm_solution))
      try_incumbent(*options.warm_solution, objective_of(model, *options.warm_solution));

    std::deque<NodeRec> arena;
    arena.push_back(NodeRec{});
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> open;
    open.push({-kInf, 0});

    const double abs_margin_floor = options.abs_gap;
    auto cutoff = [&]() {
      if (!have_incumbent) return kInf;
      return incumbent_val - std::max(abs_margin_floor, options.rel_gap * std::fabs(incumbent_val));
    };

    long nodes_explored = 0;
    bool hit_limit = false;
    double best_open_bound = kInf;
    bool tried_rounding = false;

    while (!open.empty()) {
      const QueueEntry entry = open.top();
      open.pop();
      if (entry.estimate >= cutoff()) {
        // best-first order: every remaining node is at least as bad
        best_open_bound = std::min(best_open_bound, entry.estimate);
        break;
      }
      if (++nodes_explored > options.node_limit) {
        hit_limit = true;
        best_open_bound = std::min(best_open_bound, entry.estimate);
        break;
      }

      const NodeRec& rec = arena[static_cast<std::size_t>(entry.node)];
      Bounds bounds = bounds_for(arena, entry.node, base);
      lp::LpSolution sol = lp::solve_lp(model, &bounds, rec.hint ? rec.hint.get() : nullptr);
      if (sol.status == SolveStatus::Infeasible) continue;
      if (sol.status == SolveStatus::Unbounded) {
        // a relaxation without a finite bound makes the whole search moot
        SolveResult r;
        r.status = SolveStatus::Unbounded;
        return r;
      }
      if (sol.status != SolveStatus::Optimal)
        throw std::runtime_error("branch&bound: node LP hit the iteration limit");
      if (sol.objective >= cutoff()) continue;

      const int branch_col = most_fractional(model, sol.x);
      if (branch_col < 0) {
        try_incumbent(sol.x, sol.objective);
        continue;
      }

      if (!tried_rounding) {
        // one LP-rounding probe at the root to seed the incumbent
        tried_rounding = true;
        rounding_probe(model, base, sol.x, try_incumbent);
      }

      auto hint = std::make_shared<lp::BasisState>(std::move(sol.basis));
      const double v = sol.x[static_cast<std::size_t>(branch_col)];
      const auto& cur = bounds[static_cast<std::size_t>(branch_col)];

      NodeRec down;
      down.parent = entry.node;
      down.col = branch_col;
      down.lb = cur.first;
      down.ub = std::floor(v);
      down.estimate = sol.objective;
      down.hint = hint;
      NodeRec up;
      up.parent = entry.node;
      up.col = branch_col;
      up.lb = std::ceil(v);
      up.ub = cur.second;
      up.estimate = sol.objective;
      up.hint = hint;

      if (down.lb <= down.ub + 1e-9) {
        arena.push_back(down);
        open.push({down.estimate, static_cast<int>(arena.size()) - 1});
      }
      if (up.lb <= up.ub + 1e-9) {
        arena.push_back(up);
        open.push({up.estimate, static_cast<int>(arena.size()) - 1});
      }
    }

    if (!have_incumbent) {
      SolveResult r;
      r.status = hit_limit ? SolveStatus::Limit : SolveStatus::Infeasible;
      return r;
    }

    while (!open.empty()) {
      best_open_bound = std::min(best_open_bound, open.top().estimate);
      break;  // queue is ordered; the top is the minimum
    }
    double proven = std::min(incumbent_val, best_open_bound);
    if (proven <= -kInf || proven == kInf) proven = incumbent_val;

    incumbent.status = hit_limit ? SolveStatus::Limit : SolveStatus::Optimal;
    incumbent.mip_gap =
        std::max(0.0, (incumbent_val - proven) / std::max(1.0, std::fabs(incumbent_val)));
    incumbent.has_duals = false;
    return incumbent;
  }

  template <typename Accept>
  void rounding_probe(const ModelSpec& model, const Bounds& base,
                      const std::vector<double>& relaxed, Accept&& accept) {
    Bounds fixed = base;
    for (int j = 0; j < model.num_vars(); ++j) {
      if (model.cols[static_cast<std::size_t>(j)].kind == VarKind::Continuous) continue;
      const auto& b = fixed[static_cast<std::size_t>(j)];
      double v = std::round(relaxed[static_cast<std::size_t>(j)]);
      v = std::min(v, std::floor(b.second + kIntTol));
      v = std::max(v, std::ceil(b.first - kIntTol));
      if (v < b.first - kIntTol || v > b.second + kIntTol) return;  // no integer in range
      fixed[static_cast<std::size_t>(j)] = {v, v};
    }
    lp::LpSolution probe = lp::solve_lp(model, &fixed);
    if (probe.status == SolveStatus::Optimal) accept(probe.x, probe.objective);
  }

  static double objective_of(const ModelSpec& model, const std::vector<double>& x) {
    double obj = model.obj_constant;
    for (int j = 0; j < model.num_vars(); ++j)
      obj += model.cols[static_cast<std::size_t>(j)].obj * x[static_cast<std::size_t>(j)];
    return obj;
  }

  static bool check_feasible(const ModelSpec& model, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != model.num_vars()) return false;
    for (int j = 0; j < model.num_vars(); ++j) {
      const auto& c = model.cols[static_cast<std::size_t>(j)];
      const double v = x[static_cast<std::size_t>(j)];
      if (v < c.lb - 1e-7 || v > c.ub + 1e-7) return false;
      if (c.kind != VarKind::Continuous && std::fabs(v - std::round(v)) > kIntTol) return false;
    }
    for (const auto& row : model.rows) {
      double lhs = 0.0;
      for (const auto& [j, coef] : row.coefs) lhs += coef * x[static_cast<std::size_t>(j)];
      const double slack = row.rhs - lhs;
      const double tol = 1e-6 * (1.0 + std::fabs(row.rhs));
      if (row.sense == RowSense::LessEqual && slack < -tol) return false;
      if (row.sense == RowSense::GreaterEqual && slack > tol) return false;
      if (row.sense == RowSense::Equal && std::fabs(slack) > tol) return false;
    }
    return true;
  }
};

}  // namespace

std::unique_ptr<SolverBackend> make_internal_backend() {
  return std::make_unique<InternalBackend>();
}

std::unique_ptr<SolverBackend> make_backend(const std::string& name) {
  if (name.empty() || name == "internal") return make_internal_backend();
  throw BackendUnavailable("solver backend '" + name +
                           "' is not available in this build; set MODCAP_SOLVER=internal "
                           "or unset the variable");
}

}  // namespace modcap
