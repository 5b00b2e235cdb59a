#pragma once

#include <cstdint>
#include <vector>

#include "modcap/model.hpp"

namespace modcap::lp {

// Basis snapshot for warm starts across related solves (branch-and-bound
// re-solves after bound changes).
struct BasisState {
  std::vector<std::int32_t> basic;  // basic column per row
  std::vector<std::int8_t> vstat;   // 0 at-lower, 1 at-upper, 2 basic, 3 free-at-zero
  bool empty() const { return basic.empty(); }
};

struct LpSolution {
  SolveStatus status = SolveStatus::Limit;
  double objective = 0.0;
  std::vector<double> x;  // structural variable values
  std::vector<double> y;  // row duals (d objective / d rhs)
  BasisState basis;
  int iterations = 0;
};

// Bounded-variable two-phase primal simplex over the continuous relaxation
// of `model`. `bounds_override`, when given, replaces the per-column bounds
// (size num_vars). `hint` seeds the starting basis; infeasible starts are
// driven to feasibility by the phase-1 pricing, singular hints fall back to
// the slack basis.
LpSolution solve_lp(const ModelSpec& model,
                    const std::vector<std::pair<double, double>>* bounds_override = nullptr,
                    const BasisState* hint = nullptr);

}  // namespace modcap::lp
