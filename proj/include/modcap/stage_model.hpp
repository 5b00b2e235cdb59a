#pragma once

#include <vector>

#include "modcap/instance.hpp"
#include "modcap/model.hpp"
#include "modcap/scenario_tree.hpp"

namespace modcap {

struct CutPool;

// Flat indexing of the binary state: one coordinate per facility and level
// transition (l1 -> l2).
struct StateSpace {
  int nj = 0;
  int nl = 0;

  explicit StateSpace(const Instance& instance)
      : nj(instance.network.num_facilities()), nl(instance.num_levels()) {}
  int dim() const { return nj * nl * nl; }
  int index(int j, int l1, int l2) const { return (j * nl + l1) * nl + l2; }
};

// The incoming state at stage 1: each facility "maintains" its initial
// level, which makes the stage-1 subproblem identical in form to every
// other stage.
std::vector<double> initial_state_indicator(const Instance& instance);

// One node's subproblem: local copies of the parent state pinned by tagged
// linking rows, state-dependent flow balance, and a cut-pool cost-to-go
// term.
struct StageModel {
  ModelSpec model;
  int stage = 1;
  int horizon = 1;
  const Instance* instance = nullptr;

  std::vector<VarId> y;          // by state coordinate
  std::vector<VarId> y_copy;     // by state coordinate
  std::vector<VarId> flow;       // by move-pair order
  std::vector<VarId> stock;      // per facility
  std::vector<VarId> assign;     // by demand-pair order
  std::vector<VarId> outsource;  // per facility
  VarId theta;                   // invalid at the final stage
  std::vector<int> link_rows;    // row id per state coordinate
  std::vector<double> incoming_state;

  bool has_theta() const { return theta.valid(); }
  double stage_cost(const SolveResult& result) const {
    return result.objective - (has_theta() ? result.value(theta) : 0.0);
  }
  std::vector<double> state_of(const SolveResult& result) const;
};

StageModel build_stage_model(const Instance& instance, int stage, int horizon,
                             const RealizationBlock& block,
                             const std::vector<double>& incoming_state,
                             const CutPool* pool);

// The subproblem with the linking equalities removed and
// pi^T (y_hat - Y^P) added to the objective.
ModelSpec lagrangian_relaxation_model(const StageModel& stage_model,
                                      const std::vector<double>& multipliers);

// Optimal value of lagrangian_relaxation_model solved as a MIP; the L^k
// evaluation behind the strengthened and Lagrangian cuts.
double evaluate_lagrangian(const StageModel& stage_model, const std::vector<double>& multipliers,
                           SolverBackend& backend, const MipOptions& options);

// Same relaxation solved as an LP (used by weak-duality checks in tests).
double evaluate_lagrangian_lp(const StageModel& stage_model,
                              const std::vector<double>& multipliers, SolverBackend& backend);

}  // namespace modcap
