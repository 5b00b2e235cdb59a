#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modcap/stage_model.hpp"

namespace modcap {

enum class CutFamily { B, SB, I, L, PT, IM, SPT, SIM };

const char* cut_family_code(CutFamily family);
std::optional<CutFamily> cut_family_from_code(const std::string& code);
// LP-based families are generated from relaxations; only the integer
// optimality and Lagrangian cuts count as integer-based for alternation.
bool is_integer_family(CutFamily family);

// Affine lower bound on the expected cost-to-go as a function of the
// stage-t binary state.
struct Cut {
  int stage = 0;  // stage of the theta variable this cut constrains
  CutFamily family = CutFamily::B;
  double intercept = 0.0;
  std::vector<double> slope;
  int iteration = 0;
  std::optional<std::vector<double>> core_snapshot;  // PT/IM/SPT/SIM only

  double value_at(const std::vector<double>& state) const;
};

struct CutPool {
  double floor_value = 0.0;  // L_t, zero for this problem class
  std::vector<Cut> cuts;

  int size() const { return static_cast<int>(cuts.size()); }
  double evaluate(const std::vector<double>& state) const;
};

// Per-event diagnostics; the acceptance suite asserts dominance and
// tightness on these.
struct CutEvent {
  int stage = 0;
  CutFamily family = CutFamily::B;
  int iteration = 0;
  bool fractional_child = false;    // some child LP relaxation was fractional in Y^P
  double dominance_margin = 0.0;    // SPT/SIM: strengthened value minus classical at core
  double tightness_gap = 0.0;       // L: relative gap to the child-MIP expectation
  double classical_at_core = 0.0;   // PT: Benders cut value at the core point
  double cut_at_core = 0.0;
  bool lagrangian_fallback = false;  // L: dual ascent fell back to SB multipliers
};

struct LagrangianOptions {
  int max_evals = 50;
  double rel_tol = 1e-6;
};

struct LagrangianDualResult {
  std::vector<double> multipliers;
  double dual_value = 0.0;  // best D(lambda) found
  bool converged = false;
  int evals = 0;
};

// Maximizes D(lambda) = min f + lambda^T (y_hat - Y^P) by Polyak-step
// subgradient ascent with a Kelley model refinement, warm-started at the LP
// duals. `target` is the child MIP value, which D attains at the optimum.
LagrangianDualResult solve_lagrangian_dual(const StageModel& child,
                                           const std::vector<double>& warm_start, double target,
                                           SolverBackend& backend,
                                           const LagrangianOptions& lag_options,
                                           const MipOptions& mip_options);

struct CutGenConfig {
  MipOptions mip;
  LagrangianOptions lagrangian;
  double mw_epsilon_retry = 1e-7;
};

// Generates one aggregated cut per requested family for the state y_hat at
// `parent_stage`, solving the b child-block subproblems of the next stage.
// `core_point` is required by the Magnanti-Wong families.
std::vector<std::pair<Cut, CutEvent>> generate_cuts_for_state(
    const Instance& instance, const ScenarioTree& tree, SolverBackend& backend,
    const std::vector<CutPool>& pools, int parent_stage, const std::vector<double>& y_hat,
    const std::vector<double>* core_point, const std::vector<CutFamily>& families,
    int iteration, const CutGenConfig& config);

// Single-family conveniences mirroring the per-family operations.
std::pair<Cut, CutEvent> generate_benders_cut(const Instance&, const ScenarioTree&,
                                              SolverBackend&, const std::vector<CutPool>&,
                                              int parent_stage, const std::vector<double>& y_hat,
                                              int iteration, const CutGenConfig& = {});
std::pair<Cut, CutEvent> generate_strengthened_benders_cut(const Instance&, const ScenarioTree&,
                                                           SolverBackend&,
                                                           const std::vector<CutPool>&,
                                                           int parent_stage,
                                                           const std::vector<double>& y_hat,
                                                           int iteration,
                                                           const CutGenConfig& = {});
std::pair<Cut, CutEvent> generate_integer_optimality_cut(const Instance&, const ScenarioTree&,
                                                         SolverBackend&,
                                                         const std::vector<CutPool>&,
                                                         int parent_stage,
                                                         const std::vector<double>& y_hat,
                                                         int iteration, const CutGenConfig& = {});
std::pair<Cut, CutEvent> generate_lagrangian_cut(const Instance&, const ScenarioTree&,
                                                 SolverBackend&, const std::vector<CutPool>&,
                                                 int parent_stage,
                                                 const std::vector<double>& y_hat, int iteration,
                                                 const CutGenConfig& = {});
std::pair<Cut, CutEvent> generate_pareto_optimal_cut(const Instance&, const ScenarioTree&,
                                                     SolverBackend&, const std::vector<CutPool>&,
                                                     int parent_stage,
                                                     const std::vector<double>& y_hat,
                                                     const std::vector<double>& core,
                                                     int iteration, const CutGenConfig& = {});
std::pair<Cut, CutEvent> generate_independent_mw_cut(const Instance&, const ScenarioTree&,
                                                     SolverBackend&, const std::vector<CutPool>&,
                                                     int parent_stage,
                                                     const std::vector<double>& core,
                                                     int iteration, const CutGenConfig& = {});
std::pair<Cut, CutEvent> generate_strengthened_pareto_cut(const Instance&, const ScenarioTree&,
                                                          SolverBackend&,
                                                          const std::vector<CutPool>&,
                                                          int parent_stage,
                                                          const std::vector<double>& y_hat,
                                                          const std::vector<double>& core,
                                                          int iteration, const CutGenConfig& = {});
std::pair<Cut, CutEvent> generate_strengthened_imw_cut(const Instance&, const ScenarioTree&,
                                                       SolverBackend&, const std::vector<CutPool>&,
                                                       int parent_stage,
                                                       const std::vector<double>& core,
                                                       int iteration, const CutGenConfig& = {});

}  // namespace modcap
