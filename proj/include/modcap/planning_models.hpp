#pragma once

#include <map>
#include <vector>

#include "modcap/instance.hpp"
#include "modcap/model.hpp"
#include "modcap/scenario_tree.hpp"
#include "modcap/stage_model.hpp"

namespace modcap {

// Network design variants used by the mobility value decomposition.
enum class NetworkVariant {
  Full,              // level changes at revision points, full move-pair set
  ModularNonMobile,  // level changes allowed, moves restricted to depot pairs
  StaticNonModular,  // one up-front commitment, depot moves at stage 1 only
};

// Deterministic-equivalent MILP over the whole scenario tree.
struct ExtensiveModel {
  ModelSpec model;
  const ScenarioTree* tree = nullptr;
  // y[node_order][state coordinate]; node_order follows tree.nodes
  std::vector<std::vector<VarId>> y;
  std::vector<std::vector<VarId>> stock;
  std::vector<std::vector<VarId>> outsource;

  // capacity plan (state vector) of a node in a solved model
  std::vector<double> node_state(const SolveResult& result, int node_id) const;
};

ExtensiveModel build_extensive_form(const Instance& instance, const ScenarioTree& tree,
                                    NetworkVariant variant = NetworkVariant::Full);

// Single-path expected-value counterpart: average demand per stage, nominal
// undisrupted throughput. Solving it yields EV and the deterministic plan.
ScenarioTree expected_value_tree(const Instance& instance, const ScenarioTree& tree);
ExtensiveModel build_deterministic(const Instance& instance, const ScenarioTree& tree);

// Per-stage capacity plan, stages 1..T (state vectors).
using StagePlan = std::vector<std::vector<double>>;

StagePlan extract_stage_plan(const ExtensiveModel& deterministic_model, const SolveResult& result);

// Extensive form with Y pinned to `plan` at stages 1..T-1 across all
// scenarios. Throws std::domain_error when the plan violates level
// continuity or revision gating.
ExtensiveModel build_eev_model(const Instance& instance, const ScenarioTree& tree,
                               const StagePlan& plan);

// Solves the extensive form sharply; the desk-scale oracle.
SolveResult solve_extensive(const ExtensiveModel& em, SolverBackend& backend,
                            const MipOptions& options = MipOptions{});

}  // namespace modcap
