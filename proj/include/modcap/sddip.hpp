#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "modcap/cuts.hpp"
#include "modcap/instance.hpp"
#include "modcap/scenario_tree.hpp"

namespace modcap {

struct SddipConfig {
  int sample_paths = 5;            // M, forward scenarios per iteration
  double confidence_alpha = 0.05;  // two-sided confidence level for UB
  double gap_tolerance = 0.01;     // (UB - LB) / UB stopping threshold
  int max_iterations = 200;
  double time_limit_seconds = 1e18;
  std::vector<CutFamily> families = {CutFamily::SIM, CutFamily::I};
  bool alternation = true;
  int clear_threshold = 20;  // zeta: accepted states before memory reset
  int workers = 1;
  std::uint64_t seed = 1;
  CutGenConfig cut_config;
  int stall_iterations = 10;
  double stall_epsilon = 1e-9;

  // parses preset names like "sim-i", "SPT+L", "b-l"
  static SddipConfig preset(const std::string& name);
};

enum class StopReason { Converged, Stalled, IterationLimit, TimeLimit };
const char* stop_reason_name(StopReason reason);

struct IterationRecord {
  int iteration = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double gap = 0.0;
  std::map<std::string, int> cuts_by_family;
  double wall_ms = 0.0;
};

struct SddipResult {
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double gap = 0.0;
  int iterations = 0;
  StopReason stop_reason = StopReason::IterationLimit;
  std::map<std::string, int> cut_census;
  std::vector<IterationRecord> telemetry;
  std::vector<double> first_stage_plan;
  double wall_seconds = 0.0;
  std::vector<CutPool> pools;  // final pools, indexed by stage (1..T-1)
  std::vector<CutEvent> events;
};

// State identity used by the alternating cut strategy: stage, node, and the
// exact binary state vector.
struct StateKey {
  int stage = 0;
  int node_id = 0;
  std::string state_bits;
  auto operator<=>(const StateKey&) const = default;
};

enum class AlternationAction { LpCut, IntCut, Accept };

struct AlternationMemory {
  std::set<StateKey> v_lp;
  std::set<StateKey> v;
  int accepts = 0;
  int clear_threshold = 20;
};

// First visit generates an LP-based cut, a revisit the integer-based one,
// further revisits are accepted; the sets clear once accepts reach the
// threshold.
AlternationAction alternation_decide(AlternationMemory& memory, const StateKey& key);

// Core points per (stage, realization block), updated as the midpoint with
// each incumbent state.
class CorePointStore {
 public:
  const std::vector<double>& update(int stage, int block, const std::vector<double>& state);
  const std::vector<double>* find(int stage, int block) const;

 private:
  std::map<std::pair<int, int>, std::vector<double>> points_;
};

// Nearly-even contiguous partition: sizes differ by at most one, assignment
// deterministic in the input order.
std::vector<std::vector<int>> partition_nodes(const std::vector<int>& nodes, int workers);

struct ForwardStageRecord {
  int node_id = 0;
  int block = 0;
  std::vector<double> state;
  double stage_cost = 0.0;
  double theta_hat = 0.0;
};
using Trajectory = std::vector<ForwardStageRecord>;  // one record per stage

struct ForwardPassResult {
  std::vector<Trajectory> trajectories;
  double mean_cost = 0.0;
  double upper_bound = 0.0;  // mean + z_{alpha/2} * sd / sqrt(M)
  double sample_sd = 0.0;
};

class SddipSolver {
 public:
  SddipSolver(const Instance& instance, const ScenarioTree& tree, SddipConfig config,
              SolverBackend& backend);

  SddipResult run();

  // exposed for tests
  ForwardPassResult forward_pass(int iteration);
  double backward_pass(int iteration, const std::vector<Trajectory>& trajectories);
  const std::vector<CutPool>& pools() const { return pools_; }
  const CorePointStore& core_points() const { return core_points_; }
  AlternationMemory& alternation_memory() { return memory_; }
  std::vector<CutEvent>& events() { return events_; }

 private:
  struct StageSolveOutput {
    std::vector<double> state;
    double stage_cost = 0.0;
    double theta_hat = 0.0;
  };
  StageSolveOutput solve_stage(int stage, int block, const std::vector<double>& incoming) const;

  const Instance& instance_;
  const ScenarioTree& tree_;
  SddipConfig config_;
  SolverBackend& backend_;
  std::vector<CutPool> pools_;
  CorePointStore core_points_;
  AlternationMemory memory_;
  Rng path_rng_;
  std::vector<double> initial_state_;
  std::vector<CutFamily> lp_families_;
  std::vector<CutFamily> int_families_;
  std::map<std::string, int> census_;
  std::vector<CutEvent> events_;
};

// Convenience wrapper.
SddipResult run_sddip(const Instance& instance, const ScenarioTree& tree,
                      const SddipConfig& config, SolverBackend& backend);

}  // namespace modcap
