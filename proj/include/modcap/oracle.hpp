#pragma once

#include <vector>

#include "modcap/model.hpp"
#include "modcap/planning_models.hpp"

namespace modcap {

// Exact expected cost-to-go phi_t(y) at a binary stage-t state, computed by
// solving the extensive form of the suffix problem over stages t+1..T.
// Independent of the cut machinery; the validity oracle for every family.
double cost_to_go_oracle(const Instance& instance, const ScenarioTree& tree, int stage,
                         const std::vector<double>& state, SolverBackend& backend,
                         const MipOptions& options = MipOptions{});

// All one-hot, revision-gated binary states of a stage (the enumeration
// domain for cut-validity checks).
std::vector<std::vector<double>> enumerate_stage_states(const Instance& instance, int stage);

}  // namespace modcap
