#include "modcap/oracle.hpp"

#include <stdexcept>

namespace modcap {

namespace {

// The suffix problem depends on the stage-t state only through each
// facility's landing level, so it is the extensive form of a shifted
// instance that starts there.
Instance suffix_instance(const Instance& instance, int stage, const std::vector<double>& state) {
  StateSpace space(instance);
  Instance shifted = instance;
  shifted.horizon = instance.horizon - stage;
  shifted.revision.w.assign(instance.revision.w.begin() + stage, instance.revision.w.end());
  for (int j = 0; j < space.nj; ++j) {
    int landing = -1;
    for (int l1 = 0; l1 < space.nl; ++l1)
      for (int l2 = 0; l2 < space.nl; ++l2)
        if (state[static_cast<std::size_t>(space.index(j, l1, l2))] > 0.5) landing = l2;
    if (landing < 0) throw std::domain_error("cost_to_go_oracle: state is not one-hot");
    shifted.capacity.initial_level[static_cast<std::size_t>(j)] = landing;
  }
  return shifted;
}

ScenarioTree suffix_tree(const ScenarioTree& tree, int stage) {
  ScenarioTree suffix;
  suffix.horizon = tree.horizon - stage;
  suffix.params = tree.params;
  for (int t = stage + 1; t <= tree.horizon; ++t)
    suffix.blocks.push_back(tree.blocks[static_cast<std::size_t>(t - 1)]);
  // the suffix is a forest of b subtrees; give it a synthetic root stage by
  // treating stage t+1 blocks as children of a virtual parent with their
  // conditional probabilities
  std::vector<int> frontier;
  for (int s = 1; s <= suffix.horizon; ++s) {
    const auto& stage_blocks = suffix.blocks[static_cast<std::size_t>(s - 1)];
    std::vector<int> next;
    if (s == 1) {
      for (int r = 0; r < static_cast<int>(stage_blocks.size()); ++r) {
        TreeNode n;
        n.id = static_cast<int>(suffix.nodes.size()) + 1;
        n.stage = 1;
        n.block = r;
        n.ancestor = 0;
        n.cond_prob = stage_blocks[static_cast<std::size_t>(r)].cond_prob;
        n.prob = n.cond_prob;
        suffix.nodes.push_back(n);
        next.push_back(n.id);
      }
    } else {
      for (int parent : frontier)
        for (int r = 0; r < static_cast<int>(stage_blocks.size()); ++r) {
          TreeNode n;
          n.id = static_cast<int>(suffix.nodes.size()) + 1;
          n.stage = s;
          n.block = r;
          n.ancestor = parent;
          n.cond_prob = stage_blocks[static_cast<std::size_t>(r)].cond_prob;
          n.prob = suffix.nodes[static_cast<std::size_t>(parent - 1)].prob * n.cond_prob;
          suffix.nodes.push_back(n);
          suffix.nodes[static_cast<std::size_t>(parent - 1)].children.push_back(n.id);
          next.push_back(n.id);
        }
    }
    frontier = std::move(next);
  }
  return suffix;
}

}  // namespace

double cost_to_go_oracle(const Instance& instance, const ScenarioTree& tree, int stage,
                         const std::vector<double>& state, SolverBackend& backend,
                         const MipOptions& options) {
  if (stage >= tree.horizon) return 0.0;
  if (stage < 1) throw std::domain_error("cost_to_go_oracle: stage out of range");

  const Instance shifted = suffix_instance(instance, stage, state);
  const ScenarioTree suffix = suffix_tree(tree, stage);

  // the suffix has multiple stage-1 roots; the extensive builder expects a
  // rooted tree, and handles forests transparently because root nodes carry
  // their own probabilities and no ancestor constraints
  ExtensiveModel em = build_extensive_form(shifted, suffix);
  SolveResult result = solve_extensive(em, backend, options);
  if (result.status != SolveStatus::Optimal)
    throw std::runtime_error("cost_to_go_oracle: suffix model did not solve to optimality");
  return result.objective;
}

std::vector<std::vector<double>> enumerate_stage_states(const Instance& instance, int stage) {
  StateSpace space(instance);
  const bool revisable = instance.revision.allows(stage - 1);
  std::vector<int> facility_options;
  for (int l1 = 0; l1 < space.nl; ++l1)
    for (int l2 = 0; l2 < space.nl; ++l2)
      if (l1 == l2 || revisable) facility_options.push_back(l1 * space.nl + l2);

  std::vector<std::vector<double>> states;
  std::vector<int> pick(static_cast<std::size_t>(space.nj), 0);
  while (true) {
    std::vector<double> state(static_cast<std::size_t>(space.dim()), 0.0);
    for (int j = 0; j < space.nj; ++j)
      state[static_cast<std::size_t>(j * space.nl * space.nl +
                                     facility_options[static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])])] = 1.0;
    states.push_back(std::move(state));
    int j = 0;
    while (j < space.nj) {
      if (++pick[static_cast<std::size_t>(j)] < static_cast<int>(facility_options.size())) break;
      pick[static_cast<std::size_t>(j)] = 0;
      ++j;
    }
    if (j == space.nj) break;
  }
  return states;
}

}  // namespace modcap
