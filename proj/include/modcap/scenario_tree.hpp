#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modcap/instance.hpp"
#include "modcap/random.hpp"

namespace modcap {

// One realization of the stage-t uncertainty: demand per location and
// effective throughput per module per facility. Stage-wise independence
// means the same b blocks are shared by every stage-(t-1) node.
struct RealizationBlock {
  std::vector<double> demand;      // per location
  std::vector<double> throughput;  // per facility, modules per module per period
  double cond_prob = 1.0;
};

struct TreeNode {
  int id = 0;        // 1-based, root = 1
  int stage = 1;     // 1-based
  int block = 0;     // realization block index within the stage
  int ancestor = 0;  // 0 for the root
  std::vector<int> children;
  double prob = 1.0;       // p_n
  double cond_prob = 1.0;  // p_{a(n),n}
};

struct TreeParams {
  int branching = 2;      // b
  double sigma = 0.5;     // demand std-dev scale
  double lambda = 0.5;    // Poisson disruption rate
  std::uint64_t seed = 1;
  bool per_location_demand_factors = false;
};

class ScenarioTree {
 public:
  int horizon = 1;
  TreeParams params;
  // blocks[t-1] holds the realization blocks of stage t; stage 1 has one
  std::vector<std::vector<RealizationBlock>> blocks;
  std::vector<TreeNode> nodes;  // full node DAG, breadth-first by stage

  int branching() const { return params.branching; }
  int num_nodes() const { return static_cast<int>(nodes.size()); }
  const TreeNode& node(int id) const { return nodes[static_cast<std::size_t>(id - 1)]; }
  const RealizationBlock& block_of(const TreeNode& n) const {
    return blocks[static_cast<std::size_t>(n.stage - 1)][static_cast<std::size_t>(n.block)];
  }
  std::vector<int> stage_node_ids(int stage) const;
  int num_leaves() const;
};

// Root-to-leaf node ids, one per stage.
using ScenarioPath = std::vector<int>;

// Demand multiplier xi_t: truncated normal, mean 1, sd (t-1)*sigma,
// truncated to [0, inf); identically 1 at stage 1.
double sample_demand_factor(int stage, double sigma, Rng& rng);

// Throughput multiplier delta: Poisson(lambda) disruption count mapped to a
// severity interval, then uniform within it.
double sample_throughput_factor(double lambda, Rng& rng);

ScenarioTree build_tree(const Instance& instance, const TreeParams& params);

std::vector<ScenarioPath> sample_forward_paths(const ScenarioTree& tree, int count, Rng& rng);

std::string tree_to_json(const ScenarioTree& tree);
void save_tree(const ScenarioTree& tree, const std::string& path);

}  // namespace modcap
