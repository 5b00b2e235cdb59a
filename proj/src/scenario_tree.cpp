#include "modcap/scenario_tree.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace modcap {

using nlohmann::json;

std::vector<int> ScenarioTree::stage_node_ids(int stage) const {
  std::vector<int> ids;
  for (const auto& n : nodes)
    if (n.stage == stage) ids.push_back(n.id);
  return ids;
}

int ScenarioTree::num_leaves() const {
  int count = 0;
  for (const auto& n : nodes) count += (n.stage == horizon);
  return count;
}

double sample_demand_factor(int stage, double sigma, Rng& rng) {
  if (stage <= 1) return 1.0;
  return rng.truncated_normal_nonneg(1.0, (stage - 1) * sigma);
}

double sample_throughput_factor(double lambda, Rng& rng) {
  const int disruptions = rng.poisson(lambda);
  double lo, hi;
  if (disruptions == 0) {
    lo = 1.0;
    hi = 1.0;
  } else if (disruptions == 1) {
    lo = 0.8;
    hi = 0.99;
  } else if (disruptions == 2) {
    lo = 0.6;
    hi = 0.79;
  } else {
    lo = 0.0;
    hi = 0.59;
  }
  return lo == hi ? lo : rng.uniform(lo, hi);
}

ScenarioTree build_tree(const Instance& instance, const TreeParams& params) {
  if (params.branching < 1) throw std::domain_error("build_tree: branching must be >= 1");
  ScenarioTree tree;
  tree.horizon = instance.horizon;
  tree.params = params;

  const int ni = instance.network.num_locations();
  const int nj = instance.network.num_facilities();
  const double rate = instance.capacity.nominal_rate;

  Rng rng(derive_stream(params.seed, 1));

  // stage 1: the known root realization
  RealizationBlock root;
  root.demand = instance.base_demand;
  root.throughput.assign(static_cast<std::size_t>(nj), rate);
  root.cond_prob = 1.0;
  tree.blocks.push_back({root});

  for (int t = 2; t <= instance.horizon; ++t) {
    std::vector<RealizationBlock> stage_blocks;
    for (int r = 0; r < params.branching; ++r) {
      RealizationBlock blk;
      blk.cond_prob = 1.0 / params.branching;
      if (params.per_location_demand_factors) {
        for (int i = 0; i < ni; ++i)
          blk.demand.push_back(instance.base_demand[static_cast<std::size_t>(i)] *
                               sample_demand_factor(t, params.sigma, rng));
      } else {
        const double xi = sample_demand_factor(t, params.sigma, rng);
        for (int i = 0; i < ni; ++i)
          blk.demand.push_back(instance.base_demand[static_cast<std::size_t>(i)] * xi);
      }
      for (int j = 0; j < nj; ++j)
        blk.throughput.push_back(rate * sample_throughput_factor(params.lambda, rng));
      stage_blocks.push_back(std::move(blk));
    }
    tree.blocks.push_back(std::move(stage_blocks));
  }

  // materialize the node DAG: stage t holds b^(t-1) nodes, every stage-(t-1)
  // node gets one child per realization block
  TreeNode root_node;
  root_node.id = 1;
  tree.nodes.push_back(root_node);
  std::vector<int> frontier{1};
  for (int t = 2; t <= instance.horizon; ++t) {
    std::vector<int> next;
    for (int parent_id : frontier) {
      for (int r = 0; r < params.branching; ++r) {
        TreeNode n;
        n.id = static_cast<int>(tree.nodes.size()) + 1;
        n.stage = t;
        n.block = r;
        n.ancestor = parent_id;
        n.cond_prob = tree.blocks[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(r)].cond_prob;
        n.prob = tree.nodes[static_cast<std::size_t>(parent_id - 1)].prob * n.cond_prob;
        tree.nodes.push_back(n);
        tree.nodes[static_cast<std::size_t>(parent_id - 1)].children.push_back(n.id);
        next.push_back(n.id);
      }
    }
    frontier = std::move(next);
  }
  return tree;
}

std::vector<ScenarioPath> sample_forward_paths(const ScenarioTree& tree, int count, Rng& rng) {
  if (count < 1) throw std::domain_error("sample_forward_paths: count must be >= 1");
  std::vector<ScenarioPath> paths;
  for (int m = 0; m < count; ++m) {
    ScenarioPath path{1};
    int current = 1;
    for (int t = 2; t <= tree.horizon; ++t) {
      const auto& children = tree.node(current).children;
      // children are wired in block order with equal conditional
      // probabilities, so walking the CDF keeps general weights correct
      double u = rng.uniform01();
      int chosen = children.back();
      double cum = 0.0;
      for (int child : children) {
        cum += tree.node(child).cond_prob;
        if (u <= cum) {
          chosen = child;
          break;
        }
      }
      path.push_back(chosen);
      current = chosen;
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

std::string tree_to_json(const ScenarioTree& tree) {
  json doc;
  doc["schema_version"] = 1;
  doc["horizon"] = tree.horizon;
  doc["branching"] = tree.params.branching;
  doc["sigma"] = tree.params.sigma;
  doc["lambda"] = tree.params.lambda;
  doc["seed"] = tree.params.seed;
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    const auto& blk = tree.block_of(n);
    json jn = {{"id", n.id},
               {"stage", n.stage},
               {"children", n.children},
               {"p", n.prob},
               {"cond_p", n.cond_prob},
               {"demand", blk.demand},
               {"throughput", blk.throughput}};
    if (n.ancestor != 0) jn["ancestor"] = n.ancestor;
    nodes.push_back(jn);
  }
  doc["nodes"] = nodes;
  return doc.dump(2) + "\n";
}

void save_tree(const ScenarioTree& tree, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << tree_to_json(tree);
}

}  // namespace modcap
