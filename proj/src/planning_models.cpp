#include "modcap/planning_models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace modcap {

namespace {

bool variant_allows_move(NetworkVariant variant, int from, int to, int stage) {
  switch (variant) {
    case NetworkVariant::Full:
      return true;
    case NetworkVariant::ModularNonMobile:
      return from == kDepot || to == kDepot;
    case NetworkVariant::StaticNonModular:
      return stage == 1 && (from == kDepot || to == kDepot);
  }
  return true;
}

bool variant_allows_revision(NetworkVariant variant, const Instance& instance, int stage) {
  if (variant == NetworkVariant::StaticNonModular) return stage == 1;
  return instance.revision.allows(stage - 1);
}

}  // namespace

ExtensiveModel build_extensive_form(const Instance& instance, const ScenarioTree& tree,
                                    NetworkVariant variant) {
  if (tree.horizon != instance.horizon)
    throw std::domain_error("build_extensive_form: tree horizon does not match instance");

  StateSpace space(instance);
  const Network& net = instance.network;
  const int nj = space.nj;
  const int nl = space.nl;
  const double flow_cap = 2.0 * instance.capacity.total_max_modules();

  ExtensiveModel em;
  em.tree = &tree;
  ModelSpec& m = em.model;

  const int n_nodes = tree.num_nodes();
  em.y.resize(static_cast<std::size_t>(n_nodes));
  em.stock.resize(static_cast<std::size_t>(n_nodes));
  em.outsource.resize(static_cast<std::size_t>(n_nodes));
  std::vector<std::vector<VarId>> flow(static_cast<std::size_t>(n_nodes));
  std::vector<std::vector<VarId>> assign(static_cast<std::size_t>(n_nodes));

  for (const TreeNode& node : tree.nodes) {
    const std::size_t ni = static_cast<std::size_t>(node.id - 1);
    const std::string ns = "n" + std::to_string(node.id);
    const bool revisable = variant_allows_revision(variant, instance, node.stage);

    em.y[ni].resize(static_cast<std::size_t>(space.dim()));
    for (int j = 0; j < nj; ++j)
      for (int l1 = 0; l1 < nl; ++l1)
        for (int l2 = 0; l2 < nl; ++l2) {
          double ub = (l1 != l2 && !revisable) ? 0.0 : 1.0;
          // (7): the root transition starts from the initial level
          if (node.stage == 1 &&
              l1 != instance.capacity.initial_level[static_cast<std::size_t>(j)])
            ub = 0.0;
          em.y[ni][static_cast<std::size_t>(space.index(j, l1, l2))] = m.add_var(
              "Y_" + ns + "_" + std::to_string(j + 1) + "_" + std::to_string(l1 + 1) + "_" +
                  std::to_string(l2 + 1),
              VarKind::Binary, 0.0, ub,
              node.prob * compose_facility_transition_cost(instance, j, l1, l2));
        }
    for (std::size_t p = 0; p < net.move_pairs.size(); ++p) {
      const auto& [from, to] = net.move_pairs[p];
      const double ub = variant_allows_move(variant, from, to, node.stage) ? flow_cap : 0.0;
      flow[ni].push_back(m.add_var("F_" + ns + "_" + std::to_string(p), VarKind::Integer, 0.0, ub,
                                   node.prob * compose_module_move_cost(instance, from, to)));
    }
    for (int j = 0; j < nj; ++j)
      em.stock[ni].push_back(m.add_var("S_" + ns + "_" + std::to_string(j + 1), VarKind::Integer,
                                       0.0, instance.capacity.max_modules(j), 0.0));
    for (const auto& [i, j] : net.demand_pairs)
      assign[ni].push_back(
          m.add_var("X_" + ns + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                    VarKind::Continuous, 0.0, kInf,
                    node.prob * instance.costs.demand_ship_per_hour * instance.demand_hours(i, j)));
    for (int j = 0; j < nj; ++j)
      em.outsource[ni].push_back(m.add_var("R_" + ns + "_" + std::to_string(j + 1),
                                           VarKind::Continuous, 0.0, kInf,
                                           node.prob * instance.costs.outsource_per_module));
  }

  for (const TreeNode& node : tree.nodes) {
    const std::size_t ni = static_cast<std::size_t>(node.id - 1);
    const std::string ns = "n" + std::to_string(node.id);
    const RealizationBlock& block = tree.block_of(node);

    // (2)
    for (int i = 0; i < net.num_locations(); ++i) {
      LinearExpr expr;
      for (std::size_t p = 0; p < net.demand_pairs.size(); ++p)
        if (net.demand_pairs[p].first == i) expr.add(assign[ni][p], 1.0);
      m.add_row("demand_" + ns + "_" + std::to_string(i + 1), std::move(expr),
                RowSense::GreaterEqual, block.demand[static_cast<std::size_t>(i)]);
    }
    // (4)
    for (int j = 0; j < nj; ++j) {
      LinearExpr expr;
      expr.add(em.stock[ni][static_cast<std::size_t>(j)],
               block.throughput[static_cast<std::size_t>(j)]);
      expr.add(em.outsource[ni][static_cast<std::size_t>(j)], 1.0);
      for (std::size_t p = 0; p < net.demand_pairs.size(); ++p)
        if (net.demand_pairs[p].second == j) expr.add(assign[ni][p], -1.0);
      m.add_row("cap_" + ns + "_" + std::to_string(j + 1), std::move(expr),
                RowSense::GreaterEqual, 0.0);
    }
    // (4.5)/(5) module balance along the tree
    for (int j = 0; j < nj; ++j) {
      LinearExpr expr;
      expr.add(em.stock[ni][static_cast<std::size_t>(j)], 1.0);
      double rhs = 0.0;
      if (node.stage == 1) {
        rhs = instance.capacity.modules_per_level[static_cast<std::size_t>(j)][static_cast<std::size_t>(
            instance.capacity.initial_level[static_cast<std::size_t>(j)])];
      } else {
        const std::size_t pi = static_cast<std::size_t>(node.ancestor - 1);
        expr.add(em.stock[pi][static_cast<std::size_t>(j)], -1.0);
      }
      for (std::size_t p = 0; p < net.move_pairs.size(); ++p) {
        const auto& [from, to] = net.move_pairs[p];
        if (to == j) expr.add(flow[ni][p], -1.0);
        if (from == j) expr.add(flow[ni][p], 1.0);
      }
      m.add_row("flow_" + ns + "_" + std::to_string(j + 1), std::move(expr), RowSense::Equal, rhs);
    }
    // (6)
    for (int j = 0; j < nj; ++j) {
      LinearExpr expr;
      expr.add(em.stock[ni][static_cast<std::size_t>(j)], 1.0);
      for (int l1 = 0; l1 < nl; ++l1)
        for (int l2 = 0; l2 < nl; ++l2)
          expr.add(em.y[ni][static_cast<std::size_t>(space.index(j, l1, l2))],
                   -static_cast<double>(
                       instance.capacity.modules_per_level[static_cast<std::size_t>(j)]
                                                          [static_cast<std::size_t>(l2)]));
      m.add_row("level_" + ns + "_" + std::to_string(j + 1), std::move(expr), RowSense::Equal, 0.0);
    }
    // (8) level continuity with the ancestor
    if (node.stage > 1) {
      const std::size_t pi = static_cast<std::size_t>(node.ancestor - 1);
      for (int j = 0; j < nj; ++j)
        for (int l = 0; l < nl; ++l) {
          LinearExpr expr;
          for (int l1 = 0; l1 < nl; ++l1)
            expr.add(em.y[pi][static_cast<std::size_t>(space.index(j, l1, l))], 1.0);
          for (int l2 = 0; l2 < nl; ++l2)
            expr.add(em.y[ni][static_cast<std::size_t>(space.index(j, l, l2))], -1.0);
          m.add_row("cont_" + ns + "_" + std::to_string(j + 1) + "_" + std::to_string(l + 1),
                    std::move(expr), RowSense::Equal, 0.0);
        }
    }
    // (9)
    for (int j = 0; j < nj; ++j) {
      LinearExpr expr;
      for (int l1 = 0; l1 < nl; ++l1)
        for (int l2 = 0; l2 < nl; ++l2)
          expr.add(em.y[ni][static_cast<std::size_t>(space.index(j, l1, l2))], 1.0);
      m.add_row("one_" + ns + "_" + std::to_string(j + 1), std::move(expr), RowSense::Equal, 1.0);
    }
  }
  return em;
}

std::vector<double> ExtensiveModel::node_state(const SolveResult& result, int node_id) const {
  const auto& vars = y[static_cast<std::size_t>(node_id - 1)];
  std::vector<double> state;
  state.reserve(vars.size());
  for (VarId v : vars) state.push_back(std::round(result.value(v)));
  return state;
}

ScenarioTree expected_value_tree(const Instance& instance, const ScenarioTree& tree) {
  ScenarioTree ev;
  ev.horizon = tree.horizon;
  ev.params = tree.params;
  ev.params.branching = 1;
  for (int t = 1; t <= tree.horizon; ++t) {
    const auto& stage_blocks = tree.blocks[static_cast<std::size_t>(t - 1)];
    RealizationBlock blk;
    blk.cond_prob = 1.0;
    blk.demand.assign(instance.base_demand.size(), 0.0);
    for (const auto& b : stage_blocks)
      for (std::size_t i = 0; i < blk.demand.size(); ++i)
        blk.demand[i] += b.cond_prob * b.demand[i];
    // no disruption in the deterministic counterpart
    blk.throughput.assign(static_cast<std::size_t>(instance.network.num_facilities()),
                          instance.capacity.nominal_rate);
    ev.blocks.push_back({blk});
  }
  for (int t = 1; t <= tree.horizon; ++t) {
    TreeNode n;
    n.id = t;
    n.stage = t;
    n.block = 0;
    n.ancestor = t - 1;
    n.prob = 1.0;
    n.cond_prob = 1.0;
    if (t < tree.horizon) n.children = {t + 1};
    ev.nodes.push_back(n);
  }
  return ev;
}

ExtensiveModel build_deterministic(const Instance& instance, const ScenarioTree& tree) {
  ScenarioTree ev = expected_value_tree(instance, tree);
  ExtensiveModel em = build_extensive_form(instance, ev);
  // the single-path tree is owned by this call; keep a stable copy
  em.tree = nullptr;
  return em;
}

StagePlan extract_stage_plan(const ExtensiveModel& em, const SolveResult& result) {
  StagePlan plan;
  for (std::size_t n = 0; n < em.y.size(); ++n) {
    std::vector<double> state;
    state.reserve(em.y[n].size());
    for (VarId v : em.y[n]) state.push_back(std::round(result.value(v)));
    plan.push_back(std::move(state));
  }
  return plan;
}

ExtensiveModel build_eev_model(const Instance& instance, const ScenarioTree& tree,
                               const StagePlan& plan) {
  if (static_cast<int>(plan.size()) < instance.horizon)
    throw std::domain_error("build_eev_model: plan must cover every stage");
  StateSpace space(instance);

  // reject plans that break level continuity, gating, or the initial level
  for (int t = 1; t <= instance.horizon; ++t) {
    const auto& state = plan[static_cast<std::size_t>(t - 1)];
    if (static_cast<int>(state.size()) != space.dim())
      throw std::domain_error("build_eev_model: plan state has wrong dimension");
    const bool revisable = instance.revision.allows(t - 1);
    for (int j = 0; j < space.nj; ++j) {
      int chosen = -1;
      for (int l1 = 0; l1 < space.nl; ++l1)
        for (int l2 = 0; l2 < space.nl; ++l2)
          if (state[static_cast<std::size_t>(space.index(j, l1, l2))] > 0.5) {
            if (chosen >= 0) throw std::domain_error("build_eev_model: plan is not one-hot");
            chosen = space.index(j, l1, l2);
          }
      if (chosen < 0) throw std::domain_error("build_eev_model: plan is not one-hot");
      const int l1 = (chosen / space.nl) % space.nl;
      const int l2 = chosen % space.nl;
      if (l1 != l2 && !revisable)
        throw std::domain_error("build_eev_model: plan revises outside a revision point");
      if (t == 1) {
        if (l1 != instance.capacity.initial_level[static_cast<std::size_t>(j)])
          throw std::domain_error("build_eev_model: plan does not start at the initial level");
      } else {
        const auto& prev = plan[static_cast<std::size_t>(t - 2)];
        int prev_to = -1;
        for (int a = 0; a < space.nl; ++a)
          for (int b = 0; b < space.nl; ++b)
            if (prev[static_cast<std::size_t>(space.index(j, a, b))] > 0.5) prev_to = b;
        if (prev_to != l1)
          throw std::domain_error("build_eev_model: plan violates level continuity");
      }
    }
  }

  ExtensiveModel em = build_extensive_form(instance, tree);
  // pin Y at stages 1..T-1 across all scenarios to the deterministic plan
  for (const TreeNode& node : tree.nodes) {
    if (node.stage > instance.horizon - 1) continue;
    const auto& state = plan[static_cast<std::size_t>(node.stage - 1)];
    for (int c = 0; c < space.dim(); ++c) {
      const double v = state[static_cast<std::size_t>(c)];
      em.model.set_bounds(em.y[static_cast<std::size_t>(node.id - 1)][static_cast<std::size_t>(c)],
                          v, v);
    }
  }
  return em;
}

SolveResult solve_extensive(const ExtensiveModel& em, SolverBackend& backend,
                            const MipOptions& options) {
  return backend.solve_mip(em.model, options);
}

}  // namespace modcap
