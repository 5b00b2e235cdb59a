#include "modcap/stage_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "modcap/cuts.hpp"

namespace modcap {

std::vector<double> initial_state_indicator(const Instance& instance) {
  StateSpace space(instance);
  std::vector<double> state(static_cast<std::size_t>(space.dim()), 0.0);
  for (int j = 0; j < space.nj; ++j) {
    const int v = instance.capacity.initial_level[static_cast<std::size_t>(j)];
    state[static_cast<std::size_t>(space.index(j, v, v))] = 1.0;
  }
  return state;
}

std::vector<double> StageModel::state_of(const SolveResult& result) const {
  std::vector<double> state;
  state.reserve(y.size());
  for (VarId v : y) state.push_back(std::round(result.value(v)));
  return state;
}

StageModel build_stage_model(const Instance& instance, int stage, int horizon,
                             const RealizationBlock& block,
                             const std::vector<double>& incoming_state, const CutPool* pool) {
  StateSpace space(instance);
  if (static_cast<int>(incoming_state.size()) != space.dim())
    throw std::domain_error("build_stage_model: incoming state has wrong dimension");

  StageModel sm;
  sm.stage = stage;
  sm.horizon = horizon;
  sm.instance = &instance;
  sm.incoming_state = incoming_state;
  ModelSpec& m = sm.model;

  const Network& net = instance.network;
  const int nj = space.nj;
  const int nl = space.nl;
  const bool revisable = instance.revision.allows(stage - 1);
  const double flow_cap = 2.0 * instance.capacity.total_max_modules();

  sm.y.resize(static_cast<std::size_t>(space.dim()));
  sm.y_copy.resize(static_cast<std::size_t>(space.dim()));
  for (int j = 0; j < nj; ++j)
    for (int l1 = 0; l1 < nl; ++l1)
      for (int l2 = 0; l2 < nl; ++l2) {
        const std::string suffix =
            std::to_string(j + 1) + "_" + std::to_string(l1 + 1) + "_" + std::to_string(l2 + 1);
        // revision gating (10): off-revision stages keep the level
        const double ub = (l1 != l2 && !revisable) ? 0.0 : 1.0;
        sm.y[static_cast<std::size_t>(space.index(j, l1, l2))] =
            m.add_var("Y_" + suffix, VarKind::Binary, 0.0, ub,
                      compose_facility_transition_cost(instance, j, l1, l2));
        sm.y_copy[static_cast<std::size_t>(space.index(j, l1, l2))] =
            m.add_var("Yp_" + suffix, VarKind::Continuous, 0.0, 1.0, 0.0);
      }

  for (const auto& [from, to] : net.move_pairs) {
    const std::string suffix = std::to_string(from == kDepot ? 0 : from + 1) + "_" +
                               std::to_string(to == kDepot ? 0 : to + 1);
    sm.flow.push_back(m.add_var("F_" + suffix, VarKind::Integer, 0.0, flow_cap,
                                compose_module_move_cost(instance, from, to)));
  }
  for (int j = 0; j < nj; ++j)
    sm.stock.push_back(m.add_var("S_" + std::to_string(j + 1), VarKind::Integer, 0.0,
                                 instance.capacity.max_modules(j), 0.0));
  for (const auto& [i, j] : net.demand_pairs)
    sm.assign.push_back(m.add_var("X_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                                  VarKind::Continuous, 0.0, kInf,
                                  instance.costs.demand_ship_per_hour * instance.demand_hours(i, j)));
  for (int j = 0; j < nj; ++j)
    sm.outsource.push_back(m.add_var("R_" + std::to_string(j + 1), VarKind::Continuous, 0.0, kInf,
                                     instance.costs.outsource_per_module));
  if (stage < horizon) {
    const double floor_value = pool ? pool->floor_value : 0.0;
    sm.theta = m.add_var("theta", VarKind::Continuous, floor_value, kInf, 1.0);
  }

  // (2) every location's demand is served
  for (int i = 0; i < net.num_locations(); ++i) {
    LinearExpr expr;
    for (std::size_t p = 0; p < net.demand_pairs.size(); ++p)
      if (net.demand_pairs[p].first == i) expr.add(sm.assign[p], 1.0);
    m.add_row("demand_" + std::to_string(i + 1), std::move(expr), RowSense::GreaterEqual,
              block.demand[static_cast<std::size_t>(i)]);
  }
  // (4) production plus outsourcing covers the assignment
  for (int j = 0; j < nj; ++j) {
    LinearExpr expr;
    expr.add(sm.stock[static_cast<std::size_t>(j)], block.throughput[static_cast<std::size_t>(j)]);
    expr.add(sm.outsource[static_cast<std::size_t>(j)], 1.0);
    for (std::size_t p = 0; p < net.demand_pairs.size(); ++p)
      if (net.demand_pairs[p].second == j) expr.add(sm.assign[p], -1.0);
    m.add_row("cap_" + std::to_string(j + 1), std::move(expr), RowSense::GreaterEqual, 0.0);
  }
  // (5.5) module balance against the copied parent state
  for (int j = 0; j < nj; ++j) {
    LinearExpr expr;
    expr.add(sm.stock[static_cast<std::size_t>(j)], 1.0);
    for (int l1 = 0; l1 < nl; ++l1)
      for (int l2 = 0; l2 < nl; ++l2)
        expr.add(sm.y_copy[static_cast<std::size_t>(space.index(j, l1, l2))],
                 -static_cast<double>(instance.capacity.modules_per_level[static_cast<std::size_t>(j)]
                                                               [static_cast<std::size_t>(l2)]));
    for (std::size_t p = 0; p < net.move_pairs.size(); ++p) {
      const auto& [from, to] = net.move_pairs[p];
      if (to == j) expr.add(sm.flow[p], -1.0);
      if (from == j) expr.add(sm.flow[p], 1.0);
    }
    m.add_row("flow_" + std::to_string(j + 1), std::move(expr), RowSense::Equal, 0.0);
  }
  // (6) capacity level determines the module count
  for (int j = 0; j < nj; ++j) {
    LinearExpr expr;
    expr.add(sm.stock[static_cast<std::size_t>(j)], 1.0);
    for (int l1 = 0; l1 < nl; ++l1)
      for (int l2 = 0; l2 < nl; ++l2)
        expr.add(sm.y[static_cast<std::size_t>(space.index(j, l1, l2))],
                 -static_cast<double>(instance.capacity.modules_per_level[static_cast<std::size_t>(j)]
                                                               [static_cast<std::size_t>(l2)]));
    m.add_row("level_" + std::to_string(j + 1), std::move(expr), RowSense::Equal, 0.0);
  }
  // (8.5) level continuity against the copied parent state
  for (int j = 0; j < nj; ++j)
    for (int l = 0; l < nl; ++l) {
      LinearExpr expr;
      for (int l1 = 0; l1 < nl; ++l1)
        expr.add(sm.y_copy[static_cast<std::size_t>(space.index(j, l1, l))], 1.0);
      for (int l2 = 0; l2 < nl; ++l2)
        expr.add(sm.y[static_cast<std::size_t>(space.index(j, l, l2))], -1.0);
      m.add_row("cont_" + std::to_string(j + 1) + "_" + std::to_string(l + 1), std::move(expr),
                RowSense::Equal, 0.0);
    }
  // (9) exactly one transition per facility
  for (int j = 0; j < nj; ++j) {
    LinearExpr expr;
    for (int l1 = 0; l1 < nl; ++l1)
      for (int l2 = 0; l2 < nl; ++l2)
        expr.add(sm.y[static_cast<std::size_t>(space.index(j, l1, l2))], 1.0);
    m.add_row("one_" + std::to_string(j + 1), std::move(expr), RowSense::Equal, 1.0);
  }
  // (21) linking equalities, tagged for dual extraction
  for (int c = 0; c < space.dim(); ++c) {
    LinearExpr expr;
    expr.add(sm.y_copy[static_cast<std::size_t>(c)], 1.0);
    sm.link_rows.push_back(m.add_row("link_" + std::to_string(c), std::move(expr), RowSense::Equal,
                                     incoming_state[static_cast<std::size_t>(c)]));
  }
  // (22.5) cut pool on the cost-to-go term
  if (sm.has_theta() && pool) {
    int k = 0;
    for (const Cut& cut : pool->cuts) {
      LinearExpr expr;
      expr.add(sm.theta, 1.0);
      for (int c = 0; c < space.dim(); ++c)
        expr.add(sm.y[static_cast<std::size_t>(c)], -cut.slope[static_cast<std::size_t>(c)]);
      m.add_row("cut_" + std::to_string(k++), std::move(expr), RowSense::GreaterEqual,
                cut.intercept);
    }
  }
  return sm;
}

ModelSpec lagrangian_relaxation_model(const StageModel& sm, const std::vector<double>& multipliers) {
  if (multipliers.size() != sm.link_rows.size())
    throw std::domain_error("evaluate_lagrangian: multiplier dimension mismatch");
  ModelSpec relaxed = sm.model;
  // drop the linking rows (contiguous block appended before cut rows is not
  // guaranteed, so rebuild the row list)
  std::vector<ModelSpec::Row> kept;
  std::vector<bool> is_link(static_cast<std::size_t>(relaxed.num_rows()), false);
  for (int r : sm.link_rows) is_link[static_cast<std::size_t>(r)] = true;
  for (int r = 0; r < relaxed.num_rows(); ++r)
    if (!is_link[static_cast<std::size_t>(r)]) kept.push_back(std::move(relaxed.rows[static_cast<std::size_t>(r)]));
  relaxed.rows = std::move(kept);
  // objective gains pi^T (y_hat - Y^P)
  for (std::size_t c = 0; c < multipliers.size(); ++c) {
    const VarId copy_var = sm.y_copy[c];
    relaxed.cols[static_cast<std::size_t>(copy_var.index)].obj -= multipliers[c];
    relaxed.obj_constant += multipliers[c] * sm.incoming_state[c];
  }
  return relaxed;
}

double evaluate_lagrangian(const StageModel& sm, const std::vector<double>& multipliers,
                           SolverBackend& backend, const MipOptions& options) {
  ModelSpec relaxed = lagrangian_relaxation_model(sm, multipliers);
  SolveResult result = backend.solve_mip(relaxed, options);
  if (result.status != SolveStatus::Optimal)
    throw std::runtime_error("evaluate_lagrangian: relaxation did not solve to optimality");
  return result.objective;
}

double evaluate_lagrangian_lp(const StageModel& sm, const std::vector<double>& multipliers,
                              SolverBackend& backend) {
  ModelSpec relaxed = lagrangian_relaxation_model(sm, multipliers);
  SolveResult result = backend.solve_lp(relaxed);
  if (result.status != SolveStatus::Optimal)
    throw std::runtime_error("evaluate_lagrangian_lp: relaxation did not solve");
  return result.objective;
}

}  // namespace modcap
