#include "modcap/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace modcap {

const char* cut_family_code(CutFamily family) {
  switch (family) {
    case CutFamily::B: return "B";
    case CutFamily::SB: return "SB";
    case CutFamily::I: return "I";
    case CutFamily::L: return "L";
    case CutFamily::PT: return "PT";
    case CutFamily::IM: return "IM";
    case CutFamily::SPT: return "SPT";
    case CutFamily::SIM: return "SIM";
  }
  return "?";
}

std::optional<CutFamily> cut_family_from_code(const std::string& code) {
  static const std::map<std::string, CutFamily> table = {
      {"B", CutFamily::B},   {"SB", CutFamily::SB},   {"I", CutFamily::I},
      {"L", CutFamily::L},   {"PT", CutFamily::PT},   {"IM", CutFamily::IM},
      {"SPT", CutFamily::SPT}, {"SIM", CutFamily::SIM}};
  auto it = table.find(code);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool is_integer_family(CutFamily family) {
  return family == CutFamily::I || family == CutFamily::L;
}

double Cut::value_at(const std::vector<double>& state) const {
  double v = intercept;
  for (std::size_t c = 0; c < slope.size(); ++c) v += slope[c] * state[c];
  return v;
}

double CutPool::evaluate(const std::vector<double>& state) const {
  double best = floor_value;
  for (const Cut& cut : cuts) best = std::max(best, cut.value_at(state));
  return best;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double v = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * b[i];
  return v;
}

struct MwResult {
  double rho = 0.0;
  std::vector<double> alpha;
};

// Magnanti-Wong secondary problem, assembled on the primal side: one extra
// column t multiplies every RHS, the linking rows are re-pointed at the
// core, and t's objective coefficient is the incumbent LP value sigma. The
// duals of the modified linking rows realize the secondary problem's
// multipliers.
std::optional<MwResult> solve_mw_secondary(const StageModel& child, double sigma,
                                           const std::vector<double>& core, double epsilon,
                                           SolverBackend& backend) {
  const ModelSpec& src = child.model;
  ModelSpec mw;
  for (const auto& col : src.cols) {
    if (col.lb != 0.0)
      throw std::logic_error("mw secondary: expected zero lower bounds");
    // integrality dropped; finite upper bounds become rows below
    mw.add_var(col.name, VarKind::Continuous, 0.0, kInf, col.obj);
  }
  VarId tp = mw.add_var("mw_t_pos", VarKind::Continuous, 0.0, kInf, sigma + epsilon);
  VarId tn = mw.add_var("mw_t_neg", VarKind::Continuous, 0.0, kInf, -(sigma - epsilon));

  std::vector<bool> is_link(static_cast<std::size_t>(src.num_rows()), false);
  std::vector<int> link_position(static_cast<std::size_t>(src.num_rows()), -1);
  for (std::size_t c = 0; c < child.link_rows.size(); ++c) {
    is_link[static_cast<std::size_t>(child.link_rows[c])] = true;
    link_position[static_cast<std::size_t>(child.link_rows[c])] = static_cast<int>(c);
  }

  std::vector<int> mw_link_rows(child.link_rows.size(), -1);
  for (int r = 0; r < src.num_rows(); ++r) {
    const auto& row = src.rows[static_cast<std::size_t>(r)];
    LinearExpr expr;
    expr.terms = row.coefs;
    if (is_link[static_cast<std::size_t>(r)]) {
      const int c = link_position[static_cast<std::size_t>(r)];
      const double y_hat_c = child.incoming_state[static_cast<std::size_t>(c)];
      expr.add(tp, y_hat_c);
      expr.add(tn, -y_hat_c);
      mw_link_rows[static_cast<std::size_t>(c)] =
          mw.add_row(row.tag, std::move(expr), RowSense::Equal, core[static_cast<std::size_t>(c)]);
    } else {
      expr.add(tp, row.rhs);
      expr.add(tn, -row.rhs);
      mw.add_row(row.tag, std::move(expr), row.sense, row.rhs);
    }
  }
  for (int j = 0; j < src.num_vars(); ++j) {
    const auto& col = src.cols[static_cast<std::size_t>(j)];
    double ub = col.ub;
    if (col.kind == VarKind::Binary) ub = std::min(ub, 1.0);
    if (!std::isfinite(ub)) continue;
    LinearExpr expr;
    expr.add(VarId{j}, 1.0);
    expr.add(tp, ub);
    expr.add(tn, -ub);
    mw.add_row("ub_" + col.name, std::move(expr), RowSense::LessEqual, ub);
  }

  SolveResult sol = backend.solve_lp(mw);
  if (sol.status != SolveStatus::Optimal) return std::nullopt;
  MwResult result;
  result.rho = sol.objective;
  result.alpha.reserve(mw_link_rows.size());
  for (int r : mw_link_rows) result.alpha.push_back(sol.dual(r));
  return result;
}

struct LagrangianEval {
  double value = 0.0;              // min f + mult^T (y_hat - Y^P)
  std::vector<double> subgradient;  // y_hat - Y^P at the argmin
};

LagrangianEval eval_lagrangian_with_subgradient(const StageModel& child,
                                                const std::vector<double>& multipliers,
                                                SolverBackend& backend,
                                                const MipOptions& options) {
  ModelSpec relaxed = lagrangian_relaxation_model(child, multipliers);
  SolveResult sol = backend.solve_mip(relaxed, options);
  if (sol.status != SolveStatus::Optimal)
    throw std::runtime_error("lagrangian evaluation failed to solve");
  LagrangianEval eval;
  eval.value = sol.objective;
  eval.subgradient.reserve(child.y_copy.size());
  for (std::size_t c = 0; c < child.y_copy.size(); ++c)
    eval.subgradient.push_back(child.incoming_state[c] - sol.value(child.y_copy[c]));
  return eval;
}

}  // namespace

LagrangianDualResult solve_lagrangian_dual(const StageModel& child,
                                           const std::vector<double>& warm_start, double target,
                                           SolverBackend& backend,
                                           const LagrangianOptions& lag_options,
                                           const MipOptions& mip_options) {
  struct BundlePoint {
    std::vector<double> multipliers;
    double value;
    std::vector<double> subgradient;
  };
  const double scale = std::max(1.0, std::fabs(target));
  const double tolerance = lag_options.rel_tol * scale;

  LagrangianDualResult result;
  std::vector<BundlePoint> bundle;

  auto evaluate = [&](const std::vector<double>& multipliers) -> const BundlePoint& {
    LagrangianEval eval = eval_lagrangian_with_subgradient(child, multipliers, backend, mip_options);
    bundle.push_back({multipliers, eval.value, eval.subgradient});
    ++result.evals;
    if (eval.value > result.dual_value || result.evals == 1) {
      result.dual_value = eval.value;
      result.multipliers = multipliers;
    }
    return bundle.back();
  };

  evaluate(warm_start);
  int stall = 0;
  double trust_radius = 1.0;
  for (const double v : warm_start) trust_radius = std::max(trust_radius, std::fabs(v));

  while (result.evals < lag_options.max_evals) {
    if (result.dual_value >= target - tolerance) {
      result.converged = true;
      break;
    }
    // Polyak step from the incumbent along its subgradient
    const BundlePoint* best = nullptr;
    for (const auto& p : bundle)
      if (!best || p.value > best->value) best = &p;
    const double norm2 = dot(best->subgradient, best->subgradient);
    if (norm2 < 1e-18) {
      // zero subgradient certifies dual optimality
      result.converged = result.dual_value >= target - tolerance;
      break;
    }
    std::vector<double> candidate = best->multipliers;
    const double step = (target - best->value) / norm2;
    for (std::size_t c = 0; c < candidate.size(); ++c)
      candidate[c] += step * best->subgradient[c];

    const double before = result.dual_value;
    if (stall >= 3 && bundle.size() >= 3) {
      // Kelley refinement: maximize the bundle model in a box around the
      // incumbent, solved with the same internal simplex
      ModelSpec kelley;
      std::vector<VarId> lambda;
      for (std::size_t c = 0; c < best->multipliers.size(); ++c)
        lambda.push_back(kelley.add_var("l" + std::to_string(c), VarKind::Continuous,
                                        best->multipliers[c] - trust_radius,
                                        best->multipliers[c] + trust_radius, 0.0));
      VarId v = kelley.add_var("v", VarKind::Continuous, -kInf, kInf, -1.0);
      for (const auto& p : bundle) {
        LinearExpr expr;
        expr.add(v, 1.0);
        double rhs = p.value;
        for (std::size_t c = 0; c < lambda.size(); ++c) {
          expr.add(lambda[c], -p.subgradient[c]);
          rhs -= p.subgradient[c] * p.multipliers[c];
        }
        kelley.add_row("cutk", std::move(expr), RowSense::LessEqual, rhs);
      }
      SolveResult ksol = backend.solve_lp(kelley);
      if (ksol.status == SolveStatus::Optimal) {
        for (std::size_t c = 0; c < candidate.size(); ++c)
          candidate[c] = ksol.value(lambda[c]);
      }
    }
    evaluate(candidate);
    if (result.dual_value > before + tolerance * 0.01) {
      stall = 0;
      trust_radius *= 1.5;
    } else {
      ++stall;
      trust_radius = std::max(0.5 * trust_radius, 1e-3);
    }
  }
  if (result.dual_value >= target - tolerance) result.converged = true;
  return result;
}

namespace {

struct ChildContext {
  StageModel at_yhat;
  double cond_prob = 0.0;
  // lazy artifacts
  bool lp_done = false;
  double lp_value = 0.0;                 // gamma
  std::vector<double> lp_duals;          // pi on linking rows
  bool lp_fractional = false;
  bool mip_done = false;
  double mip_value = 0.0;
  bool core_lp_done = false;
  double core_lp_value = 0.0;            // zeta
  std::vector<double> core_lp_duals;     // beta
  bool core_lp_fractional = false;
  std::optional<MwResult> mw;
  bool mw_tried = false;
};

bool state_is_fractional(const StageModel& sm, const SolveResult& sol) {
  for (VarId v : sm.y) {
    const double value = sol.value(v);
    if (std::fabs(value - std::round(value)) > 1e-6) return true;
  }
  return false;
}

class StateCutGenerator {
 public:
  StateCutGenerator(const Instance& instance, const ScenarioTree& tree, SolverBackend& backend,
                    const std::vector<CutPool>& pools, int parent_stage,
                    const std::vector<double>& y_hat, const std::vector<double>* core,
                    const CutGenConfig& config)
      : instance_(instance),
        tree_(tree),
        backend_(backend),
        pools_(pools),
        parent_stage_(parent_stage),
        y_hat_(y_hat),
        core_(core),
        config_(config) {
    const int child_stage = parent_stage + 1;
    if (child_stage > tree.horizon)
      throw std::domain_error("cut generation: parent stage has no children");
    const auto& blocks = tree.blocks[static_cast<std::size_t>(child_stage - 1)];
    const CutPool* child_pool =
        child_stage < tree.horizon ? &pools[static_cast<std::size_t>(child_stage)] : nullptr;
    for (const auto& block : blocks) {
      ChildContext ctx;
      ctx.at_yhat =
          build_stage_model(instance, child_stage, tree.horizon, block, y_hat, child_pool);
      ctx.cond_prob = block.cond_prob;
      children_.push_back(std::move(ctx));
    }
  }

  std::pair<Cut, CutEvent> generate(CutFamily family, int iteration) {
    switch (family) {
      case CutFamily::B: return benders(iteration);
      case CutFamily::SB: return strengthened_benders(iteration);
      case CutFamily::I: return integer_optimality(iteration);
      case CutFamily::L: return lagrangian(iteration);
      case CutFamily::PT: return pareto(iteration);
      case CutFamily::IM: return independent_mw(iteration);
      case CutFamily::SPT: return strengthened_pareto(iteration);
      case CutFamily::SIM: return strengthened_imw(iteration);
    }
    throw std::logic_error("unknown cut family");
  }

 private:
  void require_core() const {
    if (!core_) throw std::domain_error("Magnanti-Wong cut requested without a core point");
  }

  void ensure_lp(ChildContext& ctx) {
    if (ctx.lp_done) return;
    SolveResult sol = backend_.solve_lp(ctx.at_yhat.model);
    if (sol.status != SolveStatus::Optimal)
      throw std::runtime_error("backward child LP not optimal (complete recourse violated?)");
    ctx.lp_value = sol.objective;
    ctx.lp_duals.clear();
    for (int r : ctx.at_yhat.link_rows) ctx.lp_duals.push_back(sol.dual(r));
    ctx.lp_fractional = state_is_fractional(ctx.at_yhat, sol);
    ctx.lp_done = true;
  }

  void ensure_mip(ChildContext& ctx) {
    if (ctx.mip_done) return;
    SolveResult sol = backend_.solve_mip(ctx.at_yhat.model, config_.mip);
    if (sol.status != SolveStatus::Optimal)
      throw std::runtime_error("backward child MIP not optimal");
    ctx.mip_value = sol.objective;
    ctx.mip_done = true;
  }

  void ensure_core_lp(ChildContext& ctx) {
    if (ctx.core_lp_done) return;
    require_core();
    // same subproblem with the linking rows re-pointed at the core
    ModelSpec model = ctx.at_yhat.model;
    for (std::size_t c = 0; c < ctx.at_yhat.link_rows.size(); ++c)
      model.set_rhs(ctx.at_yhat.link_rows[c], (*core_)[c]);
    SolveResult sol = backend_.solve_lp(model);
    if (sol.status != SolveStatus::Optimal)
      throw std::runtime_error("core-point child LP not optimal");
    ctx.core_lp_value = sol.objective;
    ctx.core_lp_duals.clear();
    for (int r : ctx.at_yhat.link_rows) ctx.core_lp_duals.push_back(sol.dual(r));
    ctx.core_lp_fractional = state_is_fractional(ctx.at_yhat, sol);
    ctx.core_lp_done = true;
  }

  void ensure_mw(ChildContext& ctx) {
    if (ctx.mw_tried) return;
    ctx.mw_tried = true;
    require_core();
    ensure_lp(ctx);
    ctx.mw = solve_mw_secondary(ctx.at_yhat, ctx.lp_value, *core_, 0.0, backend_);
    if (!ctx.mw)
      ctx.mw = solve_mw_secondary(ctx.at_yhat, ctx.lp_value, *core_, config_.mw_epsilon_retry,
                                  backend_);
    if (!ctx.mw)
      throw std::runtime_error("Magnanti-Wong secondary problem failed even after relaxation");
  }

  double lagrangian_eta(ChildContext& ctx, const std::vector<double>& multipliers) {
    // eta = min(f - mult^T Y^P); evaluate_lagrangian returns it shifted by
    // mult^T y_hat of the model it was built with
    const double value =
        evaluate_lagrangian(ctx.at_yhat, multipliers, backend_, config_.mip);
    return value - dot(multipliers, y_hat_);
  }

  Cut blank_cut(CutFamily family, int iteration) const {
    Cut cut;
    cut.stage = parent_stage_;
    cut.family = family;
    cut.iteration = iteration;
    cut.slope.assign(y_hat_.size(), 0.0);
    if (core_) cut.core_snapshot = *core_;
    return cut;
  }

  CutEvent blank_event(CutFamily family, int iteration) const {
    CutEvent event;
    event.stage = parent_stage_;
    event.family = family;
    event.iteration = iteration;
    return event;
  }

  std::pair<Cut, CutEvent> benders(int iteration) {
    Cut cut = blank_cut(CutFamily::B, iteration);
    cut.core_snapshot.reset();
    CutEvent event = blank_event(CutFamily::B, iteration);
    for (auto& ctx : children_) {
      ensure_lp(ctx);
      event.fractional_child = event.fractional_child || ctx.lp_fractional;
      cut.intercept += ctx.cond_prob * (ctx.lp_value - dot(ctx.lp_duals, y_hat_));
      for (std::size_t c = 0; c < cut.slope.size(); ++c)
        cut.slope[c] += ctx.cond_prob * ctx.lp_duals[c];
    }
    return {cut, event};
  }

  std::pair<Cut, CutEvent> strengthened_benders(int iteration) {
    Cut cut = blank_cut(CutFamily::SB, iteration);
    cut.core_snapshot.reset();
    CutEvent event = blank_event(CutFamily::SB, iteration);
    for (auto& ctx : children_) {
      ensure_lp(ctx);
      event.fractional_child = event.fractional_child || ctx.lp_fractional;
      const double eta = lagrangian_eta(ctx, ctx.lp_duals);
      cut.intercept += ctx.cond_prob * eta;
      for (std::size_t c = 0; c < cut.slope.size(); ++c)
        cut.slope[c] += ctx.cond_prob * ctx.lp_duals[c];
    }
    return {cut, event};
  }

  std::pair<Cut, CutEvent> integer_optimality(int iteration) {
    Cut cut = blank_cut(CutFamily::I, iteration);
    cut.core_snapshot.reset();
    CutEvent event = blank_event(CutFamily::I, iteration);
    double gamma_bar = 0.0;
    for (auto& ctx : children_) {
      ensure_mip(ctx);
      gamma_bar += ctx.cond_prob * ctx.mip_value;
    }
    const double floor_value = pools_[static_cast<std::size_t>(parent_stage_)].floor_value;
    double ones = 0.0;
    for (double v : y_hat_) ones += v;
    // binary-support cut: gamma_bar at y_hat, dropping to the floor one
    // Hamming step away
    cut.intercept = gamma_bar - (gamma_bar - floor_value) * ones;
    for (std::size_t c = 0; c < cut.slope.size(); ++c)
      cut.slope[c] = (gamma_bar - floor_value) * (2.0 * y_hat_[c] - 1.0);
    event.cut_at_core = gamma_bar;
    return {cut, event};
  }

  std::pair<Cut, CutEvent> lagrangian(int iteration) {
    Cut cut = blank_cut(CutFamily::L, iteration);
    cut.core_snapshot.reset();
    CutEvent event = blank_event(CutFamily::L, iteration);
    double expected_mip = 0.0;
    double cut_at_yhat = 0.0;
    for (auto& ctx : children_) {
      ensure_lp(ctx);
      ensure_mip(ctx);
      expected_mip += ctx.cond_prob * ctx.mip_value;
      LagrangianDualResult dual = solve_lagrangian_dual(ctx.at_yhat, ctx.lp_duals, ctx.mip_value,
                                                        backend_, config_.lagrangian, config_.mip);
      std::vector<double> multipliers;
      double value;
      if (dual.converged) {
        multipliers = dual.multipliers;
        value = dual.dual_value;
      } else {
        // fall back to the strengthened-Benders multipliers
        event.lagrangian_fallback = true;
        multipliers = ctx.lp_duals;
        value = evaluate_lagrangian(ctx.at_yhat, multipliers, backend_, config_.mip);
      }
      const double delta = value - dot(multipliers, y_hat_);
      cut.intercept += ctx.cond_prob * delta;
      for (std::size_t c = 0; c < cut.slope.size(); ++c)
        cut.slope[c] += ctx.cond_prob * multipliers[c];
      cut_at_yhat += ctx.cond_prob * value;
    }
    event.tightness_gap =
        std::fabs(cut_at_yhat - expected_mip) / std::max(1.0, std::fabs(expected_mip));
    return {cut, event};
  }

  std::pair<Cut, CutEvent> pareto(int iteration) {
    require_core();
    Cut cut = blank_cut(CutFamily::PT, iteration);
    CutEvent event = blank_event(CutFamily::PT, iteration);
    for (auto& ctx : children_) {
      ensure_mw(ctx);
      event.fractional_child = event.fractional_child || ctx.lp_fractional;
      cut.intercept += ctx.cond_prob * (ctx.mw->rho - dot(ctx.mw->alpha, *core_));
      for (std::size_t c = 0; c < cut.slope.size(); ++c)
        cut.slope[c] += ctx.cond_prob * ctx.mw->alpha[c];
      event.cut_at_core += ctx.cond_prob * ctx.mw->rho;
      // classical Benders cut priced at the core, for the Pareto comparison
      event.classical_at_core +=
          ctx.cond_prob * (ctx.lp_value + dot(ctx.lp_duals, *core_) - dot(ctx.lp_duals, y_hat_));
    }
    return {cut, event};
  }

  std::pair<Cut, CutEvent> independent_mw(int iteration) {
    require_core();
    Cut cut = blank_cut(CutFamily::IM, iteration);
    CutEvent event = blank_event(CutFamily::IM, iteration);
    for (auto& ctx : children_) {
      ensure_core_lp(ctx);
      event.fractional_child = event.fractional_child || ctx.core_lp_fractional;
      cut.intercept += ctx.cond_prob * (ctx.core_lp_value - dot(ctx.core_lp_duals, *core_));
      for (std::size_t c = 0; c < cut.slope.size(); ++c)
        cut.slope[c] += ctx.cond_prob * ctx.core_lp_duals[c];
      event.cut_at_core += ctx.cond_prob * ctx.core_lp_value;
    }
    return {cut, event};
  }

  std::pair<Cut, CutEvent> strengthened_pareto(int iteration) {
    require_core();
    Cut cut = blank_cut(CutFamily::SPT, iteration);
    CutEvent event = blank_event(CutFamily::SPT, iteration);
    double classical_at_core = 0.0;
    double strengthened_at_core = 0.0;
    for (auto& ctx : children_) {
      ensure_mw(ctx);
      event.fractional_child = event.fractional_child || ctx.lp_fractional;
      const double eta = lagrangian_eta(ctx, ctx.mw->alpha);
      cut.intercept += ctx.cond_prob * eta;
      for (std::size_t c = 0; c < cut.slope.size(); ++c)
        cut.slope[c] += ctx.cond_prob * ctx.mw->alpha[c];
      classical_at_core += ctx.cond_prob * ctx.mw->rho;
      strengthened_at_core += ctx.cond_prob * (eta + dot(ctx.mw->alpha, *core_));
    }
    event.classical_at_core = classical_at_core;
    event.cut_at_core = strengthened_at_core;
    event.dominance_margin = strengthened_at_core - classical_at_core;
    return {cut, event};
  }

  std::pair<Cut, CutEvent> strengthened_imw(int iteration) {
    require_core();
    Cut cut = blank_cut(CutFamily::SIM, iteration);
    CutEvent event = blank_event(CutFamily::SIM, iteration);
    double classical_at_core = 0.0;
    double strengthened_at_core = 0.0;
    for (auto& ctx : children_) {
      ensure_core_lp(ctx);
      event.fractional_child = event.fractional_child || ctx.core_lp_fractional;
      const double eta = lagrangian_eta(ctx, ctx.core_lp_duals);
      cut.intercept += ctx.cond_prob * eta;
      for (std::size_t c = 0; c < cut.slope.size(); ++c)
        cut.slope[c] += ctx.cond_prob * ctx.core_lp_duals[c];
      classical_at_core += ctx.cond_prob * ctx.core_lp_value;
      strengthened_at_core += ctx.cond_prob * (eta + dot(ctx.core_lp_duals, *core_));
    }
    event.classical_at_core = classical_at_core;
    event.cut_at_core = strengthened_at_core;
    event.dominance_margin = strengthened_at_core - classical_at_core;
    return {cut, event};
  }

  const Instance& instance_;
  const ScenarioTree& tree_;
  SolverBackend& backend_;
  const std::vector<CutPool>& pools_;
  int parent_stage_;
  std::vector<double> y_hat_;
  const std::vector<double>* core_;
  CutGenConfig config_;
  std::vector<ChildContext> children_;
};

}  // namespace

std::vector<std::pair<Cut, CutEvent>> generate_cuts_for_state(
    const Instance& instance, const ScenarioTree& tree, SolverBackend& backend,
    const std::vector<CutPool>& pools, int parent_stage, const std::vector<double>& y_hat,
    const std::vector<double>* core_point, const std::vector<CutFamily>& families,
    int iteration, const CutGenConfig& config) {
  StateCutGenerator generator(instance, tree, backend, pools, parent_stage, y_hat, core_point,
                              config);
  std::vector<std::pair<Cut, CutEvent>> out;
  for (CutFamily family : families) out.push_back(generator.generate(family, iteration));
  return out;
}

std::pair<Cut, CutEvent> generate_benders_cut(
    const Instance& instance, const ScenarioTree& tree, SolverBackend& backend,
    const std::vector<CutPool>& pools, int parent_stage, const std::vector<double>& y_hat,
    int iteration, const CutGenConfig& config) {
  return generate_cuts_for_state(instance, tree, backend, pools, parent_stage, y_hat, nullptr,
                                 {CutFamily::B}, iteration, config)[0];
}

std::pair<Cut, CutEvent> generate_strengthened_benders_cut(
    const Instance& instance, const ScenarioTree& tree, SolverBackend& backend,
    const std::vector<CutPool>& pools, int parent_stage, const std::vector<double>& y_hat,
    int iteration, const CutGenConfig& config) {
  return generate_cuts_for_state(instance, tree, backend, pools, parent_stage, y_hat, nullptr,
                                 {CutFamily::SB}, iteration, config)[0];
}

std::pair<Cut, CutEvent> generate_integer_optimality_cut(
    const Instance& instance, const ScenarioTree& tree, SolverBackend& backend,
    const std::vector<CutPool>& pools, int parent_stage, const std::vector<double>& y_hat,
    int iteration, const CutGenConfig& config) {
  return generate_cuts_for_state(instance, tree, backend, pools, parent_stage, y_hat, nullptr,
                                 {CutFamily::I}, iteration, config)[0];
}

std::pair<Cut, CutEvent> generate_lagrangian_cut(
    const Instance& instance, const ScenarioTree& tree, SolverBackend& backend,
    const std::vector<CutPool>& pools, int parent_stage, const std::vector<double>& y_hat,
    int iteration, const CutGenConfig& config) {
  return generate_cuts_for_state(instance, tree, backend, pools, parent_stage, y_hat, nullptr,
                                 {CutFamily::L}, iteration, config)[0];
}

std::pair<Cut, CutEvent> generate_pareto_optimal_cut(
    const Instance& instance, const ScenarioTree& tree, SolverBackend& backend,
    const std::vector<CutPool>& pools, int parent_stage, const std::vector<double>& y_hat,
    const std::vector<double>& core, int iteration, const CutGenConfig& config) {
  return generate_cuts_for_state(instance, tree, backend, pools, parent_stage, y_hat, &core,
                                 {CutFamily::PT}, iteration, config)[0];
}

std::pair<Cut, CutEvent> generate_independent_mw_cut(
    const Instance& instance, const ScenarioTree& tree, SolverBackend& backend,
    const std::vector<CutPool>& pools, int parent_stage, const std::vector<double>& core,
    int iteration, const CutGenConfig& config) {
  // the IM cut does not depend on the incumbent state; the core doubles as
  // the formal incoming state of the child model skeleton
  return generate_cuts_for_state(instance, tree, backend, pools, parent_stage, core, &core,
                                 {CutFamily::IM}, iteration, config)[0];
}

std::pair<Cut, CutEvent> generate_strengthened_pareto_cut(
    const Instance& instance, const ScenarioTree& tree, SolverBackend& backend,
    const std::vector<CutPool>& pools, int parent_stage, const std::vector<double>& y_hat,
    const std::vector<double>& core, int iteration, const CutGenConfig& config) {
  return generate_cuts_for_state(instance, tree, backend, pools, parent_stage, y_hat, &core,
                                 {CutFamily::SPT}, iteration, config)[0];
}

std::pair<Cut, CutEvent> generate_strengthened_imw_cut(
    const Instance& instance, const ScenarioTree& tree, SolverBackend& backend,
    const std::vector<CutPool>& pools, int parent_stage, const std::vector<double>& core,
    int iteration, const CutGenConfig& config) {
  return generate_cuts_for_state(instance, tree, backend, pools, parent_stage, core, &core,
                                 {CutFamily::SIM}, iteration, config)[0];
}

}  // namespace modcap
