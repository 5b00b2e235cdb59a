#include "modcap/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace modcap::lp {

namespace {

constexpr double kFeasTol = 1e-7;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-8;
constexpr int kRefactorEvery = 64;

enum VStat : std::int8_t { kAtLower = 0, kAtUpper = 1, kBasic = 2, kFreeZero = 3 };

struct Column {
  // sparse (row, coef) entries
  std::vector<std::pair<int, double>> entries;
  double obj = 0.0;
  double lb = 0.0;
  double ub = kInf;
};

class Simplex {
 public:
  Simplex(const ModelSpec& model,
          const std::vector<std::pair<double, double>>* bounds_override) {
    m_ = model.num_rows();
    n_ = model.num_vars();
    total_ = n_ + m_;
    cols_.resize(static_cast<std::size_t>(total_));
    rhs_.resize(static_cast<std::size_t>(m_));

    double cost_scale = 1.0;
    for (const auto& c : model.cols) cost_scale = std::max(cost_scale, std::fabs(c.obj));
    cost_scale_ = cost_scale;

    for (int j = 0; j < n_; ++j) {
      const auto& spec = model.cols[static_cast<std::size_t>(j)];
      Column& col = cols_[static_cast<std::size_t>(j)];
      col.obj = spec.obj / cost_scale_;
      if (bounds_override) {
        col.lb = (*bounds_override)[static_cast<std::size_t>(j)].first;
        col.ub = (*bounds_override)[static_cast<std::size_t>(j)].second;
      } else {
        col.lb = spec.lb;
        col.ub = spec.ub;
        if (spec.kind == VarKind::Binary) {
          col.lb = std::max(col.lb, 0.0);
          col.ub = std::min(col.ub, 1.0);
        }
      }
      if (col.lb > col.ub + kFeasTol) trivially_infeasible_ = true;
    }
    for (int r = 0; r < m_; ++r) {
      const auto& row = model.rows[static_cast<std::size_t>(r)];
      rhs_[static_cast<std::size_t>(r)] = row.rhs;
      for (const auto& [j, coef] : row.coefs) {
        if (j < 0 || j >= n_) throw std::logic_error("row references undeclared variable");
        add_entry(j, r, coef);
      }
      Column& slack = cols_[static_cast<std::size_t>(n_ + r)];
      slack.entries.emplace_back(r, 1.0);
      switch (row.sense) {
        case RowSense::LessEqual:
          slack.lb = 0.0;
          slack.ub = kInf;
          break;
        case RowSense::GreaterEqual:
          slack.lb = -kInf;
          slack.ub = 0.0;
          break;
        case RowSense::Equal:
          slack.lb = 0.0;
          slack.ub = 0.0;
          break;
      }
    }
    obj_constant_ = model.obj_constant;
    double rhs_norm = 0.0;
    for (double v : rhs_) rhs_norm = std::max(rhs_norm, std::fabs(v));
    ftol_ = kFeasTol * (1.0 + rhs_norm);
  }

  LpSolution run(const BasisState* hint) {
    LpSolution sol;
    if (trivially_infeasible_) {
      sol.status = SolveStatus::Infeasible;
      return sol;
    }
    if (m_ == 0) return solve_no_rows();

    if (!install_hint(hint)) install_slack_basis();
    if (!refactorize()) {
      install_slack_basis();
      if (!refactorize()) throw std::runtime_error("simplex: singular slack basis");
    }

    const long iter_limit = 2000L + 40L * static_cast<long>(m_ + n_);
    long iter = 0;
    int degenerate_streak = 0;
    bool bland = false;
    int since_refactor = 0;

    while (true) {
      if (++iter > iter_limit) {
        sol.status = SolveStatus::Limit;
        sol.iterations = static_cast<int>(iter);
        return sol;
      }

      const bool phase1 = total_infeasibility() > ftol_;
      Eigen::VectorXd y = pricing_duals(phase1);

      int entering = -1;
      int direction = 0;  // +1 increase, -1 decrease
      double best_score = bland ? 0.0 : kDualTol;
      for (int j = 0; j < total_; ++j) {
        if (vstat_[static_cast<std::size_t>(j)] == kBasic) continue;
        const double cost = phase1 ? 0.0 : cols_[static_cast<std::size_t>(j)].obj;
        double d = cost - dot_col(j, y);
        int dir = 0;
        const std::int8_t st = vstat_[static_cast<std::size_t>(j)];
        if (st == kAtLower && d < -kDualTol) dir = +1;
        else if (st == kAtUpper && d > kDualTol) dir = -1;
        else if (st == kFreeZero && std::fabs(d) > kDualTol) dir = d < 0 ? +1 : -1;
        if (dir == 0) continue;
        if (bland) {
          entering = j;
          direction = dir;
          break;
        }
        if (std::fabs(d) > best_score) {
          best_score = std::fabs(d);
          entering = j;
          direction = dir;
        }
      }

      if (entering < 0) {
        if (phase1) {
          sol.status = SolveStatus::Infeasible;
          sol.iterations = static_cast<int>(iter);
          return sol;
        }
        return extract_solution(iter);
      }

      Eigen::VectorXd alpha = ftran(entering);

      // ratio test: step until a basic hits its blocking bound or the
      // entering variable reaches its opposite bound
      const Column& ecol = cols_[static_cast<std::size_t>(entering)];
      double limit = kInf;  // entering's own range
      if (std::isfinite(ecol.lb) && std::isfinite(ecol.ub)) limit = ecol.ub - ecol.lb;
      double step = limit;
      int leaving = -1;       // row index of leaving basic
      double leaving_pivot = 0.0;
      std::int8_t leaving_state = kAtLower;

      for (int i = 0; i < m_; ++i) {
        const double a = alpha[i];
        if (std::fabs(a) <= kPivotTol) continue;
        const double rate = -direction * a;  // d beta_i / d step
        const int bj = basic_[static_cast<std::size_t>(i)];
        const Column& bcol = cols_[static_cast<std::size_t>(bj)];
        const double v = beta_[i];
        double ratio = kInf;
        std::int8_t hit_state = kAtLower;
        if (v < bcol.lb - ftol_) {
          // violated below: blocks only when climbing back to lb
          if (rate > 0) {
            ratio = (bcol.lb - v) / rate;
            hit_state = kAtLower;
          }
        } else if (v > bcol.ub + ftol_) {
          if (rate < 0) {
            ratio = (bcol.ub - v) / rate;
            hit_state = kAtUpper;
          }
        } else if (rate < 0 && std::isfinite(bcol.lb)) {
          ratio = (v - bcol.lb) / (-rate);
          hit_state = kAtLower;
        } else if (rate > 0 && std::isfinite(bcol.ub)) {
          ratio = (bcol.ub - v) / rate;
          hit_state = kAtUpper;
        }
        if (ratio < -1e-12) ratio = 0.0;
        if (ratio < step - 1e-12 ||
            (ratio < step + 1e-12 && leaving >= 0 &&
             (bland ? bj < basic_[static_cast<std::size_t>(leaving)]
                    : std::fabs(a) > std::fabs(leaving_pivot)))) {
          step = std::max(ratio, 0.0);
          leaving = i;
          leaving_pivot = a;
          leaving_state = hit_state;
        }
      }

      if (!std::isfinite(step)) {
        if (phase1) throw std::runtime_error("simplex: unbounded phase-1 step");
        sol.status = SolveStatus::Unbounded;
        sol.iterations = static_cast<int>(iter);
        return sol;
      }

      if (step <= 1e-10) {
        if (++degenerate_streak > 60) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }

      if (leaving < 0) {
        // bound flip: entering crosses to its other bound, basis unchanged
        for (int i = 0; i < m_; ++i) beta_[i] -= direction * step * alpha[i];
        vstat_[static_cast<std::size_t>(entering)] =
            direction > 0 ? kAtUpper : kAtLower;
        continue;
      }

      const int leaving_col = basic_[static_cast<std::size_t>(leaving)];
      for (int i = 0; i < m_; ++i) beta_[i] -= direction * step * alpha[i];
      beta_[leaving] = nonbasic_value(entering) + direction * step;
      basic_[static_cast<std::size_t>(leaving)] = entering;
      vstat_[static_cast<std::size_t>(entering)] = kBasic;
      vstat_[static_cast<std::size_t>(leaving_col)] = leaving_state;

      update_inverse(leaving, alpha);
      if (++since_refactor >= kRefactorEvery) {
        since_refactor = 0;
        if (!refactorize()) throw std::runtime_error("simplex: basis became singular");
      }
    }
  }

 private:
  void add_entry(int col, int row, double coef) {
    auto& entries = cols_[static_cast<std::size_t>(col)].entries;
    for (auto& [r, c] : entries) {
      if (r == row) {
        c += coef;
        return;
      }
    }
    entries.emplace_back(row, coef);
  }

  double nonbasic_value(int j) const {
    const Column& c = cols_[static_cast<std::size_t>(j)];
    switch (vstat_[static_cast<std::size_t>(j)]) {
      case kAtLower:
        return c.lb;
      case kAtUpper:
        return c.ub;
      default:
        return 0.0;
    }
  }

  std::int8_t default_state(int j) const {
    const Column& c = cols_[static_cast<std::size_t>(j)];
    if (std::isfinite(c.lb)) return kAtLower;
    if (std::isfinite(c.ub)) return kAtUpper;
    return kFreeZero;
  }

  void install_slack_basis() {
    basic_.resize(static_cast<std::size_t>(m_));
    vstat_.assign(static_cast<std::size_t>(total_), kAtLower);
    for (int j = 0; j < total_; ++j) vstat_[static_cast<std::size_t>(j)] = default_state(j);
    for (int r = 0; r < m_; ++r) {
      basic_[static_cast<std::size_t>(r)] = n_ + r;
      vstat_[static_cast<std::size_t>(n_ + r)] = kBasic;
    }
  }

  bool install_hint(const BasisState* hint) {
    if (!hint || hint->empty()) return false;
    if (static_cast<int>(hint->basic.size()) != m_ ||
        static_cast<int>(hint->vstat.size()) != total_)
      return false;
    std::vector<bool> seen(static_cast<std::size_t>(total_), false);
    for (auto j : hint->basic) {
      if (j < 0 || j >= total_ || seen[static_cast<std::size_t>(j)]) return false;
      seen[static_cast<std::size_t>(j)] = true;
    }
    basic_.assign(hint->basic.begin(), hint->basic.end());
    vstat_.assign(hint->vstat.begin(), hint->vstat.end());
    for (int j = 0; j < total_; ++j) {
      if (vstat_[static_cast<std::size_t>(j)] == kBasic) continue;
      // bounds may have changed since the hint was taken; snap to a real bound
      const Column& c = cols_[static_cast<std::size_t>(j)];
      std::int8_t st = vstat_[static_cast<std::size_t>(j)];
      if (st == kAtLower && !std::isfinite(c.lb)) st = default_state(j);
      if (st == kAtUpper && !std::isfinite(c.ub)) st = default_state(j);
      vstat_[static_cast<std::size_t>(j)] = st;
    }
    return true;
  }

  bool refactorize() {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i)
      for (const auto& [r, c] : cols_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])].entries)
        B(r, i) = c;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!lu.isInvertible()) return false;
    binv_ = lu.inverse();
    recompute_beta();
    return true;
  }

  void recompute_beta() {
    Eigen::VectorXd r(m_);
    for (int i = 0; i < m_; ++i) r[i] = rhs_[static_cast<std::size_t>(i)];
    for (int j = 0; j < total_; ++j) {
      if (vstat_[static_cast<std::size_t>(j)] == kBasic) continue;
      const double v = nonbasic_value(j);
      if (v == 0.0) continue;
      for (const auto& [row, coef] : cols_[static_cast<std::size_t>(j)].entries) r[row] -= coef * v;
    }
    beta_ = binv_ * r;
  }

  double total_infeasibility() {
    double total = 0.0;
    for (int i = 0; i < m_; ++i) {
      const Column& c = cols_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])];
      if (beta_[i] < c.lb) total += c.lb - beta_[i];
      else if (beta_[i] > c.ub) total += beta_[i] - c.ub;
    }
    return total;
  }

  Eigen::VectorXd pricing_duals(bool phase1) {
    Eigen::VectorXd cb(m_);
    for (int i = 0; i < m_; ++i) {
      const Column& c = cols_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])];
      if (phase1) {
        if (beta_[i] < c.lb - ftol_) cb[i] = -1.0;
        else if (beta_[i] > c.ub + ftol_) cb[i] = 1.0;
        else cb[i] = 0.0;
      } else {
        cb[i] = c.obj;
      }
    }
    return binv_.transpose() * cb;
  }

  double dot_col(int j, const Eigen::VectorXd& y) const {
    double v = 0.0;
    for (const auto& [row, coef] : cols_[static_cast<std::size_t>(j)].entries) v += y[row] * coef;
    return v;
  }

  Eigen::VectorXd ftran(int j) const {
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m_);
    for (const auto& [row, coef] : cols_[static_cast<std::size_t>(j)].entries)
      alpha += coef * binv_.col(row);
    return alpha;
  }

  void update_inverse(int pivot_row, const Eigen::VectorXd& alpha) {
    // Gauss-Jordan update of the explicit inverse
    const double pivot = alpha[pivot_row];
    Eigen::RowVectorXd prow = binv_.row(pivot_row) / pivot;
    for (int i = 0; i < m_; ++i) {
      if (i == pivot_row) continue;
      const double factor = alpha[i];
      if (factor != 0.0) binv_.row(i) -= factor * prow;
    }
    binv_.row(pivot_row) = prow;
  }

  LpSolution solve_no_rows() {
    LpSolution sol;
    sol.x.resize(static_cast<std::size_t>(n_));
    double obj = obj_constant_;
    for (int j = 0; j < n_; ++j) {
      const Column& c = cols_[static_cast<std::size_t>(j)];
      double v;
      if (c.obj > 0) v = c.lb;
      else if (c.obj < 0) v = c.ub;
      else v = std::isfinite(c.lb) ? c.lb : (std::isfinite(c.ub) ? c.ub : 0.0);
      if (!std::isfinite(v)) {
        sol.status = SolveStatus::Unbounded;
        return sol;
      }
      sol.x[static_cast<std::size_t>(j)] = v;
      obj += c.obj * cost_scale_ * v;
    }
    sol.status = SolveStatus::Optimal;
    sol.objective = obj;
    return sol;
  }

  LpSolution extract_solution(long iter) {
    LpSolution sol;
    sol.status = SolveStatus::Optimal;
    sol.iterations = static_cast<int>(iter);
    sol.x.assign(static_cast<std::size_t>(n_), 0.0);
    for (int j = 0; j < total_; ++j) {
      if (vstat_[static_cast<std::size_t>(j)] == kBasic) continue;
      if (j < n_) sol.x[static_cast<std::size_t>(j)] = nonbasic_value(j);
    }
    for (int i = 0; i < m_; ++i) {
      const int j = basic_[static_cast<std::size_t>(i)];
      if (j < n_) sol.x[static_cast<std::size_t>(j)] = beta_[i];
    }
    double obj = obj_constant_;
    for (int j = 0; j < n_; ++j)
      obj += cols_[static_cast<std::size_t>(j)].obj * cost_scale_ * sol.x[static_cast<std::size_t>(j)];
    sol.objective = obj;

    Eigen::VectorXd y = pricing_duals(false);
    sol.y.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) sol.y[static_cast<std::size_t>(i)] = y[i] * cost_scale_;

    sol.basis.basic.assign(basic_.begin(), basic_.end());
    sol.basis.vstat.assign(vstat_.begin(), vstat_.end());
    return sol;
  }

  int m_ = 0, n_ = 0, total_ = 0;
  double cost_scale_ = 1.0;
  double ftol_ = kFeasTol;
  double obj_constant_ = 0.0;
  bool trivially_infeasible_ = false;
  std::vector<Column> cols_;
  std::vector<double> rhs_;
  std::vector<int> basic_;
  std::vector<std::int8_t> vstat_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd beta_;
};

}  // namespace

LpSolution solve_lp(const ModelSpec& model,
                    const std::vector<std::pair<double, double>>* bounds_override,
                    const BasisState* hint) {
  Simplex simplex(model, bounds_override);
  return simplex.run(hint);
}

}  // namespace modcap::lp
