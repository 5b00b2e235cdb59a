#pragma once

#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace modcap {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Integer, Binary };
enum class RowSense { LessEqual, GreaterEqual, Equal };
enum class SolveStatus { Optimal, Infeasible, Unbounded, Limit };

struct VarId {
  int index = -1;
  bool valid() const { return index >= 0; }
};

struct LinearExpr {
  std::vector<std::pair<int, double>> terms;  // (column, coefficient)

  LinearExpr& add(VarId v, double coef) {
    if (coef != 0.0) terms.emplace_back(v.index, coef);
    return *this;
  }
};

// Minimization model over linear constraints. Variables referenced by rows
// must be declared first; duplicate (row, column) coefficients are summed by
// the backend.
class ModelSpec {
 public:
  struct Col {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lb = 0.0;
    double ub = kInf;
    double obj = 0.0;
  };
  struct Row {
    std::string tag;
    std::vector<std::pair<int, double>> coefs;
    RowSense sense = RowSense::Equal;
    double rhs = 0.0;
  };

  VarId add_var(std::string name, VarKind kind, double lb, double ub, double obj);
  int add_row(std::string tag, LinearExpr expr, RowSense sense, double rhs);

  void set_bounds(VarId v, double lb, double ub);
  void set_obj(VarId v, double obj);
  void set_rhs(int row, double rhs);

  int num_vars() const { return static_cast<int>(cols.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  bool has_integers() const;

  // LP-format-like text for --dump-model
  std::string dump() const;

  std::vector<Col> cols;
  std::vector<Row> rows;
  double obj_constant = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Limit;
  double objective = 0.0;
  std::vector<double> x;
  // row duals, present only for LP solves; sign convention: objective
  // increase per unit RHS increase
  std::vector<double> duals;
  bool has_duals = false;
  double mip_gap = 0.0;

  double value(VarId v) const { return x[static_cast<std::size_t>(v.index)]; }
  double dual(int row) const { return duals[static_cast<std::size_t>(row)]; }
};

struct MipOptions {
  double rel_gap = 1e-6;
  double abs_gap = 1e-9;
  long node_limit = 2000000;
  // optional primal solution to seed the incumbent bound
  const std::vector<double>* warm_solution = nullptr;
};

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  // Solves the continuous relaxation and reports row duals.
  virtual SolveResult solve_lp(const ModelSpec& model) = 0;
  virtual SolveResult solve_mip(const ModelSpec& model, const MipOptions& options) = 0;
  SolveResult solve_mip(const ModelSpec& model) { return solve_mip(model, MipOptions{}); }
  virtual std::string name() const = 0;
};

struct BackendUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::unique_ptr<SolverBackend> make_internal_backend();
// Resolves a backend by name ("internal"); unknown names throw
// BackendUnavailable with remediation text.
std::unique_ptr<SolverBackend> make_backend(const std::string& name);

}  // namespace modcap
