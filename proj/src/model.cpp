#include "modcap/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace modcap {

VarId ModelSpec::add_var(std::string name, VarKind kind, double lb, double ub, double obj) {
  if (lb > ub) throw std::logic_error("add_var: lb > ub for " + name);
  cols.push_back(Col{std::move(name), kind, lb, ub, obj});
  return VarId{static_cast<int>(cols.size()) - 1};
}

int ModelSpec::add_row(std::string tag, LinearExpr expr, RowSense sense, double rhs) {
  for (const auto& [j, coef] : expr.terms) {
    (void)coef;
    if (j < 0 || j >= num_vars())
      throw std::logic_error("add_row: undeclared variable in row " + tag);
  }
  rows.push_back(Row{std::move(tag), std::move(expr.terms), sense, rhs});
  return static_cast<int>(rows.size()) - 1;
}

void ModelSpec::set_bounds(VarId v, double lb, double ub) {
  auto& c = cols[static_cast<std::size_t>(v.index)];
  c.lb = lb;
  c.ub = ub;
}

void ModelSpec::set_obj(VarId v, double obj) { cols[static_cast<std::size_t>(v.index)].obj = obj; }

void ModelSpec::set_rhs(int row, double rhs) { rows[static_cast<std::size_t>(row)].rhs = rhs; }

bool ModelSpec::has_integers() const {
  for (const auto& c : cols)
    if (c.kind != VarKind::Continuous) return true;
  return false;
}

std::string ModelSpec::dump() const {
  std::ostringstream out;
  out << "minimize\n ";
  bool first = true;
  for (const auto& c : cols) {
    if (c.obj == 0.0) continue;
    if (!first && c.obj >= 0) out << " + ";
    if (c.obj < 0) out << " - ";
    out << std::fabs(c.obj) << " " << c.name;
    first = false;
  }
  if (obj_constant != 0.0) out << " + " << obj_constant;
  out << "\nsubject to\n";
  for (const auto& r : rows) {
    out << " " << r.tag << ": ";
    bool f = true;
    for (const auto& [j, coef] : r.coefs) {
      if (!f && coef >= 0) out << " + ";
      if (coef < 0) out << " - ";
      out << std::fabs(coef) << " " << cols[static_cast<std::size_t>(j)].name;
      f = false;
    }
    switch (r.sense) {
      case RowSense::LessEqual: out << " <= "; break;
      case RowSense::GreaterEqual: out << " >= "; break;
      case RowSense::Equal: out << " = "; break;
    }
    out << r.rhs << "\n";
  }
  out << "bounds\n";
  for (const auto& c : cols) {
    out << " " << c.lb << " <= " << c.name << " <= " << c.ub;
    if (c.kind == VarKind::Binary) out << " binary";
    else if (c.kind == VarKind::Integer) out << " integer";
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

}  // namespace modcap
