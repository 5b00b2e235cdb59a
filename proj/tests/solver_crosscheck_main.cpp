// Reads a JSON-encoded LP/MIP from stdin, solves it with the internal
// backend, writes a JSON result to stdout. Used by the python cross-check
// tests to compare against an independent solver.

#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "modcap/model.hpp"

using nlohmann::json;

int main() {
  std::stringstream buffer;
  buffer << std::cin.rdbuf();
  json doc = json::parse(buffer.str());

  modcap::ModelSpec model;
  for (const auto& c : doc.at("cols")) {
    const std::string kind = c.value("kind", "c");
    modcap::VarKind vk = modcap::VarKind::Continuous;
    if (kind == "i") vk = modcap::VarKind::Integer;
    else if (kind == "b") vk = modcap::VarKind::Binary;
    double lb = c.at("lb").is_null() ? -modcap::kInf : c.at("lb").get<double>();
    double ub = c.at("ub").is_null() ? modcap::kInf : c.at("ub").get<double>();
    model.add_var("x" + std::to_string(model.num_vars()), vk, lb, ub, c.at("obj").get<double>());
  }
  for (const auto& r : doc.at("rows")) {
    modcap::LinearExpr expr;
    for (const auto& term : r.at("coefs"))
      expr.add(modcap::VarId{term.at(0).get<int>()}, term.at(1).get<double>());
    const std::string sense = r.at("sense").get<std::string>();
    modcap::RowSense rs = sense == "<=" ? modcap::RowSense::LessEqual
                        : sense == ">=" ? modcap::RowSense::GreaterEqual
                                        : modcap::RowSense::Equal;
    model.add_row("r", std::move(expr), rs, r.at("rhs").get<double>());
  }

  auto backend = modcap::make_internal_backend();
  const std::string mode = doc.value("mode", "lp");
  modcap::SolveResult result;
  if (mode == "mip") {
    modcap::MipOptions options;
    options.rel_gap = 1e-9;
    options.abs_gap = 1e-9;
    result = backend->solve_mip(model, options);
  } else {
    result = backend->solve_lp(model);
  }

  json out;
  switch (result.status) {
    case modcap::SolveStatus::Optimal: out["status"] = "optimal"; break;
    case modcap::SolveStatus::Infeasible: out["status"] = "infeasible"; break;
    case modcap::SolveStatus::Unbounded: out["status"] = "unbounded"; break;
    case modcap::SolveStatus::Limit: out["status"] = "limit"; break;
  }
  out["objective"] = result.objective;
  out["x"] = result.x;
  if (result.has_duals) out["duals"] = result.duals;
  std::cout << out.dump() << std::endl;
  return 0;
}
