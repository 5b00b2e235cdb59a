#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace modcap {

using Money = double;

// Internal facility index of the depot pseudo-facility (serialized as id 0).
inline constexpr int kDepot = -1;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Planar Euclidean distance in miles. Synthetic coordinates live in a flat
// box, so no great-circle handling is needed.
double distance_miles(const Point& a, const Point& b);

struct Network {
  std::vector<Point> locations;   // demand locations, external ids 1..nI
  std::vector<Point> facilities;  // facilities, external ids 1..nJ (depot is 0)
  double module_ship_limit = 250.0;  // L^M, miles
  double unit_move_limit = 750.0;    // L^P, miles
  // (location, facility) pairs within module_ship_limit
  std::vector<std::pair<int, int>> demand_pairs;
  // (from, to) with kDepot for the depot; depot pairs always present,
  // facility-facility pairs within unit_move_limit, no self pairs
  std::vector<std::pair<int, int>> move_pairs;

  int num_locations() const { return static_cast<int>(locations.size()); }
  int num_facilities() const { return static_cast<int>(facilities.size()); }
  bool has_move_pair(int from, int to) const;
};

struct CapacityStructure {
  int num_levels = 2;
  // modules_per_level[j][l]; l = 0 means closed (0 modules), strictly
  // increasing in l
  std::vector<std::vector<int>> modules_per_level;
  std::vector<int> initial_level;  // per facility, 0-based level index
  double nominal_rate = 60.0;      // modules produced per capacity module per period

  int max_modules(int j) const { return modules_per_level[j].back(); }
  int total_max_modules() const;
};

struct CostParameters {
  Money commissioning = 50000.0;       // C^C
  Money decommissioning = 25000.0;     // C^D
  Money expand_per_level = 12500.0;    // C^E
  Money reduce_per_level = 6250.0;     // C^R
  Money maintain_per_level = 22188.0;  // C^M
  Money unit_rent = 19104.0;           // C^P
  Money unit_return = 19104.0;         // C^S
  Money unit_move_per_hour = 60.0;     // C^U
  Money demand_ship_per_hour = 120.0;  // C^T
  Money outsource_per_module = 10000.0;  // C^O
  double travel_speed = 50.0;            // miles per hour
};

struct RevisionSchedule {
  std::vector<std::uint8_t> w;  // size T, w[0] must be 1

  int count() const;
  bool allows(int t) const { return w[static_cast<std::size_t>(t)] != 0; }
  static RevisionSchedule all_on(int horizon);
  // first `a` periods spread as given placements (1-based), rest off
  static RevisionSchedule from_periods(int horizon, const std::vector<int>& periods);
};

struct Instance {
  Network network;
  CapacityStructure capacity;
  CostParameters costs;
  int horizon = 1;
  RevisionSchedule revision;
  std::vector<double> base_demand;  // nominal modules per period, per location

  int num_levels() const { return capacity.num_levels; }
  // travel hours between two facilities (by internal index)
  double facility_hours(int j1, int j2) const;
  // travel hours between location i and facility j
  double demand_hours(int i, int j) const;
};

// c^F composition: open / close / expand / reduce / maintain, with the
// maintain component scaling linearly in the level's rank above closed.
Money compose_facility_transition_cost(const Instance& instance, int j, int l1, int l2);

// c^A composition: rent from depot / return to depot / hourly relocation.
Money compose_module_move_cost(const Instance& instance, int from, int to);

// Enumerates IJ within the module-shipping limit and JJ within the
// unit-relocation limit (plus the always-present depot pairs).
void build_feasible_pairs(const std::vector<Point>& locations,
                          const std::vector<Point>& facilities,
                          double module_ship_limit, double unit_move_limit,
                          std::vector<std::pair<int, int>>& demand_pairs,
                          std::vector<std::pair<int, int>>& move_pairs);

struct GeneratorConfig {
  int n_facilities = 3;
  int n_locations = 8;
  int horizon = 3;
  int levels = 2;  // 2 -> {0,6}, 3 -> {0,3,6}
  std::uint64_t seed = 1;
  double box_miles = 300.0;
  double demand_min = 5.0;
  double demand_max = 50.0;
  double nominal_rate = 60.0;
  double module_ship_limit = 250.0;
  double unit_move_limit = 750.0;
  // cost multipliers; `all` hits every cost field, the group scales compose
  // on top of it (the L/M/H = x0.5 / x1 / x2 scheme)
  double cost_scale_all = 1.0;
  double capacity_cost_scale = 1.0;
  double relocation_cost_scale = 1.0;
  double outsourcing_cost_scale = 1.0;
  double initially_open_fraction = 0.0;
  std::optional<std::vector<int>> revision_periods;  // default: every period

  static GeneratorConfig preset(const std::string& name);
};

Instance generate_synthetic_instance(const GeneratorConfig& config);

// Empty when all type invariants hold; otherwise human-readable violations.
std::vector<std::string> validate_instance(const Instance& instance);

std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& instance, const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace modcap
