#include "modcap/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "modcap/random.hpp"
#include "json.hpp"

namespace modcap {

using nlohmann::json;

double distance_miles(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

bool Network::has_move_pair(int from, int to) const {
  return std::find(move_pairs.begin(), move_pairs.end(),
                   std::make_pair(from, to)) != move_pairs.end();
}

int CapacityStructure::total_max_modules() const {
  int total = 0;
  for (const auto& levels : modules_per_level) total += levels.back();
  return total;
}

int RevisionSchedule::count() const {
  int c = 0;
  for (auto f : w) c += (f != 0);
  return c;
}

RevisionSchedule RevisionSchedule::all_on(int horizon) {
  RevisionSchedule r;
  r.w.assign(static_cast<std::size_t>(horizon), 1);
  return r;
}

RevisionSchedule RevisionSchedule::from_periods(int horizon, const std::vector<int>& periods) {
  RevisionSchedule r;
  r.w.assign(static_cast<std::size_t>(horizon), 0);
  for (int p : periods) {
    if (p < 1 || p > horizon)
      throw std::domain_error("revision period " + std::to_string(p) + " outside horizon");
    r.w[static_cast<std::size_t>(p - 1)] = 1;
  }
  return r;
}

double Instance::facility_hours(int j1, int j2) const {
  return distance_miles(network.facilities[static_cast<std::size_t>(j1)],
                        network.facilities[static_cast<std::size_t>(j2)]) /
         costs.travel_speed;
}

double Instance::demand_hours(int i, int j) const {
  return distance_miles(network.locations[static_cast<std::size_t>(i)],
                        network.facilities[static_cast<std::size_t>(j)]) /
         costs.travel_speed;
}

Money compose_facility_transition_cost(const Instance& instance, int j, int l1, int l2) {
  const int nl = instance.capacity.num_levels;
  if (j < 0 || j >= instance.network.num_facilities())
    throw std::domain_error("compose_facility_transition_cost: bad facility index");
  if (l1 < 0 || l1 >= nl || l2 < 0 || l2 >= nl)
    throw std::domain_error("compose_facility_transition_cost: bad level index");
  const CostParameters& c = instance.costs;
  // rank == 0-based level index: level 0 is closed, maintain there is free
  const double maintain = c.maintain_per_level * l2;
  if (l2 > l1 && l1 == 0) return c.commissioning + maintain;          // open
  if (l1 > l2 && l2 == 0) return c.decommissioning;                   // close
  if (l2 > l1) return c.expand_per_level * (l2 - l1) + maintain;      // expand
  if (l1 > l2) return c.reduce_per_level * (l1 - l2) + maintain;      // reduce
  return maintain;                                                    // maintain
}

Money compose_module_move_cost(const Instance& instance, int from, int to) {
  if (!instance.network.has_move_pair(from, to))
    throw std::domain_error("compose_module_move_cost: pair not in JJ");
  const CostParameters& c = instance.costs;
  if (from == kDepot) return c.unit_rent;
  if (to == kDepot) return c.unit_return;
  return c.unit_move_per_hour * instance.facility_hours(from, to);
}

void build_feasible_pairs(const std::vector<Point>& locations,
                          const std::vector<Point>& facilities,
                          double module_ship_limit, double unit_move_limit,
                          std::vector<std::pair<int, int>>& demand_pairs,
                          std::vector<std::pair<int, int>>& move_pairs) {
  demand_pairs.clear();
  move_pairs.clear();
  const int ni = static_cast<int>(locations.size());
  const int nj = static_cast<int>(facilities.size());
  for (int i = 0; i < ni; ++i)
    for (int j = 0; j < nj; ++j)
      if (distance_miles(locations[static_cast<std::size_t>(i)],
                         facilities[static_cast<std::size_t>(j)]) <= module_ship_limit)
        demand_pairs.emplace_back(i, j);
  for (int j = 0; j < nj; ++j) {
    move_pairs.emplace_back(kDepot, j);
    move_pairs.emplace_back(j, kDepot);
  }
  for (int j1 = 0; j1 < nj; ++j1)
    for (int j2 = 0; j2 < nj; ++j2)
      if (j1 != j2 &&
          distance_miles(facilities[static_cast<std::size_t>(j1)],
                         facilities[static_cast<std::size_t>(j2)]) <= unit_move_limit)
        move_pairs.emplace_back(j1, j2);
}

GeneratorConfig GeneratorConfig::preset(const std::string& name) {
  GeneratorConfig cfg;
  if (name == "tiny") {
    cfg.n_facilities = 3;
    cfg.n_locations = 8;
    cfg.levels = 2;
    cfg.horizon = 3;
    cfg.box_miles = 300.0;
  } else if (name == "se") {
    cfg.n_facilities = 7;
    cfg.n_locations = 50;
    cfg.levels = 3;
    cfg.horizon = 6;
    cfg.box_miles = 600.0;
  } else if (name == "east") {
    cfg.n_facilities = 14;
    cfg.n_locations = 81;
    cfg.levels = 3;
    cfg.horizon = 6;
    cfg.box_miles = 900.0;
  } else if (name == "us") {
    cfg.n_facilities = 28;
    cfg.n_locations = 131;
    cfg.levels = 3;
    cfg.horizon = 6;
    cfg.box_miles = 1500.0;
  } else {
    throw std::domain_error("unknown instance preset: " + name);
  }
  return cfg;
}

Instance generate_synthetic_instance(const GeneratorConfig& config) {
  if (config.n_facilities < 1 || config.n_locations < 1)
    throw std::domain_error("generator: counts must be >= 1");
  if (config.horizon < 1) throw std::domain_error("generator: horizon must be >= 1");
  if (config.levels < 2) throw std::domain_error("generator: need at least 2 levels");

  Instance inst;
  Rng rng(derive_stream(config.seed, 0));

  inst.network.module_ship_limit = config.module_ship_limit;
  inst.network.unit_move_limit = config.unit_move_limit;
  for (int j = 0; j < config.n_facilities; ++j)
    inst.network.facilities.push_back(
        {rng.uniform(0.0, config.box_miles), rng.uniform(0.0, config.box_miles)});
  // demand locations are resampled until covered by at least one facility,
  // so generated instances never contain isolated demand
  for (int i = 0; i < config.n_locations; ++i) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      Point p{rng.uniform(0.0, config.box_miles), rng.uniform(0.0, config.box_miles)};
      bool covered = false;
      for (const auto& f : inst.network.facilities)
        if (distance_miles(p, f) <= config.module_ship_limit) {
          covered = true;
          break;
        }
      if (covered) {
        inst.network.locations.push_back(p);
        break;
      }
    }
    if (static_cast<int>(inst.network.locations.size()) != i + 1)
      throw std::runtime_error("generator: could not place a covered demand location");
  }
  build_feasible_pairs(inst.network.locations, inst.network.facilities,
                       config.module_ship_limit, config.unit_move_limit,
                       inst.network.demand_pairs, inst.network.move_pairs);

  inst.capacity.num_levels = config.levels;
  inst.capacity.nominal_rate = config.nominal_rate;
  for (int j = 0; j < config.n_facilities; ++j) {
    std::vector<int> u;
    if (config.levels == 2) {
      u = {0, 6};
    } else if (config.levels == 3) {
      u = {0, 3, 6};
    } else {
      u.push_back(0);
      for (int l = 1; l < config.levels; ++l) u.push_back(3 * l);
    }
    inst.capacity.modules_per_level.push_back(std::move(u));
    inst.capacity.initial_level.push_back(
        rng.uniform01() < config.initially_open_fraction ? 1 : 0);
  }

  const double cap = config.cost_scale_all * config.capacity_cost_scale;
  const double rel = config.cost_scale_all * config.relocation_cost_scale;
  const double out = config.cost_scale_all * config.outsourcing_cost_scale;
  CostParameters& c = inst.costs;
  c.commissioning *= cap;
  c.decommissioning *= cap;
  c.expand_per_level *= cap;
  c.reduce_per_level *= cap;
  c.maintain_per_level *= cap;
  c.unit_rent *= rel;
  c.unit_return *= rel;
  c.unit_move_per_hour *= rel;
  c.demand_ship_per_hour *= config.cost_scale_all;
  c.outsource_per_module *= out;

  inst.horizon = config.horizon;
  inst.revision = config.revision_periods
                      ? RevisionSchedule::from_periods(config.horizon, *config.revision_periods)
                      : RevisionSchedule::all_on(config.horizon);

  for (int i = 0; i < config.n_locations; ++i)
    inst.base_demand.push_back(rng.uniform(config.demand_min, config.demand_max));
  return inst;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> issues;
  auto flag = [&issues](const std::string& msg) { issues.push_back(msg); };

  const int ni = inst.network.num_locations();
  const int nj = inst.network.num_facilities();
  const int nl = inst.capacity.num_levels;

  if (inst.horizon < 1) flag("horizon must be >= 1");
  if (nj < 1) flag("network has no facilities");

  for (const auto& [i, j] : inst.network.demand_pairs) {
    if (i < 0 || i >= ni || j < 0 || j >= nj) {
      flag("demand pair references unknown location or facility");
      continue;
    }
    if (distance_miles(inst.network.locations[static_cast<std::size_t>(i)],
                       inst.network.facilities[static_cast<std::size_t>(j)]) >
        inst.network.module_ship_limit)
      flag("demand pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
           ") exceeds module_ship_limit");
  }
  std::set<std::pair<int, int>> moves(inst.network.move_pairs.begin(),
                                      inst.network.move_pairs.end());
  for (int j = 0; j < nj; ++j) {
    if (!moves.count({kDepot, j}))
      flag("missing depot rental pair for facility " + std::to_string(j + 1));
    if (!moves.count({j, kDepot}))
      flag("missing depot return pair for facility " + std::to_string(j + 1));
  }
  for (const auto& [a, b] : moves) {
    if (a == b) flag("self move pair on facility " + std::to_string(a + 1));
    if (a != kDepot && b != kDepot &&
        distance_miles(inst.network.facilities[static_cast<std::size_t>(a)],
                       inst.network.facilities[static_cast<std::size_t>(b)]) >
            inst.network.unit_move_limit)
      flag("move pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
           ") exceeds unit_move_limit");
  }
  for (int i = 0; i < ni; ++i) {
    bool covered = false;
    for (const auto& [pi, pj] : inst.network.demand_pairs)
      if (pi == i) covered = true;
    if (!covered) flag("demand location " + std::to_string(i + 1) +
                       " has no feasible facility (isolated)");
  }

  if (static_cast<int>(inst.capacity.modules_per_level.size()) != nj)
    flag("modules_per_level size does not match facility count");
  if (static_cast<int>(inst.capacity.initial_level.size()) != nj)
    flag("initial_level size does not match facility count");
  for (int j = 0; j < nj && j < static_cast<int>(inst.capacity.modules_per_level.size()); ++j) {
    const auto& u = inst.capacity.modules_per_level[static_cast<std::size_t>(j)];
    if (static_cast<int>(u.size()) != nl) {
      flag("facility " + std::to_string(j + 1) + " has wrong number of capacity levels");
      continue;
    }
    if (u[0] != 0) flag("facility " + std::to_string(j + 1) + " level 1 must have 0 modules");
    for (int l = 1; l < nl; ++l)
      if (u[static_cast<std::size_t>(l)] <= u[static_cast<std::size_t>(l - 1)])
        flag("facility " + std::to_string(j + 1) + " modules_per_level not strictly increasing");
    if (j < static_cast<int>(inst.capacity.initial_level.size())) {
      int v = inst.capacity.initial_level[static_cast<std::size_t>(j)];
      if (v < 0 || v >= nl)
        flag("facility " + std::to_string(j + 1) + " initial_level out of range");
    }
  }
  if (inst.capacity.nominal_rate <= 0) flag("nominal_rate must be positive");

  const CostParameters& c = inst.costs;
  for (auto [value, name] : std::initializer_list<std::pair<double, const char*>>{
           {c.commissioning, "commissioning"},
           {c.decommissioning, "decommissioning"},
           {c.expand_per_level, "expand_per_level"},
           {c.reduce_per_level, "reduce_per_level"},
           {c.maintain_per_level, "maintain_per_level"},
           {c.unit_rent, "unit_rent"},
           {c.unit_return, "unit_return"},
           {c.unit_move_per_hour, "unit_move_per_hour"},
           {c.demand_ship_per_hour, "demand_ship_per_hour"},
           {c.outsource_per_module, "outsource_per_module"}}) {
    if (value < 0) flag(std::string("cost ") + name + " must be >= 0");
  }
  if (c.travel_speed <= 0) flag("travel_speed must be positive");

  if (static_cast<int>(inst.revision.w.size()) != inst.horizon)
    flag("revision schedule length does not match horizon");
  else if (inst.revision.w[0] == 0)
    flag("first stage must allow revision (w[1] = 1)");

  if (static_cast<int>(inst.base_demand.size()) != ni)
    flag("base_demand size does not match location count");
  for (double d : inst.base_demand)
    if (d < 0 || !std::isfinite(d)) flag("base_demand entries must be finite and >= 0");

  return issues;
}

namespace {

json point_to_json(const Point& p, int id) {
  return json{{"id", id}, {"x", p.x}, {"y", p.y}};
}

int external_facility_id(int j) { return j == kDepot ? 0 : j + 1; }
int internal_facility_id(int id) { return id == 0 ? kDepot : id - 1; }

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json doc;
  doc["schema_version"] = 1;

  json locs = json::array();
  for (int i = 0; i < inst.network.num_locations(); ++i) {
    json p = point_to_json(inst.network.locations[static_cast<std::size_t>(i)], i + 1);
    p["base_demand"] = inst.base_demand[static_cast<std::size_t>(i)];
    locs.push_back(p);
  }
  json facs = json::array();
  for (int j = 0; j < inst.network.num_facilities(); ++j)
    facs.push_back(point_to_json(inst.network.facilities[static_cast<std::size_t>(j)], j + 1));

  json ij = json::array();
  for (const auto& [i, j] : inst.network.demand_pairs)
    ij.push_back(json::array({i + 1, j + 1}));
  json jj = json::array();
  for (const auto& [a, b] : inst.network.move_pairs)
    jj.push_back(json::array({external_facility_id(a), external_facility_id(b)}));

  doc["network"] = {{"demand_locations", locs},
                    {"facilities", facs},
                    {"depot", 0},
                    {"module_ship_limit", inst.network.module_ship_limit},
                    {"unit_move_limit", inst.network.unit_move_limit},
                    {"feasible_demand_pairs", ij},
                    {"feasible_move_pairs", jj}};

  json levels = json::array();
  for (int l = 1; l <= inst.capacity.num_levels; ++l) levels.push_back(l);
  doc["capacity"] = {{"levels", levels},
                     {"modules_per_level", inst.capacity.modules_per_level},
                     {"initial_level", json::array()},
                     {"nominal_rate", inst.capacity.nominal_rate}};
  for (int v : inst.capacity.initial_level) doc["capacity"]["initial_level"].push_back(v + 1);

  const CostParameters& c = inst.costs;
  doc["costs"] = {{"commissioning", c.commissioning},
                  {"decommissioning", c.decommissioning},
                  {"expand_per_level", c.expand_per_level},
                  {"reduce_per_level", c.reduce_per_level},
                  {"maintain_per_level", c.maintain_per_level},
                  {"unit_rent", c.unit_rent},
                  {"unit_return", c.unit_return},
                  {"unit_move_per_hour", c.unit_move_per_hour},
                  {"demand_ship_per_hour", c.demand_ship_per_hour},
                  {"outsource_per_module", c.outsource_per_module},
                  {"travel_speed", c.travel_speed}};

  doc["horizon"] = inst.horizon;
  doc["revision"] = {{"w", json::array()}};
  for (auto f : inst.revision.w) doc["revision"]["w"].push_back(static_cast<int>(f));

  return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  json doc = json::parse(text);
  if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != 1)
    throw std::domain_error("instance JSON: unsupported schema_version");

  Instance inst;
  const json& net = doc.at("network");
  for (const auto& p : net.at("demand_locations")) {
    inst.network.locations.push_back({p.at("x").get<double>(), p.at("y").get<double>()});
    inst.base_demand.push_back(p.at("base_demand").get<double>());
  }
  for (const auto& p : net.at("facilities"))
    inst.network.facilities.push_back({p.at("x").get<double>(), p.at("y").get<double>()});
  inst.network.module_ship_limit = net.at("module_ship_limit").get<double>();
  inst.network.unit_move_limit = net.at("unit_move_limit").get<double>();
  for (const auto& pr : net.at("feasible_demand_pairs"))
    inst.network.demand_pairs.emplace_back(pr.at(0).get<int>() - 1, pr.at(1).get<int>() - 1);
  for (const auto& pr : net.at("feasible_move_pairs"))
    inst.network.move_pairs.emplace_back(internal_facility_id(pr.at(0).get<int>()),
                                         internal_facility_id(pr.at(1).get<int>()));

  const json& cap = doc.at("capacity");
  inst.capacity.num_levels = static_cast<int>(cap.at("levels").size());
  inst.capacity.modules_per_level = cap.at("modules_per_level").get<std::vector<std::vector<int>>>();
  for (const auto& v : cap.at("initial_level")) inst.capacity.initial_level.push_back(v.get<int>() - 1);
  inst.capacity.nominal_rate = cap.at("nominal_rate").get<double>();

  const json& costs = doc.at("costs");
  CostParameters& c = inst.costs;
  c.commissioning = costs.at("commissioning").get<double>();
  c.decommissioning = costs.at("decommissioning").get<double>();
  c.expand_per_level = costs.at("expand_per_level").get<double>();
  c.reduce_per_level = costs.at("reduce_per_level").get<double>();
  c.maintain_per_level = costs.at("maintain_per_level").get<double>();
  c.unit_rent = costs.at("unit_rent").get<double>();
  c.unit_return = costs.at("unit_return").get<double>();
  c.unit_move_per_hour = costs.at("unit_move_per_hour").get<double>();
  c.demand_ship_per_hour = costs.at("demand_ship_per_hour").get<double>();
  c.outsource_per_module = costs.at("outsource_per_module").get<double>();
  c.travel_speed = costs.at("travel_speed").get<double>();

  inst.horizon = doc.at("horizon").get<int>();
  for (const auto& f : doc.at("revision").at("w"))
    inst.revision.w.push_back(static_cast<std::uint8_t>(f.get<int>()));

  return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(inst);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

}  // namespace modcap
