#include "modcap/sddip.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "modcap/stage_model.hpp"

namespace modcap {

namespace {

std::string to_bits(const std::vector<double>& state) {
  std::string bits;
  bits.reserve(state.size());
  for (double v : state) bits.push_back(v > 0.5 ? '1' : '0');
  return bits;
}

// runs fn(i) for i in [0, n) across `workers` threads on contiguous chunks;
// each call writes only to its own slot, so results are independent of the
// worker count
template <typename Fn>
void run_partitioned(int n, int workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
  const auto parts = partition_nodes(ids, workers);
  std::vector<std::thread> threads;
  for (const auto& part : parts) {
    if (part.empty()) continue;
    threads.emplace_back([&fn, part]() {
      for (int i : part) fn(i);
    });
  }
  for (auto& t : threads) t.join();  // stage barrier
}

}  // namespace

SddipConfig SddipConfig::preset(const std::string& name) {
  SddipConfig config;
  config.families.clear();
  std::string token;
  for (char ch : name + "+") {
    if (ch == '+' || ch == '-' || ch == ' ') {
      if (!token.empty()) {
        std::string upper;
        for (char c : token) upper.push_back(static_cast<char>(std::toupper(c)));
        auto family = cut_family_from_code(upper);
        if (!family) throw std::domain_error("unknown cut family in preset: " + token);
        config.families.push_back(*family);
        token.clear();
      }
    } else {
      token.push_back(ch);
    }
  }
  if (config.families.empty()) throw std::domain_error("empty cut preset: " + name);
  return config;
}

const char* stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::Converged: return "converged";
    case StopReason::Stalled: return "stalled";
    case StopReason::IterationLimit: return "iteration_limit";
    case StopReason::TimeLimit: return "time_limit";
  }
  return "?";
}

AlternationAction alternation_decide(AlternationMemory& memory, const StateKey& key) {
  if (memory.accepts >= memory.clear_threshold) {
    memory.v_lp.clear();
    memory.v.clear();
    memory.accepts = 0;
  }
  if (!memory.v_lp.count(key)) {
    memory.v_lp.insert(key);
    return AlternationAction::LpCut;
  }
  if (!memory.v.count(key)) {
    memory.v.insert(key);
    return AlternationAction::IntCut;
  }
  ++memory.accepts;
  return AlternationAction::Accept;
}

const std::vector<double>& CorePointStore::update(int stage, int block,
                                                  const std::vector<double>& state) {
  auto [it, inserted] = points_.try_emplace({stage, block}, state);
  if (!inserted) {
    auto& core = it->second;
    for (std::size_t c = 0; c < core.size(); ++c) core[c] = 0.5 * core[c] + 0.5 * state[c];
  }
  return it->second;
}

const std::vector<double>* CorePointStore::find(int stage, int block) const {
  auto it = points_.find({stage, block});
  return it == points_.end() ? nullptr : &it->second;
}

std::vector<std::vector<int>> partition_nodes(const std::vector<int>& nodes, int workers) {
  if (workers < 1) throw std::domain_error("partition_nodes: need at least one worker");
  const int n = static_cast<int>(nodes.size());
  const int base = workers > 0 ? n / workers : 0;
  const int remainder = n % workers;
  std::vector<std::vector<int>> parts(static_cast<std::size_t>(workers));
  int cursor = 0;
  for (int w = 0; w < workers; ++w) {
    const int size = base + (w < remainder ? 1 : 0);
    for (int i = 0; i < size; ++i) parts[static_cast<std::size_t>(w)].push_back(nodes[static_cast<std::size_t>(cursor++)]);
  }
  return parts;
}

SddipSolver::SddipSolver(const Instance& instance, const ScenarioTree& tree, SddipConfig config,
                         SolverBackend& backend)
    : instance_(instance),
      tree_(tree),
      config_(std::move(config)),
      backend_(backend),
      pools_(static_cast<std::size_t>(tree.horizon) + 1),
      path_rng_(derive_stream(config.seed, 2)),
      initial_state_(initial_state_indicator(instance)) {
  memory_.clear_threshold = config_.clear_threshold;
  for (CutFamily family : config_.families)
    (is_integer_family(family) ? int_families_ : lp_families_).push_back(family);
  // alternation needs something to emit on both branches
  if (lp_families_.empty()) lp_families_ = int_families_;
  if (int_families_.empty()) int_families_ = lp_families_;
}

SddipSolver::StageSolveOutput SddipSolver::solve_stage(int stage, int block,
                                                       const std::vector<double>& incoming) const {
  const auto& blk = tree_.blocks[static_cast<std::size_t>(stage - 1)][static_cast<std::size_t>(block)];
  const CutPool* pool = stage < tree_.horizon ? &pools_[static_cast<std::size_t>(stage)] : nullptr;
  StageModel sm = build_stage_model(instance_, stage, tree_.horizon, blk, incoming, pool);
  SolveResult sol = backend_.solve_mip(sm.model, config_.cut_config.mip);
  if (sol.status != SolveStatus::Optimal)
    throw std::runtime_error("forward subproblem not optimal (complete recourse violated?)");
  StageSolveOutput out;
  out.state = sm.state_of(sol);
  out.theta_hat = sm.has_theta() ? sol.value(sm.theta) : 0.0;
  out.stage_cost = sol.objective - out.theta_hat;
  return out;
}

ForwardPassResult SddipSolver::forward_pass(int iteration) {
  (void)iteration;
  const int horizon = tree_.horizon;
  const int paths = config_.sample_paths;
  const auto sampled = sample_forward_paths(tree_, paths, path_rng_);

  ForwardPassResult result;
  result.trajectories.assign(static_cast<std::size_t>(paths), Trajectory(static_cast<std::size_t>(horizon)));

  std::vector<std::vector<double>> incoming(static_cast<std::size_t>(paths), initial_state_);
  for (int t = 1; t <= horizon; ++t) {
    // distinct (block, incoming state) jobs in path order
    std::vector<std::pair<int, std::vector<double>>> jobs;
    std::vector<int> job_of_path(static_cast<std::size_t>(paths), -1);
    std::map<std::pair<int, std::string>, int> index;
    for (int m = 0; m < paths; ++m) {
      const int node_id = sampled[static_cast<std::size_t>(m)][static_cast<std::size_t>(t - 1)];
      const int block = tree_.node(node_id).block;
      auto key = std::make_pair(block, to_bits(incoming[static_cast<std::size_t>(m)]));
      auto it = index.find(key);
      if (it == index.end()) {
        index.emplace(key, static_cast<int>(jobs.size()));
        job_of_path[static_cast<std::size_t>(m)] = static_cast<int>(jobs.size());
        jobs.emplace_back(block, incoming[static_cast<std::size_t>(m)]);
      } else {
        job_of_path[static_cast<std::size_t>(m)] = it->second;
      }
    }

    std::vector<StageSolveOutput> outputs(jobs.size());
    run_partitioned(static_cast<int>(jobs.size()), config_.workers, [&](int j) {
      outputs[static_cast<std::size_t>(j)] =
          solve_stage(t, jobs[static_cast<std::size_t>(j)].first, jobs[static_cast<std::size_t>(j)].second);
    });

    for (int m = 0; m < paths; ++m) {
      const int node_id = sampled[static_cast<std::size_t>(m)][static_cast<std::size_t>(t - 1)];
      const auto& out = outputs[static_cast<std::size_t>(job_of_path[static_cast<std::size_t>(m)])];
      auto& record = result.trajectories[static_cast<std::size_t>(m)][static_cast<std::size_t>(t - 1)];
      record.node_id = node_id;
      record.block = tree_.node(node_id).block;
      record.state = out.state;
      record.stage_cost = out.stage_cost;
      record.theta_hat = out.theta_hat;
      incoming[static_cast<std::size_t>(m)] = out.state;
      // core points track incumbents per (stage, block), in path order
      core_points_.update(t, record.block, record.state);
    }
  }

  std::vector<double> costs;
  for (const auto& trajectory : result.trajectories) {
    double total = 0.0;
    for (const auto& record : trajectory) total += record.stage_cost;
    costs.push_back(total);
  }
  double mean = 0.0;
  for (double c : costs) mean += c;
  mean /= static_cast<double>(costs.size());
  double variance = 0.0;
  for (double c : costs) variance += (c - mean) * (c - mean);
  const double sd = costs.size() > 1
                        ? std::sqrt(variance / (static_cast<double>(costs.size()) - 1.0))
                        : 0.0;
  const double z = normal_quantile(1.0 - config_.confidence_alpha / 2.0);
  result.mean_cost = mean;
  result.sample_sd = sd;
  result.upper_bound = mean + z * sd / std::sqrt(static_cast<double>(costs.size()));
  return result;
}

double SddipSolver::backward_pass(int iteration, const std::vector<Trajectory>& trajectories) {
  const int horizon = tree_.horizon;
  for (int t = horizon; t >= 2; --t) {
    struct StateJob {
      StateKey key;
      int block = 0;
      std::vector<double> y_hat;
      std::vector<CutFamily> families;
    };
    std::vector<StateJob> jobs;
    std::map<StateKey, int> seen;
    for (const auto& trajectory : trajectories) {
      const auto& record = trajectory[static_cast<std::size_t>(t - 2)];  // stage t-1
      StateKey key{t - 1, record.node_id, to_bits(record.state)};
      if (seen.count(key)) continue;
      seen.emplace(key, static_cast<int>(jobs.size()));
      StateJob job;
      job.key = key;
      job.block = record.block;
      job.y_hat = record.state;
      if (config_.alternation) {
        switch (alternation_decide(memory_, key)) {
          case AlternationAction::LpCut: job.families = lp_families_; break;
          case AlternationAction::IntCut: job.families = int_families_; break;
          case AlternationAction::Accept: break;  // no cut
        }
      } else {
        job.families = config_.families;
      }
      jobs.push_back(std::move(job));
    }

    std::vector<std::vector<std::pair<Cut, CutEvent>>> produced(jobs.size());
    run_partitioned(static_cast<int>(jobs.size()), config_.workers, [&](int j) {
      const StateJob& job = jobs[static_cast<std::size_t>(j)];
      if (job.families.empty()) return;
      const std::vector<double>* core = core_points_.find(t - 1, job.block);
      produced[static_cast<std::size_t>(j)] =
          generate_cuts_for_state(instance_, tree_, backend_, pools_, t - 1, job.y_hat, core,
                                  job.families, iteration, config_.cut_config);
    });

    // pool mutation happens only here, between stage barriers, in job order
    for (auto& bundle : produced)
      for (auto& [cut, event] : bundle) {
        pools_[static_cast<std::size_t>(t - 1)].cuts.push_back(std::move(cut));
        ++census_[cut_family_code(event.family)];
        events_.push_back(event);
      }
  }

  StageSolveOutput root = solve_stage(1, 0, initial_state_);
  return root.stage_cost + root.theta_hat;
}

SddipResult SddipSolver::run() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  SddipResult result;
  double lower_bound = -kInf;
  double previous_lower = -kInf;
  int stall_count = 0;
  StopReason reason = StopReason::IterationLimit;

  int k = 0;
  while (k < config_.max_iterations) {
    ++k;
    const auto iter_start = clock::now();
    const auto census_before = census_;

    ForwardPassResult forward = forward_pass(k);
    lower_bound = backward_pass(k, forward.trajectories);

    const double ub = forward.upper_bound;
    const double gap = std::fabs(ub) > 1e-12 ? (ub - lower_bound) / std::fabs(ub) : 0.0;

    IterationRecord record;
    record.iteration = k;
    record.lower_bound = lower_bound;
    record.upper_bound = ub;
    record.gap = gap;
    record.wall_ms =
        std::chrono::duration<double, std::milli>(clock::now() - iter_start).count();
    for (const auto& [family, count] : census_) {
      int before = 0;
      if (auto it = census_before.find(family); it != census_before.end()) before = it->second;
      if (count - before > 0) record.cuts_by_family[family] = count - before;
    }
    result.telemetry.push_back(record);
    result.upper_bound = ub;
    result.lower_bound = lower_bound;
    result.gap = std::max(gap, 0.0);

    if (gap <= config_.gap_tolerance) {
      reason = StopReason::Converged;
      break;
    }
    if (lower_bound - previous_lower <
        config_.stall_epsilon * std::max(1.0, std::fabs(lower_bound))) {
      if (++stall_count >= config_.stall_iterations) {
        reason = StopReason::Stalled;
        break;
      }
    } else {
      stall_count = 0;
    }
    previous_lower = lower_bound;

    if (std::chrono::duration<double>(clock::now() - start).count() >
        config_.time_limit_seconds) {
      reason = StopReason::TimeLimit;
      break;
    }
  }

  StageSolveOutput root = solve_stage(1, 0, initial_state_);
  result.first_stage_plan = root.state;
  result.iterations = k;
  result.stop_reason = reason;
  result.cut_census = census_;
  result.pools = pools_;
  result.events = events_;
  result.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
  return result;
}

SddipResult run_sddip(const Instance& instance, const ScenarioTree& tree,
                      const SddipConfig& config, SolverBackend& backend) {
  SddipSolver solver(instance, tree, config, backend);
  return solver.run();
}

}  // namespace modcap
