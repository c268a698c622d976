#include "harness/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "plan/expand.hpp"
#include "plan/plan.hpp"
#include "workload/random.hpp"

namespace gridecon {

Application build_application(const ApplicationConfig& app, std::uint64_t seed) {
  if (!app.plan_path.empty()) {
    std::ifstream f(app.plan_path);
    if (!f) throw ConfigError("cannot open plan file '" + app.plan_path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    const auto ast = plan::parse_plan(ss.str());
    const auto bindings = plan::generate_jobs(ast);
    Application out;
    out.label = app.plan_path;
    for (const auto& b : bindings) {
      Gridlet g;
      g.id = static_cast<int>(b.job_index);
      g.length_mi = app.per_job_mi;
      g.input_bytes = app.input_bytes;
      g.output_bytes = app.output_bytes;
      out.gridlets.push_back(g);
    }
    return out;
  }
  return synthesize_application(app.count, app.base_mi, app.variation, app.input_bytes,
                                app.output_bytes, seed);
}

std::unique_ptr<Simulation> Simulation::build(const SweepConfig& config, double deadline,
                                              double budget, std::uint64_t seed) {
  config.validate();
  auto sim = std::make_unique<Simulation>();
  sim->network = NetworkModel(config.network_mode, config.baud_rate);

  sim->gis = std::make_unique<GridInformationService>();
  sim->kernel.register_entity("GIS", *sim->gis);
  sim->statistics = std::make_unique<StatisticsEntity>(sim->stats);
  sim->kernel.register_entity("Statistics", *sim->statistics);
  sim->shutdown = std::make_unique<ShutdownCoordinator>(config.users);
  sim->kernel.register_entity("Shutdown", *sim->shutdown);

  Simulation* raw = sim.get();
  for (const auto& spec : config.resources) {
    ResourceCalendar cal;
    cal.peak_load = spec.peak_load;
    cal.offpeak_load = spec.offpeak_load;
    cal.weekend_load = spec.weekend_load;
    auto res = std::make_unique<GridResource>(spec.characteristics(), cal,
                                              &sim->network);
    sim->kernel.register_entity(spec.name, *res);
    res->announce(sim->gis->id());
    res->set_transition_hook([raw](SimTime t, const std::string& rname, int gid,
                                   GridletStatus from, GridletStatus to) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%.12g\t%s\t%d\t%s\t%s\n", t, rname.c_str(), gid,
                    to_string(from), to_string(to));
      raw->transitions.push_back(buf);
    });
    sim->resources.push_back(std::move(res));
  }

  SimRandom stagger_stream(seed ^ 0x9e3779b97f4a7c15ull);
  for (int u = 0; u < config.users; ++u) {
    BrokerOptions opts;
    opts.gis = sim->gis->id();
    opts.network = &sim->network;
    opts.cancel_at_deadline = config.cancel_at_deadline;
    auto broker = std::make_unique<Broker>(opts);
    sim->kernel.register_entity("Broker_U" + std::to_string(u), *broker);

    Experiment exp;
    exp.application =
        build_application(config.application, user_stream_seed(seed, u));
    exp.strategy = config.strategy;
    exp.deadline = config.deadline_is_factor ? QosConstraint::factor(deadline)
                                             : QosConstraint::absolute(deadline);
    exp.budget = config.budget_is_factor ? QosConstraint::factor(budget)
                                         : QosConstraint::absolute(budget);
    const double delay =
        config.stagger > 0.0 ? config.stagger * stagger_stream.uniform01() : 0.0;
    auto user = std::make_unique<UserEntity>(std::move(exp), broker->id(),
                                             sim->shutdown->id(), &sim->stats, delay);
    sim->kernel.register_entity("U" + std::to_string(u), *user);
    sim->brokers.push_back(std::move(broker));
    sim->users.push_back(std::move(user));
  }
  return sim;
}

SimTime Simulation::run() {
  auto hasher = std::make_shared<TraceHasher>();
  kernel.set_trace_sink(
      [hasher](const Event& ev) { hasher->feed(format_trace_line(ev)); });
  for (auto& u : users) u->start();
  SimTime end = kernel.run();
  trace_hash = hasher->value;
  return end;
}

ExperimentResult run_single_experiment(const SweepConfig& config, double deadline,
                                       double budget, std::uint64_t seed) {
  auto sim = Simulation::build(config, deadline, budget, seed);
  sim->run();
  return sim->brokers.front()->result();
}

CellResult run_cell(const SweepConfig& config, double deadline, double budget,
                    std::uint64_t seed) {
  CellResult cell;
  cell.deadline = deadline;
  cell.budget = budget;
  cell.seed = seed;
  try {
    auto sim = Simulation::build(config, deadline, budget, seed);
    sim->run();
    cell.trace_hash = sim->trace_hash;
    cell.transitions = std::move(sim->transitions);
    for (std::size_t u = 0; u < sim->brokers.size(); ++u) {
      const ExperimentResult& r = sim->brokers[u]->result();
      UserSummary s;
      s.user_index = static_cast<int>(u);
      s.completed = r.completed_count;
      s.spend = r.total_spend;
      s.termination_time = r.termination_time;
      s.detail = r;
      cell.users.push_back(std::move(s));
    }
    cell.ok = true;
  } catch (const std::exception& ex) {
    cell.ok = false;
    cell.error = ex.what();
  }
  return cell;
}

SweepResult run_sweep(const SweepConfig& config, int parallelism) {
  SweepResult result;
  result.config = config;

  struct CellSpec {
    double deadline;
    double budget;
    std::uint64_t seed;
  };
  std::vector<CellSpec> specs;
  for (double d : config.deadlines)
    for (double b : config.budgets)
      for (std::uint64_t s : config.seeds) specs.push_back(CellSpec{d, b, s});

  result.cells.resize(specs.size());
  const int workers =
      std::max(1, std::min<int>(parallelism, static_cast<int>(specs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < specs.size(); ++i)
      result.cells[i] =
          run_cell(config, specs[i].deadline, specs[i].budget, specs[i].seed);
    return result;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      result.cells[i] =
          run_cell(config, specs[i].deadline, specs[i].budget, specs[i].seed);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return result;
}

std::string summary_row(const CellResult& cell, const UserSummary& user,
                        Strategy strategy) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d\t%.12g\t%.12g\t%llu\t%s\t%d\t%.12g\t%.12g\n",
                user.user_index, cell.deadline, cell.budget,
                static_cast<unsigned long long>(cell.seed), to_string(strategy),
                user.completed, user.spend, user.termination_time);
  return buf;
}

void emit_report(const SweepResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  std::ofstream summary(fs::path(out_dir) / "summary.tsv", std::ios::binary);
  if (!summary) throw std::runtime_error("cannot write summary.tsv in " + out_dir);
  summary << "#user\tdeadline\tbudget\tseed\tstrategy\tcompleted\tspend\t"
             "termination_time\n";
  for (const auto& cell : result.cells) {
    if (!cell.ok) {
      summary << "# cell deadline=" << cell.deadline << " budget=" << cell.budget
              << " seed=" << cell.seed << " failed: " << cell.error << "\n";
      continue;
    }
    for (const auto& u : cell.users)
      summary << summary_row(cell, u, result.config.strategy);
  }

  char buf[256];
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    const auto& cell = result.cells[i];
    std::ofstream trace(fs::path(out_dir) / ("trace_" + std::to_string(i) + ".tsv"),
                        std::ios::binary);
    trace << "#time\tuser\tresource\tcommitted\tcompleted\tspend\n";
    if (!cell.ok) continue;
    for (const auto& u : cell.users) {
      for (const auto& row : u.detail.trace) {
        std::string rname;
        for (const auto& pr : u.detail.per_resource)
          if (pr.resource == row.resource) rname = pr.name;
        std::snprintf(buf, sizeof buf, "%.12g\t%d\t%s\t%d\t%d\t%.12g\n", row.time,
                      u.user_index, rname.c_str(), row.committed, row.completed,
                      row.spend);
        trace << buf;
      }
    }
    std::ofstream transitions(
        fs::path(out_dir) / ("transitions_" + std::to_string(i) + ".tsv"),
        std::ios::binary);
    transitions << "#time\tresource\tgridlet\tfrom\tto\n";
    for (const auto& line : cell.transitions) transitions << line;
  }
}

}  // namespace gridecon
