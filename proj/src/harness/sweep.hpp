#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "broker/broker.hpp"
#include "broker/user.hpp"
#include "harness/config.hpp"
#include "resource/gis.hpp"
#include "resource/grid_resource.hpp"
#include "stats/statistics.hpp"

namespace gridecon {

// One fully wired simulation instance: kernel, GIS, statistics, shutdown
// coordinator, resources and one user/broker pair per user. All state is
// confined to this object, so independent instances can run concurrently.
struct Simulation {
  Kernel kernel;
  NetworkModel network;
  StatStore stats;
  std::unique_ptr<GridInformationService> gis;
  std::unique_ptr<StatisticsEntity> statistics;
  std::unique_ptr<ShutdownCoordinator> shutdown;
  std::vector<std::unique_ptr<GridResource>> resources;
  std::vector<std::unique_ptr<Broker>> brokers;
  std::vector<std::unique_ptr<UserEntity>> users;
  std::uint64_t trace_hash = 0;
  // per gridlet state transition: time, resource, gridlet id, old, new
  std::vector<std::string> transitions;

  static std::unique_ptr<Simulation> build(const SweepConfig& config, double deadline,
                                           double budget, std::uint64_t seed);

  // Starts all users and runs the calendar to completion.
  SimTime run();
};

// Builds the per-user application for a cell, from synthesis parameters or
// from the configured plan file.
Application build_application(const ApplicationConfig& app, std::uint64_t seed);

// Runs one experiment exactly as the sweep would for a 1x1 grid and returns
// the broker's result for user 0.
ExperimentResult run_single_experiment(const SweepConfig& config, double deadline,
                                       double budget, std::uint64_t seed);

struct UserSummary {
  int user_index = 0;
  int completed = 0;
  double spend = 0.0;
  SimTime termination_time = 0.0;
  ExperimentResult detail;
};

struct CellResult {
  double deadline = 0.0;
  double budget = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::uint64_t trace_hash = 0;
  std::vector<UserSummary> users;
  std::vector<std::string> transitions;
};

struct SweepResult {
  SweepConfig config;
  std::vector<CellResult> cells;  // deadline-major, then budget, then seed

  bool all_ok() const {
    for (const auto& c : cells)
      if (!c.ok) return false;
    return true;
  }
};

CellResult run_cell(const SweepConfig& config, double deadline, double budget,
                    std::uint64_t seed);

// Runs every (deadline, budget, seed) cell; cells are independent and the
// result does not depend on the parallelism degree.
SweepResult run_sweep(const SweepConfig& config, int parallelism = 1);

// Writes summary.tsv (one row per user per cell: user, deadline, budget,
// seed, strategy, completed, spend, termination_time) and one per-resource
// trace file per cell.
void emit_report(const SweepResult& result, const std::string& out_dir);

std::string summary_row(const CellResult& cell, const UserSummary& user,
                        Strategy strategy);

// FNV-1a over the formatted event trace; equal inputs give equal hashes.
struct TraceHasher {
  std::uint64_t value = 1469598103934665603ull;
  void feed(const std::string& line) {
    for (unsigned char c : line) {
      value ^= c;
      value *= 1099511628211ull;
    }
  }
};

}  // namespace gridecon
