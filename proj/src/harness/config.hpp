#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "broker/experiment.hpp"
#include "resource/network.hpp"
#include "resource/resource_spec.hpp"

namespace gridecon {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResourceSpecConfig {
  std::string name;
  int machines = 1;
  int pes = 1;
  double mips = 100.0;
  double price = 0.0;  // G$ per PE time unit
  AllocationPolicy policy = AllocationPolicy::TimeShared;
  double timezone = 0.0;
  double peak_load = 0.0;
  double offpeak_load = 0.0;
  double weekend_load = 0.0;

  ResourceCharacteristics characteristics() const;
};

struct ApplicationConfig {
  int count = 200;
  double base_mi = 10000.0;
  double variation = 0.10;
  double input_bytes = 0.0;
  double output_bytes = 0.0;
  std::string plan_path;     // when set, one job per plan binding
  double per_job_mi = 10000.0;
};

// A full sweep description: resources, workload and the experiment grid.
//
// Config file grammar (line oriented, '#' comments):
//   [resource]                  one section per resource
//   name = R0
//   pes = 4                     machines = 1 by default
//   mips = 515
//   price = 8
//   policy = time-shared        or space-shared
//   timezone / peak_load / offpeak_load / weekend_load   optional
//
//   [application]
//   count = 200                 base_mi = 10000, variation = 0.10
//   input_bytes / output_bytes  optional
//   plan = jobs.plan            alternative: jobs from a plan file,
//   per_job_mi = 10000          each binding one job of this length
//
//   [sweep]
//   strategy = cost|time|cost-time|conservative-time
//   deadline = 100:3600:500     grid from:to:step, comma list, or one value
//   budget = 5000:22000:1000    d_factor/b_factor give factor form instead
//   users = 1
//   seeds = 1,2,3,4,5
//   network = none              or a baud rate in bits/sec
//   cancel_at_deadline = false
//   stagger = 0                 max uniform-random user start offset
struct SweepConfig {
  std::vector<ResourceSpecConfig> resources;
  ApplicationConfig application;
  Strategy strategy = Strategy::Cost;
  bool deadline_is_factor = false;
  std::vector<double> deadlines;
  bool budget_is_factor = false;
  std::vector<double> budgets;
  int users = 1;
  std::vector<std::uint64_t> seeds{1};
  NetworkMode network_mode = NetworkMode::None;
  double baud_rate = kDefaultBaudRate;
  bool cancel_at_deadline = false;
  double stagger = 0.0;

  void validate() const;
};

SweepConfig parse_config(const std::string& text);
SweepConfig load_config(const std::string& path);

// Built-in scenario presets: "wwg-table-6.2", "wwg-table-6.3",
// "testqueues-4.6". Returned as config text so they parse like any file.
std::string preset_text(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace gridecon
