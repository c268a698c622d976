#pragma once

#include <string>
#include <vector>

#include "core/event.hpp"
#include "workload/application.hpp"

namespace gridecon {

enum class Strategy { Cost, Time, CostTime, ConservativeTime };

const char* to_string(Strategy s);

// A QoS constraint given either as an absolute value or as a relaxation
// factor in [0,1] interpolating between the schedule bounds.
struct QosConstraint {
  enum class Form { Absolute, Factor } form = Form::Absolute;
  double value = 0.0;

  static QosConstraint absolute(double v) { return {Form::Absolute, v}; }
  static QosConstraint factor(double f) { return {Form::Factor, f}; }
};

struct Experiment {
  Application application;
  Strategy strategy = Strategy::Cost;
  QosConstraint deadline;
  QosConstraint budget;
  SimTime start_time = -1.0;
  SimTime end_time = -1.0;
};

// Best/worst completion time and cost over a resource set: T_MIN/T_MAX and
// C_MIN/C_MAX of the deadline and budget interpolation.
struct ScheduleBounds {
  SimTime t_min = 0.0;
  SimTime t_max = 0.0;
  double c_min = 0.0;
  double c_max = 0.0;
};

struct ResourceUsage {
  EntityId resource = -1;
  std::string name;
  int assigned_total = 0;  // jobs ever dispatched to the resource
  int completed = 0;
  double spend = 0.0;
  double measured_rate = 0.0;
};

// Per-scheduling-event snapshot of one resource's ledger.
struct ScheduleTraceRow {
  SimTime time = 0.0;
  EntityId resource = -1;
  int committed = 0;  // assigned + in flight
  int completed = 0;
  double spend = 0.0;
};

struct ExperimentResult {
  int completed_count = 0;
  double total_spend = 0.0;
  SimTime start_time = 0.0;
  SimTime termination_time = 0.0;
  SimTime deadline = 0.0;  // resolved absolute values
  double budget = 0.0;
  ScheduleBounds bounds;
  std::vector<ResourceUsage> per_resource;
  std::vector<ScheduleTraceRow> trace;
  std::vector<Gridlet> gridlets;  // final job states
};

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Cost: return "cost";
    case Strategy::Time: return "time";
    case Strategy::CostTime: return "cost-time";
    case Strategy::ConservativeTime: return "conservative-time";
  }
  return "?";
}

}  // namespace gridecon
