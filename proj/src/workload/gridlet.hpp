#pragma once

#include <string>

#include "core/event.hpp"

namespace gridecon {

enum class GridletStatus {
  Created,
  Ready,
  Queued,
  InExec,
  Success,
  Failed,
  Canceled,
};

const char* to_string(GridletStatus s);

// One job: work expressed in MI relative to a 100-MIPS standard PE, plus the
// lifecycle record filled in as it moves between broker and resource.
struct Gridlet {
  int id = -1;
  double length_mi = 0.0;
  double input_bytes = 0.0;
  double output_bytes = 0.0;
  EntityId owner = -1;
  GridletStatus status = GridletStatus::Created;

  SimTime submit_time = -1.0;  // dispatch from the broker
  SimTime start_time = -1.0;   // execution start at the resource
  SimTime finish_time = -1.0;
  double wall_clock = 0.0;     // finish - arrival at the resource
  double cpu_time = 0.0;       // PE time consumed at full rated speed
  double processed_mi = 0.0;   // MI delivered so far (billing of partial work)
  double cost_incurred = 0.0;
  EntityId resource_id = -1;
};

inline const char* to_string(GridletStatus s) {
  switch (s) {
    case GridletStatus::Created: return "CREATED";
    case GridletStatus::Ready: return "READY";
    case GridletStatus::Queued: return "QUEUED";
    case GridletStatus::InExec: return "INEXEC";
    case GridletStatus::Success: return "SUCCESS";
    case GridletStatus::Failed: return "FAILED";
    case GridletStatus::Canceled: return "CANCELED";
  }
  return "?";
}

// Time a given amount of work takes on one PE of the given rating.
inline double length_in_time_units(double mi, double pe_mips) { return mi / pe_mips; }

}  // namespace gridecon
