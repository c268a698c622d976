#pragma once

#include <deque>
#include <string>
#include <vector>

#include "core/event.hpp"
#include "resource/resource_spec.hpp"
#include "workload/gridlet.hpp"

namespace gridecon {

// Broker-side ledger for one discovered resource: committed jobs, measured
// delivery rate and spend, plus the rated figures used before any
// measurements exist.
struct BrokerResource {
  EntityId id = -1;
  std::string name;
  ResourceCharacteristics chars;
  double pe_mips = 0.0;
  int n_pes = 0;
  double rated_mips = 0.0;   // n_pes * pe_mips
  double cost_per_mi = 0.0;  // cost_per_pe_time_unit / pe_mips

  std::deque<int> assigned;     // gridlet ids awaiting dispatch, in assignment order
  std::vector<int> in_flight;   // dispatched, not yet returned
  int dispatched_count = 0;
  int completed_count = 0;
  double spend = 0.0;           // billed on completion/cancel

  // Newest-last window of per-completion delivery rates (MI / wall time).
  std::deque<double> rate_window;

  static BrokerResource from_characteristics(EntityId id, std::string name,
                                             const ResourceCharacteristics& rc) {
    BrokerResource br;
    br.id = id;
    br.name = std::move(name);
    br.chars = rc;
    br.pe_mips = rc.pe_mips();
    br.n_pes = rc.total_pes();
    br.rated_mips = rc.rated_total_mips();
    br.cost_per_mi = rc.cost_per_mi();
    return br;
  }

  int committed_jobs() const {
    return static_cast<int>(assigned.size() + in_flight.size());
  }
};

// MI per time unit this user can expect from the resource. Cold start is the
// rated capacity; afterwards the mean per-job rate over the last
// `window` completions, scaled by the PE count the dispatcher keeps busy.
double estimate_rate(const BrokerResource& br, int window);

}  // namespace gridecon
