#pragma once

#include <optional>
#include <vector>

#include "broker/experiment.hpp"
#include "resource/resource_spec.hpp"

namespace gridecon {

// Rated figures the bound computations work from.
struct ResourceRating {
  double pe_mips = 0.0;
  int n_pes = 0;
  double cost_per_mi = 0.0;

  double total_mips() const { return pe_mips * n_pes; }
};

ResourceRating rating_of(const ResourceCharacteristics& rc);

// Best/worst schedule bounds at rated (not measured) capacity.
//  - t_min: makespan of greedy list scheduling over all PE slots,
//    fastest slots first.
//  - t_max: all work run serially on one PE of the slowest resource.
//  - c_min/c_max: cost of packing jobs onto resources in ascending/descending
//    cost-per-MI order, each resource holding what it can finish by
//    `deadline` (t_max when absent); jobs that fit nowhere are priced on the
//    last resource in order.
ScheduleBounds compute_bounds(const std::vector<ResourceRating>& resources,
                              const Application& app,
                              std::optional<SimTime> deadline = std::nullopt);

// Linear interpolation between the bounds per the relaxation factor.
// Absolute constraints pass through untouched. A negative factor means the
// application can never complete and is rejected.
SimTime determine_deadline(const QosConstraint& deadline, const ScheduleBounds& bounds);
double determine_budget(const QosConstraint& budget, const ScheduleBounds& bounds);

}  // namespace gridecon
