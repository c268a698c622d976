#include "broker/bounds.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gridecon {

ResourceRating rating_of(const ResourceCharacteristics& rc) {
  return ResourceRating{rc.pe_mips(), rc.total_pes(), rc.cost_per_mi()};
}

namespace {

// Greedy list scheduling of jobs onto individual PE slots, fastest first.
double list_schedule_makespan(const std::vector<ResourceRating>& resources,
                              const Application& app) {
  struct Slot {
    double mips;
    double load_mi = 0.0;
  };
  std::vector<Slot> slots;
  for (const auto& r : resources)
    for (int p = 0; p < r.n_pes; ++p) slots.push_back(Slot{r.pe_mips});
  std::stable_sort(slots.begin(), slots.end(),
                   [](const Slot& a, const Slot& b) { return a.mips > b.mips; });
  for (const auto& g : app.gridlets) {
    std::size_t best = 0;
    double best_finish = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < slots.size(); ++i) {
      double finish = (slots[i].load_mi + g.length_mi) / slots[i].mips;
      if (finish < best_finish) {
        best_finish = finish;
        best = i;
      }
    }
    slots[best].load_mi += g.length_mi;
  }
  double makespan = 0.0;
  for (const auto& s : slots) makespan = std::max(makespan, s.load_mi / s.mips);
  return makespan;
}

// Pack jobs onto resources in the given order, each resource taking what it
// can deliver by the deadline at rated capacity; the overflow is priced on
// the last resource.
double packed_cost(const std::vector<const ResourceRating*>& order,
                   const Application& app, SimTime deadline) {
  double cost = 0.0;
  std::size_t r = 0;
  double used_mi = 0.0;
  for (const auto& g : app.gridlets) {
    while (r + 1 < order.size() &&
           used_mi + g.length_mi > order[r]->total_mips() * deadline) {
      ++r;
      used_mi = 0.0;
    }
    used_mi += g.length_mi;
    cost += g.length_mi * order[r]->cost_per_mi;
  }
  return cost;
}

}  // namespace

ScheduleBounds compute_bounds(const std::vector<ResourceRating>& resources,
                              const Application& app,
                              std::optional<SimTime> deadline) {
  if (resources.empty()) throw std::invalid_argument("compute_bounds: no resources");
  if (app.gridlets.empty()) throw std::invalid_argument("compute_bounds: no jobs");

  ScheduleBounds b;
  b.t_min = list_schedule_makespan(resources, app);

  double slowest_pe =
      std::min_element(resources.begin(), resources.end(),
                       [](const ResourceRating& a, const ResourceRating& r) {
                         return a.pe_mips < r.pe_mips;
                       })
          ->pe_mips;
  b.t_max = app.total_mi() / slowest_pe;

  const SimTime horizon = deadline.value_or(b.t_max);
  std::vector<const ResourceRating*> cheap, dear;
  for (const auto& r : resources) {
    cheap.push_back(&r);
    dear.push_back(&r);
  }
  std::stable_sort(cheap.begin(), cheap.end(),
                   [](const ResourceRating* a, const ResourceRating* r) {
                     return a->cost_per_mi < r->cost_per_mi;
                   });
  std::stable_sort(dear.begin(), dear.end(),
                   [](const ResourceRating* a, const ResourceRating* r) {
                     return a->cost_per_mi > r->cost_per_mi;
                   });
  b.c_min = packed_cost(cheap, app, horizon);
  b.c_max = packed_cost(dear, app, horizon);
  return b;
}

SimTime determine_deadline(const QosConstraint& deadline, const ScheduleBounds& bounds) {
  if (deadline.form == QosConstraint::Form::Absolute) return deadline.value;
  if (deadline.value < 0.0)
    throw std::domain_error(
        "d_factor < 0: the application would never be completed");
  if (deadline.value == 0.0) return bounds.t_min;
  if (deadline.value == 1.0) return bounds.t_max;
  return bounds.t_min + deadline.value * (bounds.t_max - bounds.t_min);
}

double determine_budget(const QosConstraint& budget, const ScheduleBounds& bounds) {
  if (budget.form == QosConstraint::Form::Absolute) return budget.value;
  if (budget.value < 0.0)
    throw std::domain_error(
        "b_factor < 0: the application would never be completed");
  if (budget.value == 0.0) return bounds.c_min;
  if (budget.value == 1.0) return bounds.c_max;
  return bounds.c_min + budget.value * (bounds.c_max - bounds.c_min);
}

}  // namespace gridecon
