#pragma once

#include <set>

#include "core/event.hpp"

namespace gridecon {

enum class PeriodClass { PeakWeekday, OffPeakWeekday, WeekendOrHoliday };

// Local-load calendar: a piecewise-constant load fraction per period class,
// evaluated in resource-local time. Simulation time 0 is Monday 00:00 UTC and
// one time unit is one second; peak weekday hours are [9:00, 17:00) local.
struct ResourceCalendar {
  std::set<int> weekend_days{5, 6};  // 0 = Monday
  std::set<long> holidays;           // absolute day index since t = 0
  double peak_load = 0.0;            // each in [0, 1)
  double offpeak_load = 0.0;
  double weekend_load = 0.0;

  PeriodClass period_class(SimTime t, double time_zone_hours) const;
  double load_at(SimTime t, double time_zone_hours) const;
  void validate() const;
};

// Rated per-PE capacity scaled down by the local load in force at sim_time.
double effective_pe_mips(double pe_mips, const ResourceCalendar& cal, SimTime sim_time,
                         double time_zone_hours);

}  // namespace gridecon
