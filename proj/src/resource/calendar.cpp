#include "resource/calendar.hpp"

#include <cmath>
#include <stdexcept>

namespace gridecon {

namespace {
constexpr double kHour = 3600.0;
constexpr double kDay = 86400.0;
}  // namespace

PeriodClass ResourceCalendar::period_class(SimTime t, double time_zone_hours) const {
  double local = t + time_zone_hours * kHour;
  long day = static_cast<long>(std::floor(local / kDay));
  int weekday = static_cast<int>(((day % 7) + 7) % 7);
  if (weekend_days.count(weekday) || holidays.count(day))
    return PeriodClass::WeekendOrHoliday;
  double hour = (local - day * kDay) / kHour;
  if (hour >= 9.0 && hour < 17.0) return PeriodClass::PeakWeekday;
  return PeriodClass::OffPeakWeekday;
}

double ResourceCalendar::load_at(SimTime t, double time_zone_hours) const {
  switch (period_class(t, time_zone_hours)) {
    case PeriodClass::PeakWeekday: return peak_load;
    case PeriodClass::OffPeakWeekday: return offpeak_load;
    case PeriodClass::WeekendOrHoliday: return weekend_load;
  }
  return 0.0;
}

void ResourceCalendar::validate() const {
  for (double l : {peak_load, offpeak_load, weekend_load}) {
    if (l < 0.0 || l >= 1.0)
      throw std::invalid_argument("calendar load must lie in [0,1)");
  }
}

double effective_pe_mips(double pe_mips, const ResourceCalendar& cal, SimTime sim_time,
                         double time_zone_hours) {
  return pe_mips * (1.0 - cal.load_at(sim_time, time_zone_hours));
}

}  // namespace gridecon
