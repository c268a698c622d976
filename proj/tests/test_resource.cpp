#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "resource/calendar.hpp"
#include "resource/gis.hpp"
#include "resource/grid_resource.hpp"
#include "resource/network.hpp"

using namespace gridecon;

namespace {

// Stand-in job owner: fires submissions at fixed times, collects returns.
struct Owner : Entity {
  std::map<int, Gridlet> returned;
  void handle(const Event& ev) override {
    if (ev.tag == tags::GRIDLET_RETURN) {
      Gridlet g = std::any_cast<Gridlet>(ev.payload);
      returned[g.id] = g;
    }
  }
};

struct Scenario {
  Kernel kernel;
  Owner owner;
  GridResource resource;

  Scenario(AllocationPolicy policy, int pes, double mips,
           ResourceCalendar cal = {}, int machines = 1)
      : resource(make_characteristics(machines, pes, mips, policy, 1.0), cal) {
    kernel.register_entity("owner", owner);
    kernel.register_entity("res", resource);
  }

  void submit(int id, double mi, double at) {
    Gridlet g;
    g.id = id;
    g.length_mi = mi;
    g.owner = owner.id();
    kernel.schedule(owner.id(), resource.id(), at, tags::GRIDLET_SUBMIT, g);
  }

  double finish(int id) const { return returned(id).finish_time; }
  const Gridlet& returned(int id) const { return owner.returned.at(id); }
};

}  // namespace

TEST_CASE("two-PE scenario, time shared: 10/8.5/9.5 MI at 0/4/7 finish 10/14/18") {
  Scenario s(AllocationPolicy::TimeShared, 2, 1.0);
  s.submit(1, 10.0, 0.0);
  s.submit(2, 8.5, 4.0);
  s.submit(3, 9.5, 7.0);
  const double end = s.kernel.run();
  CHECK(s.finish(1) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(s.finish(2) == doctest::Approx(14.0).epsilon(1e-9));
  CHECK(s.finish(3) == doctest::Approx(18.0).epsilon(1e-9));
  CHECK(end == doctest::Approx(18.0));
  CHECK(s.returned(1).wall_clock == doctest::Approx(10.0));
  CHECK(s.returned(2).wall_clock == doctest::Approx(10.0));
  CHECK(s.returned(3).wall_clock == doctest::Approx(11.0));
  // the two superseded forecasts from the arrivals at t=4 and t=7
  CHECK(s.resource.stale_discards() == 2);
}

TEST_CASE("two-PE scenario, space shared: finishes 10/12.5/19.5, start order FCFS") {
  Scenario s(AllocationPolicy::SpaceShared, 2, 1.0);
  s.submit(1, 10.0, 0.0);
  s.submit(2, 8.5, 4.0);
  s.submit(3, 9.5, 7.0);
  s.kernel.run();
  CHECK(s.finish(1) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(s.finish(2) == doctest::Approx(12.5).epsilon(1e-9));
  CHECK(s.finish(3) == doctest::Approx(19.5).epsilon(1e-9));
  CHECK(s.returned(3).start_time == doctest::Approx(10.0));
}

TEST_CASE("single gridlet with no contention finishes at arrival + length/mips") {
  Scenario ts(AllocationPolicy::TimeShared, 1, 1.0);
  ts.submit(1, 10.0, 3.0);
  ts.kernel.run();
  CHECK(ts.finish(1) == doctest::Approx(13.0));

  Scenario ss(AllocationPolicy::SpaceShared, 4, 2.0);
  ss.submit(1, 9.0, 1.0);
  ss.kernel.run();
  CHECK(ss.finish(1) == doctest::Approx(5.5));
}

TEST_CASE("same arrivals at doubled MIPS finish 5/8.25/11.75 (oracle checked)") {
  const std::vector<oracle::Job> jobs{{10.0, 0.0}, {8.5, 4.0}, {9.5, 7.0}};
  const auto expect = oracle::time_shared_finish(jobs, 2, 2.0);
  CHECK(expect[0] == doctest::Approx(5.0));
  CHECK(expect[1] == doctest::Approx(8.25));
  CHECK(expect[2] == doctest::Approx(11.75));

  Scenario s(AllocationPolicy::TimeShared, 2, 2.0);
  for (int i = 0; i < 3; ++i) s.submit(i + 1, jobs[i].mi, jobs[i].arrival);
  s.kernel.run();
  for (int i = 0; i < 3; ++i)
    CHECK(s.finish(i + 1) == doctest::Approx(expect[i]).epsilon(1e-9));
}

TEST_CASE("three equal gridlets on one PE run serially under FCFS") {
  const std::vector<oracle::Job> jobs{{10.0, 0.0}, {10.0, 0.0}, {10.0, 0.0}};
  const auto expect = oracle::space_shared_finish(jobs, 1, 1.0);
  Scenario s(AllocationPolicy::SpaceShared, 1, 1.0);
  for (int i = 0; i < 3; ++i) s.submit(i + 1, jobs[i].mi, jobs[i].arrival);
  s.kernel.run();
  for (int i = 0; i < 3; ++i)
    CHECK(s.finish(i + 1) == doctest::Approx(expect[i]).epsilon(1e-9));
  CHECK(s.finish(1) == doctest::Approx(10.0));
  CHECK(s.finish(2) == doctest::Approx(20.0));
  CHECK(s.finish(3) == doctest::Approx(30.0));
}

TEST_CASE("time- and space-shared agree when gridlets never outnumber PEs") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> mi(1.0, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int pes = 3;
    std::vector<oracle::Job> jobs;
    for (int i = 0; i < pes; ++i) jobs.push_back({mi(gen), 0.0});

    Scenario ts(AllocationPolicy::TimeShared, pes, 1.5);
    Scenario ss(AllocationPolicy::SpaceShared, pes, 1.5);
    for (int i = 0; i < pes; ++i) {
      ts.submit(i, jobs[i].mi, 0.0);
      ss.submit(i, jobs[i].mi, 0.0);
    }
    ts.kernel.run();
    ss.kernel.run();
    for (int i = 0; i < pes; ++i)
      CHECK(ts.finish(i) == doctest::Approx(ss.finish(i)).epsilon(1e-9));
  }
}

TEST_CASE("time-shared runs match the independent placement oracle") {
  std::mt19937 gen(23);
  std::uniform_int_distribution<int> nd(1, 9), pd(1, 4);
  std::uniform_real_distribution<double> mi(0.5, 40.0), ad(0.0, 30.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = nd(gen);
    const int p = pd(gen);
    std::vector<oracle::Job> jobs;
    for (int i = 0; i < n; ++i) jobs.push_back({mi(gen), ad(gen)});
    const auto expect = oracle::time_shared_finish(jobs, p, 2.0);

    Scenario s(AllocationPolicy::TimeShared, p, 2.0);
    for (int i = 0; i < n; ++i) s.submit(i, jobs[i].mi, jobs[i].arrival);
    s.kernel.run();
    for (int i = 0; i < n; ++i) {
      CHECK(s.finish(i) == doctest::Approx(expect[i]).epsilon(1e-7));
      // delivered work never exceeds the job length beyond rounding
      CHECK(s.returned(i).processed_mi <= jobs[i].mi * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("gridlets sharing a PE receive equal work") {
  // two equal jobs on one PE stay in lockstep and finish together
  Scenario s(AllocationPolicy::TimeShared, 1, 1.0);
  s.submit(1, 12.0, 0.0);
  s.submit(2, 12.0, 0.0);
  s.kernel.run();
  CHECK(s.finish(1) == doctest::Approx(24.0));
  CHECK(s.finish(2) == doctest::Approx(24.0));
}

TEST_CASE("gridlet with an unknown owner is recorded as a delivery failure") {
  Kernel kernel;
  GridResource res(make_characteristics(1, 1, 1.0, AllocationPolicy::TimeShared, 1.0));
  kernel.register_entity("res", res);
  Gridlet g;
  g.id = 1;
  g.length_mi = 5.0;
  g.owner = 99;  // never registered
  kernel.schedule(res.id(), res.id(), 0.0, tags::GRIDLET_SUBMIT, g);
  kernel.run();
  CHECK(res.delivery_failures() == 1);
  REQUIRE(res.finished().size() == 1);
  CHECK(res.finished()[0].status == GridletStatus::Failed);
}

TEST_CASE("effective mips follows the local-load calendar") {
  ResourceCalendar none;
  CHECK(effective_pe_mips(100.0, none, 3600.0, 0.0) == doctest::Approx(100.0));

  ResourceCalendar half;
  half.peak_load = 0.5;
  half.offpeak_load = 0.5;
  // t=0 is Monday 00:00, a weekday
  CHECK(effective_pe_mips(100.0, half, 0.0, 0.0) == doctest::Approx(50.0));
  // Saturday with zero weekend load stays at full speed
  CHECK(effective_pe_mips(100.0, half, 5.5 * 86400.0, 0.0) == doctest::Approx(100.0));
}

TEST_CASE("period classes shift with the resource time zone over a week") {
  ResourceCalendar cal;
  const double tz = 9.0;
  for (int hour = 0; hour < 7 * 24; ++hour) {
    const double t = hour * 3600.0;
    // reference computation directly in local time
    const double local = t + tz * 3600.0;
    const long day = static_cast<long>(std::floor(local / 86400.0));
    const int weekday = static_cast<int>(((day % 7) + 7) % 7);
    const double h = (local - day * 86400.0) / 3600.0;
    PeriodClass expect = (weekday == 5 || weekday == 6)
                             ? PeriodClass::WeekendOrHoliday
                             : (h >= 9.0 && h < 17.0 ? PeriodClass::PeakWeekday
                                                     : PeriodClass::OffPeakWeekday);
    CHECK(cal.period_class(t, tz) == expect);
  }
}

TEST_CASE("holidays count as weekend periods") {
  ResourceCalendar cal;
  cal.holidays.insert(2);  // Wednesday of week zero
  CHECK(cal.period_class(2 * 86400.0 + 12 * 3600.0, 0.0) ==
        PeriodClass::WeekendOrHoliday);
}

TEST_CASE("gis registry keeps registration order and updates idempotently") {
  GisRegistry reg;
  CHECK(reg.list().empty());
  for (int i = 0; i < 11; ++i)
    reg.register_resource(i, GisContact{i, "R" + std::to_string(i)});
  CHECK(reg.list().size() == 11);
  CHECK(reg.list().front() == 0);
  CHECK(reg.list().back() == 10);
  reg.register_resource(4, GisContact{4, "R4-renamed"});
  CHECK(reg.list().size() == 11);
  CHECK(reg.entries()[4].name == "R4-renamed");
}

TEST_CASE("transfer delay arithmetic and no-network mode") {
  CHECK(transfer_delay(0.0, 9600.0) == 0.0);
  CHECK(transfer_delay(1200.0, 9600.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(transfer_delay(100.0, 0.0), std::invalid_argument);

  NetworkModel none;
  CHECK(none.send_delay(1, 0.0, 1e9) == 0.0);

  NetworkModel baud(NetworkMode::Baud, 9600.0);
  // two transfers from one source serialize behind each other
  CHECK(baud.send_delay(1, 0.0, 1200.0) == doctest::Approx(1.0));
  CHECK(baud.send_delay(1, 0.0, 1200.0) == doctest::Approx(2.0));
  // a different source has its own link
  CHECK(baud.send_delay(2, 0.0, 1200.0) == doctest::Approx(1.0));
}
