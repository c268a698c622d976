#pragma once

#include <deque>
#include <functional>
#include <limits>
#include <vector>

#include "core/kernel.hpp"
#include "resource/calendar.hpp"
#include "resource/network.hpp"
#include "resource/resource_spec.hpp"
#include "workload/gridlet.hpp"

namespace gridecon {

// A gridlet under management at a resource.
struct ResGridlet {
  Gridlet gridlet;
  SimTime arrival_time = 0.0;
  std::uint64_t arrival_seq = 0;  // tie-break for equal remaining work
  int machine_id = -1;
  int pe_id = -1;
  double remaining_mi = 0.0;
  SimTime forecast_finish = -1.0;
  EventSeq completion_seq = 0;  // space-shared per-gridlet completion event
};

// Reply payload for RESOURCE_CHARACTERISTICS queries.
struct ResourceInfoReply {
  EntityId resource_id = -1;
  std::string name;
  ResourceCharacteristics characteristics;
};

// Simulates one grid resource. Time-shared resources spread PEs equally over
// all resident gridlets and keep a single self-scheduled forecast for the
// earliest completion; superseded forecasts are discarded by seq. Space-shared
// resources run one gridlet per PE and queue the rest FCFS.
class GridResource : public Entity {
 public:
  GridResource(ResourceCharacteristics chars, ResourceCalendar calendar = {},
               NetworkModel* network = nullptr);

  // Registers this resource with the directory service.
  void announce(EntityId gis_id);

  void handle(const Event& ev) override;

  const ResourceCharacteristics& characteristics() const { return chars_; }
  const ResourceCalendar& calendar() const { return calendar_; }

  // An offline resource bounces submissions back FAILED, as a deregistered
  // middleware node would.
  void set_offline(bool offline) { offline_ = offline; }

  int stale_discards() const { return stale_discards_; }
  int delivery_failures() const { return delivery_failures_; }
  int in_execution() const { return static_cast<int>(exec_.size()); }
  int queued() const { return static_cast<int>(queue_.size()); }
  const std::vector<Gridlet>& finished() const { return finished_; }

  // Observer for gridlet state transitions: time, resource name, gridlet id,
  // old status, new status.
  using TransitionHook =
      std::function<void(SimTime, const std::string&, int, GridletStatus, GridletStatus)>;
  void set_transition_hook(TransitionHook hook) { hook_ = std::move(hook); }

 private:
  static constexpr EventSeq kNoForecast = std::numeric_limits<EventSeq>::max();
  static constexpr double kRelTol = 1e-9;

  void on_submit(const Event& ev);
  void on_forecast(const Event& ev);
  void on_cancel(const Event& ev);

  // time-shared
  void ts_update_progress();
  void ts_complete_finished();
  void ts_reforecast();

  // space-shared
  bool ss_find_free_pe(int& machine_id, int& pe_id) const;
  void ss_allocate(ResGridlet rg);
  void ss_complete(std::size_t index);

  void set_status(Gridlet& g, GridletStatus next);
  void return_to_owner(ResGridlet rg, GridletStatus final_status);
  double eff_pe_mips(SimTime at) const;

  ResourceCharacteristics chars_;
  ResourceCalendar calendar_;
  NetworkModel* network_ = nullptr;

  bool offline_ = false;
  std::vector<ResGridlet> exec_;
  std::deque<ResGridlet> queue_;  // space-shared submission queue (FCFS)
  SimTime last_update_ = 0.0;
  EventSeq expected_forecast_seq_ = kNoForecast;
  std::uint64_t arrival_counter_ = 0;
  int stale_discards_ = 0;
  int delivery_failures_ = 0;
  std::vector<Gridlet> finished_;
  TransitionHook hook_;
};

}  // namespace gridecon
