#include "resource/grid_resource.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "resource/gis.hpp"
#include "resource/share.hpp"

namespace gridecon {

GridResource::GridResource(ResourceCharacteristics chars, ResourceCalendar calendar,
                           NetworkModel* network)
    : chars_(std::move(chars)), calendar_(std::move(calendar)), network_(network) {
  chars_.validate();
  calendar_.validate();
  if (chars_.policy == AllocationPolicy::SpaceShared && chars_.machines.empty())
    throw std::invalid_argument("space-shared resource needs at least one machine");
}

void GridResource::announce(EntityId gis_id) {
  kernel().schedule(id(), gis_id, 0.0, tags::REGISTER_RESOURCE,
                    GisContact{id(), name()});
}

void GridResource::handle(const Event& ev) {
  switch (ev.tag) {
    case tags::GRIDLET_SUBMIT:
      on_submit(ev);
      break;
    case tags::COMPLETION_FORECAST:
      on_forecast(ev);
      break;
    case tags::GRIDLET_CANCEL:
      on_cancel(ev);
      break;
    case tags::RESOURCE_CHARACTERISTICS:
      kernel().schedule(id(), ev.source, 0.0, tags::RESOURCE_CHARACTERISTICS,
                        ResourceInfoReply{id(), name(), chars_});
      break;
    case tags::RESOURCE_DYNAMICS:
      kernel().schedule(id(), ev.source, 0.0, tags::RESOURCE_DYNAMICS, in_execution());
      break;
    case tags::END_OF_SIMULATION:
      break;
    default:
      break;
  }
}

void GridResource::on_submit(const Event& ev) {
  Gridlet g = std::any_cast<Gridlet>(ev.payload);
  g.resource_id = id();
  ResGridlet rg;
  rg.gridlet = g;
  rg.arrival_time = kernel().now();
  rg.arrival_seq = arrival_counter_++;
  rg.remaining_mi = g.length_mi;

  if (offline_) {
    return_to_owner(std::move(rg), GridletStatus::Failed);
    return;
  }

  if (chars_.policy == AllocationPolicy::TimeShared) {
    ts_update_progress();
    ts_complete_finished();
    set_status(rg.gridlet, GridletStatus::InExec);
    rg.gridlet.start_time = kernel().now();
    exec_.push_back(std::move(rg));
    ts_reforecast();
  } else {
    int machine_id = -1, pe_id = -1;
    if (ss_find_free_pe(machine_id, pe_id)) {
      ss_allocate(std::move(rg));
    } else {
      set_status(rg.gridlet, GridletStatus::Queued);
      queue_.push_back(std::move(rg));
    }
  }
}

void GridResource::on_forecast(const Event& ev) {
  if (chars_.policy == AllocationPolicy::TimeShared) {
    if (cancel_stale(expected_forecast_seq_, ev)) {
      ++stale_discards_;
      return;
    }
    expected_forecast_seq_ = kNoForecast;
    ts_update_progress();
    ts_complete_finished();
    ts_reforecast();
  } else {
    auto it = std::find_if(exec_.begin(), exec_.end(), [&](const ResGridlet& rg) {
      return rg.completion_seq == ev.seq;
    });
    if (it == exec_.end()) {
      ++stale_discards_;
      return;
    }
    ss_complete(static_cast<std::size_t>(it - exec_.begin()));
  }
}

void GridResource::on_cancel(const Event& ev) {
  const int gid = std::any_cast<int>(ev.payload);
  if (chars_.policy == AllocationPolicy::TimeShared) {
    ts_update_progress();
    auto it = std::find_if(exec_.begin(), exec_.end(),
                           [&](const ResGridlet& rg) { return rg.gridlet.id == gid; });
    if (it == exec_.end()) return;  // already finished; benign
    ResGridlet rg = std::move(*it);
    exec_.erase(it);
    return_to_owner(std::move(rg), GridletStatus::Canceled);
    ts_reforecast();
  } else {
    auto qit = std::find_if(queue_.begin(), queue_.end(),
                            [&](const ResGridlet& rg) { return rg.gridlet.id == gid; });
    if (qit != queue_.end()) {
      ResGridlet rg = std::move(*qit);
      queue_.erase(qit);
      return_to_owner(std::move(rg), GridletStatus::Canceled);
      return;
    }
    auto it = std::find_if(exec_.begin(), exec_.end(),
                           [&](const ResGridlet& rg) { return rg.gridlet.id == gid; });
    if (it == exec_.end()) return;
    // Bill work done so far, free the PE, pull the next queued gridlet.
    double done = it->gridlet.length_mi -
                  it->remaining_mi * (it->forecast_finish - kernel().now()) /
                      (it->forecast_finish - it->gridlet.start_time);
    it->gridlet.processed_mi = std::clamp(done, 0.0, it->gridlet.length_mi);
    chars_.machines[it->machine_id].pes[it->pe_id].status = PeStatus::Free;
    ResGridlet rg = std::move(*it);
    exec_.erase(it);
    return_to_owner(std::move(rg), GridletStatus::Canceled);
    if (!queue_.empty()) {
      ResGridlet next = std::move(queue_.front());
      queue_.pop_front();
      ss_allocate(std::move(next));
    }
  }
}

// --- time-shared ---

void GridResource::ts_update_progress() {
  const SimTime now = kernel().now();
  const double dt = now - last_update_;
  if (dt > 0.0 && !exec_.empty()) {
    const auto share = pe_share_allocation(dt, static_cast<int>(exec_.size()),
                                           chars_.total_pes(), eff_pe_mips(last_update_));
    std::vector<std::size_t> order(exec_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (exec_[a].remaining_mi != exec_[b].remaining_mi)
        return exec_[a].remaining_mi < exec_[b].remaining_mi;
      return exec_[a].arrival_seq < exec_[b].arrival_seq;
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
      const double mi =
          i < static_cast<std::size_t>(share.max_share_count) ? share.max_share
                                                              : share.min_share;
      ResGridlet& rg = exec_[order[i]];
      const double delta = std::min(rg.remaining_mi, mi);
      rg.remaining_mi -= delta;
      rg.gridlet.processed_mi += delta;
    }
  }
  last_update_ = now;
}

void GridResource::ts_complete_finished() {
  for (std::size_t i = 0; i < exec_.size();) {
    ResGridlet& rg = exec_[i];
    if (rg.remaining_mi <= rg.gridlet.length_mi * kRelTol) {
      rg.gridlet.processed_mi = rg.gridlet.length_mi;
      rg.remaining_mi = 0.0;
      ResGridlet done = std::move(rg);
      exec_.erase(exec_.begin() + static_cast<std::ptrdiff_t>(i));
      return_to_owner(std::move(done), GridletStatus::Success);
    } else {
      ++i;
    }
  }
}

void GridResource::ts_reforecast() {
  if (exec_.empty()) {
    expected_forecast_seq_ = kNoForecast;
    return;
  }
  const SimTime now = kernel().now();
  const auto share = pe_share_allocation(1.0, static_cast<int>(exec_.size()),
                                         chars_.total_pes(), eff_pe_mips(now));
  std::vector<std::size_t> order(exec_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (exec_[a].remaining_mi != exec_[b].remaining_mi)
      return exec_[a].remaining_mi < exec_[b].remaining_mi;
    return exec_[a].arrival_seq < exec_[b].arrival_seq;
  });
  double earliest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double rate =
        i < static_cast<std::size_t>(share.max_share_count) ? share.max_share
                                                            : share.min_share;
    ResGridlet& rg = exec_[order[i]];
    rg.forecast_finish = now + rg.remaining_mi / rate;
    earliest = std::min(earliest, rg.forecast_finish);
  }
  expected_forecast_seq_ =
      kernel().schedule(id(), id(), earliest - now, tags::COMPLETION_FORECAST);
}

// --- space-shared ---

bool GridResource::ss_find_free_pe(int& machine_id, int& pe_id) const {
  for (const auto& m : chars_.machines) {
    for (const auto& pe : m.pes) {
      if (pe.status == PeStatus::Free) {
        machine_id = m.machine_id;
        pe_id = pe.pe_id;
        return true;
      }
    }
  }
  return false;
}

void GridResource::ss_allocate(ResGridlet rg) {
  int machine_id = -1, pe_id = -1;
  if (!ss_find_free_pe(machine_id, pe_id))
    throw SimError("ss_allocate: no free PE");
  chars_.machines[machine_id].pes[pe_id].status = PeStatus::Busy;
  rg.machine_id = machine_id;
  rg.pe_id = pe_id;
  set_status(rg.gridlet, GridletStatus::InExec);
  rg.gridlet.start_time = kernel().now();
  const double runtime = rg.remaining_mi / eff_pe_mips(kernel().now());
  rg.forecast_finish = kernel().now() + runtime;
  rg.completion_seq =
      kernel().schedule(id(), id(), runtime, tags::COMPLETION_FORECAST);
  exec_.push_back(std::move(rg));
}

void GridResource::ss_complete(std::size_t index) {
  ResGridlet rg = std::move(exec_[index]);
  exec_.erase(exec_.begin() + static_cast<std::ptrdiff_t>(index));
  chars_.machines[rg.machine_id].pes[rg.pe_id].status = PeStatus::Free;
  rg.gridlet.processed_mi = rg.gridlet.length_mi;
  rg.remaining_mi = 0.0;
  return_to_owner(std::move(rg), GridletStatus::Success);
  if (!queue_.empty()) {
    ResGridlet next = std::move(queue_.front());
    queue_.pop_front();
    ss_allocate(std::move(next));
  }
}

// --- shared plumbing ---

void GridResource::set_status(Gridlet& g, GridletStatus next) {
  if (hook_) hook_(kernel().now(), name(), g.id, g.status, next);
  g.status = next;
}

void GridResource::return_to_owner(ResGridlet rg, GridletStatus final_status) {
  Gridlet& g = rg.gridlet;
  set_status(g, final_status);
  g.finish_time = kernel().now();
  g.wall_clock = kernel().now() - rg.arrival_time;
  g.cpu_time = g.processed_mi / chars_.pe_mips();
  try {
    double delay = network_ ? network_->send_delay(id(), kernel().now(), g.output_bytes)
                            : 0.0;
    kernel().schedule(id(), g.owner, delay, tags::GRIDLET_RETURN, g);
  } catch (const SimError&) {
    ++delivery_failures_;
    set_status(g, GridletStatus::Failed);
  }
  finished_.push_back(g);
}

double GridResource::eff_pe_mips(SimTime at) const {
  return effective_pe_mips(chars_.pe_mips(), calendar_, at, chars_.time_zone_hours);
}

}  // namespace gridecon
