#include "broker/broker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "resource/grid_resource.hpp"

namespace gridecon {

namespace {
inline double tol(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }
}  // namespace

double estimate_rate(const BrokerResource& br, int window) {
  if (br.rate_window.empty()) return br.rated_mips;
  const std::size_t n =
      std::min<std::size_t>(br.rate_window.size(), static_cast<std::size_t>(window));
  double sum = 0.0;
  for (std::size_t i = br.rate_window.size() - n; i < br.rate_window.size(); ++i)
    sum += br.rate_window[i];
  return br.n_pes * (sum / static_cast<double>(n));
}

void Broker::handle(const Event& ev) {
  switch (ev.tag) {
    case tags::EXPERIMENT:
      on_experiment(ev);
      break;
    case tags::RESOURCE_LIST:
      on_resource_list(ev);
      break;
    case tags::RESOURCE_CHARACTERISTICS:
      on_characteristics(ev);
      break;
    case tags::GRIDLET_RETURN:
      on_return(ev);
      break;
    case tags::SCHEDULE_TICK:
      on_tick(ev);
      break;
    case tags::END_OF_SIMULATION:
      state_ = State::Done;
      break;
    default:
      break;
  }
}

void Broker::on_experiment(const Event& ev) {
  if (state_ != State::Idle) throw SimError("broker already has an experiment");
  exp_ = std::any_cast<Experiment>(ev.payload);
  user_ = ev.source;
  exp_.start_time = kernel().now();
  job_index_.clear();
  for (std::size_t i = 0; i < exp_.application.gridlets.size(); ++i) {
    Gridlet& g = exp_.application.gridlets[i];
    g.owner = id();
    job_index_[g.id] = i;
  }
  state_ = State::Discovering;
  kernel().schedule(id(), opts_.gis, 0.0, tags::RESOURCE_LIST);
}

void Broker::on_resource_list(const Event& ev) {
  if (state_ != State::Discovering) return;
  const auto ids = std::any_cast<std::vector<EntityId>>(ev.payload);
  if (ids.empty()) {
    finalize();
    return;
  }
  state_ = State::Querying;
  pending_replies_ = ids.size();
  for (EntityId rid : ids)
    kernel().schedule(id(), rid, 0.0, tags::RESOURCE_CHARACTERISTICS);
}

void Broker::on_characteristics(const Event& ev) {
  if (state_ != State::Querying) return;
  const auto reply = std::any_cast<ResourceInfoReply>(ev.payload);
  resources_.push_back(BrokerResource::from_characteristics(
      reply.resource_id, reply.name, reply.characteristics));
  if (--pending_replies_ == 0) start_running();
}

void Broker::start_running() {
  // Discovery order follows the directory, but replies may interleave; keep
  // the ledger in directory (registration) order for deterministic sorts.
  std::sort(resources_.begin(), resources_.end(),
            [](const BrokerResource& a, const BrokerResource& b) { return a.id < b.id; });

  std::vector<ResourceRating> ratings;
  ratings.reserve(resources_.size());
  for (const auto& br : resources_)
    ratings.push_back(ResourceRating{br.pe_mips, br.n_pes, br.cost_per_mi});

  ScheduleBounds time_part = compute_bounds(ratings, exp_.application);
  deadline_ = determine_deadline(exp_.deadline, time_part);
  bounds_ = compute_bounds(ratings, exp_.application, deadline_);
  bounds_.t_min = time_part.t_min;
  bounds_.t_max = time_part.t_max;
  budget_ = determine_budget(exp_.budget, bounds_);

  pool_.clear();
  for (const auto& g : exp_.application.gridlets) pool_.push_back(g.id);
  std::sort(pool_.begin(), pool_.end());

  state_ = State::Running;
  round();
}

void Broker::on_return(const Event& ev) {
  Gridlet g = std::any_cast<Gridlet>(ev.payload);
  auto rit = std::find_if(resources_.begin(), resources_.end(),
                          [&](const BrokerResource& br) { return br.id == g.resource_id; });
  if (rit == resources_.end()) return;
  BrokerResource& br = *rit;

  auto fit = std::find(br.in_flight.begin(), br.in_flight.end(), g.id);
  if (fit != br.in_flight.end()) {
    br.in_flight.erase(fit);
    inflight_cost_ -= job_cost(br, g);
  }

  if (g.status == GridletStatus::Success) {
    const double bill = br.cost_per_mi * g.length_mi;
    g.cost_incurred = bill;
    br.spend += bill;
    billed_ += bill;
    ++br.completed_count;
    ++completed_;
    if (g.wall_clock > 0.0) {
      br.rate_window.push_back(g.length_mi / g.wall_clock);
      while (br.rate_window.size() > static_cast<std::size_t>(opts_.rate_window))
        br.rate_window.pop_front();
    }
  } else if (g.status == GridletStatus::Canceled) {
    const double bill = br.cost_per_mi * g.processed_mi;
    g.cost_incurred = bill;
    br.spend += bill;
    billed_ += bill;
    ++canceled_;
  } else if (g.status == GridletStatus::Failed) {
    // One retry through the pool, then the job stays FAILED.
    if (++retries_[g.id] > 1) {
      ++failed_;
    } else if (state_ == State::Running) {
      pool_insert(g.id);
    } else {
      ++failed_;
    }
  }
  exp_.application.gridlets[job_index_.at(g.id)] = g;

  if (state_ == State::Running) {
    round();
  } else if (state_ == State::Draining && total_in_flight() == 0) {
    finalize();
  }
}

void Broker::on_tick(const Event& ev) {
  if (cancel_stale(expected_tick_seq_, ev)) return;
  expected_tick_seq_ = kNoTick;
  if (state_ == State::Running) round();
}

void Broker::round() {
  const SimTime now = kernel().now();
  if (now >= absolute_deadline() - tol(deadline_) ||
      billed_ >= budget_ - tol(budget_)) {
    enter_drain();
    return;
  }

  switch (exp_.strategy) {
    case Strategy::Cost: schedule_cost(); break;
    case Strategy::Time: schedule_time(); break;
    case Strategy::CostTime: schedule_cost_time(); break;
    case Strategy::ConservativeTime: schedule_conservative_time(); break;
  }
  dispatch();
  record_trace();

  if (all_jobs_settled()) {
    finalize();
    return;
  }
  // A run with no committed work and a non-empty pool cannot make further
  // progress: rates only change on completions.
  if (total_in_flight() == 0 && total_assigned() == 0 && !pool_.empty()) {
    finalize();
    return;
  }
  const double period = std::max(0.01 * (absolute_deadline() - now), 1.0);
  expected_tick_seq_ = kernel().schedule(id(), id(), period, tags::SCHEDULE_TICK);
}

// Work left in a dispatched job, extrapolated from the measured per-PE
// delivery rate since dispatch. The next completion corrects any error.
double Broker::inflight_remaining_mi(const BrokerResource& br, int gid) const {
  const Gridlet& g = exp_.application.gridlets.at(job_index_.at(gid));
  const double per_job_rate = rate(br) / br.n_pes;
  const double done = per_job_rate * (kernel().now() - g.submit_time);
  return std::clamp(g.length_mi - done, 0.0, g.length_mi);
}

double Broker::inflight_backlog_mi(const BrokerResource& br) const {
  double mi = 0.0;
  for (int gid : br.in_flight) mi += inflight_remaining_mi(br, gid);
  return mi;
}

std::vector<std::size_t> Broker::cost_order() const {
  std::vector<std::size_t> order(resources_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const BrokerResource& x = resources_[a];
    const BrokerResource& y = resources_[b];
    if (x.cost_per_mi != y.cost_per_mi) return x.cost_per_mi < y.cost_per_mi;
    if (x.rated_mips != y.rated_mips) return x.rated_mips > y.rated_mips;
    return x.id < y.id;
  });
  return order;
}

void Broker::schedule_cost() {
  const SimTime now = kernel().now();
  const double horizon = absolute_deadline() - now;
  const auto order = cost_order();

  auto committed_mi = [&](const BrokerResource& br) {
    double mi = inflight_backlog_mi(br);
    for (int gid : br.assigned) mi += job(gid).length_mi;
    return mi;
  };

  // Trim jobs beyond what each resource can now deliver by the deadline.
  for (std::size_t idx : order) {
    BrokerResource& br = resources_[idx];
    const double cap = rate(br) * horizon;
    double mi = committed_mi(br);
    while (mi > cap + tol(cap) && !br.assigned.empty()) {
      const int gid = br.assigned.back();
      br.assigned.pop_back();
      const Gridlet& g = job(gid);
      assigned_cost_ -= job_cost(br, g);
      mi -= g.length_mi;
      pool_insert(gid);
    }
  }

  // Fill cheapest first, while the per-job cost fits the remaining budget.
  for (std::size_t idx : order) {
    BrokerResource& br = resources_[idx];
    const double cap = rate(br) * horizon;
    double mi = committed_mi(br);
    for (auto it = pool_.begin(); it != pool_.end();) {
      const Gridlet& g = job(*it);
      if (mi + g.length_mi <= cap + tol(cap) &&
          committed_spend() + job_cost(br, g) <= budget_ + tol(budget_)) {
        br.assigned.push_back(*it);
        assigned_cost_ += job_cost(br, g);
        mi += g.length_mi;
        it = pool_.erase(it);
      } else {
        ++it;
      }
    }
    if (!pool_.empty()) continue;
    // Spare capacity on a cheap resource claims undispatched work from the
    // dearest resources.
    for (auto dit = order.rbegin(); dit != order.rend(); ++dit) {
      BrokerResource& dear = resources_[*dit];
      if (dear.cost_per_mi <= br.cost_per_mi) break;
      while (!dear.assigned.empty()) {
        const int gid = dear.assigned.back();
        const Gridlet& g = job(gid);
        if (mi + g.length_mi > cap + tol(cap)) break;
        dear.assigned.pop_back();
        assigned_cost_ -= job_cost(dear, g);
        br.assigned.push_back(gid);
        assigned_cost_ += job_cost(br, g);
        mi += g.length_mi;
      }
    }
  }
}

void Broker::time_opt_fill(const std::vector<std::size_t>& group,
                           std::vector<double>& backlog_mi) {
  const SimTime now = kernel().now();
  std::vector<int> todo;
  todo.swap(pool_);
  for (std::size_t i = 0; i < todo.size(); ++i) {
    const int gid = todo[i];
    const Gridlet& g = job(gid);
    const double remaining_jobs = static_cast<double>(todo.size() - i + pool_.size());
    const double bpj = (budget_ - committed_spend()) / remaining_jobs;

    std::size_t best = resources_.size();
    double best_finish = std::numeric_limits<double>::infinity();
    for (std::size_t idx : group) {
      BrokerResource& br = resources_[idx];
      if (job_cost(br, g) > bpj + tol(bpj)) continue;
      const double finish = now + (backlog_mi[idx] + g.length_mi) / rate(br);
      if (finish > absolute_deadline() + tol(deadline_)) continue;
      if (finish < best_finish) {
        best_finish = finish;
        best = idx;
      }
    }
    if (best == resources_.size()) {
      pool_.push_back(gid);
      continue;
    }
    BrokerResource& br = resources_[best];
    br.assigned.push_back(gid);
    assigned_cost_ += job_cost(br, g);
    backlog_mi[best] += g.length_mi;
  }
}

void Broker::schedule_time() {
  evict_all_undispatched();
  std::vector<double> backlog(resources_.size(), 0.0);
  std::vector<std::size_t> all(resources_.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (std::size_t idx : all) backlog[idx] = inflight_backlog_mi(resources_[idx]);
  time_opt_fill(all, backlog);
}

void Broker::schedule_cost_time() {
  evict_all_undispatched();
  std::vector<double> backlog(resources_.size(), 0.0);
  for (std::size_t idx = 0; idx < resources_.size(); ++idx)
    backlog[idx] = inflight_backlog_mi(resources_[idx]);

  // Groups of equal cost per MI, cheapest group first; the time strategy
  // fills within each group.
  const auto order = cost_order();
  std::size_t i = 0;
  while (i < order.size() && !pool_.empty()) {
    std::size_t j = i;
    std::vector<std::size_t> group;
    while (j < order.size() && resources_[order[j]].cost_per_mi ==
                                   resources_[order[i]].cost_per_mi) {
      group.push_back(order[j]);
      ++j;
    }
    time_opt_fill(group, backlog);
    i = j;
  }
}

void Broker::schedule_conservative_time() {
  evict_all_undispatched();
  const SimTime now = kernel().now();
  std::vector<double> backlog(resources_.size(), 0.0);
  std::vector<int> fill_count(resources_.size(), 0);
  for (std::size_t idx = 0; idx < resources_.size(); ++idx) {
    backlog[idx] = inflight_backlog_mi(resources_[idx]);
    fill_count[idx] = static_cast<int>(resources_[idx].in_flight.size());
  }

  // Fill the affordable partition in inverse proportion to per-job completion
  // time; every job still unassigned keeps a budget-per-job reserve. When the
  // affordable resources saturate, the reserve is recomputed and previously
  // dear resources may join.
  for (;;) {
    if (pool_.empty()) return;
    const double bpj =
        (budget_ - committed_spend()) / static_cast<double>(pool_.size());
    std::vector<int> todo;
    todo.swap(pool_);
    bool progress = false;
    for (int gid : todo) {
      const Gridlet& g = job(gid);
      std::size_t best = resources_.size();
      double best_key = std::numeric_limits<double>::infinity();
      for (std::size_t idx = 0; idx < resources_.size(); ++idx) {
        BrokerResource& br = resources_[idx];
        if (job_cost(br, g) > bpj + tol(bpj)) continue;
        const double finish = now + (backlog[idx] + g.length_mi) / rate(br);
        if (finish > absolute_deadline() + tol(deadline_)) continue;
        const double key = (fill_count[idx] + 1) / rate(br);
        if (key < best_key) {
          best_key = key;
          best = idx;
        }
      }
      if (best == resources_.size()) {
        pool_.push_back(gid);
        continue;
      }
      BrokerResource& br = resources_[best];
      br.assigned.push_back(gid);
      assigned_cost_ += job_cost(br, g);
      backlog[best] += g.length_mi;
      ++fill_count[best];
      progress = true;
    }
    if (!progress) return;
  }
}

int Broker::dispatch() {
  if (kernel().now() >= absolute_deadline()) return 0;
  int sent = 0;
  for (auto& br : resources_) {
    while (!br.assigned.empty() &&
           static_cast<int>(br.in_flight.size()) < br.n_pes) {
      const int gid = br.assigned.front();
      br.assigned.pop_front();
      Gridlet& g = job(gid);
      assigned_cost_ -= job_cost(br, g);
      try {
        const double delay =
            opts_.network
                ? opts_.network->send_delay(id(), kernel().now(), g.input_bytes)
                : 0.0;
        g.status = GridletStatus::Ready;
        g.submit_time = kernel().now();
        kernel().schedule(id(), br.id, delay, tags::GRIDLET_SUBMIT, g);
        br.in_flight.push_back(gid);
        inflight_cost_ += job_cost(br, g);
        ++br.dispatched_count;
        ++sent;
      } catch (const SimError&) {
        // The destination no longer exists; same retry budget as a bounce.
        g.status = GridletStatus::Failed;
        if (++retries_[gid] > 1) {
          ++failed_;
        } else {
          pool_insert(gid);
        }
      }
    }
  }
  return sent;
}

void Broker::enter_drain() {
  if (state_ == State::Draining || state_ == State::Done) return;
  state_ = State::Draining;
  evict_all_undispatched();
  if (opts_.cancel_at_deadline) {
    for (auto& br : resources_)
      for (int gid : br.in_flight)
        kernel().schedule(id(), br.id, 0.0, tags::GRIDLET_CANCEL, gid);
  }
  record_trace();
  if (total_in_flight() == 0) finalize();
}

void Broker::finalize() {
  if (state_ == State::Done) return;
  state_ = State::Done;
  exp_.end_time = kernel().now();

  result_.completed_count = completed_;
  result_.total_spend = billed_;
  result_.start_time = exp_.start_time;
  result_.termination_time = kernel().now();
  result_.deadline = deadline_;
  result_.budget = budget_;
  result_.bounds = bounds_;
  result_.per_resource.clear();
  for (const auto& br : resources_) {
    result_.per_resource.push_back(ResourceUsage{br.id, br.name, br.dispatched_count,
                                                 br.completed_count, br.spend,
                                                 rate(br)});
  }
  result_.gridlets = exp_.application.gridlets;
  if (user_ >= 0)
    kernel().schedule(id(), user_, 0.0, tags::EXPERIMENT_DONE, result_);
}

void Broker::record_trace() {
  for (const auto& br : resources_) {
    result_.trace.push_back(ScheduleTraceRow{kernel().now(), br.id,
                                             br.committed_jobs(), br.completed_count,
                                             br.spend});
  }
}

int Broker::total_in_flight() const {
  int n = 0;
  for (const auto& br : resources_) n += static_cast<int>(br.in_flight.size());
  return n;
}

int Broker::total_assigned() const {
  int n = 0;
  for (const auto& br : resources_) n += static_cast<int>(br.assigned.size());
  return n;
}

void Broker::evict_all_undispatched() {
  for (auto& br : resources_) {
    while (!br.assigned.empty()) {
      const int gid = br.assigned.back();
      br.assigned.pop_back();
      assigned_cost_ -= job_cost(br, job(gid));
      pool_insert(gid);
    }
  }
}

void Broker::pool_insert(int gid) {
  pool_.insert(std::upper_bound(pool_.begin(), pool_.end(), gid), gid);
}

}  // namespace gridecon
