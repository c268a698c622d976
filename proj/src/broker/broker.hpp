#pragma once

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "broker/bounds.hpp"
#include "broker/broker_resource.hpp"
#include "broker/experiment.hpp"
#include "core/kernel.hpp"
#include "resource/network.hpp"

namespace gridecon {

struct BrokerOptions {
  EntityId gis = -1;
  NetworkModel* network = nullptr;
  bool cancel_at_deadline = false;
  int rate_window = 8;
};

// Economic resource broker for one user: discovers resources, derives the
// absolute deadline and budget from the relaxation factors, then repeatedly
// schedules, dispatches and receives gridlets under the selected strategy
// until everything is processed or a constraint trips.
class Broker : public Entity {
 public:
  explicit Broker(BrokerOptions opts) : opts_(opts) {}

  void handle(const Event& ev) override;

  bool done() const { return state_ == State::Done; }
  const ExperimentResult& result() const { return result_; }
  const std::vector<BrokerResource>& resources() const { return resources_; }
  SimTime resolved_deadline() const { return deadline_; }
  double resolved_budget() const { return budget_; }

 private:
  enum class State { Idle, Discovering, Querying, Running, Draining, Done };
  static constexpr EventSeq kNoTick = std::numeric_limits<EventSeq>::max();

  void on_experiment(const Event& ev);
  void on_resource_list(const Event& ev);
  void on_characteristics(const Event& ev);
  void on_return(const Event& ev);
  void on_tick(const Event& ev);

  void start_running();
  void round();
  void schedule_cost();
  void schedule_time();
  void schedule_cost_time();
  void schedule_conservative_time();
  int dispatch();
  void enter_drain();
  void finalize();
  void record_trace();

  // helpers
  Gridlet& job(int gid) { return exp_.application.gridlets[job_index_.at(gid)]; }
  double job_cost(const BrokerResource& br, const Gridlet& g) const {
    return br.cost_per_mi * g.length_mi;
  }
  double committed_spend() const { return billed_ + inflight_cost_ + assigned_cost_; }
  double rate(const BrokerResource& br) const {
    return estimate_rate(br, opts_.rate_window);
  }
  double inflight_remaining_mi(const BrokerResource& br, int gid) const;
  double inflight_backlog_mi(const BrokerResource& br) const;
  SimTime absolute_deadline() const { return exp_.start_time + deadline_; }
  int total_in_flight() const;
  int total_assigned() const;
  bool all_jobs_settled() const {
    return completed_ + canceled_ + failed_ ==
           static_cast<int>(exp_.application.gridlets.size());
  }
  void evict_all_undispatched();
  void pool_insert(int gid);
  // Assignment pass shared by the time and cost-time strategies; restricted
  // to the resource indices in `group`.
  void time_opt_fill(const std::vector<std::size_t>& group,
                     std::vector<double>& backlog_mi);
  std::vector<std::size_t> cost_order() const;

  BrokerOptions opts_;
  State state_ = State::Idle;

  Experiment exp_;
  EntityId user_ = -1;
  std::map<int, std::size_t> job_index_;

  std::vector<BrokerResource> resources_;
  std::size_t pending_replies_ = 0;

  ScheduleBounds bounds_;
  SimTime deadline_ = 0.0;  // relative to experiment start
  double budget_ = 0.0;

  std::vector<int> pool_;  // unassigned gridlet ids, ascending
  double assigned_cost_ = 0.0;
  double inflight_cost_ = 0.0;
  double billed_ = 0.0;
  int completed_ = 0;
  int canceled_ = 0;
  int failed_ = 0;
  std::map<int, int> retries_;

  EventSeq expected_tick_seq_ = kNoTick;
  ExperimentResult result_;
};

}  // namespace gridecon
