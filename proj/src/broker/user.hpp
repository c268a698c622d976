#pragma once

#include <optional>

#include "broker/experiment.hpp"
#include "core/kernel.hpp"
#include "stats/statistics.hpp"

namespace gridecon {

// Simulated grid user: hands its experiment to its broker at start time,
// records the outcome with the statistics service, then signals done.
class UserEntity : public Entity {
 public:
  UserEntity(Experiment experiment, EntityId broker, EntityId shutdown,
             StatStore* stats = nullptr, SimTime start_delay = 0.0)
      : experiment_(std::move(experiment)),
        broker_(broker),
        shutdown_(shutdown),
        stats_(stats),
        start_delay_(start_delay) {}

  // Schedules the experiment hand-off; call once after registration.
  void start() {
    kernel().schedule(id(), broker_, start_delay_, tags::EXPERIMENT, experiment_);
  }

  void handle(const Event& ev) override;

  bool finished() const { return result_.has_value(); }
  const ExperimentResult& result() const { return *result_; }

 private:
  Experiment experiment_;
  EntityId broker_;
  EntityId shutdown_;
  StatStore* stats_;
  SimTime start_delay_;
  std::optional<ExperimentResult> result_;
};

// Waits for every user to finish, then broadcasts END_OF_SIMULATION.
class ShutdownCoordinator : public Entity {
 public:
  explicit ShutdownCoordinator(int n_users) : waiting_(n_users) {}
  void handle(const Event& ev) override;

 private:
  int waiting_;
};

}  // namespace gridecon
