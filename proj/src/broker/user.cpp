#include "broker/user.hpp"

namespace gridecon {

void UserEntity::handle(const Event& ev) {
  switch (ev.tag) {
    case tags::EXPERIMENT_DONE: {
      result_ = std::any_cast<ExperimentResult>(ev.payload);
      if (stats_ != nullptr) {
        const ExperimentResult& r = *result_;
        const SimTime now = kernel().now();
        const double n = static_cast<double>(r.gridlets.size());
        stats_->record(name() + ".USER.GridletCompletionFactor", now,
                       n > 0 ? r.completed_count / n : 0.0);
        stats_->record(name() + ".USER.BudgetUtilization", now,
                       r.budget > 0.0 ? r.total_spend / r.budget : 0.0);
        stats_->record(name() + ".USER.TimeUtilization", now,
                       r.deadline > 0.0
                           ? (r.termination_time - r.start_time) / r.deadline
                           : 0.0);
      }
      kernel().schedule(id(), shutdown_, 0.0, tags::USER_DONE);
      break;
    }
    case tags::END_OF_SIMULATION:
      break;
    default:
      break;
  }
}

void ShutdownCoordinator::handle(const Event& ev) {
  switch (ev.tag) {
    case tags::USER_DONE:
      if (--waiting_ == 0) {
        kernel().schedule(id(), Kernel::kBroadcast, 0.0, tags::END_OF_SIMULATION);
      }
      break;
    case tags::END_OF_SIMULATION:
      break;
    default:
      break;
  }
}

}  // namespace gridecon
