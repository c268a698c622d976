#pragma once

#include <map>

#include "core/event.hpp"

namespace gridecon {

// Time to push a payload through a link of the given speed.
double transfer_delay(double bytes, double baud_rate_bits_per_sec);

enum class NetworkMode { None, Baud };

// Idealized I/O channels: each entity owns one output link of a shared baud
// rate; transfers from the same entity serialize behind each other. No
// topology and no cross-link contention. Mode None disables delays entirely.
class NetworkModel {
 public:
  NetworkModel() = default;
  NetworkModel(NetworkMode mode, double baud_rate) : mode_(mode), baud_(baud_rate) {}

  // Delay, as seen from `now`, until a transfer of `bytes` from `source`
  // completes; reserves the link for that span.
  double send_delay(EntityId source, SimTime now, double bytes);

  NetworkMode mode() const { return mode_; }

 private:
  NetworkMode mode_ = NetworkMode::None;
  double baud_ = kDefaultBaudRate;
  std::map<EntityId, SimTime> busy_until_;
};

}  // namespace gridecon
