#include "resource/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace gridecon {

double transfer_delay(double bytes, double baud_rate_bits_per_sec) {
  if (baud_rate_bits_per_sec <= 0.0)
    throw std::invalid_argument("transfer_delay: baud rate must be positive");
  return bytes * 8.0 / baud_rate_bits_per_sec;
}

double NetworkModel::send_delay(EntityId source, SimTime now, double bytes) {
  if (mode_ == NetworkMode::None) return 0.0;
  double start = std::max(now, busy_until_[source]);
  double done = start + transfer_delay(bytes, baud_);
  busy_until_[source] = done;
  return done - now;
}

}  // namespace gridecon
