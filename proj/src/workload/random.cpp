#include "workload/random.hpp"

#include <stdexcept>

namespace gridecon {

double random_real(double d, double f_less, double f_more, double rd) {
  if (f_less < 0.0 || f_less > 1.0 || f_more < 0.0 || f_more > 1.0) {
    throw std::invalid_argument("random_real: factors must lie in [0,1]");
  }
  if (rd < 0.0 || rd > 1.0) {
    throw std::invalid_argument("random_real: rd must lie in [0,1]");
  }
  return d * (1.0 - f_less + (f_less + f_more) * rd);
}

std::uint64_t user_stream_seed(std::uint64_t base_seed, int user_index) {
  return base_seed * 997u * (1u + static_cast<std::uint64_t>(user_index)) + 1u;
}

}  // namespace gridecon
