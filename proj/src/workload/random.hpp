#pragma once

#include <cstdint>
#include <random>

namespace gridecon {

// Seeded uniform stream. MT19937-64 is pinned because the standard fixes its
// output sequence, so traces reproduce across implementations. The [0,1)
// mapping is done by hand for the same reason (uniform_real_distribution is
// not portable).
class SimRandom {
 public:
  explicit SimRandom(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

// Maps an estimated value d to an uncertain one in [d(1-f_less), d(1+f_more)]
// given a uniform draw rd in [0,1].
double random_real(double d, double f_less, double f_more, double rd);

// Derived per-user stream seed.
std::uint64_t user_stream_seed(std::uint64_t base_seed, int user_index);

}  // namespace gridecon
