#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "workload/gridlet.hpp"

namespace gridecon {

// A task-farming job set: independent gridlets with unique ids.
struct Application {
  std::string label;
  std::vector<Gridlet> gridlets;

  double total_mi() const {
    double s = 0.0;
    for (const auto& g : gridlets) s += g.length_mi;
    return s;
  }
};

// Synthesizes n_jobs gridlets whose lengths vary from base_mi by 0 to
// positive_variation on the positive side, drawn from the seeded stream.
// Pure function of its arguments.
Application synthesize_application(int n_jobs, double base_mi, double positive_variation,
                                   double in_bytes, double out_bytes, std::uint64_t seed,
                                   const std::string& label = "app");

}  // namespace gridecon
