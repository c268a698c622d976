#include "workload/application.hpp"

#include <stdexcept>

#include "workload/random.hpp"

namespace gridecon {

Application synthesize_application(int n_jobs, double base_mi, double positive_variation,
                                   double in_bytes, double out_bytes, std::uint64_t seed,
                                   const std::string& label) {
  if (n_jobs < 1) throw std::invalid_argument("synthesize_application: n_jobs < 1");
  if (base_mi <= 0.0) throw std::invalid_argument("synthesize_application: base_mi <= 0");

  Application app;
  app.label = label;
  app.gridlets.reserve(static_cast<std::size_t>(n_jobs));
  SimRandom rng(seed);
  for (int i = 0; i < n_jobs; ++i) {
    Gridlet g;
    g.id = i;
    g.length_mi = random_real(base_mi, 0.0, positive_variation, rng.uniform01());
    g.input_bytes = in_bytes;
    g.output_bytes = out_bytes;
    app.gridlets.push_back(g);
  }
  return app;
}

}  // namespace gridecon
