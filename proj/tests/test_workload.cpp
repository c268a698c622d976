#include <doctest.h>

#include <random>
#include <stdexcept>

#include "workload/application.hpp"
#include "workload/gridlet.hpp"
#include "workload/random.hpp"

using namespace gridecon;

TEST_CASE("random_real maps the estimate through the uncertainty window") {
  CHECK(random_real(100.0, 0.0, 0.0, 0.37) == doctest::Approx(100.0));
  CHECK(random_real(100.0, 0.0, 0.1, 1.0) == doctest::Approx(110.0));
  CHECK(random_real(100.0, 0.2, 0.1, 0.5) == doctest::Approx(95.0));
  CHECK(random_real(100.0, 0.2, 0.1, 0.0) == doctest::Approx(80.0));
}

TEST_CASE("random_real rejects out-of-range factors") {
  CHECK_THROWS_AS(random_real(1.0, -0.1, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(random_real(1.0, 0.0, 1.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(random_real(1.0, 0.0, 0.0, 2.0), std::invalid_argument);
}

TEST_CASE("random_real is monotone in rd and affine in d") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double fl = u(gen), fm = u(gen);
    const double a = u(gen), b = u(gen);
    const double lo = std::min(a, b), hi = std::max(a, b);
    CHECK(random_real(10.0, fl, fm, lo) <= random_real(10.0, fl, fm, hi) + 1e-12);
    const double d = 1.0 + 9.0 * u(gen);
    const double rd = u(gen);
    CHECK(random_real(3.0 * d, fl, fm, rd) ==
          doctest::Approx(3.0 * random_real(d, fl, fm, rd)));
  }
}

TEST_CASE("a single job with zero variation has exactly the base length") {
  auto app = synthesize_application(1, 10000.0, 0.0, 0.0, 0.0, 42);
  REQUIRE(app.gridlets.size() == 1);
  CHECK(app.gridlets[0].length_mi == doctest::Approx(10000.0));
  CHECK(app.gridlets[0].id == 0);
}

TEST_CASE("200 jobs with 10% positive variation stay within [base, 1.1 base]") {
  auto app = synthesize_application(200, 10000.0, 0.10, 0.0, 0.0, 7);
  CHECK(app.gridlets.size() == 200);
  bool varied = false;
  for (const auto& g : app.gridlets) {
    CHECK(g.length_mi >= 10000.0 - 1e-9);
    CHECK(g.length_mi <= 11000.0 + 1e-9);
    varied = varied || g.length_mi > 10000.5;
  }
  CHECK(varied);
}

TEST_CASE("generation is a pure function of parameters and seed") {
  auto a = synthesize_application(50, 10000.0, 0.10, 0.0, 0.0, 99);
  auto b = synthesize_application(50, 10000.0, 0.10, 0.0, 0.0, 99);
  auto c = synthesize_application(50, 10000.0, 0.10, 0.0, 0.0, 100);
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    CHECK(a.gridlets[i].length_mi == b.gridlets[i].length_mi);
    differs = differs || a.gridlets[i].length_mi != c.gridlets[i].length_mi;
  }
  CHECK(differs);
}

TEST_CASE("job length converts to time units by the PE rating") {
  CHECK(length_in_time_units(10000.0, 100.0) == doctest::Approx(100.0));
  CHECK(length_in_time_units(10000.0, 377.0) == doctest::Approx(26.525).epsilon(1e-4));
  CHECK(length_in_time_units(0.0, 377.0) == 0.0);
}

TEST_CASE("per-user stream seeds follow the documented derivation") {
  CHECK(user_stream_seed(11, 0) == 11ull * 997ull + 1ull);
  CHECK(user_stream_seed(11, 3) == 11ull * 997ull * 4ull + 1ull);
}
