#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "swan/harness.hpp"
#include "swan/rates.hpp"

using namespace swan;

TEST_CASE("rate formulas on pinned inputs") {
  const std::vector<double> snrs{1.0, 3.0};
  CHECK(tdma_sum_rate(snrs) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(noma_sum_rate(snrs) == doctest::Approx(std::log2(5.0)).epsilon(1e-12));

  const std::vector<double> zeros{0.0, 0.0, 0.0};
  CHECK(tdma_sum_rate(zeros) == 0.0);
  CHECK(noma_sum_rate(zeros) == 0.0);

  const std::vector<double> one{806.6};
  CHECK(tdma_sum_rate(one) == doctest::Approx(std::log2(807.6)).epsilon(1e-12));
  CHECK(tdma_sum_rate(one) == doctest::Approx(9.658).epsilon(1e-3));
  CHECK(noma_sum_rate(one) == doctest::Approx(tdma_sum_rate(one)).epsilon(1e-14));

  CHECK_THROWS_AS(tdma_sum_rate({}), std::invalid_argument);
  CHECK_THROWS_AS(noma_sum_rate({}), std::invalid_argument);
}

TEST_CASE("noma dominates tdma and both are monotone") {
  Rng rng(17);
  for (int i = 0; i < 2000; ++i) {
    const int k = 1 + static_cast<int>(rng.next() % 6);
    std::vector<double> snrs(k);
    for (double& s : snrs) s = std::pow(10.0, rng.uniform(-3.0, 4.0));

    const double rt = tdma_sum_rate(snrs);
    const double rn = noma_sum_rate(snrs);
    CHECK(rn >= rt - 1e-12);

    std::vector<double> larger = snrs;
    larger[rng.next() % k] *= 1.5;
    CHECK(tdma_sum_rate(larger) >= rt - 1e-12);
    CHECK(noma_sum_rate(larger) >= rn - 1e-12);

    std::vector<double> shuffled = snrs;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(tdma_sum_rate(shuffled) == doctest::Approx(rt).epsilon(1e-12));
    CHECK(noma_sum_rate(shuffled) == doctest::Approx(rn).epsilon(1e-12));
  }
}
