#include <doctest.h>

#include <cmath>

#include "bioassay/efficiency.hpp"
#include "bioassay/errors.hpp"

using namespace bioassay;
using doctest::Approx;

TEST_CASE("efficiency examples") {
  CHECK(efficiency({0, 0}) == 1.0);
  CHECK(efficiency({0.3, 0.3}) == Approx(1.0));
  CHECK(efficiency({-0.3, 0.3}) == Approx(1.0));
  CHECK(efficiency({0, 0.6}) == Approx(1.5625));
  CHECK(classify({0.3, -0.3}) == EfficiencyClass::unity);
  CHECK(classify({0.5, 0.1}) == EfficiencyClass::below);
  CHECK(classify({0.1, 0.5}) == EfficiencyClass::above);
  CHECK_THROWS_AS(efficiency({1.0, 0}), InvalidInput);
  CHECK_THROWS_AS(efficiency({0, -1.0}), InvalidInput);
}

TEST_CASE("classification agrees with the formula on a grid") {
  for (double a = -0.95; a <= 0.95; a += 0.05) {
    for (double b = -0.95; b <= 0.95; b += 0.05) {
      const CorrelationPair p{a, b};
      const double e = efficiency(p);
      const EfficiencyClass c = classify(p);
      if (a * a == b * b) {
        CHECK(c == EfficiencyClass::unity);
      } else if (e < 1) {
        CHECK(c == EfficiencyClass::below);
      } else {
        CHECK(c == EfficiencyClass::above);
      }
      CHECK(efficiency({-a, b}) == e);
      CHECK(efficiency({a, -b}) == e);
    }
    CHECK(efficiency({0.0, a}) >= 1.0);
  }
}

TEST_CASE("linear simulation matches the formula") {
  const CorrelationPair pair{0.0, 0.6};
  const auto reps = linear_omission_study(5000, pair, 300, 4);
  double mean = 0.0;
  for (const auto& r : reps) mean += r.var_ratio;
  mean /= double(reps.size());
  CHECK(mean == Approx(1.5625).epsilon(0.05));
}

TEST_CASE("omission experiment is deterministic and agrees when beta2 = 0") {
  const auto a = omission_experiment(2000, {0.2, 0.7, 0.0}, 0.0, 99);
  const auto b = omission_experiment(2000, {0.2, 0.7, 0.0}, 0.0, 99);
  CHECK(a.beta1_full == b.beta1_full);
  CHECK(a.beta1_restricted == b.beta1_restricted);
  CHECK(std::fabs(a.beta1_full - a.beta1_restricted) < 3 * a.se_full);
  CHECK_THROWS_AS(omission_experiment(10, {0, 1, 1}, 0.0, 1), InvalidInput);
  CHECK_THROWS_AS(omission_experiment(100, {0, 1, 1}, 1.0, 1), InvalidInput);
}

TEST_CASE("separated draws are resampled") {
  // huge coefficients make most draws separable at small n
  const auto r = omission_experiment(50, {0.0, 40.0, 0.0}, 0.0, 5);
  CHECK(r.resamples >= 0);
  const auto study = omission_study(50, {0.0, 40.0, 0.0}, 0.0, 5, 5);
  int total = 0;
  for (const auto& s : study) total += s.resamples;
  CHECK(total > 0);
}

TEST_CASE("serial and parallel studies agree") {
  const auto s = omission_study(500, {0, 1, 1}, 0.3, 16, 8, Execution::serial);
  const auto p = omission_study(500, {0, 1, 1}, 0.3, 16, 8, Execution::parallel);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].beta1_full == p[i].beta1_full);
    CHECK(s[i].var_ratio == p[i].var_ratio);
  }
}
