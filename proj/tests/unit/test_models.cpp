#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "bioassay/errors.hpp"
#include "bioassay/hazard.hpp"
#include "bioassay/kinetics.hpp"
#include "bioassay/models.hpp"
#include "support/sampling.hpp"

using namespace bioassay;
using doctest::Approx;

TEST_CASE("registry ids are unique and complete") {
  const std::set<std::string> expected = {
      "gompertz", "janoschek", "logistic", "bertalanffy", "tanh", "tanh3", "tanh4",
      "exp-time-power", "exp-time-power-repar", "weibull-reconstructed", "gen-logistic-i",
      "gen-logistic-ii", "one-hit", "multi-hit", "weibull-cdf", "multistage", "logit-cdf",
      "probit-cdf", "mm", "mm-two-substrate", "hill", "hill-decreasing", "mmf", "mm-parallel",
      "mm-series", "photo-pmax", "leaf-response"};
  const auto ids = model_ids();
  CHECK(ids.size() == 27);
  CHECK(std::set<std::string>(ids.begin(), ids.end()) == expected);
}

TEST_CASE("evaluate examples") {
  CHECK(evaluate(find_model("one-hit"), 0.0, {1.0}) == 0.0);
  CHECK(evaluate(find_model("mm"), 1.0, {2.0, 1.0}) == Approx(1.0).epsilon(1e-15));
  CHECK(evaluate(find_model("gompertz"), 0.0, {1, 1, 1}) == Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(evaluate(find_model("multistage"), 1.0, {0, 1, 1}) ==
        Approx(1 - std::exp(-2.0)).epsilon(1e-15));
  CHECK(evaluate(find_model("multi-hit"), 1.0, {2, 1}) ==
        Approx(1 - 2 * std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("multi-hit matches quadrature of the gamma density") {
  // Simpson on x^(k-1) e^-x / (k-1)!
  for (int k = 1; k <= 6; ++k) {
    for (double x : {0.3, 1.0, 4.0, 9.5}) {
      const int n = 20000;
      const double h = x / n;
      double s = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double t = i * h;
        const double f = std::pow(t, k - 1) * std::exp(-t) / std::tgamma(k);
        s += f * (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2));
      }
      s *= h / 3;
      CHECK(evaluate(find_model("multi-hit"), x, {double(k), 1.0}) == Approx(s).epsilon(1e-10));
    }
  }
}

TEST_CASE("domain violations name the parameter") {
  try {
    evaluate(find_model("one-hit"), 1.0, {-1.0});
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("theta") != std::string::npos);
  }
  CHECK_THROWS_AS(evaluate(find_model("multi-hit"), 1.0, {2.5, 1.0}), InvalidInput);
  CHECK_THROWS_AS(evaluate(find_model("mm"), -1.0, {1.0, 1.0}), InvalidInput);
  CHECK_THROWS_AS(evaluate(find_model("gen-logistic-ii"), 1.0, {1, 1, 1, 0}), InvalidInput);
  CHECK_THROWS_AS(evaluate(find_model("gompertz"), 1.0, {1, 1}), InvalidInput);
  CHECK_THROWS_AS(find_model("nope"), InvalidInput);
  CHECK_THROWS_AS(gradient(find_model("weibull-reconstructed"), 0.0, {1, 0, 1, 1}), InvalidInput);
}

TEST_CASE("gradient examples") {
  const auto g = gradient(find_model("exp-time-power"), 1.0, {2, 3});
  CHECK(g[0] == Approx(1.0));
  CHECK(g[1] == 0.0);
  // d/dtheta1 is +exp(-w)
  const auto w = gradient(find_model("weibull-reconstructed"), 1.0, {1, 0, 1, 1});
  CHECK(w[1] == Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(w[0] == Approx(1 - std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("gradients match central differences") {
  std::mt19937_64 rng(11);
  for (const auto& m : registry()) {
    CAPTURE(m.id);
    for (int i = 0; i < 100; ++i) {
      const auto pt = testsupport::sample_point(m, rng);
      const auto g = gradient(m, pt.u, pt.theta);
      REQUIRE(g.size() == pt.theta.size());
      CHECK(testsupport::gradient_error(g, testsupport::fd_gradient(m, pt.u, pt.theta)) <= 1e-6);
    }
  }
}

TEST_CASE("dose-response CDFs are nondecreasing and inside [0,1]") {
  std::mt19937_64 rng(3);
  for (const auto& m : registry()) {
    if (m.family != Family::dose_response_cdf) continue;
    CAPTURE(m.id);
    for (int t = 0; t < 50; ++t) {
      const auto theta = testsupport::sample_point(m, rng).theta;
      double prev = -1.0;
      for (int i = 0; i < 1000; ++i) {
        const double x = 10.0 * i / 999.0;
        const double f = evaluate(m, x, theta);
        REQUIRE(f >= 0.0);
        REQUIRE(f <= 1.0);
        REQUIRE(f >= prev);
        prev = f;
      }
    }
  }
}

TEST_CASE("model reductions") {
  const auto& one = find_model("one-hit");
  const auto& multi = find_model("multi-hit");
  const auto& mm = find_model("mm");
  const auto& hill = find_model("hill");
  const auto& hilld = find_model("hill-decreasing");
  for (double x : {0.0, 0.01, 0.5, 1.0, 3.0, 20.0}) {
    CHECK(evaluate(multi, x, {1, 1.7}) == Approx(evaluate(one, x, {1.7})).epsilon(1e-12));
    CHECK(evaluate(hill, x, {2.5, 0.7, 1.0}) == Approx(evaluate(mm, x, {2.5, 0.7})).epsilon(1e-12));
    if (x > 0) {
      for (double n : {0.5, 1.0, 2.7}) {
        const double up = evaluate(hill, x, {3.0, 1.3, n}) / 3.0;
        const double down = evaluate(hilld, x, {3.0, 1.3, n}) / 3.0;
        CHECK(up + down == Approx(1.0).epsilon(1e-12));
      }
    }
  }
  CHECK(evaluate(mm, 0.0, {2, 1}) == 0.0);
}

TEST_CASE("two-substrate model increases in each substrate") {
  const auto& m = find_model("mm-two-substrate");
  const double a = 2.0, b = 1.5;
  double prev = -1.0;
  for (double x1 = 0.0; x1 < 10; x1 += 0.25) {
    const double v = evaluate(m, x1, {a * b, 0, 0, 1 / a, 0.8});
    CHECK(v > prev);
    prev = v;
  }
  prev = -1.0;
  for (double x2 = 0.0; x2 < 10; x2 += 0.25) {
    const double v = evaluate(m, 0.8, {a * b, 0, 0, 1 / a, x2});
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("kinetic constants") {
  const auto c = KineticConstants::from_rates(1, 1, 1, 1);
  CHECK(steady_state_complex(c, 1.0) == Approx(1.0 / 3.0));
  CHECK(steady_state_complex(c, 0.0) == 0.0);
  const auto c2 = KineticConstants::from_rates(2, 1, 1, 3);
  CHECK(steady_state_velocity(c2, 5.0) == Approx(2.5));
  CHECK(evaluate(find_model("mm"), 5.0, {c2.Vmax, c2.K}) == Approx(2.5));
  CHECK_THROWS_AS(steady_state_complex(c, -1.0), InvalidInput);

  CHECK(mm_slope_at_origin(KineticConstants::from_michaelis(2, 1)) == Approx(2.0));
  CHECK(mm_slope_at_origin(KineticConstants::from_michaelis(1, 4)) == Approx(0.25));
  const auto mc = KineticConstants::from_michaelis(2, 1);
  CHECK(mm_rate_derivative(mc, 1.0) == Approx(0.5));
  const double h = 1e-5;
  const auto& mm = find_model("mm");
  const double fd = (evaluate(mm, 1 + h, {2, 1}) - evaluate(mm, 1 - h, {2, 1})) / (2 * h);
  CHECK(mm_rate_derivative(mc, 1.0) == Approx(fd).epsilon(1e-8));
  const double fd2 =
      (evaluate(mm, 1 + h, {2, 1}) - 2 * evaluate(mm, 1, {2, 1}) + evaluate(mm, 1 - h, {2, 1})) / (h * h);
  CHECK(mm_rate_second_derivative(mc, 1.0) == Approx(fd2).epsilon(1e-4));
  CHECK(input_slope(mm, 1.0, {2, 1}) == Approx(0.5));
}

TEST_CASE("parallel MM summary") {
  auto s = mm_parallel_summary(1, 1, 1, 1);
  CHECK(s.slope_at_zero == Approx(2.0));
  CHECK(s.asymptote == Approx(2.0));
  s = mm_parallel_summary(2, 1, 1, 2);
  CHECK(s.slope_at_zero == Approx(2.5));
  CHECK(s.asymptote == Approx(3.0));
  const auto& m = find_model("mm-parallel");
  CHECK(std::fabs(evaluate(m, 1e6, {2, 1, 1, 2}) - 3.0) < 1e-4);
  CHECK(input_slope(m, 0.0, {2, 1, 1, 2}) == Approx(2.5));
  CHECK_THROWS_AS(mm_parallel_summary(0, 1, 1, 1), InvalidInput);
}

TEST_CASE("Armitage-Doll and proportional hazards") {
  HazardSpec s;
  s.c = 5;
  s.k = 1;
  CHECK(hazard_ad(0.3, s) == Approx(5.0));
  CHECK(hazard_ad(7.0, s) == Approx(5.0));
  s.c = 2;
  s.k = 3;
  CHECK(hazard_ad(2.0, s) == Approx(8.0));
  s.c = 1;
  s.k = 4;
  s.t0 = 1;
  CHECK(hazard_ad(3.0, s) == Approx(8.0));
  CHECK_THROWS_AS(hazard_ad(1.0, s), InvalidInput);
  CHECK(hazard_ad(2.0, s) < hazard_ad(2.5, s));

  HazardSpec cox;
  cox.baseline = [](double t) { return 1.0 + t; };
  cox.beta = {0.0, 0.0};
  const std::vector<double> w = {1.5, -2.0};
  CHECK(hazard_cox(2.0, w, cox) == Approx(3.0));
  cox.beta = {std::log(2.0)};
  const std::vector<double> one = {1.0};
  cox.baseline = [](double) { return 1.0; };
  CHECK(hazard_cox(4.0, one, cox) == Approx(2.0));
  const std::vector<double> zero = {0.0};
  CHECK(hazard_cox(4.0, zero, cox) == Approx(1.0));
  CHECK_THROWS_AS(hazard_cox(1.0, w, cox), InvalidInput);
}

TEST_CASE("probit matches the normal CDF") {
  const auto& m = find_model("probit-cdf");
  // theta = (0, 1) at x gives Phi(x)
  CHECK(evaluate(m, 1.0, {0, 1}) == Approx(0.8413447460685429).epsilon(1e-12));
  CHECK(evaluate(m, 0.0, {0, 1}) == Approx(0.5).epsilon(1e-14));
  CHECK(evaluate(m, 2.5, {0, 1}) == Approx(0.9937903346742238).epsilon(1e-12));
}
