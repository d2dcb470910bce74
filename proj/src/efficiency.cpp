#include "bioassay/efficiency.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "bioassay/errors.hpp"
#include "bioassay/estimation.hpp"

namespace bioassay {

namespace {

constexpr int kMaxResamples = 100;

void check_rho(double rho, const char* name) {
  if (!(std::fabs(rho) < 1.0)) throw InvalidInput(name, std::string(name) + " must lie in (-1, 1)");
}

struct Covariates {
  std::vector<double> x1;
  std::vector<double> x2;
};

Covariates draw_covariates(std::size_t n, double rho12, std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  const double c = std::sqrt(1.0 - rho12 * rho12);
  Covariates out;
  out.x1.resize(n);
  out.x2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z1 = z(rng);
    const double z2 = z(rng);
    out.x1[i] = z1;
    out.x2[i] = rho12 * z1 + c * z2;
  }
  return out;
}

struct Ols {
  Eigen::VectorXd beta;
  Eigen::MatrixXd cov;
};

Ols ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const Eigen::MatrixXd xtx = x.transpose() * x;
  const Eigen::LLT<Eigen::MatrixXd> llt(xtx);
  if (llt.info() != Eigen::Success) throw ComputationError("singular regression design");
  Ols r;
  r.beta = llt.solve(x.transpose() * y);
  const double sse = (y - x * r.beta).squaredNorm();
  const double s2 = sse / static_cast<double>(x.rows() - x.cols());
  r.cov = s2 * llt.solve(Eigen::MatrixXd::Identity(x.cols(), x.cols()));
  return r;
}

}  // namespace

double efficiency(const CorrelationPair& pair) {
  check_rho(pair.rho12, "rho12");
  check_rho(pair.rhoY2_1, "rhoY2_1");
  return (1.0 - pair.rho12 * pair.rho12) / (1.0 - pair.rhoY2_1 * pair.rhoY2_1);
}

std::string class_name(EfficiencyClass c) {
  switch (c) {
    case EfficiencyClass::unity:
      return "unity";
    case EfficiencyClass::below:
      return "below";
    case EfficiencyClass::above:
      return "above";
  }
  return "unknown";
}

EfficiencyClass classify(const CorrelationPair& pair) {
  check_rho(pair.rho12, "rho12");
  check_rho(pair.rhoY2_1, "rhoY2_1");
  const double a = pair.rho12 * pair.rho12;
  const double b = pair.rhoY2_1 * pair.rhoY2_1;
  if (a == b) return EfficiencyClass::unity;
  return a > b ? EfficiencyClass::below : EfficiencyClass::above;
}

OmissionReplicate omission_experiment(std::size_t n, const std::array<double, 3>& beta,
                                      double rho12, std::uint64_t seed) {
  if (n < 50) throw InvalidInput("n", "omission experiment needs n >= 50");
  check_rho(rho12, "rho12");
  for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    const Covariates cv = draw_covariates(n, rho12, rng);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    BinaryDataset data(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double eta = beta[0] + beta[1] * cv.x1[i] + beta[2] * cv.x2[i];
      const double p = 1.0 / (1.0 + std::exp(-eta));
      data[i] = BinaryRow{cv.x1[i], cv.x2[i], unif(rng) < p ? 1 : 0};
    }
    try {
      const FitResult full = fit_logit(data, true);
      const FitResult restricted = fit_logit(data, false);
      OmissionReplicate r;
      r.beta1_full = full.theta_hat[1];
      r.beta1_restricted = restricted.theta_hat[1];
      r.se_full = full.standard_errors()[1];
      r.se_restricted = restricted.standard_errors()[1];
      r.var_ratio = (r.se_restricted * r.se_restricted) / (r.se_full * r.se_full);
      r.resamples = attempt;
      return r;
    } catch (const SeparationError&) {
      continue;
    } catch (const InvalidInput&) {
      // A draw with a single response class is resampled like separation.
      continue;
    }
  }
  throw ComputationError("omission experiment: every resample was separated");
}

std::vector<OmissionReplicate> omission_study(std::size_t n, const std::array<double, 3>& beta,
                                              double rho12, std::size_t replicates,
                                              std::uint64_t seed, Execution exec) {
  return run_replicates(
      replicates, [&](std::size_t i) { return omission_experiment(n, beta, rho12, derive_seed(seed, i)); },
      exec);
}

OmissionReplicate linear_omission_experiment(std::size_t n, const CorrelationPair& pair,
                                             std::uint64_t seed) {
  if (n < 50) throw InvalidInput("n", "omission experiment needs n >= 50");
  check_rho(pair.rho12, "rho12");
  check_rho(pair.rhoY2_1, "rhoY2_1");
  const double r2 = pair.rhoY2_1 * pair.rhoY2_1;
  const double b2 = std::copysign(
      std::sqrt(r2 / ((1.0 - r2) * (1.0 - pair.rho12 * pair.rho12))), pair.rhoY2_1);

  std::mt19937_64 rng(seed);
  const Covariates cv = draw_covariates(n, pair.rho12, rng);
  std::normal_distribution<double> noise;
  const auto rows = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd x(rows, 3);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto k = static_cast<std::size_t>(i);
    x(i, 0) = 1.0;
    x(i, 1) = cv.x1[k];
    x(i, 2) = cv.x2[k];
    y[i] = cv.x1[k] + b2 * cv.x2[k] + noise(rng);
  }
  const Ols full = ols(x, y);
  const Ols restricted = ols(x.leftCols(2), y);
  OmissionReplicate r;
  r.beta1_full = full.beta[1];
  r.beta1_restricted = restricted.beta[1];
  r.se_full = std::sqrt(full.cov(1, 1));
  r.se_restricted = std::sqrt(restricted.cov(1, 1));
  r.var_ratio = restricted.cov(1, 1) / full.cov(1, 1);
  return r;
}

std::vector<OmissionReplicate> linear_omission_study(std::size_t n, const CorrelationPair& pair,
                                                     std::size_t replicates, std::uint64_t seed,
                                                     Execution exec) {
  return run_replicates(
      replicates,
      [&](std::size_t i) { return linear_omission_experiment(n, pair, derive_seed(seed, i)); },
      exec);
}

}  // namespace bioassay
