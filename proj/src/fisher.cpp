#include "bioassay/fisher.hpp"

#include <cmath>
#include <cstdint>

#include "bioassay/errors.hpp"

namespace bioassay {

namespace {

void require_sigma2(double sigma2) {
  if (!(sigma2 > 0.0) || std::isinf(sigma2)) {
    throw InvalidInput("sigma2", "variance scale must be positive and finite");
  }
}

void accumulate_outer(const ModelDef& model, double u, const ParamVector& theta,
                      Eigen::MatrixXd& acc) {
  const std::vector<double> g = gradient(model, u, theta);
  const Eigen::Map<const Eigen::VectorXd> gv(g.data(), static_cast<Eigen::Index>(g.size()));
  acc.noalias() += gv * gv.transpose();
}

struct WeibullSums {
  double d = 0.0;
  double sum_log_ev = 0.0;
  double sum_ts = 0.0;       // sum t^s
  double sum_ts_log = 0.0;   // sum t^s ln t
  double sum_ts_log2 = 0.0;  // sum t^s (ln(theta t))^2
};

WeibullSums weibull_sums(const WeibullSample& sample, double theta, double s) {
  if (!(theta > 0.0)) throw InvalidInput("theta", "Weibull scale must be positive");
  if (!(s > 0.0)) throw InvalidInput("s", "Weibull shape must be positive");
  WeibullSums w;
  w.d = static_cast<double>(sample.event_count());
  w.sum_log_ev = sample.sum_log_event_times();
  const double lt = std::log(theta);
  for (const auto& o : sample.observations()) {
    const double l = std::log(o.time);
    const double ts = std::exp(s * l);
    w.sum_ts += ts;
    w.sum_ts_log += ts * l;
    w.sum_ts_log2 += ts * (lt + l) * (lt + l);
  }
  return w;
}

}  // namespace

Eigen::VectorXd InfoMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(entries, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Eigen::Index InfoMatrix::numerical_rank(double rel_tol) const {
  const Eigen::VectorXd ev = eigenvalues();
  const double cutoff = rel_tol * entries.trace();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > cutoff) ++rank;
  }
  return rank;
}

InfoMatrix per_obs_info(const ModelDef& model, double u, const ParamVector& theta,
                        double sigma2) {
  require_sigma2(sigma2);
  const auto p = static_cast<Eigen::Index>(theta.size());
  InfoMatrix out{Eigen::MatrixXd::Zero(p, p), sigma2};
  accumulate_outer(model, u, theta, out.entries);
  out.entries /= sigma2;
  return out;
}

InfoMatrix total_info(const ModelDef& model, std::span<const double> design,
                      const ParamVector& theta, double sigma2, Execution exec) {
  require_sigma2(sigma2);
  if (design.empty()) throw InvalidInput("design", "design must contain at least one point");
  validate_params(model, theta);
  const auto p = static_cast<Eigen::Index>(theta.size());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);

  if (exec == Execution::serial) {
    for (double u : design) accumulate_outer(model, u, theta, acc);
  } else {
    const auto n = static_cast<std::int64_t>(design.size());
    std::exception_ptr failure;
#pragma omp parallel
    {
      Eigen::MatrixXd local = Eigen::MatrixXd::Zero(p, p);
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < n; ++i) {
        try {
          accumulate_outer(model, design[static_cast<std::size_t>(i)], theta, local);
        } catch (...) {
#pragma omp critical(bioassay_total_info_failure)
          if (!failure) failure = std::current_exception();
        }
      }
#pragma omp critical(bioassay_total_info_reduce)
      acc += local;
    }
    if (failure) std::rethrow_exception(failure);
  }
  return {acc / sigma2, sigma2};
}

InfoMatrix info_at_estimate(const ModelDef& model, std::span<const double> design,
                            const ParamVector& theta_hat, double s2) {
  return total_info(model, design, theta_hat, s2);
}

double weibull_loglik(const WeibullSample& sample, double theta, double s) {
  const WeibullSums w = weibull_sums(sample, theta, s);
  return w.d * (std::log(s) + s * std::log(theta)) + (s - 1.0) * w.sum_log_ev -
         std::pow(theta, s) * w.sum_ts;
}

Eigen::Vector2d weibull_score(const WeibullSample& sample, double theta, double s) {
  const WeibullSums w = weibull_sums(sample, theta, s);
  const double ts = std::pow(theta, s);
  const double lt = std::log(theta);
  Eigen::Vector2d u;
  u[0] = s * w.d / theta - s * std::pow(theta, s - 1.0) * w.sum_ts;
  u[1] = w.d / s + w.d * lt + w.sum_log_ev - ts * (lt * w.sum_ts + w.sum_ts_log);
  return u;
}

Eigen::Matrix2d weibull_observed_info(const WeibullSample& sample, double theta, double s) {
  const WeibullSums w = weibull_sums(sample, theta, s);
  const double tsm1 = std::pow(theta, s - 1.0);
  Eigen::Matrix2d m;
  m(0, 0) = -s * w.d / (theta * theta) - s * (s - 1.0) * std::pow(theta, s - 2.0) * w.sum_ts;
  m(0, 1) = w.d / theta - tsm1 * (1.0 + s * std::log(theta)) * w.sum_ts -
            s * tsm1 * w.sum_ts_log;
  m(1, 0) = m(0, 1);
  m(1, 1) = -w.d / (s * s) - std::pow(theta, s) * w.sum_ts_log2;
  return m;
}

Eigen::Matrix2d weibull_observed_information(const WeibullSample& sample, double theta,
                                             double s) {
  return -weibull_observed_info(sample, theta, s);
}

}  // namespace bioassay
