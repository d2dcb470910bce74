// Binomial likelihood fits: quantal dose-response CDFs (Fisher scoring)
// and logit regression on individual binary outcomes (Newton-Raphson).

#include <cmath>
#include <optional>

#include "bioassay/errors.hpp"
#include "bioassay/estimation.hpp"

namespace bioassay {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kScoreTol = 1e-8;
constexpr double kSeparationBound = 30.0;

// log(1 + e^z) without overflow.
double log1pexp(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double expit(double z) {
  return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

std::optional<double> quantal_loglik(const ModelDef& model, const QuantalDataset& data,
                                     const ParamVector& theta) {
  try {
    validate_params(model, theta);
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
  double ll = 0.0;
  for (const auto& g : data) {
    const double f = model.value(g.dose, theta.values());
    const auto y = static_cast<double>(g.events);
    const auto miss = static_cast<double>(g.n - g.events);
    if (y > 0) ll += y * std::log(f);
    if (miss > 0) ll += miss * std::log1p(-f);
  }
  if (std::isnan(ll) || ll == -HUGE_VAL) return std::nullopt;
  return ll;
}

struct ScoreInfo {
  Eigen::VectorXd score;
  Eigen::MatrixXd info;
};

// Score and expected information over all p parameters.
ScoreInfo quantal_score_info(const ModelDef& model, const QuantalDataset& data,
                             const ParamVector& theta) {
  const auto p = static_cast<Eigen::Index>(theta.size());
  ScoreInfo out{Eigen::VectorXd::Zero(p), Eigen::MatrixXd::Zero(p, p)};
  std::vector<double> g(theta.size());
  for (const auto& grp : data) {
    const double f = model.value(grp.dose, theta.values());
    const double v = f * (1.0 - f);
    if (!(v > 0.0)) continue;
    model.grad(grp.dose, theta.values(), g);
    const Eigen::Map<const Eigen::VectorXd> gv(g.data(), p);
    const double n = static_cast<double>(grp.n);
    out.score += ((static_cast<double>(grp.events) - n * f) / v) * gv;
    out.info.noalias() += (n / v) * gv * gv.transpose();
  }
  return out;
}

}  // namespace

FitResult fit_quantal(const ModelDef& model, const QuantalDataset& data,
                      const ParamVector& theta0) {
  if (model.family != Family::dose_response_cdf) {
    throw InvalidInput("model", model.id + " is not a dose-response CDF");
  }
  validate_params(model, theta0);
  if (data.empty()) throw InvalidInput("data", "quantal dataset is empty");
  for (const auto& g : data) {
    if (!model.input_domain.contains(g.dose)) throw InvalidInput("dose", "dose outside model domain");
    if (g.n <= 0 || g.events < 0 || g.events > g.n) {
      throw InvalidInput("events", "each group needs n > 0 and 0 <= events <= n");
    }
  }

  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < theta0.size(); ++i) {
    if (!model.is_fixed(i)) free.push_back(i);
  }
  const auto q = static_cast<Eigen::Index>(free.size());

  FitResult fit;
  fit.model = model.id;
  fit.objective_kind = "log-likelihood";
  for (std::size_t i = 0; i < theta0.size(); ++i) fit.fixed.push_back(model.is_fixed(i));

  ParamVector theta = theta0;
  auto ll = quantal_loglik(model, data, theta);
  if (!ll) throw InvalidInput("theta0", model.id + ": log-likelihood not finite at theta0");

  int iter = 0;
  for (; iter < kMaxIterations; ++iter) {
    const ScoreInfo si = quantal_score_info(model, data, theta);
    Eigen::VectorXd s(q);
    Eigen::MatrixXd a(q, q);
    for (Eigen::Index i = 0; i < q; ++i) {
      s[i] = si.score[static_cast<Eigen::Index>(free[static_cast<std::size_t>(i)])];
      for (Eigen::Index j = 0; j < q; ++j) {
        a(i, j) = si.info(static_cast<Eigen::Index>(free[static_cast<std::size_t>(i)]),
                          static_cast<Eigen::Index>(free[static_cast<std::size_t>(j)]));
      }
    }
    fit.gradient_norm = s.norm();
    if (fit.gradient_norm < kScoreTol) {
      fit.converged = true;
      break;
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-14) {
      a.diagonal().array() += 1e-8 * std::max(1.0, a.diagonal().mean());
      ldlt.compute(a);
    }
    const Eigen::VectorXd step = ldlt.solve(s);
    std::optional<double> next;
    ParamVector cand;
    double t = 1.0;
    for (int h = 0; h < 50; ++h, t *= 0.5) {
      cand = theta;
      for (Eigen::Index i = 0; i < q; ++i) cand[free[static_cast<std::size_t>(i)]] += t * step[i];
      next = quantal_loglik(model, data, cand);
      if (next && *next >= *ll) break;
      next.reset();
    }
    if (!next) {
      fit.status = "stalled";
      break;
    }
    const double change = *next - *ll;
    theta = cand;
    ll = next;
    if (change < 1e-14 * std::max(1.0, std::fabs(*ll))) {
      fit.converged = true;
      ++iter;
      break;
    }
  }
  if (!fit.converged && fit.status.empty()) fit.status = "max-iterations";
  fit.theta_hat = theta;
  fit.objective = *ll;
  fit.iterations = iter;
  fit.info = InfoMatrix{quantal_score_info(model, data, theta).info, 1.0};
  return fit;
}

FitResult fit_logit(const BinaryDataset& data, bool include_x2) {
  if (data.empty()) throw InvalidInput("data", "binary dataset is empty");
  std::size_t ones = 0;
  for (const auto& r : data) {
    if (r.y != 0 && r.y != 1) throw InvalidInput("y", "binary response must be 0 or 1");
    if (include_x2 && !r.x2) throw InvalidInput("x2", "x2 requested but missing in some rows");
    ones += static_cast<std::size_t>(r.y);
  }
  if (ones == 0 || ones == data.size()) {
    throw InvalidInput("y", "both response classes must be present");
  }

  const auto n = static_cast<Eigen::Index>(data.size());
  const Eigen::Index q = include_x2 ? 3 : 2;
  Eigen::MatrixXd x(n, q);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = data[static_cast<std::size_t>(i)];
    x(i, 0) = 1.0;
    x(i, 1) = r.x1;
    if (include_x2) x(i, 2) = *r.x2;
    y[i] = r.y;
  }
  {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() < q) {
      throw InvalidInput(include_x2 ? "x2" : "x1",
                         "design matrix is rank deficient; coefficient unidentifiable");
    }
  }

  auto loglik = [&](const Eigen::VectorXd& beta) {
    const Eigen::VectorXd eta = x * beta;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) ll += y[i] * eta[i] - log1pexp(eta[i]);
    return ll;
  };

  FitResult fit;
  fit.model = include_x2 ? "logit-full" : "logit-restricted";
  fit.objective_kind = "log-likelihood";
  fit.fixed.assign(static_cast<std::size_t>(q), false);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(q);
  double ll = loglik(beta);
  Eigen::MatrixXd h(q, q);
  int iter = 0;
  for (; iter < kMaxIterations; ++iter) {
    const Eigen::VectorXd eta = x * beta;
    Eigen::VectorXd resid(n);
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double p = expit(eta[i]);
      resid[i] = y[i] - p;
      w[i] = p * (1.0 - p);
    }
    const Eigen::VectorXd score = x.transpose() * resid;
    h = x.transpose() * w.asDiagonal() * x;
    fit.gradient_norm = score.norm();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-300) {
      throw SeparationError("logit information collapsed; classes appear separated");
    }
    const Eigen::VectorXd step = ldlt.solve(score);
    // Under separation the score vanishes while Newton steps stay O(1).
    // Score rounding grows with n, so the tolerance is per observation.
    if (fit.gradient_norm < kScoreTol * static_cast<double>(n) &&
        step.norm() < 1e-6 * (1.0 + beta.norm())) {
      fit.converged = true;
      break;
    }
    double t = 1.0;
    Eigen::VectorXd cand;
    double cand_ll = -HUGE_VAL;
    bool accepted = false;
    for (int halving = 0; halving < 50; ++halving, t *= 0.5) {
      cand = beta + t * step;
      cand_ll = loglik(cand);
      if (cand_ll >= ll) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      fit.status = "stalled";
      break;
    }
    const bool rising = cand_ll > ll;
    beta = cand;
    ll = cand_ll;
    if (rising && beta.cwiseAbs().maxCoeff() > kSeparationBound) {
      throw SeparationError("logit coefficients diverge past |beta| > 30 with rising "
                            "likelihood; complete or quasi-complete separation");
    }
  }
  if (!fit.converged && fit.status.empty()) fit.status = "max-iterations";

  fit.theta_hat = ParamVector(std::vector<double>(beta.data(), beta.data() + q));
  fit.objective = ll;
  fit.iterations = iter;
  {
    const Eigen::VectorXd eta = x * beta;
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double p = expit(eta[i]);
      w[i] = p * (1.0 - p);
    }
    fit.info = InfoMatrix{x.transpose() * w.asDiagonal() * x, 1.0};
  }
  return fit;
}

double relative_risk(double beta1) {
  if (!std::isfinite(beta1)) throw InvalidInput("beta1", "coefficient must be finite");
  return std::exp(beta1);
}

}  // namespace bioassay
