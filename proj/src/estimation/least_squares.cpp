// Gauss-Newton least squares with step halving and Levenberg damping.

#include <cmath>
#include <optional>

#include "bioassay/errors.hpp"
#include "bioassay/estimation.hpp"

namespace bioassay {

namespace {

std::vector<std::size_t> free_indices(const ModelDef& model, std::size_t p) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < p; ++i) {
    if (!model.is_fixed(i)) idx.push_back(i);
  }
  return idx;
}

struct Evaluation {
  Eigen::VectorXd residual;
  double sse;
};

// nullopt when theta leaves the parameter domain.
std::optional<Evaluation> residuals(const ModelDef& model, const RegressionDataset& data,
                                    const ParamVector& theta) {
  try {
    validate_params(model, theta);
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
  Evaluation ev{Eigen::VectorXd(static_cast<Eigen::Index>(data.size())), 0.0};
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = data[i].y - model.value(data[i].u, theta.values());
    if (!std::isfinite(r)) return std::nullopt;
    ev.residual[static_cast<Eigen::Index>(i)] = r;
  }
  ev.sse = ev.residual.squaredNorm();
  return ev;
}

Eigen::MatrixXd jacobian(const ModelDef& model, const RegressionDataset& data,
                         const ParamVector& theta, const std::vector<std::size_t>& free) {
  Eigen::MatrixXd j(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(free.size()));
  std::vector<double> g(theta.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    model.grad(data[i].u, theta.values(), g);
    for (std::size_t k = 0; k < free.size(); ++k) {
      j(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = g[free[k]];
    }
  }
  return j;
}

ParamVector apply_step(const ParamVector& theta, const std::vector<std::size_t>& free,
                       const Eigen::VectorXd& step, double t) {
  ParamVector out = theta;
  for (std::size_t k = 0; k < free.size(); ++k) {
    out[free[k]] += t * step[static_cast<Eigen::Index>(k)];
  }
  return out;
}

}  // namespace

FitResult fit_least_squares(const ModelDef& model, const RegressionDataset& data,
                            const ParamVector& theta0, const LeastSquaresOptions& opts) {
  validate_params(model, theta0);
  if (data.empty()) throw InvalidInput("data", "regression dataset is empty");
  if (data.size() < theta0.size()) {
    throw InvalidInput("data", model.id + ": need at least " + std::to_string(theta0.size()) +
                                   " observations, got " + std::to_string(data.size()));
  }
  if (model.gradient_domain) {
    for (const auto& pt : data) {
      if (!model.gradient_domain->contains(pt.u)) {
        throw InvalidInput("u", model.id + ": input " + std::to_string(pt.u) +
                                    " outside " + model.gradient_domain->describe());
      }
    }
  }
  for (const auto& pt : data) validate(model, pt.u, theta0);

  const std::vector<std::size_t> free = free_indices(model, theta0.size());
  FitResult fit;
  fit.model = model.id;
  fit.objective_kind = "sse";
  for (std::size_t i = 0; i < theta0.size(); ++i) fit.fixed.push_back(model.is_fixed(i));

  ParamVector theta = theta0;
  auto initial = residuals(model, data, theta);
  if (!initial) throw InvalidInput("theta0", model.id + ": residuals not finite at theta0");
  Evaluation current = std::move(*initial);

  bool damped = false;
  double lambda = 1e-3;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    const Eigen::MatrixXd j = jacobian(model, data, theta, free);
    const Eigen::VectorXd g = j.transpose() * current.residual;
    fit.gradient_norm = g.norm();
    if (fit.gradient_norm < opts.gradient_tol) {
      fit.converged = true;
      break;
    }

    std::optional<Evaluation> next;
    ParamVector candidate;
    if (!damped) {
      const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(j);
      if (qr.rank() < static_cast<Eigen::Index>(free.size())) {
        damped = true;
      } else {
        const Eigen::VectorXd step = qr.solve(current.residual);
        double t = 1.0;
        for (int h = 0; h < 40; ++h, t *= 0.5) {
          candidate = apply_step(theta, free, step, t);
          next = residuals(model, data, candidate);
          if (next && next->sse <= current.sse) break;
          next.reset();
        }
        if (!next) damped = true;
      }
    }
    if (damped && !next) {
      const Eigen::MatrixXd a = j.transpose() * j;
      const double scale = std::max(1.0, a.diagonal().mean());
      while (!next && lambda < 1e12) {
        Eigen::MatrixXd damped_a = a;
        damped_a.diagonal().array() += lambda * scale;
        const Eigen::VectorXd step = damped_a.ldlt().solve(g);
        double t = 1.0;
        for (int h = 0; h < 20; ++h, t *= 0.5) {
          candidate = apply_step(theta, free, step, t);
          next = residuals(model, data, candidate);
          if (next && next->sse <= current.sse) break;
          next.reset();
        }
        if (next) {
          lambda = std::max(1e-12, lambda / 10.0);
        } else {
          lambda *= 10.0;
        }
      }
      if (!next) {
        fit.status = "singular";
        break;
      }
    }

    const double rel = (current.sse - next->sse) / std::max(current.sse, 1e-300);
    theta = candidate;
    current = std::move(*next);
    if (current.sse == 0.0 || rel < opts.rel_sse_tol) {
      fit.converged = true;
      ++iter;
      fit.gradient_norm =
          (jacobian(model, data, theta, free).transpose() * current.residual).norm();
      break;
    }
  }
  if (!fit.converged && fit.status.empty()) fit.status = "max-iterations";

  fit.theta_hat = theta;
  fit.objective = current.sse;
  fit.iterations = iter;
  const std::size_t n = data.size();
  const std::size_t p = free.size();
  if (n > p) {
    fit.s2 = current.sse / static_cast<double>(n - p);
    if (*fit.s2 > 0.0) {
      std::vector<double> design;
      design.reserve(n);
      for (const auto& pt : data) design.push_back(pt.u);
      fit.info = info_at_estimate(model, design, theta, *fit.s2);
    }
  }
  return fit;
}

}  // namespace bioassay
