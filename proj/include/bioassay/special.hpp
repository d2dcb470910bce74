#pragma once

namespace bioassay::special {

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
/// Series for x < a + 1, Lentz continued fraction otherwise.
double gamma_p(double a, double x);

double normal_pdf(double z);
double normal_cdf(double z);
/// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);

/// Asymptotic Kolmogorov tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2),
/// truncated at 100 terms and clamped to [0, 1].
double kolmogorov_q(double lambda);

}  // namespace bioassay::special
