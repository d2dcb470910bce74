#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bioassay/replicates.hpp"

namespace bioassay {

/// rho12 = corr(x1, x2); rhoY2_1 = partial correlation of Y and x2 given x1.
struct CorrelationPair {
  double rho12 = 0.0;
  double rhoY2_1 = 0.0;
};

/// (1 - rho12^2) / (1 - rhoY2_1^2), the variance ratio var(b1*) / var(b1)
/// of the covariate-omitting estimator against the full one.
double efficiency(const CorrelationPair& pair);

enum class EfficiencyClass { unity, below, above };
std::string class_name(EfficiencyClass c);

/// Branches compare |rho12| with |rhoY2_1|.
EfficiencyClass classify(const CorrelationPair& pair);

struct OmissionReplicate {
  double beta1_full = 0.0;
  double beta1_restricted = 0.0;
  double se_full = 0.0;
  double se_restricted = 0.0;
  /// Estimated var(b1*) / var(b1).
  double var_ratio = 0.0;
  /// Draws discarded because the logit fit hit separation.
  int resamples = 0;
};

/// One logit replicate: Gaussian (x1, x2) with correlation rho12, binary Y
/// from logit(P) = b0 + b1 x1 + b2 x2, both models fitted.
OmissionReplicate omission_experiment(std::size_t n, const std::array<double, 3>& beta,
                                      double rho12, std::uint64_t seed);

/// `replicates` independent runs; replicate i is seeded with derive_seed(seed, i).
std::vector<OmissionReplicate> omission_study(std::size_t n, const std::array<double, 3>& beta,
                                              double rho12, std::size_t replicates,
                                              std::uint64_t seed,
                                              Execution exec = Execution::serial);

/// Same comparison in the Gaussian linear model Y = x1 + b2 x2 + e with
/// b2 chosen so the partial correlation of Y and x2 given x1 is rhoY2_1.
/// Returns the estimated variance ratio and both slope estimates.
OmissionReplicate linear_omission_experiment(std::size_t n, const CorrelationPair& pair,
                                             std::uint64_t seed);

std::vector<OmissionReplicate> linear_omission_study(std::size_t n, const CorrelationPair& pair,
                                                     std::size_t replicates, std::uint64_t seed,
                                                     Execution exec = Execution::serial);

}  // namespace bioassay
