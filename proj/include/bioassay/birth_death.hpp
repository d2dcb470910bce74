#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bioassay/replicates.hpp"
#include "bioassay/survival.hpp"

namespace bioassay {

/// Linear birth-death process: at size i, births at rate i*b, deaths at i*d.
struct BirthDeathSpec {
  double b = 0.0;
  double d = 0.0;
  std::int64_t i0 = 1;
  double t_end = 1.0;
  std::uint64_t seed = 0;
};

void validate(const BirthDeathSpec& spec);

struct BdEvent {
  double t;
  std::int64_t population;
};

struct Trajectory {
  /// Starts with (0, i0); one entry per birth or death.
  std::vector<BdEvent> events;
  bool extinct = false;
  /// Stopped at the population or event guard before t_end.
  bool truncated = false;
};

constexpr std::int64_t kMaxPopulation = 100'000'000;
/// Stored events per trajectory; outcome runs are not limited by this.
constexpr std::size_t kMaxStoredEvents = 10'000'000;

/// Exact event-driven simulation seeded with spec.seed.
Trajectory simulate_bd(const BirthDeathSpec& spec);

struct BdOutcome {
  bool extinct = false;
  bool reached_threshold = false;
  /// Extinction or threshold time; t_end when neither happened.
  double time = 0.0;
  std::int64_t final_population = 0;
  bool truncated = false;
};

/// Runs one replicate without storing the path. With a threshold the run
/// stops when the population first reaches it.
BdOutcome simulate_outcome(const BirthDeathSpec& spec, std::optional<std::int64_t> threshold);

/// Replicate i uses seed derive_seed(spec.seed, i).
std::vector<BdOutcome> simulate_replicates(const BirthDeathSpec& spec, std::size_t count,
                                           std::optional<std::int64_t> threshold,
                                           Execution exec = Execution::serial);

struct HazardBin {
  double t_lo;
  double t_hi;
  double t_mid;
  double hazard;
  std::size_t events;
  double exposure;
};

/// Occurrence/exposure hazard on equal-width bins over [0, horizon]
/// (horizon defaults to the largest time). Censored observations add exposure only.
std::vector<HazardBin> empirical_hazard(std::span<const SurvivalObs> obs, std::size_t bins,
                                        std::optional<double> horizon = std::nullopt);
std::vector<HazardBin> empirical_hazard(std::span<const double> event_times, std::size_t bins,
                                        std::optional<double> horizon = std::nullopt);

struct AdHazardFit {
  double c;
  /// c / sqrt(events), from the inverse information.
  double se;
};

/// MLE of c in lambda(t) = c (t - t0)^(k-1) with k and t0 fixed:
/// c = events * k / sum (t_i - t0)^k.
AdHazardFit ad_hazard_fit(std::span<const SurvivalObs> obs, int k, double t0);
AdHazardFit ad_hazard_fit(std::span<const double> event_times, int k, double t0);

}  // namespace bioassay
