#include "bioassay/birth_death.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bioassay/errors.hpp"

namespace bioassay {

namespace {

// Advances the process one event. Returns false when the next event falls after t_end.
struct Stepper {
  const BirthDeathSpec& spec;
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> unif{0.0, 1.0};
  double t = 0.0;
  std::int64_t n;

  explicit Stepper(const BirthDeathSpec& s, std::uint64_t seed) : spec(s), rng(seed), n(s.i0) {}

  bool step() {
    const double rate = static_cast<double>(n) * (spec.b + spec.d);
    const double dt = std::exponential_distribution<double>(rate)(rng);
    if (t + dt > spec.t_end) {
      t = spec.t_end;
      return false;
    }
    t += dt;
    const bool birth = unif(rng) * (spec.b + spec.d) < spec.b;
    n += birth ? 1 : -1;
    return true;
  }
};

std::vector<SurvivalObs> as_events(std::span<const double> times) {
  std::vector<SurvivalObs> obs;
  obs.reserve(times.size());
  for (double t : times) obs.push_back({t, true});
  return obs;
}

}  // namespace

void validate(const BirthDeathSpec& spec) {
  if (!(spec.b >= 0.0) || !std::isfinite(spec.b)) throw InvalidInput("b", "birth rate must be finite and >= 0");
  if (!(spec.d >= 0.0) || !std::isfinite(spec.d)) throw InvalidInput("d", "death rate must be finite and >= 0");
  if (spec.b == 0.0 && spec.d == 0.0) throw InvalidInput("b", "birth and death rates cannot both be zero");
  if (spec.i0 < 1) throw InvalidInput("i0", "initial population must be >= 1");
  if (spec.i0 > kMaxPopulation) throw InvalidInput("i0", "initial population exceeds 1e8");
  if (!(spec.t_end > 0.0) || !std::isfinite(spec.t_end)) throw InvalidInput("t_end", "horizon must be finite and > 0");
}

Trajectory simulate_bd(const BirthDeathSpec& spec) {
  validate(spec);
  Trajectory out;
  out.events.push_back({0.0, spec.i0});
  Stepper s(spec, spec.seed);
  while (s.n > 0) {
    if (s.n >= kMaxPopulation || out.events.size() >= kMaxStoredEvents) {
      out.truncated = true;
      break;
    }
    if (!s.step()) break;
    out.events.push_back({s.t, s.n});
  }
  out.extinct = s.n == 0;
  return out;
}

BdOutcome simulate_outcome(const BirthDeathSpec& spec, std::optional<std::int64_t> threshold) {
  validate(spec);
  if (threshold && *threshold < 1) throw InvalidInput("threshold", "threshold must be >= 1");
  Stepper s(spec, spec.seed);
  BdOutcome out;
  if (threshold && spec.i0 >= *threshold) {
    out.reached_threshold = true;
    out.final_population = spec.i0;
    return out;
  }
  while (s.n > 0) {
    if (s.n >= kMaxPopulation) {
      out.truncated = true;
      break;
    }
    if (!s.step()) break;
    if (threshold && s.n >= *threshold) {
      out.reached_threshold = true;
      break;
    }
  }
  out.extinct = s.n == 0;
  out.time = s.t;
  out.final_population = s.n;
  return out;
}

std::vector<BdOutcome> simulate_replicates(const BirthDeathSpec& spec, std::size_t count,
                                           std::optional<std::int64_t> threshold, Execution exec) {
  validate(spec);
  return run_replicates(
      count,
      [&](std::size_t i) {
        BirthDeathSpec rep = spec;
        rep.seed = derive_seed(spec.seed, i);
        return simulate_outcome(rep, threshold);
      },
      exec);
}

std::vector<HazardBin> empirical_hazard(std::span<const SurvivalObs> obs, std::size_t bins,
                                        std::optional<double> horizon) {
  if (obs.empty()) throw InvalidInput("times", "no event times");
  if (bins < 1) throw InvalidInput("bins", "need at least one bin");
  std::size_t events = 0;
  double tmax = 0.0;
  for (const auto& o : obs) {
    if (!(o.time >= 0.0) || !std::isfinite(o.time)) throw InvalidInput("times", "times must be finite and >= 0");
    events += o.event ? 1 : 0;
    tmax = std::max(tmax, o.time);
  }
  if (events == 0) throw InvalidInput("times", "all times are censored");
  const double h = horizon.value_or(tmax);
  if (!(h > 0.0)) throw InvalidInput("horizon", "horizon must be > 0");

  const double width = h / static_cast<double>(bins);
  std::vector<HazardBin> out(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    out[k].t_lo = width * static_cast<double>(k);
    out[k].t_hi = k + 1 == bins ? h : width * static_cast<double>(k + 1);
    out[k].t_mid = 0.5 * (out[k].t_lo + out[k].t_hi);
    out[k].events = 0;
    out[k].exposure = 0.0;
  }
  for (const auto& o : obs) {
    for (auto& bin : out) {
      if (o.time <= bin.t_lo) break;
      bin.exposure += std::min(o.time, bin.t_hi) - bin.t_lo;
    }
    if (o.event && o.time <= h) {
      auto k = static_cast<std::size_t>(o.time / width);
      out[std::min(k, bins - 1)].events += 1;
    }
  }
  for (auto& bin : out) {
    bin.hazard = bin.exposure > 0.0 ? static_cast<double>(bin.events) / bin.exposure : 0.0;
  }
  return out;
}

std::vector<HazardBin> empirical_hazard(std::span<const double> event_times, std::size_t bins,
                                        std::optional<double> horizon) {
  const auto obs = as_events(event_times);
  return empirical_hazard(obs, bins, horizon);
}

AdHazardFit ad_hazard_fit(std::span<const SurvivalObs> obs, int k, double t0) {
  if (obs.empty()) throw InvalidInput("times", "no event times");
  if (k < 1) throw InvalidInput("k", "number of stages must be >= 1");
  if (!(t0 >= 0.0) || !std::isfinite(t0)) throw InvalidInput("t0", "lag t0 must be finite and >= 0");
  double sum = 0.0;
  std::size_t events = 0;
  for (const auto& o : obs) {
    if (!(o.time > t0) || !std::isfinite(o.time)) {
      throw InvalidInput("times", "every time must be finite and exceed t0");
    }
    sum += std::pow(o.time - t0, k);
    events += o.event ? 1 : 0;
  }
  if (events == 0) throw InvalidInput("times", "all times are censored");
  const double c = static_cast<double>(events) * k / sum;
  return AdHazardFit{c, c / std::sqrt(static_cast<double>(events))};
}

AdHazardFit ad_hazard_fit(std::span<const double> event_times, int k, double t0) {
  const auto obs = as_events(event_times);
  return ad_hazard_fit(obs, k, t0);
}

}  // namespace bioassay
