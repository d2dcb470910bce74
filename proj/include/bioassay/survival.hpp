#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bioassay {

struct SurvivalObs {
  double time;
  bool event;  ///< false = right-censored
};

/// Right-censored sample with strictly positive times and at least one event.
class WeibullSample {
 public:
  explicit WeibullSample(std::vector<SurvivalObs> obs);
  /// All observations are events.
  static WeibullSample events(std::span<const double> times);

  std::span<const SurvivalObs> observations() const noexcept { return obs_; }
  std::size_t size() const noexcept { return obs_.size(); }
  std::size_t event_count() const noexcept { return d_; }
  /// Sum of log t over events.
  double sum_log_event_times() const noexcept { return sum_log_events_; }

 private:
  std::vector<SurvivalObs> obs_;
  std::size_t d_ = 0;
  double sum_log_events_ = 0.0;
};

}  // namespace bioassay
