#include "bioassay/survival.hpp"

#include <cmath>

#include "bioassay/errors.hpp"

namespace bioassay {

WeibullSample::WeibullSample(std::vector<SurvivalObs> obs) : obs_(std::move(obs)) {
  if (obs_.empty()) throw InvalidInput("sample", "survival sample is empty");
  for (const auto& o : obs_) {
    if (!(o.time > 0.0) || std::isinf(o.time)) {
      throw InvalidInput("times", "survival times must be positive and finite");
    }
    if (o.event) {
      ++d_;
      sum_log_events_ += std::log(o.time);
    }
  }
  if (d_ == 0) {
    throw InvalidInput("events", "sample has no events; the MLE lies on the boundary");
  }
}

WeibullSample WeibullSample::events(std::span<const double> times) {
  std::vector<SurvivalObs> obs;
  obs.reserve(times.size());
  for (double t : times) obs.push_back({t, true});
  return WeibullSample(std::move(obs));
}

}  // namespace bioassay
