#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bioassay {

/// Ordered real parameters of a model. Validation against a model's
/// declared domain happens at the call boundary (evaluate/gradient).
class ParamVector {
 public:
  ParamVector() = default;
  ParamVector(std::initializer_list<double> values) : values_(values) {}
  explicit ParamVector(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const ParamVector&, const ParamVector&) = default;

 private:
  std::vector<double> values_;
};

/// One side of an interval; absent means unbounded.
struct Bound {
  double value;
  bool strict;
};

struct Interval {
  std::optional<Bound> lo;
  std::optional<Bound> hi;

  static Interval all() { return {}; }
  static Interval positive() { return {Bound{0.0, true}, std::nullopt, std::nullopt}; }
  static Interval nonnegative() { return {Bound{0.0, false}, std::nullopt, std::nullopt}; }
  static Interval nonzero();

  bool contains(double x) const;
  std::string describe() const;

  /// Extra exclusion of a single point (used for gen-logistic-ii's theta3 != 0).
  std::optional<double> excluded;
};

struct ParamSpec {
  std::string name;
  Interval domain;
  /// Structural integer parameter (multi-hit k). Held fixed by the fitters;
  /// its gradient component is reported as 0.
  bool integer = false;
};

enum class Family { growth, dose_response_cdf, kinetics, hazard };

std::string_view family_name(Family f);

using ValueFn = double (*)(double u, std::span<const double> theta);
using GradientFn = void (*)(double u, std::span<const double> theta, std::span<double> out);

/// Registry entry: a mean-response model with its analytic gradient.
struct ModelDef {
  std::string id;
  std::string name;
  Family family;
  std::vector<ParamSpec> params;
  Interval input_domain;
  /// Inputs where the gradient exists; defaults to input_domain when empty.
  std::optional<Interval> gradient_domain;
  ValueFn value;
  GradientFn grad;
  /// df/du, provided for the dose-response CDFs and the single-substrate
  /// Michaelis-Menten entries.
  ValueFn input_slope = nullptr;
  /// Polynomial-degree models (multistage) accept any length >= params.size();
  /// the extra coefficients reuse the last ParamSpec.
  bool variadic = false;

  std::size_t arity() const noexcept { return params.size(); }
  bool accepts_arity(std::size_t n) const noexcept {
    return variadic ? n >= params.size() : n == params.size();
  }
  const ParamSpec& param(std::size_t i) const {
    return i < params.size() ? params[i] : params.back();
  }
  bool is_fixed(std::size_t i) const { return param(i).integer; }
};

/// Immutable registry of every model, in a stable order.
std::span<const ModelDef> registry();

/// Throws InvalidInput listing the known ids when `id` is unknown.
const ModelDef& find_model(std::string_view id);
std::vector<std::string> model_ids();

/// Throws InvalidInput naming the offending parameter or input.
void validate(const ModelDef& model, double u, const ParamVector& theta);
void validate_params(const ModelDef& model, const ParamVector& theta);

/// f(u, theta). Result is +-inf only when the closed form overflows double.
double evaluate(const ModelDef& model, double u, const ParamVector& theta);

/// Analytic gradient of f with respect to theta (length = theta.size()).
std::vector<double> gradient(const ModelDef& model, double u, const ParamVector& theta);

/// df/du; throws InvalidInput when the model does not provide it.
double input_slope(const ModelDef& model, double u, const ParamVector& theta);

/// theta with every component equal to 1 (default for curve sketches).
ParamVector unit_params(const ModelDef& model);

}  // namespace bioassay
