#include <algorithm>
#include <cmath>
#include <sstream>

#include "bioassay/errors.hpp"
#include "catalog_parts.hpp"

namespace bioassay {

Interval Interval::nonzero() {
  Interval iv;
  iv.excluded = 0.0;
  return iv;
}

bool Interval::contains(double x) const {
  if (std::isnan(x)) return false;
  if (excluded && x == *excluded) return false;
  if (lo && (lo->strict ? !(x > lo->value) : !(x >= lo->value))) return false;
  if (hi && (hi->strict ? !(x < hi->value) : !(x <= hi->value))) return false;
  return true;
}

std::string Interval::describe() const {
  std::ostringstream os;
  os << (lo && lo->strict ? "(" : "[");
  if (lo) os << lo->value; else os << "-inf";
  os << ", ";
  if (hi) os << hi->value; else os << "inf";
  os << (hi && hi->strict ? ")" : "]");
  if (excluded) os << " \\ {" << *excluded << "}";
  return os.str();
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::growth: return "growth";
    case Family::dose_response_cdf: return "dose-response-cdf";
    case Family::kinetics: return "kinetics";
    case Family::hazard: return "hazard";
  }
  return "unknown";
}

std::span<const ModelDef> registry() {
  static const std::vector<ModelDef> models = [] {
    std::vector<ModelDef> all = detail::growth_models();
    for (auto& m : detail::dose_response_models()) all.push_back(std::move(m));
    for (auto& m : detail::kinetic_models()) all.push_back(std::move(m));
    return all;
  }();
  return models;
}

std::vector<std::string> model_ids() {
  std::vector<std::string> ids;
  for (const auto& m : registry()) ids.push_back(m.id);
  return ids;
}

const ModelDef& find_model(std::string_view id) {
  for (const auto& m : registry()) {
    if (m.id == id) return m;
  }
  std::string known;
  for (const auto& m : registry()) {
    if (!known.empty()) known += ", ";
    known += m.id;
  }
  throw InvalidInput("model", "unknown model '" + std::string(id) + "'; known models: " + known);
}

void validate_params(const ModelDef& model, const ParamVector& theta) {
  if (!model.accepts_arity(theta.size())) {
    std::ostringstream os;
    os << model.id << ": expected " << (model.variadic ? "at least " : "") << model.arity()
       << " parameters, got " << theta.size();
    throw InvalidInput("theta", os.str());
  }
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const ParamSpec& spec = model.param(i);
    const std::string name = i < model.arity() ? spec.name : "theta" + std::to_string(i);
    if (!spec.domain.contains(theta[i])) {
      std::ostringstream os;
      os << model.id << ": parameter " << name << " = " << theta[i] << " outside "
         << spec.domain.describe();
      throw InvalidInput(name, os.str());
    }
    if (spec.integer && theta[i] != std::floor(theta[i])) {
      std::ostringstream os;
      os << model.id << ": parameter " << name << " must be an integer, got " << theta[i];
      throw InvalidInput(name, os.str());
    }
  }
}

void validate(const ModelDef& model, double u, const ParamVector& theta) {
  validate_params(model, theta);
  if (!model.input_domain.contains(u)) {
    std::ostringstream os;
    os << model.id << ": input u = " << u << " outside " << model.input_domain.describe();
    throw InvalidInput("u", os.str());
  }
}

double evaluate(const ModelDef& model, double u, const ParamVector& theta) {
  validate(model, u, theta);
  return model.value(u, theta.values());
}

std::vector<double> gradient(const ModelDef& model, double u, const ParamVector& theta) {
  validate(model, u, theta);
  if (model.gradient_domain && !model.gradient_domain->contains(u)) {
    std::ostringstream os;
    os << model.id << ": gradient undefined at u = " << u << " (requires u in "
       << model.gradient_domain->describe() << ")";
    throw InvalidInput("u", os.str());
  }
  std::vector<double> g(theta.size());
  model.grad(u, theta.values(), g);
  return g;
}

double input_slope(const ModelDef& model, double u, const ParamVector& theta) {
  if (model.input_slope == nullptr) {
    throw InvalidInput("model", model.id + ": no input derivative available");
  }
  validate(model, u, theta);
  return model.input_slope(u, theta.values());
}

ParamVector unit_params(const ModelDef& model) {
  return ParamVector(std::vector<double>(model.arity(), 1.0));
}

}  // namespace bioassay
