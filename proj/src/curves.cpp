#include "bioassay/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <sstream>

#include "bioassay/errors.hpp"

namespace bioassay {

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt_px(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

double parse_number(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw InvalidInput("grid", std::string("grid ") + what + " '" + s + "' is not a finite number");
  }
  return v;
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw InvalidInput("grid", "grid must look like lo:hi:n, got '" + text + "'");
  Grid g;
  g.lo = parse_number(parts[0], "lower end");
  g.hi = parse_number(parts[1], "upper end");
  const double n = parse_number(parts[2], "point count");
  if (!(g.lo < g.hi)) throw InvalidInput("grid", "grid needs lo < hi");
  if (n != std::floor(n) || n < 2 || n > 1e7) throw InvalidInput("grid", "grid point count must be an integer in [2, 1e7]");
  g.n = static_cast<std::size_t>(n);
  return g;
}

std::vector<double> grid_points(const Grid& g) {
  std::vector<double> u(g.n);
  const double step = (g.hi - g.lo) / static_cast<double>(g.n - 1);
  for (std::size_t i = 0; i < g.n; ++i) u[i] = g.lo + step * static_cast<double>(i);
  u.back() = g.hi;
  return u;
}

CurveSet sample_curves(const std::vector<std::string>& ids, const std::vector<ParamVector>& thetas,
                       const Grid& grid) {
  if (ids.empty()) throw InvalidInput("model", "no model given");
  if (!thetas.empty() && thetas.size() != ids.size()) {
    throw InvalidInput("theta", "need one parameter vector per model");
  }
  std::vector<const ModelDef*> models;
  std::vector<ParamVector> params;
  for (std::size_t m = 0; m < ids.size(); ++m) {
    const ModelDef& def = find_model(ids[m]);
    ParamVector theta = thetas.empty() ? unit_params(def) : thetas[m];
    validate_params(def, theta);
    models.push_back(&def);
    params.push_back(std::move(theta));
  }

  CurveSet set;
  set.models = ids;
  set.values.resize(ids.size());
  std::size_t dropped = 0;
  for (double u : grid_points(grid)) {
    const bool inside = std::all_of(models.begin(), models.end(),
                                    [u](const ModelDef* m) { return m->input_domain.contains(u); });
    if (!inside) {
      ++dropped;
      continue;
    }
    set.u.push_back(u);
    for (std::size_t m = 0; m < models.size(); ++m) {
      set.values[m].push_back(models[m]->value(u, params[m].values()));
    }
  }
  if (dropped > 0) {
    set.warnings.push_back("clipped " + std::to_string(dropped) +
                           " grid points outside the model input domain");
  }
  if (set.u.empty()) throw InvalidInput("grid", "grid lies entirely outside the model input domain");
  return set;
}

std::string curves_csv(const CurveSet& set) {
  std::string out = "u";
  for (const auto& m : set.models) out += "," + m;
  out += "\n";
  for (std::size_t i = 0; i < set.u.size(); ++i) {
    out += fmt(set.u[i]);
    for (const auto& col : set.values) out += "," + fmt(col[i]);
    out += "\n";
  }
  return out;
}

std::string curves_svg(const CurveSet& set) {
  constexpr double kW = 640.0;
  constexpr double kH = 400.0;
  constexpr double kPad = 40.0;
  double ylo = HUGE_VAL;
  double yhi = -HUGE_VAL;
  for (const auto& col : set.values) {
    for (double y : col) {
      if (!std::isfinite(y)) continue;
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  if (!(ylo <= yhi)) {
    ylo = 0.0;
    yhi = 1.0;
  }
  if (yhi - ylo < 1e-12) {
    ylo -= 0.5;
    yhi += 0.5;
  }
  const double xlo = set.u.front();
  const double xhi = set.u.back() > xlo ? set.u.back() : xlo + 1.0;
  auto px = [&](double x) { return kPad + (x - xlo) / (xhi - xlo) * (kW - 2 * kPad); };
  auto py = [&](double y) { return kH - kPad - (y - ylo) / (yhi - ylo) * (kH - 2 * kPad); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
  svg << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\"" << kW - kPad << "\" y2=\""
      << kH - kPad << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad << "\" y2=\"" << kH - kPad
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kPad << "\" y=\"" << kH - 10 << "\" font-size=\"11\">" << fmt(xlo)
      << "</text>\n";
  svg << "<text x=\"" << kW - kPad << "\" y=\"" << kH - 10 << "\" font-size=\"11\" text-anchor=\"end\">"
      << fmt(xhi) << "</text>\n";
  svg << "<text x=\"4\" y=\"" << kPad << "\" font-size=\"11\">" << fmt(yhi) << "</text>\n";
  svg << "<text x=\"4\" y=\"" << kH - kPad << "\" font-size=\"11\">" << fmt(ylo) << "</text>\n";
  for (std::size_t m = 0; m < set.models.size(); ++m) {
    const char* colour = kPalette[m % std::size(kPalette)];
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"" << points << "\"/>\n";
        points.clear();
      }
    };
    for (std::size_t i = 0; i < set.u.size(); ++i) {
      const double y = set.values[m][i];
      if (!std::isfinite(y)) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fmt_px(px(set.u[i])) + "," + fmt_px(py(y));
    }
    flush();
    svg << "<text x=\"" << kW - kPad << "\" y=\"" << kPad + 14.0 * static_cast<double>(m)
        << "\" font-size=\"11\" text-anchor=\"end\" fill=\"" << colour << "\">" << set.models[m]
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::span<const CurvePreset> curve_presets() {
  static const std::vector<CurvePreset> presets = {
      {"gompertz", {"gompertz"}},
      {"janoschek", {"janoschek"}},
      {"logistic", {"logistic"}},
      {"bertalanffy", {"bertalanffy"}},
      {"janoschek-vs-bertalanffy", {"janoschek", "bertalanffy"}},
      {"tanh", {"tanh"}},
      {"tanh3", {"tanh3"}},
      {"tanh4", {"tanh4"}},
      {"tanh-family", {"tanh", "tanh3", "tanh4"}},
      {"time-power", {"exp-time-power", "exp-time-power-repar"}},
      {"weibull-reconstructed", {"weibull-reconstructed"}},
      {"gen-logistic", {"gen-logistic-i", "gen-logistic-ii"}},
  };
  return presets;
}

const CurvePreset& find_preset(const std::string& name) {
  for (const auto& p : curve_presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : curve_presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw InvalidInput("preset", "unknown preset '" + name + "'; known presets: " + known);
}

}  // namespace bioassay
