#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bioassay/models.hpp"

namespace bioassay {

struct Grid {
  double lo = 0.01;
  double hi = 10.0;
  std::size_t n = 500;
};

/// "lo:hi:n" with lo < hi and n >= 2.
Grid parse_grid(const std::string& text);
std::vector<double> grid_points(const Grid& g);

struct CurveSet {
  std::vector<std::string> models;
  std::vector<double> u;
  /// values[m][i] = f_m(u[i]); +-inf where the closed form overflows.
  std::vector<std::vector<double>> values;
  std::vector<std::string> warnings;
};

/// Samples each model on the shared grid. thetas is either empty (all
/// parameters 1) or one ParamVector per model. Grid points outside any
/// model's input domain are dropped with a warning.
CurveSet sample_curves(const std::vector<std::string>& ids, const std::vector<ParamVector>& thetas,
                       const Grid& grid);

/// "u,<id>..." header then one row per grid point, %.12g formatting.
std::string curves_csv(const CurveSet& set);
/// Static SVG: axes plus one polyline per model over the finite values.
std::string curves_svg(const CurveSet& set);

/// Reference sketches drawn with every parameter equal to 1.
struct CurvePreset {
  std::string name;
  std::vector<std::string> models;
};
std::span<const CurvePreset> curve_presets();

/// Lookup by preset name; throws InvalidInput listing the presets.
const CurvePreset& find_preset(const std::string& name);

}  // namespace bioassay
