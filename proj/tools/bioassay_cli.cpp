// bioassay: batch front end over the library.
// Exit codes: 0 success, 2 invalid input, 3 computational failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bioassay/birth_death.hpp"
#include "bioassay/curves.hpp"
#include "bioassay/efficiency.hpp"
#include "bioassay/errors.hpp"
#include "bioassay/estimation.hpp"
#include "bioassay/fisher.hpp"
#include "bioassay/io.hpp"
#include "bioassay/lowdose.hpp"
#include "bioassay/models.hpp"
#include "bioassay/tables.hpp"

using namespace bioassay;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kComputeError = 3;

struct Options {
  std::string input;
  std::string model;
  std::string theta;
  std::string preset;
  double p = 0.0;
  std::string risk;
  double confidence = 0.95;
  double rho12 = 0.0;
  double rhoy21 = 0.0;
  std::optional<std::uint64_t> seed;
  std::size_t bins = 0;
  std::string grid;
  std::string format;
  std::string out;
  std::string design;
  double sigma2 = 1.0;
  bool integer = false;
  std::string classify;
  double b = 1.0;
  double d = 1.0;
  std::int64_t i0 = 1;
  double t_end = 1.0;
  std::size_t replicates = 0;
  std::int64_t threshold = 0;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("BIOASSAY_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidInput("seed", std::string("BIOASSAY_SEED='") + env + "' is not an unsigned integer");
  }
  return 0;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidInput("out", "cannot write '" + o.out + "'");
  f << text;
}

void emit_json(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw InvalidInput(flag, std::string("--") + flag + " is required");
}

ParamVector theta_or_unit(const Options& o, const ModelDef& m) {
  ParamVector theta = o.theta.empty() ? unit_params(m) : io::parse_theta(o.theta);
  validate_params(m, theta);
  return theta;
}

int cmd_fit(const Options& o) {
  require(o.input, "input");
  require(o.model, "model");
  if (o.model.rfind("logit", 0) != 0 || o.model == "logit-cdf") find_model(o.model);
  const io::CsvSchema schema = io::detect_schema_file(o.input);
  FitResult fit;
  switch (schema) {
    case io::CsvSchema::survival: {
      if (o.model != "weibull-cdf") {
        throw InvalidInput("model", "survival data (time,event) are fitted with weibull-cdf, not " + o.model);
      }
      fit = weibull_mle(WeibullSample(io::read_survival_file(o.input)));
      break;
    }
    case io::CsvSchema::quantal: {
      const ModelDef& m = find_model(o.model);
      fit = fit_quantal(m, io::read_quantal_file(o.input), theta_or_unit(o, m));
      break;
    }
    case io::CsvSchema::regression: {
      const ModelDef& m = find_model(o.model);
      fit = fit_least_squares(m, io::read_regression_file(o.input), theta_or_unit(o, m));
      break;
    }
    case io::CsvSchema::binary: {
      bool include_x2 = true;
      if (o.model == "logit-restricted") {
        include_x2 = false;
      } else if (o.model != "logit" && o.model != "logit-full") {
        throw InvalidInput("model", "binary data (x1[,x2],y) are fitted with logit, logit-full or logit-restricted");
      }
      const BinaryDataset data = io::read_binary_file(o.input);
      include_x2 = include_x2 && data.front().x2.has_value();
      if (o.model == "logit-full" && !include_x2) throw InvalidInput("x2", "logit-full needs an x2 column");
      fit = fit_logit(data, include_x2);
      break;
    }
  }
  json j = io::fit_json(fit);
  j["schema"] = io::schema_name(schema);
  emit_json(o, j);
  return fit.converged ? kOk : kComputeError;
}

int cmd_curves(const Options& o) {
  std::vector<std::string> ids;
  if (!o.preset.empty()) {
    if (!o.model.empty()) throw InvalidInput("preset", "give either --preset or --model, not both");
    ids = find_preset(o.preset).models;
  } else {
    require(o.model, "model");
    ids = split_list(o.model);
  }
  std::vector<ParamVector> thetas;
  if (!o.theta.empty()) {
    if (ids.size() != 1) throw InvalidInput("theta", "--theta applies to a single model; comparisons use theta = 1");
    thetas.push_back(io::parse_theta(o.theta));
  }
  const Grid grid = o.grid.empty() ? Grid{} : parse_grid(o.grid);
  const CurveSet set = sample_curves(ids, thetas, grid);
  for (const auto& w : set.warnings) std::cerr << "warning: " << w << "\n";
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format == "csv") {
    emit(o, curves_csv(set));
  } else if (format == "svg") {
    emit(o, curves_svg(set));
  } else {
    throw InvalidInput("format", "curves supports csv or svg");
  }
  return kOk;
}

int cmd_lp(const Options& o) {
  require(o.model, "model");
  PercentileQuery q;
  q.model = o.model;
  q.theta = theta_or_unit(o, find_model(o.model));
  q.p = o.p;
  if (!o.risk.empty()) q.risk = parse_risk(o.risk);

  json j;
  j["model"] = q.model;
  j["p"] = q.p;
  j["confidence"] = o.confidence;
  if (o.input.empty()) {
    j["theta"] = std::vector<double>(q.theta.begin(), q.theta.end());
    j["risk_type"] = risk_name(resolve_risk(q));
    j["Lp"] = percentile(q);
    j["vsd"] = nullptr;
  } else {
    const FitResult fit = fit_quantal(find_model(q.model), io::read_quantal_file(o.input), q.theta);
    if (!fit.converged) throw ComputationError(q.model + ": quantal fit did not converge (" + fit.status + ")");
    const VsdResult v = vsd_upper_limit(q, fit, o.confidence);
    j["theta"] = std::vector<double>(fit.theta_hat.begin(), fit.theta_hat.end());
    j["risk_type"] = risk_name(v.risk);
    j["Lp"] = v.lp;
    j["vsd"] = v.vsd;
    j["se"] = v.se;
    j["z"] = v.z;
    j["clamped"] = v.clamped;
    j["vsd_method"] = "delta method lower bound on L_p";
  }
  emit_json(o, j);
  return kOk;
}

int cmd_eff(const Options& o) {
  const CorrelationPair pair{o.rho12, o.rhoy21};
  json j = {{"rho12", pair.rho12},
            {"rhoY2_1", pair.rhoY2_1},
            {"eff", efficiency(pair)},
            {"class", class_name(classify(pair))}};
  emit_json(o, j);
  return kOk;
}

int cmd_fisher(const Options& o) {
  require(o.model, "model");
  const ModelDef& m = find_model(o.model);
  json j;
  j["model"] = m.id;
  if (!o.input.empty() && io::detect_schema_file(o.input) == io::CsvSchema::survival) {
    if (m.id != "weibull-cdf") throw InvalidInput("model", "survival data pair with weibull-cdf");
    const ParamVector t = io::parse_theta(o.theta);
    if (t.size() != 2) throw InvalidInput("theta", "weibull observed information needs theta,s");
    const WeibullSample sample(io::read_survival_file(o.input));
    j["theta"] = std::vector<double>(t.begin(), t.end());
    j["second_derivatives"] = io::matrix_json(weibull_observed_info(sample, t[0], t[1]));
    j["observed_information"] = io::matrix_json(weibull_observed_information(sample, t[0], t[1]));
    emit_json(o, j);
    return kOk;
  }
  const ParamVector theta = theta_or_unit(o, m);
  std::vector<double> design;
  if (!o.input.empty()) {
    for (const auto& pt : io::read_regression_file(o.input)) design.push_back(pt.u);
  } else {
    require(o.design, "design");
    const ParamVector points = io::parse_theta(o.design);
    design.assign(points.begin(), points.end());
  }
  const InfoMatrix info = total_info(m, design, theta, o.sigma2);
  j["theta"] = std::vector<double>(theta.begin(), theta.end());
  j["design_points"] = design.size();
  j["info"] = io::info_json(info);
  const Eigen::VectorXd ev = info.eigenvalues();
  j["eigenvalues"] = std::vector<double>(ev.data(), ev.data() + ev.size());
  j["rank"] = info.numerical_rank();
  emit_json(o, j);
  return kOk;
}

int cmd_tables(const Options& o) {
  require(o.input, "input");
  const Polyptych p = io::read_polyptych_file(o.input);
  json j;
  const ConsistencyVerdict v = check_consistency(p);
  j["consistent"] = v.consistent;
  j["witness"] = v.witness ? io::table_json(*v.witness) : json(nullptr);
  j["certificate"] = v.certificate ? json(*v.certificate) : json(nullptr);
  std::vector<double> totals;
  for (const auto& t : p.tables) totals.push_back(t.grand_total());
  j["grand_totals"] = totals;
  j["homogeneous"] = p.tables.size() >= 2 ? json(is_homogeneous(p.tables)) : json(true);
  if (o.integer) {
    const auto w = find_integer_witness(p);
    j["integer_witness"] = w ? io::table_json(*w) : json(nullptr);
  }
  if (!o.classify.empty()) {
    j["classification"] = empty_kind_name(classify_empty(p, split_list(o.classify)));
  }
  emit_json(o, j);
  return kOk;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int cmd_simulate_bd(const Options& o) {
  BirthDeathSpec spec{o.b, o.d, o.i0, o.t_end, resolve_seed(o)};
  const std::optional<std::int64_t> threshold =
      o.threshold > 0 ? std::optional<std::int64_t>(o.threshold) : std::nullopt;
  std::string csv;
  if (o.replicates == 0) {
    const Trajectory tr = simulate_bd(spec);
    if (tr.truncated) std::cerr << "warning: trajectory truncated at the population/event guard\n";
    csv = "t,population\n";
    for (const auto& e : tr.events) csv += fmt(e.t) + "," + std::to_string(e.population) + "\n";
    emit(o, csv);
    return tr.truncated ? kComputeError : kOk;
  }
  const auto outcomes = simulate_replicates(spec, o.replicates, threshold, Execution::parallel);
  const std::string thr = threshold ? std::to_string(*threshold) : "none";
  if (o.bins > 0) {
    // Event = extinction (no threshold) or first passage to the threshold.
    std::vector<SurvivalObs> obs;
    for (const auto& r : outcomes) obs.push_back({r.time, threshold ? r.reached_threshold : r.extinct});
    csv = "t_lo,t_hi,t_mid,hazard,events,exposure,threshold\n";
    for (const auto& bin : empirical_hazard(obs, o.bins, spec.t_end)) {
      csv += fmt(bin.t_lo) + "," + fmt(bin.t_hi) + "," + fmt(bin.t_mid) + "," + fmt(bin.hazard) + "," +
             std::to_string(bin.events) + "," + fmt(bin.exposure) + "," + thr + "\n";
    }
  } else {
    csv = "replicate,outcome,time,population,threshold\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& r = outcomes[i];
      const char* what = r.truncated ? "truncated"
                         : r.extinct ? "extinct"
                         : r.reached_threshold ? "threshold"
                                               : "survived";
      csv += std::to_string(i) + "," + what + "," + fmt(r.time) + "," + std::to_string(r.final_population) +
             "," + thr + "\n";
    }
  }
  emit(o, csv);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dose-response, Fisher information and bioassay utilities"};
  app.require_subcommand(1);
  Options o;

  auto add_seed = [&](CLI::App* c) {
    c->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { o.seed = s; },
                                          "RNG seed (falls back to BIOASSAY_SEED, then 0)");
  };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "Output path (default stdout)"); };

  auto* fit = app.add_subcommand("fit", "Fit a model to a CSV dataset");
  fit->add_option("--input", o.input, "CSV: u,y | dose,n,events | time,event | x1[,x2],y")->required();
  fit->add_option("--model", o.model, "Model id (logit/logit-restricted for binary data)")->required();
  fit->add_option("--theta", o.theta, "Starting values, comma separated");
  add_out(fit);

  auto* curves = app.add_subcommand("curves", "Sample model curves on a grid");
  curves->add_option("--model", o.model, "Model id or comma list for an overlay");
  curves->add_option("--preset", o.preset, "Named reference sketch");
  curves->add_option("--theta", o.theta, "Parameters (single model; default all 1)");
  curves->add_option("--grid", o.grid, "lo:hi:n (default 0.01:10:500)");
  curves->add_option("--format", o.format, "csv or svg");
  add_out(curves);

  auto* lp = app.add_subcommand("lp", "Low-dose percentile and virtually safe dose");
  lp->add_option("--model", o.model, "Dose-response CDF id")->required();
  lp->add_option("--theta", o.theta, "Parameters, or starting values with --input");
  lp->add_option("--p", o.p, "Response probability in (0,1)")->required();
  lp->add_option("--risk", o.risk, "total or extra");
  lp->add_option("--confidence", o.confidence, "Confidence for the VSD, in [0.5,1)");
  lp->add_option("--input", o.input, "Quantal CSV (dose,n,events) to fit before the VSD");
  add_out(lp);

  auto* eff = app.add_subcommand("eff", "Relative efficiency of omitting a covariate");
  eff->add_option("--rho12", o.rho12, "corr(x1, x2)")->required();
  eff->add_option("--rhoy21", o.rhoy21, "partial corr(Y, x2 | x1)")->required();
  add_out(eff);

  auto* fisher = app.add_subcommand("fisher", "Fisher information over a design");
  fisher->add_option("--model", o.model, "Model id")->required();
  fisher->add_option("--theta", o.theta, "Parameters (default all 1)");
  fisher->add_option("--design", o.design, "Comma list of inputs u");
  fisher->add_option("--input", o.input, "CSV u,y (design = u column) or time,event for weibull-cdf");
  fisher->add_option("--sigma2", o.sigma2, "Residual variance (default 1)");
  add_out(fisher);

  auto* tables = app.add_subcommand("tables", "Polyptych consistency check");
  tables->add_option("--input", o.input, "Polyptych JSON")->required();
  tables->add_flag("--integer", o.integer, "Also search for an integer witness");
  tables->add_option("--classify", o.classify, "Comma list of universal codes to classify");
  add_out(tables);

  auto* bd = app.add_subcommand("simulate-bd", "Linear birth-death simulation");
  bd->add_option("--b", o.b, "Per-cell birth rate");
  bd->add_option("--d", o.d, "Per-cell death rate");
  bd->add_option("--i0", o.i0, "Initial population");
  bd->add_option("--t-end", o.t_end, "Horizon");
  bd->add_option("--replicates", o.replicates, "Replicate count (0 = one trajectory)");
  bd->add_option("--threshold", o.threshold, "Onset population (0 = record extinction)");
  bd->add_option("--bins", o.bins, "Hazard bins over [0, t-end] for the replicate times");
  add_seed(bd);
  add_out(bd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*fit) return cmd_fit(o);
    if (*curves) return cmd_curves(o);
    if (*lp) return cmd_lp(o);
    if (*eff) return cmd_eff(o);
    if (*fisher) return cmd_fisher(o);
    if (*tables) return cmd_tables(o);
    if (*bd) return cmd_simulate_bd(o);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ComputationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputeError;
  }
  return kInputError;
}
