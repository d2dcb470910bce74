#include "bioassay/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bioassay/errors.hpp"

namespace bioassay::io {

using nlohmann::json;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  std::vector<std::string> header() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line_no_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (!trim(line).empty()) return split(trim(line));
    }
    throw InvalidInput("input", "empty file: expected a header line");
  }

  // False at end of input; blank lines are skipped.
  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (trim(line).empty()) continue;
      fields = split(trim(line));
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("input", "line " + std::to_string(line_no_) + ": " + what);
  }

  double real(const std::string& s, const char* column) const {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size() || !std::isfinite(v)) {
      fail(std::string("column ") + column + ": '" + s + "' is not a finite number");
    }
    return v;
  }

  std::int64_t integer(const std::string& s, const char* column) const {
    const double v = real(s, column);
    if (v != std::floor(v) || std::fabs(v) > 9e15) {
      fail(std::string("column ") + column + ": '" + s + "' is not an integer");
    }
    return static_cast<std::int64_t>(v);
  }

  std::size_t line() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

void expect_header(const std::vector<std::string>& got, const std::vector<std::string>& want) {
  if (got != want) {
    std::string w;
    for (const auto& s : want) w += (w.empty() ? "" : ",") + s;
    std::string g;
    for (const auto& s : got) g += (g.empty() ? "" : ",") + s;
    throw InvalidInput("input", "line 1: expected header '" + w + "', got '" + g + "'");
  }
}

std::ifstream open(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("input", "cannot open '" + path + "'");
  return f;
}

void need_rows(bool any, const char* what) {
  if (!any) throw InvalidInput("input", std::string(what) + " file has a header but no data rows");
}

std::string code_of(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number() || j.is_boolean()) return j.dump();
  throw InvalidInput("polyptych", "category codes must be strings or numbers");
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput("polyptych", where + ": missing \"" + key + "\"");
  }
  return j.at(key);
}

}  // namespace

std::string schema_name(CsvSchema s) {
  switch (s) {
    case CsvSchema::regression:
      return "regression";
    case CsvSchema::quantal:
      return "quantal";
    case CsvSchema::survival:
      return "survival";
    case CsvSchema::binary:
      return "binary";
  }
  return "unknown";
}

CsvSchema detect_schema(std::istream& in) {
  CsvReader r(in);
  const auto h = r.header();
  using V = std::vector<std::string>;
  if (h == V{"u", "y"}) return CsvSchema::regression;
  if (h == V{"dose", "n", "events"}) return CsvSchema::quantal;
  if (h == V{"time", "event"}) return CsvSchema::survival;
  if (h == V{"x1", "y"} || h == V{"x1", "x2", "y"}) return CsvSchema::binary;
  throw InvalidInput("input", "line 1: unrecognised header; expected u,y | dose,n,events | time,event | x1[,x2],y");
}

CsvSchema detect_schema_file(const std::string& path) {
  auto f = open(path);
  return detect_schema(f);
}

RegressionDataset read_regression(std::istream& in) {
  CsvReader r(in);
  expect_header(r.header(), {"u", "y"});
  RegressionDataset out;
  std::vector<std::string> f;
  while (r.next(f)) {
    if (f.size() != 2) r.fail("expected 2 fields, got " + std::to_string(f.size()));
    out.push_back({r.real(f[0], "u"), r.real(f[1], "y")});
  }
  need_rows(!out.empty(), "regression");
  return out;
}

QuantalDataset read_quantal(std::istream& in) {
  CsvReader r(in);
  expect_header(r.header(), {"dose", "n", "events"});
  QuantalDataset out;
  std::vector<std::string> f;
  while (r.next(f)) {
    if (f.size() != 3) r.fail("expected 3 fields, got " + std::to_string(f.size()));
    QuantalGroup g{r.real(f[0], "dose"), r.integer(f[1], "n"), r.integer(f[2], "events")};
    if (g.dose < 0) r.fail("dose must be >= 0");
    if (g.n <= 0) r.fail("n must be positive");
    if (g.events < 0 || g.events > g.n) r.fail("events must lie in [0, n]");
    out.push_back(g);
  }
  need_rows(!out.empty(), "quantal");
  return out;
}

std::vector<SurvivalObs> read_survival(std::istream& in) {
  CsvReader r(in);
  expect_header(r.header(), {"time", "event"});
  std::vector<SurvivalObs> out;
  std::vector<std::string> f;
  while (r.next(f)) {
    if (f.size() != 2) r.fail("expected 2 fields, got " + std::to_string(f.size()));
    const double t = r.real(f[0], "time");
    const auto e = r.integer(f[1], "event");
    if (!(t > 0)) r.fail("time must be positive");
    if (e != 0 && e != 1) r.fail("event must be 0 or 1");
    out.push_back({t, e == 1});
  }
  need_rows(!out.empty(), "survival");
  return out;
}

BinaryDataset read_binary(std::istream& in) {
  CsvReader r(in);
  const auto h = r.header();
  const bool has_x2 = h.size() == 3;
  if (has_x2) {
    expect_header(h, {"x1", "x2", "y"});
  } else {
    expect_header(h, {"x1", "y"});
  }
  BinaryDataset out;
  std::vector<std::string> f;
  while (r.next(f)) {
    if (f.size() != h.size()) r.fail("expected " + std::to_string(h.size()) + " fields, got " + std::to_string(f.size()));
    BinaryRow row{r.real(f[0], "x1"), std::nullopt, 0};
    if (has_x2) row.x2 = r.real(f[1], "x2");
    const auto y = r.integer(f.back(), "y");
    if (y != 0 && y != 1) r.fail("y must be 0 or 1");
    row.y = static_cast<int>(y);
    out.push_back(row);
  }
  need_rows(!out.empty(), "binary");
  return out;
}

RegressionDataset read_regression_file(const std::string& path) {
  auto f = open(path);
  return read_regression(f);
}
QuantalDataset read_quantal_file(const std::string& path) {
  auto f = open(path);
  return read_quantal(f);
}
std::vector<SurvivalObs> read_survival_file(const std::string& path) {
  auto f = open(path);
  return read_survival(f);
}
BinaryDataset read_binary_file(const std::string& path) {
  auto f = open(path);
  return read_binary(f);
}

ParamVector parse_theta(const std::string& text) {
  std::vector<double> v;
  for (const auto& s : split(trim(text))) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size() || !std::isfinite(x)) {
      throw InvalidInput("theta", "theta component '" + s + "' is not a finite number");
    }
    v.push_back(x);
  }
  if (v.empty()) throw InvalidInput("theta", "theta is empty");
  return ParamVector(std::move(v));
}

namespace {

Polyptych polyptych_from(const json& doc) {
  std::vector<CategoryAttribute> attributes;
  for (const auto& a : member(doc, "attributes", "document")) {
    CategoryAttribute attr;
    attr.name = member(a, "name", "attribute").get<std::string>();
    for (const auto& c : member(a, "domain", "attribute '" + attr.name + "'")) attr.domain.push_back(code_of(c));
    attributes.push_back(std::move(attr));
  }
  auto find_attr = [&](const std::string& name) -> const CategoryAttribute& {
    for (const auto& a : attributes) {
      if (a.name == name) return a;
    }
    throw InvalidInput("polyptych", "table refers to undeclared attribute '" + name + "'");
  };

  const json& var = member(doc, "variable", "document");
  SummaryVariable variable{member(var, "name", "variable").get<std::string>(),
                           parse_variable_type(member(var, "type", "variable").get<std::string>())};

  Polyptych p;
  std::size_t ti = 0;
  for (const auto& t : member(doc, "tables", "document")) {
    ++ti;
    const std::string where = "table " + std::to_string(ti);
    std::vector<CategoryAttribute> scheme;
    for (const auto& n : member(t, "scheme", where)) scheme.push_back(find_attr(n.get<std::string>()));
    SummaryTable table(scheme, variable);
    std::vector<double> cells(table.size(), 0.0);
    for (const auto& c : member(t, "cells", where)) {
      std::vector<std::string> codes;
      for (const auto& k : member(c, "coords", where + " cell")) codes.push_back(code_of(k));
      const json& value = member(c, "value", where + " cell");
      if (!value.is_number()) throw InvalidInput("polyptych", where + ": cell value must be a number");
      cells[table.flat_index_of_codes(codes)] = value.get<double>();
    }
    p.tables.emplace_back(scheme, variable, std::move(cells));
  }
  if (doc.contains("structural_zeros")) {
    for (const auto& z : doc.at("structural_zeros")) {
      std::vector<std::string> codes;
      for (const auto& k : z) codes.push_back(code_of(k));
      p.structural_zeros.push_back(std::move(codes));
    }
  }
  return p;
}

}  // namespace

Polyptych read_polyptych(std::istream& in) {
  try {
    return polyptych_from(json::parse(in));
  } catch (const json::exception& e) {
    throw InvalidInput("polyptych", std::string("malformed polyptych JSON: ") + e.what());
  }
}

Polyptych read_polyptych_file(const std::string& path) {
  auto f = open(path);
  return read_polyptych(f);
}

json table_json(const SummaryTable& t) {
  json scheme = json::array();
  for (const auto& a : t.scheme()) scheme.push_back(a.name);
  json cells = json::array();
  for (std::size_t c = 0; c < t.size(); ++c) {
    const auto idx = t.unflatten(c);
    json coords = json::array();
    for (std::size_t k = 0; k < idx.size(); ++k) coords.push_back(t.scheme()[k].domain[idx[k]]);
    cells.push_back({{"coords", coords}, {"value", t.cells()[c]}});
  }
  return {{"scheme", scheme},
          {"variable", {{"name", t.variable().name}, {"type", type_name(t.variable().type)}}},
          {"cells", cells}};
}

json polyptych_json(const Polyptych& p) {
  json attrs = json::array();
  for (const auto& a : p.universal_scheme()) attrs.push_back({{"name", a.name}, {"domain", a.domain}});
  json tables = json::array();
  for (const auto& t : p.tables) {
    json tj = table_json(t);
    tj.erase("variable");
    tables.push_back(tj);
  }
  json doc = {{"attributes", attrs}, {"tables", tables}, {"structural_zeros", p.structural_zeros}};
  if (!p.tables.empty()) {
    doc["variable"] = {{"name", p.tables[0].variable().name},
                       {"type", type_name(p.tables[0].variable().type)}};
  }
  return doc;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json info_json(const InfoMatrix& info) {
  return {{"sigma2", info.sigma2}, {"entries", matrix_json(info.entries)}};
}

json fit_json(const FitResult& fit) {
  json j;
  j["model"] = fit.model;
  j["theta_hat"] = std::vector<double>(fit.theta_hat.begin(), fit.theta_hat.end());
  j["objective"] = fit.objective;
  j["objective_kind"] = fit.objective_kind;
  j["s2"] = fit.s2 ? json(*fit.s2) : json(nullptr);
  j["info"] = fit.info ? info_json(*fit.info) : json(nullptr);
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["gradient_norm"] = fit.gradient_norm;
  if (!fit.status.empty()) j["status"] = fit.status;
  if (fit.info) {
    try {
      j["standard_errors"] = fit.standard_errors();
    } catch (const ComputationError&) {
      j["standard_errors"] = nullptr;
    }
  }
  return j;
}

}  // namespace bioassay::io
