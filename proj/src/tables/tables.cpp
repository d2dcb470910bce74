#include "bioassay/tables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "bioassay/errors.hpp"
#include "bioassay/simplex.hpp"
#include "bioassay/special.hpp"

namespace bioassay {

namespace {

bool is_integer_type(VariableType t) {
  return t == VariableType::integer || t == VariableType::nonneg_integer;
}

bool is_nonneg_type(VariableType t) {
  return t == VariableType::nonneg_real || t == VariableType::nonneg_integer;
}

void check_value(const SummaryVariable& v, double x) {
  if (!std::isfinite(x)) throw InvalidInput(v.name, v.name + ": cell values must be finite");
  if (is_nonneg_type(v.type) && x < 0.0) {
    throw InvalidInput(v.name, v.name + ": negative value " + std::to_string(x) + " for " +
                                   type_name(v.type) + " variable");
  }
  if (is_integer_type(v.type) && x != std::round(x)) {
    throw InvalidInput(v.name, v.name + ": non-integer value " + std::to_string(x) + " for " +
                                   type_name(v.type) + " variable");
  }
}

std::size_t product_of_domains(const std::vector<CategoryAttribute>& scheme, std::size_t cap) {
  std::size_t n = 1;
  for (const auto& a : scheme) {
    if (a.domain.empty()) throw InvalidInput(a.name, "attribute '" + a.name + "' has an empty domain");
    if (n > cap / a.domain.size()) return cap + 1;
    n *= a.domain.size();
  }
  return n;
}

std::string describe_cell(const SummaryTable& t, std::size_t flat) {
  const auto idx = t.unflatten(flat);
  std::string s = "(";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) s += ", ";
    s += t.scheme()[k].name + "=" + t.scheme()[k].domain[idx[k]];
  }
  return s + ")";
}

// Universal table flattened into LP columns (structural zeros removed) and
// one equality row per cell of every input table.
struct System {
  std::vector<CategoryAttribute> universal;
  std::size_t universal_cells = 0;
  std::vector<std::size_t> column_cell;        // LP column -> universal flat index
  std::vector<long> cell_column;               // universal flat index -> LP column or -1
  std::vector<std::pair<std::size_t, std::size_t>> row_label;  // (table, table cell)
  std::vector<std::vector<std::size_t>> column_rows;           // rows touched by each column
  Eigen::VectorXd b;
};

void check_homogeneous_variables(const std::vector<SummaryTable>& tables) {
  for (std::size_t i = 1; i < tables.size(); ++i) {
    if (!(tables[i].variable() == tables[0].variable())) {
      throw InvalidInput("tables", "inhomogeneous polyptych: table " + std::to_string(i + 1) +
                                       " summarises '" + tables[i].variable().name + "' (" +
                                       type_name(tables[i].variable().type) + "), table 1 '" +
                                       tables[0].variable().name + "' (" +
                                       type_name(tables[0].variable().type) + ")");
    }
  }
}

std::vector<std::size_t> tuple_index(const std::vector<CategoryAttribute>& scheme,
                                     const std::vector<std::string>& codes) {
  if (codes.size() != scheme.size()) {
    throw InvalidInput("tuple", "tuple has " + std::to_string(codes.size()) +
                                    " codes, universal scheme has " +
                                    std::to_string(scheme.size()) + " attributes");
  }
  std::vector<std::size_t> idx(codes.size());
  for (std::size_t k = 0; k < codes.size(); ++k) idx[k] = scheme[k].index_of(codes[k]);
  return idx;
}

System build_system(const Polyptych& p, std::size_t cell_cap) {
  if (p.tables.empty()) throw InvalidInput("tables", "polyptych has no tables");
  check_homogeneous_variables(p.tables);
  System s;
  s.universal = p.universal_scheme();
  s.universal_cells = product_of_domains(s.universal, cell_cap);
  if (s.universal_cells > cell_cap) {
    throw InvalidInput("tables", "universal scheme exceeds the budget of " + std::to_string(cell_cap) +
                                     " cells");
  }
  const SummaryTable shape(s.universal, SummaryVariable{"u", VariableType::real});

  std::vector<bool> zero(s.universal_cells, false);
  for (const auto& codes : p.structural_zeros) zero[shape.flat_index(tuple_index(s.universal, codes))] = true;

  s.cell_column.assign(s.universal_cells, -1);
  for (std::size_t u = 0; u < s.universal_cells; ++u) {
    if (zero[u]) continue;
    s.cell_column[u] = static_cast<long>(s.column_cell.size());
    s.column_cell.push_back(u);
  }

  std::size_t rows = 0;
  for (const auto& t : p.tables) rows += t.size();
  const double entries = static_cast<double>(rows + 1) * static_cast<double>(s.column_cell.size() + rows + 1);
  if (entries > static_cast<double>(kMaxTableauEntries)) {
    throw InvalidInput("tables", "constraint system (" + std::to_string(rows) + " rows x " +
                                     std::to_string(s.column_cell.size()) +
                                     " columns) exceeds the dense simplex budget");
  }

  s.b.resize(static_cast<Eigen::Index>(rows));
  s.column_rows.assign(s.column_cell.size(), {});
  std::size_t row0 = 0;
  for (std::size_t ti = 0; ti < p.tables.size(); ++ti) {
    const SummaryTable& t = p.tables[ti];
    std::vector<std::size_t> pos(t.scheme().size());
    for (std::size_t k = 0; k < pos.size(); ++k) {
      for (std::size_t u = 0; u < s.universal.size(); ++u) {
        if (s.universal[u].name == t.scheme()[k].name) pos[k] = u;
      }
    }
    for (std::size_t c = 0; c < t.size(); ++c) {
      s.row_label.emplace_back(ti, c);
      s.b[static_cast<Eigen::Index>(row0 + c)] = t.cells()[c];
    }
    std::vector<std::size_t> sub(pos.size());
    for (std::size_t j = 0; j < s.column_cell.size(); ++j) {
      const auto uidx = shape.unflatten(s.column_cell[j]);
      for (std::size_t k = 0; k < pos.size(); ++k) sub[k] = uidx[pos[k]];
      s.column_rows[j].push_back(row0 + t.flat_index(sub));
    }
    row0 += t.size();
  }
  return s;
}

Eigen::MatrixXd constraint_matrix(const System& s) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(s.b.size(), static_cast<Eigen::Index>(s.column_cell.size()));
  for (std::size_t j = 0; j < s.column_rows.size(); ++j) {
    for (std::size_t r : s.column_rows[j]) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = 1.0;
  }
  return a;
}

std::optional<std::string> total_mismatch(const std::vector<SummaryTable>& tables) {
  for (std::size_t i = 1; i < tables.size(); ++i) {
    const double a = tables[0].grand_total();
    const double b = tables[i].grand_total();
    if (std::fabs(a - b) > 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)})) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "total-sum constraint violated: table 1 grand total " << a << " differs from table "
          << i + 1 << " grand total " << b;
      return msg.str();
    }
  }
  return std::nullopt;
}

SummaryTable witness_table(const System& s, const Polyptych& p, const Eigen::VectorXd& x) {
  std::vector<double> cells(s.universal_cells, 0.0);
  bool integral = true;
  for (std::size_t j = 0; j < s.column_cell.size(); ++j) {
    const double v = x[static_cast<Eigen::Index>(j)];
    cells[s.column_cell[j]] = v;
    if (std::fabs(v - std::round(v)) > 1e-9) integral = false;
  }
  SummaryVariable var = p.tables.front().variable();
  if (is_integer_type(var.type)) {
    if (integral) {
      for (double& v : cells) v = std::round(v);
    } else {
      var.type = VariableType::nonneg_real;
    }
  }
  for (double& v : cells) {
    if (v < 0.0) v = 0.0;
  }
  return SummaryTable(s.universal, var, std::move(cells));
}

}  // namespace

std::size_t CategoryAttribute::index_of(const std::string& code) const {
  const auto it = std::find(domain.begin(), domain.end(), code);
  if (it == domain.end()) throw InvalidInput(name, "code '" + code + "' not in domain of '" + name + "'");
  return static_cast<std::size_t>(it - domain.begin());
}

std::string type_name(VariableType t) {
  switch (t) {
    case VariableType::real:
      return "real";
    case VariableType::integer:
      return "integer";
    case VariableType::nonneg_real:
      return "nonneg-real";
    case VariableType::nonneg_integer:
      return "nonneg-integer";
  }
  return "unknown";
}

VariableType parse_variable_type(const std::string& s) {
  for (auto t : {VariableType::real, VariableType::integer, VariableType::nonneg_real,
                 VariableType::nonneg_integer}) {
    if (type_name(t) == s) return t;
  }
  throw InvalidInput("type", "unknown variable type '" + s +
                                 "' (expected real, integer, nonneg-real or nonneg-integer)");
}

SummaryTable::SummaryTable(std::vector<CategoryAttribute> scheme, SummaryVariable variable,
                           std::vector<double> cells)
    : scheme_(std::move(scheme)), variable_(std::move(variable)), cells_(std::move(cells)) {
  std::set<std::string> names;
  for (const auto& a : scheme_) {
    if (!names.insert(a.name).second) throw InvalidInput(a.name, "attribute '" + a.name + "' repeated in scheme");
    if (a.domain.size() > kMaxDomain) throw InvalidInput(a.name, "domain of '" + a.name + "' exceeds 10^4 codes");
    std::set<std::string> codes(a.domain.begin(), a.domain.end());
    if (codes.size() != a.domain.size()) throw InvalidInput(a.name, "duplicate codes in '" + a.name + "'");
  }
  const std::size_t n = product_of_domains(scheme_, kMaxUniversalCells);
  if (n > kMaxUniversalCells) throw InvalidInput("scheme", "table exceeds 10^6 cells");
  if (cells_.size() != n) {
    throw InvalidInput("cells", "table needs " + std::to_string(n) + " cells, got " + std::to_string(cells_.size()));
  }
  for (double x : cells_) check_value(variable_, x);
}

SummaryTable::SummaryTable(std::vector<CategoryAttribute> scheme, SummaryVariable variable)
    : SummaryTable(scheme, variable, std::vector<double>(product_of_domains(scheme, kMaxUniversalCells), 0.0)) {}

std::size_t SummaryTable::flat_index(const std::vector<std::size_t>& idx) const {
  if (idx.size() != scheme_.size()) throw InvalidInput("coords", "coordinate arity does not match scheme");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= scheme_[k].domain.size()) throw InvalidInput(scheme_[k].name, "coordinate out of range");
    flat = flat * scheme_[k].domain.size() + idx[k];
  }
  return flat;
}

std::vector<std::size_t> SummaryTable::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(scheme_.size());
  for (std::size_t k = scheme_.size(); k-- > 0;) {
    idx[k] = flat % scheme_[k].domain.size();
    flat /= scheme_[k].domain.size();
  }
  return idx;
}

std::size_t SummaryTable::flat_index_of_codes(const std::vector<std::string>& codes) const {
  return flat_index(tuple_index(scheme_, codes));
}

void SummaryTable::set(const std::vector<std::size_t>& idx, double value) { set_flat(flat_index(idx), value); }

void SummaryTable::set_flat(std::size_t flat, double value) {
  check_value(variable_, value);
  cells_.at(flat) = value;
}

double SummaryTable::grand_total() const {
  double s = 0.0;
  for (double x : cells_) s += x;
  return s;
}

std::optional<std::size_t> SummaryTable::attribute_position(const std::string& name) const {
  for (std::size_t k = 0; k < scheme_.size(); ++k) {
    if (scheme_[k].name == name) return k;
  }
  return std::nullopt;
}

SummaryTable marginal(const SummaryTable& table, const std::vector<std::string>& keep) {
  std::vector<std::size_t> pos;
  std::vector<CategoryAttribute> scheme;
  for (const auto& name : keep) {
    const auto p = table.attribute_position(name);
    if (!p) throw InvalidInput(name, "attribute '" + name + "' is not in the table's scheme");
    if (std::find(pos.begin(), pos.end(), *p) != pos.end()) {
      throw InvalidInput(name, "attribute '" + name + "' listed twice");
    }
    pos.push_back(*p);
    scheme.push_back(table.scheme()[*p]);
  }
  std::vector<double> sums(product_of_domains(scheme, kMaxUniversalCells), 0.0);
  SummaryTable shape(scheme, SummaryVariable{"m", VariableType::real});
  std::vector<std::size_t> sub(pos.size());
  for (std::size_t c = 0; c < table.size(); ++c) {
    const auto idx = table.unflatten(c);
    for (std::size_t k = 0; k < pos.size(); ++k) sub[k] = idx[pos[k]];
    sums[shape.flat_index(sub)] += table.cells()[c];
  }
  return SummaryTable(std::move(scheme), table.variable(), std::move(sums));
}

bool is_homogeneous(const std::vector<SummaryTable>& tables) {
  if (tables.size() < 2) throw InvalidInput("tables", "homogeneity needs at least two tables");
  for (std::size_t i = 1; i < tables.size(); ++i) {
    if (!(tables[i].variable() == tables[0].variable())) return false;
  }
  return !total_mismatch(tables).has_value();
}

std::vector<CategoryAttribute> Polyptych::universal_scheme() const {
  std::vector<CategoryAttribute> out;
  for (const auto& t : tables) {
    for (const auto& a : t.scheme()) {
      auto it = std::find_if(out.begin(), out.end(), [&](const auto& o) { return o.name == a.name; });
      if (it == out.end()) {
        out.push_back(a);
      } else if (!(*it == a)) {
        throw InvalidInput(a.name, "attribute '" + a.name + "' has different domains in different tables");
      }
    }
  }
  return out;
}

ConsistencyVerdict check_consistency(const Polyptych& p) {
  const System s = build_system(p, kMaxUniversalCells);
  ConsistencyVerdict v;
  if (auto mismatch = total_mismatch(p.tables)) {
    v.certificate = *mismatch;
    return v;
  }
  const lp::Result r = lp::feasible_point(constraint_matrix(s), s.b);
  if (r.status == lp::Status::optimal) {
    v.consistent = true;
    v.witness = witness_table(s, p, r.x);
    return v;
  }
  v.multipliers.assign(r.farkas.data(), r.farkas.data() + r.farkas.size());
  std::ostringstream msg;
  msg.precision(6);
  msg << "no nonnegative universal table satisfies the marginal constraints"
      << (p.structural_zeros.empty() ? "" : " with the structural zeros")
      << "; Farkas multipliers:";
  const double scale = std::max(1e-300, r.farkas.cwiseAbs().maxCoeff());
  for (std::size_t i = 0; i < s.row_label.size(); ++i) {
    const double y = r.farkas[static_cast<Eigen::Index>(i)] / scale;
    if (std::fabs(y) < 1e-9) continue;
    const auto [ti, cell] = s.row_label[i];
    msg << " table " << ti + 1 << " " << describe_cell(p.tables[ti], cell) << " x " << y << ";";
  }
  v.certificate = msg.str();
  return v;
}

std::optional<SummaryTable> find_integer_witness(const Polyptych& p) {
  constexpr std::size_t kMaxCells = 10'000;
  constexpr long kNodeBudget = 50'000'000;
  const System s = build_system(p, kMaxCells);
  for (const auto& t : p.tables) {
    for (double x : t.cells()) {
      if (x < 0.0 || x != std::round(x)) {
        throw InvalidInput("tables", "integer search needs nonnegative integer cells");
      }
    }
  }
  if (total_mismatch(p.tables)) return std::nullopt;

  const std::size_t rows = static_cast<std::size_t>(s.b.size());
  const std::size_t cols = s.column_cell.size();
  std::vector<long> remaining(rows);
  for (std::size_t r = 0; r < rows; ++r) remaining[r] = std::lround(s.b[static_cast<Eigen::Index>(r)]);
  std::vector<long> last_col(rows, -1);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t r : s.column_rows[j]) last_col[r] = static_cast<long>(j);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (last_col[r] < 0 && remaining[r] != 0) return std::nullopt;
  }

  std::vector<long> value(cols, 0);
  long nodes = 0;
  // Columns are filled in order; the last column of a row takes its remainder.
  auto search = [&](auto&& self, std::size_t j) -> bool {
    if (j == cols) return true;
    if (++nodes > kNodeBudget) throw ComputationError("integer witness search exceeded its node budget");
    long hi = std::numeric_limits<long>::max();
    long lo = 0;
    for (std::size_t r : s.column_rows[j]) {
      hi = std::min(hi, remaining[r]);
      if (last_col[r] == static_cast<long>(j)) lo = std::max(lo, remaining[r]);
    }
    for (long v = hi; v >= lo; --v) {
      for (std::size_t r : s.column_rows[j]) remaining[r] -= v;
      value[j] = v;
      const bool found = self(self, j + 1);
      for (std::size_t r : s.column_rows[j]) remaining[r] += v;
      if (found) return true;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  std::vector<double> cells(s.universal_cells, 0.0);
  for (std::size_t k = 0; k < cols; ++k) cells[s.column_cell[k]] = static_cast<double>(value[k]);
  SummaryVariable var = p.tables.front().variable();
  return SummaryTable(s.universal, var, std::move(cells));
}

ChiSquare chi_square_independence(const SummaryTable& table) {
  if (table.scheme().size() != 2) throw InvalidInput("table", "X^2 test needs exactly two attributes");
  for (double x : table.cells()) {
    if (x < 0.0 || x != std::round(x)) throw InvalidInput("table", "X^2 test needs nonnegative integer counts");
  }
  const std::size_t n = table.scheme()[0].domain.size();
  const std::size_t m = table.scheme()[1].domain.size();
  std::vector<double> row(n, 0.0);
  std::vector<double> col(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      row[i] += table.at({i, j});
      col[j] += table.at({i, j});
    }
  }
  for (double r : row) {
    if (r <= 0.0) throw InvalidInput("table", "X^2 test needs positive row totals");
  }
  for (double c : col) {
    if (c <= 0.0) throw InvalidInput("table", "X^2 test needs positive column totals");
  }
  const double total = table.grand_total();
  double x2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double e = row[i] * col[j] / total;
      const double d = table.at({i, j}) - e;
      x2 += d * d / e;
    }
  }
  const int df = static_cast<int>((n - 1) * (m - 1));
  const double p = df > 0 ? 1.0 - special::gamma_p(0.5 * df, 0.5 * x2) : 1.0;
  return ChiSquare{x2, df, p};
}

std::string empty_kind_name(EmptyKind k) {
  switch (k) {
    case EmptyKind::structural:
      return "structural";
    case EmptyKind::accidental:
      return "accidental";
    case EmptyKind::occupied:
      return "occupied";
  }
  return "unknown";
}

EmptyKind classify_empty(const Polyptych& p, const std::vector<std::string>& tuple) {
  const System s = build_system(p, kMaxUniversalCells);
  const auto idx = tuple_index(s.universal, tuple);
  const SummaryTable shape(s.universal, SummaryVariable{"u", VariableType::real});
  const std::size_t cell = shape.flat_index(idx);
  if (s.cell_column[cell] < 0) return EmptyKind::structural;

  const ConsistencyVerdict v = check_consistency(p);
  if (!v.consistent) throw InvalidInput("polyptych", "cannot classify cells of an inconsistent polyptych");
  const double tol = 1e-9 * std::max(1.0, std::fabs(p.tables.front().grand_total()));
  if (v.witness->cells()[cell] > tol) return EmptyKind::occupied;

  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.column_cell.size()));
  c[s.cell_column[cell]] = 1.0;
  const lp::Result r = lp::maximize(c, constraint_matrix(s), s.b);
  if (r.status == lp::Status::unbounded) return EmptyKind::occupied;
  if (r.status != lp::Status::optimal) throw ComputationError("cell maximisation failed");
  return r.value > tol ? EmptyKind::occupied : EmptyKind::accidental;
}

}  // namespace bioassay
