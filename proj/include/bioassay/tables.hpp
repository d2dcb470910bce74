#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bioassay {

/// A named classification with a finite ordered list of codes.
struct CategoryAttribute {
  std::string name;
  std::vector<std::string> domain;

  /// Position of `code` in the domain; throws InvalidInput when absent.
  std::size_t index_of(const std::string& code) const;
  friend bool operator==(const CategoryAttribute&, const CategoryAttribute&) = default;
};

enum class VariableType { real, integer, nonneg_real, nonneg_integer };

std::string type_name(VariableType t);
VariableType parse_variable_type(const std::string& s);

struct SummaryVariable {
  std::string name;
  VariableType type = VariableType::nonneg_integer;
  friend bool operator==(const SummaryVariable&, const SummaryVariable&) = default;
};

/// Dense table over the Cartesian product of its scheme, last attribute
/// varying fastest.
class SummaryTable {
 public:
  static constexpr std::size_t kMaxDomain = 10'000;

  SummaryTable(std::vector<CategoryAttribute> scheme, SummaryVariable variable,
               std::vector<double> cells);
  /// All-zero table.
  SummaryTable(std::vector<CategoryAttribute> scheme, SummaryVariable variable);

  const std::vector<CategoryAttribute>& scheme() const noexcept { return scheme_; }
  const SummaryVariable& variable() const noexcept { return variable_; }
  const std::vector<double>& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }

  std::size_t flat_index(const std::vector<std::size_t>& idx) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::size_t flat_index_of_codes(const std::vector<std::string>& codes) const;

  double at(const std::vector<std::size_t>& idx) const { return cells_[flat_index(idx)]; }
  /// Checks the value against the variable type.
  void set(const std::vector<std::size_t>& idx, double value);
  void set_flat(std::size_t flat, double value);

  double grand_total() const;
  /// Position of the attribute in the scheme, or nullopt.
  std::optional<std::size_t> attribute_position(const std::string& name) const;

 private:
  std::vector<CategoryAttribute> scheme_;
  SummaryVariable variable_;
  std::vector<double> cells_;
};

/// Sum over the attributes not in `keep`; the result follows the order of `keep`.
SummaryTable marginal(const SummaryTable& table, const std::vector<std::string>& keep);

/// Same variable name and type, and equal grand totals. Needs >= 2 tables.
bool is_homogeneous(const std::vector<SummaryTable>& tables);

/// Tables over one population plus the universal cells known to be impossible.
struct Polyptych {
  std::vector<SummaryTable> tables;
  /// Code tuples over universal_scheme().
  std::vector<std::vector<std::string>> structural_zeros;

  /// Union of the table schemes in order of first appearance. Throws when
  /// two tables disagree on an attribute's domain.
  std::vector<CategoryAttribute> universal_scheme() const;
};

struct ConsistencyVerdict {
  bool consistent = false;
  std::optional<SummaryTable> witness;
  std::optional<std::string> certificate;
  /// Farkas multipliers per (table, cell) constraint when the LP proved infeasibility.
  std::vector<double> multipliers;
};

constexpr std::size_t kMaxUniversalCells = 1'000'000;
/// Dense tableau entries the simplex is allowed to allocate.
constexpr std::size_t kMaxTableauEntries = 50'000'000;

/// Does a nonnegative universal table exist whose marginals restore every table
/// and which vanishes on the structural zeros?
ConsistencyVerdict check_consistency(const Polyptych& p);

/// Exact integer search for a witness (nonneg-integer tables, <= 10^4 cells).
/// nullopt when none exists.
std::optional<SummaryTable> find_integer_witness(const Polyptych& p);

struct ChiSquare {
  double statistic;
  int df;
  double p_value;
};

/// Pearson X^2 test of independence on a two-attribute count table.
ChiSquare chi_square_independence(const SummaryTable& table);

enum class EmptyKind { structural, accidental, occupied };
std::string empty_kind_name(EmptyKind k);

EmptyKind classify_empty(const Polyptych& p, const std::vector<std::string>& tuple);

}  // namespace bioassay
