#include <doctest.h>

#include <cmath>

#include "bioassay/errors.hpp"
#include "bioassay/simplex.hpp"
#include "bioassay/tables.hpp"

using namespace bioassay;
using doctest::Approx;

namespace {

const SummaryVariable kCount{"count", VariableType::nonneg_integer};
const CategoryAttribute kRow{"row", {"a", "b"}};
const CategoryAttribute kCol{"col", {"x", "y"}};

Polyptych diptych(std::vector<double> rows, std::vector<double> cols) {
  Polyptych p;
  p.tables.emplace_back(std::vector{kRow}, kCount, std::move(rows));
  p.tables.emplace_back(std::vector{kCol}, kCount, std::move(cols));
  return p;
}

void check_witness(const Polyptych& p, const SummaryTable& w) {
  for (const auto& t : p.tables) {
    std::vector<std::string> keep;
    for (const auto& a : t.scheme()) keep.push_back(a.name);
    const SummaryTable m = marginal(w, keep);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(std::fabs(m.cells()[i] - t.cells()[i]) <= 1e-9);
  }
  for (double v : w.cells()) CHECK(v >= -1e-12);
}

}  // namespace

TEST_CASE("marginals") {
  const SummaryTable t({kRow, kCol}, kCount, {1, 2, 3, 4});
  const SummaryTable rows = marginal(t, {"row"});
  CHECK(rows.cells() == std::vector<double>{3, 7});
  CHECK(marginal(t, {"col"}).cells() == std::vector<double>{4, 6});
  CHECK(marginal(t, {"row", "col"}).cells() == t.cells());
  const SummaryTable swapped = marginal(t, {"col", "row"});
  CHECK(swapped.cells() == std::vector<double>{1, 3, 2, 4});
  const SummaryTable total = marginal(t, {});
  CHECK(total.size() == 1);
  CHECK(total.cells()[0] == 10);
  CHECK_THROWS_AS(marginal(t, {"nope"}), InvalidInput);
}

TEST_CASE("projection closure") {
  const CategoryAttribute z{"z", {"p", "q", "r"}};
  std::vector<double> cells(12);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = double(i * i % 7);
  const SummaryTable t({kRow, kCol, z}, kCount, cells);
  CHECK(marginal(marginal(t, {"row", "z"}), {"z"}).cells() == marginal(t, {"z"}).cells());
  CHECK(marginal(marginal(t, {"col", "row"}), {"row"}).cells() == marginal(t, {"row"}).cells());
  CHECK(marginal(t, {}).cells()[0] == t.grand_total());
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(SummaryTable({kRow}, kCount, {1.5, 2}), InvalidInput);
  CHECK_THROWS_AS(SummaryTable({kRow}, kCount, {-1, 2}), InvalidInput);
  CHECK_THROWS_AS(SummaryTable({kRow}, kCount, {1, 2, 3}), InvalidInput);
  CHECK_THROWS_AS(SummaryTable({kRow, kRow}, kCount, {1, 2, 3, 4}), InvalidInput);
  CHECK_NOTHROW(SummaryTable({kRow}, {"x", VariableType::real}, {-1.5, 2}));
  CHECK(parse_variable_type("nonneg-real") == VariableType::nonneg_real);
  CHECK(type_name(VariableType::nonneg_integer) == "nonneg-integer");
}

TEST_CASE("homogeneity") {
  const SummaryTable t({kRow}, kCount, {3, 7});
  CHECK(is_homogeneous({t, t}));
  CHECK_FALSE(is_homogeneous({t, SummaryTable({kRow}, kCount, {3, 8})}));
  CHECK(is_homogeneous({t, SummaryTable({kCol}, kCount, {5, 5})}));
  CHECK_FALSE(is_homogeneous({t, SummaryTable({kCol}, {"weight", VariableType::nonneg_integer}, {5, 5})}));
}

TEST_CASE("single table is its own witness") {
  Polyptych p;
  p.tables.emplace_back(std::vector{kRow, kCol}, kCount, std::vector<double>{1, 2, 3, 4});
  const ConsistencyVerdict v = check_consistency(p);
  REQUIRE(v.consistent);
  CHECK(v.witness->cells() == p.tables[0].cells());
}

TEST_CASE("unequal totals give a total-sum certificate") {
  Polyptych p;
  p.tables.emplace_back(std::vector{kRow}, kCount, std::vector<double>{1, 2});
  p.tables.emplace_back(std::vector{kRow}, kCount, std::vector<double>{2, 3});
  const ConsistencyVerdict v = check_consistency(p);
  CHECK_FALSE(v.consistent);
  REQUIRE(v.certificate);
  CHECK(v.certificate->find("total") != std::string::npos);
}

TEST_CASE("3,1 / 2,2 diptych") {
  const Polyptych p = diptych({3, 1}, {2, 2});
  const ConsistencyVerdict v = check_consistency(p);
  REQUIRE(v.consistent);
  check_witness(p, *v.witness);
  // brute force over 2x2 integer tables with total 4
  int found = 0;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        for (int d = 0; d <= 4; ++d)
          found += (a + b == 3 && c + d == 1 && a + c == 2 && b + d == 2);
  CHECK(found == 2);
  const auto integer = find_integer_witness(p);
  REQUIRE(integer);
  check_witness(p, *integer);
  CHECK(classify_empty(p, {"b", "x"}) == EmptyKind::occupied);
}

TEST_CASE("structural zeros and accidental cells") {
  Polyptych p = diptych({0, 4}, {2, 2});
  CHECK(classify_empty(p, {"a", "x"}) == EmptyKind::accidental);
  CHECK(classify_empty(p, {"a", "y"}) == EmptyKind::accidental);
  CHECK(classify_empty(p, {"b", "y"}) == EmptyKind::occupied);
  p.structural_zeros.push_back({"b", "y"});
  CHECK(classify_empty(p, {"b", "y"}) == EmptyKind::structural);
  // (b,y) forbidden: b must put all 4 into x, but x only holds 2
  const ConsistencyVerdict v = check_consistency(p);
  CHECK_FALSE(v.consistent);
  CHECK(v.certificate);
  CHECK_THROWS_AS(classify_empty(p, {"a", "x"}), InvalidInput);
}

TEST_CASE("Farkas multipliers certify infeasibility") {
  Polyptych p = diptych({3, 1}, {2, 2});
  p.structural_zeros = {{"a", "x"}, {"b", "x"}};
  const ConsistencyVerdict v = check_consistency(p);
  REQUIRE_FALSE(v.consistent);
  REQUIRE(v.multipliers.size() == 4);
  // every universal column gets y^T a <= 0 while y^T b > 0
  const std::vector<double> b = {3, 1, 2, 2};
  double yb = 0.0;
  for (std::size_t i = 0; i < 4; ++i) yb += v.multipliers[i] * b[i];
  CHECK(yb > 0);
  // free columns (a,y) and (b,y) hit rows {a, y} and {b, y}
  CHECK(v.multipliers[0] + v.multipliers[3] <= 1e-9);
  CHECK(v.multipliers[1] + v.multipliers[3] <= 1e-9);
}

TEST_CASE("triptych over three attributes") {
  const CategoryAttribute z{"z", {"p", "q"}};
  std::vector<double> cells = {1, 0, 2, 3, 0, 4, 1, 1};
  const SummaryTable u({kRow, kCol, z}, kCount, cells);
  Polyptych p;
  p.tables = {marginal(u, {"row", "col"}), marginal(u, {"col", "z"}), marginal(u, {"row", "z"})};
  const ConsistencyVerdict v = check_consistency(p);
  REQUIRE(v.consistent);
  check_witness(p, *v.witness);
}

TEST_CASE("chi-square independence") {
  ChiSquare c = chi_square_independence(SummaryTable({kRow, kCol}, kCount, {5, 5, 5, 5}));
  CHECK(c.statistic == Approx(0.0));
  CHECK(c.df == 1);
  c = chi_square_independence(SummaryTable({kRow, kCol}, kCount, {10, 0, 0, 10}));
  CHECK(c.statistic == Approx(20.0));
  CHECK(c.p_value == Approx(std::erfc(std::sqrt(10.0))).epsilon(1e-8));
  const CategoryAttribute three{"k", {"1", "2", "3"}};
  c = chi_square_independence(SummaryTable({kRow, three}, kCount, {1, 2, 3, 4, 5, 6}));
  CHECK(c.df == 2);
  CHECK_THROWS_AS(chi_square_independence(SummaryTable({kRow, kCol}, kCount, {0, 0, 1, 1})), InvalidInput);
}

TEST_CASE("simplex basics") {
  Eigen::MatrixXd a(2, 3);
  a << 1, 1, 0,
       0, 1, 1;
  const Eigen::VectorXd b = Eigen::Vector2d(2, 3);
  const lp::Result feas = lp::feasible_point(a, b);
  REQUIRE(feas.status == lp::Status::optimal);
  CHECK((a * feas.x - b).norm() < 1e-12);
  const lp::Result best = lp::maximize(Eigen::Vector3d(1, 0, 1), a, b);
  REQUIRE(best.status == lp::Status::optimal);
  CHECK(best.value == Approx(5.0));
  Eigen::MatrixXd a2(1, 2);
  a2 << 1, -1;
  CHECK(lp::maximize(Eigen::Vector2d(1, 0), a2, Eigen::VectorXd::Zero(1)).status == lp::Status::unbounded);
  Eigen::MatrixXd a3(1, 2);
  a3 << 1, 1;
  CHECK(lp::feasible_point(a3, Eigen::VectorXd::Constant(1, -1)).status == lp::Status::infeasible);
}
