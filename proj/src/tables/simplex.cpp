#include "bioassay/simplex.hpp"

#include <cmath>
#include <optional>
#include <vector>

#include "bioassay/errors.hpp"

namespace bioassay::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr long kMaxPivots = 1'000'000;

// Row-major tableau. Rows 0..m-1 are constraints, row m holds reduced
// costs of a minimisation; the last column is the right-hand side.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
      : m_(a.rows()), n_(a.cols()), t_(a.rows() + 1, a.cols() + a.rows() + 1), basis_(a.rows()) {
    t_.setZero();
    sign_.resize(m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      sign_[i] = b[i] < 0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = sign_[i] * a.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs()) = sign_[i] * b[i];
      basis_[static_cast<std::size_t>(i)] = n_ + i;
    }
  }

  Eigen::Index rhs() const { return n_ + m_; }

  // Phase one: minimise the sum of artificials. Returns that minimum.
  double phase_one() {
    t_.row(m_).setZero();
    for (Eigen::Index i = 0; i < m_; ++i) {
      t_.row(m_).head(n_) -= t_.row(i).head(n_);
      t_(m_, rhs()) -= t_(i, rhs());
    }
    iterate(n_ + m_);
    return -t_(m_, rhs());
  }

  // y with y^T A <= 0, y^T b > 0, in the caller's row orientation.
  Eigen::VectorXd farkas() const {
    Eigen::VectorXd y(m_);
    for (Eigen::Index i = 0; i < m_; ++i) y[i] = sign_[i] * (1.0 - t_(m_, n_ + i));
    return y;
  }

  // Pivot zero-level artificials out of the basis where a structural
  // column allows it; rows that cannot are redundant and stay inert.
  void expel_artificials() {
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < n_) continue;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (std::fabs(t_(r, j)) > kPivotTol) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  // Phase two: minimise cost^T x over structural columns only.
  bool phase_two(const Eigen::VectorXd& cost) {
    t_.row(m_).setZero();
    t_.row(m_).head(n_) = cost.transpose();
    for (Eigen::Index r = 0; r < m_; ++r) {
      const Eigen::Index bcol = basis_[static_cast<std::size_t>(r)];
      const double cb = bcol < n_ ? cost[bcol] : 0.0;
      if (cb != 0.0) t_.row(m_) -= cb * t_.row(r);
    }
    return iterate(n_);
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index r = 0; r < m_; ++r) {
      const Eigen::Index bcol = basis_[static_cast<std::size_t>(r)];
      if (bcol < n_) x[bcol] = std::max(0.0, t_(r, rhs()));
    }
    return x;
  }

 private:
  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Bland's rule over columns [0, limit). False when unbounded.
  bool iterate(Eigen::Index limit) {
    for (long count = 0; count < kMaxPivots; ++count) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (t_(m_, j) < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = 0.0;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (t_(i, enter) <= kPivotTol) continue;
        const double ratio = t_(i, rhs()) / t_(i, enter);
        if (leave < 0 || ratio < best - 1e-12 ||
            (ratio <= best + 1e-12 && basis_[static_cast<std::size_t>(i)] <
                                          basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw ComputationError("simplex pivot limit reached");
  }

  Eigen::Index m_;
  Eigen::Index n_;
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
  Eigen::VectorXd sign_;
};

double feasibility_tol(const Eigen::VectorXd& b) {
  return 1e-9 * std::max(1.0, b.cwiseAbs().sum());
}

void check_shapes(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.rows() != b.size()) throw InvalidInput("b", "constraint rows and right-hand side differ in size");
}

}  // namespace

Result feasible_point(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  check_shapes(a, b);
  Tableau t(a, b);
  Result r;
  r.infeasibility = t.phase_one();
  if (r.infeasibility > feasibility_tol(b)) {
    r.status = Status::infeasible;
    r.farkas = t.farkas();
    return r;
  }
  r.status = Status::optimal;
  r.x = t.solution();
  return r;
}

Result maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  check_shapes(a, b);
  if (c.size() != a.cols()) throw InvalidInput("c", "objective and constraint columns differ in size");
  Tableau t(a, b);
  Result r;
  r.infeasibility = t.phase_one();
  if (r.infeasibility > feasibility_tol(b)) {
    r.status = Status::infeasible;
    r.farkas = t.farkas();
    return r;
  }
  t.expel_artificials();
  if (!t.phase_two(-c)) {
    r.status = Status::unbounded;
    return r;
  }
  r.status = Status::optimal;
  r.x = t.solution();
  r.value = c.dot(r.x);
  return r;
}

}  // namespace bioassay::lp
