#include "monocone/lp.hpp"

#include <stdexcept>

#include "monocone/error.hpp"

namespace monocone {

namespace {

using Matrix = std::vector<RationalVector>;

}  // namespace

bool check_feasible(const FeasibilityProblem& problem, const RationalVector& x) {
  if (x.size() != problem.columns.size()) return false;
  RationalVector lhs(problem.rows, 0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (sgn(x[j]) < 0) return false;
    if (sgn(x[j]) == 0) continue;
    for (const auto& [row, value] : problem.columns[j].entries) {
      lhs[row] += value * x[j];
    }
  }
  return lhs == problem.rhs;
}

bool check_infeasible(const FeasibilityProblem& problem, const RationalVector& y) {
  if (static_cast<int>(y.size()) != problem.rows) return false;
  for (const auto& col : problem.columns) {
    Rational s = 0;
    for (const auto& [row, value] : col.entries) s += y[row] * value;
    if (sgn(s) < 0) return false;
  }
  return sgn(dot(y, problem.rhs)) < 0;
}

FeasibilityResult solve_feasibility(const FeasibilityProblem& problem,
                                    SimplexStats* stats) {
  const int m = problem.rows;
  const int n = static_cast<int>(problem.columns.size());
  if (static_cast<int>(problem.rhs.size()) != m) {
    throw Error(ErrorKind::kDimensionMismatch, "rhs length differs from rows");
  }
  for (const auto& col : problem.columns) {
    for (const auto& [row, value] : col.entries) {
      if (row < 0 || row >= m) {
        throw Error(ErrorKind::kDimensionMismatch, "column row out of range");
      }
    }
  }
  if (m == 0) return Feasible{RationalVector(n, 0)};

  // Rows with negative rhs are negated so the artificial basis is feasible.
  std::vector<int> sign(m, 1);
  RationalVector b = problem.rhs;
  for (int i = 0; i < m; ++i) {
    if (sgn(b[i]) < 0) {
      sign[i] = -1;
      b[i] = -b[i];
    }
  }
  // Variables 0..n-1 are original, n..n+m-1 artificial.
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;
  std::vector<bool> in_basis(n + m, false);
  for (int i = 0; i < m; ++i) in_basis[n + i] = true;
  Matrix binv(m, RationalVector(m, 0));
  for (int i = 0; i < m; ++i) binv[i][i] = 1;
  RationalVector xb = b;

  auto column_dense = [&](int j) {
    RationalVector col(m, 0);
    if (j < n) {
      for (const auto& [row, value] : problem.columns[j].entries) {
        col[row] = sign[row] > 0 ? value : Rational(-value);
      }
    } else {
      col[j - n] = 1;
    }
    return col;
  };

  int pivots = 0;
  RationalVector y(m, 0);
  while (true) {
    Rational objective = 0;
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= n) objective += xb[i];
    }
    if (sgn(objective) == 0) break;

    // y = c_B^T B^{-1}, c_B = 1 on artificials.
    for (int k = 0; k < m; ++k) {
      Rational s = 0;
      for (int i = 0; i < m; ++i) {
        if (basis[i] >= n && sgn(binv[i][k]) != 0) s += binv[i][k];
      }
      y[k] = s;
    }
    // Bland: first original column with negative reduced cost -y.A_j.
    int entering = -1;
    for (int j = 0; j < n && entering < 0; ++j) {
      if (in_basis[j]) continue;
      Rational s = 0;
      for (const auto& [row, value] : problem.columns[j].entries) {
        if (sgn(y[row]) != 0) {
          if (sign[row] > 0) {
            s += y[row] * value;
          } else {
            s -= y[row] * value;
          }
        }
      }
      if (sgn(s) > 0) entering = j;
    }
    if (entering < 0) {
      // y . A'_j <= 0 for all j and y . b' = objective > 0.
      RationalVector cert(m);
      for (int i = 0; i < m; ++i) cert[i] = sign[i] > 0 ? Rational(-y[i]) : y[i];
      if (!check_infeasible(problem, cert)) {
        throw std::logic_error("simplex produced an invalid Farkas certificate");
      }
      if (stats) stats->pivots = pivots;
      return Infeasible{std::move(cert)};
    }

    const RationalVector a = column_dense(entering);
    RationalVector u(m, 0);
    for (int i = 0; i < m; ++i) {
      Rational s = 0;
      for (int k = 0; k < m; ++k) {
        if (sgn(a[k]) != 0 && sgn(binv[i][k]) != 0) s += binv[i][k] * a[k];
      }
      u[i] = s;
    }
    int leave = -1;
    Rational best_ratio;
    for (int i = 0; i < m; ++i) {
      if (sgn(u[i]) <= 0) continue;
      Rational ratio = xb[i] / u[i];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      // Unbounded direction cannot happen in phase 1 (objective >= 0).
      throw std::logic_error("phase-1 simplex found an unbounded ray");
    }
    // Pivot on (leave, entering).
    const Rational piv = u[leave];
    for (int k = 0; k < m; ++k) binv[leave][k] /= piv;
    xb[leave] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || sgn(u[i]) == 0) continue;
      const Rational f = u[i];
      for (int k = 0; k < m; ++k) {
        if (sgn(binv[leave][k]) != 0) binv[i][k] -= f * binv[leave][k];
      }
      xb[i] -= f * xb[leave];
    }
    in_basis[basis[leave]] = false;
    basis[leave] = entering;
    in_basis[entering] = true;
    ++pivots;
  }

  RationalVector x(n, 0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = xb[i];
  }
  if (!check_feasible(problem, x)) {
    throw std::logic_error("simplex produced an invalid solution");
  }
  if (stats) stats->pivots = pivots;
  return Feasible{std::move(x)};
}

}  // namespace monocone
