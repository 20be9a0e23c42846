#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "monocone/rational.hpp"

namespace monocone {

/// Column of a constraint matrix: (row, coefficient) pairs, rows ascending.
struct SparseColumn {
  std::vector<std::pair<int, Rational>> entries;
};

/// Feasibility of { x >= 0 : A x = b }.
struct FeasibilityProblem {
  int rows = 0;
  std::vector<SparseColumn> columns;
  RationalVector rhs;
};

struct Feasible {
  RationalVector x;
};

/// y with y . A_j >= 0 for every column j and y . b < 0.
struct Infeasible {
  RationalVector y;
};

using FeasibilityResult = std::variant<Feasible, Infeasible>;

struct SimplexStats {
  int pivots = 0;
};

/// Phase-1 revised simplex over exact rationals with Bland's rule, so it
/// terminates on degenerate problems. Every returned solution or
/// certificate is checked against the input before returning.
FeasibilityResult solve_feasibility(const FeasibilityProblem& problem,
                                    SimplexStats* stats = nullptr);

bool check_feasible(const FeasibilityProblem& problem, const RationalVector& x);
bool check_infeasible(const FeasibilityProblem& problem, const RationalVector& y);

}  // namespace monocone
