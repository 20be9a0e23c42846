#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "monocone/error.hpp"
#include "monocone/lp.hpp"
#include "monocone/polyhedra.hpp"

using namespace monocone;

namespace {

RationalVector vec(std::initializer_list<int> xs) {
  RationalVector v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

std::set<RationalVector> as_set(const std::vector<RationalVector>& rays) {
  std::set<RationalVector> out;
  for (const auto& r : rays) out.insert(canonicalize_ray(r));
  return out;
}

// Oracle for small cones: r is extremal in {x : A x >= 0} iff it satisfies
// every row and the tight rows have rank dim - 1.
int rank(std::vector<RationalVector> rows) {
  int r = 0;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i) {
      if (sgn(rows[i][c]) != 0) pivot = i;
    }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (int k = 0; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("feasible systems return a checked point") {
  // x0 + x1 = 2, x1 + x2 = 1
  FeasibilityProblem p{2, {{{{0, 1}}}, {{{0, 1}, {1, 1}}}, {{{1, 1}}}}, vec({2, 1})};
  const auto r = solve_feasibility(p);
  REQUIRE(std::holds_alternative<Feasible>(r));
  CHECK(check_feasible(p, std::get<Feasible>(r).x));
}

TEST_CASE("infeasible systems return a Farkas vector") {
  // x0 = -1 has no nonnegative solution.
  FeasibilityProblem p{1, {{{{0, 1}}}}, vec({-1})};
  const auto r = solve_feasibility(p);
  REQUIRE(std::holds_alternative<Infeasible>(r));
  CHECK(check_infeasible(p, std::get<Infeasible>(r).y));
  // x0 + x1 = 1 and x0 + x1 = 2.
  FeasibilityProblem q{2, {{{{0, 1}, {1, 1}}}, {{{0, 1}, {1, 1}}}}, vec({1, 2})};
  const auto s = solve_feasibility(q);
  REQUIRE(std::holds_alternative<Infeasible>(s));
  CHECK(check_infeasible(q, std::get<Infeasible>(s).y));
}

TEST_CASE("degenerate problems terminate") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> e(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 3, cols = 5;
    FeasibilityProblem p{rows, std::vector<SparseColumn>(cols), RationalVector(rows)};
    for (int j = 0; j < cols; ++j) {
      for (int i = 0; i < rows; ++i) {
        const int v = e(rng);
        if (v != 0) p.columns[j].entries.emplace_back(i, v);
      }
    }
    for (int i = 0; i < rows; ++i) p.rhs[i] = e(rng);
    const auto r = solve_feasibility(p);
    if (const auto* f = std::get_if<Feasible>(&r)) {
      CHECK(check_feasible(p, f->x));
    } else {
      CHECK(check_infeasible(p, std::get<Infeasible>(r).y));
    }
  }
}

}  // TEST_SUITE

TEST_SUITE("polyhedra") {

TEST_CASE("orthant and simplicial cones") {
  HRepCone orthant{3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}};
  CHECK(as_set(dd_rays(orthant).rays) ==
        as_set({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}));
  // Cone over a square: x >= |y|, x >= |z|.
  HRepCone square{3, {vec({1, 1, 0}), vec({1, -1, 0}), vec({1, 0, 1}), vec({1, 0, -1})}};
  CHECK(as_set(dd_rays(square).rays) ==
        as_set({vec({1, 1, 1}), vec({1, 1, -1}), vec({1, -1, 1}), vec({1, -1, -1})}));
}

TEST_CASE("rays are extremal by the rank test") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> e(-2, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 4;
    HRepCone h{dim, {}};
    for (int i = 0; i < dim; ++i) {
      RationalVector unit(dim);
      unit[i] = 1;
      h.normals.push_back(unit);
    }
    for (int i = 0; i < 3; ++i) {
      RationalVector row(dim);
      for (auto& x : row) x = e(rng);
      h.normals.push_back(row);
    }
    const auto v = dd_rays(h);
    for (const auto& r : v.rays) {
      CHECK(satisfies(h, r));
      std::vector<RationalVector> tight;
      for (const auto& a : h.normals) {
        if (sgn(dot(a, r)) == 0) tight.push_back(a);
      }
      CHECK(rank(tight) == dim - 1);
    }
    DdOptions algebraic;
    algebraic.adjacency = AdjacencyTest::kAlgebraic;
    CHECK(as_set(dd_rays(h, algebraic).rays) == as_set(v.rays));
  }
}

TEST_CASE("lines are reported") {
  HRepCone halfspace{2, {vec({1, 0})}};
  try {
    dd_rays(halfspace);
    FAIL("accepted");
  } catch (const NotPointedError& e) {
    REQUIRE(e.basis().size() == 1);
    CHECK(sgn(e.basis()[0][0]) == 0);
  }
  CHECK_THROWS_AS(dd_facets(VRepCone{2, {vec({1, 0})}}), NotPointedError);
}

TEST_CASE("membership with verified witnesses") {
  VRepCone v{2, {vec({1, 0}), vec({1, 1})}};
  const auto in = cone_member(v, vec({3, 1}));
  REQUIRE(std::holds_alternative<Inside>(in));
  CHECK(std::get<Inside>(in).weights == RationalVector{2, 1});
  const auto out = cone_member(v, vec({0, 1}));
  REQUIRE(std::holds_alternative<Outside>(out));
  CHECK(certificate_holds(v, vec({0, 1}), std::get<Outside>(out).cert));
  CHECK_FALSE(certificate_holds(v, vec({3, 1}), std::get<Outside>(out).cert));
}

TEST_CASE("canonical rays and minimisation") {
  CHECK(canonicalize_ray({Rational(2, 3), Rational(4, 3)}) == vec({1, 2}));
  CHECK_THROWS_AS(canonicalize_ray(vec({0, 0})), Error);
  CHECK_THROWS_AS(canonicalize_ray(vec({1, -1}), true), Error);
  VRepCone v{2, {vec({1, 0}), vec({2, 0}), vec({1, 1}), vec({0, 1})}};
  CHECK(minimize_rays(v).rays == std::vector<RationalVector>{vec({1, 0}), vec({0, 1})});
}

TEST_CASE("exchange format round trip") {
  VRepCone v{3, {vec({1, 0, 0}), {Rational(1, 2), 1, 0}}};
  std::stringstream s;
  write_cone(s, v);
  const auto back = read_cone(s);
  REQUIRE(std::holds_alternative<VRepCone>(back));
  CHECK(std::get<VRepCone>(back).rays == v.rays);
  std::istringstream bad("hrep 2 1\n1 x\n");
  CHECK_THROWS_AS(read_cone(bad), ParseError);
}

}  // TEST_SUITE
