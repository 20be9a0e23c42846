#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "monocone/classify.hpp"
#include "monocone/error.hpp"
#include "monocone/poset.hpp"
#include "support.hpp"

using namespace monocone;

namespace {

Poset chain(int n) {
  std::vector<std::pair<int, int>> less;
  for (int i = 0; i + 1 < n; ++i) less.emplace_back(i, i + 1);
  return poset_from_strict(n, less);
}

}  // namespace

TEST_SUITE("poset") {

TEST_CASE("axiom violations name a witness") {
  using Rel = std::vector<std::vector<bool>>;
  SUBCASE("reflexivity") {
    try {
      validate_poset(Rel{{true, false}, {false, false}});
      FAIL("accepted");
    } catch (const PosetAxiomError& e) {
      CHECK(e.kind() == ErrorKind::kNotReflexive);
      CHECK(e.witness() == std::vector<int>{1});
    }
  }
  SUBCASE("antisymmetry") {
    CHECK_THROWS_AS(validate_poset(Rel{{true, true}, {true, true}}), PosetAxiomError);
    try {
      poset_from_strict(3, {{0, 1}, {1, 2}, {2, 0}});
      FAIL("cycle accepted");
    } catch (const PosetAxiomError& e) {
      CHECK(e.kind() == ErrorKind::kNotAntisymmetric);
    }
  }
  SUBCASE("transitivity") {
    try {
      validate_poset(Rel{{true, true, false}, {false, true, true}, {false, false, true}});
      FAIL("accepted");
    } catch (const PosetAxiomError& e) {
      CHECK(e.kind() == ErrorKind::kNotTransitive);
      CHECK(e.witness() == std::vector<int>{0, 1, 2});
    }
  }
}

TEST_CASE("hasse diagrams and cycle rank") {
  CHECK(hasse(chain(4)).covers.size() == 3);
  CHECK(cover_graph_cycle_rank(diamond()) == 1);
  CHECK(cover_graph_cycle_rank(bowtie()) == 1);
  CHECK(cover_graph_cycle_rank(kcrown(3)) == 1);
  CHECK(cover_graph_cycle_rank(complete_bipartite(3, 3)) == 4);
  CHECK(cover_graph_is_acyclic(chain(5)));
  CHECK_FALSE(cover_graph_is_acyclic(diamond()));
  // a < b < c plus a < c: the relation a < c is not a cover.
  CHECK(hasse(poset_from_strict(3, {{0, 1}, {1, 2}, {0, 2}})).covers ==
        std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("up-sets match brute force") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& p : enumerate_posets(n)) {
      std::set<Mask> expected;
      for (Mask s = 0; s < bit(n); ++s) {
        bool closed = true;
        for (int x = 0; x < n; ++x) {
          for (int y = 0; y < n; ++y) {
            if (has(s, x) && p.leq(x, y) && !has(s, y)) closed = false;
          }
        }
        if (closed) expected.insert(s);
      }
      std::set<Mask> got;
      for (auto u : enumerate_upsets(p)) got.insert(u.members);
      CHECK(got == expected);
      CHECK(enumerate_downsets(p).size() == expected.size());
    }
  }
  // An antichain has every subset as an up-set; a chain has n + 1.
  CHECK(enumerate_upsets(poset_from_strict(4, {})).size() == 16);
  CHECK(enumerate_upsets(chain(6)).size() == 7);
}

TEST_CASE("increasing maps match brute force") {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& p : enumerate_posets(n)) {
      auto expected = testing::brute_force_maps(p);
      auto got = enumerate_increasing_maps(p);
      std::sort(expected.begin(), expected.end());
      CHECK(got == expected);
    }
  }
  for (const auto& name : figure_names()) {
    const Poset p = named_poset(name);
    CHECK(enumerate_increasing_maps(p).size() == testing::brute_force_maps(p).size());
  }
  CHECK_THROWS_AS(enumerate_increasing_maps(poset_from_strict(9, {})), Error);
  CHECK_THROWS_AS(enumerate_increasing_maps(poset_from_strict(8, {}), 1000), Error);
}

TEST_CASE("map composition") {
  const Poset p = chain(3);
  const auto maps = enumerate_increasing_maps(p);
  for (const auto& f : maps) {
    for (const auto& g : maps) {
      const auto h = f.after(g);
      CHECK(is_increasing(p, h));
      for (int x = 0; x < 3; ++x) CHECK(h(x) == f(g(x)));
    }
  }
  CHECK(identity_map(3).is_identity());
}

TEST_CASE("isomorphism class counts") {
  const std::vector<std::size_t> counts{1, 2, 5, 16, 63, 318};
  for (int n = 1; n <= 6; ++n) CHECK(enumerate_posets(n).size() == counts[n - 1]);
}

TEST_CASE("canonical code is invariant under relabelling") {
  std::mt19937_64 rng(7);
  for (int n = 2; n <= 6; ++n) {
    std::set<std::uint64_t> codes;
    for (const auto& p : enumerate_posets(n)) {
      const auto code = canonical_code(p);
      codes.insert(code.code);
      for (int k = 0; k < 3; ++k) {
        CHECK(canonical_code(relabel(p, testing::random_permutation(n, rng))) == code);
      }
      CHECK(code.self_dual == (canonical_code(dual(p)) == code));
    }
    CHECK(codes.size() == enumerate_posets(n).size());
  }
}

TEST_CASE("induced embeddings") {
  CHECK(find_induced_embedding(chain(2), diamond(), false).has_value());
  // A 3-chain sits in the diamond but not as an induced 3-antichain.
  CHECK(find_induced_embedding(chain(3), diamond(), false).has_value());
  CHECK_FALSE(find_induced_embedding(poset_from_strict(3, {}), diamond(), false).has_value());
  // S1 has one minimum; its dual embeds in S1's dual only.
  const Poset s1 = named_poset("S1");
  CHECK_FALSE(find_induced_embedding(s1, dual(s1), false).has_value());
  const auto e = find_induced_embedding(s1, dual(s1), true);
  REQUIRE(e.has_value());
  CHECK(e->dual);
  CHECK(all_induced_embeddings(diamond(), diamond(), false).size() == 2);
}

TEST_CASE("text format round trip and errors") {
  for (const auto& name : figure_names()) {
    const Poset p = named_poset(name);
    std::istringstream in(poset_to_string(p));
    const Poset q = read_poset(in);
    CHECK(q == p);
    CHECK(q.labels() == p.labels());
  }
  std::istringstream labelled("# comment\nposet 3\nlabels lo mid hi\nrel lo mid\nrel mid hi\n");
  const Poset c = read_poset(labelled);
  CHECK(c.leq(0, 2));

  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_poset(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("rel 0 1\n") == 1);
  CHECK(line_of("poset 2\nrel 0\n") == 2);
  CHECK(line_of("poset 2\n\nrel 0 5\n") == 3);
  CHECK(line_of("poset 2\nfoo\n") == 2);
  CHECK(line_of("poset 3\nrel 0 1\nrel 1 2\nrel 2 0\n") == 1);
  CHECK(line_of("poset 40\n") == 1);
}

TEST_CASE("dot output lists covers") {
  const std::string dot = to_dot(diamond());
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '>') == 4);
}

}  // TEST_SUITE
