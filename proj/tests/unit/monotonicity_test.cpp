#include <doctest.h>

#include <random>
#include <sstream>

#include "monocone/classify.hpp"
#include "monocone/error.hpp"
#include "monocone/monotonicity.hpp"
#include "support.hpp"

using namespace monocone;

namespace {

Poset chain(int n) {
  std::vector<std::pair<int, int>> less;
  for (int i = 0; i + 1 < n; ++i) less.emplace_back(i, i + 1);
  return poset_from_strict(n, less);
}

// Oracle for stochastic monotonicity: for every up-set G and x <= y outside
// G, the rate from x into G is at most the rate from y into G; for x <= y
// inside G, the rate from x out of G is at least that from y. Up-sets come
// from brute force over all subsets.
bool monotone_by_definition(const Generator& l) {
  const Poset& p = l.poset();
  const int n = p.size();
  for (Mask g = 0; g < bit(n); ++g) {
    bool closed = true;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (has(g, x) && p.leq(x, y) && !has(g, y)) closed = false;
      }
    }
    if (!closed) continue;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (x == y || !p.leq(x, y)) continue;
        if (!has(g, x) && !has(g, y) && l.rate_into(x, g) > l.rate_into(y, g)) return false;
        if (has(g, x) && has(g, y) &&
            l.rate_into(x, p.all() & ~g) < l.rate_into(y, p.all() & ~g)) {
          return false;
        }
      }
    }
  }
  return true;
}

Generator random_generator(const Poset& p, std::mt19937_64& rng, int density) {
  std::uniform_int_distribution<int> coin(0, 9), rate(1, 3);
  Generator l(p);
  for (int x = 0; x < p.size(); ++x) {
    for (int y = 0; y < p.size(); ++y) {
      if (x != y && coin(rng) < density) l.set_rate(x, y, rate(rng));
    }
  }
  return l;
}

}  // namespace

TEST_SUITE("monotonicity") {

TEST_CASE("coordinates") {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k < pair_dimension(n); ++k) {
      const auto [x, y] = pair_at(n, k);
      CHECK(x != y);
      CHECK(pair_index(n, x, y) == k);
    }
  }
}

TEST_CASE("generator validation") {
  const Poset p = chain(2);
  CHECK_THROWS_AS(Generator(p, RationalVector{1}), Error);
  CHECK_THROWS_AS(Generator(p, RationalVector{1, -1}), Error);
  Generator l(p, RationalVector{2, 1});
  CHECK(l.rate(0, 1) == 2);
  CHECK(l.exit_rate(1) == 1);
  CHECK(l.max_exit_rate() == 2);
}

TEST_CASE("monotone cone agrees with the up-set definition") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 4; ++n) {
    for (const auto& p : enumerate_posets(n)) {
      for (int trial = 0; trial < 20; ++trial) {
        const Generator l = random_generator(p, rng, 3);
        const bool expected = monotone_by_definition(l);
        CHECK(is_monotone(l) == expected);
        const auto v = find_monotonicity_violation(l);
        CHECK(v.has_value() == !expected);
        if (v) {
          CHECK(v->value < 0);
          CHECK(is_upset(p, v->gamma.members));
        }
      }
    }
  }
}

TEST_CASE("a jump over a comparable state breaks monotonicity") {
  Generator l(chain(3));
  l.set_rate(0, 2, 1);
  const auto v = find_monotonicity_violation(l);
  REQUIRE(v.has_value());
  CHECK(v->gamma.members == bit(2));
  CHECK_FALSE(std::holds_alternative<Realizable>(is_realizably_monotone(l)));
}

TEST_CASE("indicator cone is inside the monotone cone") {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& p : enumerate_posets(n)) {
      const auto h = monotone_cone(p);
      const auto spec = indicator_vectors(p);
      CHECK(spec.maps.size() + 1 == testing::brute_force_maps(p).size());
      for (std::size_t i = 0; i < spec.maps.size(); ++i) {
        CHECK(spec.cone.rays[i] == indicator(spec.maps[i]));
        CHECK(satisfies(h.cone, spec.cone.rays[i]));
      }
    }
  }
}

TEST_CASE("realizable verdicts reconstruct and certificates separate") {
  std::mt19937_64 rng(9);
  for (const auto& name : {"S1", "S3", "diamond"}) {
    const Poset p = named_poset(name);
    const auto spec = indicator_vectors(p);
    for (int trial = 0; trial < 20; ++trial) {
      const Generator l = random_generator(p, rng, 2);
      if (!is_monotone(l)) continue;
      const auto verdict = is_realizably_monotone(l);
      if (const auto* yes = std::get_if<Realizable>(&verdict)) {
        CHECK(reconstructs(l, yes->weights));
        for (const auto& [f, w] : yes->weights) {
          CHECK(w > 0);
          CHECK(is_increasing(p, f));
        }
      } else {
        CHECK(certificate_holds(spec.cone, l.point(), std::get<NotRealizable>(verdict).cert));
      }
    }
  }
}

TEST_CASE("acyclic posets: monotone means realizable") {
  std::mt19937_64 rng(13);
  for (int n = 2; n <= 4; ++n) {
    for (const auto& p : enumerate_posets(n)) {
      if (!cover_graph_is_acyclic(p)) continue;
      for (int trial = 0; trial < 30; ++trial) {
        const Generator l = random_generator(p, rng, 4);
        if (!is_monotone(l)) continue;
        CHECK(std::holds_alternative<Realizable>(is_realizably_monotone(l)));
      }
    }
  }
}

TEST_CASE("equivalence on small posets") {
  CHECK(equivalence_holds(chain(1)).holds);
  CHECK(equivalence_holds(chain(3)).holds);
  CHECK(equivalence_holds(diamond()).holds);
  const auto s1 = equivalence_holds(named_poset("S1"));
  CHECK_FALSE(s1.holds);
  CHECK(s1.mon_rays == 41);
  CHECK(s1.rmon_rays == 40);
  REQUIRE(s1.witnesses.size() == 1);
  const auto spec = indicator_vectors(named_poset("S1"));
  CHECK(certificate_holds(spec.cone, s1.witnesses[0].ray, s1.witnesses[0].cert));
  CHECK_THROWS_AS(equivalence_holds(poset_from_strict(7, {})), Error);
}

TEST_CASE("extremal indicators agree with generic minimisation") {
  for (const auto& name : {"S1", "S2", "diamond", "bowtie"}) {
    const auto spec = indicator_vectors(named_poset(name));
    CHECK(extremal_indicator_indices(spec).size() == minimize_rays(spec.cone).rays.size());
  }
}

TEST_CASE("discrete time") {
  const Poset p = chain(2);
  const Generator l(p, RationalVector{2, 1});
  CHECK_THROWS_AS(transition_of(l, Rational(1)), Error);
  const TransitionMatrix t = transition_of(l, Rational(1, 4));
  CHECK(t.prob(0, 0) == Rational(1, 2));
  CHECK(t.prob(0, 1) == Rational(1, 2));
  CHECK(t.prob(1, 0) == Rational(1, 4));
  CHECK(generator_of(t, Rational(1, 4)) == l);
  CHECK(mix_with_identity(t, Rational(1, 2)).prob(1, 1) == Rational(7, 8));
  CHECK(is_monotone_transition(t));
  CHECK(std::holds_alternative<RealizableTransition>(is_realizably_monotone_transition(t)));
  CHECK_THROWS_AS(TransitionMatrix(p, {{Rational(1, 2), Rational(1, 3)}, {0, 1}}), Error);

  // The S1 witness ray is monotone but only weakly bridges to nothing.
  const auto s1 = equivalence_holds(named_poset("S1"));
  const Generator w(named_poset("S1"), s1.witnesses[0].ray);
  const auto tw = transition_of(w, 1 / (2 * w.max_exit_rate()));
  CHECK(is_monotone_transition(tw));
  CHECK_FALSE(weak_equivalence_witness(tw).has_value());

  Generator bad(chain(3));
  bad.set_rate(0, 2, 1);
  CHECK_THROWS_AS(weak_equivalence_witness(transition_of(bad, Rational(1, 2))), Error);
}

TEST_CASE("file formats") {
  const Poset p = named_poset("S1");
  const Generator l = builtin_examples().front().generator;
  std::stringstream s;
  write_generator(s, l);
  CHECK(read_generator(s, p) == l);

  std::istringstream labelled("gen 5\nrate d b 1/2\n");
  CHECK(read_generator(labelled, p).rate(p.index_of("d"), p.index_of("b")) == Rational(1, 2));

  auto line_of = [&](const std::string& text) {
    std::istringstream in(text);
    try {
      read_generator(in, p);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("gen 4\n") == 1);
  CHECK(line_of("gen 5\nrate a a 1\n") == 2);
  CHECK(line_of("gen 5\nrate a q 1\n") == 2);
  CHECK(line_of("gen 5\nrate a b -1\n") == 2);
  CHECK(line_of("gen 5\n\nrate a b 1/0\n") == 3);

  const TransitionMatrix t = transition_of(l, Rational(1, 10));
  std::stringstream ts;
  write_transition(ts, t);
  CHECK(read_transition(ts, p).rows() == t.rows());
  std::istringstream implicit("trans 5\nprob a b 1/4\n");
  CHECK(read_transition(implicit, p).prob(0, 0) == Rational(3, 4));
}

}  // TEST_SUITE
