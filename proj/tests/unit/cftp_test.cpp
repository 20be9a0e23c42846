#include <doctest.h>

#include <cmath>

#include "monocone/cftp.hpp"
#include "monocone/classify.hpp"
#include "monocone/error.hpp"

using namespace monocone;

namespace {

Generator two_state(int up, int down) {
  Generator l(poset_from_strict(2, {{0, 1}}));
  l.set_rate(0, 1, up);
  l.set_rate(1, 0, down);
  return l;
}

// Realizable generator on the diamond: every non-identity map at weight 1.
std::pair<Generator, LambdaWeights> diamond_maps() {
  const Poset d = diamond();
  const auto spec = indicator_vectors(d);
  RationalVector rates(pair_dimension(4));
  LambdaWeights weights;
  for (std::size_t i = 0; i < spec.maps.size(); ++i) {
    weights.emplace_back(spec.maps[i], 1);
    for (std::size_t k = 0; k < rates.size(); ++k) rates[k] += spec.cone.rays[i][k];
  }
  return {Generator(d, rates), weights};
}

}  // namespace

TEST_SUITE("cftp") {

TEST_CASE("stationary distributions") {
  CHECK(stationary_distribution(two_state(1, 1)) == RationalVector{Rational(1, 2), Rational(1, 2)});
  CHECK(stationary_distribution(two_state(2, 1)) == RationalVector{Rational(1, 3), Rational(2, 3)});
  Generator cycle(poset_from_strict(3, {}));
  cycle.set_rate(0, 1, 1);
  cycle.set_rate(1, 2, 1);
  cycle.set_rate(2, 0, 1);
  CHECK(stationary_distribution(cycle) == RationalVector(3, Rational(1, 3)));
  try {
    stationary_distribution(two_state(1, 0));
    FAIL("accepted");
  } catch (const NotIrreducibleError& e) {
    CHECK(e.classes().size() == 2);
  }
}

TEST_CASE("spec validation") {
  const Generator l = two_state(1, 1);
  CHECK(RdsiSpec::product(l).clocks().size() == 2);
  CHECK(RdsiSpec::product(l).monotone());
  CHECK_THROWS_AS(RdsiSpec::custom(l, {Clock{2, {1, 0}}}), Error);
  CHECK_THROWS_AS(RdsiSpec::custom(l, {Clock{1, {1, 1, 0}}}), Error);
  const auto [g, w] = diamond_maps();
  CHECK(RdsiSpec::maps(g, w).monotone());
  auto short_weights = w;
  short_weights.pop_back();
  CHECK_THROWS_AS(RdsiSpec::maps(g, short_weights), Error);
}

TEST_CASE("forward simulation") {
  const Generator zero(diamond());
  CHECK(simulate_forward(RdsiSpec::product(zero), 100, 1) == std::vector<int>{0, 1, 2, 3});

  // One constant map at rate 1: after time 10 the map is constant except
  // with probability e^-10.
  const Poset c = poset_from_strict(3, {{0, 1}, {1, 2}});
  Generator l(c);
  l.set_rate(0, 2, 1);
  l.set_rate(1, 2, 1);
  const RdsiSpec one = RdsiSpec::custom(l, {Clock{1, {2, 2, 2}}});
  int constant = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    constant += simulate_forward(one, 10, seed) == std::vector<int>{2, 2, 2} ? 1 : 0;
  }
  CHECK(constant >= 199);

  // Two-state symmetric chain: P(stay) at time 1 is (1 + e^-2) / 2.
  const RdsiSpec product = RdsiSpec::product(two_state(1, 1));
  const int runs = 20000;
  int stay = 0;
  for (int seed = 0; seed < runs; ++seed) stay += simulate_forward(product, 1, seed)[0] == 0;
  const double p = (1 + std::exp(-2.0)) / 2;
  const double sd = std::sqrt(p * (1 - p) / runs);
  CHECK(std::abs(double(stay) / runs - p) < 5 * sd);
}

TEST_CASE("event streams are reproducible and cocycle") {
  const auto [g, w] = diamond_maps();
  const RdsiSpec spec = RdsiSpec::maps(g, w);
  CHECK(events_in(spec, 4, 0, 3) == events_in(spec, 4, 0, 3));
  CHECK(events_in(spec, 4, 0, 3) != events_in(spec, 5, 0, 3));
  auto whole = events_in(spec, 4, -2.5, 3);
  auto left = events_in(spec, 4, -2.5, 0.75);
  const auto right = events_in(spec, 4, 0.75, 3);
  left.insert(left.end(), right.begin(), right.end());
  CHECK(left == whole);
  for (std::size_t i = 1; i < whole.size(); ++i) {
    CHECK((whole[i - 1].time < whole[i].time ||
           (whole[i - 1].time == whole[i].time && whole[i - 1].clock < whole[i].clock)));
  }

  for (double s : {0.3, 1.0, 2.7}) {
    const auto first = simulate_window(spec, 0, s, 4);
    const auto second = simulate_window(spec, s, s + 1.9, 4);
    const auto joint = simulate_window(spec, 0, s + 1.9, 4);
    for (int x = 0; x < 4; ++x) CHECK(joint[x] == second[first[x]]);
  }
}

TEST_CASE("coupling from the past") {
  const auto [g, w] = diamond_maps();
  const RdsiSpec spec = RdsiSpec::maps(g, w);
  const Poset& d = g.poset();

  SUBCASE("images stay increasing at every event") {
    CftpOptions options;
    options.tracking = TrackingRequest::kFullState;
    std::size_t calls = 0;
    options.observer = [&](const std::vector<int>& starts, const std::vector<int>& images) {
      ++calls;
      for (std::size_t i = 0; i < starts.size(); ++i) {
        for (std::size_t j = 0; j < starts.size(); ++j) {
          if (d.leq(starts[i], starts[j])) CHECK(d.leq(images[i], images[j]));
        }
      }
    };
    for (std::uint64_t seed = 0; seed < 50; ++seed) cftp_sample(spec, seed, options);
    CHECK(calls > 0);
  }

  SUBCASE("auto tracking uses extremes on connected monotone specs") {
    CHECK(cftp_sample(spec, 1).tracked == Tracking::kExtremesOnly);
    CHECK(cftp_sample(RdsiSpec::product(two_state(1, 1)), 1).tracked == Tracking::kExtremesOnly);
    Generator apart(poset_from_strict(2, {}));
    apart.set_rate(0, 1, 1);
    apart.set_rate(1, 0, 1);
    CHECK(cftp_sample(RdsiSpec::product(apart), 1).tracked == Tracking::kFullState);
  }

  SUBCASE("non-monotone clocks cannot use extremes") {
    Generator l(poset_from_strict(3, {{0, 1}, {1, 2}}));
    l.set_rate(0, 2, 1);
    CftpOptions options;
    options.tracking = TrackingRequest::kExtremesOnly;
    CHECK_THROWS_AS(cftp_sample(RdsiSpec::product(l), 1, options), Error);
  }

  SUBCASE("deeper budgets do not change coalesced outcomes") {
    CftpOptions shallow, deep;
    shallow.max_depth = 8;
    deep.max_depth = 1024;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto a = cftp_sample(spec, seed, shallow);
      const auto b = cftp_sample(spec, seed, deep);
      if (const auto* ca = std::get_if<Coalesced>(&a.outcome)) {
        const auto* cb = std::get_if<Coalesced>(&b.outcome);
        REQUIRE(cb);
        CHECK(ca->state == cb->state);
        CHECK(ca->depth == cb->depth);
      }
    }
  }

  SUBCASE("a shared clock never coalesces") {
    const Generator l = two_state(1, 1);
    const RdsiSpec shared = RdsiSpec::custom(l, {Clock{1, {1, 0}}});
    CftpOptions options;
    options.max_depth = 256;
    const auto r = cftp_sample(shared, 3, options);
    REQUIRE(std::holds_alternative<Timeout>(r.outcome));
    CHECK(std::get<Timeout>(r.outcome).max_depth == 256);
  }
}

TEST_CASE("empirical checks") {
  const RationalVector pi{Rational(1, 2), Rational(1, 2)};
  CHECK_THROWS_AS(empirical_check(std::vector<int>(999, 0), pi), Error);
  std::vector<int> exact;
  for (int i = 0; i < 10000; ++i) exact.push_back(i % 2);
  const auto good = empirical_check(exact, pi);
  CHECK(good.total_variation == doctest::Approx(0));
  CHECK(good.degrees_of_freedom == 1);
  CHECK(good.p_value > 0.99);
  const auto biased = empirical_check(std::vector<int>(10000, 0), pi);
  CHECK(biased.total_variation == doctest::Approx(0.5));
  CHECK(biased.p_value < 0.001);
  const auto impossible = empirical_check(std::vector<int>(1000, 1), {1, 0});
  CHECK(impossible.p_value == 0);
}

}  // TEST_SUITE
