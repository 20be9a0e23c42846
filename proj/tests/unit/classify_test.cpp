#include <doctest.h>

#include "monocone/classify.hpp"
#include "monocone/error.hpp"

using namespace monocone;

TEST_SUITE("classify") {

TEST_CASE("named posets") {
  for (const auto& name : figure_names()) {
    const Poset p = named_poset(name);
    CHECK(p.is_connected());
    CHECK(identify_figure(p) == name);
    CHECK(identify_figure(dual(p)) == name);
  }
  CHECK(named_poset("S1").size() == 5);
  CHECK(named_poset("S9").size() == 6);
  CHECK_THROWS_AS(named_poset("S10"), Error);
  CHECK_FALSE(identify_figure(diamond()).has_value());
  // The 3-crown is S7.
  CHECK(identify_figure(kcrown(3)) == "S7");
  CHECK(hasse(kcrown(4)).covers.size() == 8);
  // S8 sits inside the complete 3-crown, but never as an induced copy.
  CHECK_FALSE(find_induced_embedding(named_poset("S8"), complete_bipartite(3, 3), true));
  CHECK(find_induced_embedding(named_poset("S8"), named_poset("S8z"), false));
  CHECK_THROWS_AS(kcrown(1), Error);
}

TEST_CASE("builtin examples carry their expected verdicts") {
  const auto examples = builtin_examples();
  CHECK(examples.size() == 14);
  for (const auto& e : examples) {
    CAPTURE(e.id);
    CHECK(is_monotone(e.generator) == e.expected_monotone);
    CHECK(std::holds_alternative<Realizable>(is_realizably_monotone(e.generator)) ==
          e.expected_realizable);
  }
}

TEST_CASE("shape notes") {
  const auto d = shape_notes(diamond());
  CHECK(d.cycle_rank == 1);
  CHECK(d.unique_cycle_is_diamond);
  CHECK_FALSE(shape_notes(bowtie()).unique_cycle_is_diamond);
  CHECK(shape_notes(complete_bipartite(3, 3)).cycle_rank == 4);
  CHECK_FALSE(shape_notes(poset_from_strict(2, {})).connected);
}

TEST_CASE("classification below six points") {
  for (int n = 2; n <= 4; ++n) {
    const auto r = classify_all(n);
    CHECK(r.failing.empty());
    CHECK(classification_discrepancies(r).empty());
  }
  ClassifyOptions two_jobs;
  two_jobs.jobs = 2;
  const auto r = classify_all(5, two_jobs);
  CHECK(r.total_classes == 63);
  CHECK(r.failing_up_to_symmetry == 5);
  CHECK(classification_discrepancies(r).empty());
  const auto serial = classify_all(5);
  REQUIRE(serial.failing.size() == r.failing.size());
  for (std::size_t i = 0; i < r.failing.size(); ++i) {
    CHECK(serial.failing[i].code == r.failing[i].code);
  }
  CHECK_THROWS_AS(classify_all(7), Error);
}

TEST_CASE("a tampered classification is flagged") {
  auto r = classify_all(5);
  r.failing.pop_back();
  CHECK_FALSE(classification_discrepancies(r).empty());
}

TEST_CASE("ray count table") {
  const auto rows = ray_count_table({{"S1", named_poset("S1")}, {"S2", named_poset("S2")}});
  CHECK(table_mismatches(rows).empty());
  auto wrong = rows;
  wrong[1].mon_rays += 1;
  CHECK(table_mismatches(wrong) == std::vector<std::string>{"S2"});
  CHECK(published_ray_counts().size() == 9);
}

TEST_CASE("extension plans") {
  CHECK(extension_case_from_string("S4") == ExtensionCase::kS4);
  CHECK(extension_case_from_string("kcrown") == ExtensionCase::kCrown);
  CHECK_THROWS_AS(extension_case_from_string("S9"), Error);
  for (auto c : {ExtensionCase::kS1, ExtensionCase::kS5}) {
    const auto base = extension_base(c);
    CHECK(is_monotone(base.generator));
    // The base poset is its own superposet: the plan adds nothing.
    const auto plan = build_extension(c, base.poset);
    CHECK(verify_extension(plan).passed());
  }
  // S1 plus an isolated point, and S1 under a new maximum.
  const Poset s1 = named_poset("S1");
  std::vector<std::pair<int, int>> less;
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 5; ++y) {
      if (s1.less(x, y)) less.emplace_back(x, y);
    }
  }
  for (bool top : {false, true}) {
    auto rel = less;
    if (top) {
      for (int x = 0; x < 5; ++x) rel.emplace_back(x, 5);
    }
    const auto plan = build_extension(ExtensionCase::kS1, poset_from_strict(6, rel));
    CHECK(plan.extended_generator.size() == 6);
    CHECK(verify_extension(plan).passed());
  }
  CHECK_THROWS_AS(build_extension(ExtensionCase::kS1, diamond()), Error);
  const auto crown = build_extension(ExtensionCase::kCrown, kcrown(4), 4);
  CHECK(verify_extension(crown).passed());
}

TEST_CASE("a broken plan fails verification") {
  auto plan = build_extension(ExtensionCase::kS2, named_poset("S2"));
  plan.extended_generator = Generator(plan.big_poset);
  const auto report = verify_extension(plan);
  CHECK_FALSE(report.restricts);
  CHECK_FALSE(report.passed());
}

TEST_CASE("monotone extension search") {
  const auto examples = builtin_examples();
  for (const auto& e : examples) {
    if (e.id != "ex11") continue;
    REQUIRE(e.superposet);
    const auto emb = find_induced_embedding(e.poset, *e.superposet, false);
    REQUIRE(emb);
    CHECK(std::holds_alternative<NoMonotoneExtension>(
        find_monotone_extension(e.generator, *e.superposet, *emb)));
  }
  // Every monotone generator on the diamond extends to the diamond with a
  // point on top.
  const Poset big = poset_from_strict(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}});
  Generator l(diamond());
  l.set_rate(0, 1, 1);
  l.set_rate(2, 3, 1);
  REQUIRE(is_monotone(l));
  const auto emb = find_induced_embedding(diamond(), big, false);
  REQUIRE(emb);
  const auto found = find_monotone_extension(l, big, *emb);
  REQUIRE(std::holds_alternative<MonotoneExtension>(found));
  CHECK(is_monotone(std::get<MonotoneExtension>(found).generator));
}

TEST_CASE("complete crowns") {
  CHECK(complete_crown_check(2, 2).holds);
  CHECK(complete_crown_check(2, 3).holds);
  CHECK_THROWS_AS(complete_crown_check(1, 3), Error);
  CHECK_THROWS_AS(complete_crown_check(4, 4), Error);
}

}  // TEST_SUITE
