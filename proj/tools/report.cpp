#include "report.hpp"

namespace monocone::report {

json rational_vector(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

json poset(const Poset& p) {
  json covers = json::array();
  for (auto [x, y] : hasse(p).covers) covers.push_back({p.label(x), p.label(y)});
  return {{"size", p.size()}, {"labels", p.labels()}, {"covers", covers}};
}

json generator(const Generator& l) {
  json rates = json::array();
  for (int x = 0; x < l.size(); ++x) {
    for (int y = 0; y < l.size(); ++y) {
      if (x != y && sgn(l.rate(x, y)) != 0) {
        rates.push_back({{"from", l.poset().label(x)},
                         {"to", l.poset().label(y)},
                         {"rate", l.rate(x, y).get_str()}});
      }
    }
  }
  return rates;
}

json violation(const Poset& p, const MonotonicityViolation& v) {
  json members = json::array();
  for (int z = 0; z < p.size(); ++z) {
    if (v.gamma.contains(z)) members.push_back(p.label(z));
  }
  return {{"upset", members}, {"x", p.label(v.x)}, {"y", p.label(v.y)}, {"value", v.value.get_str()}};
}

namespace {

json map_json(const Poset& p, const IncreasingMap& f) {
  json m = json::object();
  for (int x = 0; x < p.size(); ++x) m[p.label(x)] = p.label(f(x));
  return m;
}

}  // namespace

json weights(const Poset& p, const LambdaWeights& w) {
  json out = json::array();
  for (const auto& [f, value] : w) out.push_back({{"map", map_json(p, f)}, {"weight", value.get_str()}});
  return out;
}

json equivalence(const EquivalenceReport& r, std::size_t max_witnesses) {
  json witnesses = json::array();
  for (std::size_t i = 0; i < r.witnesses.size() && i < max_witnesses; ++i) {
    const Generator l(r.poset, r.witnesses[i].ray);
    witnesses.push_back({{"generator", generator(l)},
                         {"certificate", rational_vector(r.witnesses[i].cert.normal)}});
  }
  return {{"poset", poset(r.poset)},
          {"holds", r.holds},
          {"monRays", r.mon_rays},
          {"rmonRays", r.rmon_rays},
          {"witnessCount", r.witnesses.size()},
          {"witnesses", witnesses}};
}

json failing_class(const FailingClass& f) {
  return {{"code", f.code.hex()},
          {"selfDual", f.code.self_dual},
          {"figure", f.figure ? json(*f.figure) : json(nullptr)},
          {"induced", f.induced},
          {"notes",
           {{"cycleRank", f.notes.cycle_rank},
            {"connected", f.notes.connected},
            {"uniqueCycleIsDiamond", f.notes.unique_cycle_is_diamond},
            {"yOffCycle", f.notes.y_off_cycle}}},
          {"report", equivalence(f.report, 1)}};
}

json classification(const ClassificationResult& r) {
  json failing = json::array();
  for (const auto& f : r.failing) failing.push_back(failing_class(f));
  return {{"cardinality", r.cardinality},
          {"totalClasses", r.total_classes},
          {"failingClasses", r.failing.size()},
          {"failingUpToSymmetry", r.failing_up_to_symmetry},
          {"failing", failing}};
}

json ray_row(const RayCountRow& row) {
  return {{"poset", row.id}, {"rmonRays", row.rmon_rays}, {"monRays", row.mon_rays}};
}

json extension(const ExtensionPlan& plan, const ExtensionReport& verdict) {
  const Poset& big = plan.big_poset;
  json blocks = json::array();
  for (const auto& b : plan.partition) {
    json members = json::array();
    for (int z = 0; z < big.size(); ++z) {
      if (has(b.members, z)) members.push_back(big.label(z));
    }
    blocks.push_back({{"name", b.name}, {"members", members}, {"targets", b.targets}});
  }
  json embedding = json::object();
  for (int i = 0; i < plan.base_poset.size(); ++i) {
    embedding[plan.base_poset.label(i)] = big.label(plan.embedding.map[i]);
  }
  json out{{"case", to_string(plan.base_case)},
           {"bigPoset", poset(big)},
           {"embedding", embedding},
           {"dualEmbedding", plan.embedding.dual},
           {"partition", blocks},
           {"extendedGenerator", generator(plan.extended_generator)},
           {"monotone", verdict.monotone},
           {"restricts", verdict.restricts},
           {"notRealizable", verdict.not_realizable},
           {"passed", verdict.passed()}};
  if (plan.base_case == ExtensionCase::kCrown) out["k"] = plan.crown_k;
  if (verdict.violation) out["violation"] = violation(big, *verdict.violation);
  if (verdict.certificate) out["certificate"] = rational_vector(verdict.certificate->normal);
  return out;
}

}  // namespace monocone::report
