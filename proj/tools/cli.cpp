#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "monocone/cftp.hpp"
#include "monocone/classify.hpp"
#include "monocone/error.hpp"
#include "monocone/monotonicity.hpp"
#include "monocone/polyhedra.hpp"
#include "report.hpp"

#ifndef MONOCONE_FIXTURE_DIR
#define MONOCONE_FIXTURE_DIR "data/fixtures"
#endif

namespace monocone::cli {

using report::json;

std::string fixture_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MONOCONE_FIXTURES"); env && *env) return env;
  return MONOCONE_FIXTURE_DIR;
}

namespace {

struct Config {
  std::string fixtures;
  std::string format = "json";

  std::string poset_path;
  std::string generator_path;
  std::string transition_path;
  std::size_t max_witnesses = 5;

  std::string cone = "mon";
  std::string adjacency = "combinatorial";

  int n = 0;
  bool allow_seven = false;
  int jobs = 1;

  std::vector<std::string> rows;

  std::string case_name;
  int crown_k = 3;

  std::string kind = "product";
  std::uint64_t seed = 1;
  std::size_t count = 10000;
  double max_depth = kDefaultMaxDepth;
  std::string tracking = "auto";
  std::string states_path;
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

DdOptions dd_options(const Config& c) {
  DdOptions dd;
  if (c.adjacency == "algebraic") dd.adjacency = AdjacencyTest::kAlgebraic;
  return dd;
}

int cmd_analyze(const Config& c, std::ostream& out) {
  const Poset p = read_poset_file(c.poset_path);
  if (c.format == "dot") {
    out << to_dot(p);
    return 0;
  }
  if (!c.generator_path.empty()) {
    const Generator l = read_generator_file(c.generator_path, p);
    json j{{"poset", report::poset(p)}, {"generator", report::generator(l)}};
    const auto bad = find_monotonicity_violation(l);
    j["monotone"] = !bad.has_value();
    if (bad) j["violation"] = report::violation(p, *bad);
    const auto verdict = is_realizably_monotone(l);
    if (const auto* yes = std::get_if<Realizable>(&verdict)) {
      j["realizable"] = true;
      j["weights"] = report::weights(p, yes->weights);
    } else {
      j["realizable"] = false;
      j["certificate"] = report::rational_vector(std::get<NotRealizable>(verdict).cert.normal);
    }
    if (c.format == "text") {
      out << "monotone: " << (j["monotone"].get<bool>() ? "yes" : "no") << "\n"
          << "realizable: " << (j["realizable"].get<bool>() ? "yes" : "no") << "\n";
    } else {
      emit(out, j);
    }
    return 0;
  }
  if (!c.transition_path.empty()) {
    const TransitionMatrix t = read_transition_file(c.transition_path, p);
    json j{{"poset", report::poset(p)}};
    const bool monotone = is_monotone_transition(t);
    j["monotone"] = monotone;
    const auto verdict = is_realizably_monotone_transition(t);
    if (const auto* yes = std::get_if<RealizableTransition>(&verdict)) {
      j["realizable"] = true;
      j["distribution"] = report::weights(p, yes->distribution);
    } else {
      j["realizable"] = false;
      j["certificate"] =
          report::rational_vector(std::get<NotRealizableTransition>(verdict).normal);
    }
    if (monotone) {
      const auto lambda = weak_equivalence_witness(t);
      j["weakEquivalenceLambda"] = lambda ? json(lambda->get_str()) : json(nullptr);
    }
    emit(out, j);
    return 0;
  }
  EquivalenceOptions options;
  options.dd = dd_options(c);
  const auto r = equivalence_holds(p, options);
  if (c.format == "text") {
    out << "holds: " << (r.holds ? "yes" : "no") << "\nmon rays: " << r.mon_rays
        << "\nrmon rays: " << r.rmon_rays << "\nwitnesses: " << r.witnesses.size() << "\n";
  } else {
    emit(out, report::equivalence(r, c.max_witnesses));
  }
  return 0;
}

int cmd_rays(const Config& c, std::ostream& out) {
  const Poset p = read_poset_file(c.poset_path);
  VRepCone rays;
  if (c.cone == "mon") {
    rays = monotone_extremal_rays(p, dd_options(c));
  } else if (c.cone == "rmon") {
    const auto spec = indicator_vectors(p);
    rays.dim = spec.cone.dim;
    for (auto i : extremal_indicator_indices(spec)) rays.rays.push_back(spec.cone.rays[i]);
  } else {
    throw Error(ErrorKind::kInvalidArgument, "--cone must be mon or rmon");
  }
  if (c.format == "text") {
    write_cone(out, rays);
    return 0;
  }
  json list = json::array();
  for (const auto& r : rays.rays) list.push_back(report::generator(Generator(p, r)));
  emit(out, {{"poset", report::poset(p)}, {"cone", c.cone}, {"count", rays.rays.size()},
             {"rays", list}});
  return 0;
}

int cmd_classify(const Config& c, std::ostream& out, std::ostream& err) {
  ClassifyOptions options;
  options.allow_seven = c.allow_seven;
  options.jobs = std::max(1, c.jobs);
  options.dd = dd_options(c);
  const auto result = classify_all(c.n, options);
  json j = report::classification(result);
  const auto issues = classification_discrepancies(result);
  j["discrepancies"] = issues;
  emit(out, j);
  for (const auto& issue : issues) err << issue << "\n";
  return issues.empty() ? 0 : 1;
}

int cmd_tables(const Config& c, std::ostream& out, std::ostream& err) {
  const std::string dir = fixture_dir(c.fixtures);
  std::vector<std::pair<std::string, Poset>> posets;
  for (const auto& golden : published_ray_counts()) {
    if (!c.rows.empty() && std::find(c.rows.begin(), c.rows.end(), golden.id) == c.rows.end()) {
      continue;
    }
    posets.emplace_back(golden.id, read_poset_file(dir + "/" + golden.id + ".poset"));
  }
  const auto rows = ray_count_table(posets, dd_options(c));
  json list = json::array();
  for (const auto& row : rows) {
    json r = report::ray_row(row);
    for (const auto& golden : published_ray_counts()) {
      if (golden.id != row.id) continue;
      r["published"] = {{"rmonRays", golden.rmon_rays}, {"monRays", golden.mon_rays}};
      r["match"] = golden == row;
      if (!(golden == row)) {
        err << "MismatchError(" << row.id << "): computed (" << row.rmon_rays << ", "
            << row.mon_rays << "), published (" << golden.rmon_rays << ", " << golden.mon_rays
            << ")\n";
      }
    }
    list.push_back(r);
  }
  const auto bad = table_mismatches(rows);
  emit(out, {{"rows", list}, {"mismatches", bad}});
  return bad.empty() ? 0 : 1;
}

int cmd_examples(std::ostream& out) {
  json list = json::array();
  bool all_ok = true;
  for (const auto& e : builtin_examples()) {
    const bool monotone = is_monotone(e.generator);
    const auto verdict = is_realizably_monotone(e.generator);
    const bool realizable = std::holds_alternative<Realizable>(verdict);
    bool ok = monotone == e.expected_monotone && realizable == e.expected_realizable;
    json j{{"id", e.id},
           {"poset", report::poset(e.poset)},
           {"generator", report::generator(e.generator)},
           {"monotone", monotone},
           {"realizable", realizable},
           {"expectedMonotone", e.expected_monotone},
           {"expectedRealizable", e.expected_realizable}};
    if (const auto* no = std::get_if<NotRealizable>(&verdict)) {
      j["certificate"] = report::rational_vector(no->cert.normal);
    }
    if (e.superposet) {
      const auto emb = find_induced_embedding(e.poset, *e.superposet, false);
      const bool extendable =
          emb && std::holds_alternative<MonotoneExtension>(
                     find_monotone_extension(e.generator, *e.superposet, *emb));
      j["superposet"] = report::poset(*e.superposet);
      j["extendable"] = extendable;
      j["expectedExtendable"] = false;
      ok = ok && !extendable;
    }
    j["ok"] = ok;
    all_ok = all_ok && ok;
    list.push_back(j);
  }
  emit(out, {{"examples", list}, {"allOk", all_ok}});
  return all_ok ? 0 : 1;
}

int cmd_extend(const Config& c, std::ostream& out) {
  const Poset big = read_poset_file(c.poset_path);
  const auto plan = build_extension(extension_case_from_string(c.case_name), big, c.crown_k);
  const auto verdict = verify_extension(plan);
  emit(out, report::extension(plan, verdict));
  return verdict.passed() ? 0 : 1;
}

RdsiSpec sampling_spec(const Config& c, const Generator& l) {
  if (c.kind == "product") return RdsiSpec::product(l);
  if (c.kind == "maps") {
    const auto verdict = is_realizably_monotone(l);
    const auto* yes = std::get_if<Realizable>(&verdict);
    if (!yes) throw Error(ErrorKind::kNotMonotone, "generator is not realizably monotone");
    return RdsiSpec::maps(l, yes->weights);
  }
  if (c.kind == "shared") {
    // One clock moving every state along its single outgoing transition.
    Clock clock{0, std::vector<int>(l.size())};
    for (int x = 0; x < l.size(); ++x) {
      clock.map[x] = x;
      for (int y = 0; y < l.size(); ++y) {
        if (x == y || sgn(l.rate(x, y)) == 0) continue;
        if (clock.map[x] != x || (sgn(clock.rate) != 0 && clock.rate != l.rate(x, y))) {
          throw Error(ErrorKind::kInvalidArgument,
                      "a shared clock needs one outgoing transition per state, all at one rate");
        }
        clock.map[x] = y;
        clock.rate = l.rate(x, y);
      }
    }
    return RdsiSpec::custom(l, {clock});
  }
  throw Error(ErrorKind::kInvalidArgument, "--kind must be product, maps or shared");
}

int cmd_sample(const Config& c, std::ostream& out) {
  const Poset p = read_poset_file(c.poset_path);
  const Generator l = read_generator_file(c.generator_path, p);
  const RdsiSpec spec = sampling_spec(c, l);
  CftpOptions options;
  options.max_depth = c.max_depth;
  if (c.tracking == "full") {
    options.tracking = TrackingRequest::kFullState;
  } else if (c.tracking == "extremes") {
    options.tracking = TrackingRequest::kExtremesOnly;
  } else if (c.tracking != "auto") {
    throw Error(ErrorKind::kInvalidArgument, "--tracking must be auto, full or extremes");
  }

  std::vector<int> samples;
  std::map<double, std::size_t> depths;
  std::size_t timeouts = 0;
  Tracking tracked = Tracking::kFullState;
  for (std::size_t i = 0; i < c.count; ++i) {
    const auto r = cftp_sample(spec, c.seed + i, options);
    tracked = r.tracked;
    if (const auto* done = std::get_if<Coalesced>(&r.outcome)) {
      samples.push_back(done->state);
      ++depths[done->depth];
    } else {
      ++timeouts;
    }
  }

  std::ofstream file;
  std::ostream* states = &out;
  if (!c.states_path.empty()) {
    file.open(c.states_path);
    if (!file) throw Error(ErrorKind::kInvalidArgument, "cannot write " + c.states_path);
    states = &file;
  }
  for (int s : samples) *states << p.label(s) << "\n";

  json histogram = json::object();
  for (const auto& [depth, n] : depths) {
    std::ostringstream key;
    key << depth;
    histogram[key.str()] = n;
  }
  json summary{{"kind", c.kind},
               {"seed", c.seed},
               {"requested", c.count},
               {"coalesced", samples.size()},
               {"timeouts", timeouts},
               {"tracking", tracked == Tracking::kExtremesOnly ? "extremes" : "full"},
               {"depthHistogram", histogram}};
  try {
    const auto pi = stationary_distribution(l);
    summary["stationary"] = report::rational_vector(pi);
    if (samples.size() >= 1000) {
      const auto check = empirical_check(samples, pi);
      summary["totalVariation"] = check.total_variation;
      summary["chiSquare"] = check.chi_square;
      summary["degreesOfFreedom"] = check.degrees_of_freedom;
      summary["pValue"] = check.p_value;
    }
  } catch (const NotIrreducibleError& e) {
    summary["stationary"] = nullptr;
    summary["communicatingClasses"] = e.classes();
  }
  emit(out, summary);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Monotonicity cones of Markov generators on finite posets"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--fixtures", c.fixtures, "Fixture directory (default $MONOCONE_FIXTURES)");
  app.add_option("--adjacency", c.adjacency, "Double description adjacency test")
      ->check(CLI::IsMember({"combinatorial", "algebraic"}));

  auto* analyze = app.add_subcommand("analyze", "Equivalence report, or verdicts for one generator");
  analyze->add_option("poset", c.poset_path)->required()->check(CLI::ExistingFile);
  auto* gen_opt = analyze->add_option("--generator,-g", c.generator_path)->check(CLI::ExistingFile);
  analyze->add_option("--transition,-t", c.transition_path)
      ->check(CLI::ExistingFile)
      ->excludes(gen_opt);
  analyze->add_option("--format", c.format)->check(CLI::IsMember({"json", "text", "dot"}));
  analyze->add_option("--witnesses", c.max_witnesses, "Witness rays to print");

  auto* rays = app.add_subcommand("rays", "Extremal rays of G_mon or G_r.mon");
  rays->add_option("poset", c.poset_path)->required()->check(CLI::ExistingFile);
  rays->add_option("--cone", c.cone)->check(CLI::IsMember({"mon", "rmon"}));
  rays->add_option("--format", c.format)->check(CLI::IsMember({"json", "text"}));

  auto* classify = app.add_subcommand("classify", "Classify every poset of one size");
  classify->add_option("n", c.n)->required()->check(CLI::Range(2, 7));
  classify->add_flag("--allow-seven", c.allow_seven, "Permit n = 7");
  classify->add_option("--jobs,-j", c.jobs)->check(CLI::PositiveNumber);

  auto* tables = app.add_subcommand("tables", "Ray counts of S1..S9 against published values");
  tables->add_option("--rows", c.rows, "Restrict to these rows")->delimiter(',');

  auto* examples = app.add_subcommand("examples", "Verdicts for the built-in examples");

  auto* extend = app.add_subcommand("extend", "Build and verify a monotone extension");
  extend->add_option("case", c.case_name, "S1..S8 or kcrown")->required();
  extend->add_option("poset", c.poset_path)->required()->check(CLI::ExistingFile);
  extend->add_option("--k", c.crown_k, "Crown size for the kcrown case")->check(CLI::Range(2, 8));

  auto* sample = app.add_subcommand("sample", "Coupling-from-the-past samples");
  sample->add_option("poset", c.poset_path)->required()->check(CLI::ExistingFile);
  sample->add_option("generator", c.generator_path)->required()->check(CLI::ExistingFile);
  sample->add_option("--kind", c.kind)->check(CLI::IsMember({"product", "maps", "shared"}));
  sample->add_option("--seed", c.seed);
  sample->add_option("--count,-n", c.count);
  sample->add_option("--max-depth", c.max_depth)->check(CLI::PositiveNumber);
  sample->add_option("--tracking", c.tracking)
      ->check(CLI::IsMember({"auto", "full", "extremes"}));
  sample->add_option("--states", c.states_path, "Write states here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(c, out);
    if (*rays) return cmd_rays(c, out);
    if (*classify) return cmd_classify(c, out, err);
    if (*tables) return cmd_tables(c, out, err);
    if (*examples) return cmd_examples(out);
    if (*extend) return cmd_extend(c, out);
    if (*sample) return cmd_sample(c, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace monocone::cli
