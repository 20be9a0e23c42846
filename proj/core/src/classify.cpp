#include "monocone/classify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "monocone/error.hpp"
#include "monocone/lp.hpp"

namespace monocone {

namespace {

using Relations = std::vector<std::pair<std::string, std::string>>;

const std::vector<std::string> kFive{"a", "b", "c", "d", "w"};
const std::vector<std::string> kSix{"a", "b", "c", "d", "e", "f"};

Poset from_names(const std::vector<std::string>& labels, const Relations& less) {
  return poset_from_named(labels, less);
}

using RateList = std::vector<std::tuple<std::string, std::string, Rational>>;

RateList unit_rates(const Relations& pairs) {
  RateList out;
  for (const auto& [x, y] : pairs) out.emplace_back(x, y, Rational(1));
  return out;
}

const Relations kEx1{{"d", "c"}, {"d", "b"}, {"b", "w"}, {"c", "w"}, {"a", "w"}};
const Relations kEx2{{"a", "c"}, {"w", "c"}, {"d", "c"}, {"b", "d"}, {"b", "a"}};
const Relations kEx3{{"a", "w"}, {"b", "w"}, {"c", "d"}, {"w", "d"}, {"d", "w"}};
const Relations kEx4{{"a", "b"}, {"w", "b"}, {"d", "b"}, {"b", "d"}, {"c", "d"}};
const Relations kEx5{{"c", "a"}, {"d", "a"}, {"b", "a"}, {"w", "c"}, {"w", "d"}};
const Relations kEx6{{"a", "c"}, {"d", "c"}, {"c", "b"}, {"b", "e"}, {"f", "e"}};
const Relations kEx7{{"a", "c"}, {"b", "c"}, {"f", "c"},
                     {"d", "c"}, {"c", "d"}, {"e", "d"}};
const Relations kEx9{{"a", "c"}, {"b", "c"}, {"e", "c"}, {"b", "e"}, {"f", "e"},
                     {"d", "e"}, {"a", "d"}, {"f", "d"}, {"e", "d"}};
const Relations kEx10{{"f", "e"}, {"b", "e"}, {"d", "e"},
                      {"e", "d"}, {"a", "c"}, {"c", "a"}};

std::string crown_label(char side, int i) { return std::string(1, side) + std::to_string(i); }

}  // namespace

Poset diamond() {
  return from_names({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
}

Poset bowtie() {
  return from_names({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

Poset kcrown(int k) {
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "k-crown needs k >= 2");
  if (2 * k > kMaxElements) throw Error(ErrorKind::kSizeLimitExceeded, "k-crown too large");
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i) labels.push_back(crown_label('x', i));
  for (int i = 0; i < k; ++i) labels.push_back(crown_label('y', i));
  Relations less;
  for (int i = 0; i < k; ++i) {
    less.emplace_back(crown_label('x', i), crown_label('y', i));
    less.emplace_back(crown_label('x', i), crown_label('y', (i + k - 1) % k));
  }
  return from_names(labels, less);
}

Poset complete_bipartite(int bottom, int top) {
  if (bottom < 1 || top < 1) throw Error(ErrorKind::kInvalidArgument, "empty side");
  if (bottom + top > kMaxElements) {
    throw Error(ErrorKind::kSizeLimitExceeded, "complete bipartite poset too large");
  }
  std::vector<std::string> labels;
  for (int i = 0; i < bottom; ++i) labels.push_back(crown_label('a', i));
  for (int j = 0; j < top; ++j) labels.push_back(crown_label('b', j));
  Relations less;
  for (int i = 0; i < bottom; ++i) {
    for (int j = 0; j < top; ++j) less.emplace_back(crown_label('a', i), crown_label('b', j));
  }
  return from_names(labels, less);
}

Poset named_poset(const std::string& name) {
  static const std::map<std::string, std::function<Poset()>> table{
      {"S1", [] {
         return from_names(kFive, {{"w", "a"}, {"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
       }},
      {"S2", [] {
         return from_names(kFive, {{"a", "b"}, {"a", "c"}, {"a", "w"},
                                   {"b", "d"}, {"c", "d"}, {"w", "d"}});
       }},
      {"S3", [] {
         return from_names(kFive, {{"a", "b"}, {"b", "d"}, {"a", "c"}, {"c", "w"}, {"w", "d"}});
       }},
      {"S4", [] {
         return from_names(kFive, {{"a", "d"}, {"a", "w"}, {"w", "c"}, {"b", "c"}, {"b", "d"}});
       }},
      {"S5", [] {
         return from_names(kFive, {{"a", "c"}, {"a", "d"}, {"b", "c"},
                                   {"b", "d"}, {"c", "w"}, {"d", "w"}});
       }},
      {"S6", [] {
         return from_names(kSix, {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "e"},
                                  {"c", "e"}, {"c", "f"}, {"d", "f"}});
       }},
      {"S7", [] {
         return from_names(kSix, {{"a", "d"}, {"a", "f"}, {"b", "e"},
                                  {"b", "f"}, {"c", "d"}, {"c", "e"}});
       }},
      {"S8", [] {
         return from_names(kSix, {{"a", "e"}, {"a", "f"}, {"b", "d"}, {"b", "e"},
                                  {"b", "f"}, {"c", "d"}, {"c", "e"}});
       }},
      {"S9", [] {
         return from_names(kSix, {{"a", "d"}, {"a", "e"}, {"a", "f"}, {"b", "d"},
                                  {"b", "e"}, {"b", "f"}, {"c", "d"}, {"c", "e"}});
       }},
      {"K33", [] {
         Relations less;
         for (const char* x : {"a", "b", "c"}) {
           for (const char* y : {"d", "e", "f"}) less.emplace_back(x, y);
         }
         return from_names(kSix, less);
       }},
      {"S8z", [] {
         return from_names({"a", "b", "c", "d", "e", "f", "z"},
                           {{"a", "e"}, {"a", "f"}, {"b", "d"}, {"b", "e"}, {"b", "f"},
                            {"c", "d"}, {"c", "e"}, {"e", "z"}, {"f", "z"}});
       }},
      {"S9acyclic", [] {
         return from_names({"a", "b", "c", "d", "e", "f", "w", "w1", "w2"},
                           {{"a", "w1"}, {"b", "w1"}, {"w1", "w"}, {"w1", "f"},
                            {"w", "w2"}, {"c", "w2"}, {"w2", "d"}, {"w2", "e"}});
       }},
      {"diamond", [] { return diamond(); }},
      {"bowtie", [] { return bowtie(); }},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorKind::kInvalidArgument, "unknown poset " + name);
  return it->second();
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"S1", "S2", "S3", "S4", "S5",
                                              "S6", "S7", "S8", "S9"};
  return names;
}

NamedExample kcrown_example(int k) {
  const Poset p = kcrown(k);
  const int top = k - 1;
  const auto x = [](int i) { return crown_label('x', i); };
  const auto y = [](int i) { return crown_label('y', i); };
  Relations rates{{x(top), y(top)}, {y(top - 1), y(top)}, {y(top), x(top)}};
  for (int i = 0; i < top; ++i) rates.emplace_back(x(i), x(top));
  for (int i = 0; i + 2 <= top; ++i) rates.emplace_back(y(i), x(top));
  return NamedExample{"kcrown(" + std::to_string(k) + ")", p,
                      named_generator(p, unit_rates(rates)), true, false, std::nullopt};
}

std::vector<NamedExample> builtin_examples() {
  std::vector<NamedExample> out;
  const auto add = [&](std::string id, const std::string& poset, const Relations& rates,
                       bool realizable) {
    const Poset p = named_poset(poset);
    out.push_back(NamedExample{std::move(id), p, named_generator(p, unit_rates(rates)), true,
                               realizable, std::nullopt});
  };
  add("ex1", "S1", kEx1, false);
  add("ex2", "S2", kEx2, false);
  add("ex3", "S3", kEx3, false);
  add("ex4", "S4", kEx4, false);
  add("ex5", "S5", kEx5, false);
  add("ex6", "S6", kEx6, false);
  add("ex7", "S7", kEx7, false);
  add("ex8", "S8", kEx7, false);
  add("ex9", "S9", kEx9, false);
  add("ex10", "S8", kEx10, false);
  add("ex10-K33", "K33", kEx10, true);
  add("ex11", "S8", kEx10, false);
  out.back().superposet = named_poset("S8z");
  out.push_back(kcrown_example(3));
  out.push_back(kcrown_example(4));
  return out;
}

ShapeNotes shape_notes(const Poset& p) {
  ShapeNotes notes;
  notes.cycle_rank = cover_graph_cycle_rank(p);
  notes.connected = p.is_connected();
  const auto covers = hasse(p).covers;

  // With one independent cycle, its edges are exactly the non-bridges.
  Mask cycle = 0;
  if (notes.cycle_rank == 1) {
    for (std::size_t skip = 0; skip < covers.size(); ++skip) {
      std::vector<std::pair<int, int>> rest;
      for (std::size_t i = 0; i < covers.size(); ++i) {
        if (i != skip) rest.push_back(covers[i]);
      }
      // Removing a cycle edge leaves the cover graph a forest.
      std::vector<int> parent(p.size());
      for (int i = 0; i < p.size(); ++i) parent[i] = i;
      std::function<int(int)> find = [&](int v) {
        return parent[v] == v ? v : parent[v] = find(parent[v]);
      };
      bool forest = true;
      for (auto [a, b] : rest) {
        const int ra = find(a), rb = find(b);
        if (ra == rb) forest = false;
        parent[ra] = rb;
      }
      if (forest) cycle |= bit(covers[skip].first) | bit(covers[skip].second);
    }
    if (popcount(cycle) == 4) {
      int bottoms = 0, tops = 0;
      for (int v = 0; v < p.size(); ++v) {
        if (!has(cycle, v)) continue;
        if ((p.up(v) & cycle) == cycle) ++bottoms;
        if ((p.down(v) & cycle) == cycle) ++tops;
      }
      notes.unique_cycle_is_diamond = bottoms == 1 && tops == 1;
    }
  }

  // Y: p < q < u, q < v, u || v (or the dual), sharing at most one point
  // with the cycle.
  const int n = p.size();
  for (int q = 0; q < n && !notes.y_off_cycle; ++q) {
    for (int s = 0; s < n && !notes.y_off_cycle; ++s) {
      for (int u = 0; u < n && !notes.y_off_cycle; ++u) {
        for (int v = u + 1; v < n && !notes.y_off_cycle; ++v) {
          const Mask pts = bit(q) | bit(s) | bit(u) | bit(v);
          if (popcount(pts) != 4 || popcount(pts & cycle) > 1) continue;
          if (p.comparable(u, v)) continue;
          const bool upward = p.less(s, q) && p.less(q, u) && p.less(q, v);
          const bool downward = p.less(q, s) && p.less(u, q) && p.less(v, q);
          notes.y_off_cycle = upward || downward;
        }
      }
    }
  }
  return notes;
}

namespace {

struct FigureCodes {
  std::vector<std::pair<std::uint64_t, std::string>> codes;
};

const FigureCodes& figure_codes() {
  static const FigureCodes table = [] {
    FigureCodes t;
    for (const auto& name : figure_names()) {
      const Poset p = named_poset(name);
      t.codes.emplace_back(canonical_code(p).code, name);
      t.codes.emplace_back(canonical_code(dual(p)).code, name);
    }
    return t;
  }();
  return table;
}

}  // namespace

std::optional<std::string> identify_figure(const Poset& p) {
  if (p.size() < 5 || p.size() > 6) return std::nullopt;
  const auto code = canonical_code(p).code;
  for (const auto& name : figure_names()) {
    if (named_poset(name).size() != p.size()) continue;
    for (const auto& [c, n] : figure_codes().codes) {
      if (n == name && c == code) return name;
    }
  }
  return std::nullopt;
}

ClassificationResult classify_all(int n, const ClassifyOptions& options) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "classification needs n >= 2");
  if (n > 7 || (n == 7 && !options.allow_seven)) {
    throw Error(ErrorKind::kSizeLimitExceeded,
                "classification beyond 6 points needs the explicit opt-in (max 7)");
  }
  ClassificationResult result;
  result.cardinality = n;
  const auto classes = enumerate_posets(n);
  result.total_classes = classes.size();
  EquivalenceOptions eq;
  eq.max_size = n;
  eq.dd = options.dd;
  std::vector<std::optional<EquivalenceReport>> reports(classes.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  const auto work = [&] {
    for (std::size_t i = next++; i < classes.size(); i = next++) {
      try {
        auto report = equivalence_holds(classes[i], eq);
        if (!report.holds) reports[i] = std::move(report);
      } catch (...) {
        const std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> workers;
  for (int t = 1; t < options.jobs; ++t) workers.emplace_back(work);
  work();
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);

  std::set<std::uint64_t> merged;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!reports[i]) continue;
    const Poset& p = classes[i];
    FailingClass f;
    f.code = canonical_code(p);
    f.report = std::move(*reports[i]);
    f.figure = identify_figure(p);
    for (int k = 0; k < 5; ++k) {
      const auto& name = figure_names()[k];
      if (n > 5 && find_induced_embedding(named_poset(name), p, true)) f.induced.push_back(name);
    }
    f.notes = shape_notes(p);
    merged.insert(std::min(f.code.code, canonical_code(dual(p)).code));
    result.failing.push_back(std::move(f));
  }
  result.failing_up_to_symmetry = merged.size();
  return result;
}

std::vector<std::string> classification_discrepancies(const ClassificationResult& r) {
  std::vector<std::string> out;
  const auto& names = figure_names();
  const auto is_small = [&](const std::string& f) {
    return std::find(names.begin(), names.begin() + 5, f) != names.begin() + 5;
  };
  if (r.cardinality <= 4) {
    for (const auto& f : r.failing) out.push_back("unexpected failing class " + f.code.hex());
  } else if (r.cardinality == 5) {
    std::set<std::uint64_t> failing_codes;
    for (const auto& f : r.failing) {
      failing_codes.insert(f.code.code);
      if (!f.figure || !is_small(*f.figure)) {
        out.push_back("unexpected failing class " + f.code.hex());
      }
    }
    for (int i = 0; i < 5; ++i) {
      const Poset p = named_poset(names[i]);
      for (const auto& q : {p, dual(p)}) {
        if (!failing_codes.count(canonical_code(q).code)) {
          out.push_back(names[i] + (q == p ? "" : " (dual)") + " does not fail");
        }
      }
    }
    if (r.failing_up_to_symmetry != 5) {
      out.push_back("expected 5 failing classes up to symmetry, got " +
                    std::to_string(r.failing_up_to_symmetry));
    }
  } else if (r.cardinality == 6) {
    std::set<std::uint64_t> failing_codes;
    std::set<std::string> seen;
    for (const auto& f : r.failing) {
      failing_codes.insert(f.code.code);
      if (f.figure) seen.insert(*f.figure);
      if (f.induced.empty() && !f.figure) {
        out.push_back("failing class " + f.code.hex() + " has no induced S1..S5 and is not S6..S9");
      }
    }
    for (int i = 5; i < 9; ++i) {
      if (!seen.count(names[i])) out.push_back(names[i] + " does not fail");
    }
    for (const auto& p : enumerate_posets(6)) {
      const auto code = canonical_code(p).code;
      if (failing_codes.count(code)) continue;
      for (int i = 0; i < 5; ++i) {
        if (find_induced_embedding(named_poset(names[i]), p, true)) {
          out.push_back("class " + canonical_code(p).hex() + " contains " + names[i] +
                        " but equivalence holds");
          break;
        }
      }
    }
  }
  return out;
}

std::vector<RayCountRow> ray_count_table(
    const std::vector<std::pair<std::string, Poset>>& posets, const DdOptions& dd) {
  std::vector<RayCountRow> rows;
  for (const auto& [id, p] : posets) {
    const auto spec = indicator_vectors(p);
    const std::size_t rmon = extremal_indicator_indices(spec).size();
    const std::size_t mon = monotone_extremal_rays(p, dd).rays.size();
    rows.push_back(RayCountRow{id, rmon, mon});
  }
  return rows;
}

const std::vector<RayCountRow>& published_ray_counts() {
  static const std::vector<RayCountRow> rows{
      {"S1", 40, 41},   {"S2", 41, 47},   {"S3", 40, 42},  {"S4", 46, 50},  {"S5", 49, 53},
      {"S6", 126, 421}, {"S7", 684, 914}, {"S8", 134, 312}, {"S9", 84, 132},
  };
  return rows;
}

std::vector<std::string> table_mismatches(const std::vector<RayCountRow>& computed) {
  std::vector<std::string> bad;
  for (const auto& row : computed) {
    for (const auto& golden : published_ray_counts()) {
      if (golden.id == row.id && !(golden == row)) bad.push_back(row.id);
    }
  }
  return bad;
}

std::string to_string(ExtensionCase c) {
  switch (c) {
    case ExtensionCase::kS1: return "S1";
    case ExtensionCase::kS2: return "S2";
    case ExtensionCase::kS3: return "S3";
    case ExtensionCase::kS4: return "S4";
    case ExtensionCase::kS5: return "S5";
    case ExtensionCase::kS6: return "S6";
    case ExtensionCase::kS7: return "S7";
    case ExtensionCase::kS8: return "S8";
    case ExtensionCase::kCrown: return "kcrown";
  }
  return "?";
}

ExtensionCase extension_case_from_string(const std::string& name) {
  for (auto c : {ExtensionCase::kS1, ExtensionCase::kS2, ExtensionCase::kS3,
                 ExtensionCase::kS4, ExtensionCase::kS5, ExtensionCase::kS6,
                 ExtensionCase::kS7, ExtensionCase::kS8, ExtensionCase::kCrown}) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown extension case " + name);
}

NamedExample extension_base(ExtensionCase c, int crown_k) {
  if (c == ExtensionCase::kCrown) return kcrown_example(crown_k);
  const auto examples = builtin_examples();
  const std::string id = c == ExtensionCase::kS8 ? "ex8" : "ex" + to_string(c).substr(1);
  for (const auto& e : examples) {
    if (e.id == id) return e;
  }
  throw std::logic_error("missing base example");
}

namespace {

bool is_induced(const Poset& small, const Poset& big, const Embedding& e) {
  const int k = small.size();
  if (static_cast<int>(e.map.size()) != k) return false;
  Mask used = 0;
  for (int v : e.map) {
    if (v < 0 || v >= big.size() || has(used, v)) return false;
    used |= bit(v);
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const bool want = e.dual ? small.leq(j, i) : small.leq(i, j);
      if (want != big.leq(e.map[i], e.map[j])) return false;
    }
  }
  return true;
}

Mask embedded_mask(const Embedding& e) {
  Mask m = 0;
  for (int v : e.map) m |= bit(v);
  return m;
}

}  // namespace

ExtensionPlan build_extension(ExtensionCase c, const Poset& big, int crown_k) {
  const NamedExample base = extension_base(c, crown_k);
  const auto e = find_induced_embedding(base.poset, big, true);
  if (!e) {
    throw Error(ErrorKind::kNoInducedEmbedding,
                to_string(c) + " is not an induced subposet (up to duality)");
  }
  return build_extension(c, big, *e, crown_k);
}

ExtensionPlan build_extension(ExtensionCase c, const Poset& big, const Embedding& embedding,
                              int crown_k) {
  const NamedExample base = extension_base(c, crown_k);
  if (static_cast<int>(embedding.map.size()) != base.poset.size()) {
    throw Error(ErrorKind::kCaseNotApplicable,
                "embedding size does not match the base poset of case " + to_string(c));
  }
  if (!is_induced(base.poset, big, embedding)) {
    throw Error(ErrorKind::kNoInducedEmbedding, "embedding is not an induced copy");
  }
  // A dual copy is handled by reading every comparison in the dual order;
  // the cones of a poset and of its dual coincide.
  const Poset ord = embedding.dual ? dual(big) : big;
  const auto at = [&](const std::string& label) {
    return embedding.map[base.poset.index_of(label)];
  };
  const auto le = [&](int z, const std::string& l) { return ord.leq(z, at(l)); };
  const auto lt = [&](int z, const std::string& l) { return ord.less(z, at(l)); };
  const auto ge = [&](int z, const std::string& l) { return ord.leq(at(l), z); };
  const auto gt = [&](int z, const std::string& l) { return ord.less(at(l), z); };

  struct Rule {
    std::string name;
    std::function<bool(int)> member;
    std::vector<std::string> targets;
  };
  std::vector<Rule> rules;
  const auto three_blocks = [&](const std::string& low, const std::string& high) {
    rules.push_back({"A", [=](int z) { return ge(z, low) && le(z, high); }, {low, high}});
    rules.push_back({"B", [=](int z) { return ge(z, low); }, {high}});
    rules.push_back({"C", [](int) { return true; }, {low}});
  };
  switch (c) {
    case ExtensionCase::kS1:
      rules.push_back({"A", [&](int z) { return le(z, "b") || le(z, "c"); }, {"w"}});
      rules.push_back({"B", [](int) { return true; }, {"b", "c"}});
      break;
    case ExtensionCase::kS2:
      rules.push_back(
          {"D", [&](int z) { return le(z, "b") || le(z, "w") || le(z, "c"); }, {"a", "c"}});
      rules.push_back({"Dc", [](int) { return true; }, {"c", "d"}});
      break;
    case ExtensionCase::kS3:
      rules.push_back({"A", [&](int z) { return le(z, "b") || lt(z, "c"); }, {"w"}});
      rules.push_back({"B", [](int) { return true; }, {"w", "d"}});
      break;
    case ExtensionCase::kS4:
      three_blocks("b", "d");
      break;
    case ExtensionCase::kS5:
      rules.push_back({"A", [&](int z) { return le(z, "c") || le(z, "d"); }, {"a"}});
      rules.push_back({"B", [](int) { return true; }, {"c", "d"}});
      break;
    case ExtensionCase::kS6:
      rules.push_back(
          {"A", [&](int z) { return gt(z, "b") || gt(z, "c") || gt(z, "d"); }, {"e"}});
      rules.push_back({"B", [](int) { return true; }, {"a", "c"}});
      break;
    case ExtensionCase::kS7:
    case ExtensionCase::kS8:
      three_blocks("c", "d");
      break;
    case ExtensionCase::kCrown:
      three_blocks(crown_label('x', crown_k - 1), crown_label('y', crown_k - 1));
      break;
  }

  ExtensionPlan plan{c,
                     c == ExtensionCase::kCrown ? crown_k : 0,
                     base.poset,
                     big,
                     embedding,
                     {},
                     base.generator,
                     Generator(big)};
  std::vector<int> block_of(big.size(), -1);
  for (const auto& r : rules) plan.partition.push_back(PartitionBlock{r.name, 0, r.targets});
  for (int z = 0; z < big.size(); ++z) {
    for (std::size_t b = 0; b < rules.size(); ++b) {
      if (rules[b].member(z)) {
        block_of[z] = static_cast<int>(b);
        plan.partition[b].members |= bit(z);
        break;
      }
    }
  }
  const int k = base.poset.size();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j) {
        plan.extended_generator.set_rate(embedding.map[i], embedding.map[j],
                                         base.generator.rate(i, j));
      }
    }
  }
  const Mask inside = embedded_mask(embedding);
  for (int z = 0; z < big.size(); ++z) {
    if (has(inside, z)) continue;
    for (const auto& t : plan.partition[block_of[z]].targets) {
      plan.extended_generator.set_rate(z, at(t), 1);
    }
  }
  return plan;
}

ExtensionReport verify_extension(const ExtensionPlan& plan) {
  ExtensionReport report;
  const Generator& l = plan.extended_generator;
  report.violation = find_monotonicity_violation(l);
  report.monotone = !report.violation.has_value() && is_monotone(l);

  report.restricts = true;
  const int k = plan.base_poset.size();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j && l.rate(plan.embedding.map[i], plan.embedding.map[j]) !=
                        plan.base_generator.rate(i, j)) {
        report.restricts = false;
      }
    }
  }
  const Mask inside = embedded_mask(plan.embedding);
  for (int x = 0; x < l.size(); ++x) {
    for (int y = 0; y < l.size(); ++y) {
      if (x != y && !has(inside, y) && sgn(l.rate(x, y)) != 0) report.restricts = false;
    }
  }

  auto verdict = is_realizably_monotone(l);
  if (auto* no = std::get_if<NotRealizable>(&verdict)) {
    report.not_realizable = true;
    report.certificate = std::move(no->cert);
  }
  return report;
}

std::variant<MonotoneExtension, NoMonotoneExtension> find_monotone_extension(
    const Generator& base, const Poset& big, const Embedding& embedding) {
  if (!is_induced(base.poset(), big, embedding)) {
    throw Error(ErrorKind::kNoInducedEmbedding, "embedding is not an induced copy");
  }
  const int n = big.size();
  const int k = base.size();
  const Mask inside = embedded_mask(embedding);
  Generator fixed(big);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j) fixed.set_rate(embedding.map[i], embedding.map[j], base.rate(i, j));
    }
  }
  // Unknowns: rate from each new point z to each embedded point.
  std::vector<std::pair<int, int>> unknowns;
  std::vector<int> unknown_of(pair_dimension(n), -1);
  for (int z = 0; z < n; ++z) {
    if (has(inside, z)) continue;
    for (int y : embedding.map) {
      unknown_of[pair_index(n, z, y)] = static_cast<int>(unknowns.size());
      unknowns.emplace_back(z, y);
    }
  }
  const int u = static_cast<int>(unknowns.size());

  // Rows <W, fixed> + <W|unknowns, r> - s = 0 with s >= 0, deduplicated.
  std::set<std::pair<std::vector<Rational>, Rational>> rows;
  for (const auto& w : w_vectors(big)) {
    std::vector<Rational> coeff(u, 0);
    bool any = false;
    for (int idx = 0; idx < pair_dimension(n); ++idx) {
      if (sgn(w[idx]) != 0 && unknown_of[idx] >= 0) {
        coeff[unknown_of[idx]] = w[idx];
        any = true;
      }
    }
    const Rational constant = dot(w, fixed.point());
    if (!any && sgn(constant) >= 0) continue;
    rows.emplace(std::move(coeff), constant);
  }
  FeasibilityProblem lp;
  lp.rows = static_cast<int>(rows.size());
  lp.columns.resize(u + rows.size());
  int r = 0;
  for (const auto& [coeff, constant] : rows) {
    for (int j = 0; j < u; ++j) {
      if (sgn(coeff[j]) != 0) lp.columns[j].entries.emplace_back(r, coeff[j]);
    }
    lp.columns[u + r].entries.emplace_back(r, Rational(-1));
    lp.rhs.push_back(-constant);
    ++r;
  }
  auto result = solve_feasibility(lp);
  if (auto* no = std::get_if<Infeasible>(&result)) return NoMonotoneExtension{no->y};
  const auto& x = std::get<Feasible>(result).x;
  Generator out = fixed;
  for (int j = 0; j < u; ++j) out.set_rate(unknowns[j].first, unknowns[j].second, x[j]);
  if (!is_monotone(out)) throw std::logic_error("extension LP returned a non-monotone generator");
  return MonotoneExtension{std::move(out)};
}

EquivalenceReport complete_crown_check(int bottom, int top) {
  if (bottom < 2 || top < 2) {
    throw Error(ErrorKind::kInvalidArgument, "complete crown needs at least 2 + 2 points");
  }
  if (bottom + top > 7) {
    throw Error(ErrorKind::kSizeLimitExceeded, "complete crown check limited to 7 points");
  }
  EquivalenceOptions options;
  options.max_size = 7;
  return equivalence_holds(complete_bipartite(bottom, top), options);
}

}  // namespace monocone
