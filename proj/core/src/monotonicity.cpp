#include "monocone/monotonicity.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "monocone/error.hpp"
#include "monocone/lp.hpp"

namespace monocone {

Generator::Generator(Poset poset)
    : poset_(std::move(poset)), rates_(pair_dimension(poset_.size()), 0) {}

Generator::Generator(Poset poset, RationalVector rates)
    : poset_(std::move(poset)), rates_(std::move(rates)) {
  if (static_cast<int>(rates_.size()) != pair_dimension(poset_.size())) {
    throw Error(ErrorKind::kDimensionMismatch,
                "generator needs " + std::to_string(pair_dimension(poset_.size())) +
                    " off-diagonal rates");
  }
  for (const auto& r : rates_) {
    if (sgn(r) < 0) throw Error(ErrorKind::kInvalidArgument, "negative rate");
  }
}

const Rational& Generator::rate(int x, int y) const {
  if (x == y) throw Error(ErrorKind::kInvalidArgument, "diagonal rate requested");
  return rates_[pair_index(size(), x, y)];
}

void Generator::set_rate(int x, int y, const Rational& value) {
  if (x == y) throw Error(ErrorKind::kInvalidArgument, "diagonal rate set");
  if (sgn(value) < 0) throw Error(ErrorKind::kInvalidArgument, "negative rate");
  rates_[pair_index(size(), x, y)] = value;
}

Rational Generator::exit_rate(int x) const {
  Rational s = 0;
  for (int y = 0; y < size(); ++y) {
    if (y != x) s += rate(x, y);
  }
  return s;
}

Rational Generator::max_exit_rate() const {
  Rational best = 0;
  for (int x = 0; x < size(); ++x) best = std::max(best, exit_rate(x));
  return best;
}

Rational Generator::rate_into(int x, Mask target) const {
  Rational s = 0;
  for (int z = 0; z < size(); ++z) {
    if (z != x && has(target, z)) s += rate(x, z);
  }
  return s;
}

Generator named_generator(
    const Poset& p,
    const std::vector<std::tuple<std::string, std::string, Rational>>& rates) {
  Generator l(p);
  for (const auto& [from, to, value] : rates) {
    const int x = p.index_of(from), y = p.index_of(to);
    if (x < 0 || y < 0) {
      throw Error(ErrorKind::kInvalidArgument, "unknown element in " + from + "->" + to);
    }
    l.set_rate(x, y, value);
  }
  return l;
}

TransitionMatrix::TransitionMatrix(Poset poset, std::vector<RationalVector> probs)
    : poset_(std::move(poset)), probs_(std::move(probs)) {
  const int n = poset_.size();
  if (static_cast<int>(probs_.size()) != n) {
    throw Error(ErrorKind::kDimensionMismatch, "transition matrix has wrong size");
  }
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(probs_[x].size()) != n) {
      throw Error(ErrorKind::kDimensionMismatch, "transition row has wrong size");
    }
    Rational sum = 0;
    for (const auto& v : probs_[x]) {
      if (sgn(v) < 0 || v > 1) {
        throw Error(ErrorKind::kInvalidArgument, "probability outside [0,1]");
      }
      sum += v;
    }
    if (sum != 1) {
      throw Error(ErrorKind::kInvalidArgument,
                  "row " + std::to_string(x) + " sums to " + sum.get_str());
    }
  }
}

namespace {

using Sparse = std::vector<int>;

Sparse indicator_support(const IncreasingMap& f) {
  Sparse s;
  for (int x = 0; x < f.n; ++x) {
    if (f(x) != x) s.push_back(pair_index(f.n, x, f(x)));
  }
  return s;
}

}  // namespace

std::vector<RationalVector> w_vectors(const Poset& p) {
  const int n = p.size();
  const int d = pair_dimension(n);
  std::vector<RationalVector> out;
  std::set<std::vector<int>> seen;
  for (const auto& g : enumerate_upsets(p)) {
    const Mask gamma = g.members;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        // The rate sums are compared over `target`.
        Mask target = 0;
        if (p.leq(x, y) && !has(gamma, y)) {
          target = gamma;
        } else if (p.leq(y, x) && has(gamma, y)) {
          target = p.all() & ~gamma;
        } else {
          continue;
        }
        if (target == 0) continue;
        std::vector<int> w(d, 0);
        for (int z = 0; z < n; ++z) {
          if (!has(target, z)) continue;
          w[pair_index(n, y, z)] += 1;
          w[pair_index(n, x, z)] -= 1;
        }
        if (std::all_of(w.begin(), w.end(), [](int v) { return v == 0; })) continue;
        if (!seen.insert(w).second) continue;
        RationalVector r(d);
        for (int k = 0; k < d; ++k) r[k] = w[k];
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

MonotoneConeSpec monotone_cone(const Poset& p) {
  const int d = pair_dimension(p.size());
  MonotoneConeSpec spec;
  spec.cone.dim = d;
  spec.cone.normals = w_vectors(p);
  spec.w_count = spec.cone.normals.size();
  for (int k = 0; k < d; ++k) {
    RationalVector e(d, 0);
    e[k] = 1;
    spec.cone.normals.push_back(std::move(e));
  }
  return spec;
}

RationalVector indicator(const IncreasingMap& f) {
  RationalVector v(pair_dimension(f.n), 0);
  for (int k : indicator_support(f)) v[k] = 1;
  return v;
}

RealizableConeSpec indicator_vectors(const Poset& p) {
  RealizableConeSpec spec;
  spec.cone.dim = pair_dimension(p.size());
  for (const auto& f : enumerate_increasing_maps(p)) {
    if (f.is_identity()) continue;
    spec.maps.push_back(f);
    spec.cone.rays.push_back(indicator(f));
  }
  return spec;
}

bool is_monotone(const Generator& l) {
  if (!satisfies(monotone_cone(l.poset()).cone, l.point())) return false;
  return true;
}

std::optional<MonotonicityViolation> find_monotonicity_violation(const Generator& l) {
  const Poset& p = l.poset();
  const int n = p.size();
  for (const auto& g : enumerate_upsets(p)) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        Mask target = 0;
        if (p.leq(x, y) && !g.contains(y)) {
          target = g.members;
        } else if (p.leq(y, x) && g.contains(y)) {
          target = p.all() & ~g.members;
        } else {
          continue;
        }
        const Rational value = l.rate_into(y, target) - l.rate_into(x, target);
        if (sgn(value) < 0) return MonotonicityViolation{g, x, y, value};
      }
    }
  }
  return std::nullopt;
}

namespace {

/// Solves sum_j w_j col_j = point restricted to the support of `point`,
/// using only columns whose support lies inside it (all columns are
/// nonnegative, so the others must carry zero weight). On infeasibility
/// the certificate is lifted to the full space with a large enough weight
/// on the coordinates outside the support.
struct SupportLp {
  std::optional<RationalVector> weights;  // per column
  RationalVector normal;                  // full-dimensional
};

SupportLp solve_on_support(const RationalVector& point,
                           const std::vector<Sparse>& columns) {
  const int d = static_cast<int>(point.size());
  std::vector<int> row_of(d, -1);
  FeasibilityProblem lp;
  for (int k = 0; k < d; ++k) {
    if (sgn(point[k]) != 0) {
      row_of[k] = lp.rows++;
      lp.rhs.push_back(point[k]);
    }
  }
  std::vector<std::size_t> used;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    bool inside = true;
    for (int k : columns[j]) inside = inside && row_of[k] >= 0;
    if (!inside) continue;
    SparseColumn col;
    for (int k : columns[j]) col.entries.emplace_back(row_of[k], Rational(1));
    std::sort(col.entries.begin(), col.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    lp.columns.push_back(std::move(col));
    used.push_back(j);
  }
  auto result = solve_feasibility(lp);
  SupportLp out;
  if (auto* f = std::get_if<Feasible>(&result)) {
    RationalVector w(columns.size(), 0);
    for (std::size_t i = 0; i < used.size(); ++i) w[used[i]] = f->x[i];
    out.weights = std::move(w);
    return out;
  }
  const auto& y = std::get<Infeasible>(result).y;
  Rational lift = 0;
  for (const auto& col : columns) {
    Rational partial = 0;
    bool outside = false;
    for (int k : col) {
      if (row_of[k] >= 0) {
        partial += y[row_of[k]];
      } else {
        outside = true;
      }
    }
    if (outside && -partial > lift) lift = -partial;
  }
  RationalVector normal(d);
  for (int k = 0; k < d; ++k) normal[k] = row_of[k] >= 0 ? y[row_of[k]] : lift;
  out.normal = canonicalize_ray(normal);
  return out;
}

bool sparse_certificate_holds(const RationalVector& normal, const RationalVector& point,
                              const std::vector<Sparse>& columns) {
  for (const auto& col : columns) {
    Rational s = 0;
    for (int k : col) s += normal[k];
    if (sgn(s) < 0) return false;
  }
  return sgn(dot(normal, point)) < 0;
}

}  // namespace

Realizability is_realizably_monotone(const Generator& l,
                                     const RealizableConeSpec& spec) {
  std::vector<Sparse> columns;
  columns.reserve(spec.maps.size());
  for (const auto& f : spec.maps) columns.push_back(indicator_support(f));
  auto lp = solve_on_support(l.point(), columns);
  if (lp.weights) {
    LambdaWeights weights;
    for (std::size_t j = 0; j < spec.maps.size(); ++j) {
      if (sgn((*lp.weights)[j]) > 0) weights.emplace_back(spec.maps[j], (*lp.weights)[j]);
    }
    if (!reconstructs(l, weights)) {
      throw std::logic_error("realizability weights do not reconstruct the generator");
    }
    return Realizable{std::move(weights)};
  }
  if (!sparse_certificate_holds(lp.normal, l.point(), columns)) {
    throw std::logic_error("realizability certificate failed re-verification");
  }
  return NotRealizable{FarkasCertificate{std::move(lp.normal)}};
}

Realizability is_realizably_monotone(const Generator& l) {
  return is_realizably_monotone(l, indicator_vectors(l.poset()));
}

bool reconstructs(const Generator& l, const LambdaWeights& weights) {
  RationalVector sum(l.point().size(), 0);
  for (const auto& [f, w] : weights) {
    if (sgn(w) < 0 || f.n != l.size() || !is_increasing(l.poset(), f)) return false;
    for (int k : indicator_support(f)) sum[k] += w;
  }
  return sum == l.point();
}

VRepCone monotone_extremal_rays(const Poset& p, const DdOptions& dd) {
  return dd_rays(monotone_cone(p).cone, dd);
}

std::vector<std::size_t> extremal_indicator_indices(const RealizableConeSpec& spec) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < spec.maps.size(); ++i) {
    const IncreasingMap& f = spec.maps[i];
    std::vector<int> moved;
    for (int x = 0; x < f.n; ++x) {
      if (f(x) != x) moved.push_back(x);
    }
    // A decomposition of I_f can only use maps that agree with f wherever
    // they move a point; those are f restricted to a subset of `moved`.
    std::vector<Sparse> candidates;
    const unsigned full = (1U << moved.size()) - 1;
    for (unsigned t = 1; t < full; ++t) {
      IncreasingMap g = identity_map(f.n);
      for (std::size_t b = 0; b < moved.size(); ++b) {
        if ((t >> b) & 1U) g.image[moved[b]] = f.image[moved[b]];
      }
      if (std::binary_search(spec.maps.begin(), spec.maps.end(), g)) {
        candidates.push_back(indicator_support(g));
      }
    }
    bool extremal = true;
    if (!candidates.empty()) {
      const auto lp = solve_on_support(spec.cone.rays[i], candidates);
      extremal = !lp.weights.has_value();
    }
    if (extremal) out.push_back(i);
  }
  return out;
}

EquivalenceReport equivalence_holds(const Poset& p, const EquivalenceOptions& options) {
  if (p.size() > options.max_size || p.size() > kMaxMapElements) {
    throw Error(ErrorKind::kSizeLimitExceeded,
                "equivalence check limited to " + std::to_string(options.max_size) +
                    " elements");
  }
  EquivalenceReport report;
  report.poset = p;
  if (p.size() == 1) {
    // Both cones live in a zero-dimensional space.
    report.holds = true;
    return report;
  }
  const VRepCone mon = monotone_extremal_rays(p, options.dd);
  const RealizableConeSpec spec = indicator_vectors(p);
  report.mon_rays = mon.rays.size();
  report.rmon_rays = extremal_indicator_indices(spec).size();

  std::map<Sparse, std::size_t> by_support;
  for (std::size_t i = 0; i < spec.maps.size(); ++i) {
    by_support.emplace(indicator_support(spec.maps[i]), i);
  }
  for (const auto& ray : mon.rays) {
    Sparse support;
    bool zero_one = true;
    for (int k = 0; k < static_cast<int>(ray.size()); ++k) {
      if (sgn(ray[k]) == 0) continue;
      if (ray[k] != 1) zero_one = false;
      support.push_back(k);
    }
    if (zero_one && by_support.count(support)) continue;
    Generator l(p, ray);
    auto verdict = is_realizably_monotone(l, spec);
    if (auto* no = std::get_if<NotRealizable>(&verdict)) {
      report.witnesses.push_back(Witness{ray, std::move(no->cert)});
    }
  }
  report.holds = report.witnesses.empty();
  return report;
}

bool is_monotone_transition(const TransitionMatrix& p) {
  const Poset& s = p.poset();
  const int n = s.size();
  for (const auto& g : enumerate_upsets(s)) {
    std::vector<Rational> mass(n, 0);
    for (int x = 0; x < n; ++x) {
      for (int z = 0; z < n; ++z) {
        if (g.contains(z)) mass[x] += p.prob(x, z);
      }
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (s.leq(x, y) && mass[x] > mass[y]) return false;
      }
    }
  }
  return true;
}

TransitionRealizability is_realizably_monotone_transition(const TransitionMatrix& p) {
  const int n = p.size();
  const auto maps = enumerate_increasing_maps(p.poset());
  std::vector<Sparse> columns;
  columns.reserve(maps.size());
  for (const auto& f : maps) {
    Sparse s;
    for (int x = 0; x < n; ++x) s.push_back(x * n + f(x));
    columns.push_back(std::move(s));
  }
  RationalVector point;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) point.push_back(p.prob(x, y));
  }
  auto lp = solve_on_support(point, columns);
  if (lp.weights) {
    RealizableTransition out;
    for (std::size_t j = 0; j < maps.size(); ++j) {
      if (sgn((*lp.weights)[j]) > 0) out.distribution.emplace_back(maps[j], (*lp.weights)[j]);
    }
    return out;
  }
  if (!sparse_certificate_holds(lp.normal, point, columns)) {
    throw std::logic_error("transition certificate failed re-verification");
  }
  return NotRealizableTransition{std::move(lp.normal)};
}

TransitionMatrix transition_of(const Generator& l, const Rational& eps) {
  if (sgn(eps) <= 0 || eps * l.max_exit_rate() > 1) {
    throw Error(ErrorKind::kEpsilonTooLarge,
                "eps = " + eps.get_str() + " with max exit rate " +
                    l.max_exit_rate().get_str());
  }
  const int n = l.size();
  std::vector<RationalVector> probs(n, RationalVector(n, 0));
  for (int x = 0; x < n; ++x) {
    probs[x][x] = 1 - eps * l.exit_rate(x);
    for (int y = 0; y < n; ++y) {
      if (y != x) probs[x][y] = eps * l.rate(x, y);
    }
  }
  return TransitionMatrix(l.poset(), std::move(probs));
}

Generator generator_of(const TransitionMatrix& p, const Rational& eps) {
  if (sgn(eps) <= 0) throw Error(ErrorKind::kInvalidArgument, "eps must be positive");
  Generator l(p.poset());
  for (int x = 0; x < p.size(); ++x) {
    for (int y = 0; y < p.size(); ++y) {
      if (x != y) l.set_rate(x, y, p.prob(x, y) / eps);
    }
  }
  return l;
}

TransitionMatrix mix_with_identity(const TransitionMatrix& p, const Rational& lambda) {
  const int n = p.size();
  std::vector<RationalVector> probs(n, RationalVector(n, 0));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      probs[x][y] = lambda * p.prob(x, y) + (x == y ? Rational(1 - lambda) : Rational(0));
    }
  }
  return TransitionMatrix(p.poset(), std::move(probs));
}

std::optional<Rational> weak_equivalence_witness(const TransitionMatrix& p) {
  if (!is_monotone_transition(p)) {
    throw Error(ErrorKind::kNotMonotone, "transition matrix is not stochastically monotone");
  }
  const Generator l = generator_of(p, 1);
  const auto verdict = is_realizably_monotone(l);
  const auto* yes = std::get_if<Realizable>(&verdict);
  if (!yes) return std::nullopt;
  Rational total = 0;
  for (const auto& [f, w] : yes->weights) total += w;
  const Rational lambda = total <= 1 ? Rational(1) : Rational(1 / total);
  if (!std::holds_alternative<RealizableTransition>(
          is_realizably_monotone_transition(mix_with_identity(p, lambda)))) {
    throw std::logic_error("scaled transition is not realizable");
  }
  return lambda;
}

namespace {

struct Entry {
  int x, y;
  Rational value;
  int line;
};

std::vector<Entry> read_entries(std::istream& in, const Poset& p, const char* header,
                                const char* keyword) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::vector<Entry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::string word;
    if (!(tokens >> word)) continue;
    if (word == header) {
      int n = -1;
      if (have_header || !(tokens >> n)) throw ParseError(line_no, "bad header");
      if (n != p.size()) {
        throw ParseError(line_no, "size " + std::to_string(n) + " does not match poset size " +
                                      std::to_string(p.size()));
      }
      have_header = true;
    } else if (!have_header) {
      throw ParseError(line_no, std::string("expected `") + header + " <n>` header first");
    } else if (word == keyword) {
      std::string a, b, v, extra;
      if (!(tokens >> a >> b >> v) || (tokens >> extra)) {
        throw ParseError(line_no, std::string("expected `") + keyword + " <x> <y> <num/den>`");
      }
      const int x = p.index_of(a), y = p.index_of(b);
      if (x < 0 || y < 0) throw ParseError(line_no, "unknown element");
      Rational value;
      try {
        value = parse_rational(v);
      } catch (const Error& e) {
        throw ParseError(line_no, e.what());
      }
      if (sgn(value) < 0) throw ParseError(line_no, "negative entry");
      entries.push_back(Entry{x, y, value, line_no});
    } else {
      throw ParseError(line_no, "unknown keyword '" + word + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, std::string("missing `") + header + "` header");
  return entries;
}

}  // namespace

Generator read_generator(std::istream& in, const Poset& p) {
  Generator l(p);
  for (const auto& e : read_entries(in, p, "gen", "rate")) {
    if (e.x == e.y) throw ParseError(e.line, "diagonal rates are implied");
    l.set_rate(e.x, e.y, e.value);
  }
  return l;
}

Generator read_generator_file(const std::string& path, const Poset& p) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open " + path);
  return read_generator(in, p);
}

void write_generator(std::ostream& out, const Generator& l) {
  out << "gen " << l.size() << "\n";
  for (int x = 0; x < l.size(); ++x) {
    for (int y = 0; y < l.size(); ++y) {
      if (x != y && sgn(l.rate(x, y)) != 0) {
        out << "rate " << x << ' ' << y << ' ' << l.rate(x, y).get_str() << "\n";
      }
    }
  }
}

TransitionMatrix read_transition(std::istream& in, const Poset& p) {
  const int n = p.size();
  std::vector<RationalVector> probs(n, RationalVector(n, 0));
  std::vector<bool> diagonal_given(n, false);
  for (const auto& e : read_entries(in, p, "trans", "prob")) {
    probs[e.x][e.y] = e.value;
    if (e.x == e.y) diagonal_given[e.x] = true;
  }
  for (int x = 0; x < n; ++x) {
    if (diagonal_given[x]) continue;
    Rational s = 0;
    for (int y = 0; y < n; ++y) {
      if (y != x) s += probs[x][y];
    }
    probs[x][x] = 1 - s;
  }
  return TransitionMatrix(p, std::move(probs));
}

TransitionMatrix read_transition_file(const std::string& path, const Poset& p) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open " + path);
  return read_transition(in, p);
}

void write_transition(std::ostream& out, const TransitionMatrix& p) {
  out << "trans " << p.size() << "\n";
  for (int x = 0; x < p.size(); ++x) {
    for (int y = 0; y < p.size(); ++y) {
      if (sgn(p.prob(x, y)) != 0) {
        out << "prob " << x << ' ' << y << ' ' << p.prob(x, y).get_str() << "\n";
      }
    }
  }
}

}  // namespace monocone
