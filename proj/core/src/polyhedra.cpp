#include "monocone/polyhedra.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "monocone/lp.hpp"

namespace monocone {

namespace {

using Matrix = std::vector<RationalVector>;

struct Overflow {};

/// Checked 64-bit arithmetic; any overflow aborts the run so it can be
/// repeated with GMP integers.
struct Int64Policy {
  using T = std::int64_t;
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T add(T a, T b) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static int sign(T a) { return (a > 0) - (a < 0); }
  static T gcd(T a, T b) { return std::gcd(a, b); }
  static T from_big(const BigInt& v) {
    if (!v.fits_slong_p()) throw Overflow{};
    return v.get_si();
  }
  static BigInt to_big(T v) { return BigInt(static_cast<long>(v)); }
};

struct BigPolicy {
  using T = BigInt;
  static T mul(const T& a, const T& b) { return a * b; }
  static T add(const T& a, const T& b) { return a + b; }
  static int sign(const T& a) { return sgn(a); }
  static T gcd(const T& a, const T& b) {
    T g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static T from_big(const BigInt& v) { return v; }
  static BigInt to_big(const T& v) { return v; }
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix& a, int cols) {
  std::vector<int> pivots;
  int row = 0;
  for (int c = 0; c < cols && row < static_cast<int>(a.size()); ++c) {
    int piv = -1;
    for (int r = row; r < static_cast<int>(a.size()); ++r) {
      if (sgn(a[r][c]) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    const Rational inv = 1 / a[row][c];
    for (int k = c; k < cols; ++k) a[row][k] *= inv;
    for (int r = 0; r < static_cast<int>(a.size()); ++r) {
      if (r == row || sgn(a[r][c]) == 0) continue;
      const Rational f = a[r][c];
      for (int k = c; k < cols; ++k) {
        if (sgn(a[row][k]) != 0) a[r][k] -= f * a[row][k];
      }
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::vector<RationalVector> null_space(const Matrix& rows, int dim) {
  Matrix a = rows;
  const auto pivots = rref(a, dim);
  std::vector<bool> is_pivot(dim, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (int free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(dim, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(canonicalize_ray(v));
  }
  return basis;
}

int rank_of(Matrix a, int dim) { return static_cast<int>(rref(a, dim).size()); }

/// Integer row with gcd 1 proportional (positively) to a rational row.
std::vector<BigInt> primitive_integer(const RationalVector& v) {
  BigInt lcm = 1;
  for (const auto& x : v) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  }
  std::vector<BigInt> out(v.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].get_num() * (lcm / v[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

template <class P>
class DoubleDescription {
  using T = typename P::T;

 public:
  DoubleDescription(const std::vector<std::vector<BigInt>>& rows, int dim,
                    const DdOptions& options, DdStats* stats)
      : dim_(dim),
        m_(static_cast<int>(rows.size())),
        words_((m_ + 63) / 64),
        options_(options),
        stats_(stats),
        rows_big_(rows) {
    a_.resize(m_, std::vector<T>(dim_));
    for (int i = 0; i < m_; ++i) {
      for (int k = 0; k < dim_; ++k) a_[i][k] = P::from_big(rows[i][k]);
    }
  }

  std::vector<std::vector<BigInt>> run(const std::vector<int>& basis_rows,
                                       const std::vector<std::vector<BigInt>>& initial) {
    processed_.assign(words_, 0);
    for (int i : basis_rows) set_bit(processed_, i);
    for (const auto& r : initial) {
      std::vector<T> x(dim_);
      for (int k = 0; k < dim_; ++k) x[k] = P::from_big(r[k]);
      rays_.push_back(make_ray(std::move(x)));
    }
    std::vector<bool> done(m_, false);
    for (int i : basis_rows) done[i] = true;
    int remaining = m_ - static_cast<int>(basis_rows.size());
    note_size();
    while (remaining > 0) {
      int next = -1;
      std::size_t best = 0;
      for (int i = 0; i < m_; ++i) {
        if (done[i]) continue;
        std::size_t neg = 0;
        for (const auto& r : rays_) neg += P::sign(r.s[i]) < 0;
        if (next < 0 || neg < best) {
          next = i;
          best = neg;
          if (neg == 0) break;
        }
      }
      add_constraint(next);
      done[next] = true;
      --remaining;
      note_size();
    }
    std::vector<std::vector<BigInt>> out;
    out.reserve(rays_.size());
    for (const auto& r : rays_) {
      std::vector<BigInt> v(dim_);
      for (int k = 0; k < dim_; ++k) v[k] = P::to_big(r.x[k]);
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  struct Ray {
    std::vector<T> x;
    std::vector<T> s;
    std::vector<std::uint64_t> zero;
  };

  static void set_bit(std::vector<std::uint64_t>& b, int i) {
    b[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  Ray make_ray(std::vector<T> x) {
    Ray r;
    r.s.resize(m_);
    r.zero.assign(words_, 0);
    for (int i = 0; i < m_; ++i) {
      T acc{0};
      for (int k = 0; k < dim_; ++k) {
        if (P::sign(a_[i][k]) != 0 && P::sign(x[k]) != 0) {
          acc = P::add(acc, P::mul(a_[i][k], x[k]));
        }
      }
      r.s[i] = acc;
      if (P::sign(acc) == 0) set_bit(r.zero, i);
    }
    r.x = std::move(x);
    return r;
  }

  void note_size() {
    if (stats_) {
      stats_->max_intermediate_rays =
          std::max(stats_->max_intermediate_rays, rays_.size());
    }
  }

  bool adjacent(std::size_t p, std::size_t q, const std::vector<std::uint64_t>& common,
                const std::vector<std::size_t>& candidates) {
    if (stats_) ++stats_->adjacency_tests;
    if (options_.adjacency == AdjacencyTest::kAlgebraic) {
      Matrix active;
      for (int i = 0; i < m_; ++i) {
        if ((common[i >> 6] >> (i & 63)) & 1U) {
          RationalVector row(dim_);
          for (int k = 0; k < dim_; ++k) row[k] = Rational(rows_big_[i][k]);
          active.push_back(std::move(row));
        }
      }
      return rank_of(std::move(active), dim_) == dim_ - 2;
    }
    for (std::size_t r : candidates) {
      if (r == p || r == q) continue;
      const auto& z = rays_[r].zero;
      bool contains = true;
      for (int w = 0; w < words_ && contains; ++w) {
        contains = (common[w] & ~z[w]) == 0;
      }
      if (contains) return false;
    }
    return true;
  }

  void add_constraint(int i) {
    std::vector<std::size_t> pos, neg, all;
    for (std::size_t r = 0; r < rays_.size(); ++r) {
      const int s = P::sign(rays_[r].s[i]);
      if (s > 0) pos.push_back(r);
      if (s < 0) neg.push_back(r);
      all.push_back(r);
    }
    std::vector<Ray> created;
    if (!neg.empty() && !pos.empty()) {
      std::vector<std::uint64_t> common(words_);
      for (std::size_t p : pos) {
        for (std::size_t q : neg) {
          int count = 0;
          for (int w = 0; w < words_; ++w) {
            common[w] = rays_[p].zero[w] & rays_[q].zero[w] & processed_[w];
            count += __builtin_popcountll(common[w]);
          }
          if (count < dim_ - 2) continue;
          if (!adjacent(p, q, common, all)) continue;
          created.push_back(combine(rays_[p], rays_[q], i));
        }
      }
    }
    std::vector<Ray> next;
    next.reserve(rays_.size() - neg.size() + created.size());
    for (auto& r : rays_) {
      if (P::sign(r.s[i]) >= 0) next.push_back(std::move(r));
    }
    for (auto& r : created) next.push_back(std::move(r));
    rays_ = std::move(next);
    set_bit(processed_, i);
  }

  Ray combine(const Ray& p, const Ray& q, int i) {
    const T a = p.s[i];
    const T b = T(0) - q.s[i];
    Ray r;
    r.x.resize(dim_);
    r.s.resize(m_);
    r.zero.assign(words_, 0);
    T g{0};
    for (int k = 0; k < dim_; ++k) {
      r.x[k] = P::add(P::mul(a, q.x[k]), P::mul(b, p.x[k]));
      g = P::gcd(g, r.x[k]);
    }
    for (int j = 0; j < m_; ++j) {
      r.s[j] = P::add(P::mul(a, q.s[j]), P::mul(b, p.s[j]));
    }
    if (g > T(1)) {
      for (auto& v : r.x) v /= g;
      for (auto& v : r.s) v /= g;
    }
    for (int j = 0; j < m_; ++j) {
      if (P::sign(r.s[j]) == 0) set_bit(r.zero, j);
    }
    return r;
  }

  int dim_;
  int m_;
  int words_;
  DdOptions options_;
  DdStats* stats_;
  std::vector<std::vector<BigInt>> rows_big_;
  std::vector<std::vector<T>> a_;
  std::vector<std::uint64_t> processed_;
  std::vector<Ray> rays_;
};

bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

RationalVector canonicalize_ray(const RationalVector& x, bool nonnegative_orthant) {
  if (is_zero(x)) throw Error(ErrorKind::kZeroVector, "cannot canonicalize 0");
  if (nonnegative_orthant) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (sgn(x[i]) < 0) {
        throw Error(ErrorKind::kZeroToleranceViolation,
                    "negative coordinate " + std::to_string(i) +
                        " in a nonnegative-orthant ray");
      }
    }
  }
  const auto ints = primitive_integer(x);
  RationalVector out(ints.size());
  for (std::size_t i = 0; i < ints.size(); ++i) out[i] = Rational(ints[i]);
  return out;
}

VRepCone dd_rays(const HRepCone& h, const DdOptions& options, DdStats* stats) {
  const int dim = h.dim;
  if (dim < 1) throw Error(ErrorKind::kDimensionMismatch, "dimension must be >= 1");
  std::vector<std::vector<BigInt>> rows;
  Matrix rational_rows;
  for (const auto& a : h.normals) {
    if (static_cast<int>(a.size()) != dim) {
      throw Error(ErrorKind::kDimensionMismatch, "normal of wrong length");
    }
    if (is_zero(a)) continue;
    rows.push_back(primitive_integer(a));
    RationalVector r(dim);
    for (int k = 0; k < dim; ++k) r[k] = Rational(rows.back()[k]);
    rational_rows.push_back(std::move(r));
  }
  {
    // Drop exact duplicates; they only inflate zero sets uniformly.
    std::set<std::vector<BigInt>> seen;
    std::vector<std::vector<BigInt>> unique_rows;
    Matrix unique_rational;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (seen.insert(rows[i]).second) {
        unique_rows.push_back(rows[i]);
        unique_rational.push_back(rational_rows[i]);
      }
    }
    rows = std::move(unique_rows);
    rational_rows = std::move(unique_rational);
  }
  if (rank_of(rational_rows, dim) < dim) {
    throw NotPointedError(null_space(rational_rows, dim));
  }
  // Greedy basis in input order.
  std::vector<int> basis;
  Matrix echelon;
  for (int i = 0; i < static_cast<int>(rows.size()) &&
                  static_cast<int>(basis.size()) < dim;
       ++i) {
    Matrix trial = echelon;
    trial.push_back(rational_rows[i]);
    if (rank_of(trial, dim) > static_cast<int>(echelon.size())) {
      echelon.push_back(rational_rows[i]);
      basis.push_back(i);
    }
  }
  // Columns of the inverse of the basis rows are the initial rays.
  Matrix aug(dim, RationalVector(2 * dim, 0));
  for (int r = 0; r < dim; ++r) {
    for (int k = 0; k < dim; ++k) aug[r][k] = rational_rows[basis[r]][k];
    aug[r][dim + r] = 1;
  }
  rref(aug, 2 * dim);
  std::vector<std::vector<BigInt>> initial;
  for (int c = 0; c < dim; ++c) {
    RationalVector col(dim);
    for (int r = 0; r < dim; ++r) col[r] = aug[r][dim + c];
    initial.push_back(primitive_integer(col));
  }

  std::vector<std::vector<BigInt>> result;
  DdStats local;
  try {
    DoubleDescription<Int64Policy> engine(rows, dim, options, &local);
    result = engine.run(basis, initial);
  } catch (const Overflow&) {
    local = DdStats{};
    local.used_big_integers = true;
    DoubleDescription<BigPolicy> engine(rows, dim, options, &local);
    result = engine.run(basis, initial);
  }
  if (stats) *stats = local;

  VRepCone out;
  out.dim = dim;
  for (const auto& r : result) {
    RationalVector v(dim);
    for (int k = 0; k < dim; ++k) v[k] = Rational(r[k]);
    out.rays.push_back(std::move(v));
  }
  std::sort(out.rays.begin(), out.rays.end(), lex_less);
  return out;
}

HRepCone dd_facets(const VRepCone& v, const DdOptions& options, DdStats* stats) {
  HRepCone polar{v.dim, v.rays};
  VRepCone facets = dd_rays(polar, options, stats);
  return HRepCone{v.dim, std::move(facets.rays)};
}

bool satisfies(const HRepCone& h, const RationalVector& point) {
  if (static_cast<int>(point.size()) != h.dim) {
    throw Error(ErrorKind::kDimensionMismatch, "point has wrong dimension");
  }
  for (const auto& a : h.normals) {
    if (sgn(dot(a, point)) < 0) return false;
  }
  return true;
}

bool certificate_holds(const VRepCone& v, const RationalVector& point,
                       const FarkasCertificate& cert) {
  if (static_cast<int>(cert.normal.size()) != v.dim) return false;
  for (const auto& r : v.rays) {
    if (sgn(dot(cert.normal, r)) < 0) return false;
  }
  return sgn(dot(cert.normal, point)) < 0;
}

Membership cone_member(const VRepCone& v, const RationalVector& point) {
  if (static_cast<int>(point.size()) != v.dim) {
    throw Error(ErrorKind::kDimensionMismatch, "point has wrong dimension");
  }
  FeasibilityProblem lp;
  lp.rows = v.dim;
  lp.rhs = point;
  for (const auto& r : v.rays) {
    if (static_cast<int>(r.size()) != v.dim) {
      throw Error(ErrorKind::kDimensionMismatch, "ray has wrong dimension");
    }
    SparseColumn col;
    for (int k = 0; k < v.dim; ++k) {
      if (sgn(r[k]) != 0) col.entries.emplace_back(k, r[k]);
    }
    lp.columns.push_back(std::move(col));
  }
  auto result = solve_feasibility(lp);
  if (auto* f = std::get_if<Feasible>(&result)) return Inside{std::move(f->x)};
  FarkasCertificate cert{canonicalize_ray(std::get<Infeasible>(result).y)};
  if (!certificate_holds(v, point, cert)) {
    throw std::logic_error("Farkas certificate failed re-verification");
  }
  return Outside{std::move(cert)};
}

VRepCone minimize_rays(const VRepCone& v) {
  std::vector<RationalVector> unique;
  std::set<RationalVector, bool (*)(const RationalVector&, const RationalVector&)>
      seen(lex_less);
  for (const auto& r : v.rays) {
    if (is_zero(r)) continue;
    auto c = canonicalize_ray(r);
    if (seen.insert(c).second) unique.push_back(r);
  }
  std::vector<bool> keep(unique.size(), true);
  for (std::size_t i = 0; i < unique.size(); ++i) {
    VRepCone others{v.dim, {}};
    for (std::size_t j = 0; j < unique.size(); ++j) {
      if (j != i && keep[j]) others.rays.push_back(unique[j]);
    }
    if (std::holds_alternative<Inside>(cone_member(others, unique[i]))) {
      keep[i] = false;
    }
  }
  VRepCone out{v.dim, {}};
  for (std::size_t i = 0; i < unique.size(); ++i) {
    if (keep[i]) out.rays.push_back(unique[i]);
  }
  return out;
}

namespace {

void write_vectors(std::ostream& out, const char* kind, int dim,
                   const std::vector<RationalVector>& vs) {
  out << kind << ' ' << dim << ' ' << vs.size() << '\n';
  for (const auto& v : vs) out << to_string(v) << '\n';
}

}  // namespace

void write_cone(std::ostream& out, const HRepCone& h) {
  write_vectors(out, "hrep", h.dim, h.normals);
}

void write_cone(std::ostream& out, const VRepCone& v) {
  write_vectors(out, "vrep", v.dim, v.rays);
}

std::variant<HRepCone, VRepCone> read_cone(std::istream& in) {
  std::string line, kind;
  int line_no = 0;
  int dim = -1;
  long count = -1;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    if (!(tokens >> kind)) continue;
    if ((kind != "hrep" && kind != "vrep") || !(tokens >> dim >> count) ||
        dim < 1 || count < 0) {
      throw ParseError(line_no, "expected `hrep|vrep <dim> <count>`");
    }
    break;
  }
  if (dim < 0) throw ParseError(line_no, "missing cone header");
  std::vector<RationalVector> vs;
  while (static_cast<long>(vs.size()) < count && std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    RationalVector v;
    std::string tok;
    while (tokens >> tok) {
      try {
        v.push_back(parse_rational(tok));
      } catch (const Error& e) {
        throw ParseError(line_no, e.what());
      }
    }
    if (v.empty()) continue;
    if (static_cast<int>(v.size()) != dim) {
      throw ParseError(line_no, "expected " + std::to_string(dim) + " entries");
    }
    vs.push_back(std::move(v));
  }
  if (static_cast<long>(vs.size()) != count) {
    throw ParseError(line_no, "expected " + std::to_string(count) + " vectors");
  }
  if (kind == "hrep") return HRepCone{dim, std::move(vs)};
  return VRepCone{dim, std::move(vs)};
}

}  // namespace monocone
