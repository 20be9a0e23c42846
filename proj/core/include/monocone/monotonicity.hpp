#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "monocone/polyhedra.hpp"
#include "monocone/poset.hpp"
#include "monocone/rational.hpp"

namespace monocone {

/// Coordinates of R^{S_2}: ordered pairs (x, y), x != y, row-major with the
/// diagonal skipped.
inline int pair_dimension(int n) { return n * (n - 1); }
inline int pair_index(int n, int x, int y) {
  return x * (n - 1) + (y < x ? y : y - 1);
}
inline std::pair<int, int> pair_at(int n, int index) {
  const int x = index / (n - 1);
  const int r = index % (n - 1);
  return {x, r < x ? r : r + 1};
}

/// Off-diagonal rates of a continuous-time chain on a poset; the diagonal
/// is implied by zero row sums.
class Generator {
 public:
  explicit Generator(Poset poset);
  /// Throws InvalidArgument on negative rates or a wrong length.
  Generator(Poset poset, RationalVector rates);

  const Poset& poset() const { return poset_; }
  int size() const { return poset_.size(); }
  const Rational& rate(int x, int y) const;
  void set_rate(int x, int y, const Rational& value);
  /// Sum of rates leaving x.
  Rational exit_rate(int x) const;
  Rational max_exit_rate() const;
  /// Rate from x into the set `target`, excluding x itself.
  Rational rate_into(int x, Mask target) const;
  /// The generator as a point of the orthant in R^{S_2}.
  const RationalVector& point() const { return rates_; }

  friend bool operator==(const Generator& a, const Generator& b) {
    return a.poset_ == b.poset_ && a.rates_ == b.rates_;
  }

 private:
  Poset poset_;
  RationalVector rates_;
};

/// Generator with rates given by label, e.g. {{"d","c",1}, ...}.
Generator named_generator(
    const Poset& p,
    const std::vector<std::tuple<std::string, std::string, Rational>>& rates);

class TransitionMatrix {
 public:
  /// Throws InvalidArgument unless entries lie in [0,1] and rows sum to 1.
  TransitionMatrix(Poset poset, std::vector<RationalVector> probs);

  const Poset& poset() const { return poset_; }
  int size() const { return poset_.size(); }
  const Rational& prob(int x, int y) const { return probs_[x][y]; }
  const std::vector<RationalVector>& rows() const { return probs_; }

 private:
  Poset poset_;
  std::vector<RationalVector> probs_;
};

/// H-representation of the stochastically monotone generators: every
/// distinct nonzero W vector plus the coordinate normals.
struct MonotoneConeSpec {
  HRepCone cone;
  std::size_t w_count = 0;
};

/// V-representation of the realizably monotone generators: one indicator
/// ray per non-identity increasing map; maps[i] produces cone.rays[i].
struct RealizableConeSpec {
  VRepCone cone;
  std::vector<IncreasingMap> maps;
};

using LambdaWeights = std::vector<std::pair<IncreasingMap, Rational>>;

struct Realizable {
  LambdaWeights weights;
};

struct NotRealizable {
  FarkasCertificate cert;
};

using Realizability = std::variant<Realizable, NotRealizable>;

/// Which inequality of the monotone cone a generator breaks.
struct MonotonicityViolation {
  UpSet gamma;
  int x = 0;
  int y = 0;
  /// <W, L>, negative.
  Rational value;
};

/// W^{Gamma,x,y} for every up-set and comparable pair x != y, with zero
/// vectors and duplicates removed, in generation order.
std::vector<RationalVector> w_vectors(const Poset& p);

MonotoneConeSpec monotone_cone(const Poset& p);

/// Indicator vector of a map in R^{S_2}; zero for the identity.
RationalVector indicator(const IncreasingMap& f);

RealizableConeSpec indicator_vectors(const Poset& p);

bool is_monotone(const Generator& l);
std::optional<MonotonicityViolation> find_monotonicity_violation(const Generator& l);

Realizability is_realizably_monotone(const Generator& l);
/// Batch form sharing one precomputed ray set.
Realizability is_realizably_monotone(const Generator& l,
                                     const RealizableConeSpec& spec);

/// sum_{f : f(x) = y} Lambda(f) == L_{x,y} for every (x,y) in S_2.
bool reconstructs(const Generator& l, const LambdaWeights& weights);

struct Witness {
  RationalVector ray;
  FarkasCertificate cert;
};

struct EquivalenceReport {
  Poset poset;
  bool holds = false;
  std::size_t mon_rays = 0;
  std::size_t rmon_rays = 0;
  std::vector<Witness> witnesses;
};

struct EquivalenceOptions {
  /// n <= 6 by default; 7 only on request.
  int max_size = 6;
  DdOptions dd;
};

/// Extremal rays of G_mon by double description, each tested for
/// membership in G_r.mon. Also counts the extremal I_f rays.
EquivalenceReport equivalence_holds(const Poset& p,
                                    const EquivalenceOptions& options = {});

/// Extremal rays of G_mon alone.
VRepCone monotone_extremal_rays(const Poset& p, const DdOptions& dd = {});

/// The indicator rays that are extremal in G_r.mon (not a nonnegative
/// combination of the others), as indices into spec.maps.
std::vector<std::size_t> extremal_indicator_indices(const RealizableConeSpec& spec);

// Discrete time.

bool is_monotone_transition(const TransitionMatrix& p);

struct RealizableTransition {
  /// Probability on increasing maps (identity included), positive entries.
  LambdaWeights distribution;
};

struct NotRealizableTransition {
  /// Separating normal over all n x n entries, row-major.
  RationalVector normal;
};

using TransitionRealizability =
    std::variant<RealizableTransition, NotRealizableTransition>;

TransitionRealizability is_realizably_monotone_transition(const TransitionMatrix& p);

/// lambda in (0, 1] with (1 - lambda) I + lambda P realizably monotone, or
/// nothing when the off-diagonal part of P is not a realizable generator.
/// Throws NotMonotone when P is not stochastically monotone.
std::optional<Rational> weak_equivalence_witness(const TransitionMatrix& p);

/// I + eps L. Throws EpsilonTooLarge when eps exceeds 1 / max exit rate.
TransitionMatrix transition_of(const Generator& l, const Rational& eps);
/// (P - I) / eps off the diagonal.
Generator generator_of(const TransitionMatrix& p, const Rational& eps);

TransitionMatrix mix_with_identity(const TransitionMatrix& p, const Rational& lambda);

// File formats. `gen <n>` / `rate <x> <y> <q>` and `trans <n>` /
// `prob <x> <y> <q>`; omitted off-diagonal entries are zero and an omitted
// diagonal probability is 1 minus the row sum. Elements are indices or
// labels of the poset.

Generator read_generator(std::istream& in, const Poset& p);
Generator read_generator_file(const std::string& path, const Poset& p);
void write_generator(std::ostream& out, const Generator& l);
TransitionMatrix read_transition(std::istream& in, const Poset& p);
TransitionMatrix read_transition_file(const std::string& path, const Poset& p);
void write_transition(std::ostream& out, const TransitionMatrix& p);

}  // namespace monocone
