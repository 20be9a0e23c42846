#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "monocone/error.hpp"
#include "monocone/rational.hpp"

namespace monocone {

/// { x : <a, x> >= 0 for every normal a }
struct HRepCone {
  int dim = 0;
  std::vector<RationalVector> normals;
};

/// Nonnegative hull of `rays`.
struct VRepCone {
  int dim = 0;
  std::vector<RationalVector> rays;
};

struct FarkasCertificate {
  RationalVector normal;
};

struct Inside {
  /// One weight per ray of the tested cone, in ray order.
  RationalVector weights;
};

struct Outside {
  FarkasCertificate cert;
};

using Membership = std::variant<Inside, Outside>;

/// The input cone contains a line; `basis` spans its lineality space.
class NotPointedError : public Error {
 public:
  explicit NotPointedError(std::vector<RationalVector> basis)
      : Error(ErrorKind::kNotPointed,
              "lineality space of dimension " + std::to_string(basis.size())),
        basis_(std::move(basis)) {}

  const std::vector<RationalVector>& basis() const { return basis_; }

 private:
  std::vector<RationalVector> basis_;
};

enum class AdjacencyTest {
  /// No other ray's zero set contains the pair's common zero set.
  kCombinatorial,
  /// The common active constraints have rank dim - 2.
  kAlgebraic,
};

struct DdOptions {
  AdjacencyTest adjacency = AdjacencyTest::kCombinatorial;
};

struct DdStats {
  std::size_t max_intermediate_rays = 0;
  std::size_t adjacency_tests = 0;
  bool used_big_integers = false;
};

/// Extremal rays of an H-cone by the Double Description method. Constraints
/// are inserted in "fewest violated rays first" order. Rays come back as
/// primitive integer vectors sorted lexicographically. Throws
/// NotPointedError when the cone has a nontrivial lineality space.
VRepCone dd_rays(const HRepCone& h, const DdOptions& options = {},
                 DdStats* stats = nullptr);

/// Minimal inequality description of a V-cone (the extremal rays of the
/// polar cone). Throws NotPointedError when the rays do not span the space.
HRepCone dd_facets(const VRepCone& v, const DdOptions& options = {},
                   DdStats* stats = nullptr);

/// Exact LP membership. Inside carries weights reproducing the point;
/// Outside carries a primitive integer normal separating it. Both are
/// verified before returning.
Membership cone_member(const VRepCone& v, const RationalVector& point);

bool satisfies(const HRepCone& h, const RationalVector& point);

/// <normal, r> >= 0 on every ray and <normal, point> < 0.
bool certificate_holds(const VRepCone& v, const RationalVector& point,
                       const FarkasCertificate& cert);

/// Positive rescaling to an integer vector with coordinate gcd 1. With
/// `nonnegative_orthant`, negative coordinates are reported as
/// ZeroToleranceViolation. Throws ZeroVector on 0.
RationalVector canonicalize_ray(const RationalVector& x,
                                bool nonnegative_orthant = false);

/// Drops rays that are nonnegative combinations of the others and merges
/// positive multiples. Output keeps input order.
VRepCone minimize_rays(const VRepCone& v);

/// Cone exchange format: `hrep|vrep <dim> <count>` then one vector per
/// line of space separated rationals.
void write_cone(std::ostream& out, const HRepCone& h);
void write_cone(std::ostream& out, const VRepCone& v);
std::variant<HRepCone, VRepCone> read_cone(std::istream& in);

}  // namespace monocone
