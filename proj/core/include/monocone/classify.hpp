#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "monocone/monotonicity.hpp"
#include "monocone/poset.hpp"

namespace monocone {

// Named posets. S1..S5 use the labels a,b,c,d,w and S6..S9 use a..f, so
// the example rate tables can refer to elements by name.

/// "S1".."S9", "diamond", "bowtie", "K33", "S8z" (S8 plus a point above
/// e and f only) and "S9acyclic" (S9 with w, w1, w2 threaded through).
/// Throws InvalidArgument for an unknown name.
Poset named_poset(const std::string& name);
const std::vector<std::string>& figure_names();  // S1..S9

Poset diamond();
Poset bowtie();
/// k minima x0..x{k-1} and k maxima y0..y{k-1}, x_i < y_i, x_i < y_{i-1}
/// and x0 < y{k-1}. Needs k >= 2.
Poset kcrown(int k);
/// Every one of `bottom` minima below every one of `top` maxima.
Poset complete_bipartite(int bottom, int top);

struct NamedExample {
  std::string id;
  Poset poset;
  Generator generator;
  bool expected_monotone = true;
  bool expected_realizable = false;
  /// Set for the obstruction instance: a superposet on which the
  /// generator must have no monotone extension.
  std::optional<Poset> superposet;
};

/// ex1..ex9, ex10 on S8 and on K33, ex11, and kcrown(3), kcrown(4).
std::vector<NamedExample> builtin_examples();
NamedExample kcrown_example(int k);

// Classification.

/// Reporting-only annotations for the open characterisation attempt: the
/// Hasse diagram's cycle structure and Y-shaped subposets off the cycle.
struct ShapeNotes {
  int cycle_rank = 0;
  bool connected = true;
  bool unique_cycle_is_diamond = false;
  bool y_off_cycle = false;
};

ShapeNotes shape_notes(const Poset& p);

struct FailingClass {
  CanonicalCode code;
  EquivalenceReport report;
  /// S6..S9 (or S1..S5) when the class is one of them up to duality.
  std::optional<std::string> figure;
  /// Which of S1..S5 embed as induced subposets, up to duality.
  std::vector<std::string> induced;
  ShapeNotes notes;
};

struct ClassificationResult {
  int cardinality = 0;
  std::size_t total_classes = 0;
  std::vector<FailingClass> failing;
  /// Failing classes with dual pairs counted once.
  std::size_t failing_up_to_symmetry = 0;
};

struct ClassifyOptions {
  /// n = 7 runs only when this is set.
  bool allow_seven = false;
  /// Worker threads; results are merged in canonical-code order.
  int jobs = 1;
  DdOptions dd;
};

ClassificationResult classify_all(int n, const ClassifyOptions& options = {});

/// Differences between a classification and the known answer for n <= 6:
/// nothing fails below 5 points; at 5 the failing classes are S1..S5 up to
/// duality; at 6 they are exactly the classes with an induced S1..S5 plus
/// S6..S9. Empty when everything agrees.
std::vector<std::string> classification_discrepancies(const ClassificationResult& r);

/// Name of the figure poset isomorphic to p or to its dual.
std::optional<std::string> identify_figure(const Poset& p);

struct RayCountRow {
  std::string id;
  std::size_t rmon_rays = 0;
  std::size_t mon_rays = 0;

  friend bool operator==(const RayCountRow&, const RayCountRow&) = default;
};

std::vector<RayCountRow> ray_count_table(
    const std::vector<std::pair<std::string, Poset>>& posets,
    const DdOptions& dd = {});

/// Published values for S1..S9.
const std::vector<RayCountRow>& published_ray_counts();

/// Rows of `computed` that differ from the published value with the same id.
std::vector<std::string> table_mismatches(const std::vector<RayCountRow>& computed);

// Extensions to larger posets.

enum class ExtensionCase { kS1, kS2, kS3, kS4, kS5, kS6, kS7, kS8, kCrown };

std::string to_string(ExtensionCase c);
/// "S1".."S8" or "kcrown".
ExtensionCase extension_case_from_string(const std::string& name);

struct PartitionBlock {
  std::string name;
  Mask members = 0;
  /// Base labels receiving rate 1 from new points of this block.
  std::vector<std::string> targets;
};

struct ExtensionPlan {
  ExtensionCase base_case = ExtensionCase::kS1;
  int crown_k = 0;
  Poset base_poset;
  Poset big_poset;
  Embedding embedding;
  std::vector<PartitionBlock> partition;
  Generator base_generator;
  Generator extended_generator;
};

/// Base poset and generator used by a case (k only matters for kCrown).
NamedExample extension_base(ExtensionCase c, int crown_k = 3);

/// Throws NoInducedEmbedding when no induced copy (or dual copy) exists.
ExtensionPlan build_extension(ExtensionCase c, const Poset& big, int crown_k = 3);
/// Throws CaseNotApplicable when `embedding` does not fit the case's base
/// poset and NoInducedEmbedding when it is not induced.
ExtensionPlan build_extension(ExtensionCase c, const Poset& big,
                              const Embedding& embedding, int crown_k = 3);

struct ExtensionReport {
  bool monotone = false;
  bool restricts = false;
  bool not_realizable = false;
  std::optional<MonotonicityViolation> violation;
  std::optional<FarkasCertificate> certificate;

  bool passed() const { return monotone && restricts && not_realizable; }
};

ExtensionReport verify_extension(const ExtensionPlan& plan);

struct MonotoneExtension {
  Generator generator;
};
struct NoMonotoneExtension {
  /// Farkas vector over the deduplicated monotonicity rows of the LP.
  RationalVector farkas;
};

/// Looks for any monotone L' on `big` that agrees with `base` on the
/// embedded copy and has zero rates into new points. Exact LP.
std::variant<MonotoneExtension, NoMonotoneExtension> find_monotone_extension(
    const Generator& base, const Poset& big, const Embedding& embedding);

/// Equivalence check on the complete bipartite poset.
EquivalenceReport complete_crown_check(int bottom, int top);

}  // namespace monocone
