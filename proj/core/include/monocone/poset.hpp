#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace monocone {

/// Posets are stored as bitmask rows, so the representation itself can
/// hold a few more points than the combinatorial routines accept.
inline constexpr int kMaxElements = 16;
/// Increasing-map enumeration, canonical forms and embeddings.
inline constexpr int kMaxMapElements = 8;
/// Isomorphism-class enumeration.
inline constexpr int kMaxEnumeratedSize = 7;

using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }
inline bool has(Mask m, int x) { return (m >> x) & 1U; }
inline Mask bit(int x) { return Mask{1} << x; }

/// A finite partial order on 0..n-1. Elements are dense indices; labels
/// exist only for display and for parsing named rate tables.
class Poset {
 public:
  Poset() = default;

  int size() const { return n_; }
  bool leq(int x, int y) const { return has(up_[x], y); }
  bool less(int x, int y) const { return x != y && leq(x, y); }
  bool comparable(int x, int y) const { return leq(x, y) || leq(y, x); }
  /// {y : x <= y}
  Mask up(int x) const { return up_[x]; }
  /// {y : y <= x}
  Mask down(int x) const { return down_[x]; }
  Mask all() const { return n_ == 32 ? ~Mask{0} : (bit(n_) - 1); }

  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int x) const;
  /// Index of a label, or of a decimal index string; -1 when unknown.
  int index_of(std::string_view name) const;

  Mask minimal_elements() const;
  Mask maximal_elements() const;
  bool is_connected() const;

  /// Same relation on the same indices (labels are ignored).
  friend bool operator==(const Poset& a, const Poset& b);

 private:
  friend Poset make_poset_unchecked(int n, const std::array<Mask, kMaxElements>&,
                                    std::vector<std::string>);
  int n_ = 0;
  std::array<Mask, kMaxElements> up_{};
  std::array<Mask, kMaxElements> down_{};
  std::vector<std::string> labels_;
};

/// Builds a poset from a full n x n relation (relation[x][y] <=> x <= y).
/// Throws PosetAxiomError naming the first violated axiom and its witness.
Poset validate_poset(const std::vector<std::vector<bool>>& relation,
                     std::vector<std::string> labels = {});

/// Builds a poset from strict relations i < j, closing transitively first.
/// Cycles surface as NotAntisymmetric.
Poset poset_from_strict(int n, const std::vector<std::pair<int, int>>& less,
                        std::vector<std::string> labels = {});

/// Same as poset_from_strict but with relations given by label.
Poset poset_from_named(
    const std::vector<std::string>& labels,
    const std::vector<std::pair<std::string, std::string>>& less);

Poset make_poset_unchecked(int n, const std::array<Mask, kMaxElements>& up,
                           std::vector<std::string> labels);

Poset with_labels(const Poset& p, std::vector<std::string> labels);

struct HasseDiagram {
  int n = 0;
  /// (x, y) with y covering x, sorted lexicographically.
  std::vector<std::pair<int, int>> covers;
};

HasseDiagram hasse(const Poset& p);

/// Number of independent cycles of the undirected cover graph
/// (edges - vertices + components).
int cover_graph_cycle_rank(const Poset& p);

bool cover_graph_is_acyclic(const Poset& p);

struct UpSet {
  Mask members = 0;

  bool contains(int x) const { return has(members, x); }
  friend bool operator==(UpSet a, UpSet b) { return a.members == b.members; }
};

bool is_upset(const Poset& p, Mask s);
bool is_downset(const Poset& p, Mask s);

/// All up-sets including the empty set and the whole set, ordered by
/// cardinality and then by mask value.
std::vector<UpSet> enumerate_upsets(const Poset& p);

/// Down-sets of p, i.e. the up-sets of dual(p), in the same order.
std::vector<UpSet> enumerate_downsets(const Poset& p);

/// An order-preserving self-map stored by value.
struct IncreasingMap {
  std::uint8_t n = 0;
  std::array<std::uint8_t, kMaxMapElements> image{};

  int operator()(int x) const { return image[x]; }
  bool is_identity() const;
  bool is_constant() const;
  /// (*this) o inner
  IncreasingMap after(const IncreasingMap& inner) const;

  friend bool operator==(const IncreasingMap& a, const IncreasingMap& b) {
    return a.n == b.n && a.image == b.image;
  }
  friend bool operator<(const IncreasingMap& a, const IncreasingMap& b) {
    return a.image < b.image;
  }
};

IncreasingMap identity_map(int n);
bool is_increasing(const Poset& p, const IncreasingMap& f);

inline constexpr std::size_t kDefaultMapBudget = 2'000'000;

/// Every increasing self-map, in lexicographic order of the image vector.
/// Throws SizeLimitExceeded for n > 8 or when more than `budget` maps exist.
std::vector<IncreasingMap> enumerate_increasing_maps(
    const Poset& p, std::size_t budget = kDefaultMapBudget);

Poset dual(const Poset& p);

struct CanonicalCode {
  int n = 0;
  std::uint64_t code = 0;
  bool self_dual = false;

  friend bool operator==(const CanonicalCode& a, const CanonicalCode& b) {
    return a.n == b.n && a.code == b.code;
  }
  friend bool operator<(const CanonicalCode& a, const CanonicalCode& b) {
    return a.n != b.n ? a.n < b.n : a.code < b.code;
  }
  std::string hex() const;
};

struct CanonicalForm {
  CanonicalCode code;
  /// position -> original element; relabelling by this gives the canonical
  /// representative.
  std::vector<int> order;
};

/// Minimum over all n! relabellings of the strict relation read in
/// "grow by one element" bit order: for k = 1..n-1, bits (i,k),(k,i) for
/// i < k. Throws SizeLimitExceeded for n > 8.
CanonicalForm canonical_form(const Poset& p);
CanonicalCode canonical_code(const Poset& p);

/// Relabels p so that element order[i] becomes i.
Poset relabel(const Poset& p, const std::vector<int>& order);

/// One representative per isomorphism class (duals kept apart), each in
/// canonical labelling, sorted by canonical code.
std::vector<Poset> enumerate_posets(int n);

struct Embedding {
  /// small element -> big element
  std::vector<int> map;
  /// True when the dual of `small` is what embeds.
  bool dual = false;
};

std::optional<Embedding> find_induced_embedding(const Poset& small,
                                                const Poset& big,
                                                bool up_to_symmetry);

/// Every induced embedding (and, optionally, of the dual).
std::vector<Embedding> all_induced_embeddings(const Poset& small,
                                              const Poset& big,
                                              bool up_to_symmetry);

/// Text format: `poset <n>`, optional `labels ...`, then `rel <i> <j>`
/// lines (i < j, indices or labels). Comments start with '#'.
Poset read_poset(std::istream& in);
Poset read_poset_file(const std::string& path);
void write_poset(std::ostream& out, const Poset& p);
std::string poset_to_string(const Poset& p);

/// Graphviz rendering of the Hasse diagram, edges from lower to higher.
std::string to_dot(const Poset& p, std::string_view name = "poset");

}  // namespace monocone
