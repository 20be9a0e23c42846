#include "monocone/poset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "monocone/error.hpp"

namespace monocone {

namespace {

void check_size(int n, int limit, const char* what) {
  if (n < 1 || n > limit) {
    throw Error(ErrorKind::kSizeLimitExceeded,
                std::string(what) + " supports 1.." + std::to_string(limit) +
                    " elements, got " + std::to_string(n));
  }
}

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

Poset make_poset_unchecked(int n, const std::array<Mask, kMaxElements>& up,
                           std::vector<std::string> labels) {
  Poset p;
  p.n_ = n;
  p.up_ = up;
  p.down_.fill(0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (has(up[x], y)) p.down_[y] |= bit(x);
    }
  }
  if (labels.empty()) labels = default_labels(n);
  if (static_cast<int>(labels.size()) != n) {
    throw Error(ErrorKind::kInvalidArgument, "label count differs from size");
  }
  p.labels_ = std::move(labels);
  return p;
}

std::string Poset::label(int x) const {
  return x >= 0 && x < static_cast<int>(labels_.size()) ? labels_[x]
                                                        : std::to_string(x);
}

int Poset::index_of(std::string_view name) const {
  for (int i = 0; i < n_; ++i) {
    if (labels_[i] == name) return i;
  }
  if (!name.empty() &&
      std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const int v = std::stoi(std::string(name));
    if (v < n_) return v;
  }
  return -1;
}

Mask Poset::minimal_elements() const {
  Mask out = 0;
  for (int x = 0; x < n_; ++x) {
    if (down_[x] == bit(x)) out |= bit(x);
  }
  return out;
}

Mask Poset::maximal_elements() const {
  Mask out = 0;
  for (int x = 0; x < n_; ++x) {
    if (up_[x] == bit(x)) out |= bit(x);
  }
  return out;
}

bool Poset::is_connected() const {
  if (n_ == 0) return true;
  Mask seen = bit(0), frontier = bit(0);
  while (frontier) {
    Mask next = 0;
    for (int x = 0; x < n_; ++x) {
      if (has(frontier, x)) next |= up_[x] | down_[x];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == all();
}

bool operator==(const Poset& a, const Poset& b) {
  if (a.n_ != b.n_) return false;
  for (int x = 0; x < a.n_; ++x) {
    if (a.up_[x] != b.up_[x]) return false;
  }
  return true;
}

Poset validate_poset(const std::vector<std::vector<bool>>& relation,
                     std::vector<std::string> labels) {
  const int n = static_cast<int>(relation.size());
  check_size(n, kMaxElements, "poset");
  for (const auto& row : relation) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorKind::kInvalidArgument, "relation matrix is not square");
    }
  }
  for (int x = 0; x < n; ++x) {
    if (!relation[x][x]) throw PosetAxiomError(ErrorKind::kNotReflexive, {x});
  }
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (relation[x][y] && relation[y][x]) {
        throw PosetAxiomError(ErrorKind::kNotAntisymmetric, {x, y});
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!relation[x][y] || x == y) continue;
      for (int z = 0; z < n; ++z) {
        if (relation[y][z] && !relation[x][z]) {
          throw PosetAxiomError(ErrorKind::kNotTransitive, {x, y, z});
        }
      }
    }
  }
  std::array<Mask, kMaxElements> up{};
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (relation[x][y]) up[x] |= bit(y);
    }
  }
  return make_poset_unchecked(n, up, std::move(labels));
}

Poset poset_from_strict(int n, const std::vector<std::pair<int, int>>& less,
                        std::vector<std::string> labels) {
  check_size(n, kMaxElements, "poset");
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (int x = 0; x < n; ++x) rel[x][x] = true;
  for (auto [i, j] : less) {
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw Error(ErrorKind::kInvalidArgument,
                  "relation (" + std::to_string(i) + "," + std::to_string(j) +
                      ") out of range");
    }
    rel[i][j] = true;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!rel[i][k]) continue;
      for (int j = 0; j < n; ++j) {
        if (rel[k][j]) rel[i][j] = true;
      }
    }
  }
  return validate_poset(rel, std::move(labels));
}

Poset poset_from_named(
    const std::vector<std::string>& labels,
    const std::vector<std::pair<std::string, std::string>>& less) {
  std::vector<std::pair<int, int>> pairs;
  auto find = [&](const std::string& name) {
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) {
      throw Error(ErrorKind::kInvalidArgument, "unknown element " + name);
    }
    return static_cast<int>(it - labels.begin());
  };
  for (const auto& [a, b] : less) pairs.emplace_back(find(a), find(b));
  return poset_from_strict(static_cast<int>(labels.size()), pairs, labels);
}

Poset with_labels(const Poset& p, std::vector<std::string> labels) {
  std::array<Mask, kMaxElements> up{};
  for (int x = 0; x < p.size(); ++x) up[x] = p.up(x);
  return make_poset_unchecked(p.size(), up, std::move(labels));
}

HasseDiagram hasse(const Poset& p) {
  HasseDiagram h;
  h.n = p.size();
  for (int x = 0; x < p.size(); ++x) {
    for (int y = 0; y < p.size(); ++y) {
      if (!p.less(x, y)) continue;
      // Strictly between x and y.
      const Mask between = p.up(x) & p.down(y) & ~bit(x) & ~bit(y);
      if (between == 0) h.covers.emplace_back(x, y);
    }
  }
  return h;
}

int cover_graph_cycle_rank(const Poset& p) {
  const auto h = hasse(p);
  std::vector<int> parent(p.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  int components = p.size();
  for (auto [x, y] : h.covers) {
    const int a = find(x), b = find(y);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return static_cast<int>(h.covers.size()) - p.size() + components;
}

bool cover_graph_is_acyclic(const Poset& p) {
  return cover_graph_cycle_rank(p) == 0;
}

bool is_upset(const Poset& p, Mask s) {
  for (int x = 0; x < p.size(); ++x) {
    if (has(s, x) && (p.up(x) & ~s)) return false;
  }
  return true;
}

bool is_downset(const Poset& p, Mask s) {
  for (int x = 0; x < p.size(); ++x) {
    if (has(s, x) && (p.down(x) & ~s)) return false;
  }
  return true;
}

namespace {

std::vector<UpSet> closed_sets(const Poset& p, bool upward) {
  std::vector<UpSet> out;
  const Mask limit = p.all();
  // Grow closed sets one element at a time so the search only visits
  // closed sets rather than all 2^n subsets.
  std::vector<Mask> stack{0};
  std::vector<Mask> found;
  std::vector<bool> seen_small;
  const bool small = p.size() <= 20;
  if (small) seen_small.assign(std::size_t{1} << p.size(), false);
  std::map<Mask, bool> seen_big;
  auto mark = [&](Mask m) {
    if (small) {
      if (seen_small[m]) return false;
      seen_small[m] = true;
      return true;
    }
    return seen_big.emplace(m, true).second;
  };
  mark(0);
  while (!stack.empty()) {
    const Mask s = stack.back();
    stack.pop_back();
    found.push_back(s);
    for (int x = 0; x < p.size(); ++x) {
      if (has(s, x)) continue;
      // Adding x keeps the set closed iff everything x forces is inside.
      const Mask forced = (upward ? p.up(x) : p.down(x)) & ~bit(x);
      if ((forced & ~s) == 0) {
        const Mask t = (s | bit(x)) & limit;
        if (mark(t)) stack.push_back(t);
      }
    }
  }
  std::sort(found.begin(), found.end(), [](Mask a, Mask b) {
    const int ca = popcount(a), cb = popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  out.reserve(found.size());
  for (Mask m : found) out.push_back(UpSet{m});
  return out;
}

}  // namespace

std::vector<UpSet> enumerate_upsets(const Poset& p) {
  return closed_sets(p, true);
}

std::vector<UpSet> enumerate_downsets(const Poset& p) {
  return closed_sets(p, false);
}

bool IncreasingMap::is_identity() const {
  for (int x = 0; x < n; ++x) {
    if (image[x] != x) return false;
  }
  return true;
}

bool IncreasingMap::is_constant() const {
  for (int x = 1; x < n; ++x) {
    if (image[x] != image[0]) return false;
  }
  return true;
}

IncreasingMap IncreasingMap::after(const IncreasingMap& inner) const {
  IncreasingMap out;
  out.n = n;
  for (int x = 0; x < n; ++x) out.image[x] = image[inner.image[x]];
  return out;
}

IncreasingMap identity_map(int n) {
  IncreasingMap f;
  f.n = static_cast<std::uint8_t>(n);
  for (int x = 0; x < n; ++x) f.image[x] = static_cast<std::uint8_t>(x);
  return f;
}

bool is_increasing(const Poset& p, const IncreasingMap& f) {
  for (int x = 0; x < p.size(); ++x) {
    for (int y = 0; y < p.size(); ++y) {
      if (p.leq(x, y) && !p.leq(f(x), f(y))) return false;
    }
  }
  return true;
}

namespace {

std::vector<int> linear_extension(const Poset& p) {
  std::vector<int> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return popcount(p.down(a)) < popcount(p.down(b));
  });
  return order;
}

}  // namespace

std::vector<IncreasingMap> enumerate_increasing_maps(const Poset& p,
                                                     std::size_t budget) {
  check_size(p.size(), kMaxMapElements, "increasing-map enumeration");
  const int n = p.size();
  const auto order = linear_extension(p);
  std::vector<IncreasingMap> out;
  IncreasingMap cur;
  cur.n = static_cast<std::uint8_t>(n);
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      if (out.size() >= budget) {
        throw Error(ErrorKind::kSizeLimitExceeded,
                    "more than " + std::to_string(budget) + " increasing maps");
      }
      out.push_back(cur);
      return;
    }
    const int x = order[k];
    // Lower bound: images of already placed elements below x.
    Mask allowed = p.all();
    for (int j = 0; j < k; ++j) {
      const int y = order[j];
      if (p.leq(y, x)) allowed &= p.up(cur.image[y]);
    }
    for (int v = 0; v < n; ++v) {
      if (!has(allowed, v)) continue;
      cur.image[x] = static_cast<std::uint8_t>(v);
      rec(k + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

Poset dual(const Poset& p) {
  std::array<Mask, kMaxElements> up{};
  for (int x = 0; x < p.size(); ++x) up[x] = p.down(x);
  return make_poset_unchecked(p.size(), up, p.labels());
}

std::string CanonicalCode::hex() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%d:%014llx", n,
                static_cast<unsigned long long>(code));
  return buf;
}

namespace {

CanonicalForm canonical_impl(const Poset& p) {
  const int n = p.size();
  check_size(n, kMaxMapElements, "canonical form");
  const int total_bits = n * (n - 1);
  std::uint64_t best = ~std::uint64_t{0};
  bool have_best = false;
  std::vector<int> best_order, order(n);
  Mask used = 0;
  std::function<void(int, std::uint64_t)> rec = [&](int k, std::uint64_t code) {
    if (k == n) {
      if (!have_best || code < best) {
        best = code;
        best_order = order;
        have_best = true;
      }
      return;
    }
    for (int e = 0; e < n; ++e) {
      if (has(used, e)) continue;
      std::uint64_t c = code;
      for (int i = 0; i < k; ++i) {
        c = (c << 1) | (p.leq(order[i], e) ? 1U : 0U);
        c = (c << 1) | (p.leq(e, order[i]) ? 1U : 0U);
      }
      const int bits = (k + 1) * k;
      if (have_best) {
        const std::uint64_t prefix =
            total_bits == bits ? best : best >> (total_bits - bits);
        if (c > prefix) continue;
      }
      order[k] = e;
      used |= bit(e);
      rec(k + 1, c);
      used &= ~bit(e);
    }
  };
  rec(0, 0);
  CanonicalForm form;
  form.code.n = n;
  form.code.code = n == 1 ? 0 : best;
  form.order = n == 1 ? std::vector<int>{0} : best_order;
  return form;
}

}  // namespace

CanonicalForm canonical_form(const Poset& p) {
  auto form = canonical_impl(p);
  form.code.self_dual = canonical_impl(dual(p)).code.code == form.code.code;
  return form;
}

CanonicalCode canonical_code(const Poset& p) { return canonical_form(p).code; }

Poset relabel(const Poset& p, const std::vector<int>& order) {
  const int n = p.size();
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  std::array<Mask, kMaxElements> up{};
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    const int x = order[i];
    labels[i] = p.label(x);
    for (int y = 0; y < n; ++y) {
      if (p.leq(x, y)) up[i] |= bit(position[y]);
    }
  }
  return make_poset_unchecked(n, up, std::move(labels));
}

std::vector<Poset> enumerate_posets(int n) {
  check_size(n, kMaxEnumeratedSize, "poset enumeration");
  std::vector<Poset> level{poset_from_strict(1, {})};
  for (int m = 2; m <= n; ++m) {
    std::map<std::uint64_t, Poset> classes;
    for (const auto& q : level) {
      for (const auto& d : enumerate_downsets(q)) {
        // New element m-1 sits above the down-set d.
        std::array<Mask, kMaxElements> up{};
        for (int x = 0; x < m - 1; ++x) {
          up[x] = q.up(x) | (has(d.members, x) ? bit(m - 1) : 0);
        }
        up[m - 1] = bit(m - 1);
        const Poset cand = make_poset_unchecked(m, up, {});
        const auto form = canonical_impl(cand);
        if (!classes.count(form.code.code)) {
          classes.emplace(form.code.code,
                          with_labels(relabel(cand, form.order), {}));
        }
      }
    }
    level.clear();
    for (auto& [code, poset] : classes) level.push_back(std::move(poset));
  }
  return level;
}

namespace {

void search_embeddings(const Poset& small, const Poset& big, bool dual_flag,
                       bool first_only, std::vector<Embedding>& out) {
  const int k = small.size();
  std::vector<int> map(k, -1);
  Mask used = 0;
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == k) {
      out.push_back(Embedding{map, dual_flag});
      return first_only;
    }
    for (int v = 0; v < big.size(); ++v) {
      if (has(used, v)) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        ok = small.leq(j, i) == big.leq(map[j], v) &&
             small.leq(i, j) == big.leq(v, map[j]);
      }
      if (!ok) continue;
      map[i] = v;
      used |= bit(v);
      if (rec(i + 1)) return true;
      used &= ~bit(v);
    }
    return false;
  };
  rec(0);
}

}  // namespace

std::optional<Embedding> find_induced_embedding(const Poset& small,
                                                const Poset& big,
                                                bool up_to_symmetry) {
  if (small.size() > big.size()) return std::nullopt;
  std::vector<Embedding> out;
  search_embeddings(small, big, false, true, out);
  if (out.empty() && up_to_symmetry) {
    search_embeddings(dual(small), big, true, true, out);
  }
  if (out.empty()) return std::nullopt;
  return out.front();
}

std::vector<Embedding> all_induced_embeddings(const Poset& small,
                                              const Poset& big,
                                              bool up_to_symmetry) {
  std::vector<Embedding> out;
  if (small.size() > big.size()) return out;
  search_embeddings(small, big, false, false, out);
  if (up_to_symmetry) search_embeddings(dual(small), big, true, false, out);
  return out;
}

Poset read_poset(std::istream& in) {
  std::string line;
  int line_no = 0;
  int n = -1;
  int header_line = 0;
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> raw;
  std::vector<int> raw_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::string keyword;
    if (!(tokens >> keyword)) continue;
    if (keyword == "poset") {
      if (n != -1) throw ParseError(line_no, "duplicate header");
      if (!(tokens >> n) || n < 1 || n > kMaxElements) {
        throw ParseError(line_no, "expected `poset <n>` with 1 <= n <= " +
                                      std::to_string(kMaxElements));
      }
      header_line = line_no;
    } else if (n == -1) {
      throw ParseError(line_no, "expected `poset <n>` header first");
    } else if (keyword == "labels") {
      std::string name;
      while (tokens >> name) labels.push_back(name);
      if (static_cast<int>(labels.size()) != n) {
        throw ParseError(line_no, "expected " + std::to_string(n) + " labels");
      }
    } else if (keyword == "rel") {
      std::string a, b, extra;
      if (!(tokens >> a >> b) || (tokens >> extra)) {
        throw ParseError(line_no, "expected `rel <i> <j>`");
      }
      raw.emplace_back(a, b);
      raw_lines.push_back(line_no);
    } else {
      throw ParseError(line_no, "unknown keyword '" + keyword + "'");
    }
  }
  if (n == -1) throw ParseError(line_no, "missing `poset <n>` header");
  const Poset shell = make_poset_unchecked(n, {}, labels);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const int a = shell.index_of(raw[i].first);
    const int b = shell.index_of(raw[i].second);
    if (a < 0 || b < 0) throw ParseError(raw_lines[i], "unknown element");
    if (a == b) throw ParseError(raw_lines[i], "strict relation on one element");
    pairs.emplace_back(a, b);
  }
  try {
    return poset_from_strict(n, pairs, labels);
  } catch (const Error& e) {
    throw ParseError(header_line, e.what());
  }
}

Poset read_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open " + path);
  return read_poset(in);
}

void write_poset(std::ostream& out, const Poset& p) {
  out << "poset " << p.size() << "\n";
  out << "labels";
  for (int x = 0; x < p.size(); ++x) out << ' ' << p.label(x);
  out << "\n";
  for (auto [x, y] : hasse(p).covers) out << "rel " << x << ' ' << y << "\n";
}

std::string poset_to_string(const Poset& p) {
  std::ostringstream out;
  write_poset(out, p);
  return out.str();
}

std::string to_dot(const Poset& p, std::string_view name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=BT;\n  edge [arrowhead=none];\n";
  for (int x = 0; x < p.size(); ++x) {
    out << "  n" << x << " [label=\"" << p.label(x) << "\"];\n";
  }
  for (auto [x, y] : hasse(p).covers) {
    out << "  n" << x << " -> n" << y << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace monocone
