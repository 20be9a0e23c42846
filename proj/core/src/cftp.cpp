#include "monocone/cftp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>

#include "monocone/error.hpp"

namespace monocone {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, int clock, std::int64_t block) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ static_cast<std::uint64_t>(clock));
  return splitmix(h ^ static_cast<std::uint64_t>(block));
}

void check_rates(const Generator& l, const std::vector<Clock>& clocks) {
  const int n = l.size();
  std::vector<RationalVector> produced(n, RationalVector(n, 0));
  for (const auto& c : clocks) {
    if (static_cast<int>(c.map.size()) != n) {
      throw Error(ErrorKind::kInvalidArgument, "clock map has the wrong size");
    }
    if (sgn(c.rate) < 0) throw Error(ErrorKind::kInvalidArgument, "negative clock rate");
    for (int x = 0; x < n; ++x) {
      if (c.map[x] < 0 || c.map[x] >= n) {
        throw Error(ErrorKind::kInvalidArgument, "clock map leaves the state space");
      }
      if (c.map[x] != x) produced[x][c.map[x]] += c.rate;
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y && produced[x][y] != l.rate(x, y)) {
        throw Error(ErrorKind::kInvalidArgument,
                    "clocks do not realize the generator at (" + std::to_string(x) + "," +
                        std::to_string(y) + ")");
      }
    }
  }
}

}  // namespace

RdsiSpec::RdsiSpec(ClockKind kind, Generator l, std::vector<Clock> clocks)
    : kind_(kind), generator_(std::move(l)), clocks_(std::move(clocks)) {
  check_rates(generator_, clocks_);
}

RdsiSpec RdsiSpec::product(const Generator& l) {
  std::vector<Clock> clocks;
  const int n = l.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y || sgn(l.rate(x, y)) == 0) continue;
      Clock c{l.rate(x, y), std::vector<int>(n)};
      for (int z = 0; z < n; ++z) c.map[z] = z;
      c.map[x] = y;
      clocks.push_back(std::move(c));
    }
  }
  return RdsiSpec(ClockKind::kProduct, l, std::move(clocks));
}

RdsiSpec RdsiSpec::maps(const Generator& l, const LambdaWeights& weights) {
  if (!reconstructs(l, weights)) {
    throw Error(ErrorKind::kInvalidArgument, "weights do not reconstruct the generator");
  }
  std::vector<Clock> clocks;
  for (const auto& [f, w] : weights) {
    if (sgn(w) == 0) continue;
    Clock c{w, std::vector<int>(l.size())};
    for (int x = 0; x < l.size(); ++x) c.map[x] = f(x);
    clocks.push_back(std::move(c));
  }
  return RdsiSpec(ClockKind::kMap, l, std::move(clocks));
}

RdsiSpec RdsiSpec::custom(const Generator& l, std::vector<Clock> clocks) {
  return RdsiSpec(ClockKind::kCustom, l, std::move(clocks));
}

bool RdsiSpec::monotone() const {
  const Poset& p = generator_.poset();
  for (const auto& c : clocks_) {
    for (int x = 0; x < p.size(); ++x) {
      for (int y = 0; y < p.size(); ++y) {
        if (p.leq(x, y) && !p.leq(c.map[x], c.map[y])) return false;
      }
    }
  }
  return true;
}

std::vector<Event> events_in(const RdsiSpec& spec, std::uint64_t seed, double from, double to) {
  std::vector<Event> out;
  if (!(from < to)) return out;
  const auto first = static_cast<std::int64_t>(std::floor(from));
  const auto last = static_cast<std::int64_t>(std::ceil(to));
  for (int c = 0; c < static_cast<int>(spec.clocks().size()); ++c) {
    const double rate = spec.clocks()[c].rate.get_d();
    if (rate <= 0) continue;
    for (std::int64_t block = first; block < last; ++block) {
      std::mt19937_64 engine(stream_key(seed, c, block));
      std::exponential_distribution<double> gap(rate);
      const auto start = static_cast<double>(block);
      for (double t = start + gap(engine); t < start + 1; t += gap(engine)) {
        if (t >= from && t < to) out.push_back(Event{t, c});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Event& a, const Event& b) {
    return a.time != b.time ? a.time < b.time : a.clock < b.clock;
  });
  return out;
}

std::vector<int> simulate_window(const RdsiSpec& spec, double from, double to,
                                 std::uint64_t seed) {
  std::vector<int> state(spec.generator().size());
  for (int x = 0; x < static_cast<int>(state.size()); ++x) state[x] = x;
  for (const auto& e : events_in(spec, seed, from, to)) {
    const auto& map = spec.clocks()[e.clock].map;
    for (auto& s : state) s = map[s];
  }
  return state;
}

std::vector<int> simulate_forward(const RdsiSpec& spec, double horizon, std::uint64_t seed) {
  return simulate_window(spec, 0, horizon, seed);
}

CftpResult cftp_sample(const RdsiSpec& spec, std::uint64_t seed, const CftpOptions& options) {
  const Poset& p = spec.generator().poset();
  CftpResult result;
  const bool monotone = spec.monotone();
  switch (options.tracking) {
    case TrackingRequest::kAuto:
      result.tracked = monotone && p.is_connected() ? Tracking::kExtremesOnly
                                                    : Tracking::kFullState;
      break;
    case TrackingRequest::kFullState:
      result.tracked = Tracking::kFullState;
      break;
    case TrackingRequest::kExtremesOnly:
      if (!monotone) {
        throw Error(ErrorKind::kInvalidArgument, "extremes-only tracking needs monotone clocks");
      }
      result.tracked = Tracking::kExtremesOnly;
      break;
  }
  std::vector<int> starts;
  const Mask extremes = p.minimal_elements() | p.maximal_elements();
  for (int x = 0; x < p.size(); ++x) {
    if (result.tracked == Tracking::kFullState || has(extremes, x)) starts.push_back(x);
  }

  for (double depth = 1; depth <= options.max_depth; depth *= 2) {
    std::vector<int> images = starts;
    const auto events = events_in(spec, seed, -depth, 0);
    for (const auto& e : events) {
      const auto& map = spec.clocks()[e.clock].map;
      for (auto& s : images) s = map[s];
      if (options.observer) options.observer(starts, images);
    }
    if (std::all_of(images.begin(), images.end(), [&](int s) { return s == images.front(); })) {
      result.outcome = Coalesced{images.front(), depth, events.size()};
      return result;
    }
  }
  result.outcome = Timeout{options.max_depth};
  return result;
}

RationalVector stationary_distribution(const Generator& l) {
  const int n = l.size();
  std::vector<Mask> reach(n);
  for (int x = 0; x < n; ++x) {
    reach[x] = bit(x);
    for (int y = 0; y < n; ++y) {
      if (x != y && sgn(l.rate(x, y)) > 0) reach[x] |= bit(y);
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int x = 0; x < n; ++x) {
      if (has(reach[x], k)) reach[x] |= reach[k];
    }
  }
  std::vector<std::vector<int>> classes;
  Mask assigned = 0;
  for (int x = 0; x < n; ++x) {
    if (has(assigned, x)) continue;
    std::vector<int> cls;
    for (int y = 0; y < n; ++y) {
      if (has(reach[x], y) && has(reach[y], x)) {
        cls.push_back(y);
        assigned |= bit(y);
      }
    }
    classes.push_back(std::move(cls));
  }
  if (classes.size() > 1) throw NotIrreducibleError(std::move(classes));

  // Row y: sum_x pi_x L_{x,y} = 0; the last row is replaced by sum pi = 1.
  std::vector<RationalVector> a(n, RationalVector(n + 1, 0));
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) a[y][x] = x == y ? Rational(-l.exit_rate(y)) : l.rate(x, y);
  }
  for (int x = 0; x < n; ++x) a[n - 1][x] = 1;
  a[n - 1][n] = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) throw std::logic_error("singular stationary system");
    std::swap(a[pivot], a[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (int k = col; k <= n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  RationalVector pi(n);
  for (int x = 0; x < n; ++x) pi[x] = a[x][n] / a[x][x];
  return pi;
}

EmpiricalCheck empirical_check(const std::vector<int>& samples, const RationalVector& pi) {
  if (samples.size() < 1000) {
    throw Error(ErrorKind::kInvalidArgument, "empirical check needs at least 1000 samples");
  }
  const int n = static_cast<int>(pi.size());
  std::vector<double> counts(n, 0);
  for (int s : samples) {
    if (s < 0 || s >= n) throw Error(ErrorKind::kInvalidArgument, "sample outside the state space");
    counts[s] += 1;
  }
  const auto total = static_cast<double>(samples.size());
  EmpiricalCheck out;
  out.degrees_of_freedom = n - 1;
  bool impossible = false;
  for (int x = 0; x < n; ++x) {
    const double expected = pi[x].get_d();
    out.total_variation += std::abs(counts[x] / total - expected) / 2;
    if (expected > 0) {
      const double diff = counts[x] - expected * total;
      out.chi_square += diff * diff / (expected * total);
    } else if (counts[x] > 0) {
      impossible = true;
    }
  }
  if (impossible) {
    out.chi_square = std::numeric_limits<double>::infinity();
    out.p_value = 0;
  } else if (out.degrees_of_freedom > 0) {
    const boost::math::chi_squared dist(out.degrees_of_freedom);
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.chi_square));
  }
  return out;
}

}  // namespace monocone
