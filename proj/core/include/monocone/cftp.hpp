#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "monocone/monotonicity.hpp"

namespace monocone {

/// A Poisson clock: when it rings every state x jumps to map[x].
struct Clock {
  Rational rate;
  std::vector<int> map;
};

enum class ClockKind { kProduct, kMap, kCustom };

/// A random dynamical system with independent increments realizing a
/// generator: independent Poisson clocks, each carrying a self-map.
class RdsiSpec {
 public:
  /// One clock per (x, y) with rate L_{x,y}, moving x to y only.
  static RdsiSpec product(const Generator& l);
  /// One clock per map with rate Lambda(f). Throws InvalidArgument unless
  /// the weights reconstruct l.
  static RdsiSpec maps(const Generator& l, const LambdaWeights& weights);
  /// Arbitrary clocks. Throws InvalidArgument unless they produce l's rates.
  static RdsiSpec custom(const Generator& l, std::vector<Clock> clocks);

  ClockKind kind() const { return kind_; }
  const Generator& generator() const { return generator_; }
  const std::vector<Clock>& clocks() const { return clocks_; }
  /// Every clock map is increasing.
  bool monotone() const;

 private:
  RdsiSpec(ClockKind kind, Generator l, std::vector<Clock> clocks);

  ClockKind kind_;
  Generator generator_;
  std::vector<Clock> clocks_;
};

struct Event {
  double time = 0;
  int clock = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Events of every clock in [from, to), ordered by time and then clock id.
/// Time is cut into unit blocks [j, j+1); block j of clock c is drawn from
/// its own stream keyed by (seed, c, j), so any window is reproducible and
/// overlapping windows see the same events.
std::vector<Event> events_in(const RdsiSpec& spec, std::uint64_t seed, double from, double to);

/// phi(horizon) applied to every state, using the events in [0, horizon).
std::vector<int> simulate_forward(const RdsiSpec& spec, double horizon, std::uint64_t seed);

/// Same, over an arbitrary window.
std::vector<int> simulate_window(const RdsiSpec& spec, double from, double to,
                                 std::uint64_t seed);

enum class Tracking { kFullState, kExtremesOnly };
enum class TrackingRequest { kAuto, kFullState, kExtremesOnly };

struct Coalesced {
  int state = 0;
  /// t such that the composition over [-t, 0] was constant.
  double depth = 0;
  std::size_t events = 0;
};

struct Timeout {
  double max_depth = 0;
};

struct CftpResult {
  std::variant<Coalesced, Timeout> outcome;
  Tracking tracked = Tracking::kFullState;
};

inline constexpr double kDefaultMaxDepth = 65536.0;

struct CftpOptions {
  double max_depth = kDefaultMaxDepth;
  TrackingRequest tracking = TrackingRequest::kAuto;
  /// Called after every applied event with the tracked start states and
  /// their current images.
  std::function<void(const std::vector<int>& starts, const std::vector<int>& images)> observer;
};

/// Coupling from the past with depths 1, 2, 4, ... . ExtremesOnly tracking
/// (auto) needs monotone clocks and a connected poset; otherwise every
/// state is tracked. Forcing ExtremesOnly on non-monotone clocks throws
/// InvalidArgument.
CftpResult cftp_sample(const RdsiSpec& spec, std::uint64_t seed, const CftpOptions& options = {});

/// Exact pi with pi L = 0 and sum 1. Throws NotIrreducible with the
/// communicating classes.
RationalVector stationary_distribution(const Generator& l);

struct EmpiricalCheck {
  double total_variation = 0;
  double chi_square = 0;
  int degrees_of_freedom = 0;
  double p_value = 1;
};

/// Needs at least 1000 samples.
EmpiricalCheck empirical_check(const std::vector<int>& samples, const RationalVector& pi);

}  // namespace monocone
