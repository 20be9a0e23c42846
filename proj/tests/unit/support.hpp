#pragma once

#include <random>
#include <vector>

#include "monocone/poset.hpp"

namespace monocone::testing {

// Brute force over all n^n self-maps; the reference for increasing-map
// enumeration.
inline std::vector<IncreasingMap> brute_force_maps(const Poset& p) {
  const int n = p.size();
  std::vector<IncreasingMap> out;
  std::vector<int> image(n, 0);
  while (true) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      for (int y = 0; y < n && ok; ++y) {
        if (p.leq(x, y) && !p.leq(image[x], image[y])) ok = false;
      }
    }
    if (ok) {
      IncreasingMap f;
      f.n = static_cast<std::uint8_t>(n);
      for (int x = 0; x < n; ++x) f.image[x] = static_cast<std::uint8_t>(image[x]);
      out.push_back(f);
    }
    int i = 0;
    while (i < n && ++image[i] == n) image[i++] = 0;
    if (i == n) return out;
  }
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

}  // namespace monocone::testing
