#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the correlation or DS-SS implementations it is used to check.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

namespace chaoscode::oracle {

inline int to_bipolar(std::uint8_t bit) { return bit ? -1 : 1; }

/// O(N^2) periodic correlation chip sums, lag 0..N-1.
inline std::vector<std::int64_t> periodic_sums(const std::vector<std::uint8_t>& a,
                                               const std::vector<std::uint8_t>& b) {
  const std::size_t n = a.size();
  std::vector<std::int64_t> out(n, 0);
  for (std::size_t lag = 0; lag < n; ++lag) {
    for (std::size_t k = 0; k < n; ++k) {
      out[lag] += to_bipolar(a[k]) * to_bipolar(b[(k + lag) % n]);
    }
  }
  return out;
}

/// O(N^2) zero-padded correlation chip sums, lag -(N-1)..N-1.
inline std::vector<std::int64_t> aperiodic_sums(const std::vector<std::uint8_t>& a,
                                                const std::vector<std::uint8_t>& b) {
  const auto n = static_cast<long>(a.size());
  std::vector<std::int64_t> out;
  for (long lag = -(n - 1); lag <= n - 1; ++lag) {
    std::int64_t acc = 0;
    for (long k = 0; k < n; ++k) {
      const long j = k + lag;
      if (j >= 0 && j < n) acc += to_bipolar(a[k]) * to_bipolar(b[j]);
    }
    out.push_back(acc);
  }
  return out;
}

/// Set of every cyclic m-bit window of a sequence, as integers (first bit MSB).
inline std::multiset<unsigned> cyclic_windows(const std::vector<std::uint8_t>& bits,
                                              unsigned m) {
  std::multiset<unsigned> out;
  const std::size_t n = bits.size();
  for (std::size_t k = 0; k < n; ++k) {
    unsigned w = 0;
    for (unsigned i = 0; i < m; ++i) w = (w << 1) | bits[(k + i) % n];
    out.insert(w);
  }
  return out;
}

/// Standard normal upper tail.
inline double q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace chaoscode::oracle
