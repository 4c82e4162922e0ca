#pragma once

// Shared generators and comparators for the unit suites.

#include <cstdint>
#include <random>

#include "zpframe/signal.hpp"

namespace test_helpers {

inline zpframe::Signal random_signal(std::int64_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  zpframe::Signal x = zpframe::Signal::zeros(p);
  for (auto& v : x.values) v = zpframe::cd{gauss(rng), gauss(rng)};
  return x;
}

inline zpframe::Signal unit_random_signal(std::int64_t p, std::uint64_t seed) {
  zpframe::Signal x = random_signal(p, seed);
  const double norm = zpframe::l2_norm(x);
  for (auto& v : x.values) v /= norm;
  return x;
}

inline double max_abs_diff(const zpframe::Signal& a, const zpframe::Signal& b) {
  double m = 0.0;
  for (std::int64_t k = 0; k < a.p(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline std::vector<std::int64_t> divisors_of(std::int64_t n) {
  std::vector<std::int64_t> divs;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) divs.push_back(d);
  }
  return divs;
}

}  // namespace test_helpers
