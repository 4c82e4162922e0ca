#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpframe/numtheory.hpp"

namespace zpframe {

using cd = std::complex<double>;

/// A dense length-p complex signal indexed by Z_p.
struct Signal {
  std::vector<cd> values;

  Signal() = default;
  explicit Signal(std::vector<cd> v) : values(std::move(v)) {}

  int64_t p() const { return static_cast<int64_t>(values.size()); }
  cd& operator[](int64_t k) { return values[static_cast<std::size_t>(k)]; }
  const cd& operator[](int64_t k) const { return values[static_cast<std::size_t>(k)]; }

  static Signal zeros(int64_t p) { return Signal(std::vector<cd>(static_cast<std::size_t>(p))); }

  static Signal delta(int64_t p, int64_t k) {
    Signal x = zeros(p);
    x[mod_p(k, p)] = 1.0;
    return x;
  }

  static Signal constant(int64_t p, cd c) {
    return Signal(std::vector<cd>(static_cast<std::size_t>(p), c));
  }

  bool finite() const {
    for (const cd& v : values) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
  }
};

inline void require_same_p(const Signal& x, const Signal& y, const char* where) {
  if (x.p() != y.p()) throw std::invalid_argument(std::string(where) + ": length mismatch");
}

/// <x,y> = sum_k x(k) * conj(y(k)); conjugate-linear in the second slot.
inline cd inner_product(const Signal& x, const Signal& y) {
  require_same_p(x, y, "inner_product");
  cd acc = 0.0;
  for (std::size_t k = 0; k < x.values.size(); ++k) acc += x.values[k] * std::conj(y.values[k]);
  return acc;
}

inline double l2_norm(const Signal& x) {
  double acc = 0.0;
  for (const cd& v : x.values) acc += std::norm(v);
  return std::sqrt(acc);
}

inline double linf_norm(const Signal& x) {
  double m = 0.0;
  for (const cd& v : x.values) m = std::max(m, std::abs(v));
  return m;
}

/// Scale-aware default threshold for "this entry is nonzero" decisions.
inline double default_tolerance(const Signal& x) { return 1e-9 * std::max(1.0, linf_norm(x)); }

/// Number of entries with modulus above tau.
inline int64_t support_size(const Signal& x, double tau) {
  if (tau < 0) throw std::invalid_argument("support_size: tau must be >= 0");
  int64_t count = 0;
  for (const cd& v : x.values) {
    if (std::abs(v) > tau) ++count;
  }
  return count;
}

/// Unitary DFT: xhat(l) = p^{-1/2} sum_k x(k) exp(-2*pi*i*l*k/p).
/// Direct O(p^2) summation against the precomputed root table; p is prime,
/// so no radix splitting applies, and desk scale keeps this cheap.
inline Signal dft(const Signal& x, const PrimeContext& ctx) {
  const int64_t p = x.p();
  if (p != ctx.p) throw std::invalid_argument("dft: signal length does not match context");
  Signal out = Signal::zeros(p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  for (int64_t l = 0; l < p; ++l) {
    cd acc = 0.0;
    for (int64_t k = 0; k < p; ++k) acc += x[k] * ctx.twiddle[static_cast<std::size_t>(l * k % p)];
    out[l] = scale * acc;
  }
  return out;
}

/// IDFT: x(k) = p^{-1/2} sum_l xhat(l) exp(+2*pi*i*l*k/p).
inline Signal idft(const Signal& x, const PrimeContext& ctx) {
  const int64_t p = x.p();
  if (p != ctx.p) throw std::invalid_argument("idft: signal length does not match context");
  Signal out = Signal::zeros(p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  for (int64_t k = 0; k < p; ++k) {
    cd acc = 0.0;
    for (int64_t l = 0; l < p; ++l) {
      acc += x[l] * std::conj(ctx.twiddle[static_cast<std::size_t>(l * k % p)]);
    }
    out[k] = scale * acc;
  }
  return out;
}

namespace detail {
// Context-free entry points build a one-off root table; they exist so tests
// and small utilities can transform a bare Signal without a PrimeContext.
inline Signal dft_with_table(const Signal& x, bool inverse) {
  const int64_t p = x.p();
  if (p == 0) throw std::invalid_argument("dft: empty signal");
  const auto table = root_of_unity_table(p);
  Signal out = Signal::zeros(p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  for (int64_t l = 0; l < p; ++l) {
    cd acc = 0.0;
    for (int64_t k = 0; k < p; ++k) {
      const cd w = table[static_cast<std::size_t>(l * k % p)];
      acc += x[k] * (inverse ? std::conj(w) : w);
    }
    out[l] = scale * acc;
  }
  return out;
}
}  // namespace detail

inline Signal dft(const Signal& x) { return detail::dft_with_table(x, false); }
inline Signal idft(const Signal& x) { return detail::dft_with_table(x, true); }

/// Translation T_k: out(s) = x(s - k mod p).
inline Signal translate(const Signal& x, int64_t k) {
  const int64_t p = x.p();
  Signal out = Signal::zeros(p);
  for (int64_t s = 0; s < p; ++s) out[s] = x[mod_p(s - k, p)];
  return out;
}

/// Modulation M_l: out(s) = exp(-2*pi*i*l*s/p) * x(s).
inline Signal modulate(const Signal& x, int64_t l, const PrimeContext& ctx) {
  const int64_t p = x.p();
  if (p != ctx.p) throw std::invalid_argument("modulate: signal length does not match context");
  Signal out = Signal::zeros(p);
  const int64_t lr = mod_p(l, p);
  for (int64_t s = 0; s < p; ++s) out[s] = ctx.twiddle[static_cast<std::size_t>(lr * s % p)] * x[s];
  return out;
}

inline Signal modulate(const Signal& x, int64_t l) {
  const int64_t p = x.p();
  const auto table = root_of_unity_table(p);
  Signal out = Signal::zeros(p);
  const int64_t lr = mod_p(l, p);
  for (int64_t s = 0; s < p; ++s) out[s] = table[static_cast<std::size_t>(lr * s % p)] * x[s];
  return out;
}

/// Cyclic dilation D_m: out(k) = x(m_p * k mod p) with m_p the inverse of m.
inline Signal dilate(const Signal& x, int64_t m, const PrimeContext& ctx) {
  const int64_t p = x.p();
  if (p != ctx.p) throw std::invalid_argument("dilate: signal length does not match context");
  const int64_t m_inv = mod_inverse(m, ctx);  // rejects m = 0 mod p
  Signal out = Signal::zeros(p);
  for (int64_t k = 0; k < p; ++k) out[k] = x[m_inv * k % p];
  return out;
}

}  // namespace zpframe
