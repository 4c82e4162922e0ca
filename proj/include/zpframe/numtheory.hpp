#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zpframe {

using std::int64_t;

/// Largest modulus accepted anywhere in the library. Keeping p below 2^31
/// means a product of two reduced residues always fits in int64_t.
inline constexpr int64_t max_modulus = (int64_t{1} << 31) - 1;

/// Canonical representative of a mod p in {0, ..., p-1}; accepts negatives.
inline int64_t mod_p(int64_t a, int64_t p) {
  int64_t r = a % p;
  return r < 0 ? r + p : r;
}

inline int64_t mul_mod(int64_t a, int64_t b, int64_t p) {
  return mod_p(a, p) * mod_p(b, p) % p;
}

/// Square-and-multiply b^e mod p, e >= 0.
inline int64_t pow_mod(int64_t base, int64_t exp, int64_t p) {
  if (exp < 0) throw std::invalid_argument("pow_mod: negative exponent");
  int64_t result = 1 % p;
  int64_t b = mod_p(base, p);
  while (exp > 0) {
    if (exp & 1) result = result * b % p;
    b = b * b % p;
    exp >>= 1;
  }
  return result;
}

/// Deterministic trial-division primality test. Desk-scale inputs only.
inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Distinct prime factors of n >= 1 by trial division, ascending.
inline std::vector<int64_t> distinct_prime_factors(int64_t n) {
  if (n < 1) throw std::invalid_argument("distinct_prime_factors: n must be >= 1");
  std::vector<int64_t> factors;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

/// Table of the p-th roots of unity: table[r] = exp(-2*pi*i*r/p).
/// Each entry is evaluated from the angle 2*pi*r/p directly (index
/// arithmetic, not repeated multiplication), so phases do not drift.
inline std::vector<std::complex<double>> root_of_unity_table(int64_t p) {
  const long double two_pi = 6.283185307179586476925286766559L;
  std::vector<std::complex<double>> table(static_cast<std::size_t>(p));
  for (int64_t r = 0; r < p; ++r) {
    const long double angle = two_pi * static_cast<long double>(r) / static_cast<long double>(p);
    table[static_cast<std::size_t>(r)] = {static_cast<double>(std::cos(angle)),
                                          static_cast<double>(-std::sin(angle))};
  }
  return table;
}

inline int64_t find_primitive_root(int64_t p);

/// A validated prime p together with everything derived from it that the
/// rest of the library needs: the distinct prime factors of p-1, the
/// smallest primitive root of U_p, and the DFT twiddle table.
struct PrimeContext {
  int64_t p = 0;
  std::vector<int64_t> factors_of_p_minus_1;
  int64_t primitive_root = 0;
  std::vector<std::complex<double>> twiddle;  // twiddle[r] = exp(-2*pi*i*r/p)

  static PrimeContext make(int64_t p) {
    if (p < 2 || p > max_modulus) {
      throw std::invalid_argument("PrimeContext: p out of range: " + std::to_string(p));
    }
    if (!is_prime(p)) {
      throw std::invalid_argument("PrimeContext: p is not prime: " + std::to_string(p));
    }
    PrimeContext ctx;
    ctx.p = p;
    ctx.factors_of_p_minus_1 = p == 2 ? std::vector<int64_t>{} : distinct_prime_factors(p - 1);
    ctx.primitive_root = find_primitive_root(p);
    ctx.twiddle = root_of_unity_table(p);
    return ctx;
  }
};

/// Multiplicative inverse m_p of m in U_p, i.e. m_p * m + n * p = 1 for
/// some integer n, found by the extended Euclidean algorithm.
inline int64_t mod_inverse(int64_t m, const PrimeContext& ctx) {
  const int64_t p = ctx.p;
  const int64_t a = mod_p(m, p);
  if (a == 0) throw std::invalid_argument("mod_inverse: 0 has no inverse mod p");
  int64_t old_r = a, r = p;
  int64_t old_s = 1, s = 0;
  while (r != 0) {
    const int64_t q = old_r / r;
    const int64_t tmp_r = old_r - q * r;
    old_r = r;
    r = tmp_r;
    const int64_t tmp_s = old_s - q * s;
    old_s = s;
    s = tmp_s;
  }
  return mod_p(old_s, p);
}

/// Smallest generator of the cyclic group U_p. Scans g = 2, 3, ... and
/// accepts the first g with g^((p-1)/q) != 1 mod p for every prime q | p-1.
/// The smallest root is canonical so downstream coset orderings are
/// deterministic.
inline int64_t find_primitive_root(int64_t p) {
  if (p == 2) return 1;  // U_2 = {1}
  const auto factors = distinct_prime_factors(p - 1);
  for (int64_t g = 2; g < p; ++g) {
    bool generates = true;
    for (int64_t q : factors) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return g;
  }
  throw std::logic_error("find_primitive_root: no generator found (p not prime?)");
}

/// Multiplicative order of m in U_p; always a divisor of p-1.
inline int64_t element_order(int64_t m, const PrimeContext& ctx) {
  const int64_t p = ctx.p;
  if (mod_p(m, p) == 0) throw std::invalid_argument("element_order: m must be nonzero mod p");
  int64_t order = p - 1;
  for (int64_t q : ctx.factors_of_p_minus_1) {
    while (order % q == 0 && pow_mod(m, order / q, p) == 1) order /= q;
  }
  return order;
}

/// The unique multiplicative subgroup of U_p of order M (a divisor of
/// p-1), generated by eps^a with a = (p-1)/M, plus the coset list
/// H_t = eps^t * M for t = 0..a-1. Elements and coset rows are kept in
/// generator-power order; external reports sort the subgroup ascending.
struct SubgroupDecomposition {
  int64_t order_M = 0;
  int64_t index_a = 0;
  int64_t generator = 0;                       // eps^a mod p
  std::vector<int64_t> elements;               // elements[j] = (eps^a)^j
  std::vector<std::vector<int64_t>> cosets;    // cosets[t][j] = eps^(j*a+t)

  std::vector<int64_t> elements_sorted() const {
    std::vector<int64_t> sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
  }
};

inline SubgroupDecomposition subgroup_of_order(const PrimeContext& ctx, int64_t M) {
  const int64_t p = ctx.p;
  if (M < 1 || (p - 1) % M != 0) {
    throw std::invalid_argument("subgroup_of_order: M = " + std::to_string(M) +
                                " does not divide p-1 = " + std::to_string(p - 1));
  }
  SubgroupDecomposition sub;
  sub.order_M = M;
  sub.index_a = (p - 1) / M;
  sub.generator = pow_mod(ctx.primitive_root, sub.index_a, p);
  sub.elements.resize(static_cast<std::size_t>(M));
  int64_t power = 1;
  for (int64_t j = 0; j < M; ++j) {
    sub.elements[static_cast<std::size_t>(j)] = power;
    power = power * sub.generator % p;
  }
  sub.cosets.resize(static_cast<std::size_t>(sub.index_a));
  int64_t eps_t = 1;
  for (int64_t t = 0; t < sub.index_a; ++t) {
    auto& coset = sub.cosets[static_cast<std::size_t>(t)];
    coset.resize(static_cast<std::size_t>(M));
    for (int64_t j = 0; j < M; ++j) {
      coset[static_cast<std::size_t>(j)] = eps_t * sub.elements[static_cast<std::size_t>(j)] % p;
    }
    eps_t = eps_t * ctx.primitive_root % p;
  }
  return sub;
}

}  // namespace zpframe
