#pragma once

// Brute-force reference implementations used to verify the closed forms.
// Nothing here calls the DFT or any frame_core routine: energies come from
// direct inner products, operators from entrywise outer products, spectra
// from plane rotations, rank from row reduction. Agreement with the library
// is therefore evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zpframe/frame.hpp"
#include "zpframe/numtheory.hpp"
#include "zpframe/signal.hpp"

namespace zpframe::oracle {

/// Dense Hermitian matrix, row-major.
struct DenseHermitian {
  std::size_t n = 0;
  std::vector<cd> entries;

  static DenseHermitian zeros(std::size_t n) {
    DenseHermitian h;
    h.n = n;
    h.entries.assign(n * n, cd{0.0, 0.0});
    return h;
  }

  cd& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  const cd& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

  double max_abs() const {
    double m = 0.0;
    for (const cd& v : entries) m = std::max(m, std::abs(v));
    return m;
  }

  double max_hermitian_defect() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
      }
    }
    return m;
  }
};

/// S = sum_j v_j v_j^* assembled entrywise from the system vectors.
inline DenseHermitian assemble_frame_operator(const WaveletSystem& system) {
  const std::size_t p = static_cast<std::size_t>(system.ctx.p);
  DenseHermitian s = DenseHermitian::zeros(p);
  for (std::size_t j = 0; j < system.size(); ++j) {
    const Signal v = system.vector_at(j);
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t c = 0; c < p; ++c) {
        s.at(r, c) += v.values[r] * std::conj(v.values[c]);
      }
    }
  }
  return s;
}

/// Smallest and largest eigenvalue of a Hermitian matrix by cyclic complex
/// Jacobi rotations, sweeping until the off-diagonal Frobenius mass falls
/// below 1e-12 times the Frobenius norm of the input. Works on a private
/// copy. Rotations handle clustered eigenvalues, which matters because
/// tight frames produce exactly degenerate spectra.
inline std::pair<double, double> hermitian_extremal_eigenvalues(DenseHermitian h) {
  const std::size_t n = h.n;
  if (n == 0) throw std::invalid_argument("hermitian_extremal_eigenvalues: empty matrix");
  if (h.max_hermitian_defect() > 1e-12 * std::max(1.0, h.max_abs())) {
    throw std::invalid_argument("hermitian_extremal_eigenvalues: input is not Hermitian");
  }

  double frob = 0.0;
  for (const cd& v : h.entries) frob += std::norm(v);
  frob = std::sqrt(frob);
  const double target = 1e-12 * frob;

  auto off_diagonal_norm = [&]() {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) acc += std::norm(h.at(i, j));
      }
    }
    return std::sqrt(acc);
  };

  const int max_sweeps = 100;
  int sweep = 0;
  while (off_diagonal_norm() > target) {
    if (++sweep > max_sweeps) {
      throw std::logic_error("hermitian_extremal_eigenvalues: did not converge");
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const cd g = h.at(i, j);
        const double r = std::abs(g);
        if (r <= 1e-300) continue;

        // Phase-align column j so the pivot becomes real, then rotate.
        const cd phase = g / r;  // e^{i*phi}
        const double alpha = h.at(i, i).real();
        const double beta = h.at(j, j).real();
        const double tau_rot = (beta - alpha) / (2.0 * r);
        const double t = (tau_rot >= 0.0 ? -1.0 : 1.0) /
                         (std::abs(tau_rot) + std::sqrt(1.0 + tau_rot * tau_rot));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // U restricted to the (i, j) plane:
        //   U_ii = c, U_ij = -s, U_ji = conj(phase)*s, U_jj = conj(phase)*c.
        const cd u_ji = std::conj(phase) * s;
        const cd u_jj = std::conj(phase) * c;

        // H <- H * U on columns i, j.
        for (std::size_t k = 0; k < n; ++k) {
          const cd hki = h.at(k, i);
          const cd hkj = h.at(k, j);
          h.at(k, i) = hki * c + hkj * u_ji;
          h.at(k, j) = hki * (-s) + hkj * u_jj;
        }
        // H <- U^* H on rows i, j.
        for (std::size_t k = 0; k < n; ++k) {
          const cd hik = h.at(i, k);
          const cd hjk = h.at(j, k);
          h.at(i, k) = c * hik + std::conj(u_ji) * hjk;
          h.at(j, k) = -s * hik + std::conj(u_jj) * hjk;
        }
      }
    }
  }

  double lo = h.at(0, 0).real();
  double hi = lo;
  for (std::size_t i = 1; i < n; ++i) {
    lo = std::min(lo, h.at(i, i).real());
    hi = std::max(hi, h.at(i, i).real());
  }
  return {lo, hi};
}

/// Numerical rank decision from row reduction with column pivoting; keeps
/// the pivot magnitudes so a harness can refuse to call near-threshold
/// verdicts.
struct RankDecision {
  int rank = 0;
  double pivot_tolerance = 0.0;
  double min_accepted_pivot = 0.0;  // 0 when rank == 0
  double max_rejected_pivot = 0.0;  // largest remaining entry after stopping
};

inline RankDecision span_rank_detailed(const std::vector<Signal>& vectors,
                                       double pivot_tolerance) {
  if (vectors.empty()) throw std::invalid_argument("span_rank: empty vector list");
  const std::size_t p = vectors.front().values.size();
  for (const Signal& v : vectors) {
    if (v.values.size() != p) throw std::invalid_argument("span_rank: mixed lengths");
  }
  const std::size_t rows = vectors.size();
  std::vector<cd> a(rows * p);
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy(vectors[r].values.begin(), vectors[r].values.end(), a.begin() + r * p);
  }
  auto at = [&](std::size_t r, std::size_t c) -> cd& { return a[r * p + c]; };

  if (pivot_tolerance <= 0.0) {
    double max_col_norm = 0.0;
    for (std::size_t c = 0; c < p; ++c) {
      double acc = 0.0;
      for (std::size_t r = 0; r < rows; ++r) acc += std::norm(at(r, c));
      max_col_norm = std::max(max_col_norm, std::sqrt(acc));
    }
    pivot_tolerance = 1e-8 * max_col_norm;
  }

  std::vector<bool> row_used(rows, false), col_used(p, false);
  RankDecision decision;
  decision.pivot_tolerance = pivot_tolerance;
  decision.min_accepted_pivot = std::numeric_limits<double>::infinity();

  for (std::size_t step = 0; step < std::min(rows, p); ++step) {
    // Column with the largest remaining norm, then its largest entry.
    std::size_t best_col = p;
    double best_col_norm = -1.0;
    for (std::size_t c = 0; c < p; ++c) {
      if (col_used[c]) continue;
      double acc = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        if (!row_used[r]) acc += std::norm(at(r, c));
      }
      if (acc > best_col_norm) {
        best_col_norm = acc;
        best_col = c;
      }
    }
    std::size_t best_row = rows;
    double best_abs = -1.0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (row_used[r]) continue;
      const double v = std::abs(at(r, best_col));
      if (v > best_abs) {
        best_abs = v;
        best_row = r;
      }
    }
    if (best_abs <= pivot_tolerance) {
      decision.max_rejected_pivot = std::max(best_abs, 0.0);
      break;
    }
    decision.rank += 1;
    decision.min_accepted_pivot = std::min(decision.min_accepted_pivot, best_abs);
    row_used[best_row] = true;
    col_used[best_col] = true;
    const cd pivot = at(best_row, best_col);
    for (std::size_t r = 0; r < rows; ++r) {
      if (row_used[r]) continue;
      const cd factor = at(r, best_col) / pivot;
      if (factor == cd{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < p; ++c) {
        if (!col_used[c]) at(r, c) -= factor * at(best_row, c);
      }
      at(r, best_col) = 0.0;
    }
  }
  if (decision.rank == 0) decision.min_accepted_pivot = 0.0;
  return decision;
}

inline int span_rank(const std::vector<Signal>& vectors, double pivot_tolerance) {
  return span_rank_detailed(vectors, pivot_tolerance).rank;
}

/// The double sum sum_{m in M} sum_k |<x, T_k D_m y>|^2 evaluated term by
/// term. Inverses come from a linear scan and inner products are written
/// out longhand; no transform appears anywhere in this path.
inline double naive_energy(const Signal& x, const Signal& y, const SubgroupDecomposition& sub,
                           const PrimeContext& ctx) {
  require_same_p(x, y, "naive_energy");
  const int64_t p = ctx.p;
  double acc = 0.0;
  for (int64_t m : sub.elements) {
    int64_t m_inv = 0;
    for (int64_t c = 1; c < p; ++c) {
      if (m * c % p == 1) {
        m_inv = c;
        break;
      }
    }
    for (int64_t k = 0; k < p; ++k) {
      cd ip = 0.0;
      for (int64_t s = 0; s < p; ++s) {
        const int64_t shifted = (s - k + p) % p;
        ip += x[s] * std::conj(y[m_inv * shifted % p]);
      }
      acc += std::norm(ip);
    }
  }
  return acc;
}

}  // namespace zpframe::oracle
