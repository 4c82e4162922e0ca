#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpframe/group.hpp"
#include "zpframe/numtheory.hpp"
#include "zpframe/signal.hpp"

namespace zpframe {

/// Raised when a frame-only operation is asked of a non-frame system.
struct NotAFrameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when two routes that must agree (characterization vs. spectrum,
/// reconstruction vs. identity) disagree beyond tolerance.
struct InconsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

/// The wavelet system W(y, Delta) = { T_k D_m y : (m, k) in Delta }.
/// Vectors are generated on demand from the window; nothing is cached, so
/// the type stays a plain immutable value.
struct WaveletSystem {
  PrimeContext ctx;
  Signal window;
  IndexSet index_set;

  std::size_t size() const { return index_set.size(); }

  Signal vector_at(std::size_t j) const { return act(index_set.elements[j], window, ctx); }

  std::vector<Signal> vectors() const {
    std::vector<Signal> out;
    out.reserve(size());
    for (std::size_t j = 0; j < size(); ++j) out.push_back(vector_at(j));
    return out;
  }
};

inline WaveletSystem wavelet_system(const PrimeContext& ctx, const Signal& window,
                                    const IndexSet& index_set) {
  if (window.p() != ctx.p) throw std::invalid_argument("wavelet_system: window length != p");
  return {ctx, window, index_set};
}

inline WaveletSystem wavelet_system(const PrimeContext& ctx, const Signal& window,
                                    const SubgroupDecomposition& sub) {
  return wavelet_system(ctx, window, enumerate_index_set(ctx, sub));
}

/// Wavelet coefficients c(m, k) = <x, T_k D_m y> laid out in index order:
/// values[i_m * p + i_k] for subgroup products, flat index-set order otherwise.
struct CoefficientGrid {
  std::size_t num_rows = 0;  // dilation count for subgroup products
  std::size_t num_cols = 0;  // p
  std::vector<cd> values;

  const cd& at(std::size_t row, std::size_t col) const { return values[row * num_cols + col]; }

  double total_energy() const {
    double acc = 0.0;
    for (const cd& c : values) acc += std::norm(c);
    return acc;
  }
};

namespace detail {
inline CoefficientGrid empty_grid(const WaveletSystem& system) {
  CoefficientGrid grid;
  const std::size_t p = static_cast<std::size_t>(system.ctx.p);
  if (system.index_set.kind == IndexSetKind::Custom) {
    grid.num_rows = 1;
    grid.num_cols = system.size();
  } else {
    grid.num_rows = system.size() / p;
    grid.num_cols = p;
  }
  grid.values.resize(system.size());
  return grid;
}
}  // namespace detail

/// Analysis coefficients by direct inner products against each system vector.
inline CoefficientGrid coefficients_direct(const Signal& x, const WaveletSystem& system) {
  require_same_p(x, system.window, "coefficients_direct");
  CoefficientGrid grid = detail::empty_grid(system);
  for (std::size_t j = 0; j < system.size(); ++j) {
    grid.values[j] = inner_product(x, system.vector_at(j));
  }
  return grid;
}

/// Analysis coefficients through the Fourier transform: for each dilation m,
/// all p translates at once via
///   c(m, k) = sqrt(p) * F_p( xhat .* conj(yhat(m * .)) )(p - k),
/// using that the transform of D_m y at l is yhat(m*l).
inline CoefficientGrid coefficients_fourier(const Signal& x, const WaveletSystem& system) {
  require_same_p(x, system.window, "coefficients_fourier");
  if (system.index_set.kind == IndexSetKind::Custom) {
    throw std::invalid_argument("coefficients_fourier: requires an M x Z_p index set");
  }
  const PrimeContext& ctx = system.ctx;
  const int64_t p = ctx.p;
  const Signal xhat = dft(x, ctx);
  const Signal yhat = dft(system.window, ctx);
  const double sqrt_p = std::sqrt(static_cast<double>(p));

  CoefficientGrid grid = detail::empty_grid(system);
  const auto& dilations = system.index_set.sub.elements;
  for (std::size_t row = 0; row < dilations.size(); ++row) {
    const int64_t m = dilations[row];
    Signal z = Signal::zeros(p);
    for (int64_t l = 0; l < p; ++l) z[l] = xhat[l] * std::conj(yhat[m * l % p]);
    const Signal w = dft(z, ctx);
    for (int64_t k = 0; k < p; ++k) {
      grid.values[row * static_cast<std::size_t>(p) + static_cast<std::size_t>(k)] =
          sqrt_p * w[(p - k) % p];
    }
  }
  return grid;
}

/// Coefficient energy via the coset form: with H_t = eps^t * M,
///   sum_{m in M} sum_k |<x, T_k D_m y>|^2
///     = p * ( M |xhat(0)|^2 |yhat(0)|^2
///             + sum_t (sum_{l in H_t} |xhat(l)|^2)(sum_{w in H_t} |yhat(w)|^2) ).
inline double energy_coset_formula(const Signal& x, const Signal& y,
                                   const SubgroupDecomposition& sub, const PrimeContext& ctx) {
  require_same_p(x, y, "energy_coset_formula");
  const Signal xhat = dft(x, ctx);
  const Signal yhat = dft(y, ctx);
  double acc = static_cast<double>(sub.order_M) * std::norm(xhat[0]) * std::norm(yhat[0]);
  for (const auto& coset : sub.cosets) {
    double sx = 0.0, sy = 0.0;
    for (int64_t w : coset) {
      sx += std::norm(xhat[w]);
      sy += std::norm(yhat[w]);
    }
    acc += sx * sy;
  }
  return static_cast<double>(ctx.p) * acc;
}

/// Spectral mass of the window over the dilation orbit of l: for l outside
/// M this is sum_{m in M} |yhat(m*l)|^2, which equals the |yhat|^2 mass of
/// the coset H_t containing l.
inline double gamma(const Signal& y, const SubgroupDecomposition& sub, int64_t l,
                    const PrimeContext& ctx) {
  const int64_t p = ctx.p;
  const int64_t lr = mod_p(l, p);
  if (lr == 0) throw std::invalid_argument("gamma: l must lie in U_p - M, got l = 0 mod p");
  for (int64_t m : sub.elements) {
    if (m == lr) throw std::invalid_argument("gamma: l must lie outside the subgroup M");
  }
  const Signal yhat = dft(y, ctx);
  double acc = 0.0;
  for (int64_t m : sub.elements) acc += std::norm(yhat[m * lr % p]);
  return acc;
}

/// Coefficient energy via the dilation-orbit form:
///   p * ( M |yhat(0)|^2 |xhat(0)|^2
///         + (sum_{m in M} |yhat(m)|^2)(sum_{l in M} |xhat(l)|^2)
///         + sum_{l in U_p - M} gamma_l(y, M) |xhat(l)|^2 ).
inline double energy_analytic_formula(const Signal& x, const Signal& y,
                                      const SubgroupDecomposition& sub, const PrimeContext& ctx) {
  require_same_p(x, y, "energy_analytic_formula");
  const int64_t p = ctx.p;
  const Signal xhat = dft(x, ctx);
  const Signal yhat = dft(y, ctx);

  std::vector<bool> in_subgroup(static_cast<std::size_t>(p), false);
  for (int64_t m : sub.elements) in_subgroup[static_cast<std::size_t>(m)] = true;

  double mass_y_on_M = 0.0, mass_x_on_M = 0.0;
  for (int64_t m : sub.elements) {
    mass_y_on_M += std::norm(yhat[m]);
    mass_x_on_M += std::norm(xhat[m]);
  }

  double acc = static_cast<double>(sub.order_M) * std::norm(yhat[0]) * std::norm(xhat[0]);
  acc += mass_y_on_M * mass_x_on_M;
  for (int64_t l = 1; l < p; ++l) {
    if (in_subgroup[static_cast<std::size_t>(l)]) continue;
    double gamma_l = 0.0;
    for (int64_t m : sub.elements) gamma_l += std::norm(yhat[m * l % p]);
    acc += gamma_l * std::norm(xhat[l]);
  }
  return static_cast<double>(p) * acc;
}

/// Eigenvalues of the frame operator of W(y, M x Z_p), which the DFT
/// diagonalizes: lambda(0) = p*M*|yhat(0)|^2 on the DC line and
/// lambda(l) = p * sum_{w in H_t} |yhat(w)|^2 for every l in H_t.
struct FrameSpectrum {
  double dc = 0.0;
  std::vector<double> per_coset;

  double min_eigenvalue() const {
    double m = dc;
    for (double v : per_coset) m = std::min(m, v);
    return m;
  }
  double max_eigenvalue() const {
    double m = dc;
    for (double v : per_coset) m = std::max(m, v);
    return m;
  }
};

inline FrameSpectrum frame_spectrum(const Signal& y, const SubgroupDecomposition& sub,
                                    const PrimeContext& ctx) {
  const Signal yhat = dft(y, ctx);
  const double p = static_cast<double>(ctx.p);
  FrameSpectrum spectrum;
  spectrum.dc = p * static_cast<double>(sub.order_M) * std::norm(yhat[0]);
  spectrum.per_coset.reserve(sub.cosets.size());
  for (const auto& coset : sub.cosets) {
    double mass = 0.0;
    for (int64_t w : coset) mass += std::norm(yhat[w]);
    spectrum.per_coset.push_back(p * mass);
  }
  return spectrum;
}

/// The a x M matrix with entry (t, j) = yhat(eps^(j*a+t)); row t is yhat
/// restricted to the coset H_t in generator-power order. The system is a
/// frame iff yhat(0) != 0 and every row holds a nonzero entry.
struct YMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cd> entries;

  const cd& at(std::size_t t, std::size_t j) const { return entries[t * cols + j]; }

  double row_max_abs(std::size_t t) const {
    double m = 0.0;
    for (std::size_t j = 0; j < cols; ++j) m = std::max(m, std::abs(at(t, j)));
    return m;
  }
};

inline YMatrix build_y_matrix(const Signal& y, const SubgroupDecomposition& sub,
                              const PrimeContext& ctx) {
  const Signal yhat = dft(y, ctx);
  YMatrix mat;
  mat.rows = sub.cosets.size();
  mat.cols = static_cast<std::size_t>(sub.order_M);
  mat.entries.reserve(mat.rows * mat.cols);
  for (const auto& coset : sub.cosets) {
    for (int64_t w : coset) mat.entries.push_back(yhat[w]);
  }
  return mat;
}

inline void require_nonzero_window(const Signal& y, double tau, const char* where) {
  if (y.p() == 0 || linf_norm(y) <= tau) {
    throw std::invalid_argument(std::string(where) + ": non-zero window signal required");
  }
}

/// Everything the library can say about W(y, M x Z_p) in one record.
struct FrameReport {
  int64_t p = 0;
  int64_t M = 0;
  int64_t a = 0;
  bool is_frame = false;
  bool is_tight = false;
  bool dc_nonzero = false;
  std::vector<bool> y_matrix_row_nonzero;
  double lower_bound_A = 0.0;       // min eigenvalue (optimal lower bound)
  double upper_bound_B = 0.0;       // max eigenvalue (optimal upper bound)
  double paper_lower_bound = 0.0;   // min{ M |sum_k y(k)|^2, p * theta }
  std::optional<double> alpha_tight;
  double redundancy = 0.0;          // |Delta| / p = M
  double tolerance = 0.0;
  FrameSpectrum spectrum;
};

// Relative flatness tolerance used by both tightness routes.
inline constexpr double tight_rel_tolerance = 1e-8;

/// Full report: verdicts, spectrum, optimal and constructive bounds.
/// Tightness is decided twice (flat spectrum; M|sum y|^2 equal to every
/// coset mass times p) and the two routes must agree.
inline FrameReport frame_report(const Signal& y, const SubgroupDecomposition& sub,
                                const PrimeContext& ctx, double tau) {
  require_nonzero_window(y, tau, "frame_report");
  if (tau < 0) throw std::invalid_argument("frame_report: tau must be >= 0");

  const int64_t p = ctx.p;
  const Signal yhat = dft(y, ctx);

  FrameReport report;
  report.p = p;
  report.M = sub.order_M;
  report.a = sub.index_a;
  report.tolerance = tau;
  report.redundancy = static_cast<double>(sub.order_M);
  report.spectrum = frame_spectrum(y, sub, ctx);

  report.dc_nonzero = std::abs(yhat[0]) > tau;
  report.y_matrix_row_nonzero.reserve(sub.cosets.size());
  bool all_rows = true;
  for (const auto& coset : sub.cosets) {
    double row_max = 0.0;
    for (int64_t w : coset) row_max = std::max(row_max, std::abs(yhat[w]));
    const bool nonzero = row_max > tau;
    report.y_matrix_row_nonzero.push_back(nonzero);
    all_rows = all_rows && nonzero;
  }
  report.is_frame = report.dc_nonzero && all_rows;

  report.lower_bound_A = report.spectrum.min_eigenvalue();
  report.upper_bound_B = report.spectrum.max_eigenvalue();

  // Constructive bound A = min{ M |sum_k y(k)|^2, p * theta } with
  // theta = min_t sum_{w in H_t} |yhat(w)|^2.
  cd window_sum = 0.0;
  for (const cd& v : y.values) window_sum += v;
  double theta = std::numeric_limits<double>::infinity();
  for (const auto& coset : sub.cosets) {
    double mass = 0.0;
    for (int64_t w : coset) mass += std::norm(yhat[w]);
    theta = std::min(theta, mass);
  }
  report.paper_lower_bound = std::min(static_cast<double>(sub.order_M) * std::norm(window_sum),
                                      static_cast<double>(p) * theta);

  // Tightness, route 1: spectral flatness.
  const double max_eig = report.upper_bound_B;
  const bool flat = max_eig > 0.0 && (max_eig - report.lower_bound_A) / max_eig < tight_rel_tolerance;
  const bool tight_spectral = report.dc_nonzero && flat;

  // Tightness, route 2: M |sum_k y(k)|^2 equals p * coset mass for every t.
  const double lhs = static_cast<double>(sub.order_M) * std::norm(window_sum);
  bool tight_constructive = report.dc_nonzero;
  for (double lambda_t : report.spectrum.per_coset) {
    const double scale = std::max(std::abs(lhs), std::abs(lambda_t));
    if (std::abs(lhs - lambda_t) > tight_rel_tolerance * scale) {
      tight_constructive = false;
      break;
    }
  }
  if (tight_spectral != tight_constructive) {
    throw InconsistencyError("frame_report: tightness routes disagree");
  }
  report.is_tight = tight_spectral;
  if (report.is_tight) {
    report.alpha_tight = static_cast<double>(p * sub.order_M) * std::norm(yhat[0]);
  }
  return report;
}

inline FrameReport frame_report(const Signal& y, const SubgroupDecomposition& sub,
                                const PrimeContext& ctx) {
  return frame_report(y, sub, ctx, default_tolerance(y));
}

/// Frame characterization: yhat(0) != 0 and every coset H_t meets the
/// support of yhat.
inline bool is_frame(const Signal& y, const SubgroupDecomposition& sub, const PrimeContext& ctx,
                     double tau) {
  require_nonzero_window(y, tau, "is_frame");
  const Signal yhat = dft(y, ctx);
  if (std::abs(yhat[0]) <= tau) return false;
  for (const auto& coset : sub.cosets) {
    double row_max = 0.0;
    for (int64_t w : coset) row_max = std::max(row_max, std::abs(yhat[w]));
    if (row_max <= tau) return false;
  }
  return true;
}

inline bool is_frame(const Signal& y, const SubgroupDecomposition& sub, const PrimeContext& ctx) {
  return is_frame(y, sub, ctx, default_tolerance(y));
}

struct FullSystemVerdict {
  bool is_frame = false;
  int64_t redundancy = 0;  // p - 1 for the full system
};

/// Full-system criterion: yhat(0) != 0 and |supp(yhat)| >= 2.
inline FullSystemVerdict is_full_system_frame(const Signal& y, const PrimeContext& ctx,
                                              double tau) {
  require_nonzero_window(y, tau, "is_full_system_frame");
  const Signal yhat = dft(y, ctx);
  FullSystemVerdict verdict;
  verdict.redundancy = ctx.p - 1;
  verdict.is_frame = std::abs(yhat[0]) > tau && support_size(yhat, tau) >= 2;
  return verdict;
}

inline FullSystemVerdict is_full_system_frame(const Signal& y, const PrimeContext& ctx) {
  return is_full_system_frame(y, ctx, default_tolerance(y));
}

struct TightVerdict {
  bool is_tight = false;
  double alpha = 0.0;  // frame bound p*M*|yhat(0)|^2, meaningful when tight
};

inline TightVerdict is_tight(const Signal& y, const SubgroupDecomposition& sub,
                             const PrimeContext& ctx, double tau) {
  const FrameReport report = frame_report(y, sub, ctx, tau);
  TightVerdict verdict;
  verdict.is_tight = report.is_tight;
  verdict.alpha = report.alpha_tight.value_or(0.0);
  return verdict;
}

inline TightVerdict is_tight(const Signal& y, const SubgroupDecomposition& sub,
                             const PrimeContext& ctx) {
  return is_tight(y, sub, ctx, default_tolerance(y));
}

/// S x = sum_j <x, v_j> v_j over all system vectors. Accepts any index set.
inline Signal frame_operator_apply(const Signal& x, const WaveletSystem& system) {
  require_same_p(x, system.window, "frame_operator_apply");
  Signal out = Signal::zeros(x.p());
  for (std::size_t j = 0; j < system.size(); ++j) {
    const Signal v = system.vector_at(j);
    const cd c = inner_product(x, v);
    for (std::size_t s = 0; s < out.values.size(); ++s) out.values[s] += c * v.values[s];
  }
  return out;
}

namespace detail {
// lambda(l) lookup for the Fourier-diagonal frame operator of an M x Z_p system.
inline std::vector<double> eigenvalue_by_frequency(const FrameSpectrum& spectrum,
                                                   const SubgroupDecomposition& sub, int64_t p) {
  std::vector<double> lambda(static_cast<std::size_t>(p), 0.0);
  lambda[0] = spectrum.dc;
  for (std::size_t t = 0; t < sub.cosets.size(); ++t) {
    for (int64_t w : sub.cosets[t]) lambda[static_cast<std::size_t>(w)] = spectrum.per_coset[t];
  }
  return lambda;
}

inline Signal inverse_frame_operator_apply(const Signal& x, const std::vector<double>& lambda,
                                           const PrimeContext& ctx) {
  Signal xhat = dft(x, ctx);
  for (std::size_t l = 0; l < xhat.values.size(); ++l) xhat.values[l] /= lambda[l];
  return idft(xhat, ctx);
}
}  // namespace detail

/// Canonical-dual reconstruction sum_j <x, S^{-1} v_j> v_j. S^{-1} is taken
/// in the Fourier domain (divide by the eigenvalue of each frequency's
/// coset); the result must reproduce x, which is verified here against the
/// directly summed synthesis.
inline Signal canonical_dual_and_reconstruct(const Signal& x, const WaveletSystem& system,
                                             double tau, double residual_tol = 1e-10) {
  require_same_p(x, system.window, "canonical_dual_and_reconstruct");
  if (system.index_set.kind == IndexSetKind::Custom) {
    throw std::invalid_argument("canonical_dual_and_reconstruct: requires an M x Z_p index set");
  }
  const PrimeContext& ctx = system.ctx;
  const SubgroupDecomposition& sub = system.index_set.sub;

  const FrameSpectrum spectrum = frame_spectrum(system.window, sub, ctx);
  if (spectrum.min_eigenvalue() <= tau) {
    throw NotAFrameError("canonical_dual_and_reconstruct: system is not a frame");
  }
  const auto lambda = detail::eigenvalue_by_frequency(spectrum, sub, ctx.p);

  Signal recon = Signal::zeros(x.p());
  for (std::size_t j = 0; j < system.size(); ++j) {
    const Signal v = system.vector_at(j);
    const Signal dual = detail::inverse_frame_operator_apply(v, lambda, ctx);
    const cd c = inner_product(x, dual);
    for (std::size_t s = 0; s < recon.values.size(); ++s) recon.values[s] += c * v.values[s];
  }

  const double xnorm = l2_norm(x);
  if (xnorm > 0.0) {
    double err = 0.0;
    for (std::size_t s = 0; s < recon.values.size(); ++s) {
      err += std::norm(recon.values[s] - x.values[s]);
    }
    if (std::sqrt(err) / xnorm > residual_tol) {
      throw InconsistencyError("canonical_dual_and_reconstruct: residual exceeds tolerance");
    }
  }
  return recon;
}

inline Signal canonical_dual_and_reconstruct(const Signal& x, const WaveletSystem& system) {
  return canonical_dual_and_reconstruct(x, system, default_tolerance(system.window));
}

}  // namespace zpframe
