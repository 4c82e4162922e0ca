// Compute a wavelet coefficient grid two ways (direct inner products and
// the Fourier route) and print the largest disagreement.

#include <iomanip>
#include <iostream>
#include <random>

#include "zpframe/zpframe.hpp"

int main() {
  using namespace zpframe;

  const auto ctx = PrimeContext::make(11);
  const auto sub = subgroup_of_order(ctx, 5);

  std::mt19937_64 rng(42);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_signal = [&]() {
    Signal s = Signal::zeros(ctx.p);
    for (auto& v : s.values) v = cd{gauss(rng), gauss(rng)};
    return s;
  };

  const Signal window = random_signal();
  const Signal x = random_signal();
  const auto system = wavelet_system(ctx, window, sub);

  const auto direct = coefficients_direct(x, system);
  const auto fourier = coefficients_fourier(x, system);

  double max_dev = 0.0;
  for (std::size_t j = 0; j < direct.values.size(); ++j) {
    max_dev = std::max(max_dev, std::abs(direct.values[j] - fourier.values[j]));
  }
  std::cout << std::setprecision(3) << "grid size " << direct.values.size()
            << ", max |direct - fourier| = " << max_dev << "\n";
  std::cout << "coefficient energy = " << direct.total_energy() << "\n";
  std::cout << "closed-form energy = " << energy_coset_formula(x, window, sub, ctx) << "\n";
  return 0;
}
