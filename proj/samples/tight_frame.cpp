// Build the wavelet system W(y, M x Z_p) for p = 7, M = {1, 2, 4} with a
// delta window and print its frame report. A delta has a flat Fourier
// transform, so the system comes out tight with bound M.

#include <iostream>

#include "zpframe/zpframe.hpp"

int main() {
  using namespace zpframe;

  const auto ctx = PrimeContext::make(7);
  const auto sub = subgroup_of_order(ctx, 3);
  const Signal window = Signal::delta(7, 0);

  const FrameReport report = frame_report(window, sub, ctx);
  std::cout << report_to_json(report).dump(2) << "\n";

  const auto system = wavelet_system(ctx, window, sub);
  const Signal x = Signal::delta(7, 2);
  const Signal recon = canonical_dual_and_reconstruct(x, system);
  std::cout << "reconstruction of delta_2, entry 2: " << recon[2] << "\n";
  return 0;
}
