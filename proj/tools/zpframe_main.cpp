// zpframe: build and analyze finite wavelet systems over a prime field.
//
// Exit codes: 0 success (for `report`/`dual`: the system is a frame),
// 2 the analysis ran but the system is not a frame, 1 input or usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "zpframe/zpframe.hpp"

namespace {

using zpframe::cd;
using zpframe::PrimeContext;
using zpframe::Signal;
using zpframe::SubgroupDecomposition;
using json = nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_not_a_frame = 2;

struct CommonOptions {
  std::int64_t p = 0;
  std::int64_t order_m = 0;
  bool full = false;
  std::string window_path;
  std::string signal_path;
  double tol = -1.0;  // < 0 means scale-aware default from the window
  std::string format = "json";
  bool verify = false;
  std::uint64_t seed = 0;
  std::string out_path;
};

void add_group_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--p", opt.p, "prime modulus")->required();
  auto* order = cmd->add_option("--order-m", opt.order_m, "subgroup order M (divisor of p-1)");
  auto* full = cmd->add_flag("--full", opt.full, "use the full index set W_p (M = p-1)");
  order->excludes(full);
  full->excludes(order);
}

void add_signal_options(CLI::App* cmd, CommonOptions& opt, bool signal_too) {
  cmd->add_option("--window", opt.window_path, "window signal file (json or csv)")->required();
  if (signal_too) cmd->add_option("--signal", opt.signal_path, "input signal file (json or csv)");
  cmd->add_option("--tol", opt.tol, "nonzero threshold (default: 1e-9 * max(1, |window|_inf))");
  cmd->add_option("--seed", opt.seed, "seed for randomized checks")->capture_default_str();
  cmd->add_flag("--verify", opt.verify, "cross-check against the brute-force oracles");
  cmd->add_option("--out", opt.out_path, "output file (default: stdout)");
}

PrimeContext make_context(const CommonOptions& opt) {
  if (!zpframe::is_prime(opt.p)) {
    throw zpframe::ParseError("--p must be prime, got " + std::to_string(opt.p));
  }
  return PrimeContext::make(opt.p);
}

SubgroupDecomposition make_subgroup(const PrimeContext& ctx, const CommonOptions& opt) {
  if (!opt.full && opt.order_m == 0) {
    throw zpframe::ParseError("one of --order-m or --full is required");
  }
  const std::int64_t m = opt.full ? ctx.p - 1 : opt.order_m;
  if (m < 1 || (ctx.p - 1) % m != 0) {
    throw zpframe::ParseError("--order-m must divide p-1 = " + std::to_string(ctx.p - 1) +
                              ", got " + std::to_string(m));
  }
  return subgroup_of_order(ctx, m);
}

void emit(const CommonOptions& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw zpframe::ParseError("cannot write output file: " + opt.out_path);
  out << text;
}

Signal random_signal(std::int64_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Signal x = Signal::zeros(p);
  for (auto& v : x.values) v = cd{gauss(rng), gauss(rng)};
  return x;
}

double resolved_tolerance(const CommonOptions& opt, const Signal& window) {
  return opt.tol >= 0.0 ? opt.tol : zpframe::default_tolerance(window);
}

int run_report(const CommonOptions& opt) {
  const PrimeContext ctx = make_context(opt);
  const SubgroupDecomposition sub = make_subgroup(ctx, opt);
  const Signal window = zpframe::load_signal(opt.window_path, ctx.p);
  const double tau = resolved_tolerance(opt, window);

  const zpframe::FrameReport report = zpframe::frame_report(window, sub, ctx, tau);
  json j = zpframe::report_to_json(report);

  if (opt.verify) {
    const auto system = zpframe::wavelet_system(ctx, window, sub);
    const auto s_matrix = zpframe::oracle::assemble_frame_operator(system);
    const auto [lo, hi] = zpframe::oracle::hermitian_extremal_eigenvalues(s_matrix);
    const Signal probe = random_signal(ctx.p, opt.seed);
    const double direct = zpframe::oracle::naive_energy(probe, window, sub, ctx);
    const double closed = zpframe::energy_coset_formula(probe, window, sub, ctx);
    j["verify"] = {
        {"oracle_min_eigenvalue", lo},
        {"oracle_max_eigenvalue", hi},
        {"spectrum_min_deviation", std::abs(lo - report.lower_bound_A)},
        {"spectrum_max_deviation", std::abs(hi - report.upper_bound_B)},
        {"probe_energy_naive", direct},
        {"probe_energy_closed_form", closed},
    };
  }

  emit(opt, j.dump(2) + "\n");
  return report.is_frame ? exit_ok : exit_not_a_frame;
}

int run_coeffs(const CommonOptions& opt) {
  const PrimeContext ctx = make_context(opt);
  const SubgroupDecomposition sub = make_subgroup(ctx, opt);
  const Signal window = zpframe::load_signal(opt.window_path, ctx.p);
  if (opt.signal_path.empty()) throw zpframe::ParseError("coeffs: --signal is required");
  const Signal x = zpframe::load_signal(opt.signal_path, ctx.p);

  const auto system = zpframe::wavelet_system(ctx, window, sub);
  const auto grid = zpframe::coefficients_fourier(x, system);

  std::optional<double> max_deviation;
  if (opt.verify) {
    const auto direct = zpframe::coefficients_direct(x, system);
    double dev = 0.0;
    for (std::size_t j = 0; j < grid.values.size(); ++j) {
      dev = std::max(dev, std::abs(grid.values[j] - direct.values[j]));
    }
    max_deviation = dev;
  }

  if (opt.format == "csv") {
    emit(opt, zpframe::grid_to_csv(grid, system.index_set));
    if (max_deviation) std::cerr << "verify: max |fourier - direct| = " << *max_deviation << "\n";
  } else {
    json j = zpframe::grid_to_json(grid, system.index_set, ctx.p);
    if (max_deviation) j["verify_max_abs_deviation"] = *max_deviation;
    emit(opt, j.dump(2) + "\n");
  }
  return exit_ok;
}

int run_group(const CommonOptions& opt) {
  const PrimeContext ctx = make_context(opt);
  const SubgroupDecomposition sub = make_subgroup(ctx, opt);
  emit(opt, zpframe::group_to_json(ctx, sub).dump(2) + "\n");
  return exit_ok;
}

int run_spectrum(const CommonOptions& opt) {
  const PrimeContext ctx = make_context(opt);
  const SubgroupDecomposition sub = make_subgroup(ctx, opt);
  const Signal window = zpframe::load_signal(opt.window_path, ctx.p);
  const auto spectrum = zpframe::frame_spectrum(window, sub, ctx);
  json j = zpframe::spectrum_to_json(ctx, sub, spectrum);

  if (opt.verify) {
    const auto system = zpframe::wavelet_system(ctx, window, sub);
    const auto [lo, hi] =
        zpframe::oracle::hermitian_extremal_eigenvalues(zpframe::oracle::assemble_frame_operator(system));
    j["verify"] = {{"oracle_min_eigenvalue", lo}, {"oracle_max_eigenvalue", hi}};
  }
  emit(opt, j.dump(2) + "\n");
  return exit_ok;
}

int run_dual(const CommonOptions& opt) {
  const PrimeContext ctx = make_context(opt);
  const SubgroupDecomposition sub = make_subgroup(ctx, opt);
  const Signal window = zpframe::load_signal(opt.window_path, ctx.p);
  const double tau = resolved_tolerance(opt, window);
  const Signal x = opt.signal_path.empty() ? random_signal(ctx.p, opt.seed)
                                           : zpframe::load_signal(opt.signal_path, ctx.p);

  const auto system = zpframe::wavelet_system(ctx, window, sub);
  const Signal recon = zpframe::canonical_dual_and_reconstruct(x, system, tau);

  double err = 0.0;
  for (std::size_t s = 0; s < recon.values.size(); ++s) {
    err += std::norm(recon.values[s] - x.values[s]);
  }
  const double xnorm = zpframe::l2_norm(x);
  const double residual = xnorm > 0.0 ? std::sqrt(err) / xnorm : 0.0;

  json j;
  j["p"] = ctx.p;
  j["M"] = sub.order_M;
  j["relative_residual"] = residual;
  j["tolerance"] = tau;
  emit(opt, j.dump(2) + "\n");
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite wavelet systems over prime fields"};
  app.require_subcommand(1);

  CommonOptions opt;

  auto* report = app.add_subcommand("report", "frame / tight-frame report for a window");
  add_group_options(report, opt);
  add_signal_options(report, opt, false);

  auto* coeffs = app.add_subcommand("coeffs", "wavelet coefficient grid <x, T_k D_m y>");
  add_group_options(coeffs, opt);
  add_signal_options(coeffs, opt, true);
  coeffs->add_option("--format", opt.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* group = app.add_subcommand("group", "group, subgroup, and coset diagnostics");
  add_group_options(group, opt);
  group->add_option("--out", opt.out_path, "output file (default: stdout)");

  auto* spectrum = app.add_subcommand("spectrum", "frame-operator eigenvalues of a window");
  add_group_options(spectrum, opt);
  add_signal_options(spectrum, opt, false);

  auto* dual = app.add_subcommand("dual", "canonical-dual reconstruction residual check");
  add_group_options(dual, opt);
  add_signal_options(dual, opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_error;
  }

  try {
    if (report->parsed()) return run_report(opt);
    if (coeffs->parsed()) return run_coeffs(opt);
    if (group->parsed()) return run_group(opt);
    if (spectrum->parsed()) return run_spectrum(opt);
    if (dual->parsed()) return run_dual(opt);
  } catch (const zpframe::NotAFrameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_not_a_frame;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}
