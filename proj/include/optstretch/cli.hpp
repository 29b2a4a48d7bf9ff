#pragma once
// Command-line front end. run() is stream-parameterized so the whole surface
// is testable in-process; main() is a two-line wrapper.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "optstretch/bounds.hpp"
#include "optstretch/counting.hpp"
#include "optstretch/report_io.hpp"
#include "optstretch/spectra.hpp"
#include "optstretch/stretch.hpp"

namespace optstretch {

struct RunConfig {
  std::string subcommand;
  double p = 0.5;
  double r = 0, s = 1;
  double r_min = 0, r_max = 0, r_step = 0;
  long long r_count = 0;
  bool closed = false;
  std::string mode = "max-interior";     // or min-closed
  std::string spectrum_mode = "rectangle";  // or product
  int d = 3;
  std::vector<long long> ns;
  long long samples = 1000;
  unsigned long long seed = 42;
  std::string suite;
  double tol_rel = 1e-9;
  std::string output;                    // empty = stdout
  std::string format = "text";           // text | csv | json per subcommand
};

namespace detail {

class Uniform01 {
 public:
  explicit Uniform01(unsigned long long seed) : rng_(seed) {}
  double operator()() { return (double)(rng_() >> 11) * 0x1p-53; }
  double log_between(double lo, double hi) {
    return lo * std::pow(hi / lo, (*this)());
  }
 private:
  std::mt19937_64 rng_;
};

inline int verify_suite(const RunConfig& cfg, std::ostream& out,
                        std::ostream& err) {
  Uniform01 u(cfg.seed);
  const MembershipPolicy pol{cfg.tol_rel};
  long long pass = 0;
  const long long n = cfg.samples;

  if (cfg.suite == "square-completion") {
    for (long long i = 0; i < n; ++i) {
      const double s = 0.05 + 4 * u();
      const double t = 1e-9 + (1 - 2e-9) * u();
      auto [holds, bound] = square_completion(s, t);
      if (!holds || std::abs(s - 1) <= bound) ++pass;
    }
  } else {
    auto c = make_p_ellipse(cfg.p);
    if (cfg.suite == "upper") {
      for (long long i = 0; i < n; ++i) {
        const double s = 0.1 + 3.9 * u();
        const double r = u.log_between(2 * s / c.L, 200);
        if ((double)count_interior(c, r, s, pol) <=
            upper_bound_interior(c, r, s))
          ++pass;
      }
    } else if (cfg.suite == "lower") {
      for (long long i = 0; i < n; ++i) {
        const double s = 0.1 + 3.9 * u();
        const double r = u.log_between(0.5, 200);
        if ((double)count_closed(c, r, s, pol) >= lower_bound_closed(c, r, s))
          ++pass;
      }
    } else if (cfg.suite == "budget") {
      if (!c.has_hypothesis) {
        err << "verify: the budget suite needs 0 < p < 1\n";
        return 2;
      }
      for (long long i = 0; i < n; ++i) {
        const double r = 1 + 59 * u();
        const double lo = std::max(1 / (r * c.M), 0.15);
        const double hi = std::min(r * c.L, 6.0);
        const double s = u.log_between(lo, hi);
        if (two_term_budget(c, r, s, BudgetPart::B, pol).slack >= 0) ++pass;
      }
    } else if (cfg.suite == "brackets") {
      const double thr =
          std::max(bracket_basic(c, 1e9).validity_threshold,
                   bracket_improved(c, 1e9).validity_threshold);
      for (long long i = 0; i < n; ++i) {
        const double r = u.log_between(thr * 1.02, 150);
        auto rep = argmax_interior(c, r, pol);
        auto basic = bracket_basic(c, r);
        auto improved = bracket_improved(c, r);
        bool ok = !rep.optimizer.empty();
        for (const auto& iv : rep.optimizer)
          ok = ok && iv.lo >= basic.lo && iv.hi <= basic.hi &&
               iv.lo >= improved.lo && iv.hi <= improved.hi;
        if (ok) ++pass;
      }
    } else if (cfg.suite == "complement-identity") {
      for (long long i = 0; i < n; ++i) {
        ComplementReport rep;
        do {
          const double r = 3 + 15 * u();
          const double s = 0.5 + 1.5 * u();
          rep = complement_identity_check(c, r, s, pol);
        } while (rep.degenerate);
        if (rep.pass) ++pass;
      }
    } else {
      err << "verify: unknown suite '" << cfg.suite << "'\n";
      return 2;
    }
  }
  out << pass << "/" << n << " pass\n";
  return pass == n ? 0 : 1;
}

inline std::vector<double> sweep_grid(const RunConfig& cfg, std::string& err) {
  std::vector<double> grid;
  if (!(cfg.r_min > 0) || !(cfg.r_max >= cfg.r_min)) {
    err = "sweep: need 0 < --r-min <= --r-max";
    return grid;
  }
  if ((cfg.r_count > 0) == (cfg.r_step > 0)) {
    err = "sweep: give exactly one of --r-count (log-spaced) or --r-step";
    return grid;
  }
  if (cfg.r_count > 0) {
    if (cfg.r_count == 1) {
      grid.push_back(cfg.r_min);
      return grid;
    }
    const double ratio = std::log(cfg.r_max / cfg.r_min);
    for (long long i = 0; i < cfg.r_count; ++i)
      grid.push_back(cfg.r_min * std::exp(ratio * i / (cfg.r_count - 1)));
  } else {
    for (double r = cfg.r_min; r <= cfg.r_max * (1 + 1e-12); r += cfg.r_step)
      grid.push_back(r);
  }
  return grid;
}

inline int run_sweep(const RunConfig& cfg, std::ostream& out,
                     std::ostream& err) {
  std::string gerr;
  const auto grid = sweep_grid(cfg, gerr);
  if (!gerr.empty()) {
    err << gerr << "\n";
    return 2;
  }
  auto c = make_p_ellipse(cfg.p);
  const MembershipPolicy pol{cfg.tol_rel};
  const auto mode = cfg.mode == "max-interior"
                        ? OptimumReport::Mode::MaxInterior
                        : OptimumReport::Mode::MinClosed;
  double thr_basic = std::nan(""), thr_improved = std::nan("");
  try {
    thr_basic = bracket_basic(c, 1e9).validity_threshold;
    thr_improved = bracket_improved(c, 1e9).validity_threshold;
  } catch (const std::exception&) {
  }
  auto records = sweep(c, mode, grid, pol, thr_basic, thr_improved);

  DecayFit fit{};
  bool have_fit = false;
  const double e = c.has_hypothesis ? c.exponents.e : 1.0 / 6;
  try {
    fit = fit_decay(records, e);
    have_fit = true;
    err << "fit: exponent_estimate = " << fmt12(fit.exponent_estimate)
        << ", envelope dist_to_one <= " << fmt12(fit.envelope_constant)
        << " * r^-" << fmt12(e) << "\n";
  } catch (const std::exception& ex) {
    err << "fit: " << ex.what() << "\n";
  }

  const ReportMeta meta{cfg.p, cfg.mode, cfg.tol_rel};
  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::binary);  // binary keeps LF endings
    if (!file) {
      err << "sweep: cannot open output file " << cfg.output << "\n";
      return 2;
    }
    sink = &file;
  }
  if (cfg.format == "json")
    write_sweep_json(*sink, meta, records, have_fit ? &fit : nullptr, e);
  else
    write_sweep_csv(*sink, records);
  return 0;
}

inline int run_spectrum(const RunConfig& cfg, std::ostream& out,
                        std::ostream& err) {
  const bool product = cfg.spectrum_mode == "product";
  if (product && cfg.d < 3) {
    err << "spectrum: product mode needs --d >= 3\n";
    return 2;
  }
  if (product)
    err << "note: product-mode values are approximate eigenvalues "
           "(first-order Weyl surrogate)\n";
  out << "n,s_star,lambda_star\n";
  for (long long n : cfg.ns) {
    auto rep = minimizing_aspect(
        n, product ? SpectrumMode::Product : SpectrumMode::Rectangle, cfg.d);
    out << n << ',' << fmt12(rep.s_star) << ',' << fmt12(rep.lambda_star)
        << "\n";
  }
  return 0;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"lattice point counts under stretched convex curves"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_p = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "exponent of the p-ellipse |sx|^p + |y/s|^p = r^p")
        ->check(CLI::PositiveNumber);
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol-rel", cfg.tol_rel,
                    "relative membership tolerance (default 1e-9)")
        ->check(CLI::Range(0.0, 1e-6));
  };

  auto* count = app.add_subcommand("count", "count lattice points in rG(s)");
  add_p(count);
  count->add_option("--r", cfg.r, "dilation radius")->required()->check(CLI::PositiveNumber);
  count->add_option("--s", cfg.s, "stretch factor")->check(CLI::PositiveNumber);
  count->add_flag("--closed", cfg.closed, "count the closed region (axes and origin included)");
  add_tol(count);

  auto* optimal = app.add_subcommand("optimal", "exact optimal-stretch set at one r");
  add_p(optimal);
  optimal->add_option("--r", cfg.r, "dilation radius")->required()->check(CLI::PositiveNumber);
  optimal->add_option("--mode", cfg.mode, "max-interior | min-closed")
      ->check(CLI::IsMember({"max-interior", "min-closed"}));
  optimal->add_option("--format", cfg.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  add_tol(optimal);

  auto* sweep_cmd = app.add_subcommand("sweep", "optimal-stretch records over an r grid");
  add_p(sweep_cmd);
  sweep_cmd->add_option("--r-min", cfg.r_min, "grid start")->required();
  sweep_cmd->add_option("--r-max", cfg.r_max, "grid end")->required();
  sweep_cmd->add_option("--r-count", cfg.r_count, "log-spaced point count");
  sweep_cmd->add_option("--r-step", cfg.r_step, "linear step");
  sweep_cmd->add_option("--mode", cfg.mode, "max-interior | min-closed")
      ->check(CLI::IsMember({"max-interior", "min-closed"}));
  sweep_cmd->add_option("--format", cfg.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--output", cfg.output, "write records here instead of stdout");
  add_tol(sweep_cmd);

  auto* verify = app.add_subcommand("verify", "run a certificate suite");
  add_p(verify);
  verify->add_option("--suite", cfg.suite,
                     "upper | lower | budget | brackets | square-completion | "
                     "complement-identity")
      ->required()
      ->check(CLI::IsMember({"upper", "lower", "budget", "brackets",
                             "square-completion", "complement-identity"}));
  verify->add_option("--samples", cfg.samples, "sample count (default 1000)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "RNG seed (default 42)");
  add_tol(verify);

  auto* spectrum = app.add_subcommand("spectrum", "minimizing aspect ratios s_n");
  spectrum->add_option("--mode", cfg.spectrum_mode, "rectangle | product")
      ->check(CLI::IsMember({"rectangle", "product"}));
  spectrum->add_option("--d", cfg.d, "product factor dimension (p = 2/d)");
  spectrum->add_option("--n", cfg.ns, "eigenvalue indices")
      ->required()
      ->check(CLI::PositiveNumber);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(count)) {
      cfg.format = "csv";  // plain number either way
      auto c = make_p_ellipse(cfg.p);
      const MembershipPolicy pol{cfg.tol_rel};
      out << (cfg.closed ? count_closed(c, cfg.r, cfg.s, pol)
                         : count_interior(c, cfg.r, cfg.s, pol))
          << "\n";
      return 0;
    }
    if (app.got_subcommand(optimal)) {
      auto c = make_p_ellipse(cfg.p);
      const MembershipPolicy pol{cfg.tol_rel};
      const auto rep = cfg.mode == "max-interior"
                           ? argmax_interior(c, cfg.r, pol)
                           : argmin_closed(c, cfg.r, pol);
      const ReportMeta meta{cfg.p, cfg.mode, cfg.tol_rel};
      if (cfg.format == "json") write_optimum_json(out, meta, rep);
      else write_optimum_text(out, rep);
      return 0;
    }
    if (app.got_subcommand(sweep_cmd)) {
      if (cfg.format == "text") cfg.format = "csv";
      return detail::run_sweep(cfg, out, err);
    }
    if (app.got_subcommand(verify)) return detail::verify_suite(cfg, out, err);
    if (app.got_subcommand(spectrum)) return detail::run_spectrum(cfg, out, err);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), std::cout, std::cerr);
}

}  // namespace optstretch
