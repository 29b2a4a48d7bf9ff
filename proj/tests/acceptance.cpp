// Acceptance gate: twelve criteria, one line each, exit code = #failures.
// Everything here runs against the public headers only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "optstretch/bounds.hpp"
#include "optstretch/counting.hpp"
#include "optstretch/spectra.hpp"
#include "optstretch/stretch.hpp"

using namespace optstretch;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& detail) {
  std::printf("criterion %02d: %s - %s\n", idx, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

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

std::string fmt(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

void criterion_1_oracle_grid() {
  const auto t0 = std::chrono::steady_clock::now();
  long long cases = 0, mismatches = 0;
  for (double p : {0.4, 0.5, 0.75, 2.0}) {
    auto c = make_p_ellipse(p);
    for (int r = 1; r <= 30; ++r) {
      for (double s : {0.3, 0.7, 1.0, 1.9, 3.1}) {
        ++cases;
        if (count_interior(c, r, s) != brute_force_count(c, r, s, false) ||
            count_closed(c, r, s) != brute_force_count(c, r, s, true))
          ++mismatches;
      }
    }
  }
  const double dt = seconds_since(t0);
  report(1, mismatches == 0 && cases == 600 && dt < 10,
         "oracle grid " + std::to_string(cases - mismatches) + "/" +
             std::to_string(cases) + " in " + fmt(dt, 3) + " s");
}

void criterion_2_hand_counts() {
  auto c = make_p_ellipse(0.5);
  const long long n_in = count_interior(c, 9, 1);
  const long long n_cl = count_closed(c, 9, 1);
  // (1,4) and (4,1) sit exactly on the curve: 1 + 2 = 9^(1/2) + error 0
  const bool boundary = member(c, 9, 1, 1, 4, MembershipPolicy{}) &&
                        member(c, 9, 1, 4, 1, MembershipPolicy{}) &&
                        member(c, 9, 1, 1, 4, MembershipPolicy{0.0}) &&
                        member(c, 9, 1, 4, 1, MembershipPolicy{0.0});
  report(2, n_in == 8 && n_cl == 27 && boundary,
         "N(9,1) = " + std::to_string(n_in) + ", closed count = " +
             std::to_string(n_cl) + ", boundary points " +
             (boundary ? "included" : "MISSING"));
}

void criterion_3_bound_certificates() {
  const auto t0 = std::chrono::steady_clock::now();
  Uniform01 u(20260822);
  long long violations = 0;
  const long long per = 1000;
  for (double p : {0.4, 0.6}) {
    auto c = make_p_ellipse(p);
    for (long long i = 0; i < per; ++i) {
      const double s = 0.1 + 3.9 * u();
      const double r = u.log_between(2 * s / c.L, 200);
      if ((double)count_interior(c, r, s) > upper_bound_interior(c, r, s))
        ++violations;
    }
    for (long long i = 0; i < per; ++i) {
      const double s = 0.1 + 3.9 * u();
      const double r = 0.5 * std::pow(400.0, u());
      if ((double)count_closed(c, r, s) < lower_bound_closed(c, r, s))
        ++violations;
    }
  }
  const double dt = seconds_since(t0);
  report(3, violations == 0 && dt < 30,
         "upper/lower certificates, " + std::to_string(violations) +
             " violations in 4000 draws, " + fmt(dt, 3) + " s");
}

void criterion_4_budget() {
  Uniform01 u(77);
  long long violations = 0;
  for (double p : {0.4, 0.5, 0.75}) {
    auto c = make_p_ellipse(p);
    for (long long i = 0; i < 1000; ++i) {
      const double r = 1 + 59 * u();
      const double s =
          u.log_between(std::max(1 / (r * c.M), 0.15), std::min(r * c.L, 6.0));
      if (two_term_budget(c, r, s).slack < 0) ++violations;
    }
  }
  auto c05 = make_p_ellipse(0.5);
  const auto b = two_term_budget(c05, 9, 1);
  const bool exact_lhs = b.lhs == 3.5;
  report(4, violations == 0 && exact_lhs,
         "remainder budget slack >= 0 on 3000 draws (" +
             std::to_string(violations) + " violations), lhs(9,1) = " +
             fmt(b.lhs, 17));
}

void criterion_5_exact_optimizer() {
  auto c = make_p_ellipse(0.5);
  const auto rep = argmax_interior(c, 5, MembershipPolicy{0.0});
  const double lo_ref = (3 - std::sqrt(5.0)) / 2;
  const double hi_ref = (3 + std::sqrt(5.0)) / 2;
  bool pass = rep.best_count == 1 && rep.optimizer.size() == 1;
  double err = std::nan("");
  if (pass) {
    err = std::max(std::abs(rep.optimizer[0].lo - lo_ref),
                   std::abs(rep.optimizer[0].hi - hi_ref));
    pass = err <= 1e-9;
  }
  report(5, pass,
         "argmax at r = 5: best_count = " + std::to_string(rep.best_count) +
             ", endpoint error " + fmt(err, 3));
}

void criterion_6_bracket_containment() {
  auto c = make_p_ellipse(0.5);
  const double C = bracket_improved(c, 100).validity_threshold;
  bool contained = true;
  for (double r : {10.0, 20.0, 50.0, 100.0}) {
    const auto rep = argmax_interior(c, r, MembershipPolicy{0.0});
    if (rep.optimizer.empty()) contained = false;
    for (const auto& iv : rep.optimizer)
      contained = contained && iv.lo >= 2 / r && iv.hi <= r / 2;
  }
  const bool c_ok = std::abs(C - (4 + 4 * std::sqrt(2.0))) <= 1e-3;
  report(6, contained && c_ok,
         std::string("maximizers inside [2/r, r/2] at r = 10, 20, 50, 100; ") +
             "validity threshold " + fmt(C, 10));
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i)
    g.push_back(lo * std::pow(hi / lo, (double)i / (n - 1)));
  return g;
}

bool block_maxima_nonincreasing(const std::vector<SweepRecord>& recs,
                                std::string& blocks) {
  const size_t nb = 4, bs = recs.size() / nb;
  std::ostringstream os;
  double prev = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (size_t b = 0; b < nb; ++b) {
    double m = 0;
    for (size_t i = b * bs; i < (b + 1) * bs; ++i)
      m = std::max(m, recs[i].dist_to_one);
    ok = ok && m <= prev;
    prev = m;
    os << (b ? " " : "") << fmt(m, 3);
  }
  blocks = os.str();
  return ok;
}

void criterion_7_balanced_trend(const std::vector<SweepRecord>& recs,
                                double dt) {
  std::string blocks;
  const bool trend = block_maxima_nonincreasing(recs, blocks);
  const auto fit = fit_decay(recs, 1.0 / 6);
  const bool slope_ok = fit.exponent_estimate <= -1.0 / 6 + 0.15;
  report(7, trend && slope_ok && dt < 600,
         "max-mode block maxima [" + blocks + "], fit slope " +
             fmt(fit.exponent_estimate, 4) + ", sweep " + fmt(dt, 3) + " s");
}

double residual_envelope(const std::vector<SweepRecord>& recs) {
  double K = 0;
  for (const auto& rec : recs)
    K = std::max(K, std::abs(rec.residual) / std::pow(rec.r, 2.0 / 3));
  return K;
}

void criterion_8_count_envelope(const std::vector<SweepRecord>& recs) {
  const double K = residual_envelope(recs);
  report(8, std::isfinite(K) && K <= 2,
         "|best_count - (r^2/6 - r)| <= K r^(2/3) with K = " + fmt(K, 4));
}

void criterion_9_min_mode(const CurveModel& c,
                          const std::vector<double>& grid) {
  const auto recs = sweep(c, OptimumReport::Mode::MinClosed, grid);
  std::string blocks;
  const bool trend = block_maxima_nonincreasing(recs, blocks);
  const auto fit = fit_decay(recs, 1.0 / 6);
  const bool slope_ok = fit.exponent_estimate <= -1.0 / 6 + 0.15;
  const double K = residual_envelope(recs);
  report(9, trend && slope_ok && std::isfinite(K) && K <= 1.5,
         "min-mode block maxima [" + blocks + "], fit slope " +
             fmt(fit.exponent_estimate, 4) + ", envelope K = " + fmt(K, 4));
}

void criterion_10_complement_identity() {
  Uniform01 u(1234);
  long long violations = 0;
  for (double p : {0.5, 2.0}) {
    auto c = make_p_ellipse(p);
    for (int i = 0; i < 200; ++i) {
      ComplementReport rep;
      do {
        const double r = 3 + 15 * u();
        const double s = 0.5 + 1.5 * u();
        rep = complement_identity_check(c, r, s);
      } while (rep.degenerate);
      if (!rep.pass) ++violations;
    }
  }
  report(10, violations == 0,
         "rectangle complement identity on 400 non-degenerate draws, " +
             std::to_string(violations) + " violations");
}

void criterion_11_spectra() {
  const bool exact_low = rectangle_eigenvalue(1.0, 1) == 2.0 &&
                         rectangle_eigenvalue(1.0, 2) == 5.0;

  Uniform01 u(5150);
  long long dual_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const double s = 0.3 * std::pow(10.0, u());
    const double lam = 2 + 398 * u();
    const long long k = eigenvalue_count(s, lam);
    if (k > 0 && rectangle_eigenvalue(s, k) > lam * (1 + 2e-9)) ++dual_bad;
    if (rectangle_eigenvalue(s, k + 1) <= lam * (1 - 2e-9)) ++dual_bad;
  }

  const auto r50 = minimizing_aspect(50);
  const auto r5000 = minimizing_aspect(5000);
  const double dr50 = std::abs(r50.s_star - 1), dr5000 = std::abs(r5000.s_star - 1);
  const auto p50 = minimizing_aspect(50, SpectrumMode::Product, 3);
  const auto p5000 = minimizing_aspect(5000, SpectrumMode::Product, 3);
  const double dp50 = std::abs(p50.s_star - 1), dp5000 = std::abs(p5000.s_star - 1);

  report(11,
         exact_low && dual_bad == 0 && dr5000 < dr50 && dp5000 < dp50,
         "lambda_1 = 2, lambda_2 = 5; duality clean on 1000 queries; "
         "|s_n - 1| rectangle " + fmt(dr5000, 4) + " < " + fmt(dr50, 4) +
             ", product(d=3) " + fmt(dp5000, 4) + " < " + fmt(dp50, 4));
}

void criterion_12_square_completion() {
  Uniform01 u(999);
  long long counterexamples = 0, premise_true = 0;
  for (long long i = 0; i < 1000000; ++i) {
    // half the draws hug s = 1 so the premise actually fires
    const double s = (i % 2) ? 0.05 + 4 * u() : 1 + (u() - 0.5) * 0.2;
    const double t = 1e-9 + (1 - 2e-9) * u();
    auto [holds, bound] = square_completion(s, t);
    if (holds) {
      ++premise_true;
      if (std::abs(s - 1) > bound) ++counterexamples;
    }
  }
  report(12, counterexamples == 0 && premise_true > 100000,
         "square completion: " + std::to_string(counterexamples) +
             " counterexamples in 1e6 draws (" +
             std::to_string(premise_true) + " with the premise active)");
}

}  // namespace

int main() {
  criterion_1_oracle_grid();
  criterion_2_hand_counts();
  criterion_3_bound_certificates();
  criterion_4_budget();
  criterion_5_exact_optimizer();
  criterion_6_bracket_containment();

  auto c05 = make_p_ellipse(0.5);
  const auto grid = log_grid(20, 300, 40);
  const auto t0 = std::chrono::steady_clock::now();
  const auto max_recs = sweep(c05, OptimumReport::Mode::MaxInterior, grid);
  const double sweep_dt = seconds_since(t0);
  criterion_7_balanced_trend(max_recs, sweep_dt);
  criterion_8_count_envelope(max_recs);
  criterion_9_min_mode(c05, grid);

  criterion_10_complement_identity();
  criterion_11_spectra();
  criterion_12_square_completion();

  std::printf("%d/12 criteria passed\n", 12 - g_failures);
  return g_failures;
}
