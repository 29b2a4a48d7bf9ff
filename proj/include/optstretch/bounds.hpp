#pragma once
// Every explicit inequality as a checkable certificate: the two-term upper
// and lower counting bounds, the full remainder budget with its named terms,
// the stretch-factor brackets, and the elementary square-completion step.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "optstretch/counting.hpp"
#include "optstretch/optimize.hpp"

namespace optstretch {

// N(r,s) <= r^2 Area - f(L/2) r s / 2 once r >= 2s/L: the columns past the
// halfway intercept each waste at least a triangle of the removed area.
inline double upper_bound_interior(const CurveModel& c, double r, double s) {
  detail::check_rs(r, s);
  if (r < 2 * s / c.L)
    throw std::domain_error("upper_bound_interior: bound not applicable (need r >= 2s/L)");
  return r * r * c.area - 0.5 * c.f(c.L / 2) * r * s;
}

// closed count >= r^2 Area + M r s / 2, no side condition
inline double lower_bound_closed(const CurveModel& c, double r, double s) {
  detail::check_rs(r, s);
  return r * r * c.area + 0.5 * c.M * r * s;
}

struct RemainderBudget {
  double lhs = 0;   // |N(r,s) - r^2 Area + r(L/s + sM)/2|
  std::vector<std::pair<std::string, double>> terms;
  double rhs = 0;   // sum of terms
  double slack = 0; // rhs - lhs
  bool degenerate = false;  // the dilated curve hits a lattice point (part a)
  double delta_used = 0, epsilon_used = 0;
  char part = 'b';
};

enum class BudgetPart { A, B };

// The full remainder inequality, term by term. Part B is the stretched
// statement; part A applies the unstretched statement to the dilated curve
// (s must be 1), which evaluates to the same numbers but additionally
// requires the curve to miss every lattice point — violations are reported
// through `degenerate` rather than an exception so samplers can skip them.
inline RemainderBudget two_term_budget(const CurveModel& c, double r, double s,
                                       BudgetPart part = BudgetPart::B,
                                       const MembershipPolicy& pol = {}) {
  detail::check_rs(r, s);
  if (!c.has_hypothesis)
    throw std::domain_error("two_term_budget: curve has no convex-hypothesis data");
  if (!(r * c.L / s >= 1 && r * s * c.M >= 1))
    throw std::domain_error("two_term_budget: side condition rL/s >= 1, rsM >= 1 fails");
  RemainderBudget b;
  if (part == BudgetPart::A) {
    if (s != 1)
      throw std::invalid_argument("two_term_budget: part-a mode is stated at s = 1");
    if (r * c.L < 2)
      throw std::domain_error("two_term_budget: part-a mode needs rL >= 2");
    b.part = 'a';
    // incidence scan over the dilated curve: lattice points on it break the
    // part-a premise
    auto near_int = [](double v) {
      return std::abs(v - std::round(v)) <= 1e-9 * std::max(1.0, std::abs(v));
    };
    if (near_int(r * c.L) || near_int(r * c.M)) b.degenerate = true;
    const long long jmax = (long long)std::floor(r * c.L + 0.5);
    for (long long j = 1; j <= jmax && !b.degenerate; ++j) {
      const double x = j / r;
      if (x >= c.L) break;
      if (near_int(r * c.f(x))) b.degenerate = true;
    }
  }

  const auto [fi, gi] = curvature_integral(c);
  const double delta = c.delta_fn(r), eps = c.epsilon_fn(r);
  const double m = (double)c.alpha_partition.size() - 1;
  const double n = (double)c.beta_partition.size() - 1;
  const double s32 = std::pow(s, 1.5);

  double vertices_f = 0, vertices_g = 0, slopes_f = 0, slopes_g = 0;
  for (size_t i = 0; i + 1 < c.alpha_partition.size(); ++i) {
    const double a = c.alpha_partition[i];
    vertices_f += 1.0 / std::sqrt(c.f2(a));
    slopes_f += std::abs(c.f1(a));
  }
  for (size_t i = 0; i + 1 < c.beta_partition.size(); ++i) {
    const double bp = c.beta_partition[i];
    vertices_g += 1.0 / std::sqrt(c.g2(bp));
    slopes_g += std::abs(c.g1(bp));
  }

  b.terms = {
      {"curvature", 6 * std::pow(r, 2.0 / 3) * (fi + gi)},
      {"flat_edge", 175 * std::sqrt(r) *
                        (1 / (s32 * std::sqrt(c.f2(c.L - delta))) +
                         s32 / std::sqrt(c.g2(c.M - eps)))},
      {"vertices",
       525 * std::sqrt(r) * (vertices_f / s32 + s32 * vertices_g)},
      {"slopes", 0.25 * (s * s * slopes_f + slopes_g / (s * s))},
      {"strip", 0.5 * r * (delta / s + s * eps)},
      {"pieces", 3 * (m + n) + 5},
      {"aspect", c.L / (c.M * s * s) + s * s * c.M / c.L},
  };
  for (const auto& [_, v] : b.terms) b.rhs += v;

  const long long N = count_interior(c, r, s, pol);
  b.lhs = std::abs((double)N - r * r * c.area + r * (c.L / s + s * c.M) / 2);
  b.slack = b.rhs - b.lhs;
  b.delta_used = b.part == 'a' ? r * delta : delta;
  b.epsilon_used = b.part == 'a' ? r * eps : eps;
  return b;
}

struct StretchBracket {
  double lo = 0, hi = 0;
  enum class Kind { Basic, Improved } kind = Kind::Basic;
  double validity_threshold = 0;
};

// S(r) subset [(rM)^{-1}, rL] once r^2 >= 1/max_{Gamma} xy
inline StretchBracket bracket_basic(const CurveModel& c, double r) {
  detail::check_rs(r, 1);
  const double max_xy =
      grid_then_golden_max([&](double x) { return x * c.f(x); }, 0, c.L, 10000,
                           1e-10)
          .second;
  StretchBracket br;
  br.kind = StretchBracket::Kind::Basic;
  br.validity_threshold = 1 / std::sqrt(max_xy);
  if (r < br.validity_threshold)
    throw std::domain_error("bracket_basic: bracket not yet valid at this r");
  br.lo = 1 / (r * c.M);
  br.hi = r * c.L;
  return br;
}

// S(r) subset [2(rM)^{-1}, rL/2] once r >= C = max(sqrt(8/L delta1),
// sqrt(8/M delta2)), with delta1 = min_{[L/2,L]} (f(x/2) - f(x))
inline StretchBracket bracket_improved(const CurveModel& c, double r) {
  detail::check_rs(r, 1);
  auto gap_f = [&](double x) { return c.f(x / 2) - c.f(x); };
  auto gap_g = [&](double y) { return c.g(y / 2) - c.g(y); };
  const double d1 = grid_then_golden_min(gap_f, c.L / 2, c.L, 10000, 1e-10).second;
  const double d2 = grid_then_golden_min(gap_g, c.M / 2, c.M, 10000, 1e-10).second;
  StretchBracket br;
  br.kind = StretchBracket::Kind::Improved;
  br.validity_threshold =
      std::max(std::sqrt(8 / (c.L * d1)), std::sqrt(8 / (c.M * d2)));
  if (r < br.validity_threshold)
    throw std::domain_error("bracket_improved: bracket not yet valid at this r");
  br.lo = 2 / (r * c.M);
  br.hi = r * c.L / 2;
  return br;
}

// s + 1/s <= 2 + t with 0 < t < 1 forces |s - 1| <= 3 sqrt(t)
inline std::pair<bool, double> square_completion(double s, double t) {
  if (!(s > 0)) throw std::invalid_argument("square_completion: need s > 0");
  if (!(t > 0 && t < 1))
    throw std::invalid_argument("square_completion: need 0 < t < 1");
  return {s + 1 / s <= 2 + t, 3 * std::sqrt(t)};
}

}  // namespace optstretch
