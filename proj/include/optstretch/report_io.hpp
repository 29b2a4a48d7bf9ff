#pragma once
// Record formatting: 12-significant-digit text, the fixed sweep CSV schema,
// and JSON with NaN encoded as null plus a per-record failure flag.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "optstretch/stretch.hpp"

#define OPTSTRETCH_VERSION "0.1.0"

namespace optstretch {

inline std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline const char* mode_name(OptimumReport::Mode m) {
  return m == OptimumReport::Mode::MaxInterior ? "max-interior" : "min-closed";
}

struct ReportMeta {
  double p = 0;
  std::string mode;
  double tol_rel = 0;
};

namespace detail {

inline std::string json_num(double v) {
  return std::isnan(v) ? std::string("null") : fmt12(v);
}

inline void json_meta(std::ostream& out, const ReportMeta& meta) {
  out << "\"meta\":{\"p\":" << fmt12(meta.p) << ",\"mode\":\"" << meta.mode
      << "\",\"tol_rel\":" << fmt12(meta.tol_rel) << ",\"version\":\""
      << OPTSTRETCH_VERSION << "\"";
}

}  // namespace detail

inline constexpr const char* kSweepCsvHeader =
    "r,dist_to_one,best_count,predicted_count,residual,bracket_lo,bracket_hi";

inline void write_sweep_csv(std::ostream& out,
                            const std::vector<SweepRecord>& records) {
  out << kSweepCsvHeader << "\n";
  for (const auto& rec : records) {
    out << fmt12(rec.r) << ',' << fmt12(rec.dist_to_one) << ',';
    if (rec.failed) out << "nan";
    else out << rec.best_count;
    out << ',' << fmt12(rec.predicted_count) << ',' << fmt12(rec.residual)
        << ',' << fmt12(rec.bracket_lo) << ',' << fmt12(rec.bracket_hi)
        << "\n";
  }
}

inline void write_sweep_json(std::ostream& out, const ReportMeta& meta,
                             const std::vector<SweepRecord>& records,
                             const DecayFit* fit, double fit_exponent) {
  out << '{';
  detail::json_meta(out, meta);
  out << '}';
  if (fit) {
    out << ",\"fit\":{\"exponent_estimate\":" << fmt12(fit->exponent_estimate)
        << ",\"envelope_constant\":" << fmt12(fit->envelope_constant)
        << ",\"envelope_exponent\":" << fmt12(fit_exponent) << '}';
  } else {
    out << ",\"fit\":null";
  }
  out << ",\"records\":[";
  bool first = true;
  for (const auto& rec : records) {
    if (!first) out << ',';
    first = false;
    out << "{\"r\":" << fmt12(rec.r)
        << ",\"dist_to_one\":" << detail::json_num(rec.dist_to_one)
        << ",\"best_count\":";
    if (rec.failed) out << "null";
    else out << rec.best_count;
    out << ",\"predicted_count\":" << detail::json_num(rec.predicted_count)
        << ",\"residual\":" << detail::json_num(rec.residual)
        << ",\"bracket_lo\":" << detail::json_num(rec.bracket_lo)
        << ",\"bracket_hi\":" << detail::json_num(rec.bracket_hi)
        << ",\"failed\":" << (rec.failed ? "true" : "false") << '}';
  }
  out << "]}\n";
}

inline void write_optimum_text(std::ostream& out, const OptimumReport& rep) {
  const bool open = rep.mode == OptimumReport::Mode::MinClosed;
  out << "r = " << fmt12(rep.r) << "\n";
  out << "mode = " << mode_name(rep.mode) << "\n";
  out << "best_count = " << rep.best_count << "\n";
  out << "optimizer =";
  if (rep.optimizer.empty()) out << " {}";
  for (size_t i = 0; i < rep.optimizer.size(); ++i) {
    const auto& iv = rep.optimizer[i];
    out << (i ? " u " : " ") << (open ? '(' : '[') << fmt12(iv.lo) << ", "
        << fmt12(iv.hi) << (open ? ')' : ']');
  }
  out << "\n";
  out << "dist_to_one = " << fmt12(rep.dist_to_one) << "\n";
  out << "witness_s = " << fmt12(rep.witness_s) << "\n";
  if (rep.no_lattice_point) out << "no_lattice_point = true\n";
  if (rep.heuristic) out << "heuristic = true\n";
}

inline void write_optimum_json(std::ostream& out, const ReportMeta& meta,
                               const OptimumReport& rep) {
  out << '{';
  detail::json_meta(out, meta);
  out << "},\"report\":{\"r\":" << fmt12(rep.r) << ",\"best_count\":"
      << rep.best_count << ",\"optimizer\":[";
  for (size_t i = 0; i < rep.optimizer.size(); ++i) {
    if (i) out << ',';
    out << '[' << fmt12(rep.optimizer[i].lo) << ','
        << fmt12(rep.optimizer[i].hi) << ']';
  }
  out << "],\"open_intervals\":"
      << (rep.mode == OptimumReport::Mode::MinClosed ? "true" : "false")
      << ",\"dist_to_one\":" << detail::json_num(rep.dist_to_one)
      << ",\"witness_s\":" << detail::json_num(rep.witness_s)
      << ",\"no_lattice_point\":" << (rep.no_lattice_point ? "true" : "false")
      << ",\"heuristic\":" << (rep.heuristic ? "true" : "false") << "}}\n";
}

}  // namespace optstretch
