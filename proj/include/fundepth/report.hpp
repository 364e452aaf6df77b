#pragma once

// Five-number summaries, static SVG dotplots, and two-sample depth differences.

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fundepth/csv.hpp"
#include "fundepth/profile.hpp"
#include "fundepth/random.hpp"

namespace fundepth {

/// Quantile with linear interpolation between order statistics
/// (position p (n-1) in the sorted values).
inline double quantile_inclusive(std::vector<double> values, double p) {
  if (values.empty()) throw DataError("quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

struct FiveNumber {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  double iqr() const { return q3 - q1; }
};

inline FiveNumber summarize(const std::vector<double>& v) {
  return {quantile_inclusive(v, 0.0), quantile_inclusive(v, 0.25), quantile_inclusive(v, 0.5),
          quantile_inclusive(v, 0.75), quantile_inclusive(v, 1.0)};
}

inline void write_summary_csv(std::ostream& out, const std::vector<DepthResult>& results) {
  out << "kind,n,min,q1,median,q3,max\n";
  for (const auto& r : results) {
    const auto s = summarize(r.values);
    out << to_string(r.kind) << ',' << r.values.size() << ',' << detail::format_double(s.min) << ','
        << detail::format_double(s.q1) << ',' << detail::format_double(s.median) << ','
        << detail::format_double(s.q3) << ',' << detail::format_double(s.max) << '\n';
  }
}

/// One horizontal dotplot panel per series; x axis is the value, points are
/// jittered vertically with a seeded stream so output is reproducible.
struct DotSeries {
  std::string title;
  std::vector<double> values;
};

inline std::string dotplot_svg(const std::vector<DotSeries>& series, std::uint64_t seed) {
  constexpr double width = 640, panel_h = 90, left = 110, right = 20, top = 10;
  const double plot_w = width - left - right;
  const double height = top + panel_h * static_cast<double>(series.size()) + 30;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& vals = series[s].values;
    double lo = 0.0, hi = 1.0;
    if (!vals.empty()) {
      lo = std::min(0.0, *std::min_element(vals.begin(), vals.end()));
      hi = std::max(lo + 1e-12, *std::max_element(vals.begin(), vals.end()));
    }
    const double y0 = top + panel_h * static_cast<double>(s);
    const double axis_y = y0 + panel_h - 20;
    svg << "<g class=\"panel\" id=\"panel-" << s << "\">\n"
        << "<text x=\"8\" y=\"" << axis_y - 25 << "\" font-family=\"sans-serif\" font-size=\"13\">"
        << series[s].title << "</text>\n"
        << "<line x1=\"" << left << "\" y1=\"" << axis_y << "\" x2=\"" << left + plot_w << "\" y2=\"" << axis_y
        << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
      const double v = lo + (hi - lo) * tick / 4.0;
      const double x = left + plot_w * tick / 4.0;
      svg << "<text x=\"" << x << "\" y=\"" << axis_y + 14 << "\" font-family=\"sans-serif\" font-size=\"10\" "
          << "text-anchor=\"middle\">" << detail::format_double(std::round(v * 1e4) / 1e4) << "</text>\n";
    }
    NormalStream jitter(derive_seed(seed, s));
    for (double v : vals) {
      const double x = left + plot_w * (v - lo) / (hi - lo);
      const double y = axis_y - 8 - 40 * jitter.uniform();
      svg << "<circle class=\"obs\" cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"none\" stroke=\"black\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

inline std::string dotplot_svg(const std::vector<DepthResult>& results, std::uint64_t seed) {
  std::vector<DotSeries> series;
  for (const auto& r : results) series.push_back({std::string(to_string(r.kind)), r.values});
  return dotplot_svg(series, seed);
}

/// Depth w.r.t. group A minus depth w.r.t. group B, for every curve of both groups.
/// Own-group depths are leave-one-out, other-group depths use the full sample.
struct DepthDifference {
  DepthKind kind = DepthKind::sd;
  std::vector<double> a_own, a_other;  // curves of A: depth w.r.t. A, w.r.t. B
  std::vector<double> b_other, b_own;  // curves of B: depth w.r.t. A, w.r.t. B

  std::vector<double> diff_a() const {
    std::vector<double> d(a_own.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a_own[i] - a_other[i];
    return d;
  }
  std::vector<double> diff_b() const {
    std::vector<double> d(b_own.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = b_other[i] - b_own[i];
    return d;
  }
  /// Fraction of A's curves strictly deeper in A.
  double agreement_a() const {
    const auto d = diff_a();
    return static_cast<double>(std::count_if(d.begin(), d.end(), [](double v) { return v > 0.0; })) /
           static_cast<double>(d.size());
  }
  /// Fraction of B's curves strictly deeper in B.
  double agreement_b() const {
    const auto d = diff_b();
    return static_cast<double>(std::count_if(d.begin(), d.end(), [](double v) { return v < 0.0; })) /
           static_cast<double>(d.size());
  }
};

inline DepthDifference depth_difference(const FunctionalSample& a, const FunctionalSample& b, DepthKind kind,
                                        DepthOptions o = {}) {
  require_same_grid(a.grid(), b.grid());
  o.leave_one_out = true;
  DepthDifference out;
  out.kind = kind;
  out.a_own = depth_profile(a, kind, o).values;
  out.b_own = depth_profile(b, kind, o).values;
  out.a_other = depth_against(a, b, kind, o).values;
  out.b_other = depth_against(b, a, kind, o).values;
  return out;
}

/// `group,row_index,kind,depth_a,depth_b,difference`
inline void write_difference_csv(std::ostream& out, const std::vector<DepthDifference>& diffs) {
  out << "group,row_index,kind,depth_a,depth_b,difference\n";
  for (const auto& d : diffs) {
    const auto da = d.diff_a(), db = d.diff_b();
    for (std::size_t i = 0; i < da.size(); ++i)
      out << "A," << i << ',' << to_string(d.kind) << ',' << detail::format_double(d.a_own[i]) << ','
          << detail::format_double(d.a_other[i]) << ',' << detail::format_double(da[i]) << '\n';
    for (std::size_t i = 0; i < db.size(); ++i)
      out << "B," << i << ',' << to_string(d.kind) << ',' << detail::format_double(d.b_other[i]) << ','
          << detail::format_double(d.b_own[i]) << ',' << detail::format_double(db[i]) << '\n';
  }
}

/// `kind,group,sign_agreement`
inline void write_agreement_csv(std::ostream& out, const std::vector<DepthDifference>& diffs) {
  out << "kind,group,sign_agreement\n";
  for (const auto& d : diffs) {
    out << to_string(d.kind) << ",A," << detail::format_double(d.agreement_a()) << '\n';
    out << to_string(d.kind) << ",B," << detail::format_double(d.agreement_b()) << '\n';
  }
}

}  // namespace fundepth
