#include "ltomo/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ltomo/errors.hpp"

namespace ltomo {

RoiStats roi_std(const ReconGrid& grid, const Box& rect) {
  if (rect.x1 < -grid.L || rect.x0 > grid.L || rect.y1 < -grid.L || rect.y0 > grid.L)
    throw ArgumentError("roi_std: rectangle lies outside the grid extent");
  // Two passes keep the variance well conditioned for large offsets.
  double sum = 0.0;
  std::size_t n = 0;
  for (int iy = 0; iy < grid.resolution; ++iy) {
    const double y = grid.coord(iy);
    if (y < rect.y0 || y > rect.y1) continue;
    for (int ix = 0; ix < grid.resolution; ++ix) {
      const double v = grid.at(ix, iy);
      if (!rect.contains({grid.coord(ix), y}) || std::isnan(v)) continue;
      sum += v;
      ++n;
    }
  }
  if (n == 0) throw ArgumentError("roi_std: no pixel centers inside the rectangle");
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (int iy = 0; iy < grid.resolution; ++iy) {
    const double y = grid.coord(iy);
    if (y < rect.y0 || y > rect.y1) continue;
    for (int ix = 0; ix < grid.resolution; ++ix) {
      const double v = grid.at(ix, iy);
      if (!rect.contains({grid.coord(ix), y}) || std::isnan(v)) continue;
      ss += (v - mean) * (v - mean);
    }
  }
  return {rect, n, mean, std::sqrt(ss / static_cast<double>(n))};
}

ProfileComparison profile_compare(std::span<const double> measured, std::span<const double> predicted, double floor) {
  if (measured.size() != predicted.size()) throw ArgumentError("profile_compare: length mismatch");
  if (measured.empty()) throw ArgumentError("profile_compare: empty profile");
  double pmax = 0.0;
  for (double p : predicted) pmax = std::max(pmax, std::abs(p));
  ProfileComparison c;
  double se_all = 0.0, se = 0.0, sp = 0.0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const double d = measured[i] - predicted[i];
    se_all += d * d;
    c.max_abs = std::max(c.max_abs, std::abs(d));
    if (std::abs(predicted[i]) < floor * pmax || pmax == 0.0) continue;
    se += d * d;
    sp += predicted[i] * predicted[i];
    ++c.used;
  }
  c.rms_abs = std::sqrt(se_all / static_cast<double>(measured.size()));
  if (c.used == 0) {
    if (se_all == 0.0) return c;  // identical (all-zero) profiles
    throw ArgumentError("profile_compare: every sample is below the relative floor");
  }
  c.rms_rel = std::sqrt(se / sp);
  return c;
}

ProfileComparison profile_compare(const EdgeProfile& p, double floor) { return profile_compare(p.measured, p.predicted, floor); }

ScalingReport scaling_report(std::span<const double> sigmas, std::span<const int> n0s) {
  ScalingReport r;
  r.n0s.assign(n0s.begin(), n0s.end());
  r.sigmas.assign(sigmas.begin(), sigmas.end());
  const std::size_t m = std::min(sigmas.size(), n0s.size());
  for (std::size_t i = 0; i < m; ++i) {
    const double ratio = sigmas[i] / sigmas[0];
    const double want = std::sqrt(static_cast<double>(n0s[i]) / n0s[0]);
    r.ratios.push_back(ratio);
    r.expected.push_back(want);
    r.deviation.push_back(100.0 * (ratio - want) / want);
  }
  return r;
}

}  // namespace ltomo
