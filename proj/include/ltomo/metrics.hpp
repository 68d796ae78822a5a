#pragma once

#include <span>
#include <vector>

#include "ltomo/recon.hpp"

namespace ltomo {

struct RoiStats {
  Box rect;
  std::size_t pixel_count = 0;
  double mean = 0.0;
  double std = 0.0;  // population
};

// Pixel centers inside rect; NaN pixels are skipped.
RoiStats roi_std(const ReconGrid& grid, const Box& rect);

// ROI used for the ripple scaling study.
inline constexpr Box kRippleRoi{-4.0, -1.0, -4.0, -2.0};

struct ProfileComparison {
  double rms_abs = 0.0;
  double rms_rel = 0.0;
  double max_abs = 0.0;
  std::size_t used = 0;
};

// rms_rel skips samples with |predicted| below floor * max|predicted|.
ProfileComparison profile_compare(std::span<const double> measured, std::span<const double> predicted,
                                  double floor = 1e-3);
ProfileComparison profile_compare(const EdgeProfile& p, double floor = 1e-3);

struct ScalingReport {
  std::vector<int> n0s;
  std::vector<double> sigmas;
  // Aligned with n0s, so ratios[0] == 1.
  std::vector<double> ratios;     // sigma_i / sigma_0
  std::vector<double> expected;   // sqrt(n0_i / n0_0)
  std::vector<double> deviation;  // percent, (ratio - expected) / expected
};

ScalingReport scaling_report(std::span<const double> sigmas, std::span<const int> n0s);

}  // namespace ltomo
