#include <doctest.h>

#include <cmath>
#include <limits>

#include "ltomo/errors.hpp"
#include "ltomo/metrics.hpp"

using namespace ltomo;

namespace {

ReconGrid checker(int n, double lo, double hi) {
  auto g = ReconGrid::make(5.0, n);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) g.at(ix, iy) = (ix + iy) % 2 ? hi : lo;
  return g;
}

}  // namespace

TEST_CASE("ROI standard deviation") {
  auto flat = ReconGrid::make(5.0, 21);
  std::fill(flat.values.begin(), flat.values.end(), 3.0);
  const auto s0 = roi_std(flat, kRippleRoi);
  CHECK(s0.std == 0.0);
  CHECK(s0.mean == 3.0);
  CHECK(s0.pixel_count > 0);

  const auto s1 = roi_std(checker(41, 0.0, 1.0), {-5, 5, -5, 5});
  CHECK(s1.pixel_count == 41 * 41);
  CHECK(s1.std == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("ROI statistics: shift and scale behaviour, NaN skipping") {
  const auto base = checker(51, -1.0, 2.0);
  auto shifted = base, scaled = base;
  for (double& v : shifted.values) v += 7.0;
  for (double& v : scaled.values) v *= -3.0;
  const Box roi{-4, -1, -4, -2};
  const auto a = roi_std(base, roi), b = roi_std(shifted, roi), c = roi_std(scaled, roi);
  CHECK(b.std == doctest::Approx(a.std).epsilon(1e-12));
  CHECK(b.mean == doctest::Approx(a.mean + 7).epsilon(1e-12));
  CHECK(c.std == doctest::Approx(3 * a.std).epsilon(1e-12));

  auto holes = base;
  holes.at(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK(roi_std(holes, {-5, 5, -5, 5}).pixel_count == 51 * 51 - 1);
  CHECK_THROWS_AS(roi_std(base, {6, 7, 6, 7}), ArgumentError);
}

TEST_CASE("profile comparison") {
  const std::vector<double> pred{0.1, -0.5, 1.0, -0.2, 0.0};
  auto same = profile_compare(pred, pred);
  CHECK(same.rms_abs == 0.0);
  CHECK(same.rms_rel == 0.0);
  CHECK(same.used == 4);  // the exact zero falls below the floor

  std::vector<double> meas = pred;
  for (double& v : meas) v *= 1.1;
  const auto r = profile_compare(meas, pred);
  CHECK(r.rms_rel == doctest::Approx(0.1).epsilon(1e-12));
  // Sign symmetry.
  std::vector<double> nm, np;
  for (double v : meas) nm.push_back(-v);
  for (double v : pred) np.push_back(-v);
  const auto n = profile_compare(nm, np);
  CHECK(n.rms_rel == doctest::Approx(r.rms_rel).epsilon(1e-14));
  CHECK(n.max_abs == doctest::Approx(r.max_abs).epsilon(1e-14));

  const std::vector<double> z{0, 0, 0};
  CHECK(profile_compare(z, z).rms_rel == 0.0);
  CHECK_THROWS_AS(profile_compare(std::vector<double>{1, 1, 1}, z), ArgumentError);
  CHECK_THROWS_AS(profile_compare(std::vector<double>{1}, z), ArgumentError);
}

TEST_CASE("scaling report reproduces the published ratios") {
  const std::vector<int> n0s{1000, 2500, 5000};
  const auto plain = scaling_report(std::vector<double>{1.2751, 2.0912, 3.0335}, n0s);
  CHECK(plain.ratios[0] == 1.0);
  CHECK(plain.deviation[0] == 0.0);
  CHECK(plain.ratios[1] == doctest::Approx(1.6400).epsilon(1e-4));
  CHECK(plain.ratios[2] == doctest::Approx(2.3790).epsilon(1e-4));
  const auto smooth = scaling_report(std::vector<double>{0.8639, 1.4079, 2.0881}, n0s);
  CHECK(smooth.ratios[1] == doctest::Approx(1.6297).epsilon(1e-4));
  CHECK(smooth.ratios[2] == doctest::Approx(2.4171).epsilon(1e-4));
  CHECK(plain.expected[1] == doctest::Approx(std::sqrt(2.5)));
  CHECK(plain.expected[2] == doctest::Approx(std::sqrt(5.0)));
  CHECK(plain.deviation[1] == doctest::Approx(100 * (1.6400 / std::sqrt(2.5) - 1)).epsilon(1e-3));
}
