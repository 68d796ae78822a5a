#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ltomo/errors.hpp"
#include "ltomo/recon.hpp"

using namespace ltomo;
using std::numbers::pi;

namespace {

// Direct double sum, independent of the tap tables.
double brute_force(const Sinogram& s, const Kernel& k, Point x) {
  const auto& g = s.geometry();
  double v = 0.0;
  for (int kk = 0; kk < g.n0; ++kk) {
    const double ax = dot(direction(g.alpha(kk)), x);
    for (int j = 0; j <= g.n0; ++j) v += k.eval(2, (ax - g.p(j)) / g.eps()) * s.at(kk, j);
  }
  return -g.delta_alpha / (4 * pi * g.eps() * g.eps()) * v;
}

const Phantom& phantom() {
  static const Phantom ph({Disk{{2, 1.5}, 1.0, 1.0}, Rect{{-1, -2}, 0.7, 0.3, 0.5}});
  return ph;
}

}  // namespace

TEST_CASE("reconstruction matches the brute-force sum") {
  const Kernel k = Kernel::standard();
  const auto g = build_geometry(96, 5.0);
  const auto s = sample_sinogram(phantom(), g, Aperture::none);
  for (Point x : {Point{0, 0}, Point{2.9, 1.5}, Point{-1.7, -2.1}, Point{4, -3}})
    CHECK(lambda_recon_point(s, k, x) == doctest::Approx(brute_force(s, k, x)).epsilon(1e-11));
}

TEST_CASE("zero data and linearity") {
  const Kernel k = Kernel::standard();
  const auto g = build_geometry(80, 5.0);
  const Sinogram zero(g, Aperture::none);
  CHECK(lambda_recon_point(zero, k, {1, 1}) == 0.0);

  const Phantom a({Disk{{2, 1.5}, 1.0, 1.0}}), b({Rect{{-1, -2}, 0.7, 0.3, 0.5}});
  auto sa = sample_sinogram(a, g, Aperture::none);
  const auto sb = sample_sinogram(b, g, Aperture::none);
  const auto sab = sample_sinogram(phantom(), g, Aperture::none);
  const Point x{0.3, -1.2};
  const double fa = lambda_recon_point(sa, k, x), fb = lambda_recon_point(sb, k, x);
  CHECK(lambda_recon_point(sab, k, x) == doctest::Approx(fa + fb).epsilon(1e-12));
  sa += sb;
  CHECK(lambda_recon_point(sa, k, x) == doctest::Approx(fa + fb).epsilon(1e-12));
}

TEST_CASE("grid and ROI-only evaluation agree") {
  const Kernel k = Kernel::standard();
  const auto g = build_geometry(120, 5.0);
  const auto s = sample_sinogram(phantom(), g, Aperture::box);
  const auto full = lambda_recon_grid(s, k, 5.0, 41);
  ReconGrid part = ReconGrid::make(5.0, 41);
  const Box roi{-4, -1, -4, -2};
  lambda_recon_grid(s, k, part, &roi);
  for (int iy = 0; iy < 41; ++iy)
    for (int ix = 0; ix < 41; ++ix) {
      if (roi.contains({part.coord(ix), part.coord(iy)}))
        CHECK(part.at(ix, iy) == full.at(ix, iy));
      else
        CHECK(std::isnan(part.at(ix, iy)));
    }
  CHECK(full.at(20, 20) == doctest::Approx(lambda_recon_point(s, k, {0, 0})).epsilon(1e-14));
}

TEST_CASE("points outside the scanned disk are rejected") {
  const Kernel k = Kernel::standard();
  const auto g = build_geometry(64, 5.0);
  const auto s = sample_sinogram(phantom(), g, Aperture::none);
  CHECK_THROWS_AS(lambda_recon_point(s, k, {8, 0}), GeometryError);
  CHECK_NOTHROW(lambda_recon_point(s, k, {5, 5}));
  CHECK_THROWS_AS(ReconGrid::make(5.0, 1), ArgumentError);
}

TEST_CASE("edge profile prediction") {
  const Kernel k = Kernel::standard();
  const Phantom ph({Disk{{2, 1.5}, 1.0, 1.0}});
  const auto g = build_geometry(400, 5.0);
  const auto s = sample_sinogram(ph, g, Aperture::none);
  const auto site = edge_site(ph, 0, std::numbers::sqrt2 * pi);
  const auto prof = edge_profile(s, k, site, -4, 4, 9);
  REQUIRE(prof.h.size() == 9);
  CHECK(prof.h.front() == -4.0);
  CHECK(prof.h.back() == 4.0);
  // Predicted response is odd in h.
  for (int i = 0; i < 9; ++i) CHECK(prof.predicted[i] == doctest::Approx(-prof.predicted[8 - i]).epsilon(1e-12));
  const Phantom sq({Rect{{2, 1.5}, 0.5, 0.5, 1.0}});
  CHECK_THROWS_AS(edge_profile(s, k, edge_site(sq, 0, 0.5), -4, 4, 9), GeometryError);
  CHECK_THROWS_AS(edge_profile(s, k, site, 4, -4, 9), ArgumentError);
}
