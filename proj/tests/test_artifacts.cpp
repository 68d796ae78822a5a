#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ltomo/errors.hpp"
#include "ltomo/experiments.hpp"

using namespace ltomo;
using std::numbers::pi;

namespace {

const Kernel& kern() {
  static const Kernel k = Kernel::standard();
  return k;
}

double rms(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

TEST_CASE("edge extension geometry") {
  const Phantom sq({Rect{{2, 1.5}, 0.5, 0.5, 1.0}});
  const auto line = edge_extension(sq, 0, 0, 0.25, 2.5, 10, 5.0);
  REQUIRE(line.points.size() == 20);
  for (std::size_t i = 0; i < line.points.size(); ++i) {
    CHECK(line.points[i].x == doctest::Approx(2.5));
    const double d = line.distance[i];
    CHECK(line.points[i].y == doctest::Approx(d > 0 ? 2.0 + d : 1.0 + d));
    CHECK(line.edges[i].b1 == doctest::Approx(1.0));
    CHECK(line.edges[i].b2 == doctest::Approx(2.0));
    CHECK(line.edges[i].b0 == doctest::Approx(line.points[i].y));
  }
  // Points beyond the field of view are dropped.
  CHECK(edge_extension(sq, 0, 0, 0.25, 6.0, 10, 5.0).points.size() < 20);
  const Phantom disk({Disk{{2, 1.5}, 1.0, 1.0}});
  CHECK_THROWS_AS(edge_extension(disk, 0, 0, 0.25, 2.5, 10, 5.0), ArgumentError);
  CHECK_THROWS_AS(edge_extension(sq, 0, 4, 0.25, 2.5, 10, 5.0), ArgumentError);
}

TEST_CASE("line artifact model follows the reconstruction") {
  const Phantom sq({Rect{{2, 1.5}, 0.5, 0.5, 1.0}});
  const auto g = build_geometry(3000, 5.0);
  const auto s = sample_sinogram(sq, g, Aperture::none);
  const auto line = edge_extension(sq, 0, 0, 0.5, 2.0, 4, 5.0);
  const auto measured = scaled_recon(s, kern(), line.points);
  std::vector<double> model, diff;
  for (std::size_t i = 0; i < line.points.size(); ++i) {
    model.push_back(line_artifact_model(kern(), g, line.edges[i], 0.0));
    diff.push_back(model.back() - measured[i]);
  }
  CHECK(rms(measured) > 0.02);
  CHECK(rms(diff) < 0.15 * rms(measured));
}

TEST_CASE("line artifact model argument checks") {
  const auto g = build_geometry(500, 5.0);
  CHECK_THROWS_AS(line_artifact_model(kern(), g, LineEdge{0, 2.5, 3, 1, 1, 1}, 0.0), GeometryError);
  CHECK_THROWS_AS(line_artifact_model(kern(), g, LineEdge{0, 2.5, 1.5, 1, 2, 1}, 0.0), ArgumentError);
  CHECK_THROWS_AS(line_artifact_model(kern(), build_geometry(500, 5.0, 1.0), LineEdge{0, 2.5, 3, 1, 2, 1}, 0.0), ArgumentError);
  CHECK(line_artifact_model(kern(), g, LineEdge{0, 2.5, 3, 1, 2, 0.0}, 0.0) == 0.0);
  // Linear in the density.
  const double a = line_artifact_model(kern(), g, LineEdge{0, 2.5, 3.1, 1, 2, 1.0}, 0.2);
  CHECK(line_artifact_model(kern(), g, LineEdge{0, 2.5, 3.1, 1, 2, -2.0}, 0.2) == doctest::Approx(-2 * a).epsilon(1e-12));
}

TEST_CASE("remote ripple model follows the reconstruction") {
  const Point c{2, 1.5};
  const double R = 1.0;
  const Phantom disk({Disk{c, R, 1.0}});
  const auto g = build_geometry(2000, 5.0);
  const auto s = sample_sinogram(disk, g, Aperture::none);

  // Every point off the disk sits on two tangent lines; both contribute.
  std::vector<Point> pts;
  std::vector<double> model;
  for (double x = -3.8; x < -1.0; x += 0.7)
    for (double y = -3.8; y < -2.0; y += 0.6) {
      const Point x0{x, y}, d = x0 - c, dp{-d.y, d.x};
      const double D2 = dot(d, d);
      double m = 0;
      for (int side : {-1, 1}) {
        const Point z0 = c + (R * R / D2) * d + (side * R * std::sqrt(D2 - R * R) / D2) * dp;
        const Point nrm = (1.0 / R) * (c - z0);
        m += remote_ripple_model(kern(), g, RemoteSite{x0, z0, std::atan2(nrm.y, nrm.x), -std::sqrt(2 * R) / pi, 0.25}, 0.0);
      }
      pts.push_back(x0);
      model.push_back(m);
    }
  const auto measured = scaled_recon(s, kern(), pts);
  std::vector<double> f, diff;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    f.push_back(measured[i] / g.eps());
    diff.push_back(model[i] - f.back());
  }
  CHECK(rms(f) > 0.3);
  CHECK(rms(diff) < 0.1 * rms(f));
}

TEST_CASE("remote ripple model edge cases") {
  const auto g = build_geometry(500, 5.0);
  RemoteSite site{{-3, -2}, {1.2, 1.0}, 0.3, 0.0, 0.25};
  site.z0 = site.x0 + 2.0 * direction_perp(site.theta0);
  CHECK(remote_ripple_model(kern(), g, site, 0.4) == 0.0);
  site.rho = 1.0;
  site.window = 0.0;
  CHECK_THROWS_AS(remote_ripple_model(kern(), g, site, 0.4), ArgumentError);
  site.window = 0.25;
  site.z0 = site.x0;
  CHECK_THROWS_AS(remote_ripple_model(kern(), g, site, 0.4), GeometryError);
}
