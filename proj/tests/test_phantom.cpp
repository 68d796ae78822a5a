#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ltomo/errors.hpp"
#include "ltomo/phantom.hpp"

using namespace ltomo;
using std::numbers::pi;

TEST_CASE("disk chord lengths") {
  const Phantom ph({Disk{{0, 0}, 1.0, 1.0}});
  CHECK(radon(ph, 0.3, 0.0) == doctest::Approx(2.0));
  CHECK(radon(ph, 1.1, 1.0) == 0.0);
  CHECK(radon(ph, 2.0, 0.5) == doctest::Approx(std::sqrt(3.0)));
  CHECK(radon(ph, 2.0, -1.5) == 0.0);
}

TEST_CASE("rect line integrals") {
  const Phantom ph({Rect{{2, 1.5}, 0.5, 0.5, 2.0}});
  CHECK(radon(ph, 0.0, 2.2) == doctest::Approx(2.0));
  CHECK(radon(ph, pi / 2, 1.2) == doctest::Approx(2.0));
  // Diagonal through the center: chord sqrt(2) at density 2.
  const double c = std::cos(pi / 4) * 2 + std::sin(pi / 4) * 1.5;
  CHECK(radon(ph, pi / 4, c) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("radon data are even under (alpha, p) -> (alpha + pi, -p)") {
  const Phantom ph({Disk{{2, 1.5}, 1.0, 1.0}, Rect{{-1, -2}, 0.7, 0.3, 0.5}});
  for (double a = 0.05; a < 2 * pi; a += 0.37)
    for (double p = -4; p <= 4; p += 0.41) CHECK(radon(ph, a, p) == doctest::Approx(radon(ph, a + pi, -p)).epsilon(1e-12));
}

TEST_CASE("integrating radon over p recovers the mass") {
  const Phantom ph({Disk{{2, 1.5}, 1.0, 1.0}, Rect{{-1, -2}, 0.7, 0.3, 0.5}});
  CHECK(ph.mass() == doctest::Approx(pi + 0.5 * 4 * 0.7 * 0.3));
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  for (double a : {0.2, 1.3, 2.9}) {
    const double m = GK::integrate([&](double p) { return radon(ph, a, p); }, -8.0, 8.0, 20, 1e-11);
    CHECK(m == doctest::Approx(ph.mass()).epsilon(1e-8));
  }
}

TEST_CASE("pixel average matches quadrature") {
  const Phantom ph({Disk{{2, 1.5}, 1.0, 1.0}, Rect{{-1, -2}, 0.7, 0.3, 0.5}});
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double eps = 0.05;
  for (double a : {0.2, 1.3, 2.9})
    for (double p = -3; p <= 3.5; p += 0.173) {
      const double q = GK::integrate([&](double u) { return radon(ph, a, u); }, p - eps / 2, p + eps / 2, 15, 1e-12) / eps;
      CHECK(radon_pixel_avg(ph, a, p, eps) == doctest::Approx(q).epsilon(1e-9));
    }
}

TEST_CASE("point values") {
  const Phantom ph({Disk{{0, 0}, 1.0, 1.5}, Rect{{0.5, 0}, 0.2, 0.2, 1.0}});
  CHECK(ph.value({0, 0}) == 1.5);
  CHECK(ph.value({0.5, 0.1}) == 2.5);
  CHECK(ph.value({2, 2}) == 0.0);
}

TEST_CASE("edge sites") {
  const Phantom ph({Disk{{2, 1.5}, 1.0, 1.0}, Rect{{2, 1.5}, 0.5, 0.5, 1.0}});
  const auto d = edge_site(ph, 0, 0.3);
  CHECK(d.x0.x == doctest::Approx(2 + std::cos(0.3)));
  CHECK(d.R == 1.0);
  CHECK(d.jump == -1.0);
  const auto r = edge_site(ph, 1, 0.5);
  CHECK(r.x0.x == doctest::Approx(2.5));
  CHECK(r.x0.y == doctest::Approx(1.5));
  CHECK(std::isinf(r.R));
  const auto top = edge_site(ph, 1, 1.25);
  CHECK(top.theta0 == doctest::Approx(pi / 2));
  CHECK(top.x0.y == doctest::Approx(2.0));
  CHECK_THROWS_AS(edge_site(ph, 1, 2.0), GeometryError);
  CHECK_THROWS_AS(edge_site(ph, 1, 4.5), ArgumentError);
  CHECK_THROWS_AS(edge_site(ph, 5, 0.1), ArgumentError);
}

TEST_CASE("invalid shapes are rejected") {
  CHECK_THROWS_AS(Phantom({Disk{{0, 0}, -1.0, 1.0}}), ArgumentError);
  CHECK_THROWS_AS(Phantom({Rect{{0, 0}, 0.0, 1.0, 1.0}}), ArgumentError);
}
