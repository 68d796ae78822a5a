#include <doctest.h>

#include <cmath>

#include "ltomo/errors.hpp"
#include "ltomo/kernel.hpp"

using namespace ltomo;

namespace {

// Cox-de Boor recursion for the cardinal B-spline on [0, d+1].
double cox_de_boor(int d, double t) {
  if (d == 0) return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0;
  return (t * cox_de_boor(d - 1, t) + (d + 1 - t) * cox_de_boor(d - 1, t - 1)) / d;
}

double phi_oracle(double t) {
  return 0.5 * (cox_de_boor(3, t) + cox_de_boor(3, t - 2)) + 4 * cox_de_boor(3, t - 1) -
         2 * (cox_de_boor(4, t) + cox_de_boor(4, t - 1));
}

}  // namespace

TEST_CASE("exact B-spline pieces match Cox-de Boor") {
  for (int d = 0; d <= 4; ++d)
    for (double t = -0.5; t < d + 1.5; t += 0.0371) CHECK(bspline_eval(d, 0, t) == doctest::Approx(cox_de_boor(d, t)).epsilon(1e-13));
  CHECK(bspline_eval(3, 0, 1.0) == doctest::Approx(1.0 / 6));
  CHECK(bspline_eval(3, 0, 2.0) == doctest::Approx(2.0 / 3));
  CHECK(bspline_eval(4, 0, 2.0) == doctest::Approx(11.0 / 24));
  CHECK(bspline_eval(4, 0, 3.0) == doctest::Approx(11.0 / 24));
  CHECK(bspline_pieces(3)[1][0] == Rational(1, 6));
}

TEST_CASE("B-spline derivatives agree with finite differences") {
  const double h = 1e-5;
  for (double t : {0.3, 1.7, 2.5, 3.2}) {
    const double fd = (bspline_eval(4, 0, t + h) - bspline_eval(4, 0, t - h)) / (2 * h);
    CHECK(bspline_eval(4, 1, t) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("standard kernel against the recursion oracle") {
  const Kernel k = Kernel::standard();
  CHECK(k.exact_center() == Rational(3));
  CHECK(k.center() == 3.0);
  CHECK(k.support_lo() == 0.0);
  CHECK(k.support_hi() == 6.0);
  for (double t = -4.0; t <= 4.0; t += 0.0173) CHECK(k.eval(0, t) == doctest::Approx(phi_oracle(t + 3)).epsilon(1e-13));
  CHECK(k.eval(0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(k.eval(0, 3.5) == 0.0);
  CHECK(k.eval(2, 0.4, false) == doctest::Approx(k.eval(2, -2.6)).epsilon(1e-14));
}

TEST_CASE("kernel axioms hold exactly and on the grid") {
  const Kernel k = Kernel::standard();
  CHECK(k.exact_integral() == Rational(1));
  CHECK(k.exactly_even());
  for (int m = 0; m <= 2; ++m) CHECK(k.reproduces_exactly(m));
  // Even kernels get the next odd degree for free.
  CHECK(k.reproduces_exactly(3));
  CHECK_FALSE(k.reproduces_exactly(4));
  const auto grid = uniform_grid(-5, 5, 1e-3);
  CHECK(grid.size() == 10001);
  for (int m = 0; m <= 2; ++m) CHECK(exactness_defect(k, m, grid) < 1e-10);
  const auto c = certify(k);
  CHECK(c.all());
  CHECK(c.integral_error < 1e-14);
  CHECK(c.evenness_defect < 1e-14);
}

TEST_CASE("evenness is a property of every derivative order") {
  const Kernel k = Kernel::standard();
  for (double t = 0.01; t < 3.2; t += 0.113) {
    CHECK(k.eval(0, t) == doctest::Approx(k.eval(0, -t)).epsilon(1e-14));
    CHECK(k.eval(1, t) == doctest::Approx(-k.eval(1, -t)).epsilon(1e-13));
    CHECK(k.eval(2, t) == doctest::Approx(k.eval(2, -t)).epsilon(1e-13));
  }
}

TEST_CASE("box-averaged kernel keeps unit mass") {
  const Kernel k = Kernel::standard();
  CHECK(k.box_averaged().integral() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k.box_averaged().lower() == -3.5);
}

TEST_CASE("kernel argument errors") {
  CHECK_THROWS_AS(bspline_pieces(-1), ArgumentError);
  CHECK_THROWS_AS(Kernel::standard().eval(4, 0.0), ArgumentError);
  CHECK_THROWS_AS(Kernel({}), ArgumentError);
  CHECK_THROWS_AS(uniform_grid(1, 0, 0.1), ArgumentError);
}
