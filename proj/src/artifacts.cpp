#include <algorithm>
#include <cmath>
#include <numbers>

#include "ltomo/errors.hpp"
#include "ltomo/transition.hpp"

namespace ltomo {
namespace {

using std::numbers::pi;

double frac(double x) { return x - std::floor(x); }

// Chord length profile of the edge seen along a nearly parallel direction:
// full height for p <= min(t1,t2), linear ramp, zero past max(t1,t2).
double ramp(double p, double t1, double t2, double height) {
  const double lo = std::min(t1, t2), hi = std::max(t1, t2);
  if (p <= lo) return height;
  if (p >= hi) return 0.0;
  return height * (hi - p) / (hi - lo);
}

// Antiderivative of ramp, used for the unit box average.
double ramp_integral(double p, double t1, double t2, double height) {
  const double lo = std::min(t1, t2), hi = std::max(t1, t2);
  if (p <= lo) return height * p;
  const double w = hi - lo;
  if (p >= hi) return height * lo + 0.5 * height * w;
  const double u = p - lo;
  return height * lo + height * (u - 0.5 * u * u / w);
}

}  // namespace

double line_artifact_model(const Kernel& k, const ScanGeometry& g, const LineEdge& e, double h, Aperture aperture) {
  if (e.b1 == e.b2) throw GeometryError("line_artifact_model: degenerate edge (b1 == b2)");
  if (e.b0 >= std::min(e.b1, e.b2) && e.b0 <= std::max(e.b1, e.b2))
    throw ArgumentError("line_artifact_model: b0 must lie outside [b1, b2]");
  if (std::abs(g.q_alpha - std::round(g.q_alpha)) < 1e-12)
    throw ArgumentError("line_artifact_model: integer angular offset q_alpha is excluded");

  const PiecewisePoly& d2 = k.centered(2);
  const double klo = d2.lower(), khi = d2.upper();
  const double eps = g.eps();
  const double height = std::abs(e.b2 - e.b1) * e.density;
  double sum = 0.0;
  for (int kk = 0; kk < g.num_angles(); ++kk) {
    const double delta = std::remainder(g.alpha(kk) - e.theta, pi);
    const double sd = std::sin(delta), cd = std::cos(delta);
    const double t1 = (e.b1 - e.b0) * sd / eps, t2 = (e.b2 - e.b0) * sd / eps;
    const double hk = h * cd;
    // Outside the kernel reach the profile is constant and the second difference vanishes.
    const double reach = khi - klo + 2.0;
    if (std::min(t1, t2) > hk + reach || std::max(t1, t2) < hk - reach) continue;
    const double r = frac((e.H * cd + e.b0 * sd + g.p_max) / eps);
    const double x = hk + r;
    const long jlo = static_cast<long>(std::ceil(x - khi)), jhi = static_cast<long>(std::floor(x - klo));
    for (long j = jlo; j <= jhi; ++j) {
      const double u = static_cast<double>(j) - r;
      const double prof = aperture == Aperture::box
                              ? ramp_integral(u + 0.5, t1, t2, height) - ramp_integral(u - 0.5, t1, t2, height)
                              : ramp(u, t1, t2, height);
      sum += d2(x - static_cast<double>(j)) * prof;
    }
  }
  return -g.kappa / (4.0 * pi) * sum;
}

double remote_ripple_model(const Kernel& k, const ScanGeometry& g, const RemoteSite& site, double h) {
  const Point tperp = direction_perp(site.theta0);
  const double D = dot(tperp, site.z0 - site.x0);
  if (D == 0.0) throw GeometryError("remote_ripple_model: x0 coincides with the tangency point");
  if (!(site.window > 0.0)) throw ArgumentError("remote_ripple_model: window must be positive");
  const PsiEvaluator ev(lt_params(1.0), k);
  // The LT filtered kernel is -b phi''; divide by -b a_+ to get the bare sum of phi''(t-j) (j-p)_+^{1/2}.
  const double unit = -(ev.params().b_plus * ev.params().a_plus).real();
  const double eps = g.eps();
  double sum = 0.0;
  for (int kk = 0; kk < g.num_angles(); ++kk) {
    const double delta = std::remainder(g.alpha(kk) - site.theta0, pi);
    if (std::abs(delta) > site.window) continue;
    const Point a = direction(site.theta0 + delta);
    const double r = frac((dot(a, site.x0) + g.p_max) / eps);
    sum += ev.psi(h + r, r + D * delta / eps).real() / unit;
  }
  // Each antipodal group carries half of the half-range weight.
  return 0.5 * g.kappa * site.rho / std::sqrt(eps) * sum;
}

}  // namespace ltomo
