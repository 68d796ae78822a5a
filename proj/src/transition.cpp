#include "ltomo/transition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ltomo/errors.hpp"

namespace ltomo {
namespace {

using std::numbers::pi;
const cplx I(0.0, 1.0);

bool is_integer(double x, double tol = 1e-12) { return std::abs(x - std::round(x)) < tol; }

cplx ipow(double e) { return std::exp(I * (e * pi / 2.0)); }  // i^e on the principal branch

double sphere_area(int m) {  // |S^m|
  return 2.0 * std::pow(pi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

// Adaptive quadratures with an absolute floor: the integrands here vanish
// identically on long stretches, where a purely relative test never stops.
// Shifting by a unit constant turns the relative tolerance into an absolute one.
template <class F>
cplx integrate_tanh_sinh(const F& f, double a, double b, double tol) {
  if (!(b > a)) return {};
  // Building the abscissa tables is costly; keep one per thread.
  static thread_local boost::math::quadrature::tanh_sinh<double> ts(10);
  const double w = b - a;
  const double re = ts.integrate([&](double x) { return f(x).real() + 1.0; }, a, b, tol) - w;
  const double im = ts.integrate([&](double x) { return f(x).imag() + 1.0; }, a, b, tol) - w;
  return {re, im};
}

template <class F>
cplx adaptive_gk(const F& f, double a, double b, double tol, int depth) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double ere = 0.0, eim = 0.0;
  const double re = GK::integrate([&](double x) { return f(x).real(); }, a, b, 0, 0.0, &ere);
  const double im = GK::integrate([&](double x) { return f(x).imag(); }, a, b, 0, 0.0, &eim);
  if (depth == 0 || std::max(ere, eim) <= tol * std::max(1.0, b - a)) return {re, im};
  const double m = 0.5 * (a + b);
  return adaptive_gk(f, a, m, 0.5 * tol, depth - 1) + adaptive_gk(f, m, b, 0.5 * tol, depth - 1);
}

template <class F>
cplx integrate_gk(const F& f, double a, double b, double tol) {
  if (!(b > a)) return {};
  return adaptive_gk(f, a, b, tol, 12);
}

}  // namespace

OperatorKind SingularityParams::op_kind() const {
  if (!is_integer(beta)) return OperatorKind::fractional;
  const int m = static_cast<int>(std::round(beta));
  const cplx y = (b_plus * ipow(m) - b_minus * ipow(-m)) / (2.0 * I);
  return std::abs(y) <= 1e-14 * (std::abs(b_plus) + std::abs(b_minus)) ? OperatorKind::local : OperatorKind::hilbert;
}

cplx SingularityParams::c1_plus() const {
  return std::tgamma(s) * b_plus * (a_plus * std::exp(I * (pi * s / 2)) + a_minus * std::exp(-I * (pi * s / 2)));
}
cplx SingularityParams::c1_minus() const {
  return std::tgamma(s) * b_minus * (a_plus * std::exp(-I * (pi * s / 2)) + a_minus * std::exp(I * (pi * s / 2)));
}
cplx SingularityParams::c2_plus() const { return std::exp(-I * ((n - 1) * pi / 4)) * c1_plus(); }
cplx SingularityParams::c2_minus() const { return std::exp(I * ((n - 1) * pi / 4)) * c1_minus(); }
cplx SingularityParams::c3_plus() const { return std::exp(-I * ((n - 3) * pi / 4)) * c1_plus(); }
cplx SingularityParams::c3_minus() const { return std::exp(I * ((n - 3) * pi / 4)) * c1_minus(); }

double SingularityParams::amplitude() const { return std::pow(2.0 * pi, 0.5 * (n - 1)) / std::sqrt(det_h); }

void SingularityParams::validate() const {
  if (n < 2) throw ArgumentError("singularity params: dimension must be >= 2");
  if (!(det_h > 0.0) || !std::isfinite(det_h)) throw ArgumentError("singularity params: |det H''| must be positive");
  if (!std::isfinite(beta) || !std::isfinite(s)) throw ArgumentError("singularity params: beta and s must be finite");
  if (kappa1() < -1e-12) throw UnsupportedParameters("singularity params: kappa1 = s - (n+1)/2 must be >= 0");
  if (kappa2() < -1e-12) throw UnsupportedParameters("singularity params: kappa2 = beta - s - (n-3)/2 must be >= 0");
  if (!(beta - s + 1.0 > 0.0)) throw UnsupportedParameters("singularity params: need beta - s + 1 > 0");
}

cplx omega(int n, double det_h, int side) {
  const double mag = std::sqrt(det_h) / std::pow(2.0 * pi, 0.5 * (n - 1));
  return mag * std::exp(I * (side * (n - 1) * pi / 4));
}

std::pair<cplx, cplx> data_coefficients(int n, double s, cplx v_plus, cplx v_minus, double det_h, int side) {
  if (side != 1 && side != -1) throw ArgumentError("data_coefficients: side must be +1 or -1");
  const cplx wa = omega(n, det_h, side), wb = omega(n, det_h, -side);
  const cplx va = side > 0 ? v_plus : v_minus, vb = side > 0 ? v_minus : v_plus;
  if (!is_integer(s)) {
    const double pre = 1.0 / (2.0 * std::sin(pi * s) * std::tgamma(s));
    const cplx ep = std::exp(I * ((s - 1) * pi / 2)), em = std::conj(ep);
    return {pre * (wa * va * ep + wb * vb * em), pre * (wa * va * em + wb * vb * ep)};
  }
  const int si = static_cast<int>(std::round(s));
  if (si < 1) throw UnsupportedParameters("data_coefficients: integer s must be >= 1");
  const double k1 = s - 0.5 * (n + 1);
  const cplx want = std::exp(-I * ((k1 + 1) * pi)) * va;
  if (std::abs(vb - want) > 1e-10 * std::max(1.0, std::abs(va)))
    throw UnsupportedParameters("data_coefficients: integer s needs v(-alpha) = e^{-i(kappa1+1)pi} v(alpha); logarithmic terms otherwise");
  const cplx C = wa * va / (2.0 * ipow(si) * std::tgamma(s));
  return {C, (si % 2 == 0 ? 1.0 : -1.0) * C};
}

SingularityParams params_from_symbol(int n, double beta, double s, cplx b_plus, cplx b_minus, cplx v_plus, cplx v_minus,
                                     double det_h) {
  SingularityParams p;
  p.n = n;
  p.beta = beta;
  p.s = s;
  p.b_plus = b_plus;
  p.b_minus = b_minus;
  p.v_plus = v_plus;
  p.v_minus = v_minus;
  p.det_h = det_h;
  p.validate();
  std::tie(p.a_plus, p.a_minus) = data_coefficients(n, s, v_plus, v_minus, det_h, 1);
  return p;
}

SingularityParams params_from_coefficients(int n, double beta, double s, cplx b_plus, cplx b_minus, cplx a_plus,
                                           cplx a_minus, double det_h) {
  SingularityParams p;
  p.n = n;
  p.beta = beta;
  p.s = s;
  p.b_plus = b_plus;
  p.b_minus = b_minus;
  p.a_plus = a_plus;
  p.a_minus = a_minus;
  p.det_h = det_h;
  p.validate();
  return p;
}

SingularityParams lt_params(double R) {
  const cplx v(0.0, 2.0 * pi);
  return params_from_symbol(2, 2.0, 1.5, 1.0 / (4 * pi), 1.0 / (4 * pi), v, -v, R);
}

SingularityParams exact3d_params(double det_h) {
  const cplx v(0.0, 4.0 * pi * pi);
  return params_from_symbol(3, 2.0, 2.0, 1.0 / (8 * pi * pi), 1.0 / (8 * pi * pi), v, -v, det_h);
}

RatioCheck ratio_condition(const SingularityParams& p) {
  RatioCheck r;
  r.required = std::abs(p.kappa2()) < 1e-12;
  r.expected = std::exp(-I * ((p.beta - p.s) * pi));
  const cplx cp = p.c1_plus(), cm = p.c1_minus();
  if (std::abs(cp) == 0.0) {
    r.ratio = std::abs(cm) == 0.0 ? r.expected : cplx(INFINITY, 0.0);
  } else {
    r.ratio = cm / cp;
  }
  r.defect = std::abs(r.ratio - r.expected);
  r.holds = r.defect < 1e-9;
  return r;
}

CtbSpec CtbSpec::from_params(const SingularityParams& p) {
  p.validate();
  CtbSpec c;
  c.params = p;
  c.mu_plus = p.amplitude() * p.c2_plus();
  c.mu_minus = p.amplitude() * p.c2_minus();
  c.ratio = ratio_condition(p);
  return c;
}

CtbSpec CtbSpec::from_mu(const SingularityParams& p, cplx mu_plus, cplx mu_minus) {
  CtbSpec c;
  c.params = p;
  c.mu_plus = mu_plus;
  c.mu_minus = mu_minus;
  c.ratio.required = std::abs(p.kappa2()) < 1e-12;
  c.ratio.expected = -1.0;
  c.ratio.ratio = std::abs(mu_plus) == 0.0 ? (std::abs(mu_minus) == 0.0 ? cplx(-1.0) : cplx(INFINITY)) : mu_minus / mu_plus;
  c.ratio.defect = std::abs(c.ratio.ratio + 1.0);
  c.ratio.holds = c.ratio.defect < 1e-9;
  return c;
}

namespace {
void require_ctb(const CtbSpec& spec) {
  const double k2 = spec.params.kappa2();
  if (k2 < -1e-12) throw UnsupportedParameters("CTB: kappa2 must be >= 0");
  if (std::abs(k2) < 1e-12 && !spec.ratio.holds)
    throw UnsupportedParameters("CTB: kappa2 = 0 requires the coefficient ratio condition (mu_- = -mu_+)");
}
}  // namespace

cplx ctb_mu(const CtbSpec& spec, double t, Normalization norm) {
  require_ctb(spec);
  const double k2 = spec.params.kappa2();
  if (std::abs(k2) < 1e-12) {
    if (norm == Normalization::two_sided) return -I * spec.mu_plus * (t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0));
    if (t < 0) return 2.0 * I * spec.mu_plus;
    return t > 0 ? cplx{} : I * spec.mu_plus;
  }
  if (t == 0.0) throw ArgumentError("ctb_mu: t must be nonzero when kappa2 > 0");
  const cplx q2 = std::exp(-I * (k2 * pi / 2));
  const double a = std::pow(std::abs(t), -k2);
  const cplx rm = t > 0 ? cplx(a) : std::exp(I * (k2 * pi)) * a;   // (t - i0)^{-k2}
  const cplx rp = t > 0 ? cplx(a) : std::exp(-I * (k2 * pi)) * a;  // (t + i0)^{-k2}
  return std::tgamma(k2) / pi * (q2 * spec.mu_plus * rm + spec.mu_minus / q2 * rp);
}

cplx ctb_delta_coefficient(const CtbSpec& spec) {
  require_ctb(spec);
  const double k2 = spec.params.kappa2();
  if (k2 < 0.5 || !is_integer(k2)) return {};
  const int m = static_cast<int>(std::round(k2));
  const cplx q2 = std::exp(-I * (k2 * pi / 2));
  const double sign = (m - 1) % 2 == 0 ? 1.0 : -1.0;
  return I * sign * (q2 * spec.mu_plus - spec.mu_minus / q2);
}

DtbEvaluator::DtbEvaluator(const CtbSpec& spec, const Kernel& k, Aperture aperture) {
  require_ctb(spec);
  const PiecewisePoly& f = aperture == Aperture::box ? k.box_averaged() : k.centered(0);
  const double k2 = spec.params.kappa2();
  const double gamma = std::abs(k2) < 1e-12 ? -1.0 : k2 - 1.0;
  cplx dp = 2.0 * spec.mu_plus, dm = 2.0 * spec.mu_minus;
  if (gamma == -1.0) dm = -dp;  // ratio already checked
  op_ = SymbolOperator(f, gamma, dp, dm);
}

cplx dtb(const CtbSpec& spec, const Kernel& k, double h, Aperture aperture) { return DtbEvaluator(spec, k, aperture)(h); }

double lt_edge_response(const Kernel& k, double jump, double h, Aperture aperture) {
  if (jump == 0.0) return 0.0;
  return jump * hilbert(aperture == Aperture::box ? k.box_averaged() : k.centered(0), h);
}

PsiEvaluator::PsiEvaluator(const SingularityParams& p, const Kernel& k) : params_(p) {
  p.validate();
  const PiecewisePoly& phi = k.centered(0);
  b_op_ = SymbolOperator(phi, p.beta, p.b_plus, p.b_minus);
  psi_op_ = SymbolOperator(phi, p.beta - p.s, p.c1_plus(), p.c1_minus());
  lo_ = phi.lower();
  hi_ = phi.upper();
  local_ = b_op_.local();
}

cplx PsiEvaluator::data_profile(double u) const {
  if (u > 0) return params_.a_plus * std::pow(u, params_.s - 1.0);
  if (u < 0) return params_.a_minus * std::pow(-u, params_.s - 1.0);
  return {};
}

cplx PsiEvaluator::tail(double t, double p, long j_edge, int dir) const {
  // Euler-Maclaurin for sum_{j > j_edge} (dir = +1) or sum_{j < j_edge} (dir = -1).
  auto F = [&](double x) { return filtered_kernel(t - x) * data_profile(x - p); };
  const double x0 = static_cast<double>(j_edge);
  static thread_local boost::math::quadrature::exp_sinh<double> es;
  auto G = [&](double y) { return F(x0 + dir * y); };
  const double re = es.integrate([&](double y) { return G(y).real(); }, 0.0, INFINITY, 1e-12);
  const double im = es.integrate([&](double y) { return G(y).imag(); }, 0.0, INFINITY, 1e-12);
  const double hstep = 1e-3;
  const cplx d1 = (F(x0 + hstep) - F(x0 - hstep)) / (2 * hstep);
  return cplx(re, im) - 0.5 * F(x0) - static_cast<double>(dir) * d1 / 12.0;
}

cplx PsiEvaluator::psi(double t, double p) const {
  if (local_) {
    const long jlo = static_cast<long>(std::ceil(t - hi_)), jhi = static_cast<long>(std::floor(t - lo_));
    cplx s{};
    for (long j = jlo; j <= jhi; ++j) {
      const double jd = static_cast<double>(j);
      const cplx a = data_profile(jd - p);
      if (a != cplx{}) s += filtered_kernel(t - jd) * a;
    }
    return s;
  }
  constexpr long W = 64;
  const long jlo = static_cast<long>(std::floor(std::min(t - hi_, p))) - W;
  const long jhi = static_cast<long>(std::ceil(std::max(t - lo_, p))) + W;
  cplx s{};
  for (long j = jlo; j <= jhi; ++j) {
    const double jd = static_cast<double>(j);
    s += filtered_kernel(t - jd) * data_profile(jd - p);
  }
  return s + tail(t, p, jhi, +1) + tail(t, p, jlo, -1);
}

cplx psi(const SingularityParams& p, const Kernel& k, double t, double pp) { return PsiEvaluator(p, k).psi(t, pp); }

cplx capital_psi(const SingularityParams& p, const Kernel& k, double t) { return PsiEvaluator(p, k).capital_psi(t); }

cplx dtb_double_integral_oracle(const SingularityParams& p, const Kernel& k, double h, double A) {
  return dtb_double_integral_oracle(PsiEvaluator(p, k), h, A);
}

cplx dtb_double_integral_oracle(const PsiEvaluator& ev, double h, double A) {
  if (!(A > 0.0)) throw ArgumentError("oracle: truncation A must be positive");
  const SingularityParams& p = ev.params();
  const int n = p.n;
  const double pref = std::pow(2.0, 0.5 * (n + 1)) * sphere_area(n - 2) / std::sqrt(p.det_h);

  auto frac = [](double x) { return x - std::floor(x); };
  auto inner = [&](double t) {
    std::vector<double> cuts{0.0, 1.0, frac(-h), frac(-h + 0.5), frac(t * t)};
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return std::abs(a - b) < 1e-14; }), cuts.end());
    cplx s{};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      s += integrate_tanh_sinh([&](double r) { return ev.psi(h + r, r - t * t); }, cuts[i], cuts[i + 1], 1e-10);
    return s * std::pow(t, n - 2);
  };

  // Split where h + t^2 crosses a half-integer or integer (kernel knots).
  std::vector<double> tc{0.0, A};
  for (int m = -16; m <= 16; ++m) {
    const double v = 0.5 * m - h;
    if (v > 0 && std::sqrt(v) < A) tc.push_back(std::sqrt(v));
  }
  for (double t = 8.0; t < A; t *= 2) tc.push_back(t);
  std::sort(tc.begin(), tc.end());
  cplx total{};
  for (std::size_t i = 0; i + 1 < tc.size(); ++i) total += integrate_gk(inner, tc[i], tc[i + 1], 1e-10);
  return pref * total;
}

cplx f0_singularity(const SingularityParams& p, double pp) {
  const double k1 = p.kappa1();
  const int n = p.n;
  const double pw = std::pow(2.0 * pi, n - 1);
  if (!is_integer(k1)) {
    const cplx q1 = std::exp(I * (k1 * pi / 2));
    const double pre = -1.0 / (2.0 * pw * std::sin(pi * k1) * std::tgamma(k1 + 1));
    const double pplus = pp > 0 ? std::pow(pp, k1) : 0.0, pminus = pp < 0 ? std::pow(-pp, k1) : 0.0;
    return pre * (pplus * (q1 * p.v_plus + p.v_minus / q1) + pminus * (q1 * p.v_minus + p.v_plus / q1));
  }
  const int m = static_cast<int>(std::round(k1));
  const cplx want = (m % 2 == 0 ? -1.0 : 1.0) * p.v_plus;
  if (std::abs(p.v_minus - want) > 1e-10 * std::max(1.0, std::abs(p.v_plus)))
    throw UnsupportedParameters("f0_singularity: integer kappa1 needs v_- = (-1)^{kappa1+1} v_+; logarithmic terms otherwise");
  const double sg = pp > 0 ? 1.0 : (pp < 0 ? -1.0 : 0.0);
  return p.v_plus / (2.0 * pw * ipow(m + 1) * std::tgamma(m + 1.0)) * std::pow(pp, m) * sg;
}

cplx fhat0_singularity(const SingularityParams& p, int side, double pp) {
  std::pair<cplx, cplx> a;
  if (p.v_plus == cplx{} && p.v_minus == cplx{}) {
    if (side != 1 && side != -1) throw ArgumentError("fhat0_singularity: side must be +1 or -1");
    a = side > 0 ? std::make_pair(p.a_plus, p.a_minus) : std::make_pair(p.a_minus, p.a_plus);
  } else {
    a = data_coefficients(p.n, p.s, p.v_plus, p.v_minus, p.det_h, side);
  }
  if (pp > 0) return a.first * std::pow(pp, p.s - 1);
  if (pp < 0) return a.second * std::pow(-pp, p.s - 1);
  return {};
}

}  // namespace ltomo
