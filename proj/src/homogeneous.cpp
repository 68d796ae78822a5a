#include "ltomo/homogeneous.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ltomo/errors.hpp"

namespace ltomo {

namespace {
constexpr int kMoments = 64;
}

// A piecewise polynomial together with its moments about the support center.
struct ConvolutionCache {
  PiecewisePoly g;
  double c = 0.0, R = 0.0, scale = 0.0;
  std::vector<double> M;

  explicit ConvolutionCache(PiecewisePoly poly) : g(std::move(poly)) {
    if (g.empty()) return;
    c = 0.5 * (g.lower() + g.upper());
    R = 0.5 * (g.upper() - g.lower());
    M.assign(kMoments, 0.0);
    for (std::size_t i = 0; i < g.num_pieces(); ++i) {
      auto t = g.taylor(i, c);
      const double a = g.knots()[i] - c, b = g.knots()[i + 1] - c;
      for (std::size_t l = 0; l < t.size(); ++l) {
        double pa = std::pow(a, static_cast<double>(l) + 1), pb = std::pow(b, static_cast<double>(l) + 1);
        for (int m = 0; m < kMoments; ++m) {
          M[m] += t[l] * (pb - pa) / static_cast<double>(l + m + 1);
          pa *= a;
          pb *= b;
        }
      }
      for (double v : g.coeffs(i)) scale = std::max(scale, std::abs(v));
    }
  }

  bool far(double r) const { return std::abs(r - c) > 2.0 * R; }

  double hilbert(double r) const {
    if (g.empty()) return 0.0;
    if (far(r)) {
      const double d = r - c;
      double s = 0.0, dp = d;
      for (int m = 0; m < kMoments; ++m, dp *= d) s += M[m] / dp;
      return s / std::numbers::pi;
    }
    const std::size_t np = g.num_pieces();
    const auto knots = g.knots();
    std::vector<double> logc(np + 1, 0.0);
    double s = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
      auto t = g.taylor(i, r);
      const double a = knots[i] - r, b = knots[i + 1] - r;
      double pa = a, pb = b;
      for (std::size_t l = 1; l < t.size(); ++l, pa *= a, pb *= b) s -= t[l] * (pb - pa) / static_cast<double>(l);
      logc[i] += t[0];
      logc[i + 1] -= t[0];
    }
    for (std::size_t i = 0; i <= np; ++i) {
      if (logc[i] == 0.0) continue;
      const double dist = std::abs(knots[i] - r);
      if (dist == 0.0) {
        if (std::abs(logc[i]) <= 1e-10 * std::max(scale, 1.0)) continue;
        return -logc[i] * std::numeric_limits<double>::infinity();
      }
      s += logc[i] * std::log(dist);
    }
    return s / std::numbers::pi;
  }

  // int g(q) (r-q)_+^{-nu} dq
  double left(double nu, double r) const {
    if (g.empty() || r <= g.lower()) return 0.0;
    if (far(r)) {
      const double d = r - c;
      double s = 0.0, coef = 1.0, dp = 1.0;
      for (int m = 0; m < kMoments; ++m) {
        s += coef * M[m] / dp;
        coef *= (nu + m) / (m + 1);
        dp *= d;
      }
      return std::pow(d, -nu) * s;
    }
    const auto knots = g.knots();
    double s = 0.0;
    for (std::size_t i = 0; i < g.num_pieces() && knots[i] < r; ++i) {
      auto t = g.taylor(i, r);
      const double ua = r - knots[i], ub = std::max(0.0, r - knots[i + 1]);
      double sign = 1.0;
      for (std::size_t l = 0; l < t.size(); ++l, sign = -sign) {
        const double e = static_cast<double>(l) + 1.0 - nu;
        s += sign * t[l] * (std::pow(ua, e) - (ub > 0.0 ? std::pow(ub, e) : 0.0)) / e;
      }
    }
    return s;
  }

  // int g(q) (q-r)_+^{-nu} dq
  double right(double nu, double r) const {
    if (g.empty() || r >= g.upper()) return 0.0;
    if (far(r)) {
      const double d = c - r;
      double s = 0.0, coef = 1.0, dp = 1.0;
      for (int m = 0; m < kMoments; ++m) {
        s += coef * M[m] / dp;
        coef *= -(nu + m) / (m + 1);
        dp *= d;
      }
      return std::pow(d, -nu) * s;
    }
    const auto knots = g.knots();
    double s = 0.0;
    for (std::size_t i = 0; i < g.num_pieces(); ++i) {
      if (knots[i + 1] <= r) continue;
      auto t = g.taylor(i, r);
      const double ub = knots[i + 1] - r, ua = std::max(0.0, knots[i] - r);
      for (std::size_t l = 0; l < t.size(); ++l) {
        const double e = static_cast<double>(l) + 1.0 - nu;
        s += t[l] * (std::pow(ub, e) - (ua > 0.0 ? std::pow(ua, e) : 0.0)) / e;
      }
    }
    return s;
  }
};

double hilbert(const PiecewisePoly& g, double r) { return ConvolutionCache(g).hilbert(r); }

double power_left(const PiecewisePoly& g, double nu, double r) {
  if (!(nu > 0.0 && nu < 1.0)) throw ArgumentError("power_left: nu must be in (0,1)");
  return ConvolutionCache(g).left(nu, r);
}

double power_right(const PiecewisePoly& g, double nu, double r) {
  if (!(nu > 0.0 && nu < 1.0)) throw ArgumentError("power_right: nu must be in (0,1)");
  return ConvolutionCache(g).right(nu, r);
}

namespace {

void require_continuous_below(const PiecewisePoly& f, int order) {
  for (int j = 0; j < order; ++j) {
    const PiecewisePoly d = f.derivative(j);
    double scale = 0.0;
    for (std::size_t i = 0; i < d.num_pieces(); ++i)
      for (double v : d.coeffs(i)) scale = std::max(scale, std::abs(v));
    const auto knots = d.knots();
    for (std::size_t i = 0; i <= d.num_pieces(); ++i) {
      const double left = i == 0 ? 0.0 : horner(d.coeffs(i - 1), knots[i] - knots[i - 1]);
      const double right = i == d.num_pieces() ? 0.0 : d.coeffs(i)[0];
      if (std::abs(left - right) > 1e-9 * std::max(scale, 1.0))
        throw UnsupportedParameters("symbol operator: derivative " + std::to_string(j) +
                                    " of the kernel is discontinuous; order too high for this kernel");
    }
  }
}

cplx ipow(int k) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

}  // namespace

SymbolOperator::SymbolOperator(const PiecewisePoly& f, double gamma, cplx d_plus, cplx d_minus) : gamma_(gamma), f_(f) {
  using std::numbers::pi;
  const cplx I(0.0, 1.0);
  if (!(gamma > -1.0 - 1e-12) || gamma > 3.0 + 1e-12)
    throw UnsupportedParameters("symbol operator: order must lie in [-1, 3]");
  const double rg = std::round(gamma);
  if (std::abs(gamma - rg) < 1e-12) {
    const int m = static_cast<int>(rg);
    if (m == -1) {
      if (std::abs(d_minus + d_plus) > 1e-12 * std::max(1.0, std::abs(d_plus)))
        throw UnsupportedParameters("symbol operator: order -1 needs d_minus = -d_plus (otherwise logarithmic terms appear)");
      kind_ = Kind::antiderivative;
      x_ = I * d_plus;
      total_ = f.integral();
      return;
    }
    kind_ = Kind::integer;
    require_continuous_below(f, m);
    g_ = std::make_shared<ConvolutionCache>(f.derivative(m));
    x_ = 0.5 * (d_plus * ipow(m) + d_minus * ipow(-m));
    y_ = (d_plus * ipow(m) - d_minus * ipow(-m)) / (2.0 * I);
    if (std::abs(y_) < 1e-15 * (std::abs(d_plus) + std::abs(d_minus))) y_ = 0.0;
    return;
  }
  kind_ = Kind::fractional;
  const int k = static_cast<int>(std::floor(gamma)) + 1;
  nu_ = gamma - std::floor(gamma);
  require_continuous_below(f, k);
  g_ = std::make_shared<ConvolutionCache>(f.derivative(k));
  const double G = std::tgamma(1.0 - nu_);
  const cplx ep = std::exp(I * ((1.0 - nu_) * pi / 2.0)), em = std::conj(ep);
  const cplx spp = ipow(-k) * ep * G;  // G+ symbol, lambda > 0
  const cplx smp = ipow(-k) * em * G;  // G- symbol, lambda > 0
  const cplx spm = ipow(k) * em * G;   // G+ symbol, lambda < 0
  const cplx smm = ipow(k) * ep * G;   // G- symbol, lambda < 0
  const cplx det = spp * smm - smp * spm;
  x_ = (d_plus * smm - smp * d_minus) / det;
  y_ = (spp * d_minus - spm * d_plus) / det;
}

cplx SymbolOperator::operator()(double r) const {
  switch (kind_) {
    case Kind::antiderivative:
      return x_ * f_.integral_from(r);
    case Kind::integer: {
      cplx v = x_ == 0.0 ? cplx{} : x_ * g_->g(r);
      if (y_ != 0.0) v += y_ * g_->hilbert(r);
      return v;
    }
    case Kind::fractional:
    default: {
      cplx v{};
      if (x_ != 0.0) v += x_ * g_->left(nu_, r);
      if (y_ != 0.0) v += y_ * g_->right(nu_, r);
      return v;
    }
  }
}

}  // namespace ltomo
