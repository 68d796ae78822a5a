#include "ltomo/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "ltomo/errors.hpp"

namespace ltomo {
namespace {

RationalPoly add(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

// (c0 + c1*tau) * p
RationalPoly mul_linear(const RationalPoly& p, Rational c0, Rational c1) {
  RationalPoly r(p.size() + 1, Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    r[i] += c0 * p[i];
    r[i + 1] += c1 * p[i];
  }
  return r;
}

RationalPoly scale(RationalPoly p, Rational c) {
  for (auto& v : p) v *= c;
  return p;
}

bool is_zero(const RationalPoly& p) {
  return std::all_of(p.begin(), p.end(), [](const Rational& v) { return v == Rational(0); });
}

// p(1 - tau)
RationalPoly reflect(const RationalPoly& p) {
  RationalPoly r(p.size(), Rational(0));
  RationalPoly pw{Rational(1)};
  for (std::size_t l = 0; l < p.size(); ++l) {
    for (std::size_t i = 0; i < pw.size(); ++i) r[i] += p[l] * pw[i];
    pw = mul_linear(pw, Rational(1), Rational(-1));
  }
  return r;
}

std::vector<double> to_double(const RationalPoly& p) {
  std::vector<double> d;
  for (const auto& v : p) d.push_back(boost::rational_cast<double>(v));
  return d;
}

PiecewisePoly to_piecewise(const std::vector<RationalPoly>& pieces, long long lo) {
  std::vector<double> knots;
  std::vector<std::vector<double>> coeffs;
  for (std::size_t i = 0; i <= pieces.size(); ++i) knots.push_back(static_cast<double>(lo + static_cast<long long>(i)));
  for (const auto& p : pieces) coeffs.push_back(to_double(p));
  return PiecewisePoly(std::move(knots), std::move(coeffs));
}

struct BSplineTable {
  std::array<std::array<PiecewisePoly, 5>, 5> d;  // [degree][order]
  BSplineTable() {
    for (int n = 0; n <= 4; ++n) {
      auto base = to_piecewise(bspline_pieces(n), 0);
      for (int o = 0; o <= n; ++o) d[n][o] = base.derivative(o);
    }
  }
};

}  // namespace

std::vector<RationalPoly> bspline_pieces(int degree) {
  if (degree < 0 || degree > 12) throw ArgumentError("B-spline degree out of range");
  std::vector<RationalPoly> prev{RationalPoly{Rational(1)}};
  for (int n = 1; n <= degree; ++n) {
    std::vector<RationalPoly> cur;
    for (int i = 0; i <= n; ++i) {
      RationalPoly acc;
      if (i < n) acc = mul_linear(prev[i], Rational(i), Rational(1));
      if (i > 0) acc = add(acc, mul_linear(prev[i - 1], Rational(n + 1 - i), Rational(-1)));
      cur.push_back(scale(acc, Rational(1, n)));
    }
    prev = std::move(cur);
  }
  return prev;
}

double bspline_eval(int degree, int order, double t) {
  if (degree < 0 || degree > 4) throw ArgumentError("bspline_eval: degree must be in 0..4");
  if (order < 0 || order > degree) throw ArgumentError("bspline_eval: order must be in 0..degree");
  static const BSplineTable table;
  return table.d[degree][order](t);
}

Kernel::Kernel(std::vector<BSplineTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw ArgumentError("kernel needs at least one B-spline term");
  long long hi = 0;
  lo_ = terms_.front().shift;
  hi = terms_.front().shift + terms_.front().degree + 1;
  for (const auto& t : terms_) {
    if (t.degree < 0 || t.degree > 12) throw ArgumentError("kernel term degree out of range");
    lo_ = std::min<long long>(lo_, t.shift);
    hi = std::max<long long>(hi, t.shift + t.degree + 1);
  }
  pieces_.assign(static_cast<std::size_t>(hi - lo_), RationalPoly{Rational(0)});
  for (const auto& t : terms_) {
    auto b = bspline_pieces(t.degree);
    for (std::size_t i = 0; i < b.size(); ++i) {
      auto& dst = pieces_[static_cast<std::size_t>(t.shift - lo_) + i];
      dst = add(dst, scale(b[i], t.weight));
    }
  }
  const Rational total = exact_integral();
  if (total == Rational(0)) throw ArgumentError("kernel integrates to zero");
  Rational m1(0);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    const Rational base(lo_ + static_cast<long long>(i));
    for (std::size_t l = 0; l < p.size(); ++l) {
      const long long e = static_cast<long long>(l);
      m1 += p[l] * (base / Rational(e + 1) + Rational(1, e + 2));
    }
  }
  center_ = m1 / total;

  const PiecewisePoly base = to_piecewise(pieces_, lo_);
  for (int o = 0; o <= kMaxDerivative; ++o) {
    raw_[o] = base.derivative(o);
    centered_[o] = raw_[o].translated(center());
  }
  boxed_ = centered_[0].box_average(1.0);
}

Kernel Kernel::standard() {
  return Kernel({{Rational(1, 2), 3, 0},
                 {Rational(1, 2), 3, 2},
                 {Rational(4), 3, 1},
                 {Rational(-2), 4, 0},
                 {Rational(-2), 4, 1}});
}

double Kernel::center() const { return boost::rational_cast<double>(center_); }

double Kernel::eval(int order, double t, bool recentered) const {
  if (order < 0 || order > kMaxDerivative) throw ArgumentError("kernel_eval: order must be in 0..3");
  return recentered ? centered_[order](t) : raw_[order](t);
}

const PiecewisePoly& Kernel::raw(int order) const {
  if (order < 0 || order > kMaxDerivative) throw ArgumentError("kernel derivative order out of range");
  return raw_[order];
}

const PiecewisePoly& Kernel::centered(int order) const {
  if (order < 0 || order > kMaxDerivative) throw ArgumentError("kernel derivative order out of range");
  return centered_[order];
}

Rational Kernel::exact_integral() const {
  Rational s(0);
  for (const auto& p : pieces_)
    for (std::size_t l = 0; l < p.size(); ++l) s += p[l] / Rational(static_cast<long long>(l + 1));
  return s;
}

bool Kernel::exactly_even() const {
  const long long n = static_cast<long long>(pieces_.size());
  if (center_ * 2 != Rational(2 * lo_ + n)) return false;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    auto diff = add(pieces_[i], scale(reflect(pieces_[pieces_.size() - 1 - i]), Rational(-1)));
    if (!is_zero(diff)) return false;
  }
  return true;
}

bool Kernel::reproduces_exactly(int m) const {
  if (m < 0) throw ArgumentError("reproduction degree must be >= 0");
  if (center_.denominator() != 1) return false;
  const long long c = center_.numerator();
  RationalPoly sum{Rational(0)};
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    Rational jm(1);
    const Rational j(c - lo_ - static_cast<long long>(i));
    for (int e = 0; e < m; ++e) jm *= j;
    sum = add(sum, scale(pieces_[i], jm));
  }
  RationalPoly target(static_cast<std::size_t>(m) + 1, Rational(0));
  target[static_cast<std::size_t>(m)] = 1;
  return is_zero(add(sum, scale(target, Rational(-1))));
}

double exactness_defect(const Kernel& k, int m, std::span<const double> grid) {
  if (m < 0) throw ArgumentError("exactness_defect: m must be >= 0");
  if (grid.empty()) throw ArgumentError("exactness_defect: empty grid");
  const PiecewisePoly& phi = k.centered(0);
  double worst = 0.0;
  for (double t : grid) {
    const long jlo = static_cast<long>(std::floor(t - phi.upper()));
    const long jhi = static_cast<long>(std::ceil(t - phi.lower()));
    double s = 0.0;
    for (long j = jlo; j <= jhi; ++j) s += std::pow(static_cast<double>(j), m) * phi(t - static_cast<double>(j));
    worst = std::max(worst, std::abs(s - std::pow(t, m)));
  }
  return worst;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw ArgumentError("uniform_grid: bad range");
  const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
  return g;
}

KernelCertificate certify(const Kernel& k, double tol) {
  KernelCertificate c;
  const auto grid = uniform_grid(-5.0, 5.0, 1e-3);
  bool ik1 = true;
  for (int m = 0; m < 3; ++m) {
    c.exactness[m] = exactness_defect(k, m, grid);
    c.exact_rational[m] = k.reproduces_exactly(m);
    ik1 = ik1 && c.exactness[m] < tol && c.exact_rational[m];
  }
  c.ik1 = ik1;

  c.support_lo = k.centered(0).lower();
  c.support_hi = k.centered(0).upper();
  c.ik2 = std::isfinite(c.support_lo) && std::isfinite(c.support_hi) && k.centered(0)(c.support_hi + 0.5) == 0.0 &&
          k.centered(0)(c.support_lo - 0.5) == 0.0;

  bool bounded = true;
  for (int o = 0; o <= 3; ++o) {
    const auto& d = k.centered(o);
    double sup = 0.0;
    for (double t = d.lower(); t <= d.upper(); t += 1e-3) sup = std::max(sup, std::abs(d(t)));
    c.sup_derivative[o] = sup;
    bounded = bounded && std::isfinite(sup);
  }
  c.ik3 = bounded;

  c.integral = k.exact_integral();
  c.integral_error = std::abs(k.centered(0).integral() - 1.0);
  c.ik4 = c.integral == Rational(1) && c.integral_error < 1e-14;

  double ev = 0.0;
  for (double t : grid) ev = std::max(ev, std::abs(k.eval(0, t) - k.eval(0, -t)));
  c.evenness_defect = ev;
  c.exactly_even = k.exactly_even();
  return c;
}

}  // namespace ltomo
