#include "ltomo/poly.hpp"

#include <algorithm>
#include <cmath>

#include "ltomo/errors.hpp"

namespace ltomo {

std::vector<double> taylor_shift(std::span<const double> c, double shift) {
  // Repeated synthetic division; exact for shift == 0.
  std::vector<double> d(c.begin(), c.end());
  const std::size_t n = d.size();
  if (shift == 0.0) return d;
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t i = n - 1; i > k; --i) d[i - 1] += shift * d[i];
  return d;
}

PiecewisePoly::PiecewisePoly(std::vector<double> knots, std::vector<std::vector<double>> coeffs)
    : knots_(std::move(knots)), coeffs_(std::move(coeffs)) {
  if (knots_.size() != coeffs_.size() + 1) throw ArgumentError("PiecewisePoly: need one more knot than pieces");
  if (!std::is_sorted(knots_.begin(), knots_.end())) throw ArgumentError("PiecewisePoly: knots must be sorted");
}

int PiecewisePoly::degree() const {
  int d = 0;
  for (const auto& c : coeffs_) d = std::max(d, static_cast<int>(c.size()) - 1);
  return d;
}

long PiecewisePoly::piece_index(double x) const {
  if (coeffs_.empty() || !(x >= knots_.front()) || x >= knots_.back()) return -1;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  return static_cast<long>(it - knots_.begin()) - 1;
}

double PiecewisePoly::operator()(double x) const {
  long i = piece_index(x);
  if (i < 0) return 0.0;
  return horner(coeffs_[i], x - knots_[i]);
}

PiecewisePoly PiecewisePoly::derivative(int order) const {
  if (order < 0) throw ArgumentError("derivative order must be >= 0");
  std::vector<std::vector<double>> out = coeffs_;
  for (int o = 0; o < order; ++o) {
    for (auto& c : out) {
      if (c.size() <= 1) {
        c.assign(1, 0.0);
        continue;
      }
      for (std::size_t l = 1; l < c.size(); ++l) c[l - 1] = static_cast<double>(l) * c[l];
      c.pop_back();
    }
  }
  return PiecewisePoly(knots_, std::move(out));
}

PiecewisePoly PiecewisePoly::antiderivative() const {
  std::vector<std::vector<double>> out;
  out.reserve(coeffs_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& c = coeffs_[i];
    std::vector<double> a(c.size() + 1);
    a[0] = acc;
    for (std::size_t l = 0; l < c.size(); ++l) a[l + 1] = c[l] / static_cast<double>(l + 1);
    acc = horner(a, knots_[i + 1] - knots_[i]);
    out.push_back(std::move(a));
  }
  return PiecewisePoly(knots_, std::move(out));
}

PiecewisePoly PiecewisePoly::translated(double dx) const {
  std::vector<double> k = knots_;
  for (double& v : k) v -= dx;
  return PiecewisePoly(std::move(k), coeffs_);
}

PiecewisePoly PiecewisePoly::scaled(double c) const {
  auto out = coeffs_;
  for (auto& v : out)
    for (double& x : v) x *= c;
  return PiecewisePoly(knots_, std::move(out));
}

std::vector<double> PiecewisePoly::taylor(std::size_t piece, double at) const {
  return taylor_shift(coeffs_[piece], at - knots_[piece]);
}

double PiecewisePoly::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& c = coeffs_[i];
    const double w = knots_[i + 1] - knots_[i];
    double wp = w;
    for (std::size_t l = 0; l < c.size(); ++l, wp *= w) s += c[l] * wp / static_cast<double>(l + 1);
  }
  return s;
}

double PiecewisePoly::integral_from(double a) const {
  if (coeffs_.empty() || a >= upper()) return 0.0;
  if (a <= lower()) return integral();
  const long i0 = piece_index(a);
  double s = 0.0;
  for (std::size_t i = static_cast<std::size_t>(i0); i < coeffs_.size(); ++i) {
    const auto& c = coeffs_[i];
    const double lo = (static_cast<long>(i) == i0) ? a - knots_[i] : 0.0;
    const double hi = knots_[i + 1] - knots_[i];
    double plo = lo, phi = hi;
    for (std::size_t l = 0; l < c.size(); ++l, plo *= lo, phi *= hi)
      s += c[l] * (phi - plo) / static_cast<double>(l + 1);
  }
  return s;
}

double PiecewisePoly::moment(int m, double about) const {
  // int (x-about)^m f(x) dx, piece by piece in the shifted variable.
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    auto c = taylor(i, about);
    const double a = knots_[i] - about, b = knots_[i + 1] - about;
    for (std::size_t l = 0; l < c.size(); ++l) {
      const int e = static_cast<int>(l) + m + 1;
      s += c[l] * (std::pow(b, e) - std::pow(a, e)) / e;
    }
  }
  return s;
}

PiecewisePoly PiecewisePoly::box_average(double w) const {
  if (!(w > 0.0)) throw ArgumentError("box width must be positive");
  if (coeffs_.empty()) return *this;
  const PiecewisePoly F = antiderivative();
  const double total = integral();

  std::vector<double> nk;
  for (double k : knots_) {
    nk.push_back(k - 0.5 * w);
    nk.push_back(k + 0.5 * w);
  }
  std::sort(nk.begin(), nk.end());
  nk.erase(std::unique(nk.begin(), nk.end(), [](double a, double b) { return std::abs(a - b) <= 1e-13 * (1 + std::abs(a)); }),
           nk.end());

  // F(x + off) on [u, next) as a polynomial in (x - u)
  auto local = [&](double u, double mid, double off) {
    const double y = mid + off;
    if (y < F.lower()) return std::vector<double>{0.0};
    if (y >= F.upper()) return std::vector<double>{total};
    return F.taylor(static_cast<std::size_t>(F.piece_index(y)), u + off);
  };

  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i + 1 < nk.size(); ++i) {
    const double u = nk[i], mid = 0.5 * (nk[i] + nk[i + 1]);
    auto hi = local(u, mid, 0.5 * w);
    auto lo = local(u, mid, -0.5 * w);
    std::vector<double> c(std::max(hi.size(), lo.size()), 0.0);
    for (std::size_t l = 0; l < hi.size(); ++l) c[l] += hi[l] / w;
    for (std::size_t l = 0; l < lo.size(); ++l) c[l] -= lo[l] / w;
    out.push_back(std::move(c));
  }
  return PiecewisePoly(std::move(nk), std::move(out));
}

}  // namespace ltomo
