#pragma once

#include <complex>
#include <memory>

#include "ltomo/poly.hpp"

namespace ltomo {

using cplx = std::complex<double>;

// Closed-form singular convolutions of a compactly supported piecewise
// polynomial g. Far from the support (beyond twice its half-width) they
// switch to moment expansions to avoid cancellation.

// (1/pi) PV int g(q) / (r - q) dq. Infinite at a knot where g jumps.
double hilbert(const PiecewisePoly& g, double r);
// int g(q) (r - q)_+^{-nu} dq and int g(q) (q - r)_+^{-nu} dq, 0 < nu < 1.
double power_left(const PiecewisePoly& g, double nu, double r);
double power_right(const PiecewisePoly& g, double nu, double r);

// The operator f -> F^{-1}[(d_plus lambda_+^gamma + d_minus lambda_-^gamma) F f]
// with F f(lambda) = int f(x) e^{i lambda x} dx, applied to a compactly
// supported piecewise polynomial f. Supported orders:
//   gamma in {0,1,2,3}: combination of f^(m) and H f^(m)
//   -1 < gamma < 3 non-integer: combination of the two one-sided Riesz
//     integrals of f^(k), k = floor(gamma) + 1
//   gamma = -1 with d_minus = -d_plus: i d_plus int_r^inf f
// f^(j) must be continuous for j below the derivative order used.
struct ConvolutionCache;

class SymbolOperator {
 public:
  SymbolOperator() = default;
  SymbolOperator(const PiecewisePoly& f, double gamma, cplx d_plus, cplx d_minus);

  cplx operator()(double r) const;

  double gamma() const { return gamma_; }
  // Output is compactly supported (pure local part).
  bool local() const { return kind_ == Kind::integer && y_ == cplx{}; }
  double support_lo() const { return f_.empty() ? 0.0 : f_.lower(); }
  double support_hi() const { return f_.empty() ? 0.0 : f_.upper(); }

 private:
  enum class Kind { integer, fractional, antiderivative };
  Kind kind_ = Kind::integer;
  double gamma_ = 0.0;
  double nu_ = 0.0;
  PiecewisePoly f_;
  std::shared_ptr<const ConvolutionCache> g_;  // f^(m) or f^(k) with its moments
  cplx x_{}, y_{};
  double total_ = 0.0;
};

}  // namespace ltomo
