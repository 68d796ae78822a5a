#pragma once

#include <array>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "ltomo/poly.hpp"

namespace ltomo {

using Rational = boost::rational<long long>;
// Polynomial on one unit interval, local variable in [0,1), lowest degree first.
using RationalPoly = std::vector<Rational>;

// Exact pieces of the cardinal B-spline of the given degree on [0, degree+1].
std::vector<RationalPoly> bspline_pieces(int degree);

// Derivative of order `order` of B_degree at t.
double bspline_eval(int degree, int order, double t);

struct BSplineTerm {
  Rational weight;
  int degree;
  int shift;  // term is weight * B_degree(t - shift)
};

// Interpolation kernel built from a weighted sum of shifted cardinal B-splines.
// The raw kernel phi has integer knots; phi_c(t) = phi(t + center) is the
// recentered kernel with zero first moment.
class Kernel {
 public:
  static constexpr int kMaxDerivative = 3;

  explicit Kernel(std::vector<BSplineTerm> terms);

  // 0.5(B3(t)+B3(t-2)) + 4 B3(t-1) - 2(B4(t)+B4(t-1))
  static Kernel standard();

  double eval(int order, double t, bool recentered = true) const;

  const PiecewisePoly& raw(int order) const;
  const PiecewisePoly& centered(int order) const;
  // phi_c averaged over a unit box, i.e. phi_c * nu in sampling units.
  const PiecewisePoly& box_averaged() const { return boxed_; }

  double center() const;
  Rational exact_center() const { return center_; }
  double support_lo() const { return static_cast<double>(lo_); }
  double support_hi() const { return static_cast<double>(lo_ + static_cast<long long>(pieces_.size())); }
  int max_derivative() const { return kMaxDerivative; }

  const std::vector<RationalPoly>& exact_pieces() const { return pieces_; }
  Rational exact_integral() const;
  // phi_c(-t) == phi_c(t) as rational polynomials.
  bool exactly_even() const;
  // sum_j j^m phi_c(t-j) == t^m as a rational polynomial identity.
  bool reproduces_exactly(int m) const;

 private:
  std::vector<BSplineTerm> terms_;
  long long lo_ = 0;
  std::vector<RationalPoly> pieces_;
  Rational center_;
  std::array<PiecewisePoly, kMaxDerivative + 1> raw_;
  std::array<PiecewisePoly, kMaxDerivative + 1> centered_;
  PiecewisePoly boxed_;
};

// max over grid of |sum_j j^m phi_c(t-j) - t^m|
double exactness_defect(const Kernel& k, int m, std::span<const double> grid);

struct KernelCertificate {
  std::array<double, 3> exactness{};     // m = 0,1,2 on the grid
  std::array<bool, 3> exact_rational{};  // same identities in rational arithmetic
  Rational integral;
  double integral_error = 0;
  double evenness_defect = 0;
  bool exactly_even = false;
  double support_lo = 0, support_hi = 0;
  std::array<double, 4> sup_derivative{};  // sup |phi^(m)|, m = 0..3
  bool ik1 = false, ik2 = false, ik3 = false, ik4 = false;
  bool all() const { return ik1 && ik2 && ik3 && ik4; }
};

// Grid t in [lo, hi] with the given step.
std::vector<double> uniform_grid(double lo, double hi, double step);

KernelCertificate certify(const Kernel& k, double tol = 1e-10);

}  // namespace ltomo
