#pragma once

#include <complex>
#include <utility>

#include "ltomo/geometry.hpp"
#include "ltomo/homogeneous.hpp"
#include "ltomo/kernel.hpp"

namespace ltomo {

enum class OperatorKind { local, hilbert, fractional };

// Leading-order description of a reconstruction operator (symbol
// b_+ lambda_+^beta + b_- lambda_-^beta) acting on data whose leading
// singularity is a_+ p_+^{s-1} + a_- p_-^{s-1}. Theta0 points to the side
// where the boundary curves (det of the restricted Hessian is negative there).
struct SingularityParams {
  int n = 2;
  double beta = 2.0;
  double s = 1.5;
  cplx b_plus{}, b_minus{};
  cplx a_plus{}, a_minus{};
  cplx v_plus{}, v_minus{};  // zero when only a_+- are known
  double det_h = 1.0;        // |det H''(Theta0)|

  double kappa1() const { return s - 0.5 * (n + 1); }
  double kappa2() const { return beta - s - 0.5 * (n - 3); }
  OperatorKind op_kind() const;

  cplx c1_plus() const;
  cplx c1_minus() const;
  cplx c2_plus() const;
  cplx c2_minus() const;
  cplx c3_plus() const;
  cplx c3_minus() const;
  // (2 pi)^{(n-1)/2} / |det|^{1/2}
  double amplitude() const;

  // Throws ArgumentError / UnsupportedParameters.
  void validate() const;
};

// omega(+-Theta0) with sgn H'' = -+(n-1).
cplx omega(int n, double det_h, int side);

// Data coefficients (a_+, a_-) of the Radon-side singularity at alpha = side*Theta0.
std::pair<cplx, cplx> data_coefficients(int n, double s, cplx v_plus, cplx v_minus, double det_h, int side);

SingularityParams params_from_symbol(int n, double beta, double s, cplx b_plus, cplx b_minus, cplx v_plus, cplx v_minus,
                                     double det_h);
SingularityParams params_from_coefficients(int n, double beta, double s, cplx b_plus, cplx b_minus, cplx a_plus,
                                           cplx a_minus, double det_h);

// 2D Lambda tomography of a unit jump (f0 = sgn(p)/2), curvature radius R.
SingularityParams lt_params(double R = 1.0);
// 3D exact reconstruction of a unit one-sided jump.
SingularityParams exact3d_params(double det_h = 1.0);

struct RatioCheck {
  bool required = false;  // only when kappa2 == 0
  bool holds = true;
  cplx ratio{};     // c1_- / c1_+
  cplx expected{};  // e^{-i (beta - s) pi}
  double defect = 0.0;
};

RatioCheck ratio_condition(const SingularityParams& p);

// CTB coefficients. mu(t) = (Gamma(k2)/pi)[q2 mu_+ (t-i0)^{-k2} + mu_-/q2 (t+i0)^{-k2}],
// q2 = e^{-i k2 pi/2}; its Fourier symbol is 2(mu_+ lambda_+^{k2-1} + mu_- lambda_-^{k2-1}).
struct CtbSpec {
  SingularityParams params;
  cplx mu_plus{}, mu_minus{};
  RatioCheck ratio;

  // mu_+- = amplitude * c2_+-
  static CtbSpec from_params(const SingularityParams& p);
  static CtbSpec from_mu(const SingularityParams& p, cplx mu_plus, cplx mu_minus);
};

// kappa2 == 0 only: TwoSided is -i mu_+ sgn(t); OneSided is 2 i mu_+ t_-^0.
// The two differ by the constant -i mu_+.
enum class Normalization { one_sided, two_sided };

// Regular part of mu at t != 0 (kappa2 > 0), or the step (kappa2 == 0).
cplx ctb_mu(const CtbSpec& spec, double t, Normalization norm = Normalization::one_sided);
// Coefficient of delta^{(k2-1)} in mu for integer kappa2 >= 1, else 0.
cplx ctb_delta_coefficient(const CtbSpec& spec);

// (phi_c * mu)(h), or (phi_c * nu * mu)(h) with the box aperture.
cplx dtb(const CtbSpec& spec, const Kernel& k, double h, Aperture aperture = Aperture::none);

class DtbEvaluator {
 public:
  DtbEvaluator(const CtbSpec& spec, const Kernel& k, Aperture aperture = Aperture::none);
  cplx operator()(double h) const { return op_(h); }

 private:
  SymbolOperator op_;
};

// jump * PV int phi_c(h - r) / (pi r) dr, phi_c replaced by phi_c * nu for the box aperture.
double lt_edge_response(const Kernel& k, double jump, double h, Aperture aperture = Aperture::none);

// Filtered kernel B phi_c, lattice sum psi and its continuum analogue Psi.
class PsiEvaluator {
 public:
  PsiEvaluator(const SingularityParams& p, const Kernel& k);

  cplx filtered_kernel(double t) const { return b_op_(t); }
  cplx data_profile(double u) const;  // a_+ u_+^{s-1} + a_- u_-^{s-1}
  cplx psi(double t, double p) const;
  cplx capital_psi(double t) const { return psi_op_(t); }
  const SingularityParams& params() const { return params_; }

 private:
  cplx tail(double t, double p, long j_edge, int dir) const;

  SingularityParams params_;
  SymbolOperator b_op_, psi_op_;
  double lo_ = 0.0, hi_ = 0.0;
  bool local_ = true;
};

cplx psi(const SingularityParams& p, const Kernel& k, double t, double pp);
cplx capital_psi(const SingularityParams& p, const Kernel& k, double t);

// 2^{(n+1)/2}|S^{n-2}| / |det|^{1/2} * int_0^A int_0^1 psi(h+r, r-t^2) dr t^{n-2} dt
cplx dtb_double_integral_oracle(const SingularityParams& p, const Kernel& k, double h, double A = 50.0);
// Same with a prebuilt evaluator.
cplx dtb_double_integral_oracle(const PsiEvaluator& ev, double h, double A = 50.0);

// Leading singularity f0(p) of the function across the surface.
cplx f0_singularity(const SingularityParams& p, double pp);
// Leading singularity of the Radon data at alpha = side*Theta0.
cplx fhat0_singularity(const SingularityParams& p, int side, double pp);

// Flat edge on the line {x . Theta = H}, Theta = (cos theta, sin theta), from
// H Theta + b1 Theta_perp to H Theta + b2 Theta_perp; the evaluation point is
// H Theta + b0 Theta_perp + h eps Theta. density is the value inside.
struct LineEdge {
  double theta = 0.0;
  double H = 0.0;
  double b0 = 0.0, b1 = 0.0, b2 = 1.0;
  double density = 1.0;
};

// Leading O(1) part of eps * f at the evaluation point from the angles
// nearly parallel to the edge.
double line_artifact_model(const Kernel& k, const ScanGeometry& g, const LineEdge& edge, double h,
                           Aperture aperture = Aperture::none);

// x0 lies on the line through z0 tangent to the boundary there; theta0 is the
// normal of that line pointing towards the center of curvature at z0, and
// rho = -f_+ sqrt(2R)/pi with f_+ the value on that side.
struct RemoteSite {
  Point x0, z0;
  double theta0 = 0.0;
  double rho = 0.0;
  double window = 0.25;  // half-width in radians of the angular neighbourhood summed
};

// Leading O(eps^{-1/2}) part of f at x0 + h eps Theta0.
double remote_ripple_model(const Kernel& k, const ScanGeometry& g, const RemoteSite& site, double h);

}  // namespace ltomo
