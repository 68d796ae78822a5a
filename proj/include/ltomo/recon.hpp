#pragma once

#include <span>
#include <vector>

#include "ltomo/geometry.hpp"
#include "ltomo/kernel.hpp"
#include "ltomo/phantom.hpp"
#include "ltomo/simd/backproject.hpp"

namespace ltomo {

struct Box {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool contains(Point p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
};

// Square [-L, L]^2 sampled at pixel centers; values[iy * resolution + ix],
// x and y ascending with the index.
struct ReconGrid {
  double L = 0.0;
  int resolution = 0;
  std::vector<double> values;

  static ReconGrid make(double L, int resolution);
  double coord(int i) const { return -L + 2.0 * L * i / (resolution - 1); }
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * resolution + ix]; }
  double& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * resolution + ix]; }
};

// Discrete Lambda reconstruction
//   f(x) = -(dalpha / (4 pi eps^2)) sum_k sum_j phi_c''((alpha_k . x - p_j) / eps) s[k][j]
// over the full circle of angles. Holds a reference to the sinogram.
class Backprojector {
 public:
  Backprojector(const Sinogram& s, const Kernel& k);

  double operator()(Point x) const;
  // Parallel over points; each value is computed independently, so the
  // output does not depend on the schedule.
  void evaluate(std::span<const double> xs, std::span<const double> ys, std::span<double> out) const;
  // Same with an explicit inner kernel and no threading.
  void evaluate_with(simd::BackprojectFn fn, std::span<const double> xs, std::span<const double> ys, std::span<double> out) const;

  double prefactor() const { return prefactor_; }

 private:
  void check(double x, double y) const;

  const Sinogram* sino_;
  std::vector<double> cos_, sin_;
  simd::BackprojectTask task_;
  double prefactor_ = 0.0;
};

double lambda_recon_point(const Sinogram& s, const Kernel& k, Point x);

// Fills every pixel, or only those with centers in `only` (others NaN).
void lambda_recon_grid(const Sinogram& s, const Kernel& k, ReconGrid& grid, const Box* only = nullptr);
ReconGrid lambda_recon_grid(const Sinogram& s, const Kernel& k, double L, int resolution);

struct EdgeProfile {
  EdgeSite site;
  int n0 = 0;
  Aperture aperture = Aperture::none;
  std::vector<double> h;
  std::vector<double> measured;   // eps * f(x0 + h eps Theta0)
  std::vector<double> predicted;  // jump * Phi(h), aperture-aware
};

EdgeProfile edge_profile(const Sinogram& s, const Kernel& k, const EdgeSite& site, double h_lo, double h_hi, int n_samples);

}  // namespace ltomo
