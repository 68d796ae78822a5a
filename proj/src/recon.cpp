#include "ltomo/recon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "ltomo/errors.hpp"
#include "ltomo/transition.hpp"

namespace ltomo {

ReconGrid ReconGrid::make(double L, int resolution) {
  if (resolution < 2) throw ArgumentError("ReconGrid: resolution must be >= 2");
  if (!(L > 0.0)) throw ArgumentError("ReconGrid: L must be positive");
  ReconGrid g;
  g.L = L;
  g.resolution = resolution;
  g.values.assign(static_cast<std::size_t>(resolution) * resolution, 0.0);
  return g;
}

Backprojector::Backprojector(const Sinogram& s, const Kernel& k) : sino_(&s) {
  const ScanGeometry& g = s.geometry();
  const PiecewisePoly& d2 = k.centered(2);
  const int taps = static_cast<int>(d2.num_pieces());
  const double lo = d2.lower();
  for (double kn : d2.knots())
    if (kn != std::round(kn)) throw ArgumentError("Backprojector: kernel knots must be integers after recentering");
  if (taps > simd::kMaxTaps) throw ArgumentError("Backprojector: kernel support too wide");
  const int tap_offset = -static_cast<int>(lo) - taps + 1;
  if (tap_offset < -Sinogram::kPad || tap_offset + taps - 1 > Sinogram::kPad)
    throw ArgumentError("Backprojector: kernel support exceeds sinogram padding");

  task_.taps = taps;
  task_.tap_offset = tap_offset;
  task_.ncoeffs = std::max(1, d2.degree() + 1);
  if (task_.ncoeffs > simd::kMaxCoeffs) throw ArgumentError("Backprojector: kernel degree too high");
  for (int i = 0; i < taps; ++i) {
    auto c = d2.coeffs(static_cast<std::size_t>(taps - 1 - i));
    for (std::size_t l = 0; l < c.size(); ++l) task_.coeffs[i][l] = c[l];
  }

  cos_.resize(static_cast<std::size_t>(g.n0));
  sin_.resize(static_cast<std::size_t>(g.n0));
  for (int a = 0; a < g.n0; ++a) {
    cos_[a] = std::cos(g.alpha(a));
    sin_[a] = std::sin(g.alpha(a));
  }
  task_.rows = s.padded_row(0);
  task_.stride = s.stride();
  task_.n_angles = g.n0;
  task_.cos_a = cos_.data();
  task_.sin_a = sin_.data();
  task_.inv_eps = 1.0 / g.eps();
  task_.shift = g.p_max / g.eps();
  prefactor_ = -g.delta_alpha / (4.0 * std::numbers::pi * g.eps() * g.eps());
}

void Backprojector::check(double x, double y) const {
  const double pm = sino_->geometry().p_max;
  if (!(std::hypot(x, y) <= pm * (1.0 + 1e-12)))
    throw GeometryError("reconstruction point outside the sampled region |x| <= p_max");
}

double Backprojector::operator()(Point x) const {
  check(x.x, x.y);
  double v = 0.0;
  simd::backproject_ref(task_, &x.x, &x.y, &v, 1);
  return prefactor_ * v;
}

void Backprojector::evaluate_with(simd::BackprojectFn fn, std::span<const double> xs, std::span<const double> ys,
                                  std::span<double> out) const {
  if (xs.size() != ys.size() || xs.size() != out.size()) throw ArgumentError("Backprojector: size mismatch");
  for (std::size_t i = 0; i < xs.size(); ++i) check(xs[i], ys[i]);
  fn(task_, xs.data(), ys.data(), out.data(), xs.size());
  for (double& v : out) v *= prefactor_;
}

void Backprojector::evaluate(std::span<const double> xs, std::span<const double> ys, std::span<double> out) const {
  if (xs.size() != ys.size() || xs.size() != out.size()) throw ArgumentError("Backprojector: size mismatch");
  for (std::size_t i = 0; i < xs.size(); ++i) check(xs[i], ys[i]);
  const simd::BackprojectFn fn = simd::backproject();
  const std::size_t n = xs.size();
  const std::size_t blocks = (n + 3) / 4;
  const unsigned nt = static_cast<unsigned>(std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, blocks)));
  auto run = [&](std::size_t b0, std::size_t b1) {
    const std::size_t i0 = std::min(n, b0 * 4), i1 = std::min(n, b1 * 4);
    if (i1 > i0) fn(task_, xs.data() + i0, ys.data() + i0, out.data() + i0, i1 - i0);
  };
  if (nt <= 1) {
    run(0, blocks);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(run, blocks * t / nt, blocks * (t + 1) / nt);
  }
  for (double& v : out) v *= prefactor_;
}

double lambda_recon_point(const Sinogram& s, const Kernel& k, Point x) { return Backprojector(s, k)(x); }

void lambda_recon_grid(const Sinogram& s, const Kernel& k, ReconGrid& grid, const Box* only) {
  if (grid.resolution < 2 || grid.values.size() != static_cast<std::size_t>(grid.resolution) * grid.resolution)
    throw ArgumentError("lambda_recon_grid: malformed grid");
  std::vector<double> xs, ys;
  std::vector<std::size_t> idx;
  for (int iy = 0; iy < grid.resolution; ++iy) {
    for (int ix = 0; ix < grid.resolution; ++ix) {
      const Point p{grid.coord(ix), grid.coord(iy)};
      if (only && !only->contains(p)) {
        grid.at(ix, iy) = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      xs.push_back(p.x);
      ys.push_back(p.y);
      idx.push_back(static_cast<std::size_t>(iy) * grid.resolution + ix);
    }
  }
  std::vector<double> out(xs.size());
  Backprojector(s, k).evaluate(xs, ys, out);
  for (std::size_t i = 0; i < idx.size(); ++i) grid.values[idx[i]] = out[i];
}

ReconGrid lambda_recon_grid(const Sinogram& s, const Kernel& k, double L, int resolution) {
  ReconGrid g = ReconGrid::make(L, resolution);
  lambda_recon_grid(s, k, g);
  return g;
}

EdgeProfile edge_profile(const Sinogram& s, const Kernel& k, const EdgeSite& site, double h_lo, double h_hi, int n_samples) {
  if (!std::isfinite(site.R)) throw GeometryError("edge_profile: flat edge has no edge-response prediction");
  if (n_samples < 2 || !(h_hi > h_lo)) throw ArgumentError("edge_profile: need n_samples >= 2 and h_hi > h_lo");
  EdgeProfile prof;
  prof.site = site;
  prof.n0 = s.geometry().n0;
  prof.aperture = s.aperture();
  const double eps = s.geometry().eps();
  const Point nrm = site.normal();
  std::vector<double> xs, ys;
  for (int i = 0; i < n_samples; ++i) {
    const double h = h_lo + (h_hi - h_lo) * i / (n_samples - 1);
    prof.h.push_back(h);
    const Point x = site.x0 + (h * eps) * nrm;
    xs.push_back(x.x);
    ys.push_back(x.y);
    prof.predicted.push_back(lt_edge_response(k, site.jump, h, s.aperture()));
  }
  prof.measured.resize(xs.size());
  Backprojector(s, k).evaluate(xs, ys, prof.measured);
  for (double& v : prof.measured) v *= eps;
  return prof;
}

}  // namespace ltomo
