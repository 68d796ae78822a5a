#include "ltomo/experiments.hpp"

#include <cmath>
#include <variant>

#include "ltomo/errors.hpp"

namespace ltomo {

ExtensionLine edge_extension(const Phantom& ph, std::size_t component, int edge, double d_min, double d_max, int n,
                             double L) {
  if (component >= ph.components().size()) throw ArgumentError("edge_extension: component index out of range");
  const auto* r = std::get_if<Rect>(&ph.components()[component]);
  if (!r) throw ArgumentError("edge_extension: component is not a rectangle");
  if (edge < 0 || edge > 3) throw ArgumentError("edge_extension: edge must be 0..3");
  if (!(d_max > d_min) || d_min < 0 || n < 2) throw ArgumentError("edge_extension: bad distance range");

  const EdgeSite site = edge_site(ph, component, edge + 0.5);
  const Point t = site.tangent();
  const double half = (edge % 2 == 0) ? r->half_h : r->half_w;
  const double H = dot(site.normal(), site.x0), bm = dot(t, site.x0);

  ExtensionLine line;
  for (int side : {-1, 1})
    for (int i = 0; i < n; ++i) {
      const double d = d_min + (d_max - d_min) * i / (n - 1);
      const Point x = site.x0 + (side * (half + d)) * t;
      if (std::abs(x.x) > L || std::abs(x.y) > L) continue;
      line.points.push_back(x);
      line.distance.push_back(side * d);
      line.edges.push_back({site.theta0, H, bm + side * (half + d), bm - half, bm + half, r->density});
    }
  return line;
}

std::vector<double> scaled_recon(const Sinogram& s, const Kernel& k, const std::vector<Point>& pts) {
  const Backprojector bp(s, k);
  std::vector<double> xs, ys, out(pts.size());
  for (const Point& p : pts) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  bp.evaluate(xs, ys, out);
  for (double& v : out) v *= s.geometry().eps();
  return out;
}

RoiStats ripple_stats(const Phantom& ph, int n0, double L, double q_alpha, Aperture ap, int resolution, const Box& roi,
                      const Kernel& k) {
  const ScanGeometry g = build_geometry(n0, L, q_alpha);
  const Sinogram s = sample_sinogram(ph, g, ap);
  ReconGrid grid = ReconGrid::make(L, resolution);
  lambda_recon_grid(s, k, grid, &roi);
  return roi_std(grid, roi);
}

}  // namespace ltomo
