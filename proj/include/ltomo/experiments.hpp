#pragma once

#include <vector>

#include "ltomo/metrics.hpp"
#include "ltomo/transition.hpp"

namespace ltomo {

// Points on the line through one edge of a Rect, beyond both corners, at
// distances d in [d_min, d_max] from the nearer corner (n per side). Points
// outside [-L, L]^2 are dropped.
struct ExtensionLine {
  std::vector<Point> points;
  std::vector<double> distance;  // signed: > 0 past the far corner, < 0 past the near one
  std::vector<LineEdge> edges;   // line_artifact_model input per point
};

ExtensionLine edge_extension(const Phantom& ph, std::size_t component, int edge, double d_min, double d_max, int n,
                             double L);

// eps * f at each point.
std::vector<double> scaled_recon(const Sinogram& s, const Kernel& k, const std::vector<Point>& pts);

// Population std of the reconstruction over the pixel centers of a
// resolution^2 grid on [-L, L]^2 that fall inside roi.
RoiStats ripple_stats(const Phantom& ph, int n0, double L, double q_alpha, Aperture ap, int resolution, const Box& roi,
                      const Kernel& k);

}  // namespace ltomo
