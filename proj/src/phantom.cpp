#include "ltomo/phantom.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numbers>

#include "ltomo/errors.hpp"

namespace ltomo {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate(const Shape& s) {
  std::visit(overloaded{[](const Disk& d) {
                          if (!(d.radius > 0.0) || !std::isfinite(d.radius)) throw ArgumentError("disk radius must be positive");
                          if (!std::isfinite(d.density)) throw ArgumentError("disk density must be finite");
                        },
                        [](const Rect& r) {
                          if (!(r.half_w > 0.0) || !(r.half_h > 0.0)) throw ArgumentError("rect half widths must be positive");
                          if (!std::isfinite(r.density)) throw ArgumentError("rect density must be finite");
                        }},
             s);
}

// Length of the chord {p*a + s*a_perp} inside the rectangle.
double rect_chord(const Rect& r, double alpha, double p) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  auto clip = [&](double offset, double slope, double a, double b) {
    if (slope == 0.0) {
      if (offset < a || offset > b) lo = 1.0, hi = 0.0;
      return;
    }
    double t0 = (a - offset) / slope, t1 = (b - offset) / slope;
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  };
  clip(p * c, -s, r.center.x - r.half_w, r.center.x + r.half_w);
  clip(p * s, c, r.center.y - r.half_h, r.center.y + r.half_h);
  return hi > lo ? hi - lo : 0.0;
}

// int_{-R}^{u} 2 sqrt(R^2 - v^2) dv for u in [-R, R]
double disk_segment_area(double R, double u) {
  u = std::clamp(u, -R, R);
  const double x = u / R;
  return R * R * (x * std::sqrt(std::max(0.0, 1.0 - x * x)) + std::asin(x)) + 0.5 * std::numbers::pi * R * R;
}

using Poly = std::vector<Point>;

// Keep the part of the polygon with dot(n, x) <= c.
Poly clip_halfplane(const Poly& in, Point n, double c) {
  Poly out;
  const std::size_t m = in.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point a = in[i], b = in[(i + 1) % m];
    const double da = dot(n, a) - c, db = dot(n, b) - c;
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

double polygon_area(const Poly& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point a = p[i], b = p[(i + 1) % p.size()];
    s += a.x * b.y - a.y * b.x;
  }
  return 0.5 * std::abs(s);
}

}  // namespace

Phantom::Phantom(std::vector<Shape> shapes) {
  for (const auto& s : shapes) add(s);
}

void Phantom::add(const Shape& s) {
  validate(s);
  shapes_.push_back(s);
}

double Phantom::value(Point x) const {
  double v = 0.0;
  for (const auto& s : shapes_) {
    v += std::visit(overloaded{[&](const Disk& d) { return norm(x - d.center) < d.radius ? d.density : 0.0; },
                               [&](const Rect& r) {
                                 return std::abs(x.x - r.center.x) < r.half_w && std::abs(x.y - r.center.y) < r.half_h ? r.density
                                                                                                                     : 0.0;
                               }},
                    s);
  }
  return v;
}

double Phantom::mass() const {
  double m = 0.0;
  for (const auto& s : shapes_) {
    m += std::visit(overloaded{[](const Disk& d) { return d.density * std::numbers::pi * d.radius * d.radius; },
                               [](const Rect& r) { return r.density * 4.0 * r.half_w * r.half_h; }},
                    s);
  }
  return m;
}

double radon(const Phantom& ph, double alpha, double p) {
  const Point a = direction(alpha);
  double v = 0.0;
  for (const auto& s : ph.components()) {
    v += std::visit(overloaded{[&](const Disk& d) {
                                 const double dist = p - dot(a, d.center);
                                 const double h2 = d.radius * d.radius - dist * dist;
                                 return h2 > 0.0 ? 2.0 * d.density * std::sqrt(h2) : 0.0;
                               },
                               [&](const Rect& r) { return r.density * rect_chord(r, alpha, p); }},
                    s);
  }
  return v;
}

double radon_pixel_avg(const Phantom& ph, double alpha, double p_j, double eps) {
  if (!(eps > 0.0)) throw ArgumentError("radon_pixel_avg: eps must be positive");
  const Point a = direction(alpha);
  const double lo = p_j - 0.5 * eps, hi = p_j + 0.5 * eps;
  double v = 0.0;
  for (const auto& s : ph.components()) {
    v += std::visit(overloaded{[&](const Disk& d) {
                                 const double c = dot(a, d.center);
                                 const double R = d.radius;
                                 if (hi - c <= -R || lo - c >= R) return 0.0;
                                 return d.density * (disk_segment_area(R, hi - c) - disk_segment_area(R, lo - c));
                               },
                               [&](const Rect& r) {
                                 Poly poly{{r.center.x - r.half_w, r.center.y - r.half_h},
                                           {r.center.x + r.half_w, r.center.y - r.half_h},
                                           {r.center.x + r.half_w, r.center.y + r.half_h},
                                           {r.center.x - r.half_w, r.center.y + r.half_h}};
                                 poly = clip_halfplane(poly, a, hi);
                                 if (poly.size() < 3) return 0.0;
                                 poly = clip_halfplane(poly, -1.0 * a, -lo);
                                 if (poly.size() < 3) return 0.0;
                                 return r.density * polygon_area(poly);
                               }},
                    s);
  }
  return v / eps;
}

EdgeSite edge_site(const Phantom& ph, std::size_t component, double param) {
  if (component >= ph.components().size()) throw ArgumentError("edge_site: component index out of range");
  const Shape& s = ph.components()[component];
  return std::visit(
      overloaded{[&](const Disk& d) {
                   EdgeSite e;
                   e.theta0 = param;
                   e.x0 = d.center + d.radius * direction(param);
                   e.R = d.radius;
                   e.jump = -d.density;
                   return e;
                 },
                 [&](const Rect& r) {
                   if (!(param >= 0.0 && param < 4.0)) throw ArgumentError("edge_site: rect parameter must be in [0,4)");
                   const int edge = static_cast<int>(std::floor(param));
                   const double f = param - edge;
                   if (f < 1e-12 || f > 1.0 - 1e-12) throw GeometryError("edge_site: rect corner has no curvature");
                   const double xl = r.center.x - r.half_w, xr = r.center.x + r.half_w;
                   const double yb = r.center.y - r.half_h, yt = r.center.y + r.half_h;
                   EdgeSite e;
                   e.R = std::numeric_limits<double>::infinity();
                   e.jump = -r.density;
                   switch (edge) {
                     case 0: e.x0 = {xr, yb + f * (yt - yb)}; e.theta0 = 0.0; break;
                     case 1: e.x0 = {xr - f * (xr - xl), yt}; e.theta0 = 0.5 * std::numbers::pi; break;
                     case 2: e.x0 = {xl, yt - f * (yt - yb)}; e.theta0 = std::numbers::pi; break;
                     default: e.x0 = {xl + f * (xr - xl), yb}; e.theta0 = 1.5 * std::numbers::pi; break;
                   }
                   return e;
                 }},
      s);
}

}  // namespace ltomo
