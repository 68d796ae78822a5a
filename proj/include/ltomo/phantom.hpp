#pragma once

#include <cmath>
#include <cstddef>
#include <variant>
#include <vector>

namespace ltomo {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline Point direction(double angle) { return {std::cos(angle), std::sin(angle)}; }
// Direction rotated by +pi/2.
inline Point direction_perp(double angle) { return {-std::sin(angle), std::cos(angle)}; }

struct Disk {
  Point center;
  double radius = 1.0;
  double density = 1.0;
};

// Axis-aligned rectangle.
struct Rect {
  Point center;
  double half_w = 0.5;
  double half_h = 0.5;
  double density = 1.0;
};

using Shape = std::variant<Disk, Rect>;

class Phantom {
 public:
  Phantom() = default;
  explicit Phantom(std::vector<Shape> shapes);

  void add(const Shape& s);
  const std::vector<Shape>& components() const { return shapes_; }
  bool empty() const { return shapes_.empty(); }

  // Sum of densities of components whose interior contains x.
  double value(Point x) const;
  double mass() const;

 private:
  std::vector<Shape> shapes_;
};

// Line integral over {x : x . (cos a, sin a) = p}.
double radon(const Phantom& ph, double alpha, double p);

// Radon data averaged over [p_j - eps/2, p_j + eps/2].
double radon_pixel_avg(const Phantom& ph, double alpha, double p_j, double eps);

// Boundary point with exterior normal angle theta0, curvature radius R
// (infinite on flat edges) and jump = f(outside) - f(inside).
struct EdgeSite {
  Point x0;
  double theta0 = 0.0;
  double R = 0.0;
  double jump = 0.0;

  Point normal() const { return direction(theta0); }
  Point tangent() const { return direction_perp(theta0); }
};

// Disk: param is the boundary angle. Rect: param in [0,4) walks the edges
// right, top, left, bottom; the integer part picks the edge and the
// fractional part the position along it (0 is a corner and is rejected).
EdgeSite edge_site(const Phantom& ph, std::size_t component, double param);

}  // namespace ltomo
