#include "ltomo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "ltomo/errors.hpp"

namespace ltomo {

ScanGeometry build_geometry(int n0, double L, double q_alpha) {
  if (n0 < 4) throw ArgumentError("build_geometry: n0 must be >= 4");
  if (!(L > 0.0) || !std::isfinite(L)) throw ArgumentError("build_geometry: L must be positive");
  if (!std::isfinite(q_alpha)) throw ArgumentError("build_geometry: q_alpha must be finite");
  ScanGeometry g;
  g.n0 = n0;
  g.L = L;
  g.q_alpha = q_alpha;
  g.delta_alpha = 2.0 * std::numbers::pi / n0;
  g.p_max = 1.1 * L * std::numbers::sqrt2;
  g.delta_p = 2.0 * g.p_max / n0;
  g.kappa = g.delta_alpha / g.delta_p;
  return g;
}

Sinogram::Sinogram(const ScanGeometry& g, Aperture aperture) : geom_(g), aperture_(aperture) {
  if (g.n0 < 4) throw ArgumentError("Sinogram: invalid geometry");
  data_.assign(stride() * static_cast<std::size_t>(g.n0), 0.0);
}

Sinogram& Sinogram::operator+=(const Sinogram& o) {
  if (o.geom_.n0 != geom_.n0) throw ArgumentError("Sinogram: size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

unsigned worker_count() {
  if (const char* env = std::getenv("LTOMO_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Sinogram sample_sinogram(const Phantom& ph, const ScanGeometry& g, Aperture aperture) {
  Sinogram s(g, aperture);
  const unsigned nt = std::min<unsigned>(worker_count(), static_cast<unsigned>(g.n0));
  auto work = [&](int k0, int k1) {
    for (int k = k0; k < k1; ++k) {
      const double a = g.alpha(k);
      auto row = s.row(k);
      for (int j = 0; j <= g.n0; ++j)
        row[j] = aperture == Aperture::box ? radon_pixel_avg(ph, a, g.p(j), g.delta_p) : radon(ph, a, g.p(j));
    }
  };
  if (nt <= 1) {
    work(0, g.n0);
    return s;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < nt; ++t)
    pool.emplace_back(work, static_cast<int>(g.n0 * static_cast<long>(t) / nt), static_cast<int>(g.n0 * static_cast<long>(t + 1) / nt));
  return s;
}

GenericityReport genericity(Point x0, double theta0, double kappa, int Q) {
  if (Q < 1) throw ArgumentError("genericity: Q must be >= 1");
  GenericityReport r;
  r.a = dot(direction_perp(theta0), x0) * kappa;

  // Convergents h/k of the continued fraction of a.
  double x = r.a;
  long long h_prev = 1, h = static_cast<long long>(std::floor(x));
  long long k_prev = 0, k = 1;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](long long p, long long q) {
    const double err = std::abs(r.a - static_cast<double>(p) / static_cast<double>(q));
    const double score = err * static_cast<double>(q) * static_cast<double>(q);
    if (score < best) {
      best = score;
      r.p = p;
      r.q = q;
      r.approx_error = err;
    }
  };
  consider(h, k);
  double frac = x - std::floor(x);
  for (int it = 0; it < 64 && frac > 1e-15; ++it) {
    x = 1.0 / frac;
    const long long ai = static_cast<long long>(std::floor(x));
    frac = x - std::floor(x);
    const long long hn = ai * h + h_prev, kn = ai * k + k_prev;
    if (kn > Q) break;
    h_prev = h, h = hn, k_prev = k, k = kn;
    consider(h, k);
  }
  r.near_non_generic = best < 0.05;
  return r;
}

}  // namespace ltomo
