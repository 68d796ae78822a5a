#include <cmath>

#include "ltomo/simd/backproject.hpp"

namespace ltomo::simd {

void backproject_ref(const BackprojectTask& t, const double* xs, const double* ys, double* out, std::size_t n) {
  for (std::size_t p = 0; p < n; ++p) {
    const double x = xs[p], y = ys[p];
    double acc = 0.0;
    for (int k = 0; k < t.n_angles; ++k) {
      const double u = (t.cos_a[k] * x + t.sin_a[k] * y) * t.inv_eps + t.shift;
      const double fl = std::floor(u);
      const double f = u - fl;
      const double* row = t.rows + static_cast<std::size_t>(k) * t.stride + (static_cast<long>(fl) + t.tap_offset);
      double sk = 0.0;
      for (int i = 0; i < t.taps; ++i) {
        const double* c = t.coeffs[i];
        double w = c[t.ncoeffs - 1];
        for (int l = t.ncoeffs - 2; l >= 0; --l) w = w * f + c[l];
        sk = sk + w * row[i];
      }
      acc = acc + sk;
    }
    out[p] = acc;
  }
}

}  // namespace ltomo::simd
