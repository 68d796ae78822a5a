#pragma once

#include <cstddef>
#include <string_view>

namespace ltomo::simd {

inline constexpr int kMaxTaps = 8;
inline constexpr int kMaxCoeffs = 6;

// Everything the inner loop needs. For angle k and point (x, y):
//   u = (cos_a[k] * x + sin_a[k] * y) * inv_eps + shift
//   j = floor(u) + tap_offset + i,  w_i = poly_i(u - floor(u)),  i = 0..taps-1
//   out = sum_k sum_i w_i * rows[k * stride + j]
// Accumulation is tap-major inside an angle, angles ascending, so every
// variant produces identical bits.
struct BackprojectTask {
  const double* rows = nullptr;
  std::size_t stride = 0;
  int n_angles = 0;
  const double* cos_a = nullptr;
  const double* sin_a = nullptr;
  double inv_eps = 1.0;
  double shift = 0.0;
  int taps = 0;
  int tap_offset = 0;
  int ncoeffs = 0;
  double coeffs[kMaxTaps][kMaxCoeffs] = {};
};

using BackprojectFn = void (*)(const BackprojectTask&, const double* xs, const double* ys, double* out, std::size_t n);

void backproject_ref(const BackprojectTask& t, const double* xs, const double* ys, double* out, std::size_t n);
#if defined(LTOMO_BUILD_AVX2)
void backproject_avx2(const BackprojectTask& t, const double* xs, const double* ys, double* out, std::size_t n);
#endif

bool avx2_available();

// Active implementation. Chosen once from LTOMO_SIMD (scalar | avx2 | auto)
// and the CPU, overridable with select_backproject.
BackprojectFn backproject();
std::string_view backproject_name();
// Returns false if the named variant is not available on this build/CPU.
bool select_backproject(std::string_view name);
// Look up a variant without changing the active one; nullptr if unavailable.
BackprojectFn backproject_variant(std::string_view name);

}  // namespace ltomo::simd
