#include <immintrin.h>

#include "ltomo/simd/backproject.hpp"

namespace ltomo::simd {

// Four points per iteration. Same operation order as backproject_ref and
// no FMA, so results match it exactly.
void backproject_avx2(const BackprojectTask& t, const double* xs, const double* ys, double* out, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  const __m256d inv_eps = _mm256_set1_pd(t.inv_eps);
  const __m256d shift = _mm256_set1_pd(t.shift);
  const __m128i tap_off = _mm_set1_epi32(t.tap_offset);
  for (std::size_t p = 0; p < n4; p += 4) {
    const __m256d x = _mm256_loadu_pd(xs + p);
    const __m256d y = _mm256_loadu_pd(ys + p);
    __m256d acc = _mm256_setzero_pd();
    for (int k = 0; k < t.n_angles; ++k) {
      const __m256d ca = _mm256_set1_pd(t.cos_a[k]);
      const __m256d sa = _mm256_set1_pd(t.sin_a[k]);
      const __m256d u = _mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(ca, x), _mm256_mul_pd(sa, y)), inv_eps), shift);
      const __m256d fl = _mm256_floor_pd(u);
      const __m256d f = _mm256_sub_pd(u, fl);
      const __m128i j0 = _mm_add_epi32(_mm256_cvtpd_epi32(fl), tap_off);
      const double* row = t.rows + static_cast<std::size_t>(k) * t.stride;
      __m256d sk = _mm256_setzero_pd();
      for (int i = 0; i < t.taps; ++i) {
        const double* c = t.coeffs[i];
        __m256d w = _mm256_set1_pd(c[t.ncoeffs - 1]);
        for (int l = t.ncoeffs - 2; l >= 0; --l) w = _mm256_add_pd(_mm256_mul_pd(w, f), _mm256_set1_pd(c[l]));
        const __m256d v = _mm256_i32gather_pd(row + i, j0, 8);
        sk = _mm256_add_pd(sk, _mm256_mul_pd(w, v));
      }
      acc = _mm256_add_pd(acc, sk);
    }
    _mm256_storeu_pd(out + p, acc);
  }
  if (n4 < n) backproject_ref(t, xs + n4, ys + n4, out + n4, n - n4);
}

}  // namespace ltomo::simd
