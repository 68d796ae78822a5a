#pragma once

#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "ltomo/phantom.hpp"

namespace ltomo {

enum class Aperture { none, box };

struct ScanGeometry {
  int n0 = 0;
  double L = 0.0;
  double q_alpha = std::numbers::sqrt2;
  double delta_alpha = 0.0;
  double p_max = 0.0;
  double delta_p = 0.0;
  double kappa = 0.0;

  int num_angles() const { return n0; }
  int num_offsets() const { return n0 + 1; }
  double eps() const { return delta_p; }
  double alpha(int k) const { return delta_alpha * (k + q_alpha); }
  double p(int j) const { return -p_max + j * delta_p; }
};

ScanGeometry build_geometry(int n0, double L, double q_alpha = std::numbers::sqrt2);

// Sampled Radon data, n0 rows of n0+1 offsets. Rows are stored with kPad
// zeros on both sides so kernel taps never need bounds checks.
class Sinogram {
 public:
  static constexpr int kPad = 8;

  Sinogram() = default;
  Sinogram(const ScanGeometry& g, Aperture aperture);

  const ScanGeometry& geometry() const { return geom_; }
  Aperture aperture() const { return aperture_; }

  double at(int k, int j) const { return data_[index(k, j)]; }
  double& at(int k, int j) { return data_[index(k, j)]; }
  std::span<const double> row(int k) const { return {data_.data() + index(k, 0), static_cast<std::size_t>(geom_.n0 + 1)}; }
  std::span<double> row(int k) { return {data_.data() + index(k, 0), static_cast<std::size_t>(geom_.n0 + 1)}; }
  // Pointer to offset j = 0 of row k; valid for j in [-kPad, n0 + kPad].
  const double* padded_row(int k) const { return data_.data() + index(k, 0); }
  std::size_t stride() const { return static_cast<std::size_t>(geom_.n0 + 1 + 2 * kPad); }

  Sinogram& operator+=(const Sinogram& o);

 private:
  std::size_t index(int k, int j) const { return static_cast<std::size_t>(k) * stride() + static_cast<std::size_t>(j + kPad); }

  ScanGeometry geom_;
  Aperture aperture_ = Aperture::none;
  std::vector<double> data_;
};

// Parallel over rows; result does not depend on the thread count.
Sinogram sample_sinogram(const Phantom& ph, const ScanGeometry& g, Aperture aperture);

struct GenericityReport {
  double a = 0.0;
  long long p = 0;
  long long q = 1;
  double approx_error = 0.0;
  bool near_non_generic = false;
};

// a = (Theta0_perp . x0) kappa, Theta0 the exterior normal. The reported
// rational is the continued-fraction convergent with q <= Q minimising
// q^2 |a - p/q|; near-non-generic when that product is below 0.05.
GenericityReport genericity(Point x0, double theta0, double kappa, int Q = 100);

// Worker count: LTOMO_THREADS if set, else hardware concurrency.
unsigned worker_count();

}  // namespace ltomo
