#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ltomo {

// Piecewise polynomial with arbitrary sorted knots. Piece i lives on
// [knots[i], knots[i+1]) and stores coefficients in the local variable
// (x - knots[i]), lowest degree first. Zero outside [knots.front(), knots.back()).
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<double> knots, std::vector<std::vector<double>> coeffs);

  double operator()(double x) const;

  std::size_t num_pieces() const { return coeffs_.size(); }
  int degree() const;
  bool empty() const { return coeffs_.empty(); }
  double lower() const { return knots_.front(); }
  double upper() const { return knots_.back(); }
  std::span<const double> knots() const { return knots_; }
  std::span<const double> coeffs(std::size_t piece) const { return coeffs_[piece]; }

  // Index of the piece containing x, or -1 outside the support.
  long piece_index(double x) const;

  PiecewisePoly derivative(int order = 1) const;
  // Antiderivative vanishing at lower(); constant continuation is not stored.
  PiecewisePoly antiderivative() const;
  // g(x) = f(x + dx)
  PiecewisePoly translated(double dx) const;
  PiecewisePoly scaled(double c) const;
  // g(x) = mean of f over [x - w/2, x + w/2].
  PiecewisePoly box_average(double w = 1.0) const;

  double integral() const;
  double integral_from(double a) const;  // int_a^inf f
  double moment(int m, double about) const;

  // Coefficients of piece `piece` rewritten in powers of (x - at).
  std::vector<double> taylor(std::size_t piece, double at) const;

 private:
  std::vector<double> knots_;
  std::vector<std::vector<double>> coeffs_;
};

// Horner evaluation, lowest degree first.
inline double horner(std::span<const double> c, double t) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
  return v;
}

// Re-expand sum c_l (x-a)^l in powers of (x-b).
std::vector<double> taylor_shift(std::span<const double> c, double shift);

}  // namespace ltomo
