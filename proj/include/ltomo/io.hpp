#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "ltomo/geometry.hpp"
#include "ltomo/recon.hpp"

namespace ltomo {

// CSV with a "# columns: ..." first line, then "# " header lines, then rows
// printed with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns, const std::vector<std::string>& header = {});
  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }
  void close();

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t ncols_;
};

std::string format_double(double v);

// P5, 16 bit big-endian, top row is y = +L. Gray = 65535 (v - lo) / (hi - lo)
// with lo/hi the finite min/max unless given; NaN maps to 0. The window goes
// to path + ".window".
void write_pgm(const std::string& path, const ReconGrid& grid, const std::vector<std::string>& header = {});
void write_grid_csv(const std::string& path, const ReconGrid& grid, const std::vector<std::string>& header = {});

// "LTSINO01", int32 n0, int32 aperture, f64 L, f64 q_alpha, then n0 x (n0+1)
// little-endian doubles, row-major.
void write_sinogram_binary(const std::string& path, const Sinogram& s);
Sinogram read_sinogram_binary(const std::string& path);
void write_sinogram_csv(const std::string& path, const Sinogram& s, const std::vector<std::string>& header = {});

void ensure_directory(const std::string& dir);

}  // namespace ltomo
