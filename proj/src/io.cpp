#include "ltomo/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>

#include "ltomo/errors.hpp"

namespace ltomo {
namespace {

static_assert(std::endian::native == std::endian::little, "binary sinogram I/O assumes a little-endian host");

constexpr char kMagic[8] = {'L', 'T', 'S', 'I', 'N', 'O', '0', '1'};

template <class T>
void put(std::ofstream& o, T v) {
  o.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& in, const std::string& path) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw IoError(path + ": truncated sinogram file");
  return v;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream o(path, mode);
  if (!o) throw IoError("cannot open " + path + " for writing");
  return o;
}

void write_header(std::ofstream& o, const std::vector<std::string>& header) {
  for (const auto& h : header) o << "# " << h << '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::string>& header)
    : path_(path), out_(open_out(path)), ncols_(columns.size()) {
  out_ << "# columns: ";
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
  write_header(out_, header);
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != ncols_) throw ArgumentError("CsvWriter: row width does not match the columns");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
  out_ << '\n';
  if (!out_) throw IoError("write failed: " + path_);
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) throw IoError("close failed: " + path_);
}

void write_pgm(const std::string& path, const ReconGrid& grid, const std::vector<std::string>& header) {
  double lo = INFINITY, hi = -INFINITY;
  for (double v : grid.values)
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (!(hi >= lo)) lo = hi = 0.0;
  const double scale = hi > lo ? 65535.0 / (hi - lo) : 0.0;

  auto o = open_out(path, std::ios::out | std::ios::binary);
  o << "P5\n" << grid.resolution << ' ' << grid.resolution << "\n65535\n";
  std::vector<unsigned char> line(2 * static_cast<std::size_t>(grid.resolution));
  for (int iy = grid.resolution - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.resolution; ++ix) {
      const double v = grid.at(ix, iy);
      const auto g = std::isfinite(v) ? static_cast<std::uint16_t>(std::lround((v - lo) * scale)) : std::uint16_t{0};
      line[2 * ix] = static_cast<unsigned char>(g >> 8);
      line[2 * ix + 1] = static_cast<unsigned char>(g & 0xff);
    }
    o.write(reinterpret_cast<const char*>(line.data()), static_cast<std::streamsize>(line.size()));
  }
  if (!o) throw IoError("write failed: " + path);

  auto w = open_out(path + ".window");
  write_header(w, header);
  w << "min " << format_double(lo) << "\nmax " << format_double(hi) << '\n';
  if (!w) throw IoError("write failed: " + path + ".window");
}

void write_grid_csv(const std::string& path, const ReconGrid& grid, const std::vector<std::string>& header) {
  CsvWriter w(path, {"x", "y", "value"}, header);
  for (int iy = 0; iy < grid.resolution; ++iy)
    for (int ix = 0; ix < grid.resolution; ++ix) w.row({grid.coord(ix), grid.coord(iy), grid.at(ix, iy)});
  w.close();
}

void write_sinogram_binary(const std::string& path, const Sinogram& s) {
  const ScanGeometry& g = s.geometry();
  auto o = open_out(path, std::ios::out | std::ios::binary);
  o.write(kMagic, sizeof kMagic);
  put<std::int32_t>(o, g.n0);
  put<std::int32_t>(o, s.aperture() == Aperture::box ? 1 : 0);
  put<double>(o, g.L);
  put<double>(o, g.q_alpha);
  for (int k = 0; k < g.n0; ++k) {
    const auto r = s.row(k);
    o.write(reinterpret_cast<const char*>(r.data()), static_cast<std::streamsize>(r.size_bytes()));
  }
  if (!o) throw IoError("write failed: " + path);
}

Sinogram read_sinogram_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw IoError(path + ": not a sinogram file (bad magic)");
  const auto n0 = get<std::int32_t>(in, path);
  const auto ap = get<std::int32_t>(in, path);
  const auto L = get<double>(in, path);
  const auto q = get<double>(in, path);
  if (ap != 0 && ap != 1) throw IoError(path + ": bad aperture flag");
  Sinogram s(build_geometry(n0, L, q), ap ? Aperture::box : Aperture::none);
  for (int k = 0; k < n0; ++k) {
    auto r = s.row(k);
    if (!in.read(reinterpret_cast<char*>(r.data()), static_cast<std::streamsize>(r.size_bytes())))
      throw IoError(path + ": truncated sinogram file");
  }
  return s;
}

void write_sinogram_csv(const std::string& path, const Sinogram& s, const std::vector<std::string>& header) {
  const ScanGeometry& g = s.geometry();
  CsvWriter w(path, {"k", "j", "alpha", "p", "value"}, header);
  for (int k = 0; k < g.n0; ++k)
    for (int j = 0; j <= g.n0; ++j) w.row({double(k), double(j), g.alpha(k), g.p(j), s.at(k, j)});
  w.close();
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

}  // namespace ltomo
