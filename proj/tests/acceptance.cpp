// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ltomo/experiments.hpp"
#include "ltomo/metrics.hpp"
#include "ltomo/transition.hpp"

using namespace ltomo;
using std::numbers::pi;

namespace {

constexpr double kL = 5.0;
const Point kDiskCenter{2.0, 1.5};

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const Kernel& kern() {
  static const Kernel k = Kernel::standard();
  return k;
}

Phantom disk_phantom() { return Phantom({Disk{kDiskCenter, 1.0, 1.0}}); }

Outcome kernel_axioms() {
  const auto t0 = std::chrono::steady_clock::now();
  const Kernel k = Kernel::standard();
  const auto grid = uniform_grid(-5.0, 5.0, 1e-3);
  double worst = 0;
  for (int m = 0; m <= 2; ++m) worst = std::max(worst, exactness_defect(k, m, grid));
  const auto c = certify(k);
  const double dt = seconds_since(t0);
  const bool ok = worst < 1e-10 && c.integral_error < 1e-14 && c.evenness_defect < 1e-14 && dt < 1.0;
  return {ok, fmt("max exactness defect %.2e, |int - 1| %.2e, evenness %.2e, %.2f s", worst, c.integral_error,
                  c.evenness_defect, dt)};
}

Outcome genericity_values() {
  const auto g = build_geometry(1000, kL);
  auto a = [&](double th) { return genericity(kDiskCenter + direction(th), th, g.kappa).a; };
  const double bad = a(0.73 * pi), good = a(std::numbers::sqrt2 * pi);
  const bool ok = std::abs(bad + 1.006592) < 1e-5 && std::abs(good - 0.617327) < 1e-5;
  return {ok, fmt("a(0.73pi) = %.7f, a(sqrt2 pi) = %.7f", bad, good)};
}

Outcome edge_response_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  const PsiEvaluator ev(lt_params(), kern());
  double worst = 0;
  for (int i = 0; i <= 80; ++i) {
    const double h = -4.0 + 0.1 * i;
    worst = std::max(worst, std::abs(dtb_double_integral_oracle(ev, h, 50.0) - lt_edge_response(kern(), 1.0, h)));
  }
  const double dt = seconds_since(t0);
  return {worst < 1e-4 && dt < 30.0, fmt("max |oracle - Phi| over 81 h = %.2e, %.1f s", worst, dt)};
}

double profile_rms(double theta0, Aperture ap) {
  const Phantom ph = disk_phantom();
  const auto s = sample_sinogram(ph, build_geometry(5000, kL), ap);
  return profile_compare(edge_profile(s, kern(), edge_site(ph, 0, theta0), -4.0, 4.0, 161)).rms_rel;
}

double c4_none = 0, c4_box = 0;

Outcome dtb_generic() {
  c4_none = profile_rms(std::numbers::sqrt2 * pi, Aperture::none);
  c4_box = profile_rms(std::numbers::sqrt2 * pi, Aperture::box);
  return {c4_none < 0.10 && c4_box < 0.10, fmt("rms_rel none %.4f, box %.4f (limit 0.10)", c4_none, c4_box)};
}

Outcome dtb_non_generic() {
  const double none = profile_rms(0.73 * pi, Aperture::none), box = profile_rms(0.73 * pi, Aperture::box);
  const bool ok = none >= 3 * c4_none && box >= 3 * c4_box;
  return {ok, fmt("rms_rel none %.4f (%.1fx), box %.4f (%.1fx); need >= 3x", none, none / c4_none, box, box / c4_box)};
}

Outcome ripple_scaling() {
  const std::vector<int> n0s{1000, 2500, 5000};
  bool ok = true;
  std::string detail;
  for (Aperture ap : {Aperture::none, Aperture::box}) {
    std::vector<double> sig;
    for (int n0 : n0s) sig.push_back(ripple_stats(disk_phantom(), n0, kL, std::numbers::sqrt2, ap, 1001, kRippleRoi, kern()).std);
    const auto rep = scaling_report(sig, n0s);
    const bool r1 = rep.ratios[1] >= 1.45 && rep.ratios[1] <= 1.80, r2 = rep.ratios[2] >= 2.10 && rep.ratios[2] <= 2.60;
    ok = ok && r1 && r2;
    detail += fmt("%s sigma %.4f/%.4f/%.4f ratios %.4f %.4f; ", ap == Aperture::box ? "box" : "none", sig[0], sig[1],
                  sig[2], rep.ratios[1], rep.ratios[2]);
  }
  return {ok, detail + "windows [1.45,1.80] [2.10,2.60]"};
}

Outcome line_artifact() {
  const Phantom square({Rect{kDiskCenter, 0.5, 0.5, 1.0}});
  const Phantom inscribed({Disk{kDiskCenter, 0.5, 1.0}});
  const auto line = edge_extension(square, 0, 0, 0.25, 2.5, 46, kL);
  std::vector<double> sq_max, ratio;
  std::string detail;
  for (int n0 : {1000, 2500, 5000}) {
    const auto g = build_geometry(n0, kL);
    auto max_abs = [&](const Phantom& ph) {
      const auto v = scaled_recon(sample_sinogram(ph, g, Aperture::box), kern(), line.points);
      double m = 0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    };
    const double s = max_abs(square), d = max_abs(inscribed);
    sq_max.push_back(s);
    ratio.push_back(s / d);
    detail += fmt("n0=%d square %.4f disk %.4f ratio %.1f; ", n0, s, d, s / d);
  }
  const double spread = *std::max_element(sq_max.begin(), sq_max.end()) / *std::min_element(sq_max.begin(), sq_max.end());
  const bool ok = spread <= 3.0 && *std::min_element(ratio.begin(), ratio.end()) >= 10.0;
  return {ok, detail + fmt("spread %.2f (<= 3), min ratio %.1f (>= 10)", spread, *std::min_element(ratio.begin(), ratio.end()))};
}

Outcome exact3d() {
  const auto spec = CtbSpec::from_params(exact3d_params());
  const DtbEvaluator d(spec, kern());
  const PiecewisePoly& phi = kern().centered(0);
  double worst = 0;
  for (int i = 0; i <= 800; ++i) {
    const double h = -4.0 + 0.01 * i;
    worst = std::max(worst, std::abs(d(h) - cplx(-phi.integral_from(h))));
  }
  const double lo = std::abs(d(-4.0) + 1.0), hi = std::abs(d(4.0));
  return {worst < 1e-10 && lo < 1e-10 && hi < 1e-10, fmt("max defect %.2e, |dtb(-4)+1| %.1e, |dtb(4)| %.1e", worst, lo, hi)};
}

Outcome psi_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const PsiEvaluator ev(lt_params(), kern());
  boost::math::quadrature::tanh_sinh<double> ts;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  auto frac = [](double x) { return x - std::floor(x); };

  double psi_err = 0, shift_err = 0;
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng), p = u(rng);
    std::vector<double> cuts{0.0, frac(-t), frac(-p), 1.0};
    std::sort(cuts.begin(), cuts.end());
    cplx s{};
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      if (cuts[c + 1] - cuts[c] < 1e-15) continue;
      auto f = [&](double r) { return ev.psi(t + r, r + p); };
      s += cplx(ts.integrate([&](double r) { return f(r).real(); }, cuts[c], cuts[c + 1], 1e-12),
                ts.integrate([&](double r) { return f(r).imag(); }, cuts[c], cuts[c + 1], 1e-12));
    }
    psi_err = std::max(psi_err, std::abs(s - ev.capital_psi(t - p)));
    shift_err = std::max(shift_err, std::abs(ev.psi(t + 1, p + 1) - ev.psi(t, p)));
  }

  // Least-squares slope of log|psi(t, -P)| against log P.
  std::vector<double> lx, ly;
  for (double P = 50; P <= 1600; P *= 1.5) {
    double acc = 0;
    for (double t = 0.05; t < 1.0; t += 0.1) acc += std::abs(ev.psi(t, -P));
    lx.push_back(std::log(P));
    ly.push_back(std::log(acc));
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) sx += lx[i], sy += ly[i], sxx += lx[i] * lx[i], sxy += lx[i] * ly[i];
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  const double dt = seconds_since(t0);
  const bool ok = psi_err < 1e-8 && shift_err < 1e-12 && std::abs(slope + 1.5) <= 0.05 && dt < 30.0;
  return {ok, fmt("psi-Psi %.2e, shift %.2e, decay slope %.4f, %.1f s", psi_err, shift_err, slope, dt)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"kernel axioms", kernel_axioms},
      {"genericity values", genericity_values},
      {"edge-response identity", edge_response_identity},
      {"DTB match at generic point", dtb_generic},
      {"genericity sensitivity", dtb_non_generic},
      {"ripple scaling", ripple_scaling},
      {"line artifact", line_artifact},
      {"3D exact DTB", exact3d},
      {"psi/Psi suite", psi_suite},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu (%s): %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
