#include <atomic>
#include <cstdlib>
#include <string>

#include "ltomo/simd/backproject.hpp"

namespace ltomo::simd {
namespace {

struct Variant {
  std::string_view name;
  BackprojectFn fn;
};

std::atomic<int> g_active{-1};

constexpr Variant kVariants[] = {
    {"scalar", &backproject_ref},
#if defined(LTOMO_BUILD_AVX2)
    {"avx2", &backproject_avx2},
#endif
};

bool usable(int i) {
  if (kVariants[i].name == "avx2") return avx2_available();
  return true;
}

int find(std::string_view name) {
  for (int i = 0; i < static_cast<int>(std::size(kVariants)); ++i)
    if (kVariants[i].name == name && usable(i)) return i;
  return -1;
}

int choose() {
  if (const char* env = std::getenv("LTOMO_SIMD")) {
    const std::string want(env);
    if (want != "auto") {
      const int i = find(want);
      if (i >= 0) return i;
    }
  }
  const int i = find("avx2");
  return i >= 0 ? i : 0;
}

int active() {
  int i = g_active.load(std::memory_order_acquire);
  if (i < 0) {
    i = choose();
    g_active.store(i, std::memory_order_release);
  }
  return i;
}

}  // namespace

bool avx2_available() {
#if defined(LTOMO_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

BackprojectFn backproject() { return kVariants[active()].fn; }

std::string_view backproject_name() { return kVariants[active()].name; }

bool select_backproject(std::string_view name) {
  const int i = name == "auto" ? choose() : find(name);
  if (i < 0) return false;
  g_active.store(i, std::memory_order_release);
  return true;
}

BackprojectFn backproject_variant(std::string_view name) {
  const int i = find(name);
  return i < 0 ? nullptr : kVariants[i].fn;
}

}  // namespace ltomo::simd
