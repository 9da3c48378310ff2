#include "threefold/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace threefold::kernels {

bool avx2_available() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Ops* pick_auto() {
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_available()) return &avx2_ops;
#endif
  return &scalar_ops;
}

const Ops* pick_named(const char* name) {
  if (std::strcmp(name, "scalar") == 0) return &scalar_ops;
  if (std::strcmp(name, "auto") == 0) return pick_auto();
  if (std::strcmp(name, "avx2") == 0) {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) return &avx2_ops;
    throw std::invalid_argument("kernels: avx2 requested but not supported by this CPU");
#else
    throw std::invalid_argument("kernels: avx2 requested on a non-x86 build");
#endif
  }
  throw std::invalid_argument(std::string("kernels: unknown variant '") + name + "'");
}

const Ops* initial_pick() {
  if (const char* env = std::getenv("THREEFOLD_KERNELS")) return pick_named(env);
  return pick_auto();
}

const Ops*& current() {
  static const Ops* ops = initial_pick();
  return ops;
}

}  // namespace

const Ops& active() { return *current(); }

void force(const char* name) { current() = pick_named(name); }

}  // namespace threefold::kernels
