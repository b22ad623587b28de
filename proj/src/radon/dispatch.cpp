#include <cstdlib>
#include <stdexcept>
#include <string>

#include "opident/radon/kernels.hpp"

namespace opident::radon::kernels {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, &line_integral_scalar, &projected_moments_scalar};

#if defined(OPIDENT_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2{Isa::Avx2, &line_integral_avx2, &projected_moments_avx2};
#endif

}  // namespace

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(OPIDENT_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!cpu_supports(isa)) {
    throw std::runtime_error("kernel ISA " + std::string(isa_name(isa)) + " unavailable on this CPU or build");
  }
#if defined(OPIDENT_HAVE_AVX2_KERNELS)
  if (isa == Isa::Avx2) return kAvx2;
#endif
  return kScalar;
}

const KernelTable& active() {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    const char* force = std::getenv("OPIDENT_FORCE_SCALAR");
    if (force != nullptr && std::string(force) == "1") return kScalar;
    return cpu_supports(Isa::Avx2) ? table(Isa::Avx2) : kScalar;
  }();
  return chosen;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "?";
}

}  // namespace opident::radon::kernels
