#include <cstdlib>
#include <string>

#include "rcv/kernels/tally.hpp"

namespace rcv::kernels {

namespace {

bool forced_scalar() {
  const char* v = std::getenv("RCV_SIMD");
  return v != nullptr && std::string(v) == "scalar";
}

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

Isa detect_isa(std::size_t candidate_count) {
  if (forced_scalar() || candidate_count > 32) return Isa::scalar;
  if (cpu_has(Isa::avx2)) return Isa::avx2;
  if (cpu_has(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

TallyFn tally_kernel(Isa isa) {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2: return &tally_avx2;
#endif
#if defined(__aarch64__)
    case Isa::neon: return &tally_neon;
#endif
    default: return &tally_scalar;
  }
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
  for (Isa isa : {Isa::avx2, Isa::neon})
    if (cpu_has(isa)) out.push_back(isa);
  return out;
}

}  // namespace rcv::kernels
