#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "rcv/kernels/tally.hpp"

namespace rcv::kernels {

namespace {

// 32-entry "is active" lookup split across two pshufb tables. pshufb yields 0
// for bytes with the high bit set, so kEmptySlot reads as inactive.
__attribute__((target("avx2"))) inline __m256i broadcast_lut(std::uint64_t bits, unsigned base) {
  alignas(16) std::uint8_t lut[16];
  for (unsigned j = 0; j < 16; ++j) lut[j] = ((bits >> (base + j)) & 1U) ? 0xFF : 0x00;
  return _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(lut)));
}

}  // namespace

__attribute__((target("avx2,popcnt"))) void tally_avx2(const BallotMatrix& m, CandidateSet active,
                                                       std::span<std::uint64_t> counts) {
  const std::uint64_t bits = active.bits();
  const __m256i lut_lo = broadcast_lut(bits, 0);
  const __m256i lut_hi = broadcast_lut(bits, 16);
  const __m256i bit4 = _mm256_set1_epi8(0x10);
  const __m256i none = _mm256_set1_epi8(static_cast<char>(kEmptySlot));
  const auto members = active.members();

  for (std::size_t i = 0; i < m.padded_rows(); i += 32) {
    __m256i chosen = none;
    __m256i found = _mm256_setzero_si256();
    for (std::size_t k = 0; k < m.width(); ++k) {
      const __m256i ids = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(m.slot(k) + i));
      const __m256i lo = _mm256_shuffle_epi8(lut_lo, ids);
      const __m256i hi = _mm256_shuffle_epi8(lut_hi, ids);
      const __m256i upper = _mm256_cmpeq_epi8(_mm256_and_si256(ids, bit4), bit4);
      const __m256i act = _mm256_blendv_epi8(lo, hi, upper);
      const __m256i take = _mm256_andnot_si256(found, act);
      chosen = _mm256_blendv_epi8(chosen, ids, take);
      found = _mm256_or_si256(found, act);
    }
    for (CandidateId c : members) {
      const __m256i eq = _mm256_cmpeq_epi8(chosen, _mm256_set1_epi8(static_cast<char>(index(c))));
      counts[index(c)] += static_cast<std::uint64_t>(
          _mm_popcnt_u32(static_cast<unsigned>(_mm256_movemask_epi8(eq))));
    }
  }
}

}  // namespace rcv::kernels

#endif
