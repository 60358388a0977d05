#if defined(__aarch64__)

#include <arm_neon.h>

#include "rcv/kernels/tally.hpp"

namespace rcv::kernels {

void tally_neon(const BallotMatrix& m, CandidateSet active, std::span<std::uint64_t> counts) {
  const std::uint64_t bits = active.bits();
  // tbl on a 32-byte table returns 0 for out-of-range indices, including kEmptySlot.
  std::uint8_t table[32];
  for (unsigned j = 0; j < 32; ++j) table[j] = ((bits >> j) & 1U) ? 0xFF : 0x00;
  uint8x16x2_t lut;
  lut.val[0] = vld1q_u8(table);
  lut.val[1] = vld1q_u8(table + 16);
  const auto members = active.members();

  // padded_rows is a multiple of 32, hence of 16.
  for (std::size_t i = 0; i < m.padded_rows(); i += 16) {
    uint8x16_t chosen = vdupq_n_u8(kEmptySlot);
    uint8x16_t found = vdupq_n_u8(0);
    for (std::size_t k = 0; k < m.width(); ++k) {
      const uint8x16_t ids = vld1q_u8(m.slot(k) + i);
      const uint8x16_t act = vqtbl2q_u8(lut, ids);
      const uint8x16_t take = vbicq_u8(act, found);
      chosen = vbslq_u8(take, ids, chosen);
      found = vorrq_u8(found, act);
    }
    for (CandidateId c : members) {
      const uint8x16_t eq = vceqq_u8(chosen, vdupq_n_u8(static_cast<std::uint8_t>(index(c))));
      counts[index(c)] += vaddvq_u8(vandq_u8(eq, vdupq_n_u8(1)));
    }
  }
}

}  // namespace rcv::kernels

#endif
