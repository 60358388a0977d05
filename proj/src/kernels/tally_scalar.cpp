#include "rcv/kernels/tally.hpp"

namespace rcv::kernels {

void tally_scalar(const BallotMatrix& m, CandidateSet active, std::span<std::uint64_t> counts) {
  const std::uint64_t bits = active.bits();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.width(); ++k) {
      const std::uint8_t c = m.slot(k)[i];
      if (c == kEmptySlot) break;
      if ((bits >> c) & 1U) {
        ++counts[c];
        break;
      }
    }
  }
}

}  // namespace rcv::kernels
