#include "rcv/election.hpp"
#include "rcv/kernels/tally.hpp"

namespace rcv::kernels {

BallotMatrix::BallotMatrix(std::span<const BallotSignature> ballots, std::size_t width)
    : rows_(ballots.size()),
      padded_rows_((ballots.size() + kRowAlignment - 1) / kRowAlignment * kRowAlignment),
      width_(width),
      data_(padded_rows_ * width, kEmptySlot) {
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    const auto& r = ballots[i].rankings;
    for (std::size_t k = 0; k < r.size() && k < width; ++k) data_[k * padded_rows_ + i] = static_cast<std::uint8_t>(r[k]);
  }
}

}  // namespace rcv::kernels
