#include <random>

#include <doctest.h>

#include "rcv/kernels/tally.hpp"
#include "rcv/oracle.hpp"

using namespace rcv;
using namespace rcv::kernels;

namespace {

// Straight from the definition: first ranked candidate that is still active.
std::vector<std::uint64_t> reference_tally(std::span<const BallotSignature> ballots, CandidateSet active,
                                           std::size_t n) {
  std::vector<std::uint64_t> t(n, 0);
  for (const auto& b : ballots)
    for (CandidateId c : b.rankings)
      if (active.contains(c)) {
        ++t[index(c)];
        break;
      }
  return t;
}

}  // namespace

TEST_CASE("every available tally kernel matches the definition") {
  std::mt19937_64 rng(7);
  for (Isa isa : available_isas()) {
    CAPTURE(isa_name(isa));
    const TallyFn fn = tally_kernel(isa);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const std::size_t n = 1 + seed % 32;
      const std::size_t rows = seed * 7 % 301;  // exercises partial blocks
      const auto p = oracle::random_profile({n, rows, 0, static_cast<std::uint32_t>(1 + seed % 6), seed});
      std::size_t width = 0;
      for (const auto& b : p.bound_ballots) width = std::max(width, b.size());
      const BallotMatrix m(p.bound_ballots, width);
      for (int trial = 0; trial < 5; ++trial) {
        const CandidateSet active(rng() & CandidateSet::first(n).bits());
        std::vector<std::uint64_t> got(n, 0);
        fn(m, active, got);
        CHECK(got == reference_tally(p.bound_ballots, active, n));
      }
    }
  }
}

TEST_CASE("matrix pads to whole SIMD blocks with empty slots") {
  const std::vector<BallotSignature> ballots{{{candidate(1), candidate(0)}}, {{candidate(2)}}};
  const BallotMatrix m(ballots, 2);
  CHECK(m.rows() == 2);
  CHECK(m.padded_rows() == kRowAlignment);
  CHECK(m.slot(0)[0] == 1);
  CHECK(m.slot(1)[1] == kEmptySlot);
  CHECK(m.slot(0)[31] == kEmptySlot);
}

TEST_CASE("empty matrix tallies nothing") {
  const BallotMatrix m({}, 0);
  for (Isa isa : available_isas()) {
    std::vector<std::uint64_t> got(4, 0);
    tally_kernel(isa)(m, CandidateSet::first(4), got);
    CHECK(got == std::vector<std::uint64_t>(4, 0));
  }
}

TEST_CASE("more than 32 candidates falls back to the scalar kernel") {
  CHECK(detect_isa(40) == Isa::scalar);
}
