#pragma once

// First-preference tally kernels.
//
// Every round of a count (and every step of the feasibility check) asks the
// same question of the fixed bound ballots: given the still-active candidates,
// which candidate does each ballot currently count for? Ballots are stored
// slot-major as bytes so the SIMD variants can process 32 (AVX2) or 16 (NEON)
// ballots per instruction.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rcv/candidate_set.hpp"

namespace rcv {
struct BallotSignature;
}

namespace rcv::kernels {

inline constexpr std::uint8_t kEmptySlot = 0xFF;
inline constexpr std::size_t kRowAlignment = 32;

/// Bound ballots laid out as `width` slot planes of `padded_rows` bytes each.
/// Padding rows and unused slots hold kEmptySlot.
class BallotMatrix {
 public:
  BallotMatrix() = default;
  BallotMatrix(std::span<const BallotSignature> ballots, std::size_t width);

  std::size_t rows() const { return rows_; }
  std::size_t padded_rows() const { return padded_rows_; }
  std::size_t width() const { return width_; }
  const std::uint8_t* slot(std::size_t k) const { return data_.data() + k * padded_rows_; }

 private:
  std::size_t rows_ = 0;
  std::size_t padded_rows_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Adds to counts[c] the number of ballots whose highest-ranked active candidate is c.
/// counts.size() must cover every candidate id that appears in the matrix.
using TallyFn = void (*)(const BallotMatrix&, CandidateSet active, std::span<std::uint64_t> counts);

void tally_scalar(const BallotMatrix& m, CandidateSet active, std::span<std::uint64_t> counts);
#if defined(__x86_64__) || defined(_M_X64)
/// Valid for candidate ids < 32 only.
void tally_avx2(const BallotMatrix& m, CandidateSet active, std::span<std::uint64_t> counts);
#endif
#if defined(__aarch64__)
/// Valid for candidate ids < 32 only.
void tally_neon(const BallotMatrix& m, CandidateSet active, std::span<std::uint64_t> counts);
#endif

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// Best variant supported by the running CPU for `candidate_count` candidates.
/// RCV_SIMD=scalar in the environment forces the reference kernel.
Isa detect_isa(std::size_t candidate_count);

TallyFn tally_kernel(Isa isa);

/// All variants usable on this machine; the equivalence tests iterate these.
std::vector<Isa> available_isas();

}  // namespace rcv::kernels
