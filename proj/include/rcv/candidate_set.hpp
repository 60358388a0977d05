#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rcv {

/// Dense index of a candidate within one profile.
enum class CandidateId : std::uint8_t {};

constexpr std::size_t index(CandidateId c) noexcept { return static_cast<std::size_t>(c); }
constexpr CandidateId candidate(std::size_t i) noexcept { return static_cast<CandidateId>(i); }

/// Upper bound on candidates per profile; sets are stored as a 64-bit mask.
inline constexpr std::size_t kMaxCandidates = 64;

/// Set of candidates backed by a bitmask.
class CandidateSet {
 public:
  constexpr CandidateSet() = default;
  constexpr explicit CandidateSet(std::uint64_t bits) : bits_(bits) {}

  /// {0, ..., n-1}
  static constexpr CandidateSet first(std::size_t n) {
    return CandidateSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr bool contains(CandidateId c) const { return (bits_ >> index(c)) & 1U; }
  constexpr void insert(CandidateId c) { bits_ |= std::uint64_t{1} << index(c); }
  constexpr void erase(CandidateId c) { bits_ &= ~(std::uint64_t{1} << index(c)); }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  std::vector<CandidateId> members() const {
    std::vector<CandidateId> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(candidate(std::countr_zero(b)));
    return out;
  }

  friend constexpr bool operator==(CandidateSet, CandidateSet) = default;
  friend constexpr CandidateSet operator|(CandidateSet a, CandidateSet b) { return CandidateSet(a.bits_ | b.bits_); }
  friend constexpr CandidateSet operator&(CandidateSet a, CandidateSet b) { return CandidateSet(a.bits_ & b.bits_); }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace rcv
