#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcv/election.hpp"

namespace rcv::ingest {

enum class Format { json, csv };

/// Picks csv for a ".csv" extension, json otherwise.
Format format_for(const std::filesystem::path& path);

/// Candidate table and counts that a CSV ballot file cannot carry itself.
struct CsvMetadata {
  std::vector<std::string> candidates;
  std::uint32_t max_rankings = 0;
  std::uint64_t unbound_count = 0;
};

/// Default sidecar location: "<csv path>.meta.json".
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

struct ReadStats {
  std::size_t rows = 0;
  std::size_t blank_rows = 0;  ///< rows with no countable ranking, not kept as ballots
};

/// Cleans one row of rank-slot tokens:
///   - "undervote" and empty cells are skipped, later ranks move up;
///   - the first "overvote" ends the ranking;
///   - a repeated candidate keeps its first position only.
/// Reserved tokens are case-insensitive. Throws UnknownCandidate.
BallotSignature normalize_row(const ElectionProfile& table, const std::vector<std::string>& cells);

/// Throws ParseError, UnknownCandidate, ValidationError or IoError.
ElectionProfile read_profile(const std::filesystem::path& path, Format format,
                             const std::optional<CsvMetadata>& meta = std::nullopt, ReadStats* stats = nullptr);

/// For csv also writes the sidecar next to the file. Throws IoError.
void write_profile(const ElectionProfile& profile, const std::filesystem::path& path, Format format);

ElectionProfile parse_json_profile(std::string_view text, ReadStats* stats = nullptr);
std::string to_json_text(const ElectionProfile& profile);

CsvMetadata parse_metadata(std::string_view text);

}  // namespace rcv::ingest
