#include "rcv/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rcv/errors.hpp"

namespace rcv::ingest {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

// One CSV record; quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cells.back().push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cells.back().push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else {
      cells.back().push_back(ch);
    }
  }
  if (quoted) throw ParseError(fmt::format("line {}: unterminated quote", line_no));
  return cells;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos && trim(s) == s) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

ElectionProfile finish(ElectionProfile p) {
  auto v = validate_profile(p);
  if (!v.empty()) {
    std::string msg = v.front().reason;
    if (v.size() > 1) msg += fmt::format(" (and {} more)", v.size() - 1);
    throw ValidationError(msg);
  }
  return p;
}

}  // namespace

Format format_for(const std::filesystem::path& path) {
  return lower(path.extension().string()) == ".csv" ? Format::csv : Format::json;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  return std::filesystem::path(csv.string() + ".meta.json");
}

BallotSignature normalize_row(const ElectionProfile& table, const std::vector<std::string>& cells) {
  BallotSignature out;
  std::uint64_t seen = 0;
  for (const auto& raw : cells) {
    const std::string_view cell = trim(raw);
    const std::string key = lower(cell);
    if (cell.empty() || key == "undervote") continue;
    if (key == "overvote") break;
    const auto c = table.find(cell);
    if (!c) throw UnknownCandidate(fmt::format("'{}' is not a declared candidate", cell));
    const std::uint64_t bit = std::uint64_t{1} << index(*c);
    if (seen & bit) continue;
    seen |= bit;
    out.rankings.push_back(*c);
  }
  return out;
}

CsvMetadata parse_metadata(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    CsvMetadata m;
    m.candidates = j.at("candidates").get<std::vector<std::string>>();
    m.max_rankings = j.value("max_rankings", std::uint32_t{0});
    m.unbound_count = j.value("unbound_count", std::uint64_t{0});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("metadata: {}", e.what()));
  }
}

ElectionProfile parse_json_profile(std::string_view text, ReadStats* stats) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("profile JSON: {}", e.what()));
  }
  ElectionProfile p;
  std::vector<std::vector<std::string>> rows;
  try {
    p.candidates = j.at("candidates").get<std::vector<std::string>>();
    p.max_rankings = j.at("max_rankings").get<std::uint32_t>();
    p.unbound_count = j.at("unbound_count").get<std::uint64_t>();
    rows = j.at("ballots").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("profile JSON: {}", e.what()));
  }
  if (p.candidates.size() > kMaxCandidates)
    throw ValidationError(fmt::format("more than {} candidates", kMaxCandidates));
  ReadStats local;
  p.bound_ballots.reserve(rows.size());
  for (const auto& row : rows) {
    ++local.rows;
    BallotSignature b = normalize_row(p, row);
    if (b.empty()) ++local.blank_rows;
    else p.bound_ballots.push_back(std::move(b));
  }
  if (stats) *stats = local;
  return finish(std::move(p));
}

std::string to_json_text(const ElectionProfile& profile) {
  nlohmann::ordered_json j;
  j["candidates"] = profile.candidates;
  j["max_rankings"] = profile.max_rankings;
  auto ballots = nlohmann::ordered_json::array();
  for (const auto& b : profile.bound_ballots) {
    auto row = nlohmann::ordered_json::array();
    for (CandidateId c : b.rankings) row.push_back(profile.name(c));
    ballots.push_back(std::move(row));
  }
  j["ballots"] = std::move(ballots);
  j["unbound_count"] = profile.unbound_count;
  return j.dump() + "\n";
}

ElectionProfile read_profile(const std::filesystem::path& path, Format format, const std::optional<CsvMetadata>& meta,
                             ReadStats* stats) {
  const std::string text = slurp(path);
  if (format == Format::json) return parse_json_profile(text, stats);

  const CsvMetadata m = meta ? *meta : parse_metadata(slurp(sidecar_path(path)));
  ElectionProfile p;
  p.candidates = m.candidates;
  p.unbound_count = m.unbound_count;
  if (p.candidates.size() > kMaxCandidates)
    throw ValidationError(fmt::format("more than {} candidates", kMaxCandidates));

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  ReadStats local;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
      const auto header = split_csv(line, line_no);
      for (std::size_t k = 0; k < header.size(); ++k)
        if (lower(trim(header[k])) != fmt::format("rank{}", k + 1))
          throw ParseError(fmt::format("header column {} must be 'rank{}'", k + 1, k + 1));
      width = header.size();
      if (m.max_rankings != 0 && width > m.max_rankings)
        throw ParseError(fmt::format("header declares {} ranks but max_rankings is {}", width, m.max_rankings));
      p.max_rankings = m.max_rankings != 0 ? m.max_rankings : static_cast<std::uint32_t>(width);
      continue;
    }
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    const auto cells = split_csv(line, line_no);
    if (cells.size() > width)
      throw ParseError(fmt::format("line {}: {} cells for {} rank columns", line_no, cells.size(), width));
    ++local.rows;
    BallotSignature b = normalize_row(p, cells);
    if (b.empty()) ++local.blank_rows;
    else p.bound_ballots.push_back(std::move(b));
  }
  if (line_no == 0) throw ParseError("empty CSV file");
  if (stats) *stats = local;
  return finish(std::move(p));
}

void write_profile(const ElectionProfile& profile, const std::filesystem::path& path, Format format) {
  if (format == Format::json) {
    spill(path, to_json_text(profile));
    return;
  }
  std::string out;
  for (std::uint32_t k = 0; k < profile.max_rankings; ++k) {
    if (k) out.push_back(',');
    out += fmt::format("rank{}", k + 1);
  }
  out.push_back('\n');
  for (const auto& b : profile.bound_ballots) {
    for (std::uint32_t k = 0; k < profile.max_rankings; ++k) {
      if (k) out.push_back(',');
      if (k < b.size()) out += csv_field(profile.name(b.rankings[k]));
    }
    out.push_back('\n');
  }
  spill(path, out);

  nlohmann::ordered_json meta;
  meta["candidates"] = profile.candidates;
  meta["max_rankings"] = profile.max_rankings;
  meta["unbound_count"] = profile.unbound_count;
  spill(sidecar_path(path), meta.dump(2) + "\n");
}

}  // namespace rcv::ingest
