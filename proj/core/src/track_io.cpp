#include "gazetrack/track_io.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "gazetrack/fileutil.hpp"

namespace gazetrack {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line_no) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw FormatError("line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return value;
}

}  // namespace

std::string encode_tracks_csv(std::span<const TrackRecord> tracks, const std::string& id_column) {
  std::string out = id_column + ",timepoint,x,y,z\n";
  for (const auto& tr : tracks) {
    for (const auto& p : tr.points) {
      out += std::to_string(tr.track_id) + "," + std::to_string(p.timepoint) + "," + format_double(p.position.x()) +
             "," + format_double(p.position.y()) + "," + format_double(p.position.z()) + "\n";
    }
  }
  return out;
}

std::vector<TrackRecord> decode_tracks_csv(const std::string& text, const std::string& id_column) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty track CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string expected = id_column + ",timepoint,x,y,z";
  if (line != expected) throw FormatError("track CSV header must be '" + expected + "', got '" + line + "'");

  std::map<int, std::map<int, Vec3>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 5) throw FormatError("line " + std::to_string(line_no) + ": expected 5 columns");
    const int id = parse_number<int>(cells[0], line_no);
    const int t = parse_number<int>(cells[1], line_no);
    const Vec3 p{parse_number<double>(cells[2], line_no), parse_number<double>(cells[3], line_no),
                 parse_number<double>(cells[4], line_no)};
    if (!rows[id].emplace(t, p).second) {
      throw FormatError("line " + std::to_string(line_no) + ": duplicate timepoint " + std::to_string(t) +
                        " for id " + std::to_string(id));
    }
  }
  std::vector<TrackRecord> out;
  for (const auto& [id, points] : rows) {
    TrackRecord rec{id, {}};
    for (const auto& [t, p] : points) rec.points.push_back({t, p});
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace gazetrack
