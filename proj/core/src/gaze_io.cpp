#include "gazetrack/gaze_io.hpp"

#include <sstream>

#include <json.hpp>

#include "gazetrack/fileutil.hpp"

namespace gazetrack {
namespace {

using nlohmann::json;

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const json& j) {
  const auto a = j.get<std::array<double, 3>>();
  return {a[0], a[1], a[2]};
}

}  // namespace

std::string spine_to_json_line(const Spine& s) {
  json j;
  j["timepoint"] = s.timepoint;
  j["entry"] = vec_json(s.entry);
  j["exit"] = vec_json(s.exit);
  j["confidence"] = s.confidence;
  j["head_position"] = vec_json(s.head_position);
  const auto& q = s.head_orientation;
  j["head_orientation"] = json::array({q.w(), q.x(), q.y(), q.z()});
  j["gaze_direction"] = vec_json(s.gaze_direction);
  j["samples"] = s.samples;
  json positions = json::array();
  for (const auto& p : s.sample_positions) positions.push_back(vec_json(p));
  j["sample_positions"] = std::move(positions);
  return j.dump();
}

Spine spine_from_json_line(const std::string& line) {
  Spine s;
  try {
    const json j = json::parse(line);
    s.timepoint = j.at("timepoint").get<int>();
    s.entry = vec_from(j.at("entry"));
    s.exit = vec_from(j.at("exit"));
    s.confidence = j.at("confidence").get<double>();
    s.head_position = vec_from(j.at("head_position"));
    const auto q = j.at("head_orientation").get<std::array<double, 4>>();
    s.head_orientation = Quat(q[0], q[1], q[2], q[3]);
    s.gaze_direction = vec_from(j.at("gaze_direction"));
    s.samples = j.at("samples").get<std::vector<double>>();
    for (const auto& p : j.at("sample_positions")) s.sample_positions.push_back(vec_from(p));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed spine record: ") + e.what());
  }
  s.validate();
  return s;
}

std::string encode_spines_jsonl(const Hedgehog& h) {
  std::string out;
  for (const auto& s : h.spines) {
    out += spine_to_json_line(s);
    out += '\n';
  }
  return out;
}

Hedgehog decode_spines_jsonl(const std::string& text, std::string dataset_ref) {
  Hedgehog h{std::move(dataset_ref), {}};
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      h.spines.push_back(spine_from_json_line(line));
    } catch (const ValidationError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  h.validate();
  return h;
}

void write_spines_jsonl(const Hedgehog& h, const std::filesystem::path& path) {
  write_file_atomic(path, encode_spines_jsonl(h));
}

Hedgehog read_spines_jsonl(const std::filesystem::path& path) {
  return decode_spines_jsonl(read_file(path), path.filename().string());
}

std::string encode_pgm(const PlaneRaster& raster) {
  std::string out = "P5\n" + std::to_string(raster.width) + " " + std::to_string(raster.height) + "\n255\n";
  out.reserve(out.size() + raster.pixels.size());
  for (std::size_t row = raster.height; row-- > 0;) {
    const auto* begin = raster.pixels.data() + row * raster.width;
    out.append(reinterpret_cast<const char*>(begin), raster.width);
  }
  return out;
}

std::string encode_overlay_csv(const PlaneRaster& raster) {
  std::string out = "spine_index,sample_index\n";
  for (const auto& m : raster.overlay) {
    out += std::to_string(m.spine_index) + "," + std::to_string(m.sample_index) + "\n";
  }
  return out;
}

}  // namespace gazetrack
