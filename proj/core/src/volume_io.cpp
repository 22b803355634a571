#include "gazetrack/volume_io.hpp"

#include <cstdio>

#include <json.hpp>

#include "gazetrack/fileutil.hpp"

namespace gazetrack {
namespace {

using nlohmann::json;

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("dataset sidecar missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("dataset sidecar field '") + key + "': " + e.what());
  }
}

}  // namespace

DatasetSidecar parse_sidecar(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("dataset sidecar is not valid JSON: ") + e.what());
  }
  const auto dims = get_field<std::array<int, 3>>(j, "dims");
  const auto vs = get_field<std::array<double, 3>>(j, "voxel_size");
  DatasetSidecar out;
  out.geometry = VolumeGeometry::with_default_transform({dims[0], dims[1], dims[2]}, {vs[0], vs[1], vs[2]});
  out.timepoint_files = get_field<std::vector<std::string>>(j, "timepoints");
  if (j.contains("world_transform")) {
    const auto m = get_field<std::array<std::array<double, 4>, 4>>(j, "world_transform");
    Eigen::Matrix4d mat;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) mat(r, c) = m[r][c];
    if (mat.row(3) != Eigen::RowVector4d(0, 0, 0, 1)) {
      throw FormatError("world_transform must be affine (last row 0,0,0,1)");
    }
    out.geometry.local_to_world = Affine3(mat);
  }
  out.geometry.validate();
  if (out.timepoint_files.empty()) throw FormatError("dataset sidecar lists no timepoints");
  return out;
}

std::string sidecar_to_json(const DatasetSidecar& sidecar) {
  const auto& g = sidecar.geometry;
  json j;
  j["dims"] = {g.dims.nx, g.dims.ny, g.dims.nz};
  j["voxel_size"] = {g.voxel_size.x(), g.voxel_size.y(), g.voxel_size.z()};
  j["timepoints"] = sidecar.timepoint_files;
  json rows = json::array();
  const Eigen::Matrix4d m = g.local_to_world.matrix();
  for (int r = 0; r < 4; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2), m(r, 3)});
  j["world_transform"] = rows;
  return j.dump(2) + "\n";
}

DatasetSidecar read_sidecar(const std::filesystem::path& path) { return parse_sidecar(read_file(path)); }

VolumeTimepoint read_raw_timepoint(const std::filesystem::path& path, const GridDims& dims, const Vec3& voxel_size) {
  const std::string bytes = read_file(path);
  const std::size_t n = dims.voxel_count();
  if (bytes.size() != 2 * n) {
    throw FormatError(path.string() + ": expected " + std::to_string(2 * n) + " bytes, found " +
                      std::to_string(bytes.size()));
  }
  std::vector<std::uint16_t> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto lo = static_cast<unsigned char>(bytes[2 * i]);
    const auto hi = static_cast<unsigned char>(bytes[2 * i + 1]);
    values[i] = static_cast<std::uint16_t>(lo | (hi << 8));
  }
  return VolumeTimepoint(dims, voxel_size, std::move(values));
}

Dataset load_dataset(const std::filesystem::path& sidecar_path) {
  auto sidecar = read_sidecar(sidecar_path);
  const auto base = sidecar_path.parent_path();
  std::vector<VolumeTimepoint> tps;
  tps.reserve(sidecar.timepoint_files.size());
  for (const auto& name : sidecar.timepoint_files) {
    tps.push_back(read_raw_timepoint(base / name, sidecar.geometry.dims, sidecar.geometry.voxel_size));
  }
  return Dataset(sidecar.geometry, std::move(tps));
}

std::string encode_raw(const VolumeTimepoint& volume) {
  const auto values = volume.intensities();
  std::string bytes(2 * values.size(), '\0');
  for (std::size_t i = 0; i < values.size(); ++i) {
    bytes[2 * i] = static_cast<char>(values[i] & 0xFF);
    bytes[2 * i + 1] = static_cast<char>(values[i] >> 8);
  }
  return bytes;
}

std::vector<std::string> write_dataset(const Dataset& dataset, const std::filesystem::path& dir,
                                       const std::string& sidecar_name) {
  std::filesystem::create_directories(dir);
  DatasetSidecar sidecar{dataset.geometry(), {}};
  for (std::size_t t = 0; t < dataset.timepoint_count(); ++t) {
    char name[32];
    std::snprintf(name, sizeof(name), "t%03zu.raw", t);
    write_file_atomic(dir / name, encode_raw(dataset.timepoint(t)));
    sidecar.timepoint_files.emplace_back(name);
  }
  write_file_atomic(dir / sidecar_name, sidecar_to_json(sidecar));
  auto written = sidecar.timepoint_files;
  written.push_back(sidecar_name);
  return written;
}

}  // namespace gazetrack
