#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gazetrack/volume.hpp"

namespace gazetrack {

// Sidecar JSON:
//   { "dims": [nx,ny,nz], "voxel_size": [vx,vy,vz],
//     "timepoints": ["t000.raw", ...],
//     "world_transform": [[...4 rows of 4...]] }      (optional)
// Raw files are little-endian uint16, x-fastest, exactly 2*nx*ny*nz bytes.
// Timepoint paths are resolved relative to the sidecar's directory.
struct DatasetSidecar {
  VolumeGeometry geometry;
  std::vector<std::string> timepoint_files;
};

DatasetSidecar parse_sidecar(const std::string& json_text);
std::string sidecar_to_json(const DatasetSidecar& sidecar);

DatasetSidecar read_sidecar(const std::filesystem::path& path);
VolumeTimepoint read_raw_timepoint(const std::filesystem::path& path, const GridDims& dims, const Vec3& voxel_size);
Dataset load_dataset(const std::filesystem::path& sidecar_path);

std::string encode_raw(const VolumeTimepoint& volume);

// Writes t000.raw, t001.raw, ... and the sidecar into `dir`. Returns the
// file names written, sidecar last.
std::vector<std::string> write_dataset(const Dataset& dataset, const std::filesystem::path& dir,
                                       const std::string& sidecar_name = "dataset.json");

}  // namespace gazetrack
