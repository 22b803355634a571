#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gazetrack/types.hpp"

namespace gazetrack {

// Voxel counts along x, y, z. Memory order is x-fastest.
struct GridDims {
  int nx = 1;
  int ny = 1;
  int nz = 1;

  std::size_t voxel_count() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
  }
  int operator[](int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
  Vec3 as_vec() const { return {double(nx), double(ny), double(nz)}; }
  bool operator==(const GridDims&) const = default;
};

/// One 3D intensity grid of a time series.
///
/// Immutable after construction; the constructor enforces the shape
/// invariants (positive dims and voxel sizes, matching buffer length).
class VolumeTimepoint {
 public:
  VolumeTimepoint(GridDims dims, Vec3 voxel_size, std::vector<std::uint16_t> intensities);

  const GridDims& dims() const { return dims_; }
  const Vec3& voxel_size() const { return voxel_size_; }
  std::span<const std::uint16_t> intensities() const { return intensities_; }

  std::size_t linear_index(int x, int y, int z) const {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(dims_.nx) *
               (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims_.ny) * static_cast<std::size_t>(z));
  }
  std::uint16_t at(int x, int y, int z) const { return intensities_[linear_index(x, y, z)]; }

  // Normalized local coordinate of the centre of voxel (x, y, z).
  Vec3 voxel_center(int x, int y, int z) const;

 private:
  GridDims dims_;
  Vec3 voxel_size_;
  std::vector<std::uint16_t> intensities_;
};

/// Shape and placement shared by every timepoint of a dataset.
struct VolumeGeometry {
  GridDims dims;
  Vec3 voxel_size = Vec3::Ones();
  // Maps normalized volume-local coordinates [0,1]^3 to world space.
  Affine3 local_to_world = Affine3::Identity();

  // Scales the unit cube to the physical extent dims * voxel_size with the
  // local origin at the world origin.
  static Affine3 default_transform(const GridDims& dims, const Vec3& voxel_size);
  static VolumeGeometry with_default_transform(const GridDims& dims, const Vec3& voxel_size);

  Affine3 world_to_local() const { return local_to_world.inverse(); }
  Vec3 to_world(const Vec3& local) const { return local_to_world * local; }
  Vec3 to_local(const Vec3& world) const { return world_to_local() * world; }

  // Throws ValidationError when dims/voxel_size are not positive or the
  // transform is singular.
  void validate() const;
};

class Dataset {
 public:
  Dataset(VolumeGeometry geometry, std::vector<VolumeTimepoint> timepoints);

  const VolumeGeometry& geometry() const { return geometry_; }
  std::size_t timepoint_count() const { return timepoints_.size(); }
  const VolumeTimepoint& timepoint(std::size_t t) const { return timepoints_.at(t); }
  std::span<const VolumeTimepoint> timepoints() const { return timepoints_; }

 private:
  VolumeGeometry geometry_;
  std::vector<VolumeTimepoint> timepoints_;
};

struct Ray {
  Vec3 origin = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();

  // Normalizes `direction`; throws ValidationError for a zero vector.
  static Ray through(const Vec3& origin, const Vec3& direction);
  Vec3 at(double t) const { return origin + t * direction; }
};

// Entry/exit of a ray through the unit cube, in normalized local coordinates.
// t_entry/t_exit are ray parameters, so for a world-space Ray they are world
// distances from the ray origin.
struct VolumeHit {
  Vec3 entry;
  Vec3 exit;
  double t_entry = 0.0;
  double t_exit = 0.0;
};

// Slab test against [0,1]^3 for a ray already expressed in local coordinates.
// The direction need not be unit length. An origin inside the cube clamps
// the entry to the origin (t_entry = 0).
std::optional<VolumeHit> intersect_unit_cube(const Vec3& local_origin, const Vec3& local_direction);

std::optional<VolumeHit> intersect_volume(const Ray& ray, const VolumeGeometry& geometry);

// Trilinear interpolation with the voxel-centre convention: voxel i covers
// [i/n, (i+1)/n) and its value sits at (i+0.5)/n. Positions between the last
// centre and the face clamp to the edge value. Throws std::domain_error
// outside [0,1]^3.
double sample_trilinear(const VolumeTimepoint& volume, const Vec3& p);

struct RaySample {
  Vec3 position;
  double intensity = 0.0;
};

// Physical step along a segment: spacing_voxels times the smallest voxel edge.
double ray_step_length(const VolumeTimepoint& volume, double spacing_voxels);

// Physical length of a local-coordinate segment, measured through voxel_size.
double segment_physical_length(const VolumeTimepoint& volume, const Vec3& a, const Vec3& b);

/// Samples the segment entry->exit at floor(length/step) + 1 (at least 2)
/// evenly spaced positions, both endpoints included. Throws ValidationError
/// for spacing <= 0 or a degenerate segment.
std::vector<RaySample> sample_ray(const VolumeTimepoint& volume, const Vec3& entry, const Vec3& exit,
                                  double spacing_voxels = 1.0);

}  // namespace gazetrack
