#include "gazetrack/volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gazetrack {
namespace {

constexpr double kUnitCubeTolerance = 1e-9;

void require_positive(const GridDims& dims, const Vec3& voxel_size) {
  if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1) {
    throw ValidationError("volume dims must be >= 1, got [" + std::to_string(dims.nx) + "," +
                          std::to_string(dims.ny) + "," + std::to_string(dims.nz) + "]");
  }
  if (!(voxel_size.array() > 0.0).all() || !voxel_size.allFinite()) {
    throw ValidationError("voxel_size components must be finite and > 0");
  }
}

Vec3 clamp_unit(const Vec3& p) { return p.cwiseMax(0.0).cwiseMin(1.0); }

}  // namespace

VolumeTimepoint::VolumeTimepoint(GridDims dims, Vec3 voxel_size, std::vector<std::uint16_t> intensities)
    : dims_(dims), voxel_size_(std::move(voxel_size)), intensities_(std::move(intensities)) {
  require_positive(dims_, voxel_size_);
  if (intensities_.size() != dims_.voxel_count()) {
    throw ValidationError("intensity buffer holds " + std::to_string(intensities_.size()) + " voxels, expected " +
                          std::to_string(dims_.voxel_count()));
  }
}

Vec3 VolumeTimepoint::voxel_center(int x, int y, int z) const {
  return {(x + 0.5) / dims_.nx, (y + 0.5) / dims_.ny, (z + 0.5) / dims_.nz};
}

Affine3 VolumeGeometry::default_transform(const GridDims& dims, const Vec3& voxel_size) {
  Affine3 t = Affine3::Identity();
  t.linear() = dims.as_vec().cwiseProduct(voxel_size).asDiagonal();
  return t;
}

VolumeGeometry VolumeGeometry::with_default_transform(const GridDims& dims, const Vec3& voxel_size) {
  return {dims, voxel_size, default_transform(dims, voxel_size)};
}

void VolumeGeometry::validate() const {
  require_positive(dims, voxel_size);
  const double det = local_to_world.linear().determinant();
  if (!std::isfinite(det) || std::abs(det) < 1e-300 || !local_to_world.matrix().allFinite()) {
    throw ValidationError("world_transform is not invertible");
  }
}

Dataset::Dataset(VolumeGeometry geometry, std::vector<VolumeTimepoint> timepoints)
    : geometry_(std::move(geometry)), timepoints_(std::move(timepoints)) {
  geometry_.validate();
  if (timepoints_.empty()) throw ValidationError("dataset needs at least one timepoint");
  for (const auto& tp : timepoints_) {
    if (!(tp.dims() == geometry_.dims) || tp.voxel_size() != geometry_.voxel_size) {
      throw ValidationError("all timepoints must share dims and voxel_size with the dataset geometry");
    }
  }
}

Ray Ray::through(const Vec3& origin, const Vec3& direction) {
  const double n = direction.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("ray direction must be a finite non-zero vector");
  return {origin, direction / n};
}

std::optional<VolumeHit> intersect_unit_cube(const Vec3& o, const Vec3& d) {
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 3; ++axis) {
    if (d[axis] == 0.0) {
      if (o[axis] < 0.0 || o[axis] > 1.0) return std::nullopt;
      continue;
    }
    const double inv = 1.0 / d[axis];
    double ta = (0.0 - o[axis]) * inv;
    double tb = (1.0 - o[axis]) * inv;
    if (ta > tb) std::swap(ta, tb);
    t_near = std::max(t_near, ta);
    t_far = std::min(t_far, tb);
    if (t_near > t_far) return std::nullopt;
  }
  t_near = std::max(t_near, 0.0);
  if (t_far < t_near) return std::nullopt;
  return VolumeHit{clamp_unit(o + t_near * d), clamp_unit(o + t_far * d), t_near, t_far};
}

std::optional<VolumeHit> intersect_volume(const Ray& ray, const VolumeGeometry& geometry) {
  const Affine3 inv = geometry.world_to_local();
  // Same parameter t on both sides: local(t) = inv * (origin + t * direction).
  return intersect_unit_cube(inv * ray.origin, inv.linear() * ray.direction);
}

double sample_trilinear(const VolumeTimepoint& volume, const Vec3& p) {
  for (int axis = 0; axis < 3; ++axis) {
    if (!(p[axis] >= -kUnitCubeTolerance && p[axis] <= 1.0 + kUnitCubeTolerance)) {
      throw std::domain_error("sample position outside [0,1]^3");
    }
  }
  const auto& dims = volume.dims();
  std::array<int, 3> lo{};
  std::array<int, 3> hi{};
  std::array<double, 3> frac{};
  for (int axis = 0; axis < 3; ++axis) {
    const int n = dims[axis];
    const double u = std::clamp(p[axis] * n - 0.5, 0.0, double(n - 1));
    lo[axis] = std::min(static_cast<int>(std::floor(u)), n - 1);
    hi[axis] = std::min(lo[axis] + 1, n - 1);
    frac[axis] = u - lo[axis];
  }
  auto v = [&](int x, int y, int z) { return double(volume.at(x, y, z)); };
  const double fx = frac[0], fy = frac[1], fz = frac[2];
  const double c00 = v(lo[0], lo[1], lo[2]) * (1 - fx) + v(hi[0], lo[1], lo[2]) * fx;
  const double c10 = v(lo[0], hi[1], lo[2]) * (1 - fx) + v(hi[0], hi[1], lo[2]) * fx;
  const double c01 = v(lo[0], lo[1], hi[2]) * (1 - fx) + v(hi[0], lo[1], hi[2]) * fx;
  const double c11 = v(lo[0], hi[1], hi[2]) * (1 - fx) + v(hi[0], hi[1], hi[2]) * fx;
  const double c0 = c00 * (1 - fy) + c10 * fy;
  const double c1 = c01 * (1 - fy) + c11 * fy;
  return c0 * (1 - fz) + c1 * fz;
}

double ray_step_length(const VolumeTimepoint& volume, double spacing_voxels) {
  if (!(spacing_voxels > 0.0)) throw ValidationError("spacing_voxels must be > 0");
  return spacing_voxels * volume.voxel_size().minCoeff();
}

double segment_physical_length(const VolumeTimepoint& volume, const Vec3& a, const Vec3& b) {
  const Vec3 per_axis = volume.dims().as_vec().cwiseProduct(volume.voxel_size());
  return (b - a).cwiseProduct(per_axis).norm();
}

std::vector<RaySample> sample_ray(const VolumeTimepoint& volume, const Vec3& entry, const Vec3& exit,
                                  double spacing_voxels) {
  const double step = ray_step_length(volume, spacing_voxels);
  const double length = segment_physical_length(volume, entry, exit);
  if (!(length > 0.0)) throw ValidationError("degenerate ray segment: entry equals exit");

  // The epsilon keeps exact multiples (e.g. 8 voxels / 1 voxel) from
  // losing their last sample to rounding.
  const auto count = std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(length / step + 1e-9)) + 1);
  std::vector<RaySample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double s = double(k) / double(count - 1);
    const Vec3 pos = clamp_unit((1.0 - s) * entry + s * exit);
    out.push_back({pos, sample_trilinear(volume, pos)});
  }
  return out;
}

}  // namespace gazetrack
