#include "gazetrack/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace gazetrack {
namespace {

using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Vec3 random_unit(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    Vec3 v{n(rng), n(rng), n(rng)};
    const double len = v.norm();
    if (len > 1e-12) return v / len;
  }
}

// Two unit vectors completing `dir` to an orthonormal basis.
std::pair<Vec3, Vec3> perpendicular_basis(const Vec3& dir) {
  const Vec3 helper = std::abs(dir.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = dir.cross(helper).normalized();
  return {e1, dir.cross(e1).normalized()};
}

Vec3 deflect(const Vec3& dir, double angle_a_rad, double angle_b_rad) {
  const auto [e1, e2] = perpendicular_basis(dir);
  return (dir + std::tan(angle_a_rad) * e1 + std::tan(angle_b_rad) * e2).normalized();
}

constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

std::vector<std::vector<Vec3>> simulate_trajectories(const SceneSpec& spec, const Vec3& extent) {
  Rng rng = make_rng(spec.rng_seed, 1);
  const double margin = spec.margin();
  const double min_sep = spec.min_separation();
  const Vec3 lo = Vec3::Constant(margin);
  const Vec3 hi = extent - Vec3::Constant(margin);

  std::vector<Vec3> current;
  for (int b = 0; b < spec.n_blobs; ++b) {
    bool placed = false;
    for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
      const Vec3 p{uniform(rng, lo.x(), hi.x()), uniform(rng, lo.y(), hi.y()), uniform(rng, lo.z(), hi.z())};
      placed = std::none_of(current.begin(), current.end(), [&](const Vec3& q) { return (p - q).norm() < min_sep; });
      if (placed) current.push_back(p);
    }
    if (!placed) {
      throw ValidationError("cannot place " + std::to_string(spec.n_blobs) +
                            " blobs with the required separation; reduce n_blobs or blob_radius");
    }
  }

  std::vector<std::vector<Vec3>> paths(spec.n_blobs, std::vector<Vec3>(spec.n_timepoints));
  std::vector<Vec3> velocity(spec.n_blobs, Vec3::Zero());
  for (int b = 0; b < spec.n_blobs; ++b) paths[b][0] = current[b];

  const double s = spec.motion.smoothing;
  for (int t = 1; t < spec.n_timepoints; ++t) {
    for (int b = 0; b < spec.n_blobs; ++b) {
      const Vec3 impulse = random_unit(rng) * spec.motion.max_step;
      Vec3 v = s * velocity[b] + (1.0 - s) * impulse;
      if (v.norm() > spec.motion.max_step) v *= spec.motion.max_step / v.norm();
      Vec3 p = current[b] + v;
      for (int axis = 0; axis < 3; ++axis) {
        if (p[axis] < lo[axis]) {
          p[axis] = 2 * lo[axis] - p[axis];
          v[axis] = -v[axis];
        } else if (p[axis] > hi[axis]) {
          p[axis] = 2 * hi[axis] - p[axis];
          v[axis] = -v[axis];
        }
      }
      p = p.cwiseMax(lo).cwiseMin(hi);
      bool collides = false;
      for (int o = 0; o < spec.n_blobs && !collides; ++o) {
        collides = o != b && (p - current[o]).norm() < min_sep;
      }
      if (collides) {
        velocity[b] = -v;
      } else {
        velocity[b] = v;
        current[b] = p;
      }
      paths[b][t] = current[b];
    }
  }
  return paths;
}

VolumeTimepoint render_timepoint(const SceneSpec& spec, const std::vector<Vec3>& centres, Rng& noise_rng) {
  const auto& d = spec.dims;
  std::vector<double> field(d.voxel_count(), 0.0);
  const double r = spec.blob_radius;
  const double inv_two_r2 = 1.0 / (2.0 * r * r);
  const double cutoff = 6.0 * r;
  for (const auto& c : centres) {
    std::array<int, 3> from{}, to{};
    for (int axis = 0; axis < 3; ++axis) {
      const double vs = spec.voxel_size[axis];
      from[axis] = std::max(0, int(std::floor((c[axis] - cutoff) / vs - 0.5)));
      to[axis] = std::min(d[axis] - 1, int(std::ceil((c[axis] + cutoff) / vs - 0.5)));
    }
    for (int z = from[2]; z <= to[2]; ++z) {
      const double dz = (z + 0.5) * spec.voxel_size.z() - c.z();
      for (int y = from[1]; y <= to[1]; ++y) {
        const double dy = (y + 0.5) * spec.voxel_size.y() - c.y();
        const std::size_t row = std::size_t(d.nx) * (std::size_t(y) + std::size_t(d.ny) * std::size_t(z));
        for (int x = from[0]; x <= to[0]; ++x) {
          const double dx = (x + 0.5) * spec.voxel_size.x() - c.x();
          field[row + std::size_t(x)] += spec.blob_peak_intensity * std::exp(-(dx * dx + dy * dy + dz * dz) * inv_two_r2);
        }
      }
    }
  }

  std::vector<std::uint16_t> voxels(field.size());
  std::normal_distribution<double> noise(0.0, spec.background_noise_sigma);
  const bool noisy = spec.background_noise_sigma > 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double v = std::round(field[i] + (noisy ? noise(noise_rng) : 0.0));
    voxels[i] = static_cast<std::uint16_t>(std::clamp(v, 0.0, 65535.0));
  }
  return VolumeTimepoint(spec.dims, spec.voxel_size, std::move(voxels));
}

}  // namespace

void SceneSpec::validate() const {
  if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1) throw ValidationError("scene dims must be >= 1");
  if (!(voxel_size.array() > 0.0).all()) throw ValidationError("scene voxel_size must be > 0");
  if (n_blobs < 1) throw ValidationError("n_blobs must be >= 1");
  if (n_timepoints < 2) throw ValidationError("n_timepoints must be >= 2");
  if (!(blob_radius > 0.0)) throw ValidationError("blob_radius must be > 0");
  if (!(blob_peak_intensity > 0.0 && blob_peak_intensity <= 65535.0)) {
    throw ValidationError("blob_peak_intensity must be in (0, 65535]");
  }
  if (!(background_noise_sigma >= 0.0)) throw ValidationError("background_noise_sigma must be >= 0");
  if (!(motion.max_step >= 0.0)) throw ValidationError("motion.max_step must be >= 0");
  if (!(motion.smoothing >= 0.0 && motion.smoothing < 1.0)) throw ValidationError("motion.smoothing must be in [0,1)");
  const Vec3 extent = dims.as_vec().cwiseProduct(voxel_size);
  if ((extent.array() <= 2.0 * margin()).any()) {
    throw ValidationError("blob would escape the volume: extent must exceed 2*margin (4*blob_radius) on every axis");
  }
}

int GazeSpec::spines_per_timepoint() const {
  return static_cast<int>(std::lround(sample_rate_hz / playback_volumes_per_sec));
}

void GazeSpec::validate() const {
  if (!(sample_rate_hz > 0.0 && sample_rate_hz <= 120.0)) throw ValidationError("sample_rate_hz must be in (0, 120]");
  if (!(playback_volumes_per_sec >= 1.0 && playback_volumes_per_sec <= 20.0)) {
    throw ValidationError("playback_volumes_per_sec must be in [1, 20]");
  }
  if (spines_per_timepoint() < 1) throw ValidationError("sample rate too low for the playback speed");
  if (!(pursuit_noise_deg >= 0.0)) throw ValidationError("pursuit_noise_deg must be >= 0");
  if (!(onset_lag_ms >= 0.0)) throw ValidationError("onset_lag_ms must be >= 0");
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(name) + " must be in [0,1]");
  };
  prob(distraction_probability, "distraction_probability");
  prob(blink_probability, "blink_probability");
  prob(confidence_dropout_probability, "confidence_dropout_probability");
  if (distraction_duration_spines < 0 || blink_duration_spines < 0) {
    throw ValidationError("durations must be >= 0");
  }
  if (!(spacing_voxels > 0.0)) throw ValidationError("spacing_voxels must be > 0");
}

std::vector<TrackPoint> GroundTruth::blob_track(int blob) const {
  std::vector<TrackPoint> out;
  const auto& path = positions.at(std::size_t(blob));
  for (std::size_t t = 0; t < path.size(); ++t) out.push_back({int(t), path[t]});
  return out;
}

std::vector<TrackRecord> GroundTruth::as_records() const {
  std::vector<TrackRecord> out;
  for (int b = 0; b < blob_count(); ++b) out.push_back({b, blob_track(b)});
  return out;
}

RenderedScene render_scene(const SceneSpec& spec) {
  spec.validate();
  const auto geometry = VolumeGeometry::with_default_transform(spec.dims, spec.voxel_size);
  const Vec3 extent = spec.dims.as_vec().cwiseProduct(spec.voxel_size);

  GroundTruth truth;
  truth.positions = simulate_trajectories(spec, extent);

  Rng noise_rng = make_rng(spec.rng_seed, 2);
  std::vector<VolumeTimepoint> tps;
  tps.reserve(std::size_t(spec.n_timepoints));
  std::vector<Vec3> centres(std::size_t(spec.n_blobs));
  for (int t = 0; t < spec.n_timepoints; ++t) {
    for (int b = 0; b < spec.n_blobs; ++b) centres[b] = truth.positions[b][t];
    tps.push_back(render_timepoint(spec, centres, noise_rng));
  }
  return {Dataset(geometry, std::move(tps)), std::move(truth)};
}

Vec3 default_observer(const VolumeGeometry& geometry) {
  const Vec3 centre = geometry.to_world(Vec3::Constant(0.5));
  const Vec3 corner_span = geometry.local_to_world.linear() * Vec3::Ones();
  return centre + Vec3(0.0, 0.0, 1.5 * corner_span.cwiseAbs().maxCoeff());
}

Quat head_orientation_towards(const Vec3& observer, const Vec3& point) {
  return Quat::FromTwoVectors(kHeadForward, (point - observer).normalized()).normalized();
}

bool is_unoccluded(const GroundTruth& truth, int blob, int t, const Vec3& observer, double clearance) {
  const Vec3 target = truth.positions.at(std::size_t(blob)).at(std::size_t(t));
  const Vec3 axis = target - observer;
  const double len2 = axis.squaredNorm();
  for (int b = 0; b < truth.blob_count(); ++b) {
    if (b == blob) continue;
    const Vec3 other = truth.positions[b][t];
    const double s = (other - observer).dot(axis) / len2;
    if (s <= 0.0 || s >= 1.0) continue;
    if ((observer + s * axis - other).norm() < clearance) return false;
  }
  return true;
}

Hedgehog simulate_gaze(const Dataset& dataset, const GroundTruth& truth, const GazeSpec& spec,
                       std::optional<int> target_opt) {
  spec.validate();
  const int target = target_opt.value_or(truth.target);
  const int n_t = int(dataset.timepoint_count());
  if (target < 0 || target >= truth.blob_count()) throw ValidationError("gaze target blob does not exist");
  if (truth.timepoint_count() != n_t) throw ValidationError("ground truth and dataset timepoint counts differ");

  Rng rng = make_rng(spec.rng_seed, 3 + std::uint64_t(target));
  const auto& geometry = dataset.geometry();
  const Vec3 observer = spec.observer_position.value_or(default_observer(geometry));
  const Quat head = head_orientation_towards(observer, geometry.to_world(Vec3::Constant(0.5)));
  const int spt = spec.spines_per_timepoint();
  const double spine_dt_ms = 1000.0 / spec.sample_rate_hz;
  const double jitter = deg2rad(spec.pursuit_noise_deg);
  std::normal_distribution<double> jitter_dist(0.0, 1.0);

  Hedgehog h;
  h.dataset_ref = "target_" + std::to_string(target);

  long distraction_end = -1;
  long distraction_start = 0;
  int distractor = -1;
  long blink_start = 0;
  long blink_end = -1;

  for (int t = 0; t < n_t; ++t) {
    const long first = long(t) * spt;

    const bool forced_blink = std::find(spec.blink_timepoints.begin(), spec.blink_timepoints.end(), t) !=
                              spec.blink_timepoints.end();
    if (forced_blink || (spec.blink_probability > 0.0 && uniform(rng, 0.0, 1.0) < spec.blink_probability)) {
      const int slack = std::max(0, spt - spec.blink_duration_spines);
      blink_start = first + std::uniform_int_distribution<int>(0, slack)(rng);
      blink_end = blink_start + spec.blink_duration_spines;
    }

    const bool forced_distraction =
        std::find(spec.distraction_timepoints.begin(), spec.distraction_timepoints.end(), t) !=
        spec.distraction_timepoints.end();
    if (forced_distraction ||
        (spec.distraction_probability > 0.0 && uniform(rng, 0.0, 1.0) < spec.distraction_probability)) {
      std::vector<int> eligible;
      for (int b = 0; b < truth.blob_count(); ++b) {
        if (b != target && (truth.positions[b][t] - truth.positions[target][t]).norm() >= spec.distraction_min_distance) {
          eligible.push_back(b);
        }
      }
      if (!eligible.empty()) {
        distractor = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)];
        distraction_start = first + std::uniform_int_distribution<int>(0, spt - 1)(rng);
        distraction_end = distraction_start + spec.distraction_duration_spines;
      }
    }

    const auto& volume = dataset.timepoint(std::size_t(t));
    for (int k = 0; k < spt; ++k) {
      const long g = first + k;
      // Random draws happen for every slot so that blinks do not shift the
      // stream for later spines.
      const double ja = jitter_dist(rng) * jitter;
      const double jb = jitter_dist(rng) * jitter;
      const bool dropout = uniform(rng, 0.0, 1.0) < spec.confidence_dropout_probability;
      const double confidence = dropout ? uniform(rng, 0.0, 0.4) : uniform(rng, 0.8, 1.0);
      const double dropout_phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);

      if (g >= blink_start && g < blink_end) continue;

      Vec3 aim;
      if (g >= distraction_start && g < distraction_end && distractor >= 0) {
        aim = truth.positions[distractor][t];
      } else if (k * spine_dt_ms < spec.onset_lag_ms) {
        aim = truth.positions[target][std::max(0, t - 1)];
      } else {
        aim = truth.positions[target][t];
      }

      Vec3 dir = deflect((aim - observer).normalized(), ja, jb);
      if (dropout) {
        const double e = deg2rad(spec.dropout_error_deg);
        dir = deflect(dir, e * std::cos(dropout_phase), e * std::sin(dropout_phase));
      }

      const auto hit = intersect_volume(Ray{observer, dir}, geometry);
      if (!hit || !(segment_physical_length(volume, hit->entry, hit->exit) > 1e-9)) continue;

      Spine s;
      s.timepoint = t;
      s.entry = hit->entry;
      s.exit = hit->exit;
      s.confidence = confidence;
      s.head_position = observer;
      s.head_orientation = head;
      s.gaze_direction = dir;
      for (const auto& rs : sample_ray(volume, hit->entry, hit->exit, spec.spacing_voxels)) {
        s.samples.push_back(rs.intensity);
        s.sample_positions.push_back(rs.position);
      }
      h.spines.push_back(std::move(s));
    }
  }
  return h;
}

}  // namespace gazetrack
