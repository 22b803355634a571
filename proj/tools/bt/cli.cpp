#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "gazetrack/fileutil.hpp"
#include "gazetrack/gaze_io.hpp"
#include "gazetrack/linker.hpp"
#include "gazetrack/metrics.hpp"
#include "gazetrack/track_io.hpp"
#include "gazetrack/volume_io.hpp"

namespace gazetrack::cli {
namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

ojson vec_json(const Vec3& v) { return ojson::array({v.x(), v.y(), v.z()}); }

template <typename T>
void read_into(const ojson& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const ojson::exception& e) {
    throw ValidationError(std::string("config key '") + key + "': " + e.what());
  }
}

void read_vec(const ojson& j, const char* key, Vec3& field) {
  if (!j.contains(key)) return;
  std::array<double, 3> a{};
  read_into(j, key, a);
  field = {a[0], a[1], a[2]};
}

ojson scene_json(const SceneSpec& s) {
  ojson j;
  j["dims"] = {s.dims.nx, s.dims.ny, s.dims.nz};
  j["voxel_size"] = vec_json(s.voxel_size);
  j["n_blobs"] = s.n_blobs;
  j["blob_radius"] = s.blob_radius;
  j["blob_peak_intensity"] = s.blob_peak_intensity;
  j["background_noise_sigma"] = s.background_noise_sigma;
  j["n_timepoints"] = s.n_timepoints;
  j["motion"] = {{"max_step", s.motion.max_step}, {"smoothing", s.motion.smoothing}};
  j["rng_seed"] = s.rng_seed;
  return j;
}

void scene_from(const ojson& j, SceneSpec& s) {
  if (j.contains("dims")) {
    std::array<int, 3> d{};
    read_into(j, "dims", d);
    s.dims = {d[0], d[1], d[2]};
  }
  read_vec(j, "voxel_size", s.voxel_size);
  read_into(j, "n_blobs", s.n_blobs);
  read_into(j, "blob_radius", s.blob_radius);
  read_into(j, "blob_peak_intensity", s.blob_peak_intensity);
  read_into(j, "background_noise_sigma", s.background_noise_sigma);
  read_into(j, "n_timepoints", s.n_timepoints);
  if (j.contains("motion")) {
    read_into(j.at("motion"), "max_step", s.motion.max_step);
    read_into(j.at("motion"), "smoothing", s.motion.smoothing);
  }
  read_into(j, "rng_seed", s.rng_seed);
}

ojson gaze_json(const GazeSpec& g) {
  ojson j;
  j["sample_rate_hz"] = g.sample_rate_hz;
  j["playback_volumes_per_sec"] = g.playback_volumes_per_sec;
  j["pursuit_noise_deg"] = g.pursuit_noise_deg;
  j["onset_lag_ms"] = g.onset_lag_ms;
  j["distraction_probability"] = g.distraction_probability;
  j["distraction_duration_spines"] = g.distraction_duration_spines;
  j["distraction_min_distance"] = g.distraction_min_distance;
  j["distraction_timepoints"] = g.distraction_timepoints;
  j["blink_probability"] = g.blink_probability;
  j["blink_duration_spines"] = g.blink_duration_spines;
  j["blink_timepoints"] = g.blink_timepoints;
  j["confidence_dropout_probability"] = g.confidence_dropout_probability;
  j["dropout_error_deg"] = g.dropout_error_deg;
  j["observer_position"] = g.observer_position ? vec_json(*g.observer_position) : ojson(nullptr);
  j["spacing_voxels"] = g.spacing_voxels;
  j["rng_seed"] = g.rng_seed;
  return j;
}

void gaze_from(const ojson& j, GazeSpec& g) {
  read_into(j, "sample_rate_hz", g.sample_rate_hz);
  read_into(j, "playback_volumes_per_sec", g.playback_volumes_per_sec);
  read_into(j, "pursuit_noise_deg", g.pursuit_noise_deg);
  read_into(j, "onset_lag_ms", g.onset_lag_ms);
  read_into(j, "distraction_probability", g.distraction_probability);
  read_into(j, "distraction_duration_spines", g.distraction_duration_spines);
  read_into(j, "distraction_min_distance", g.distraction_min_distance);
  read_into(j, "distraction_timepoints", g.distraction_timepoints);
  read_into(j, "blink_probability", g.blink_probability);
  read_into(j, "blink_duration_spines", g.blink_duration_spines);
  read_into(j, "blink_timepoints", g.blink_timepoints);
  read_into(j, "confidence_dropout_probability", g.confidence_dropout_probability);
  read_into(j, "dropout_error_deg", g.dropout_error_deg);
  if (j.contains("observer_position")) {
    if (j.at("observer_position").is_null()) {
      g.observer_position.reset();
    } else {
      Vec3 v;
      read_vec(j, "observer_position", v);
      g.observer_position = v;
    }
  }
  read_into(j, "spacing_voxels", g.spacing_voxels);
  read_into(j, "rng_seed", g.rng_seed);
}

ojson parameters(const RunConfig& c) {
  ojson j;
  j["scene"] = scene_json(c.scene);
  j["gaze"] = gaze_json(c.gaze);
  j["targets"] = c.targets;
  j["linker"] = {{"min_confidence", c.filter.min_confidence},
                 {"max_angle_deg", c.filter.max_angle_deg},
                 {"min_prominence", c.min_prominence},
                 {"noise_floor_fraction", c.noise_floor_fraction},
                 {"z_threshold", c.z_threshold}};
  j["eval"] = {{"cell_diameter", c.cell_diameter}};
  return j;
}

TrackParams track_params(const RunConfig& c) {
  TrackParams p;
  p.maxima.min_prominence = c.min_prominence;
  p.maxima.noise_floor_fraction = c.noise_floor_fraction;
  p.z_threshold = c.z_threshold;
  return p;
}

struct FileDigest {
  std::string role;
  std::string file;
  std::string sha256;
};

FileDigest digest(const std::string& role, const fs::path& path) {
  return {role, path.filename().string(), sha256_hex(read_file(path))};
}

ojson digests_json(const std::vector<FileDigest>& files) {
  ojson arr = ojson::array();
  for (const auto& f : files) {
    ojson e;
    if (!f.role.empty()) e["role"] = f.role;
    e["file"] = f.file;
    e["sha256"] = f.sha256;
    arr.push_back(std::move(e));
  }
  return arr;
}

// Writes manifest_<command>.json. Paths are recorded by file name only so
// that identical runs into different directories produce identical bytes.
void write_manifest(const RunConfig& cfg, const std::string& command, const std::vector<FileDigest>& inputs,
                    const std::vector<FileDigest>& outputs, ojson summary) {
  ojson m;
  m["tool"] = "bt";
  m["version"] = kVersion;
  m["command"] = command;
  m["parameters"] = parameters(cfg);
  m["inputs"] = digests_json(inputs);
  m["outputs"] = digests_json(outputs);
  m["summary"] = std::move(summary);
  m["manifest_hash"] = sha256_hex(m.dump());
  write_file_atomic(fs::path(cfg.out_dir) / ("manifest_" + command + ".json"), m.dump(2) + "\n");
}

fs::path in_path(const RunConfig& cfg, const std::string& explicit_path, const char* default_name) {
  if (!explicit_path.empty()) return explicit_path;
  return fs::path(cfg.in_dir.empty() ? "." : cfg.in_dir) / default_name;
}

std::vector<fs::path> spine_files(const RunConfig& cfg) {
  if (!cfg.spines.empty()) return {cfg.spines.begin(), cfg.spines.end()};
  const fs::path dir = cfg.in_dir.empty() ? "." : cfg.in_dir;
  const fs::path manifest = dir / "manifest_simulate.json";
  if (fs::exists(manifest)) {
    std::vector<fs::path> out;
    const auto m = ojson::parse(read_file(manifest), nullptr, false);
    if (m.is_discarded()) throw FormatError(manifest.string() + " is not valid JSON");
    for (const auto& o : m.value("outputs", ojson::array())) {
      if (o.value("role", "") == "spines") out.push_back(dir / o.at("file").get<std::string>());
    }
    if (!out.empty()) return out;
  }
  return {dir / "spines.jsonl"};
}

int cmd_simulate(const RunConfig& cfg) {
  cfg.validate();
  cfg.gaze.validate();
  const auto scene = render_scene(cfg.scene);
  for (int t : cfg.targets) {
    if (t < 0 || t >= scene.truth.blob_count()) {
      throw ValidationError("target blob " + std::to_string(t) + " does not exist");
    }
  }
  const fs::path out = cfg.out_dir;
  fs::create_directories(out);

  std::vector<FileDigest> outputs;
  for (const auto& name : write_dataset(scene.dataset, out)) {
    outputs.push_back(digest(name == "dataset.json" ? "dataset" : "volume", out / name));
  }
  const auto truth_records = scene.truth.as_records();
  write_file_atomic(out / "truth.csv", encode_tracks_csv(truth_records, "blob_id"));
  outputs.push_back(digest("truth", out / "truth.csv"));

  ojson hedgehogs = ojson::array();
  for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
    char name[32];
    if (cfg.targets.size() == 1) {
      std::snprintf(name, sizeof(name), "spines.jsonl");
    } else {
      std::snprintf(name, sizeof(name), "spines_%03zu.jsonl", i);
    }
    const Hedgehog h = simulate_gaze(scene.dataset, scene.truth, cfg.gaze, cfg.targets[i]);
    write_spines_jsonl(h, out / name);
    outputs.push_back(digest("spines", out / name));
    hedgehogs.push_back({{"file", name}, {"target_blob", cfg.targets[i]}, {"spines", h.size()}});
  }

  ojson summary;
  summary["timepoints"] = cfg.scene.n_timepoints;
  summary["blobs"] = cfg.scene.n_blobs;
  summary["spines_per_timepoint"] = cfg.gaze.spines_per_timepoint();
  summary["hedgehogs"] = std::move(hedgehogs);
  write_manifest(cfg, "simulate", {}, outputs, summary);
  std::cout << "simulated " << cfg.scene.n_timepoints << " timepoints, " << cfg.targets.size()
            << " hedgehog(s) -> " << out.string() << "\n";
  return kOk;
}

int cmd_track(const RunConfig& cfg) {
  cfg.validate();
  const fs::path sidecar = in_path(cfg, cfg.dataset, "dataset.json");
  const auto geometry = read_sidecar(sidecar).geometry;
  const auto files = spine_files(cfg);
  std::vector<FileDigest> inputs{digest("dataset", sidecar)};

  std::vector<Hedgehog> hedgehogs;
  for (const auto& f : files) {
    hedgehogs.push_back(read_spines_jsonl(f));
    inputs.push_back(digest("spines", f));
  }

  const auto params = track_params(cfg);
  std::vector<TrackRecord> records;
  ojson entries = ojson::array();
  int failed = 0;
  const auto started = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < hedgehogs.size(); ++i) {
    ojson e;
    e["track_id"] = i;
    e["spines_file"] = files[i].filename().string();
    e["spines"] = hedgehogs[i].size();
    try {
      const Track t = track_filtered(hedgehogs[i], geometry.local_to_world, cfg.filter, params);
      records.push_back({int(i), t.points});
      e["status"] = "ok";
      e["chain_length"] = t.chain_length;
      e["surviving_vertices"] = t.vertices.size();
      e["prune_passes"] = t.prune_history.size();
      e["timepoints"] = t.points.size();
    } catch (const UnseedableHedgehog& ex) {
      ++failed;
      e["status"] = "failed";
      e["reason"] = ex.what();
    }
    entries.push_back(std::move(e));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  const fs::path out = cfg.out_dir;
  fs::create_directories(out);
  write_file_atomic(out / "tracks.csv", encode_tracks_csv(records));
  ojson summary;
  summary["tracks"] = std::move(entries);
  summary["failed_count"] = failed;
  write_file_atomic(out / "tracks_summary.json", summary.dump(2) + "\n");
  write_manifest(cfg, "track", inputs, {digest("tracks", out / "tracks.csv"), digest("summary", out / "tracks_summary.json")},
                 {{"hedgehogs", hedgehogs.size()}, {"failed_count", failed}});
  std::printf("tracked %zu hedgehog(s): %zu ok, %d failed (tracking %.3f s)\n", hedgehogs.size(),
              hedgehogs.size() - std::size_t(failed), failed, seconds);
  return kOk;
}

int cmd_eval(const RunConfig& cfg) {
  cfg.validate();
  const fs::path tracks_path = in_path(cfg, cfg.tracks, "tracks.csv");
  const fs::path truth_path = in_path(cfg, cfg.truth, "truth.csv");
  const auto tracks = decode_tracks_csv(read_file(tracks_path));
  const auto truths = decode_tracks_csv(read_file(truth_path), "blob_id");
  const auto report = evaluate_tracks(tracks, truths, cfg.effective_cell_diameter());

  const fs::path out = cfg.out_dir;
  fs::create_directories(out);
  write_file_atomic(out / "eval_report.json", report.to_json());
  write_manifest(cfg, "eval", {digest("tracks", tracks_path), digest("truth", truth_path)},
                 {digest("report", out / "eval_report.json")},
                 {{"tracks", report.tracks.size()}, {"fraction_under_one_diameter", report.fraction_under_one_diameter()}});
  std::printf("evaluated %zu track(s): %.3f under one cell diameter\n", report.tracks.size(),
              report.fraction_under_one_diameter());
  return kOk;
}

int cmd_render_hedgehog(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.spines.size() > 1) throw ValidationError("render-hedgehog takes a single --spines file");
  const fs::path sidecar = in_path(cfg, cfg.dataset, "dataset.json");
  const fs::path spines_path = cfg.spines.empty() ? spine_files(cfg).front() : fs::path(cfg.spines.front());
  const auto geometry = read_sidecar(sidecar).geometry;
  const Hedgehog h = read_spines_jsonl(spines_path);
  if (h.empty()) throw ValidationError(spines_path.string() + " contains no spines");

  std::vector<PlaneMark> marks;
  try {
    const Track t = track_filtered(h, geometry.local_to_world, cfg.filter, track_params(cfg));
    for (const auto& v : t.vertices) marks.push_back({v.spine_index, v.sample_index});
  } catch (const UnseedableHedgehog&) {
    // Nothing to mark; the raster is still useful.
  }
  const PlaneRaster raster = hedgehog_to_plane(h, marks);

  const fs::path out = cfg.out_dir;
  fs::create_directories(out);
  write_file_atomic(out / "hedgehog.pgm", encode_pgm(raster));
  write_file_atomic(out / "hedgehog_overlay.csv", encode_overlay_csv(raster));
  write_manifest(cfg, "render-hedgehog", {digest("dataset", sidecar), digest("spines", spines_path)},
                 {digest("raster", out / "hedgehog.pgm"), digest("overlay", out / "hedgehog_overlay.csv")},
                 {{"width", raster.width}, {"height", raster.height}, {"marks", raster.overlay.size()}});
  std::printf("rendered %zux%zu hedgehog plane with %zu marked maxima\n", raster.width, raster.height,
              raster.overlay.size());
  return kOk;
}

std::optional<std::string> find_config_arg(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return std::nullopt;
}

void add_common(CLI::App* sub, RunConfig& cfg, std::string& config_path, std::optional<std::uint64_t>& seed) {
  sub->add_option("--config", config_path, "JSON config file or previous run manifest (flags override it)");
  sub->add_option("--seed", seed, "RNG seed for scene and gaze simulation");
  sub->add_option("--out-dir", cfg.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--in-dir", cfg.in_dir, "Directory holding a previous run's outputs");
}

void add_linker_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--dataset", cfg.dataset, "Dataset sidecar JSON (default: <in-dir>/dataset.json)");
  sub->add_option("--min-confidence", cfg.filter.min_confidence, "Drop spines below this confidence")
      ->capture_default_str();
  sub->add_option("--max-angle", cfg.filter.max_angle_deg, "Max eye/head angle in degrees")->capture_default_str();
  sub->add_option("--min-prominence", cfg.min_prominence, "Absolute prominence cutoff for maxima")
      ->capture_default_str();
  sub->add_option("--noise-floor", cfg.noise_floor_fraction, "Prominence cutoff as a fraction of the spine maximum")
      ->capture_default_str();
  sub->add_option("--z-threshold", cfg.z_threshold, "Prune links with z-score above this")->capture_default_str();
}

}  // namespace

void RunConfig::validate() const {
  if (!(z_threshold > 0.0)) throw ValidationError("z_threshold must be > 0");
  if (!(filter.min_confidence >= 0.0 && filter.min_confidence <= 1.0)) {
    throw ValidationError("min_confidence must be in [0,1]");
  }
  if (!(filter.max_angle_deg >= 0.0)) throw ValidationError("max_angle_deg must be >= 0");
  if (!(min_prominence >= 0.0)) throw ValidationError("min_prominence must be >= 0");
  if (!(noise_floor_fraction >= 0.0 && noise_floor_fraction <= 1.0)) {
    throw ValidationError("noise_floor_fraction must be in [0,1]");
  }
  if (cell_diameter < 0.0) throw ValidationError("cell_diameter must be >= 0 (0 = derive from blob_radius)");
  if (targets.empty()) throw ValidationError("at least one target blob is required");
  if (out_dir.empty()) throw ValidationError("out_dir must not be empty");
  scene.validate();
}

std::string parameters_json(const RunConfig& config) { return parameters(config).dump(2); }

void apply_config_json(RunConfig& cfg, const std::string& json_text) {
  ojson j = ojson::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw FormatError("config is not a JSON object");
  if (j.contains("parameters")) j = j.at("parameters");
  if (j.contains("scene")) scene_from(j.at("scene"), cfg.scene);
  if (j.contains("gaze")) gaze_from(j.at("gaze"), cfg.gaze);
  read_into(j, "targets", cfg.targets);
  if (j.contains("linker")) {
    const auto& l = j.at("linker");
    read_into(l, "min_confidence", cfg.filter.min_confidence);
    read_into(l, "max_angle_deg", cfg.filter.max_angle_deg);
    read_into(l, "min_prominence", cfg.min_prominence);
    read_into(l, "noise_floor_fraction", cfg.noise_floor_fraction);
    read_into(l, "z_threshold", cfg.z_threshold);
  }
  if (j.contains("eval")) read_into(j.at("eval"), "cell_diameter", cfg.cell_diameter);
  if (j.contains("io")) {
    const auto& io = j.at("io");
    read_into(io, "out_dir", cfg.out_dir);
    read_into(io, "in_dir", cfg.in_dir);
    read_into(io, "dataset", cfg.dataset);
    read_into(io, "spines", cfg.spines);
    read_into(io, "tracks", cfg.tracks);
    read_into(io, "truth", cfg.truth);
  }
}

int run(int argc, const char* const* argv) {
  RunConfig cfg;
  try {
    if (const auto path = find_config_arg(argc, argv)) apply_config_json(cfg, read_file(*path));
  } catch (const ValidationError& e) {
    std::cerr << "bt: " << e.what() << "\n";
    return kUsageError;
  }

  CLI::App app{"Gaze tracking: turn gaze hedgehogs through volumetric time series into tracks", "bt"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<int> dims;
  std::vector<double> voxel_size, observer;

  auto* sim = app.add_subcommand("simulate", "Render a synthetic scene and simulate gaze hedgehogs");
  add_common(sim, cfg, config_path, seed);
  sim->add_option("--dims", dims, "Volume size nx ny nz")->expected(3);
  sim->add_option("--voxel-size", voxel_size, "World units per voxel vx vy vz")->expected(3);
  sim->add_option("--blobs", cfg.scene.n_blobs, "Number of nuclei")->capture_default_str();
  sim->add_option("--blob-radius", cfg.scene.blob_radius, "Gaussian sigma of each nucleus")->capture_default_str();
  sim->add_option("--peak", cfg.scene.blob_peak_intensity, "Peak intensity")->capture_default_str();
  sim->add_option("--noise", cfg.scene.background_noise_sigma, "Background noise sigma")->capture_default_str();
  sim->add_option("--timepoints", cfg.scene.n_timepoints, "Number of timepoints")->capture_default_str();
  sim->add_option("--max-step", cfg.scene.motion.max_step, "Max blob step per timepoint")->capture_default_str();
  sim->add_option("--smoothing", cfg.scene.motion.smoothing, "Velocity smoothing in [0,1)")->capture_default_str();
  sim->add_option("--targets", cfg.targets, "Blob ids to follow, one hedgehog each");
  sim->add_option("--sample-rate", cfg.gaze.sample_rate_hz, "Gaze samples per second")->capture_default_str();
  sim->add_option("--playback", cfg.gaze.playback_volumes_per_sec, "Volumes per second")->capture_default_str();
  sim->add_option("--pursuit-noise", cfg.gaze.pursuit_noise_deg, "Angular jitter (deg)")->capture_default_str();
  sim->add_option("--onset-lag", cfg.gaze.onset_lag_ms, "Pursuit onset lag (ms)")->capture_default_str();
  sim->add_option("--distraction-prob", cfg.gaze.distraction_probability, "Distraction probability per timepoint");
  sim->add_option("--distraction-duration", cfg.gaze.distraction_duration_spines, "Distraction length in spines");
  sim->add_option("--distraction-min-distance", cfg.gaze.distraction_min_distance, "Min distractor distance");
  sim->add_option("--blink-prob", cfg.gaze.blink_probability, "Blink probability per timepoint");
  sim->add_option("--blink-duration", cfg.gaze.blink_duration_spines, "Blink length in spines");
  sim->add_option("--dropout-prob", cfg.gaze.confidence_dropout_probability, "Per-spine tracker dropout probability");
  sim->add_option("--spacing-voxels", cfg.gaze.spacing_voxels, "Sample spacing along rays")->capture_default_str();
  sim->add_option("--observer", observer, "Observer position x y z")->expected(3);

  auto* trk = app.add_subcommand("track", "Extract one track per hedgehog");
  add_common(trk, cfg, config_path, seed);
  add_linker_options(trk, cfg);
  trk->add_option("--spines", cfg.spines, "Hedgehog JSONL files (default: from <in-dir>)");

  auto* ev = app.add_subcommand("eval", "Score tracks against ground truth");
  add_common(ev, cfg, config_path, seed);
  ev->add_option("--tracks", cfg.tracks, "tracks.csv (default: <in-dir>/tracks.csv)");
  ev->add_option("--truth", cfg.truth, "truth.csv (default: <in-dir>/truth.csv)");
  ev->add_option("--cell-diameter", cfg.cell_diameter, "Normalization unit (default 2*blob radius)");
  ev->add_option("--blob-radius", cfg.scene.blob_radius, "Blob radius used for the default cell diameter");

  auto* rnd = app.add_subcommand("render-hedgehog", "Lay a hedgehog out as a PGM with linked maxima overlay");
  add_common(rnd, cfg, config_path, seed);
  add_linker_options(rnd, cfg);
  rnd->add_option("--spines", cfg.spines, "Hedgehog JSONL file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (seed) {
    cfg.scene.rng_seed = *seed;
    cfg.gaze.rng_seed = *seed;
  }
  if (!dims.empty()) cfg.scene.dims = {dims[0], dims[1], dims[2]};
  if (!voxel_size.empty()) cfg.scene.voxel_size = {voxel_size[0], voxel_size[1], voxel_size[2]};
  if (!observer.empty()) cfg.gaze.observer_position = Vec3{observer[0], observer[1], observer[2]};

  try {
    if (sim->parsed()) return cmd_simulate(cfg);
    if (trk->parsed()) return cmd_track(cfg);
    if (ev->parsed()) return cmd_eval(cfg);
    if (rnd->parsed()) return cmd_render_hedgehog(cfg);
  } catch (const ValidationError& e) {
    std::cerr << "bt: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "bt: internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUsageError;
}

}  // namespace gazetrack::cli
