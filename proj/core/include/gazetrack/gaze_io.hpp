#pragma once

#include <filesystem>
#include <string>

#include "gazetrack/gaze.hpp"

namespace gazetrack {

// JSON Lines, one spine object per line:
//   {"timepoint":..,"entry":[x,y,z],"exit":[x,y,z],"confidence":..,
//    "head_position":[x,y,z],"head_orientation":[w,x,y,z],
//    "gaze_direction":[x,y,z],"samples":[..],"sample_positions":[[x,y,z],..]}
std::string spine_to_json_line(const Spine& spine);
Spine spine_from_json_line(const std::string& line);

std::string encode_spines_jsonl(const Hedgehog& h);
Hedgehog decode_spines_jsonl(const std::string& text, std::string dataset_ref = {});

void write_spines_jsonl(const Hedgehog& h, const std::filesystem::path& path);
Hedgehog read_spines_jsonl(const std::filesystem::path& path);

// Binary PGM (P5, maxval 255). The first sample of each spine ends up on the
// bottom image row, so the observer sits at the bottom.
std::string encode_pgm(const PlaneRaster& raster);

// "spine_index,sample_index" header plus one row per overlay mark.
std::string encode_overlay_csv(const PlaneRaster& raster);

}  // namespace gazetrack
