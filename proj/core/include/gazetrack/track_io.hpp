#pragma once

#include <span>
#include <string>
#include <vector>

#include "gazetrack/linker.hpp"

namespace gazetrack {

struct TrackRecord {
  int track_id = 0;
  std::vector<TrackPoint> points;
};

// CSV with header `track_id,timepoint,x,y,z`, world units, rows ordered by
// track then timepoint. Used for both produced tracks and ground truth
// (where the id column is named blob_id).
std::string encode_tracks_csv(std::span<const TrackRecord> tracks, const std::string& id_column = "track_id");
std::vector<TrackRecord> decode_tracks_csv(const std::string& text, const std::string& id_column = "track_id");

}  // namespace gazetrack
