/**
 * @file io.hpp
 * @brief Wire formats: CSV tables, JSON objects and JSON-lines records.
 *
 * Numbers are printed in shortest round-trip form so output is byte-stable
 * across runs.
 */
#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "shelfgaze/calibration.hpp"
#include "shelfgaze/ear.hpp"
#include "shelfgaze/geometry.hpp"
#include "shelfgaze/grid.hpp"
#include "shelfgaze/pipeline.hpp"
#include "shelfgaze/placement.hpp"

namespace shelfgaze::io {

using Json = nlohmann::ordered_json;

std::string format_number(double v);

// CSV ------------------------------------------------------------------------

/// `stature_mm,distance_mm,status`; status is "ok" or the error name and
/// distance is empty for failed rows.
void write_distance_csv(std::ostream& os, const std::vector<DistanceRow>& rows);
/// `drop_cm,residual_rad`
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
/// `t_ms,event,frame_id`
void write_trace_csv(std::ostream& os, const std::vector<TraceEvent>& events);
std::vector<TraceEvent> read_trace_csv(std::istream& is);
/// `time_ms,effective_fps,mean_skips`
void write_processing_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& rows);

/// One eye per line as `x1,y1,...,x6,y6`. Blank lines and lines starting
/// with '#' are skipped, as is a header line whose first field is "x1".
std::vector<EyeLandmarks> read_landmarks_csv(std::istream& is);
/// Either [[x,y]*6] for one eye or an array of those.
std::vector<EyeLandmarks> read_landmarks_json(const Json& j);

// JSON -----------------------------------------------------------------------

Json to_json(const ShelfConfig& cfg);
/// Overlays any recognized keys of j onto base. Unknown keys are rejected.
ShelfConfig shelf_config_from_json(const Json& j, ShelfConfig base = {});

Json to_json(const PopulationSpec& pop);
Json to_json(const PlacementResult& r);
Json to_json(const PlanePoint& p, int cell);
Json to_json(const EarReading& r);
Json to_json(const EarBatchStats& s);
Json to_json(const SimMetrics& m);
Json to_json(const GroundTruthRecord& r);
Json to_json(const std::vector<Violation>& violations, bool horizontally_symmetric);

CalibrationSpec calibration_spec_from_json(const Json& j, CalibrationSpec base = CalibrationSpec::standard());

}  // namespace shelfgaze::io
