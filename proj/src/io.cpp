#include "shelfgaze/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "shelfgaze/error.hpp"

namespace shelfgaze::io {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& context) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    require(!t.empty() && ec == std::errc() && ptr == t.data() + t.size(),
            context + ": expected a number, got '" + text + "'");
    return v;
}

Json point_pair(const PlanePoint& p) { return Json::array({p.x_cm, p.y_cm}); }

EyeLandmarks landmarks_from_pairs(const Json& eye) {
    require(eye.is_array() && eye.size() == 6, "landmarks JSON: each eye needs six [x, y] points");
    EyeLandmarks l;
    for (std::size_t i = 0; i < 6; ++i) {
        const Json& pt = eye[i];
        require(pt.is_array() && pt.size() == 2 && pt[0].is_number() && pt[1].is_number(),
                "landmarks JSON: point " + std::to_string(i + 1) + " must be [x, y]");
        l.p[i] = {pt[0].get<double>(), pt[1].get<double>()};
    }
    return l;
}

}  // namespace

std::string format_number(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_distance_csv(std::ostream& os, const std::vector<DistanceRow>& rows) {
    os << "stature_mm,distance_mm,status\n";
    for (const auto& r : rows) {
        os << format_number(r.stature_cm * 10.0) << ',';
        if (r.distance_cm) os << format_number(*r.distance_cm * 10.0);
        os << ',' << (r.error ? to_string(*r.error) : "ok") << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "drop_cm,residual_rad\n";
    for (const auto& r : rows) os << format_number(r.drop_cm) << ',' << format_number(r.residual_rad) << '\n';
}

void write_trace_csv(std::ostream& os, const std::vector<TraceEvent>& events) {
    os << "t_ms,event,frame_id\n";
    for (const auto& e : events) os << format_number(e.t_ms) << ',' << to_string(e.kind) << ',' << e.frame_id << '\n';
}

std::vector<TraceEvent> read_trace_csv(std::istream& is) {
    std::vector<TraceEvent> out;
    std::string line;
    require(static_cast<bool>(std::getline(is, line)) && trim(line) == "t_ms,event,frame_id",
            "trace CSV: missing header");
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        const auto f = split_csv(line);
        require(f.size() == 3, "trace CSV: expected 3 fields in '" + line + "'");
        TraceEvent e;
        e.t_ms = parse_double(f[0], "trace CSV");
        const std::string kind = trim(f[1]);
        if (kind == "capture") e.kind = EventKind::Capture;
        else if (kind == "take") e.kind = EventKind::Take;
        else if (kind == "drop") e.kind = EventKind::Drop;
        else if (kind == "complete") e.kind = EventKind::Complete;
        else fail(ErrorCode::InvalidArgument, "trace CSV: unknown event '" + kind + "'");
        e.frame_id = static_cast<std::int64_t>(parse_double(f[2], "trace CSV"));
        out.push_back(e);
    }
    return out;
}

void write_processing_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& rows) {
    os << "time_ms,effective_fps,mean_skips\n";
    for (const auto& r : rows) {
        os << format_number(r.processing_ms) << ',' << format_number(r.effective_fps) << ','
           << format_number(r.mean_skips) << '\n';
    }
}

std::vector<EyeLandmarks> read_landmarks_csv(std::istream& is) {
    std::vector<EyeLandmarks> out;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto f = split_csv(t);
        if (trim(f.front()) == "x1") continue;
        const std::string where = "landmarks CSV line " + std::to_string(line_no);
        require(f.size() == 12, where + ": expected 12 values, got " + std::to_string(f.size()));
        EyeLandmarks l;
        for (std::size_t i = 0; i < 6; ++i) l.p[i] = {parse_double(f[2 * i], where), parse_double(f[2 * i + 1], where)};
        out.push_back(l);
    }
    return out;
}

std::vector<EyeLandmarks> read_landmarks_json(const Json& j) {
    require(j.is_array(), "landmarks JSON: expected an array");
    const bool single = j.size() == 6 && j[0].is_array() && !j[0].empty() && j[0][0].is_number();
    if (single) return {landmarks_from_pairs(j)};
    std::vector<EyeLandmarks> out;
    for (const auto& eye : j) out.push_back(landmarks_from_pairs(eye));
    return out;
}

Json to_json(const ShelfConfig& cfg) {
    return Json{{"shelf_height_cm", cfg.shelf_height_cm},
                {"panel_height_cm", cfg.panel_height_cm},
                {"panel_width_cm", cfg.panel_width_cm},
                {"panel_bottom_height_cm", cfg.panel_bottom_height_cm()},
                {"camera_x_cm", cfg.camera_x_cm},
                {"camera_drop_cm", cfg.camera_drop_cm},
                {"eye_crown_offset_cm", cfg.eye_crown_offset_cm},
                {"grid_rows", cfg.grid_rows},
                {"grid_cols", cfg.grid_cols}};
}

ShelfConfig shelf_config_from_json(const Json& j, ShelfConfig base) {
    require(j.is_object(), "shelf config JSON must be an object");
    for (const auto& [key, value] : j.items()) {
        auto number = [&]() {
            require(value.is_number(), "shelf config: '" + key + "' must be a number");
            return value.get<double>();
        };
        if (key == "shelf_height_cm") base.shelf_height_cm = number();
        else if (key == "panel_height_cm") base.panel_height_cm = number();
        else if (key == "panel_width_cm") base.panel_width_cm = number();
        else if (key == "camera_x_cm") base.camera_x_cm = number();
        else if (key == "camera_drop_cm") base.camera_drop_cm = number();
        else if (key == "eye_crown_offset_cm") base.eye_crown_offset_cm = number();
        else if (key == "grid_rows") base.grid_rows = static_cast<int>(number());
        else if (key == "grid_cols") base.grid_cols = static_cast<int>(number());
        else if (key == "panel_bottom_height_cm") number();  // derived; checked below
        else {
            fail(ErrorCode::InvalidArgument, "shelf config: unknown key '" + key + "'");
        }
    }
    if (j.contains("panel_bottom_height_cm")) {
        require(j["panel_bottom_height_cm"].get<double>() == base.panel_bottom_height_cm(),
                "shelf config: panel_bottom_height_cm must equal shelf_height_cm - panel_height_cm");
    }
    return base;
}

Json to_json(const PopulationSpec& pop) {
    return Json{{"height_mean_cm", pop.height_mean_cm},
                {"height_std_cm", pop.height_std_cm},
                {"distance_min_cm", pop.distance_min_cm},
                {"distance_max_cm", pop.distance_max_cm},
                {"sample_count", pop.sample_count},
                {"seed", pop.seed}};
}

Json to_json(const PlacementResult& r) {
    return Json{{"mean_drop_cm", r.mean_drop_cm},
                {"median_drop_cm", r.median_drop_cm},
                {"std_drop_cm", r.std_drop_cm},
                {"residual_drop_cm", r.residual_drop_cm},
                {"sample_count", r.sample_count},
                {"rejected_samples", r.rejected_samples}};
}

Json to_json(const PlanePoint& p, int cell) { return Json{{"x_cm", p.x_cm}, {"y_cm", p.y_cm}, {"cell", cell}}; }

Json to_json(const EarReading& r) {
    return Json{{"value", r.value}, {"open", r.open}, {"threshold", r.threshold}};
}

Json to_json(const EarBatchStats& s) {
    return Json{{"mean", s.mean}, {"min", s.min}, {"fraction_open", s.fraction_open}};
}

Json to_json(const SimMetrics& m) {
    Json hist = Json::object();
    for (const auto& [skips, count] : m.skip_histogram) hist[std::to_string(skips)] = count;
    return Json{{"captured_count", m.captured_count},
                {"processed_count", m.processed_count},
                {"dropped_count", m.dropped_count},
                {"in_flight_count", m.in_flight_count},
                {"duration_s", m.duration_s},
                {"effective_fps", m.effective_fps},
                {"skips_per_processed", hist},
                {"mean_skips", m.mean_skips},
                {"latency_ms", Json{{"mean", m.latency_mean_ms}, {"p95", m.latency_p95_ms}}}};
}

Json to_json(const GroundTruthRecord& r) {
    return Json{{"frame", r.frame},
                {"cell", r.cell},
                {"shelf", point_pair(r.shelf)},
                {"camera", point_pair(r.camera)},
                {"split", std::string(to_string(r.split))}};
}

Json to_json(const std::vector<Violation>& violations, bool horizontally_symmetric) {
    Json list = Json::array();
    for (const auto& v : violations) list.push_back(Json{{"kind", std::string(to_string(v.kind))}, {"message", v.message}});
    return Json{{"valid", violations.empty()}, {"horizontal_symmetry", horizontally_symmetric}, {"violations", list}};
}

CalibrationSpec calibration_spec_from_json(const Json& j, CalibrationSpec base) {
    require(j.is_object(), "calibration spec JSON must be an object");
    auto int_list = [](const Json& v, const std::string& key) {
        require(v.is_array(), "calibration spec: '" + key + "' must be an array of cell indexes");
        std::vector<int> out;
        for (const auto& c : v) {
            require(c.is_number_integer(), "calibration spec: '" + key + "' must hold integers");
            out.push_back(c.get<int>());
        }
        return out;
    };
    for (const auto& [key, value] : j.items()) {
        if (key == "frames_per_point") base.frames_per_point = value.get<int>();
        else if (key == "train_frames_per_point") base.train_frames_per_point = value.get<int>();
        else if (key == "val_frames_per_point") base.val_frames_per_point = value.get<int>();
        else if (key == "seed") base.seed = value.get<std::uint64_t>();
        else if (key == "validation_cells") base.validation_cells = int_list(value, key);
        else if (key == "training_sets") {
            require(value.is_object(), "calibration spec: 'training_sets' must map size to cells");
            base.training_sets.clear();
            for (const auto& [size, cells] : value.items()) {
                base.training_sets[static_cast<int>(parse_double(size, "training_sets key"))] = int_list(cells, key);
            }
        } else {
            fail(ErrorCode::InvalidArgument, "calibration spec: unknown key '" + key + "'");
        }
    }
    return base;
}

}  // namespace shelfgaze::io
