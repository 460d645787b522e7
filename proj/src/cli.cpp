#include "shelfgaze/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "shelfgaze/calibration.hpp"
#include "shelfgaze/ear.hpp"
#include "shelfgaze/error.hpp"
#include "shelfgaze/geometry.hpp"
#include "shelfgaze/grid.hpp"
#include "shelfgaze/io.hpp"
#include "shelfgaze/pipeline.hpp"
#include "shelfgaze/placement.hpp"

namespace shelfgaze::cli {

namespace {

using io::Json;

// Shelf geometry shared by every subcommand: defaults, then --config file,
// then individual flags.
struct ShelfFlags {
    std::string config_path;
    std::optional<double> shelf_height;
    std::optional<double> panel_height;
    std::optional<double> panel_width;
    std::optional<double> camera_x;
    std::optional<double> camera_drop;
    std::optional<double> eye_offset;
    std::optional<int> rows;
    std::optional<int> cols;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "JSON file overriding shelf geometry (flags take precedence)");
        app->add_option("--shelf-height", shelf_height, "Shelf height in cm (default 181)");
        app->add_option("--panel-height", panel_height, "Panel height in cm (default 138)");
        app->add_option("--panel-width", panel_width, "Panel width in cm (default 102)");
        app->add_option("--camera-x", camera_x, "Camera offset from the panel's left edge in cm (default 51)");
        app->add_option("--camera-drop", camera_drop, "Camera depth below the shelf top in cm (default 55.5)");
        app->add_option("--eye-offset", eye_offset, "Eye-to-crown offset in cm (default 4.8)");
        app->add_option("--rows", rows, "Grid rows (default 6)");
        app->add_option("--cols", cols, "Grid columns (default 6)");
    }

    ShelfConfig resolve() const {
        ShelfConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            require(in.good(), "cannot open config file '" + config_path + "'");
            cfg = io::shelf_config_from_json(Json::parse(in), cfg);
        }
        if (shelf_height) cfg.shelf_height_cm = *shelf_height;
        if (panel_height) cfg.panel_height_cm = *panel_height;
        if (panel_width) cfg.panel_width_cm = *panel_width;
        if (camera_x) cfg.camera_x_cm = *camera_x;
        if (camera_drop) cfg.camera_drop_cm = *camera_drop;
        if (eye_offset) cfg.eye_crown_offset_cm = *eye_offset;
        if (rows) cfg.grid_rows = *rows;
        if (cols) cfg.grid_cols = *cols;
        cfg.validate();
        return cfg;
    }
};

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open '" + path + "'");
    return Json::parse(in);
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct OptimizeArgs {
    PopulationSpec pop;
    unsigned workers = 0;
    bool swapped_form = false;
};

struct DistanceArgs {
    std::vector<double> statures_mm = {1500, 1550, 1600, 1650, 1700, 1750, 1800};
    std::string format = "csv";
};

struct SweepArgs {
    std::optional<double> stature_cm;
    std::optional<double> eye_height_cm;
    double distance_cm = 112.5;
    double from_cm = 0.0;
    double to_cm = 138.0;
    double step_cm = 0.5;
    std::vector<double> drops;
};

struct CellArgs {
    std::optional<int> index;
    std::optional<double> x;
    std::optional<double> y;
    bool camera = false;
};

struct GazeArgs {
    std::vector<double> eye;
    std::vector<double> direction;
    std::vector<double> target;
};

struct EarArgs {
    std::string input;
    std::string input_format;
    double threshold = kDefaultEarThreshold;
    bool stats = false;
    std::string format = "json";
};

struct SimulateArgs {
    std::string processing = "fixed:83.33";
    double fps = 30.0;
    double duration_s = 60.0;
    std::uint64_t seed = 7;
    std::string jitter;
    std::optional<std::size_t> trace_limit;
    std::vector<double> sweep_ms;
};

struct CalibArgs {
    std::string spec_path;
    int size = 4;
    std::optional<std::uint64_t> seed;
    bool plan_only = false;
};

CalibrationSpec load_calibration_spec(const CalibArgs& a) {
    CalibrationSpec spec = CalibrationSpec::standard();
    if (!a.spec_path.empty()) spec = io::calibration_spec_from_json(read_json_file(a.spec_path), spec);
    if (a.seed) spec.seed = *a.seed;
    return spec;
}

int cmd_optimize(const ShelfConfig& cfg, const OptimizeArgs& a, std::ostream& out) {
    OptimizeOptions options;
    options.workers = a.workers;
    options.formula = a.swapped_form ? SplitFormula::SwappedNumerator : SplitFormula::Bisector;
    const PlacementResult r = optimize_camera_drop(cfg, a.pop, options);
    Json j = io::to_json(r);
    j["formula"] = a.swapped_form ? "swapped_numerator" : "bisector";
    j["population"] = io::to_json(a.pop);
    j["shelf"] = io::to_json(cfg);
    out << j.dump() << '\n';
    return kOk;
}

int cmd_distance_table(const ShelfConfig& cfg, const DistanceArgs& a, std::ostream& out) {
    std::vector<double> statures_cm;
    for (double mm : a.statures_mm) statures_cm.push_back(mm / 10.0);
    const auto rows = distance_table(cfg, statures_cm);
    if (a.format == "json") {
        Json list = Json::array();
        for (const auto& r : rows) {
            list.push_back(Json{{"stature_mm", r.stature_cm * 10.0},
                                {"distance_mm", r.distance_cm ? Json(*r.distance_cm * 10.0) : Json(nullptr)},
                                {"status", r.error ? std::string(to_string(*r.error)) : std::string("ok")}});
        }
        out << list.dump() << '\n';
    } else {
        io::write_distance_csv(out, rows);
    }
    const bool all_failed = std::all_of(rows.begin(), rows.end(), [](const DistanceRow& r) { return r.error.has_value(); });
    return all_failed ? kDomainError : kOk;
}

int cmd_sweep(const ShelfConfig& cfg, const SweepArgs& a, std::ostream& out) {
    require(!(a.stature_cm && a.eye_height_cm), "give either --stature or --eye-height, not both");
    const PersonSample p = a.eye_height_cm ? PersonSample::from_eye_height(cfg, *a.eye_height_cm, a.distance_cm)
                                           : PersonSample::from_stature(cfg, a.stature_cm.value_or(165.0), a.distance_cm);
    const std::vector<double> drops = a.drops.empty() ? drop_range(a.from_cm, a.to_cm, a.step_cm) : a.drops;
    io::write_sweep_csv(out, imbalance_sweep(cfg, p, drops));
    return kOk;
}

int cmd_cell(const ShelfConfig& cfg, const CellArgs& a, std::ostream& out) {
    const GridSpec grid(cfg);
    PlanePoint point;
    int cell = 0;
    if (a.index) {
        require(!a.x && !a.y, "give either --index or --x/--y");
        cell = *a.index;
        point = cell_center(grid, cell);
    } else {
        require(a.x && a.y, "give --index, or both --x and --y");
        point = {*a.x, *a.y};
        cell = point_to_cell(grid, point);
    }
    Json j = io::to_json(point, cell);
    if (a.camera) {
        const PlanePoint c = to_camera_coords(grid, point);
        j["camera"] = Json::array({c.x_cm, c.y_cm});
    }
    out << j.dump() << '\n';
    return kOk;
}

int cmd_gaze(const ShelfConfig& cfg, const GazeArgs& a, std::ostream& out) {
    const GridSpec grid(cfg);
    require(a.eye.size() == 3, "--eye takes x,y,z");
    const Vec3 eye{a.eye[0], a.eye[1], a.eye[2]};
    Vec3 dir;
    if (!a.direction.empty()) {
        require(a.target.empty(), "give either --dir or --target");
        require(a.direction.size() == 3, "--dir takes dx,dy,dz");
        dir = {a.direction[0], a.direction[1], a.direction[2]};
    } else {
        require(a.target.size() == 2, "give --dir dx,dy,dz or --target x,y");
        dir = {a.target[0] - eye.x, a.target[1] - eye.y, -eye.z};
    }
    const GazeHit hit = ray_to_cell(grid, GazeRay::toward(eye, dir));
    out << io::to_json(hit.point, hit.cell).dump() << '\n';
    return kOk;
}

int cmd_ear(const EarArgs& a, std::ostream& out) {
    std::ifstream in(a.input);
    require(in.good(), "cannot open '" + a.input + "'");
    const std::string kind = !a.input_format.empty() ? a.input_format : (ends_with(a.input, ".json") ? "json" : "csv");
    require(kind == "json" || kind == "csv", "--input-format must be csv or json");
    const auto eyes = kind == "json" ? io::read_landmarks_json(Json::parse(in)) : io::read_landmarks_csv(in);

    std::vector<EarReading> readings;
    std::vector<double> values;
    for (const auto& eye : eyes) {
        readings.push_back(read_eye(eye, a.threshold));
        values.push_back(readings.back().value);
    }

    if (a.format == "csv") {
        out << "value,open,threshold\n";
        for (const auto& r : readings) {
            out << io::format_number(r.value) << ',' << (r.open ? "true" : "false") << ','
                << io::format_number(r.threshold) << '\n';
        }
        return kOk;
    }
    Json list = Json::array();
    for (const auto& r : readings) list.push_back(io::to_json(r));
    if (a.stats) {
        out << Json{{"readings", list}, {"stats", io::to_json(batch_stats(values, a.threshold))}}.dump() << '\n';
    } else {
        out << list.dump() << '\n';
    }
    return kOk;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    SimConfig cfg;
    cfg.capture_fps = a.fps;
    cfg.processing_ms = Distribution::parse(a.processing);
    cfg.duration_s = a.duration_s;
    cfg.seed = a.seed;
    if (!a.jitter.empty()) cfg.capture_jitter_ms = Distribution::parse(a.jitter);

    if (!a.sweep_ms.empty()) {
        io::write_processing_sweep_csv(out, sweep_processing_time(cfg, a.sweep_ms));
    } else if (a.trace_limit) {
        io::write_trace_csv(out, trace(cfg, *a.trace_limit));
    } else {
        Json j = io::to_json(simulate(cfg));
        j["config"] = Json{{"capture_fps", cfg.capture_fps},
                           {"processing_ms", cfg.processing_ms.to_string()},
                           {"seed", cfg.seed}};
        out << j.dump() << '\n';
    }
    return kOk;
}

int cmd_calib_plan(const ShelfConfig& shelf, const CalibArgs& a, std::ostream& out) {
    const GridSpec grid(shelf);
    const CalibrationSpec spec = load_calibration_spec(a);
    const CalibrationPlan p = plan(spec, a.size, grid);
    if (a.plan_only) {
        for (const auto& e : p.entries) {
            out << Json{{"cell", e.cell},
                        {"role", e.role == CellRole::Training ? "train" : "val"},
                        {"target", Json::array({e.target.x_cm, e.target.y_cm})},
                        {"train_frames", e.train_frames},
                        {"val_frames", e.val_frames}}
                       .dump()
                << '\n';
        }
        return kOk;
    }
    for (const auto& r : emit_ground_truth(p, grid)) out << io::to_json(r).dump() << '\n';
    return kOk;
}

int cmd_validate_calib(const ShelfConfig& shelf, const CalibArgs& a, std::ostream& out) {
    const GridSpec grid(shelf);
    const CalibrationSpec spec = load_calibration_spec(a);
    const auto violations = validate_spec(spec, grid);
    out << io::to_json(violations, validation_horizontally_symmetric(spec, grid)).dump() << '\n';
    return violations.empty() ? kOk : kDomainError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shelf gaze-capture planning toolkit: camera placement, grid mapping, EAR, "
                 "calibration plans and frame-pipeline simulation"};
    app.name("shelfgaze");
    app.require_subcommand(1);

    ShelfFlags shelf;

    OptimizeArgs opt;
    auto* optimize = app.add_subcommand("optimize", "Monte Carlo estimate of the bisector-optimal camera drop");
    shelf.attach(optimize);
    optimize->add_option("--samples", opt.pop.sample_count, "Number of sampled people")->capture_default_str();
    optimize->add_option("--seed", opt.pop.seed, "RNG seed")->capture_default_str();
    optimize->add_option("--height-mean", opt.pop.height_mean_cm, "Mean stature in cm")->capture_default_str();
    optimize->add_option("--height-std", opt.pop.height_std_cm, "Stature standard deviation in cm")->capture_default_str();
    optimize->add_option("--dist-min", opt.pop.distance_min_cm, "Minimum standing distance in cm")->capture_default_str();
    optimize->add_option("--dist-max", opt.pop.distance_max_cm, "Maximum standing distance in cm")->capture_default_str();
    optimize->add_option("--workers", opt.workers, "Worker threads (0 = all cores); output does not depend on it")
        ->capture_default_str();
    optimize->add_flag("--swapped-form", opt.swapped_form, "Use the swapped-numerator split formula (comparison only)");

    DistanceArgs dist;
    auto* distance = app.add_subcommand("distance-table", "Recommended standing distance per stature");
    shelf.attach(distance);
    distance->add_option("--statures", dist.statures_mm, "Statures in mm, comma separated (default 1500..1800 step 50)")
        ->delimiter(',');
    distance->add_option("--format", dist.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Angular imbalance (upper - lower angle) over camera drops");
    shelf.attach(sweep);
    sweep->add_option("--stature", sw.stature_cm, "Stature in cm (default 165)");
    sweep->add_option("--eye-height", sw.eye_height_cm, "Eye height in cm (instead of --stature)");
    sweep->add_option("--distance", sw.distance_cm, "Standing distance in cm")->capture_default_str();
    sweep->add_option("--from", sw.from_cm, "First drop in cm")->capture_default_str();
    sweep->add_option("--to", sw.to_cm, "Last drop in cm")->capture_default_str();
    sweep->add_option("--step", sw.step_cm, "Drop step in cm")->capture_default_str();
    sweep->add_option("--drops", sw.drops, "Explicit drops in cm, comma separated")->delimiter(',');

    CellArgs ca;
    auto* cell = app.add_subcommand("cell", "Cell center lookup or point-to-cell mapping (6x6 grid of 17x23 cm cells)");
    shelf.attach(cell);
    cell->add_option("--index", ca.index, "Cell label 1..36, row-major from the top-left");
    cell->add_option("--x", ca.x, "Shelf x in cm from the panel's left edge");
    cell->add_option("--y", ca.y, "Shelf y in cm down from the panel top");
    cell->add_flag("--camera-coords", ca.camera, "Also report the point relative to the camera pinhole");

    GazeArgs ga;
    auto* gaze = app.add_subcommand("gaze", "Resolve a gaze ray to a shelf cell");
    shelf.attach(gaze);
    gaze->add_option("--eye", ga.eye, "Eye position x,y,z in cm (z = distance from the shelf)")
        ->delimiter(',')
        ->required()
        ->expected(3);
    gaze->add_option("--dir", ga.direction, "Gaze direction dx,dy,dz (normalized internally)")->delimiter(',')->expected(3);
    gaze->add_option("--target", ga.target, "Aim at shelf point x,y instead of giving a direction")->delimiter(',')->expected(2);

    EarArgs ea;
    auto* ear = app.add_subcommand("ear", "Eye aspect ratio for landmark files (CSV x1,y1,...,x6,y6 or JSON)");
    ear->add_option("--input", ea.input, "Landmark file")->required();
    ear->add_option("--input-format", ea.input_format, "csv or json (default: by extension)");
    ear->add_option("--threshold", ea.threshold, "Open-eye threshold; open iff EAR > threshold")->capture_default_str();
    ear->add_flag("--stats", ea.stats, "Include batch statistics");
    ear->add_option("--format", ea.format, "json or csv")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "Latest-frame pipeline simulation");
    sim->add_option("--proc", sa.processing, "Processing time in ms: fixed:T, uniform:LO:HI or normal:MU:SIGMA")
        ->capture_default_str();
    sim->add_option("--fps", sa.fps, "Capture rate")->capture_default_str();
    sim->add_option("--duration", sa.duration_s, "Simulated seconds")->capture_default_str();
    sim->add_option("--seed", sa.seed, "RNG seed")->capture_default_str();
    sim->add_option("--jitter", sa.jitter, "Capture jitter in ms (same syntax as --proc; off by default)");
    sim->add_option("--trace", sa.trace_limit, "Emit the first N events as CSV t_ms,event,frame_id");
    sim->add_option("--sweep", sa.sweep_ms, "Fixed processing times in ms to sweep, comma separated")->delimiter(',');

    CalibArgs cp;
    auto* calib = app.add_subcommand("calib-plan", "Calibration ground truth as JSON lines");
    shelf.attach(calib);
    calib->add_option("--size", cp.size, "Training set size: 2, 4, 8, 16 or 32")->capture_default_str();
    calib->add_option("--seed", cp.seed, "RNG seed for frame selection (default 7)");
    calib->add_option("--spec", cp.spec_path, "JSON calibration spec overriding the standard sets");
    calib->add_flag("--plan", cp.plan_only, "Emit plan entries instead of per-frame records");

    CalibArgs cv;
    auto* validate = app.add_subcommand("validate-calib", "Check a calibration spec for overlap, symmetry and frame counts");
    shelf.attach(validate);
    validate->add_option("--spec", cv.spec_path, "JSON calibration spec (default: standard sets, validation {8,11,26,29})");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*optimize) return cmd_optimize(shelf.resolve(), opt, out);
        if (*distance) return cmd_distance_table(shelf.resolve(), dist, out);
        if (*sweep) return cmd_sweep(shelf.resolve(), sw, out);
        if (*cell) return cmd_cell(shelf.resolve(), ca, out);
        if (*gaze) return cmd_gaze(shelf.resolve(), ga, out);
        if (*ear) return cmd_ear(ea, out);
        if (*sim) return cmd_simulate(sa, out);
        if (*calib) return cmd_calib_plan(shelf.resolve(), cp, out);
        if (*validate) return cmd_validate_calib(shelf.resolve(), cv, out);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return e.is_input_error() ? kInputError : kDomainError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: invalid JSON: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace shelfgaze::cli
