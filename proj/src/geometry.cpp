#include "shelfgaze/geometry.hpp"

#include <cmath>
#include <string>

#include "shelfgaze/error.hpp"

namespace shelfgaze {

namespace {

// Elevation of the ray from the eye to a point on the shelf plane at the
// given height; positive above the eye line.
double ray_elevation(double target_height_cm, const PersonSample& p) {
    return std::atan2(target_height_cm - p.eye_height_cm, p.distance_cm);
}

}  // namespace

void ShelfConfig::validate() const {
    require(panel_height_cm > 0.0 && panel_height_cm <= shelf_height_cm,
            "panel height must satisfy 0 < panel_height <= shelf_height");
    require(panel_width_cm > 0.0, "panel width must be positive");
    require(camera_drop_cm >= 0.0 && camera_drop_cm <= panel_height_cm,
            "camera drop must lie within the panel height");
    require(camera_x_cm >= 0.0 && camera_x_cm <= panel_width_cm,
            "camera x must lie within the panel width");
    require(eye_crown_offset_cm >= 0.0, "eye-to-crown offset must be non-negative");
    require(grid_rows > 0 && grid_cols > 0, "grid must have at least one cell");
}

PersonSample PersonSample::from_stature(const ShelfConfig& cfg, double stature_cm, double distance_cm) {
    return PersonSample{stature_cm, stature_cm - cfg.eye_crown_offset_cm, distance_cm};
}

PersonSample PersonSample::from_eye_height(const ShelfConfig& cfg, double eye_height_cm, double distance_cm) {
    return PersonSample{eye_height_cm + cfg.eye_crown_offset_cm, eye_height_cm, distance_cm};
}

void validate_person(const ShelfConfig& cfg, const PersonSample& p) {
    require(std::isfinite(p.distance_cm) && p.distance_cm > 0.0, "distance must be positive");
    require(std::isfinite(p.eye_height_cm) && p.eye_height_cm < kMaxEyeHeightCm,
            "eye height " + std::to_string(p.eye_height_cm) + " cm is implausible");
    if (p.eye_height_cm <= cfg.panel_bottom_height_cm()) {
        fail(ErrorCode::EyeBelowPanelBottom,
             "eye height " + std::to_string(p.eye_height_cm) + " cm is not above the panel bottom (" +
                 std::to_string(cfg.panel_bottom_height_cm()) + " cm)");
    }
}

double eye_to_top(const ShelfConfig& cfg, const PersonSample& p) {
    validate_person(cfg, p);
    return std::hypot(p.distance_cm, cfg.shelf_height_cm - p.eye_height_cm);
}

double eye_to_bottom(const ShelfConfig& cfg, const PersonSample& p) {
    validate_person(cfg, p);
    return std::hypot(p.distance_cm, p.eye_height_cm - cfg.panel_bottom_height_cm());
}

SplitResult bisector_split(const ShelfConfig& cfg, const PersonSample& p, SplitFormula formula) {
    SplitResult r;
    r.eye_to_top_cm = eye_to_top(cfg, p);
    r.eye_to_bottom_cm = eye_to_bottom(cfg, p);
    const double numerator = formula == SplitFormula::Bisector ? r.eye_to_top_cm : r.eye_to_bottom_cm;
    r.drop_cm = cfg.panel_height_cm * numerator / (r.eye_to_top_cm + r.eye_to_bottom_cm);
    const RayAngles a = ray_angles(cfg, p, r.drop_cm);
    r.upper_angle_rad = a.upper_angle_rad;
    r.lower_angle_rad = a.lower_angle_rad;
    return r;
}

RayAngles ray_angles(const ShelfConfig& cfg, const PersonSample& p, double camera_drop_cm) {
    validate_person(cfg, p);
    require(camera_drop_cm >= 0.0 && camera_drop_cm <= cfg.panel_height_cm,
            "camera drop must lie within the panel height");
    const double top = ray_elevation(cfg.shelf_height_cm, p);
    const double camera = ray_elevation(cfg.shelf_height_cm - camera_drop_cm, p);
    const double bottom = ray_elevation(cfg.panel_bottom_height_cm(), p);
    return RayAngles{top - camera, camera - bottom};
}

double angular_imbalance(const ShelfConfig& cfg, const PersonSample& p, double camera_drop_cm) {
    const RayAngles a = ray_angles(cfg, p, camera_drop_cm);
    return a.upper_angle_rad - a.lower_angle_rad;
}

}  // namespace shelfgaze
