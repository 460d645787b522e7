/**
 * @file geometry.hpp
 * @brief Side-view geometry of a person looking at a shelf panel.
 *
 * All lengths are centimeters. The vertical axis points up from the floor;
 * the panel top coincides with the shelf top, so the camera drop is measured
 * from both. The eye sits at height h and horizontal distance d in front of
 * the shelf plane.
 *
 * The camera is bisector-optimal when the eye-to-camera ray halves the angle
 * the panel subtends at the eye. By the angle bisector theorem that happens
 * iff drop : (panel_height - drop) = eye_to_top : eye_to_bottom.
 */
#pragma once

namespace shelfgaze {

struct ShelfConfig {
    double shelf_height_cm = 181.0;
    double panel_height_cm = 138.0;
    double panel_width_cm = 102.0;
    double camera_x_cm = 51.0;
    double camera_drop_cm = 55.5;
    double eye_crown_offset_cm = 4.8;
    int grid_rows = 6;
    int grid_cols = 6;

    double panel_bottom_height_cm() const { return shelf_height_cm - panel_height_cm; }
    double cell_width_cm() const { return panel_width_cm / grid_cols; }
    double cell_height_cm() const { return panel_height_cm / grid_rows; }

    /// Throws InvalidArgument when any invariant is broken.
    void validate() const;
};

/// Upper sanity bound on eye height; anything above is a unit mistake.
inline constexpr double kMaxEyeHeightCm = 250.0;

struct PersonSample {
    double stature_cm = 0.0;
    double eye_height_cm = 0.0;
    double distance_cm = 0.0;

    /// Eye height is stature minus the configured eye-to-crown offset.
    static PersonSample from_stature(const ShelfConfig& cfg, double stature_cm, double distance_cm);
    static PersonSample from_eye_height(const ShelfConfig& cfg, double eye_height_cm, double distance_cm);
};

/// Throws EyeBelowPanelBottom for eyes at or below the panel bottom,
/// InvalidArgument for non-positive distance or absurd heights.
void validate_person(const ShelfConfig& cfg, const PersonSample& p);

struct SplitResult {
    double eye_to_top_cm = 0.0;
    double eye_to_bottom_cm = 0.0;
    double drop_cm = 0.0;
    double upper_angle_rad = 0.0;  // shelf top to camera, seen from the eye
    double lower_angle_rad = 0.0;  // camera to panel bottom
};

enum class SplitFormula {
    Bisector,          // drop = panel * top / (top + bottom)
    SwappedNumerator,  // drop = panel * bottom / (top + bottom); kept only for comparison
};

double eye_to_top(const ShelfConfig& cfg, const PersonSample& p);
double eye_to_bottom(const ShelfConfig& cfg, const PersonSample& p);

SplitResult bisector_split(const ShelfConfig& cfg, const PersonSample& p,
                           SplitFormula formula = SplitFormula::Bisector);

struct RayAngles {
    double upper_angle_rad = 0.0;
    double lower_angle_rad = 0.0;
};

/// Upper and lower angles for a camera at the given drop below the shelf top.
RayAngles ray_angles(const ShelfConfig& cfg, const PersonSample& p, double camera_drop_cm);

/// Signed residual upper - lower angle. Negative when the camera sits above the
/// bisector (too close to the shelf top), positive below it, zero on it.
/// Strictly increasing in camera_drop_cm.
double angular_imbalance(const ShelfConfig& cfg, const PersonSample& p, double camera_drop_cm);

}  // namespace shelfgaze
