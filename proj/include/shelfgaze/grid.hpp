/**
 * @file grid.hpp
 * @brief Labeled shelf grid and gaze-ray resolution.
 *
 * Shelf coordinates put the origin at the panel's top-left corner with x to
 * the right and y down. Cells are labeled 1..rows*cols row-major from the
 * top-left. Cells are half-open [lo, hi) on both axes, except that the
 * panel's right and bottom edges belong to the last column and row, so the
 * closed panel is tiled exactly.
 */
#pragma once

#include "shelfgaze/geometry.hpp"

namespace shelfgaze {

struct PlanePoint {
    double x_cm = 0.0;
    double y_cm = 0.0;

    bool operator==(const PlanePoint&) const = default;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Eye position has z = distance in front of the shelf plane (z > 0).
/// Direction must be unit length; x/y share the shelf axes.
struct GazeRay {
    Vec3 eye;
    Vec3 direction;

    /// Normalizes direction; throws InvalidArgument for a zero vector.
    static GazeRay toward(const Vec3& eye, const Vec3& direction);
};

class GridSpec {
public:
    GridSpec() : GridSpec(ShelfConfig{}) {}
    explicit GridSpec(const ShelfConfig& cfg);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int cell_count() const { return rows_ * cols_; }
    double panel_width_cm() const { return width_; }
    double panel_height_cm() const { return height_; }
    double cell_width_cm() const { return cell_w_; }
    double cell_height_cm() const { return cell_h_; }
    PlanePoint camera_point() const { return camera_; }

private:
    int rows_;
    int cols_;
    double width_;
    double height_;
    double cell_w_;
    double cell_h_;
    PlanePoint camera_;
};

PlanePoint cell_center(const GridSpec& g, int index);
int point_to_cell(const GridSpec& g, const PlanePoint& p);

PlanePoint to_camera_coords(const GridSpec& g, const PlanePoint& p);
PlanePoint from_camera_coords(const GridSpec& g, const PlanePoint& p);

struct GazeHit {
    PlanePoint point;
    int cell = 0;
};

/// Intersects the ray with the shelf plane z = 0. Throws NoIntersection if
/// the ray is parallel to or leaves the plane, OutOfPanel if it lands
/// outside the panel.
GazeHit ray_to_cell(const GridSpec& g, const GazeRay& ray);

}  // namespace shelfgaze
