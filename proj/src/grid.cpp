#include "shelfgaze/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shelfgaze/error.hpp"

namespace shelfgaze {

namespace {

constexpr double kUnitTolerance = 1e-9;

int axis_bin(double value, double cell, int count) {
    return std::min(static_cast<int>(std::floor(value / cell)), count - 1);
}

}  // namespace

GazeRay GazeRay::toward(const Vec3& eye, const Vec3& direction) {
    const double n = std::sqrt(direction.x * direction.x + direction.y * direction.y + direction.z * direction.z);
    require(n > 0.0 && std::isfinite(n), "gaze direction must be a non-zero vector");
    return GazeRay{eye, {direction.x / n, direction.y / n, direction.z / n}};
}

GridSpec::GridSpec(const ShelfConfig& cfg)
    : rows_(cfg.grid_rows),
      cols_(cfg.grid_cols),
      width_(cfg.panel_width_cm),
      height_(cfg.panel_height_cm),
      cell_w_(cfg.cell_width_cm()),
      cell_h_(cfg.cell_height_cm()),
      camera_{cfg.camera_x_cm, cfg.camera_drop_cm} {
    cfg.validate();
}

PlanePoint cell_center(const GridSpec& g, int index) {
    if (index < 1 || index > g.cell_count()) {
        fail(ErrorCode::IndexOutOfRange,
             "cell index " + std::to_string(index) + " outside 1.." + std::to_string(g.cell_count()));
    }
    const int col = (index - 1) % g.cols();
    const int row = (index - 1) / g.cols();
    return {(col + 0.5) * g.cell_width_cm(), (row + 0.5) * g.cell_height_cm()};
}

int point_to_cell(const GridSpec& g, const PlanePoint& p) {
    if (!(p.x_cm >= 0.0 && p.x_cm <= g.panel_width_cm() && p.y_cm >= 0.0 && p.y_cm <= g.panel_height_cm())) {
        fail(ErrorCode::OutOfPanel,
             "point (" + std::to_string(p.x_cm) + ", " + std::to_string(p.y_cm) + ") lies outside the panel");
    }
    const int col = axis_bin(p.x_cm, g.cell_width_cm(), g.cols());
    const int row = axis_bin(p.y_cm, g.cell_height_cm(), g.rows());
    return row * g.cols() + col + 1;
}

PlanePoint to_camera_coords(const GridSpec& g, const PlanePoint& p) {
    return {p.x_cm - g.camera_point().x_cm, p.y_cm - g.camera_point().y_cm};
}

PlanePoint from_camera_coords(const GridSpec& g, const PlanePoint& p) {
    return {p.x_cm + g.camera_point().x_cm, p.y_cm + g.camera_point().y_cm};
}

GazeHit ray_to_cell(const GridSpec& g, const GazeRay& ray) {
    const Vec3& d = ray.direction;
    const double norm = std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
    require(std::abs(norm - 1.0) <= kUnitTolerance, "gaze direction must be unit length");
    require(ray.eye.z > 0.0, "eye must be in front of the shelf plane");

    if (!(d.z < 0.0)) fail(ErrorCode::NoIntersection, "gaze ray does not travel toward the shelf");
    const double t = -ray.eye.z / d.z;
    const PlanePoint hit{ray.eye.x + t * d.x, ray.eye.y + t * d.y};
    return {hit, point_to_cell(g, hit)};
}

}  // namespace shelfgaze
