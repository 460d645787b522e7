/**
 * @file placement.hpp
 * @brief Population-level camera placement and standing-distance planning.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "shelfgaze/error.hpp"
#include "shelfgaze/geometry.hpp"

namespace shelfgaze {

struct PopulationSpec {
    double height_mean_cm = 165.0;
    double height_std_cm = 6.0;
    double distance_min_cm = 75.0;
    double distance_max_cm = 150.0;
    std::int64_t sample_count = 100000;
    std::uint64_t seed = 7;

    void validate() const;

    /// Sample i is a pure function of (seed, i); the same index always
    /// yields the same person regardless of how sampling is scheduled.
    PersonSample sample(const ShelfConfig& cfg, std::int64_t index) const;
};

struct OptimizeOptions {
    unsigned workers = 0;  // 0 picks std::thread::hardware_concurrency()
    double grid_step_cm = 0.1;
    double refine_tolerance_cm = 1e-4;
    SplitFormula formula = SplitFormula::Bisector;
};

struct PlacementResult {
    double mean_drop_cm = 0.0;
    double median_drop_cm = 0.0;
    double std_drop_cm = 0.0;
    double residual_drop_cm = 0.0;  // minimizer of mean squared angular imbalance
    std::int64_t sample_count = 0;
    std::int64_t rejected_samples = 0;

    bool operator==(const PlacementResult&) const = default;
};

/// Throws AllSamplesRejected when no drawn person has a usable eye height.
PlacementResult optimize_camera_drop(const ShelfConfig& cfg, const PopulationSpec& pop,
                                     const OptimizeOptions& options = {});

/// Minimizer of mean((upper - lower angle)^2) over people, grid-searched on
/// [0, panel_height] then refined by golden section.
double residual_minimizer(const ShelfConfig& cfg, const std::vector<PersonSample>& people,
                          const OptimizeOptions& options = {});

/// Distance at which a person with the given eye height sees the camera
/// (at cfg.camera_drop_cm) on the bisector of the panel. Closed form from
/// eye_to_top = r * eye_to_bottom with r = drop / (panel_height - drop). Throws NoValidDistance when no positive
/// distance exists.
double recommended_distance_for_eye_height(const ShelfConfig& cfg, double eye_height_cm);

/// Same, starting from stature; the eye-to-crown offset is subtracted.
double recommended_distance(const ShelfConfig& cfg, double stature_cm);

struct DistanceRow {
    double stature_cm = 0.0;
    std::optional<double> distance_cm;
    std::optional<ErrorCode> error;  // set iff distance_cm is empty
};

std::vector<DistanceRow> distance_table(const ShelfConfig& cfg, const std::vector<double>& statures_cm);

struct SweepRow {
    double drop_cm = 0.0;
    double residual_rad = 0.0;
};

std::vector<SweepRow> imbalance_sweep(const ShelfConfig& cfg, const PersonSample& p,
                                      const std::vector<double>& drops_cm);

/// Inclusive arithmetic range from..to; empty when from > to.
std::vector<double> drop_range(double from_cm, double to_cm, double step_cm);

}  // namespace shelfgaze
