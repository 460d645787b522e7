/**
 * @file calibration.hpp
 * @brief Few-shot calibration plans over the labeled shelf grid.
 *
 * A calibration session records frames_per_point frames while the user looks
 * at each cell center. Training cells contribute train_frames_per_point
 * randomly chosen frames; the fixed validation cells contribute
 * val_frames_per_point frames each.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "shelfgaze/grid.hpp"

namespace shelfgaze {

struct CalibrationSpec {
    int frames_per_point = 10;
    int train_frames_per_point = 3;
    int val_frames_per_point = 1;
    std::vector<int> validation_cells;
    std::map<int, std::vector<int>> training_sets;  // set size -> cells
    std::uint64_t seed = 7;

    /// The standard training sets for 2, 4, 8, 16 and 32 points and the
    /// validation cells {8, 11, 26, 29}.
    static CalibrationSpec standard();
};

enum class CellRole { Training, Validation };

struct PlanEntry {
    int cell = 0;
    CellRole role = CellRole::Training;
    PlanePoint target;
    std::vector<int> train_frames;
    std::vector<int> val_frames;
};

struct CalibrationPlan {
    int set_size = 0;
    std::vector<PlanEntry> entries;  // training cells in table order, then validation cells
};

/// Throws UnknownSetSize when the size has no training set, InvalidArgument
/// when the frame counts do not fit in frames_per_point.
CalibrationPlan plan(const CalibrationSpec& spec, int set_size, const GridSpec& grid = GridSpec{});

enum class ViolationKind { Overlap, Asymmetry, FrameCount, CellRange, DuplicateCell, SetSize };

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string message;
};

std::vector<Violation> validate_spec(const CalibrationSpec& spec, const GridSpec& grid = GridSpec{});

/// True when every validation cell's mirror about the camera's vertical line
/// is also a validation cell.
bool validation_horizontally_symmetric(const CalibrationSpec& spec, const GridSpec& grid = GridSpec{});

enum class Split { Train, Val };

std::string_view to_string(Split split);

struct GroundTruthRecord {
    int frame = 0;
    int cell = 0;
    PlanePoint shelf;
    PlanePoint camera;
    Split split = Split::Train;
};

/// Training cells emit their train frames, validation cells their val
/// frames, in plan order.
std::vector<GroundTruthRecord> emit_ground_truth(const CalibrationPlan& plan, const GridSpec& grid = GridSpec{});

}  // namespace shelfgaze
