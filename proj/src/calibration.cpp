#include "shelfgaze/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "shelfgaze/error.hpp"
#include "shelfgaze/rng.hpp"

namespace shelfgaze {

namespace {

bool in_range(const GridSpec& grid, int cell) { return cell >= 1 && cell <= grid.cell_count(); }

std::string list_to_string(const std::vector<int>& cells) {
    std::string s = "{";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(cells[i]);
    }
    return s + "}";
}

}  // namespace

CalibrationSpec CalibrationSpec::standard() {
    CalibrationSpec spec;
    spec.validation_cells = {8, 11, 26, 29};
    spec.training_sets = {
        {2, {6, 31}},
        {4, {3, 13, 18, 33}},
        {8, {1, 3, 6, 13, 18, 31, 33, 36}},
        {16, {1, 3, 4, 6, 13, 15, 16, 18, 19, 21, 22, 24, 31, 33, 34, 36}},
        {32, {1,  2,  3,  4,  5,  6,  7,  9,  10, 12, 13, 14, 15, 16, 17, 18,
              19, 20, 21, 22, 23, 24, 25, 27, 28, 30, 31, 32, 33, 34, 35, 36}},
    };
    for (const auto& [size, cells] : spec.training_sets) {
        for (int c : cells) {
            if (std::find(spec.validation_cells.begin(), spec.validation_cells.end(), c) != spec.validation_cells.end()) {
                throw std::logic_error("standard training set " + std::to_string(size) + " overlaps validation");
            }
        }
    }
    return spec;
}

CalibrationPlan plan(const CalibrationSpec& spec, int set_size, const GridSpec& grid) {
    const auto it = spec.training_sets.find(set_size);
    if (it == spec.training_sets.end()) {
        fail(ErrorCode::UnknownSetSize, "no training set with " + std::to_string(set_size) + " points");
    }
    require(spec.train_frames_per_point >= 0 && spec.val_frames_per_point >= 0 &&
                spec.train_frames_per_point + spec.val_frames_per_point <= spec.frames_per_point,
            "train + val frames must fit in frames_per_point");

    CalibrationPlan out;
    out.set_size = set_size;
    auto add = [&](int cell, CellRole role) {
        // One stream per cell: a cell's frames do not depend on which set it appears in.
        const std::vector<int> order = CounterRng(spec.seed, static_cast<std::uint64_t>(cell)).permutation(spec.frames_per_point);
        const auto train_end = order.begin() + spec.train_frames_per_point;
        PlanEntry e;
        e.cell = cell;
        e.role = role;
        e.target = cell_center(grid, cell);
        e.train_frames.assign(order.begin(), train_end);
        e.val_frames.assign(train_end, train_end + spec.val_frames_per_point);
        out.entries.push_back(std::move(e));
    };
    for (int cell : it->second) add(cell, CellRole::Training);
    for (int cell : spec.validation_cells) add(cell, CellRole::Validation);
    return out;
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Overlap: return "overlap";
        case ViolationKind::Asymmetry: return "asymmetry";
        case ViolationKind::FrameCount: return "frame_count";
        case ViolationKind::CellRange: return "cell_range";
        case ViolationKind::DuplicateCell: return "duplicate_cell";
        case ViolationKind::SetSize: return "set_size";
    }
    return "unknown";
}

bool validation_horizontally_symmetric(const CalibrationSpec& spec, const GridSpec& grid) {
    constexpr double kTol = 1e-9;
    const double axis = grid.camera_point().x_cm;
    std::vector<PlanePoint> centers;
    for (int cell : spec.validation_cells) {
        if (!in_range(grid, cell)) return false;
        centers.push_back(cell_center(grid, cell));
    }
    for (const auto& c : centers) {
        const PlanePoint mirror{2.0 * axis - c.x_cm, c.y_cm};
        const bool found = std::any_of(centers.begin(), centers.end(), [&](const PlanePoint& o) {
            return std::abs(o.x_cm - mirror.x_cm) <= kTol && std::abs(o.y_cm - mirror.y_cm) <= kTol;
        });
        if (!found) return false;
    }
    return true;
}

std::vector<Violation> validate_spec(const CalibrationSpec& spec, const GridSpec& grid) {
    std::vector<Violation> out;

    if (spec.frames_per_point <= 0 || spec.train_frames_per_point < 0 || spec.val_frames_per_point < 0 ||
        spec.train_frames_per_point + spec.val_frames_per_point > spec.frames_per_point) {
        out.push_back({ViolationKind::FrameCount,
                       std::to_string(spec.train_frames_per_point) + " train + " +
                           std::to_string(spec.val_frames_per_point) + " val frames do not fit in " +
                           std::to_string(spec.frames_per_point) + " frames per point"});
    }

    auto check_cells = [&](const std::vector<int>& cells, const std::string& what) {
        std::set<int> seen;
        for (int c : cells) {
            if (!in_range(grid, c)) {
                out.push_back({ViolationKind::CellRange, what + " contains cell " + std::to_string(c) +
                                                             " outside 1.." + std::to_string(grid.cell_count())});
            }
            if (!seen.insert(c).second) {
                out.push_back({ViolationKind::DuplicateCell, what + " lists cell " + std::to_string(c) + " twice"});
            }
        }
    };

    check_cells(spec.validation_cells, "validation set");
    const std::set<int> validation(spec.validation_cells.begin(), spec.validation_cells.end());
    for (const auto& [size, cells] : spec.training_sets) {
        const std::string name = "training set " + std::to_string(size);
        check_cells(cells, name);
        if (static_cast<int>(cells.size()) != size) {
            out.push_back({ViolationKind::SetSize,
                           name + " has " + std::to_string(cells.size()) + " cells"});
        }
        for (int c : cells) {
            if (validation.count(c)) {
                out.push_back({ViolationKind::Overlap, name + " uses validation cell " + std::to_string(c)});
            }
        }
    }

    if (!validation_horizontally_symmetric(spec, grid)) {
        out.push_back({ViolationKind::Asymmetry, "validation cells " + list_to_string(spec.validation_cells) +
                                                     " are not mirror-symmetric about x = " +
                                                     std::to_string(grid.camera_point().x_cm) + " cm"});
    }
    return out;
}

std::string_view to_string(Split split) { return split == Split::Train ? "train" : "val"; }

std::vector<GroundTruthRecord> emit_ground_truth(const CalibrationPlan& plan, const GridSpec& grid) {
    std::vector<GroundTruthRecord> out;
    for (const auto& e : plan.entries) {
        const PlanePoint camera = to_camera_coords(grid, e.target);
        const bool training = e.role == CellRole::Training;
        const auto& frames = training ? e.train_frames : e.val_frames;
        for (int f : frames) out.push_back({f, e.cell, e.target, camera, training ? Split::Train : Split::Val});
    }
    return out;
}

}  // namespace shelfgaze
