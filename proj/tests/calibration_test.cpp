#include "shelfgaze/calibration.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "shelfgaze/error.hpp"

namespace shelfgaze {
namespace {

const GridSpec kGrid{};

std::vector<int> training_cells(const CalibrationPlan& p) {
    std::vector<int> out;
    for (const auto& e : p.entries) {
        if (e.role == CellRole::Training) out.push_back(e.cell);
    }
    return out;
}

bool has_kind(const std::vector<Violation>& v, ViolationKind kind) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

TEST(StandardSpec, StandardSets) {
    const CalibrationSpec s = CalibrationSpec::standard();
    EXPECT_EQ(s.validation_cells, (std::vector<int>{8, 11, 26, 29}));
    EXPECT_EQ(s.training_sets.at(2), (std::vector<int>{6, 31}));
    EXPECT_EQ(s.training_sets.at(4), (std::vector<int>{3, 13, 18, 33}));
    EXPECT_EQ(s.training_sets.at(8), (std::vector<int>{1, 3, 6, 13, 18, 31, 33, 36}));
    EXPECT_EQ(s.training_sets.at(16), (std::vector<int>{1, 3, 4, 6, 13, 15, 16, 18, 19, 21, 22, 24, 31, 33, 34, 36}));
    // The 32-point set is every cell except the validation cells.
    std::vector<int> rest;
    for (int c = 1; c <= 36; ++c) {
        if (c != 8 && c != 11 && c != 26 && c != 29) rest.push_back(c);
    }
    EXPECT_EQ(s.training_sets.at(32), rest);
    EXPECT_EQ(s.frames_per_point, 10);
    EXPECT_EQ(s.train_frames_per_point, 3);
    EXPECT_EQ(s.val_frames_per_point, 1);
}

TEST(Plan, SizeFourEntries) {
    const CalibrationPlan p = plan(CalibrationSpec::standard(), 4, kGrid);
    ASSERT_EQ(p.entries.size(), 8u);
    EXPECT_EQ(training_cells(p), (std::vector<int>{3, 13, 18, 33}));
    std::vector<int> val;
    for (const auto& e : p.entries) {
        if (e.role == CellRole::Validation) val.push_back(e.cell);
    }
    EXPECT_EQ(val, (std::vector<int>{8, 11, 26, 29}));
    for (const auto& e : p.entries) EXPECT_EQ(e.target, cell_center(kGrid, e.cell));
}

TEST(Plan, FrameIdsAreDisjointAndInRange) {
    for (int size : {2, 4, 8, 16, 32}) {
        const CalibrationPlan p = plan(CalibrationSpec::standard(), size, kGrid);
        for (const auto& e : p.entries) {
            ASSERT_EQ(e.train_frames.size(), 3u);
            ASSERT_EQ(e.val_frames.size(), 1u);
            std::set<int> ids(e.train_frames.begin(), e.train_frames.end());
            ids.insert(e.val_frames.begin(), e.val_frames.end());
            ASSERT_EQ(ids.size(), 4u);
            ASSERT_GE(*ids.begin(), 0);
            ASSERT_LE(*ids.rbegin(), 9);
        }
    }
}

TEST(Plan, SizeThirtyTwoAvoidsValidation) {
    const auto cells = training_cells(plan(CalibrationSpec::standard(), 32, kGrid));
    ASSERT_EQ(cells.size(), 32u);
    for (int c : cells) EXPECT_TRUE(c != 8 && c != 11 && c != 26 && c != 29) << c;
}

TEST(Plan, DeterministicPerSeed) {
    CalibrationSpec s = CalibrationSpec::standard();
    s.seed = 123;
    const CalibrationPlan a = plan(s, 2, kGrid), b = plan(s, 2, kGrid);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        EXPECT_EQ(a.entries[i].train_frames, b.entries[i].train_frames);
        EXPECT_EQ(a.entries[i].val_frames, b.entries[i].val_frames);
    }
}

TEST(Plan, SeedsDiffer) {
    std::set<std::vector<int>> draws;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        CalibrationSpec s = CalibrationSpec::standard();
        s.seed = seed;
        std::vector<int> all;
        for (const auto& e : plan(s, 8, kGrid).entries) {
            all.insert(all.end(), e.train_frames.begin(), e.train_frames.end());
            all.insert(all.end(), e.val_frames.begin(), e.val_frames.end());
        }
        draws.insert(all);
    }
    EXPECT_EQ(draws.size(), 100u);
}

TEST(Plan, Errors) {
    try {
        plan(CalibrationSpec::standard(), 5, kGrid);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownSetSize);
    }
    CalibrationSpec s = CalibrationSpec::standard();
    s.train_frames_per_point = 10;
    EXPECT_THROW(plan(s, 4, kGrid), Error);
}

TEST(ValidateSpec, StandardIsClean) {
    const CalibrationSpec s = CalibrationSpec::standard();
    EXPECT_TRUE(validate_spec(s, kGrid).empty());
    EXPECT_TRUE(validation_horizontally_symmetric(s, kGrid));
    // 8 and 11 sit at x = 25.5 and 76.5, mirrored about the camera at 51.
    EXPECT_EQ(cell_center(kGrid, 8).x_cm + cell_center(kGrid, 11).x_cm, 2 * 51.0);
}

TEST(ValidateSpec, DetectsAsymmetry) {
    CalibrationSpec s = CalibrationSpec::standard();
    s.validation_cells = {8, 11, 26, 30};
    const auto v = validate_spec(s, kGrid);
    EXPECT_TRUE(has_kind(v, ViolationKind::Asymmetry));
    EXPECT_FALSE(validation_horizontally_symmetric(s, kGrid));
}

TEST(ValidateSpec, DetectsOverlapRangeDuplicatesAndFrames) {
    CalibrationSpec s = CalibrationSpec::standard();
    s.training_sets[4] = {3, 8, 18, 33};
    EXPECT_TRUE(has_kind(validate_spec(s, kGrid), ViolationKind::Overlap));

    s = CalibrationSpec::standard();
    s.training_sets[2] = {6, 40};
    EXPECT_TRUE(has_kind(validate_spec(s, kGrid), ViolationKind::CellRange));

    s = CalibrationSpec::standard();
    s.training_sets[2] = {6, 6};
    EXPECT_TRUE(has_kind(validate_spec(s, kGrid), ViolationKind::DuplicateCell));

    s = CalibrationSpec::standard();
    s.train_frames_per_point = 9;
    s.val_frames_per_point = 2;
    EXPECT_TRUE(has_kind(validate_spec(s, kGrid), ViolationKind::FrameCount));

    s = CalibrationSpec::standard();
    s.training_sets[4] = {3, 13, 18};
    EXPECT_TRUE(has_kind(validate_spec(s, kGrid), ViolationKind::SetSize));
}

TEST(ValidateSpec, VerticalSymmetryAboutCameraDoesNotHold) {
    // Rows 2 and 5 are centered on y = 69, not on the camera row at 55.5.
    const double mid = 0.5 * (cell_center(kGrid, 8).y_cm + cell_center(kGrid, 26).y_cm);
    EXPECT_EQ(mid, 69.0);
    EXPECT_NE(mid, kGrid.camera_point().y_cm);
}

TEST(GroundTruth, DualOriginTargets) {
    CalibrationPlan p;
    p.entries.push_back({16, CellRole::Training, cell_center(kGrid, 16), {4, 5, 6}, {7}});
    p.entries.push_back({1, CellRole::Validation, cell_center(kGrid, 1), {0, 1, 2}, {3}});
    const auto records = emit_ground_truth(p, kGrid);
    ASSERT_EQ(records.size(), 4u);
    EXPECT_EQ(records[0].shelf, (PlanePoint{59.5, 57.5}));
    EXPECT_EQ(records[0].camera, (PlanePoint{8.5, 2.0}));
    EXPECT_EQ(records[0].split, Split::Train);
    EXPECT_EQ(records[3].cell, 1);
    EXPECT_EQ(records[3].frame, 3);
    EXPECT_EQ(records[3].shelf, (PlanePoint{8.5, 11.5}));
    EXPECT_EQ(records[3].camera, (PlanePoint{-42.5, -44.0}));
    EXPECT_EQ(records[3].split, Split::Val);
}

TEST(GroundTruth, EmptyPlan) { EXPECT_TRUE(emit_ground_truth(CalibrationPlan{}, kGrid).empty()); }

TEST(GroundTruth, CameraPlusOffsetIsShelf) {
    for (int size : {2, 4, 8, 16, 32}) {
        const auto plan_ = plan(CalibrationSpec::standard(), size, kGrid);
        const auto records = emit_ground_truth(plan_, kGrid);
        EXPECT_EQ(records.size(), static_cast<std::size_t>(3 * size + 4));
        for (const auto& r : records) {
            ASSERT_EQ(r.camera.x_cm + 51.0, r.shelf.x_cm);
            ASSERT_EQ(r.camera.y_cm + 55.5, r.shelf.y_cm);
        }
    }
}

}  // namespace
}  // namespace shelfgaze
