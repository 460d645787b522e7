#include "shelfgaze/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "shelfgaze/error.hpp"

namespace shelfgaze {
namespace {

using io::Json;

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST(FormatNumber, ShortestRoundTrip) {
    EXPECT_EQ(io::format_number(55.5), "55.5");
    EXPECT_EQ(io::format_number(0.1), "0.1");
    EXPECT_EQ(io::format_number(-3.0), "-3");
    EXPECT_EQ(io::format_number(1.0 / 3.0), "0.3333333333333333");
}

TEST(DistanceCsv, HeaderAndRows) {
    std::ostringstream os;
    io::write_distance_csv(os, {{165.0, 110.25, std::nullopt}, {50.0, std::nullopt, ErrorCode::NoValidDistance}});
    EXPECT_EQ(os.str(), "stature_mm,distance_mm,status\n1650,1102.5,ok\n500,,NoValidDistance\n");
}

TEST(SweepCsv, Header) {
    std::ostringstream os;
    io::write_sweep_csv(os, {{24.5, -0.25}});
    EXPECT_EQ(os.str(), "drop_cm,residual_rad\n24.5,-0.25\n");
}

TEST(ProcessingSweepCsv, Header) {
    std::ostringstream os;
    io::write_processing_sweep_csv(os, {{83.33, 12.0, 1.5}});
    EXPECT_EQ(os.str(), "time_ms,effective_fps,mean_skips\n83.33,12,1.5\n");
}

TEST(TraceCsv, RoundTrip) {
    SimConfig cfg;
    cfg.processing_ms = Distribution::uniform(60.0, 110.0);
    cfg.duration_s = 3.0;
    const auto events = trace(cfg, 1000);
    std::ostringstream os;
    io::write_trace_csv(os, events);
    EXPECT_EQ(first_line(os.str()), "t_ms,event,frame_id");
    std::istringstream is(os.str());
    EXPECT_EQ(io::read_trace_csv(is), events);
}

TEST(TraceCsv, RejectsUnknownEvent) {
    std::istringstream is("t_ms,event,frame_id\n0,teleport,1\n");
    EXPECT_THROW(io::read_trace_csv(is), Error);
}

TEST(LandmarksCsv, SkipsHeaderCommentsAndBlanks) {
    std::istringstream is(
        "x1,y1,x2,y2,x3,y3,x4,y4,x5,y5,x6,y6\n"
        "# open eye\n"
        "\n"
        "0,0,1,1,3,1,4,0,3,-1,1,-1\n"
        "0,0,1,0.1,2,0.1,3,0,2,-0.1,1,-0.1\n");
    const auto eyes = io::read_landmarks_csv(is);
    ASSERT_EQ(eyes.size(), 2u);
    EXPECT_DOUBLE_EQ(eye_aspect_ratio(eyes[0]), 0.5);
    EXPECT_NEAR(eye_aspect_ratio(eyes[1]), 0.0667, 1e-4);
}

TEST(LandmarksCsv, WrongFieldCount) {
    std::istringstream is("0,0,1,1,3,1\n");
    EXPECT_THROW(io::read_landmarks_csv(is), Error);
    std::istringstream bad("0,0,1,1,3,1,4,0,3,-1,1,nope\n");
    EXPECT_THROW(io::read_landmarks_csv(bad), Error);
}

TEST(LandmarksJson, SingleAndMany) {
    const Json one = Json::parse("[[0,0],[1,1],[3,1],[4,0],[3,-1],[1,-1]]");
    ASSERT_EQ(io::read_landmarks_json(one).size(), 1u);
    const Json many = Json::array({one, one, one});
    EXPECT_EQ(io::read_landmarks_json(many).size(), 3u);
    EXPECT_THROW(io::read_landmarks_json(Json::parse("[[0,0],[1,1]]")), Error);
    EXPECT_THROW(io::read_landmarks_json(Json::parse("{}")), Error);
}

TEST(ShelfConfigJson, RoundTripAndOverride) {
    const ShelfConfig def;
    const Json j = io::to_json(def);
    EXPECT_EQ(j["panel_bottom_height_cm"], 43.0);
    const ShelfConfig back = io::shelf_config_from_json(j);
    EXPECT_EQ(back.camera_drop_cm, def.camera_drop_cm);
    EXPECT_EQ(back.grid_cols, def.grid_cols);

    const ShelfConfig tall = io::shelf_config_from_json(Json{{"shelf_height_cm", 200.0}, {"camera_drop_cm", 60.0}});
    EXPECT_EQ(tall.shelf_height_cm, 200.0);
    EXPECT_EQ(tall.camera_drop_cm, 60.0);
    EXPECT_EQ(tall.panel_height_cm, 138.0);
}

TEST(ShelfConfigJson, Rejections) {
    EXPECT_THROW(io::shelf_config_from_json(Json{{"shelf_hieght_cm", 200.0}}), Error);
    EXPECT_THROW(io::shelf_config_from_json(Json{{"shelf_height_cm", "tall"}}), Error);
    // The derived bottom height must agree with the other values, in either key order.
    EXPECT_THROW(io::shelf_config_from_json(Json{{"panel_bottom_height_cm", 43.0}, {"shelf_height_cm", 200.0}}), Error);
    EXPECT_NO_THROW(io::shelf_config_from_json(Json{{"panel_bottom_height_cm", 62.0}, {"shelf_height_cm", 200.0}}));
}

TEST(Json, CellObjectExact) {
    EXPECT_EQ(io::to_json(PlanePoint{8.5, 80.5}, 19).dump(), R"({"x_cm":8.5,"y_cm":80.5,"cell":19})");
}

TEST(Json, GroundTruthRecordExact) {
    const GroundTruthRecord r{4, 16, {59.5, 57.5}, {8.5, 2.0}, Split::Train};
    EXPECT_EQ(io::to_json(r).dump(), R"({"frame":4,"cell":16,"shelf":[59.5,57.5],"camera":[8.5,2.0],"split":"train"})");
}

TEST(Json, SimMetricsShape) {
    SimConfig cfg;
    cfg.duration_s = 5.0;
    const Json j = io::to_json(simulate(cfg));
    EXPECT_TRUE(j.contains("effective_fps"));
    EXPECT_TRUE(j["skips_per_processed"].is_object());
    EXPECT_TRUE(j["latency_ms"].contains("p95"));
}

TEST(Json, ViolationsReport) {
    const Json ok = io::to_json(std::vector<Violation>{}, true);
    EXPECT_EQ(ok.dump(), R"({"valid":true,"horizontal_symmetry":true,"violations":[]})");
    const Json bad = io::to_json({{ViolationKind::Overlap, "x"}}, false);
    EXPECT_EQ(bad["violations"][0]["kind"], "overlap");
    EXPECT_FALSE(bad["valid"].get<bool>());
}

TEST(CalibrationSpecJson, Overrides) {
    const CalibrationSpec s = io::calibration_spec_from_json(
        Json::parse(R"({"validation_cells":[8,11,26,30],"training_sets":{"2":[6,31]},"seed":3})"));
    EXPECT_EQ(s.validation_cells, (std::vector<int>{8, 11, 26, 30}));
    ASSERT_EQ(s.training_sets.size(), 1u);
    EXPECT_EQ(s.training_sets.at(2), (std::vector<int>{6, 31}));
    EXPECT_EQ(s.seed, 3u);
    EXPECT_THROW(io::calibration_spec_from_json(Json{{"bogus", 1}}), Error);
    EXPECT_THROW(io::calibration_spec_from_json(Json::parse(R"({"validation_cells":[1.5]})")), Error);
}

}  // namespace
}  // namespace shelfgaze
