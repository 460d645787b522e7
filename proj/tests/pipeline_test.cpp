#include "shelfgaze/pipeline.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "shelfgaze/error.hpp"

namespace shelfgaze {
namespace {

SimConfig config(Distribution processing, double duration_s, std::uint64_t seed = 7) {
    SimConfig c;
    c.processing_ms = processing;
    c.duration_s = duration_s;
    c.seed = seed;
    return c;
}

std::vector<TraceEvent> full_trace(const SimConfig& cfg) {
    std::vector<TraceEvent> events;
    simulate(cfg, [&](const TraceEvent& e) { events.push_back(e); });
    return events;
}

TEST(Distribution, ParseAndFormat) {
    const Distribution f = Distribution::parse("fixed:83.33");
    EXPECT_EQ(f.kind, Distribution::Kind::Fixed);
    EXPECT_EQ(f.a, 83.33);
    const Distribution u = Distribution::parse("uniform:66.7:100");
    EXPECT_EQ(u.kind, Distribution::Kind::Uniform);
    EXPECT_EQ(u.b, 100.0);
    EXPECT_EQ(Distribution::parse("normal:80:10").to_string(), "normal:80:10");
    EXPECT_THROW(Distribution::parse("fixed"), Error);
    EXPECT_THROW(Distribution::parse("gamma:1:2"), Error);
    EXPECT_THROW(Distribution::parse("fixed:abc"), Error);
}

TEST(SimConfig, Validation) {
    EXPECT_NO_THROW(SimConfig{}.validate());
    EXPECT_THROW(config(Distribution::fixed(0.0), 1.0).validate(), Error);
    EXPECT_THROW(config(Distribution::uniform(50.0, 40.0), 1.0).validate(), Error);
    EXPECT_THROW(config(Distribution::fixed(10.0), 0.0).validate(), Error);
    SimConfig c;
    c.capture_fps = 0.0;
    EXPECT_THROW(c.validate(), Error);
}

TEST(Simulate, FastConsumerKeepsUp) {
    const SimMetrics m = simulate(config(Distribution::fixed(20.0), 10.0));
    EXPECT_EQ(m.captured_count, 300);
    EXPECT_GE(m.processed_count, 299);
    EXPECT_LE(m.processed_count, 300);
    EXPECT_EQ(m.dropped_count, 0);
    EXPECT_NEAR(m.effective_fps, 30.0, 0.1);
    EXPECT_EQ(m.skip_histogram.size(), 1u);
    EXPECT_EQ(m.skip_histogram.begin()->first, 0);
    EXPECT_DOUBLE_EQ(m.latency_mean_ms, 20.0);
}

TEST(Simulate, TwelveFpsOperatingPoint) {
    const SimMetrics m = simulate(config(Distribution::fixed(83.33), 60.0));
    EXPECT_NEAR(m.effective_fps, 12.0, 0.1);
    EXPECT_NEAR(m.mean_skips, 1.5, 0.1);
    for (const auto& [skips, count] : m.skip_histogram) EXPECT_TRUE(skips == 1 || skips == 2) << skips;
}

TEST(Simulate, TenToFifteenEnvelope) {
    const SimMetrics m = simulate(config(Distribution::uniform(66.7, 100.0), 120.0));
    EXPECT_GE(m.effective_fps, 10.0);
    EXPECT_LE(m.effective_fps, 15.0);
    for (const auto& [skips, count] : m.skip_histogram) {
        EXPECT_GE(skips, 1);
        EXPECT_LE(skips, 5);
    }
}

TEST(Simulate, CaptureWinsTies) {
    // 200 ms is exactly six capture intervals at 30 fps: every completion
    // coincides with a capture, which must be taken immediately.
    const SimMetrics m = simulate(config(Distribution::fixed(200.0), 10.0));
    ASSERT_EQ(m.skip_histogram.size(), 1u);
    EXPECT_EQ(m.skip_histogram.begin()->first, 5);
    EXPECT_DOUBLE_EQ(m.latency_mean_ms, 200.0);
}

TEST(Trace, HandSimulatedOpening) {
    const auto events = trace(config(Distribution::fixed(83.33), 60.0), 10);
    const double T = 1000.0 / 30.0;
    const std::vector<TraceEvent> expected = {
        {0.0, EventKind::Capture, 0},    {0.0, EventKind::Take, 0},        {T, EventKind::Capture, 1},
        {2 * T, EventKind::Capture, 2},  {83.33, EventKind::Complete, 0},  {83.33, EventKind::Drop, 1},
        {83.33, EventKind::Take, 2},     {3 * T, EventKind::Capture, 3},   {4 * T, EventKind::Capture, 4},
        {166.66, EventKind::Complete, 2},
    };
    ASSERT_EQ(events.size(), expected.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        EXPECT_EQ(events[i].kind, expected[i].kind) << i;
        EXPECT_EQ(events[i].frame_id, expected[i].frame_id) << i;
        EXPECT_NEAR(events[i].t_ms, expected[i].t_ms, 1e-9) << i;
    }
}

TEST(Trace, LimitsAndShortRuns) {
    EXPECT_TRUE(trace(SimConfig{}, 0).empty());
    const auto events = trace(config(Distribution::fixed(10.0), 0.02), 100);  // shorter than one interval
    EXPECT_LE(std::count_if(events.begin(), events.end(), [](const TraceEvent& e) { return e.kind == EventKind::Capture; }),
              1);
}

TEST(Trace, ReplayReproducesMetrics) {
    for (const auto& cfg : {config(Distribution::fixed(83.33), 60.0), config(Distribution::uniform(66.7, 100.0), 30.0, 3),
                            config(Distribution::normal(90.0, 40.0), 20.0, 4), config(Distribution::fixed(20.0), 10.0)}) {
        EXPECT_EQ(replay(full_trace(cfg), cfg.duration_s), simulate(cfg));
    }
}

TEST(Sweep, FixedTimes) {
    const auto rows = sweep_processing_time(config(Distribution::fixed(1.0), 60.0), {20.0, 83.33, 200.0});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(rows[0].effective_fps, 30.0, 0.2);
    EXPECT_NEAR(rows[1].effective_fps, 12.0, 0.2);
    EXPECT_NEAR(rows[2].effective_fps, 5.0, 0.2);
}

TEST(Sweep, SingleEntryMatchesSimulate) {
    const SimConfig base = config(Distribution::fixed(1.0), 30.0);
    const auto rows = sweep_processing_time(base, {70.0});
    const SimMetrics m = simulate(config(Distribution::fixed(70.0), 30.0));
    EXPECT_EQ(rows[0].effective_fps, m.effective_fps);
    EXPECT_EQ(rows[0].mean_skips, m.mean_skips);
    EXPECT_THROW(sweep_processing_time(base, {}), Error);
}

TEST(Sweep, MonotoneInProcessingTime) {
    std::vector<double> times;
    for (double t = 5.0; t <= 400.0; t += 7.3) times.push_back(t);
    const auto rows = sweep_processing_time(config(Distribution::fixed(1.0), 30.0), times);
    for (std::size_t i = 1; i < rows.size(); ++i) ASSERT_LE(rows[i].effective_fps, rows[i - 1].effective_fps) << times[i];
}

class PipelineProperty : public ::testing::TestWithParam<std::uint64_t> {
protected:
    SimConfig random_config() {
        std::mt19937_64 rng(GetParam());
        std::uniform_real_distribution<double> fps(5.0, 120.0), lo(1.0, 150.0), span(0.0, 100.0), dur(0.5, 20.0);
        SimConfig c;
        c.capture_fps = fps(rng);
        const double a = lo(rng);
        switch (GetParam() % 3) {
            case 0: c.processing_ms = Distribution::fixed(a); break;
            case 1: c.processing_ms = Distribution::uniform(a, a + span(rng)); break;
            default: c.processing_ms = Distribution::normal(a, span(rng) + 1.0); break;
        }
        c.duration_s = dur(rng);
        c.seed = GetParam();
        if (GetParam() % 4 == 0) c.capture_jitter_ms = Distribution::uniform(-2.0, 2.0);
        return c;
    }
};

TEST_P(PipelineProperty, Conservation) {
    const SimMetrics m = simulate(random_config());
    EXPECT_LE(m.in_flight_count, 1);
    EXPECT_EQ(m.captured_count, m.processed_count + m.dropped_count + m.in_flight_count);
}

TEST_P(PipelineProperty, FreshnessAndOrdering) {
    const auto events = full_trace(random_config());
    std::int64_t last_take = -1;
    double last_t = 0.0;
    for (const auto& e : events) {
        ASSERT_GE(e.t_ms, last_t);
        last_t = e.t_ms;
        if (e.kind == EventKind::Take) {
            ASSERT_GT(e.frame_id, last_take);
            last_take = e.frame_id;
        }
    }
}

TEST_P(PipelineProperty, FpsBound) {
    const SimConfig c = random_config();
    const SimMetrics m = simulate(c);
    const double min_time = std::max(c.processing_ms.minimum(), 1e-9);
    const double bound = std::min(c.capture_fps, 1000.0 / min_time) + 1.0 / c.duration_s;
    EXPECT_LE(m.effective_fps, bound);
}

TEST_P(PipelineProperty, DeterministicTrace) {
    const SimConfig c = random_config();
    EXPECT_EQ(full_trace(c), full_trace(c));
    EXPECT_EQ(replay(full_trace(c), c.duration_s), simulate(c));
}

INSTANTIATE_TEST_SUITE_P(Seeds, PipelineProperty, ::testing::Range<std::uint64_t>(1, 41));

TEST(Simulate, SeedsChangeStochasticRuns) {
    const SimMetrics a = simulate(config(Distribution::uniform(66.7, 100.0), 30.0, 1));
    const SimMetrics b = simulate(config(Distribution::uniform(66.7, 100.0), 30.0, 2));
    EXPECT_NE(a.latency_mean_ms, b.latency_mean_ms);
}

TEST(Simulate, TruncatedNormalStaysPositive) {
    const auto events = full_trace(config(Distribution::normal(5.0, 50.0), 5.0));
    double take_t = 0.0;
    for (const auto& e : events) {
        if (e.kind == EventKind::Take) take_t = e.t_ms;
        if (e.kind == EventKind::Complete) ASSERT_GT(e.t_ms, take_t);
    }
}

}  // namespace
}  // namespace shelfgaze
