/**
 * @file pipeline.hpp
 * @brief Discrete-event model of a camera feeding a slower processor
 *        through a latest-frame-wins queue.
 *
 * The camera captures frame k at k / capture_fps seconds. Whenever the
 * processor is idle it takes the newest queued frame and discards every
 * older one. When a capture and a completion fall on the same instant the
 * capture is applied first, so the processor picks up the fresh frame.
 *
 * The run stops at duration_s: captures count for t < duration, completions
 * for t <= duration. Work still in progress is reported as in-flight, and
 * frames still waiting in the queue are discarded at the end.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shelfgaze/rng.hpp"

namespace shelfgaze {

struct Distribution {
    enum class Kind { Fixed, Uniform, Normal };

    Kind kind = Kind::Fixed;
    double a = 0.0;  // fixed value, uniform lower bound, or normal mean
    double b = 0.0;  // uniform upper bound or normal stddev

    static Distribution fixed(double v) { return {Kind::Fixed, v, 0.0}; }
    static Distribution uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
    static Distribution normal(double mean, double stddev) { return {Kind::Normal, mean, stddev}; }

    /// Parses "fixed:T", "uniform:LO:HI" or "normal:MU:SIGMA".
    static Distribution parse(std::string_view text);
    std::string to_string() const;

    double sample(const CounterRng& rng, std::uint64_t index) const;
    /// As sample(), with the normal truncated to strictly positive values.
    double sample_positive(const CounterRng& rng, std::uint64_t index) const;
    double minimum() const;
};

struct SimConfig {
    double capture_fps = 30.0;
    Distribution processing_ms = Distribution::fixed(83.33);
    double duration_s = 60.0;
    std::uint64_t seed = 7;
    /// Additive capture-time jitter in ms; off unless set. Capture times stay
    /// non-decreasing.
    std::optional<Distribution> capture_jitter_ms;

    void validate() const;
};

struct SimMetrics {
    std::int64_t captured_count = 0;
    std::int64_t processed_count = 0;
    std::int64_t dropped_count = 0;
    std::int64_t in_flight_count = 0;
    double duration_s = 0.0;
    double effective_fps = 0.0;
    /// Frames discarded between consecutive processed frames -> occurrences.
    std::map<std::int64_t, std::int64_t> skip_histogram;
    double mean_skips = 0.0;
    double latency_mean_ms = 0.0;
    double latency_p95_ms = 0.0;

    bool operator==(const SimMetrics&) const = default;
};

enum class EventKind { Capture, Take, Drop, Complete };

std::string_view to_string(EventKind kind);

struct TraceEvent {
    double t_ms = 0.0;
    EventKind kind = EventKind::Capture;
    std::int64_t frame_id = 0;

    bool operator==(const TraceEvent&) const = default;
};

using EventSink = std::function<void(const TraceEvent&)>;

SimMetrics simulate(const SimConfig& cfg, const EventSink& sink = {});

/// First `limit` events of the run in chronological order.
std::vector<TraceEvent> trace(const SimConfig& cfg, std::size_t limit);

/// Rebuilds metrics from a complete event log; independent of the engine.
SimMetrics replay(const std::vector<TraceEvent>& events, double duration_s);

struct SweepPoint {
    double processing_ms = 0.0;
    double effective_fps = 0.0;
    double mean_skips = 0.0;
};

/// One run per entry with fixed processing time; every row reuses the
/// template's seed.
std::vector<SweepPoint> sweep_processing_time(const SimConfig& base, const std::vector<double>& times_ms);

}  // namespace shelfgaze
