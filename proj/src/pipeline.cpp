#include "shelfgaze/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>

#include "shelfgaze/error.hpp"

namespace shelfgaze {

namespace {

constexpr std::uint64_t kProcessingStream = 11;
constexpr std::uint64_t kJitterStream = 12;

double parse_number(std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    require(ec == std::errc() && ptr == text.data() + text.size(),
            "expected a number, got '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

struct Stats {
    double mean = 0.0;
    double p95 = 0.0;
};

// Nearest-rank 95th percentile.
Stats latency_stats(const std::vector<double>& latencies) {
    if (latencies.empty()) return {};
    double sum = 0.0;
    for (double v : latencies) sum += v;
    std::vector<double> sorted = latencies;
    std::sort(sorted.begin(), sorted.end());
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(sorted.size())));
    return {sum / static_cast<double>(sorted.size()), sorted[std::max<std::size_t>(rank, 1) - 1]};
}

double mean_of_histogram(const std::map<std::int64_t, std::int64_t>& hist) {
    std::int64_t n = 0;
    double sum = 0.0;
    for (const auto& [skips, count] : hist) {
        n += count;
        sum += static_cast<double>(skips) * static_cast<double>(count);
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

class Engine {
public:
    Engine(const SimConfig& cfg, const EventSink& sink)
        : cfg_(cfg),
          sink_(sink),
          duration_ms_(cfg.duration_s * 1000.0),
          processing_rng_(cfg.seed, kProcessingStream),
          jitter_rng_(cfg.seed, kJitterStream) {}

    SimMetrics run() {
        double next_capture = capture_time(0);
        while (true) {
            const bool capture_due = next_capture < duration_ms_;
            const bool completion_due = busy_ && completion_ms_ <= duration_ms_;
            if (!capture_due && !completion_due) break;
            if (capture_due && (!completion_due || next_capture <= completion_ms_)) {
                capture(next_capture);
                next_capture = std::max(next_capture, capture_time(next_frame_));
            } else {
                complete();
            }
        }
        for (const auto& f : pending_) emit({duration_ms_, EventKind::Drop, f.id});
        metrics_.dropped_count += static_cast<std::int64_t>(pending_.size());
        pending_.clear();

        metrics_.in_flight_count = busy_ ? 1 : 0;
        metrics_.duration_s = cfg_.duration_s;
        metrics_.effective_fps = static_cast<double>(metrics_.processed_count) / cfg_.duration_s;
        metrics_.mean_skips = mean_of_histogram(metrics_.skip_histogram);
        const Stats s = latency_stats(latencies_);
        metrics_.latency_mean_ms = s.mean;
        metrics_.latency_p95_ms = s.p95;
        return metrics_;
    }

private:
    struct Frame {
        std::int64_t id;
        double captured_ms;
    };

    double capture_time(std::int64_t k) const {
        double t = static_cast<double>(k) * 1000.0 / cfg_.capture_fps;
        if (cfg_.capture_jitter_ms) t += cfg_.capture_jitter_ms->sample(jitter_rng_, static_cast<std::uint64_t>(k));
        return std::max(0.0, t);
    }

    void emit(const TraceEvent& e) const {
        if (sink_) sink_(e);
    }

    void capture(double t) {
        const Frame f{next_frame_++, t};
        ++metrics_.captured_count;
        emit({t, EventKind::Capture, f.id});
        pending_.push_back(f);
        if (!busy_) take_latest(t);
    }

    void complete() {
        const double t = completion_ms_;
        emit({t, EventKind::Complete, current_.id});
        busy_ = false;
        ++metrics_.processed_count;
        latencies_.push_back(t - current_.captured_ms);
        if (last_processed_) ++metrics_.skip_histogram[current_.id - *last_processed_ - 1];
        last_processed_ = current_.id;
        take_latest(t);
    }

    void take_latest(double t) {
        if (pending_.empty()) return;
        for (std::size_t i = 0; i + 1 < pending_.size(); ++i) emit({t, EventKind::Drop, pending_[i].id});
        metrics_.dropped_count += static_cast<std::int64_t>(pending_.size()) - 1;
        current_ = pending_.back();
        pending_.clear();
        emit({t, EventKind::Take, current_.id});
        busy_ = true;
        completion_ms_ = t + cfg_.processing_ms.sample_positive(processing_rng_, takes_++);
    }

    const SimConfig& cfg_;
    const EventSink& sink_;
    double duration_ms_;
    CounterRng processing_rng_;
    CounterRng jitter_rng_;

    std::int64_t next_frame_ = 0;
    std::deque<Frame> pending_;
    bool busy_ = false;
    Frame current_{0, 0.0};
    double completion_ms_ = 0.0;
    std::uint64_t takes_ = 0;
    std::optional<std::int64_t> last_processed_;

    SimMetrics metrics_;
    std::vector<double> latencies_;
};

}  // namespace

Distribution Distribution::parse(std::string_view text) {
    const auto parts = split(text, ':');
    const std::string_view kind = parts.front();
    if (kind == "fixed" && parts.size() == 2) return fixed(parse_number(parts[1]));
    if (kind == "uniform" && parts.size() == 3) return uniform(parse_number(parts[1]), parse_number(parts[2]));
    if (kind == "normal" && parts.size() == 3) return normal(parse_number(parts[1]), parse_number(parts[2]));
    fail(ErrorCode::InvalidArgument, "unrecognized distribution '" + std::string(text) +
                                         "' (expected fixed:T, uniform:LO:HI or normal:MU:SIGMA)");
}

std::string Distribution::to_string() const {
    auto num = [](double v) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    };
    switch (kind) {
        case Kind::Fixed: return "fixed:" + num(a);
        case Kind::Uniform: return "uniform:" + num(a) + ":" + num(b);
        case Kind::Normal: return "normal:" + num(a) + ":" + num(b);
    }
    return {};
}

double Distribution::sample(const CounterRng& rng, std::uint64_t index) const {
    switch (kind) {
        case Kind::Fixed: return a;
        case Kind::Uniform: return rng.uniform(index, a, b);
        case Kind::Normal: return rng.normal(index, a, b);
    }
    return a;
}

double Distribution::sample_positive(const CounterRng& rng, std::uint64_t index) const {
    if (kind == Kind::Normal) return rng.normal_above(index, a, b, 0.0);
    return sample(rng, index);
}

double Distribution::minimum() const {
    switch (kind) {
        case Kind::Fixed: return a;
        case Kind::Uniform: return a;
        case Kind::Normal: return 0.0;
    }
    return a;
}

void SimConfig::validate() const {
    require(capture_fps > 0.0 && std::isfinite(capture_fps), "capture fps must be positive");
    require(duration_s > 0.0 && std::isfinite(duration_s), "duration must be positive");
    switch (processing_ms.kind) {
        case Distribution::Kind::Fixed:
            require(processing_ms.a > 0.0, "processing time must be positive");
            break;
        case Distribution::Kind::Uniform:
            require(processing_ms.a > 0.0 && processing_ms.a <= processing_ms.b,
                    "uniform processing time needs 0 < lo <= hi");
            break;
        case Distribution::Kind::Normal:
            require(processing_ms.b > 0.0, "normal processing time needs sigma > 0");
            break;
    }
    if (capture_jitter_ms && capture_jitter_ms->kind == Distribution::Kind::Uniform) {
        require(capture_jitter_ms->a <= capture_jitter_ms->b, "jitter range needs lo <= hi");
    }
}

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Capture: return "capture";
        case EventKind::Take: return "take";
        case EventKind::Drop: return "drop";
        case EventKind::Complete: return "complete";
    }
    return "unknown";
}

SimMetrics simulate(const SimConfig& cfg, const EventSink& sink) {
    cfg.validate();
    return Engine(cfg, sink).run();
}

std::vector<TraceEvent> trace(const SimConfig& cfg, std::size_t limit) {
    std::vector<TraceEvent> events;
    if (limit == 0) return events;
    simulate(cfg, [&](const TraceEvent& e) {
        if (events.size() < limit) events.push_back(e);
    });
    return events;
}

SimMetrics replay(const std::vector<TraceEvent>& events, double duration_s) {
    SimMetrics m;
    std::map<std::int64_t, double> captured_at;
    std::vector<double> latencies;
    std::optional<std::int64_t> last_processed;
    std::int64_t takes = 0;
    for (const auto& e : events) {
        switch (e.kind) {
            case EventKind::Capture:
                ++m.captured_count;
                captured_at[e.frame_id] = e.t_ms;
                break;
            case EventKind::Take:
                ++takes;
                break;
            case EventKind::Drop:
                ++m.dropped_count;
                break;
            case EventKind::Complete:
                ++m.processed_count;
                latencies.push_back(e.t_ms - captured_at.at(e.frame_id));
                if (last_processed) ++m.skip_histogram[e.frame_id - *last_processed - 1];
                last_processed = e.frame_id;
                break;
        }
    }
    m.in_flight_count = takes - m.processed_count;
    m.duration_s = duration_s;
    m.effective_fps = static_cast<double>(m.processed_count) / duration_s;
    m.mean_skips = mean_of_histogram(m.skip_histogram);
    const Stats s = latency_stats(latencies);
    m.latency_mean_ms = s.mean;
    m.latency_p95_ms = s.p95;
    return m;
}

std::vector<SweepPoint> sweep_processing_time(const SimConfig& base, const std::vector<double>& times_ms) {
    require(!times_ms.empty(), "processing-time sweep needs at least one entry");
    std::vector<SweepPoint> rows;
    rows.reserve(times_ms.size());
    for (double t : times_ms) {
        SimConfig cfg = base;
        cfg.processing_ms = Distribution::fixed(t);
        const SimMetrics m = simulate(cfg);
        rows.push_back({t, m.effective_fps, m.mean_skips});
    }
    return rows;
}

}  // namespace shelfgaze
