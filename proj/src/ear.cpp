#include "shelfgaze/ear.hpp"

#include <algorithm>
#include <cmath>

#include "shelfgaze/error.hpp"

namespace shelfgaze {

namespace {

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

double eye_aspect_ratio(const EyeLandmarks& eye) {
    const auto& p = eye.p;
    const double width = distance(p[0], p[3]);
    if (!(width > 0.0)) fail(ErrorCode::DegenerateEye, "eye corners coincide; aspect ratio undefined");
    return (distance(p[1], p[5]) + distance(p[2], p[4])) / (2.0 * width);
}

bool classify_open(double value, double threshold) {
    require(threshold > 0.0, "EAR threshold must be positive");
    return value > threshold;
}

EarReading read_eye(const EyeLandmarks& eye, double threshold) {
    const double value = eye_aspect_ratio(eye);
    return {value, classify_open(value, threshold), threshold};
}

EarBatchStats batch_stats(std::span<const double> values, double threshold) {
    if (values.empty()) fail(ErrorCode::EmptyBatch, "EAR batch is empty");
    EarBatchStats s;
    double sum = 0.0;
    std::size_t open = 0;
    s.min = values.front();
    for (double v : values) {
        sum += v;
        s.min = std::min(s.min, v);
        if (classify_open(v, threshold)) ++open;
    }
    const auto n = static_cast<double>(values.size());
    s.mean = sum / n;
    s.fraction_open = static_cast<double>(open) / n;
    return s;
}

}  // namespace shelfgaze
