#pragma once

#include <array>
#include <span>

namespace shelfgaze {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Six landmarks of one eye, counterclockwise from the outer corner:
/// p1 outer corner, p2/p3 upper lid, p4 inner corner, p5/p6 lower lid.
/// (p2, p6) and (p3, p5) are the vertical pairs.
struct EyeLandmarks {
    std::array<Point2, 6> p;
};

inline constexpr double kDefaultEarThreshold = 0.2;

struct EarReading {
    double value = 0.0;
    bool open = false;
    double threshold = kDefaultEarThreshold;
};

/// (|p2-p6| + |p3-p5|) / (2 |p1-p4|). Throws DegenerateEye when p1 == p4.
double eye_aspect_ratio(const EyeLandmarks& eye);

/// Open iff value is strictly above the threshold.
bool classify_open(double value, double threshold = kDefaultEarThreshold);

EarReading read_eye(const EyeLandmarks& eye, double threshold = kDefaultEarThreshold);

struct EarBatchStats {
    double mean = 0.0;
    double min = 0.0;
    double fraction_open = 0.0;
};

/// Throws EmptyBatch for an empty input.
EarBatchStats batch_stats(std::span<const double> values, double threshold = kDefaultEarThreshold);

}  // namespace shelfgaze
