#include "shelfgaze/placement.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "shelfgaze/rng.hpp"

namespace shelfgaze {

namespace {

constexpr std::uint64_t kStatureStream = 1;
constexpr std::uint64_t kDistanceStream = 2;

bool usable(const ShelfConfig& cfg, const PersonSample& p) {
    return p.distance_cm > 0.0 && p.eye_height_cm > cfg.panel_bottom_height_cm() &&
           p.eye_height_cm < kMaxEyeHeightCm;
}

unsigned resolve_workers(unsigned requested, std::size_t jobs) {
    unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Runs body(i) for i in [0, count) split into contiguous chunks. Each index
// is handled by exactly one worker, so results written per index are
// independent of the worker count.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
    workers = resolve_workers(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

// Per-person terms of the residual: elevation(top) + elevation(bottom) is
// fixed, only the camera ray moves with the drop.
struct ResidualTerm {
    double eye_height_cm;
    double distance_cm;
    double fixed_rad;
};

double mean_squared_imbalance(const ShelfConfig& cfg, const std::vector<ResidualTerm>& terms, double drop_cm) {
    const double camera_height = cfg.shelf_height_cm - drop_cm;
    double sum = 0.0;
    for (const auto& t : terms) {
        const double r = t.fixed_rad - 2.0 * std::atan((camera_height - t.eye_height_cm) / t.distance_cm);
        sum += r * r;
    }
    return sum / static_cast<double>(terms.size());
}

}  // namespace

void PopulationSpec::validate() const {
    require(height_std_cm > 0.0, "height standard deviation must be positive");
    require(distance_min_cm > 0.0, "minimum distance must be positive");
    require(distance_min_cm < distance_max_cm, "distance range must satisfy min < max");
    require(sample_count >= 1, "sample count must be at least 1");
}

PersonSample PopulationSpec::sample(const ShelfConfig& cfg, std::int64_t index) const {
    const auto i = static_cast<std::uint64_t>(index);
    const double stature = CounterRng(seed, kStatureStream).normal(i, height_mean_cm, height_std_cm);
    const double distance = CounterRng(seed, kDistanceStream).uniform(i, distance_min_cm, distance_max_cm);
    return PersonSample::from_stature(cfg, stature, distance);
}

double residual_minimizer(const ShelfConfig& cfg, const std::vector<PersonSample>& people,
                          const OptimizeOptions& options) {
    require(!people.empty(), "residual minimizer needs at least one person");
    require(options.grid_step_cm > 0.0, "grid step must be positive");

    std::vector<ResidualTerm> terms;
    terms.reserve(people.size());
    for (const auto& p : people) {
        const double top = std::atan((cfg.shelf_height_cm - p.eye_height_cm) / p.distance_cm);
        const double bottom = std::atan((cfg.panel_bottom_height_cm() - p.eye_height_cm) / p.distance_cm);
        terms.push_back({p.eye_height_cm, p.distance_cm, top + bottom});
    }

    const auto steps = static_cast<std::size_t>(std::floor(cfg.panel_height_cm / options.grid_step_cm + 1e-9));
    std::vector<double> objective(steps + 1);
    parallel_for(objective.size(), options.workers, [&](std::size_t k) {
        const double drop = std::min(cfg.panel_height_cm, static_cast<double>(k) * options.grid_step_cm);
        objective[k] = mean_squared_imbalance(cfg, terms, drop);
    });
    const auto best = static_cast<std::size_t>(std::min_element(objective.begin(), objective.end()) - objective.begin());

    double lo = std::max(0.0, (static_cast<double>(best) - 1.0) * options.grid_step_cm);
    double hi = std::min(cfg.panel_height_cm, (static_cast<double>(best) + 1.0) * options.grid_step_cm);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = mean_squared_imbalance(cfg, terms, x1);
    double f2 = mean_squared_imbalance(cfg, terms, x2);
    while (hi - lo > options.refine_tolerance_cm) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = mean_squared_imbalance(cfg, terms, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = mean_squared_imbalance(cfg, terms, x2);
        }
    }
    return 0.5 * (lo + hi);
}

PlacementResult optimize_camera_drop(const ShelfConfig& cfg, const PopulationSpec& pop,
                                     const OptimizeOptions& options) {
    cfg.validate();
    pop.validate();

    const auto n = static_cast<std::size_t>(pop.sample_count);
    std::vector<PersonSample> people(n);
    std::vector<double> drop(n, std::nan(""));
    parallel_for(n, options.workers, [&](std::size_t i) {
        people[i] = pop.sample(cfg, static_cast<std::int64_t>(i));
        if (usable(cfg, people[i])) drop[i] = bisector_split(cfg, people[i], options.formula).drop_cm;
    });

    std::vector<PersonSample> accepted;
    std::vector<double> values;
    accepted.reserve(n);
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(drop[i])) continue;
        accepted.push_back(people[i]);
        values.push_back(drop[i]);
    }

    PlacementResult result;
    result.sample_count = pop.sample_count;
    result.rejected_samples = pop.sample_count - static_cast<std::int64_t>(values.size());
    if (values.empty()) {
        fail(ErrorCode::AllSamplesRejected,
             "all " + std::to_string(pop.sample_count) + " samples fall at or below the panel bottom");
    }

    double sum = 0.0;
    for (double v : values) sum += v;
    const double count = static_cast<double>(values.size());
    result.mean_drop_cm = sum / count;
    double sq = 0.0;
    for (double v : values) sq += (v - result.mean_drop_cm) * (v - result.mean_drop_cm);
    result.std_drop_cm = std::sqrt(sq / count);

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    result.median_drop_cm = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);

    result.residual_drop_cm = residual_minimizer(cfg, accepted, options);
    return result;
}

double recommended_distance_for_eye_height(const ShelfConfig& cfg, double eye_height_cm) {
    cfg.validate();
    validate_person(cfg, PersonSample::from_eye_height(cfg, eye_height_cm, 1.0));

    const double above = cfg.shelf_height_cm - eye_height_cm;          // b - h
    const double below = eye_height_cm - cfg.panel_bottom_height_cm();  // h - 43
    const double drop = cfg.camera_drop_cm;
    const double rest = cfg.panel_height_cm - drop;
    if (drop <= 0.0 || rest <= 0.0 || drop == rest) {
        fail(ErrorCode::NoValidDistance, "camera drop " + std::to_string(drop) +
                                             " cm admits no unique bisector distance");
    }

    // top = r * bottom gives d^2 (1 - r^2) = r^2 (h-43)^2 - (b-h)^2.
    // For r > 1 use the reciprocal form bottom = s * top so the ratio stays < 1.
    double d2 = 0.0;
    if (drop < rest) {
        const double r = drop / rest;
        d2 = (r * r * below * below - above * above) / (1.0 - r * r);
    } else {
        const double s = rest / drop;
        d2 = (s * s * above * above - below * below) / (1.0 - s * s);
    }
    // Radicands at rounding level are the d = 0 boundary, not a real distance.
    const double scale = above * above + below * below;
    if (!(d2 > 1e-12 * scale)) {
        fail(ErrorCode::NoValidDistance, "no positive standing distance for eye height " +
                                             std::to_string(eye_height_cm) + " cm");
    }
    return std::sqrt(d2);
}

double recommended_distance(const ShelfConfig& cfg, double stature_cm) {
    return recommended_distance_for_eye_height(cfg, stature_cm - cfg.eye_crown_offset_cm);
}

std::vector<DistanceRow> distance_table(const ShelfConfig& cfg, const std::vector<double>& statures_cm) {
    require(!statures_cm.empty(), "distance table needs at least one stature");
    std::vector<DistanceRow> rows;
    rows.reserve(statures_cm.size());
    for (double s : statures_cm) {
        DistanceRow row{s, std::nullopt, std::nullopt};
        try {
            row.distance_cm = recommended_distance(cfg, s);
        } catch (const Error& e) {
            row.error = e.code();
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<SweepRow> imbalance_sweep(const ShelfConfig& cfg, const PersonSample& p,
                                      const std::vector<double>& drops_cm) {
    std::vector<SweepRow> rows;
    rows.reserve(drops_cm.size());
    for (double drop : drops_cm) rows.push_back({drop, angular_imbalance(cfg, p, drop)});
    return rows;
}

std::vector<double> drop_range(double from_cm, double to_cm, double step_cm) {
    require(step_cm > 0.0, "step must be positive");
    std::vector<double> out;
    if (from_cm > to_cm) return out;
    const auto n = static_cast<std::size_t>(std::floor((to_cm - from_cm) / step_cm + 1e-9));
    out.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out.push_back(std::min(to_cm, from_cm + static_cast<double>(k) * step_cm));
    return out;
}

}  // namespace shelfgaze
