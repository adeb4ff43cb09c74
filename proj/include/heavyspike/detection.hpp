#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "heavyspike/colorcode_matrix.hpp"
#include "heavyspike/common.hpp"
#include "heavyspike/model.hpp"
#include "heavyspike/rng.hpp"

namespace heavyspike::detect {

struct DetectionConfig {
    int ell = 7;
    int num_colorings = 64;
    uint64_t seed = 0;

    enum class ThresholdMode { kCalibrated, kFixed };
    ThresholdMode mode = ThresholdMode::kCalibrated;
    int null_trials = 20;    // calibrated mode
    double fixed_value = 0;  // fixed mode

    void validate() const {
        if (ell < 3) throw InvalidParameter("detection: cycle length must be >= 3");
        if (num_colorings < 1) throw InvalidParameter("detection: need >= 1 coloring");
        if (mode == ThresholdMode::kCalibrated && null_trials < 10)
            throw InvalidParameter("detection: calibrated mode needs >= 10 null trials");
    }
};

namespace detail {

constexpr int kStartBlock = 8;

// Per-coloring rainbow cycle sum with palette q = ell. A rainbow ell-cycle
// uses each color exactly once, so it is anchored at its unique color-0
// vertex: running the DP only from color-0 starts counts every rainbow cycle
// twice (once per direction).
inline double cycle_sum_per_coloring(const Matrix& Y, const colorcode::Coloring& coloring,
                                     const colorcode::ColorClasses& cls,
                                     const colorcode::SetTables& tables, int ell) {
    const int n = Y.n;
    const auto& starts = cls.verts[0];
    double total = 0.0;
    for (size_t base = 0; base < starts.size(); base += kStartBlock) {
        int B = static_cast<int>(std::min<size_t>(kStartBlock, starts.size() - base));
        std::vector<int> chunk(starts.begin() + base, starts.begin() + base + B);
        colorcode::SawDp dp(Y, coloring, cls, tables, B);
        dp.init_at_vertices(chunk);
        dp.run(ell - 1);
        uint32_t full = (1u << coloring.q) - 1;
        const double* fin = dp.level_block(full);
        for (int b = 0; b < B; ++b) {
            const double* fb = fin + static_cast<size_t>(b) * n;
            const double* yrow = Y.row(chunk[b]);
            double acc = 0.0;
            for (int v = 0; v < n; ++v) acc += fb[v] * yrow[v];
            total += acc;
        }
    }
    return total / 2.0;
}

}  // namespace detail

// Unbiased color-coded estimate of the simple-cycle statistic: per-coloring
// rainbow cycle sums rescaled by the rainbow probability ell!/ell^ell and
// averaged over num_colorings colorings (index-ordered reduction).
inline double cycle_statistic_colorcoded(const Matrix& Y, int ell, int num_colorings,
                                         uint64_t seed) {
    if (ell < 3 || ell > Y.n) throw InvalidParameter("cycle statistic: need 3 <= ell <= n");
    if (num_colorings < 1) throw InvalidParameter("cycle statistic: need >= 1 coloring");
    auto tables = colorcode::SetTables::build(ell);
    auto colorings = colorcode::sample_colorings(Y.n, ell, num_colorings, seed);
    std::vector<double> slots(colorings.size(), 0.0);
    parallel_for(colorings.size(), [&](size_t t) {
        auto cls = colorcode::ColorClasses::build(colorings[t]);
        slots[t] = detail::cycle_sum_per_coloring(Y, colorings[t], cls, tables, ell);
    });
    double sum = 0.0;
    for (double v : slots) sum += v;
    double r = colorcode::rainbow_probability(ell);
    return sum / (static_cast<double>(num_colorings) * r);
}

// Exhaustive-coloring form for the tiny oracle checks.
inline double cycle_statistic_exhaustive_coloring(const Matrix& Y, int ell) {
    auto tables = colorcode::SetTables::build(ell);
    auto colorings = colorcode::enumerate_all_colorings(Y.n, ell);
    double sum = 0.0;
    for (const auto& c : colorings) {
        auto cls = colorcode::ColorClasses::build(c);
        sum += detail::cycle_sum_per_coloring(Y, c, cls, tables, ell);
    }
    double r = colorcode::rainbow_probability(ell);
    return sum / (static_cast<double>(colorings.size()) * r);
}

struct Calibration {
    double threshold = 0.0;
    double null_mean = 0.0;
    double null_std = 0.0;
    int trials = 0;
};

// Monte Carlo threshold: sample pure-noise instances with the same (n, noise
// model), set threshold = null mean + 3 * sample standard deviation.
// Deterministic given the config seed.
inline Calibration calibrate_threshold(int n, const NoiseModel& noise,
                                       const DetectionConfig& cfg) {
    cfg.validate();
    std::vector<double> stats(cfg.null_trials, 0.0);
    parallel_for(static_cast<size_t>(cfg.null_trials), [&](size_t t) {
        uint64_t inst_seed = mix64(cfg.seed, streams::kCalibration, t);
        auto inst = generate_spiked_matrix(n, 0.0, SpikeKind::kRademacher, noise, inst_seed);
        stats[t] = cycle_statistic_colorcoded(inst.Y, cfg.ell, cfg.num_colorings,
                                              mix64(inst_seed, streams::kStatistic));
    });
    Calibration cal;
    cal.trials = cfg.null_trials;
    for (double s : stats) cal.null_mean += s;
    cal.null_mean /= cfg.null_trials;
    double var = 0.0;
    for (double s : stats) var += (s - cal.null_mean) * (s - cal.null_mean);
    cal.null_std = std::sqrt(var / (cfg.null_trials - 1));
    cal.threshold = cal.null_mean + 3.0 * cal.null_std;
    return cal;
}

struct DetectionResult {
    bool planted = false;
    double statistic = 0.0;
    double threshold = 0.0;
};

inline DetectionResult detect_with_threshold(const Matrix& Y, double threshold,
                                             const DetectionConfig& cfg) {
    DetectionResult res;
    res.threshold = threshold;
    res.statistic = cycle_statistic_colorcoded(Y, cfg.ell, cfg.num_colorings,
                                               mix64(cfg.seed, streams::kStatistic));
    res.planted = res.statistic > threshold;
    return res;
}

inline DetectionResult detect(const Matrix& Y, const NoiseModel& noise,
                              const DetectionConfig& cfg) {
    cfg.validate();
    double thr = cfg.mode == DetectionConfig::ThresholdMode::kFixed
                     ? cfg.fixed_value
                     : calibrate_threshold(Y.n, noise, cfg).threshold;
    return detect_with_threshold(Y, thr, cfg);
}

}  // namespace heavyspike::detect
