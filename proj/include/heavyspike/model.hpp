#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "heavyspike/common.hpp"
#include "heavyspike/rng.hpp"

namespace heavyspike {

// ---------------------------------------------------------------------------
// Planted vectors
// ---------------------------------------------------------------------------

enum class SpikeKind { kRademacher, kGaussianNormalized, kFixedUser };

inline std::string to_string(SpikeKind k) {
    switch (k) {
        case SpikeKind::kRademacher: return "rademacher";
        case SpikeKind::kGaussianNormalized: return "gaussian-normalized";
        case SpikeKind::kFixedUser: return "fixed-user";
    }
    return "?";
}

inline SpikeKind spike_kind_from_string(const std::string& s) {
    if (s == "rademacher") return SpikeKind::kRademacher;
    if (s == "gaussian-normalized" || s == "gaussian") return SpikeKind::kGaussianNormalized;
    if (s == "fixed-user") return SpikeKind::kFixedUser;
    throw InvalidParameter("unknown spike kind: " + s);
}

// Hidden direction x with ||x||^2 = n. inf_norm and fourth_moment (the
// empirical mean of x_i^4) are cached diagnostics.
struct PlantedVector {
    Vec values;
    SpikeKind kind = SpikeKind::kFixedUser;
    double inf_norm = 0.0;
    double fourth_moment = 0.0;

    int n() const { return static_cast<int>(values.size()); }

    static PlantedVector from_values(Vec v, SpikeKind kind) {
        if (v.size() < 2) throw InvalidParameter("planted vector needs n >= 2");
        double s = norm2(v);
        if (s <= 0.0) throw DegenerateInput("planted vector is zero");
        double scale = std::sqrt(static_cast<double>(v.size()) / s);
        for (double& x : v) x *= scale;
        PlantedVector p;
        p.values = std::move(v);
        p.kind = kind;
        double m4 = 0.0, mx = 0.0;
        for (double x : p.values) {
            m4 += x * x * x * x;
            mx = std::max(mx, std::abs(x));
        }
        p.inf_norm = mx;
        p.fourth_moment = m4 / static_cast<double>(p.values.size());
        return p;
    }
};

inline PlantedVector generate_planted(int n, SpikeKind kind, uint64_t seed) {
    if (n < 2) throw InvalidParameter("generate_planted: n must be >= 2");
    SplitMix64 eng(mix64(seed, streams::kSpike));
    Vec v(n);
    if (kind == SpikeKind::kRademacher) {
        for (int i = 0; i < n; ++i) v[i] = (eng() >> 63) ? 1.0 : -1.0;
    } else if (kind == SpikeKind::kGaussianNormalized) {
        std::normal_distribution<double> g(0.0, 1.0);
        for (int i = 0; i < n; ++i) v[i] = g(eng);
    } else {
        throw InvalidParameter("generate_planted: fixed-user vectors are constructed from values");
    }
    return PlantedVector::from_values(std::move(v), kind);
}

// ---------------------------------------------------------------------------
// Noise models
// ---------------------------------------------------------------------------

// Unit-variance zero-mean entry distributions. The sparse two-point family
// takes value -sqrt((n-d)/d) with probability d/n and sqrt(d/(n-d)) otherwise;
// the alternating variant flips its sign on odd i+j and the hybrid swaps in a
// standard normal on even i+j. kZeroTestHook returns 0 and exists only for
// deterministic unit tests; the CLI never exposes it.
struct NoiseModel {
    enum class Tag {
        kGaussian,
        kRademacher,
        kSparseTwoPoint,
        kAlternatingSparse,
        kHybridGaussianSparse,
        kZeroTestHook,
    };

    Tag tag = Tag::kGaussian;
    double d = 0.0;

    static NoiseModel gaussian() { return {Tag::kGaussian, 0.0}; }
    static NoiseModel rademacher() { return {Tag::kRademacher, 0.0}; }
    static NoiseModel sparse_two_point(double d) { return {Tag::kSparseTwoPoint, d}; }
    static NoiseModel alternating_sparse(double d) { return {Tag::kAlternatingSparse, d}; }
    static NoiseModel hybrid_gaussian_sparse(double d) { return {Tag::kHybridGaussianSparse, d}; }
    static NoiseModel zero_test_hook() { return {Tag::kZeroTestHook, 0.0}; }

    bool has_d() const {
        return tag == Tag::kSparseTwoPoint || tag == Tag::kAlternatingSparse ||
               tag == Tag::kHybridGaussianSparse;
    }

    void validate(int n) const {
        if (has_d() && !(d > 0.0 && d < static_cast<double>(n)))
            throw InvalidParameter("noise parameter d must satisfy 0 < d < n (d=" +
                                   std::to_string(d) + ", n=" + std::to_string(n) + ")");
    }

    std::string name() const {
        switch (tag) {
            case Tag::kGaussian: return "gaussian";
            case Tag::kRademacher: return "rademacher";
            case Tag::kSparseTwoPoint: return "sparse-two-point";
            case Tag::kAlternatingSparse: return "alternating-sparse";
            case Tag::kHybridGaussianSparse: return "hybrid-gaussian-sparse";
            case Tag::kZeroTestHook: return "zero-test-hook";
        }
        return "?";
    }

    static NoiseModel from_name(const std::string& s, double d) {
        if (s == "gaussian") return gaussian();
        if (s == "rademacher") return rademacher();
        if (s == "sparse-two-point") return sparse_two_point(d);
        if (s == "alternating-sparse") return alternating_sparse(d);
        if (s == "hybrid-gaussian-sparse") return hybrid_gaussian_sparse(d);
        if (s == "zero-test-hook") return zero_test_hook();
        throw InvalidParameter("unknown noise model: " + s);
    }
};

// One draw of the entry distribution at position (i,j), 0-based. Only the
// parity of i+j matters for the position-dependent variants, so 0- vs
// 1-based indexing agree.
inline double sample_noise_entry(const NoiseModel& noise, int n, int i, int j,
                                 SplitMix64& eng) {
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw InvalidParameter("sample_noise_entry: index out of range");
    noise.validate(n);
    auto two_point = [&](SplitMix64& e) {
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(e);
        double nn = static_cast<double>(n);
        return u < noise.d / nn ? -std::sqrt((nn - noise.d) / noise.d)
                                : std::sqrt(noise.d / (nn - noise.d));
    };
    switch (noise.tag) {
        case NoiseModel::Tag::kGaussian:
            return std::normal_distribution<double>(0.0, 1.0)(eng);
        case NoiseModel::Tag::kRademacher:
            return (eng() >> 63) ? 1.0 : -1.0;
        case NoiseModel::Tag::kSparseTwoPoint:
            return two_point(eng);
        case NoiseModel::Tag::kAlternatingSparse: {
            double w = two_point(eng);
            return ((i + j) & 1) ? -w : w;
        }
        case NoiseModel::Tag::kHybridGaussianSparse:
            // Standard normal on even i+j, two-point on odd; both branches
            // consume one draw so the stream stays aligned either way.
            if (((i + j) & 1) == 0)
                return std::normal_distribution<double>(0.0, 1.0)(eng);
            return two_point(eng);
        case NoiseModel::Tag::kZeroTestHook:
            return 0.0;
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

// Y = (snr_prime/sqrt(n)) x x^T + W off the diagonal; diagonal pinned to 0
// and Y exactly symmetric (upper triangle sampled once, mirrored).
struct SpikedMatrixInstance {
    int n = 0;
    double snr_prime = 0.0;
    PlantedVector spike;
    Matrix Y;
    uint64_t seed = 0;
    NoiseModel noise;

    double lambda() const { return snr_prime / std::sqrt(static_cast<double>(n)); }
};

// Y = (snr_scaled * n^{-3/4}) x⊗x⊗x + W with all n^3 noise entries
// independent (no symmetrization).
struct SpikedTensorInstance {
    int n = 0;
    double snr_scaled = 0.0;
    PlantedVector spike;
    Tensor3 Y;
    uint64_t seed = 0;
    NoiseModel noise;

    double lambda() const {
        return snr_scaled * std::pow(static_cast<double>(n), -0.75);
    }
};

inline SpikedMatrixInstance generate_spiked_matrix(int n, double snr_prime,
                                                   SpikeKind spike_kind,
                                                   const NoiseModel& noise,
                                                   uint64_t seed) {
    if (n < 3) throw InvalidParameter("generate_spiked_matrix: n must be >= 3");
    if (snr_prime < 0.0) throw InvalidParameter("generate_spiked_matrix: snr_prime must be >= 0");
    noise.validate(n);

    SpikedMatrixInstance inst;
    inst.n = n;
    inst.snr_prime = snr_prime;
    inst.seed = seed;
    inst.noise = noise;
    inst.spike = generate_planted(n, spike_kind, seed);
    inst.Y = Matrix(n);

    const double lambda = inst.lambda();
    const Vec& x = inst.spike.values;
    SplitMix64 eng(mix64(seed, streams::kMatrixNoise));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double w = sample_noise_entry(noise, n, i, j, eng);
            double y = lambda * x[i] * x[j] + w;
            inst.Y.at(i, j) = y;
            inst.Y.at(j, i) = y;
        }
    }
    return inst;
}

constexpr int kDefaultTensorCap = 256;

inline SpikedTensorInstance generate_spiked_tensor(int n, double snr_scaled,
                                                   SpikeKind spike_kind,
                                                   const NoiseModel& noise,
                                                   uint64_t seed,
                                                   int n_cap = kDefaultTensorCap) {
    if (n < 3) throw InvalidParameter("generate_spiked_tensor: n must be >= 3");
    if (n > n_cap)
        throw CapExceeded("generate_spiked_tensor: n=" + std::to_string(n) +
                          " exceeds memory cap " + std::to_string(n_cap));
    noise.validate(n);

    SpikedTensorInstance inst;
    inst.n = n;
    inst.snr_scaled = snr_scaled;
    inst.seed = seed;
    inst.noise = noise;
    inst.spike = generate_planted(n, spike_kind, seed);
    inst.Y = Tensor3(n);

    const double lambda = inst.lambda();
    const Vec& x = inst.spike.values;
    SplitMix64 eng(mix64(seed, streams::kTensorNoise));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double w = sample_noise_entry(noise, n, i, j, eng);
                inst.Y.at(i, j, k) = lambda * x[i] * x[j] * x[k] + w;
            }
    return inst;
}

}  // namespace heavyspike
