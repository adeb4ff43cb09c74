#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "heavyspike/colorcode_matrix.hpp"
#include "heavyspike/common.hpp"
#include "heavyspike/rng.hpp"
#include "heavyspike/spectral.hpp"

namespace heavyspike::tensor {

struct TensorEstimatorConfig {
    int ell = 2;
    int num_colorings = 256;
    uint64_t seed = 0;
    bool amplify = true;
    size_t memory_budget = size_t{1} << 28;  // bytes for DP state

    int palette() const { return 3 * ell - 1; }

    void validate(int n) const {
        if (ell < 1) throw InvalidParameter("tensor estimator: ell must be >= 1");
        if (num_colorings < 1) throw InvalidParameter("tensor estimator: need >= 1 coloring");
        if (3 * ell - 1 > n)
            throw InvalidParameter("tensor estimator: hyperpath needs 3*ell-1 <= n");
        size_t q = static_cast<size_t>(palette());
        if (q > 20) throw InvalidParameter("tensor estimator: palette too large");
        size_t bytes = (size_t{1} << q) * (static_cast<size_t>(n) * n + n) * sizeof(double) * 2;
        if (bytes > memory_budget)
            throw InvalidParameter("tensor estimator: DP state (" + std::to_string(bytes) +
                                   " bytes) exceeds memory budget; reduce ell");
    }
};

namespace detail {

// Per-coloring hyperpath sum for every root simultaneously. The chain is
// traversed backward from the terminal vertex: the closing edge (v,w,w)
// first, then ell-1 rounds of pair assembly (a,b,c) followed by single
// assembly (v,a,b). States carry the set of colors used so far; each level
// adds fresh colors only, so with palette q = 3*ell-1 a full set certifies
// 3*ell-1 distinct vertices.
inline Vec hyperpath_per_coloring(const Tensor3& Y, const colorcode::Coloring& coloring,
                                  int ell) {
    const int n = Y.n;
    const int q = 3 * ell - 1;
    if (coloring.q != q)
        throw InvalidParameter("tensor coloring palette must be 3*ell-1");
    const auto& col = coloring.assignment;
    auto cls = colorcode::ColorClasses::build(coloring);

    const size_t nsets = size_t{1} << q;
    const size_t n2 = static_cast<size_t>(n) * n;

    // D[v][w] = Y(v,w,w): the closing-edge slice.
    Vec D(n2);
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w) D[static_cast<size_t>(v) * n + w] = Y.at(v, w, w);

    std::vector<Vec> singles(nsets), pairs(nsets);
    Vec msum(n2);

    auto sets_of_popcount = [&](int pc) {
        std::vector<uint32_t> v;
        for (uint32_t s = 0; s < nsets; ++s)
            if (__builtin_popcount(s) == pc) v.push_back(s);
        return v;
    };

    // Terminal level: one unit per vertex w under its own color.
    for (int w = 0; w < n; ++w) {
        uint32_t s = 1u << col[w];
        if (singles[s].empty()) singles[s].assign(n, 0.0);
        singles[s][w] = 1.0;
    }

    // Closing edge (v, w, w).
    {
        std::vector<Vec> nxt(nsets);
        for (uint32_t S : sets_of_popcount(1)) {
            if (singles[S].empty()) continue;
            const Vec& g = singles[S];
            for (int v = 0; v < n; ++v) {
                if (S & (1u << col[v])) continue;
                double acc = 0.0;
                const double* dv = D.data() + static_cast<size_t>(v) * n;
                for (int w = 0; w < n; ++w) acc += dv[w] * g[w];
                if (acc == 0.0) continue;
                uint32_t T = S | (1u << col[v]);
                if (nxt[T].empty()) nxt[T].assign(n, 0.0);
                nxt[T][v] += acc;
            }
        }
        singles.swap(nxt);
    }

    int pc = 2;
    for (int round = 0; round < ell - 1; ++round) {
        // Pair assembly (a, b, c): singles at popcount pc -> pairs at pc+2.
        for (auto& p : pairs) p.clear();
        for (uint32_t S : sets_of_popcount(pc)) {
            if (singles[S].empty()) continue;
            const Vec& g = singles[S];
            for (size_t ab = 0; ab < n2; ++ab) {
                const double* yrow = Y.a.data() + ab * n;
                double acc = 0.0;
                for (int c = 0; c < n; ++c) acc += yrow[c] * g[c];
                msum[ab] = acc;
            }
            for (int ca = 0; ca < q; ++ca) {
                if (S & (1u << ca)) continue;
                for (int cb = 0; cb < q; ++cb) {
                    if (cb == ca || (S & (1u << cb))) continue;
                    uint32_t T = S | (1u << ca) | (1u << cb);
                    if (pairs[T].empty()) pairs[T].assign(n2, 0.0);
                    Vec& h = pairs[T];
                    for (int a : cls.verts[ca])
                        for (int b : cls.verts[cb]) {
                            size_t ab = static_cast<size_t>(a) * n + b;
                            h[ab] += msum[ab];
                        }
                }
            }
        }
        pc += 2;
        // Single assembly (v, a, b): pairs at pc -> singles at pc+1.
        for (auto& s : singles) s.clear();
        for (uint32_t S : sets_of_popcount(pc)) {
            if (pairs[S].empty()) continue;
            const Vec& h = pairs[S];
            for (int v = 0; v < n; ++v) {
                if (S & (1u << col[v])) continue;
                const double* yv = Y.a.data() + static_cast<size_t>(v) * n2;
                double acc = 0.0;
                for (size_t ab = 0; ab < n2; ++ab) acc += yv[ab] * h[ab];
                if (acc == 0.0) continue;
                uint32_t T = S | (1u << col[v]);
                if (singles[T].empty()) singles[T].assign(n, 0.0);
                singles[T][v] += acc;
            }
        }
        pc += 1;
    }

    uint32_t full = static_cast<uint32_t>(nsets - 1);
    Vec out(n, 0.0);
    if (!singles[full].empty()) out = singles[full];
    return out;
}

}  // namespace detail

inline Vec tensor_estimate_per_coloring(const Tensor3& Y, const colorcode::Coloring& coloring,
                                        int ell) {
    return detail::hyperpath_per_coloring(Y, coloring, ell);
}

// Unbiased color-coded hyperpath estimate: average of per-coloring sums over
// num_colorings palettes, rescaled by the exact rainbow probability q!/q^q.
inline Vec tensor_colorcoded_estimate(const Tensor3& Y, const TensorEstimatorConfig& cfg) {
    cfg.validate(Y.n);
    const int q = cfg.palette();
    auto colorings = colorcode::sample_colorings(Y.n, q, cfg.num_colorings, cfg.seed);
    std::vector<Vec> slots(colorings.size());
    parallel_for(colorings.size(), [&](size_t t) {
        slots[t] = detail::hyperpath_per_coloring(Y, colorings[t], cfg.ell);
    });
    Vec out(Y.n, 0.0);
    for (size_t t = 0; t < slots.size(); ++t)
        for (int i = 0; i < Y.n; ++i) out[i] += slots[t][i];
    double scale = 1.0 / (cfg.num_colorings * colorcode::rainbow_probability(q));
    for (double& v : out) v *= scale;
    return out;
}

// Exhaustive-coloring form used by the oracle suites.
inline Vec tensor_exhaustive_coloring_estimate(const Tensor3& Y, int ell) {
    const int q = 3 * ell - 1;
    auto colorings = colorcode::enumerate_all_colorings(Y.n, q);
    Vec out(Y.n, 0.0);
    for (const auto& c : colorings) {
        Vec p = detail::hyperpath_per_coloring(Y, c, ell);
        for (int i = 0; i < Y.n; ++i) out[i] += p[i];
    }
    double scale = 1.0 / (static_cast<double>(colorings.size()) * colorcode::rainbow_probability(q));
    for (double& v : out) v *= scale;
    return out;
}

struct UnfoldResult {
    Vec estimate;
    bool degenerate = false;
};

// Top right-singular vector of the n^2 x n unfolding U_{(i,j),k} = Y_{ijk},
// computed as the top eigenvector of the Gram matrix U^T U.
inline UnfoldResult tensor_unfold_estimate(const Tensor3& Y, uint64_t seed = 0,
                                           int iters = 300, double tol = 1e-8) {
    const int n = Y.n;
    Matrix G(n);
    const size_t n2 = static_cast<size_t>(n) * n;
    for (size_t ij = 0; ij < n2; ++ij) {
        const double* row = Y.a.data() + ij * n;
        for (int k = 0; k < n; ++k) {
            double rk = row[k];
            if (rk == 0.0) continue;
            double* grow = G.row(k);
            for (int k2 = 0; k2 < n; ++k2) grow[k2] += rk * row[k2];
        }
    }
    double fro = 0.0;
    for (double v : G.a) fro += v * v;
    UnfoldResult res;
    if (fro <= 0.0) {
        res.degenerate = true;
        res.estimate.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
        return res;
    }
    res.estimate = spectral::pca_estimate(G, seed, iters, tol);
    return res;
}

// One amplification step: xhat_i = sum_{j1,j2} Y_{i,j1,j2} y_{j1} y_{j2}.
// Output is deliberately unnormalized.
inline Vec tensor_amplify(const Tensor3& Y, const Vec& y) {
    const int n = Y.n;
    if (static_cast<int>(y.size()) != n) throw InvalidParameter("tensor_amplify: size mismatch");
    if (norm2(y) <= 0.0) throw InvalidParameter("tensor_amplify: y must be nonzero");
    const size_t n2 = static_cast<size_t>(n) * n;
    Vec outer(n2);
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2) outer[static_cast<size_t>(j1) * n + j2] = y[j1] * y[j2];
    Vec out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* slice = Y.a.data() + static_cast<size_t>(i) * n2;
        double acc = 0.0;
        for (size_t ab = 0; ab < n2; ++ab) acc += slice[ab] * outer[ab];
        out[i] = acc;
    }
    return out;
}

// Degree-2 detection statistic: sum_{i<j<k} Y_{ijk} * Y_{kji}.
inline double tensor_detect_degree2(const Tensor3& Y) {
    const int n = Y.n;
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) s += Y.at(i, j, k) * Y.at(k, j, i);
    return s;
}

}  // namespace heavyspike::tensor
