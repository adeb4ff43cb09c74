#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "heavyspike/common.hpp"
#include "heavyspike/rng.hpp"

namespace heavyspike::spectral {

// Symmetric linear operator given only by its action on a block of vectors.
// apply(Z, out, B) must compute out = A * Z for B plane-major vectors.
struct BlockOperator {
    int n = 0;
    std::function<void(const double*, double*, int)> apply;
};

inline BlockOperator dense_operator(const Matrix& Y) {
    BlockOperator op;
    op.n = Y.n;
    op.apply = [&Y](const double* Z, double* out, int B) {
        const int n = Y.n;
        std::fill(out, out + static_cast<size_t>(B) * n, 0.0);
        for (int v = 0; v < n; ++v) {
            const double* yrow = Y.row(v);
            for (int b = 0; b < B; ++b) {
                double zv = Z[static_cast<size_t>(b) * n + v];
                if (zv == 0.0) continue;
                double* ob = out + static_cast<size_t>(b) * n;
                for (int u = 0; u < n; ++u) ob[u] += yrow[u] * zv;
            }
        }
    };
    return op;
}

struct EigenResult {
    std::vector<double> eigenvalues;  // by descending |value|
    std::vector<Vec> eigenvectors;    // orthonormal, matching order
    int iterations = 0;
    std::vector<double> residuals;    // ||A v - lambda v|| per pair
    bool converged = false;
};

// One estimator run: method id, parameter record, unit-norm estimate and its
// squared correlation with the hidden spike.
struct EstimateReport {
    std::string method;
    std::string params;
    Vec estimate;
    double sq_corr = 0.0;
    double runtime_ms = 0.0;
    uint64_t seed = 0;
    double statistic = 0.0;
    std::string status = "ok";
};

inline double squared_correlation(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InvalidParameter("squared_correlation: size mismatch");
    double na = norm2(a), nb = norm2(b);
    if (na <= 0.0 || nb <= 0.0) throw DegenerateInput("squared_correlation: zero vector");
    double d = dot(a, b);
    return (d * d) / (na * nb);
}

namespace detail {

// Cyclic Jacobi for a small dense symmetric matrix; A is destroyed, V gets
// the eigenvectors in columns (V[i*m+j] = component i of eigenvector j).
inline void jacobi_eig_small(int m, std::vector<double>& A, std::vector<double>& V,
                             std::vector<double>& w) {
    V.assign(static_cast<size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) V[static_cast<size_t>(i) * m + i] = 1.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) off += A[static_cast<size_t>(p) * m + q] * A[static_cast<size_t>(p) * m + q];
        if (off < 1e-26 * (1.0 + std::abs(A[0]))) break;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) {
                double apq = A[static_cast<size_t>(p) * m + q];
                if (std::abs(apq) < 1e-300) continue;
                double app = A[static_cast<size_t>(p) * m + p];
                double aqq = A[static_cast<size_t>(q) * m + q];
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int i = 0; i < m; ++i) {
                    double aip = A[static_cast<size_t>(i) * m + p];
                    double aiq = A[static_cast<size_t>(i) * m + q];
                    A[static_cast<size_t>(i) * m + p] = c * aip - s * aiq;
                    A[static_cast<size_t>(i) * m + q] = s * aip + c * aiq;
                }
                for (int j = 0; j < m; ++j) {
                    double apj = A[static_cast<size_t>(p) * m + j];
                    double aqj = A[static_cast<size_t>(q) * m + j];
                    A[static_cast<size_t>(p) * m + j] = c * apj - s * aqj;
                    A[static_cast<size_t>(q) * m + j] = s * apj + c * aqj;
                }
                for (int i = 0; i < m; ++i) {
                    double vip = V[static_cast<size_t>(i) * m + p];
                    double viq = V[static_cast<size_t>(i) * m + q];
                    V[static_cast<size_t>(i) * m + p] = c * vip - s * viq;
                    V[static_cast<size_t>(i) * m + q] = s * vip + c * viq;
                }
            }
    }
    w.assign(m, 0.0);
    for (int i = 0; i < m; ++i) w[i] = A[static_cast<size_t>(i) * m + i];
}

// Modified Gram-Schmidt over the columns stored in `cols`; rank-deficient
// columns are replaced by fresh seeded random directions so the block always
// stays full rank (needed when the operator itself is low rank).
inline void orthonormalize(std::vector<Vec>& cols, SplitMix64& repair_eng) {
    const int n = static_cast<int>(cols[0].size());
    std::normal_distribution<double> g(0.0, 1.0);
    for (size_t j = 0; j < cols.size(); ++j) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            for (size_t i = 0; i < j; ++i) {
                double d = dot(cols[i], cols[j]);
                for (int v = 0; v < n; ++v) cols[j][v] -= d * cols[i][v];
            }
            double nv = std::sqrt(norm2(cols[j]));
            if (nv > 1e-10) {
                for (int v = 0; v < n; ++v) cols[j][v] /= nv;
                break;
            }
            for (int v = 0; v < n; ++v) cols[j][v] = g(repair_eng);
        }
    }
}

inline void fix_sign(Vec& v) {
    int arg = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    if (v[arg] < 0.0)
        for (double& x : v) x = -x;
}

}  // namespace detail

// Leading t eigenpairs by |eigenvalue| via block subspace iteration with
// Rayleigh-Ritz extraction. The block carries `guard` extra vectors beyond t,
// which is what buys convergence when the t-th gap is small. Deterministic
// given the seed.
inline EigenResult power_top_t(const BlockOperator& op, int t, int iters = 300,
                               double tol = 1e-8, uint64_t seed = 0, int guard = 5) {
    const int n = op.n;
    if (t < 1 || t > n) throw InvalidParameter("power_top_t: need 1 <= t <= n");
    const int b = std::min(n, t + guard);

    SplitMix64 eng(mix64(seed, streams::kPowerStart));
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Vec> Q(b, Vec(n));
    for (auto& col : Q)
        for (double& x : col) x = g(eng);
    detail::orthonormalize(Q, eng);

    Vec Zbuf(static_cast<size_t>(b) * n), Xbuf(static_cast<size_t>(b) * n);
    std::vector<double> small(static_cast<size_t>(b) * b), V, w;
    std::vector<int> order(b);
    std::vector<Vec> X(b, Vec(n)), AX(b, Vec(n));
    EigenResult res;

    for (int iter = 1; iter <= iters; ++iter) {
        for (int j = 0; j < b; ++j)
            std::copy(Q[j].begin(), Q[j].end(), Zbuf.begin() + static_cast<size_t>(j) * n);
        op.apply(Zbuf.data(), Xbuf.data(), b);
        for (size_t i = 0; i < Xbuf.size(); ++i)
            if (!std::isfinite(Xbuf[i]))
                throw NumericFailure("power_top_t: non-finite value", iter);

        // Rayleigh-Ritz on the current block.
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j)
                small[static_cast<size_t>(i) * b + j] =
                    dot(Q[i].data(), Xbuf.data() + static_cast<size_t>(j) * n, n);
        for (int i = 0; i < b; ++i)
            for (int j = i + 1; j < b; ++j) {
                double m = 0.5 * (small[static_cast<size_t>(i) * b + j] + small[static_cast<size_t>(j) * b + i]);
                small[static_cast<size_t>(i) * b + j] = m;
                small[static_cast<size_t>(j) * b + i] = m;
            }
        detail::jacobi_eig_small(b, small, V, w);
        for (int i = 0; i < b; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int x, int y) { return std::abs(w[x]) > std::abs(w[y]); });

        // Ritz vectors X = Q * W and images A X = (A Q) * W.
        for (int j = 0; j < b; ++j) {
            std::fill(X[j].begin(), X[j].end(), 0.0);
            std::fill(AX[j].begin(), AX[j].end(), 0.0);
            int col = order[j];
            for (int i = 0; i < b; ++i) {
                double wij = V[static_cast<size_t>(i) * b + col];
                if (wij == 0.0) continue;
                const double* zi = Xbuf.data() + static_cast<size_t>(i) * n;
                for (int v = 0; v < n; ++v) {
                    X[j][v] += wij * Q[i][v];
                    AX[j][v] += wij * zi[v];
                }
            }
        }

        res.eigenvalues.assign(t, 0.0);
        res.residuals.assign(t, 0.0);
        double scale = std::max(std::abs(w[order[0]]), 1e-300);
        double worst = 0.0;
        for (int j = 0; j < t; ++j) {
            double lam = w[order[j]];
            res.eigenvalues[j] = lam;
            double r2 = 0.0;
            for (int v = 0; v < n; ++v) {
                double d = AX[j][v] - lam * X[j][v];
                r2 += d * d;
            }
            res.residuals[j] = std::sqrt(r2);
            worst = std::max(worst, res.residuals[j]);
        }
        res.iterations = iter;
        if (worst <= tol * scale) {
            res.converged = true;
            break;
        }
        if (iter == iters) break;

        // Next subspace basis: orthonormalized images, Ritz-ordered.
        for (int j = 0; j < b; ++j) Q[j] = AX[j];
        detail::orthonormalize(Q, eng);
    }

    res.eigenvectors.assign(t, Vec());
    for (int j = 0; j < t; ++j) {
        res.eigenvectors[j] = X[j];
        double nv = std::sqrt(norm2(res.eigenvectors[j]));
        if (nv > 0)
            for (double& x : res.eigenvectors[j]) x /= nv;
        detail::fix_sign(res.eigenvectors[j]);
    }
    return res;
}

// Random unit vector in the span of the computed top-t eigenbasis:
// standard-normal coefficients over the basis, then normalized.
inline Vec span_sample(const EigenResult& eig, int n, uint64_t seed, uint64_t repeat_index = 0) {
    SplitMix64 eng(mix64(mix64(seed, streams::kRounding), repeat_index));
    std::normal_distribution<double> g(0.0, 1.0);
    Vec out(n, 0.0);
    for (const auto& v : eig.eigenvectors) {
        double c = g(eng);
        for (int i = 0; i < n; ++i) out[i] += c * v[i];
    }
    double nv = std::sqrt(norm2(out));
    if (nv <= 0.0) throw DegenerateInput("span_sample: degenerate basis");
    for (double& x : out) x /= nv;
    return out;
}

inline Vec round_top_span(const BlockOperator& op, int t, uint64_t seed,
                          int iters = 300, double tol = 1e-8) {
    EigenResult eig = power_top_t(op, t, iters, tol, seed);
    return span_sample(eig, op.n, seed, 0);
}

struct RoundingResult {
    Vec estimate;
    int repeats = 1;
    double rayleigh = 0.0;  // of the chosen candidate
    EigenResult eig;
};

// Repeat-and-take-best rounding: draws `repeats` random vectors in the top-t
// span and keeps the one with the largest Rayleigh quotient under the
// estimator itself (the hidden spike is never consulted).
inline RoundingResult round_top_span_best(const BlockOperator& op, int t, int repeats,
                                          uint64_t seed, int iters = 300, double tol = 1e-8) {
    if (repeats < 1) throw InvalidParameter("repeats must be >= 1");
    RoundingResult rr;
    rr.repeats = repeats;
    rr.eig = power_top_t(op, t, iters, tol, seed);
    const int n = op.n;
    std::vector<Vec> cands(repeats);
    for (int r = 0; r < repeats; ++r) cands[r] = span_sample(rr.eig, n, seed, r);
    if (repeats == 1) {
        rr.estimate = cands[0];
        return rr;
    }
    Vec Z(static_cast<size_t>(repeats) * n), AZ(static_cast<size_t>(repeats) * n);
    for (int r = 0; r < repeats; ++r)
        std::copy(cands[r].begin(), cands[r].end(), Z.begin() + static_cast<size_t>(r) * n);
    op.apply(Z.data(), AZ.data(), repeats);
    int best = 0;
    double best_r = -1e300;
    for (int r = 0; r < repeats; ++r) {
        double rho = dot(cands[r].data(), AZ.data() + static_cast<size_t>(r) * n, n);
        if (rho > best_r) {
            best_r = rho;
            best = r;
        }
    }
    rr.estimate = cands[best];
    rr.rayleigh = best_r;
    return rr;
}

// Top eigenvector by largest (algebraic) eigenvalue. Subspace iteration finds
// the dominant-|lambda| pair; when that is negative, a second pass on the
// shifted operator A + |lambda| I recovers the algebraic top.
inline Vec top_algebraic_eigenvector(const BlockOperator& op, uint64_t seed = 0,
                                     int iters = 300, double tol = 1e-8) {
    EigenResult first = power_top_t(op, 1, iters, tol, seed);
    if (first.eigenvalues[0] >= 0.0) return first.eigenvectors[0];
    double shift = -first.eigenvalues[0];
    BlockOperator shifted;
    shifted.n = op.n;
    shifted.apply = [&op, shift](const double* Z, double* out, int B) {
        op.apply(Z, out, B);
        for (size_t i = 0; i < static_cast<size_t>(B) * op.n; ++i) out[i] += shift * Z[i];
    };
    EigenResult second = power_top_t(shifted, 1, iters, tol, seed);
    return second.eigenvectors[0];
}

inline Vec pca_estimate(const Matrix& Y, uint64_t seed = 0, int iters = 300,
                        double tol = 1e-8) {
    return top_algebraic_eigenvector(dense_operator(Y), seed, iters, tol);
}

// Entrywise clip to [-tau, tau].
inline Matrix truncate_entries(const Matrix& Y, double tau) {
    if (!(tau > 0.0)) throw InvalidParameter("truncation_pca: tau must be > 0");
    Matrix Yp = Y;
    for (double& v : Yp.a) v = std::clamp(v, -tau, tau);
    return Yp;
}

// Clip at tau, subtract the mean over all n^2 entries (diagonal included),
// then take the top eigenvector.
inline Vec truncation_pca(const Matrix& Y, double tau, uint64_t seed = 0,
                          int iters = 300, double tol = 1e-8) {
    Matrix Ypp = truncate_entries(Y, tau);
    double mean = 0.0;
    for (double v : Ypp.a) mean += v;
    mean /= static_cast<double>(Ypp.a.size());
    for (double& v : Ypp.a) v -= mean;
    return pca_estimate(Ypp, seed, iters, tol);
}

inline Vec strong_recovery_round(const Vec& p) {
    double nv = std::sqrt(norm2(p));
    if (nv <= 0.0) throw DegenerateInput("strong_recovery_round: zero vector");
    Vec out = p;
    for (double& x : out) x /= nv;
    return out;
}

inline Vec strong_recovery_round(const Matrix& P, uint64_t seed = 0,
                                 int iters = 300, double tol = 1e-8) {
    double fro = 0.0;
    for (double v : P.a) fro += v * v;
    if (fro <= 0.0) throw DegenerateInput("strong_recovery_round: zero matrix");
    Matrix Pn = P;
    double inv = 1.0 / std::sqrt(fro);
    for (double& v : Pn.a) v *= inv;
    return pca_estimate(Pn, seed, iters, tol);
}

}  // namespace heavyspike::spectral
