#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "heavyspike/common.hpp"
#include "heavyspike/rng.hpp"

namespace heavyspike::colorcode {

// ---------------------------------------------------------------------------
// Colorings
// ---------------------------------------------------------------------------

struct Coloring {
    int q = 0;
    std::vector<int> assignment;  // per vertex, values in [0, q)

    int n() const { return static_cast<int>(assignment.size()); }

    void validate() const {
        for (int c : assignment)
            if (c < 0 || c >= q) throw InvalidParameter("coloring entry out of palette");
    }
};

inline Coloring sample_coloring(int n, int q, SplitMix64& eng) {
    Coloring c;
    c.q = q;
    c.assignment.resize(n);
    std::uniform_int_distribution<int> dist(0, q - 1);
    for (int v = 0; v < n; ++v) c.assignment[v] = dist(eng);
    return c;
}

inline std::vector<Coloring> sample_colorings(int n, int q, int count, uint64_t seed) {
    std::vector<Coloring> cs;
    cs.reserve(count);
    for (int t = 0; t < count; ++t) {
        SplitMix64 eng(mix64(seed, streams::kColoring, static_cast<uint64_t>(t)));
        cs.push_back(sample_coloring(n, q, eng));
    }
    return cs;
}

// All q^n colorings; only sensible at toy sizes, hence the guard.
inline std::vector<Coloring> enumerate_all_colorings(int n, int q,
                                                     uint64_t limit = (1ULL << 22)) {
    double total = std::pow(static_cast<double>(q), n);
    if (total > static_cast<double>(limit))
        throw CapExceeded("refusing to enumerate " + std::to_string(total) + " colorings");
    uint64_t cnt = static_cast<uint64_t>(total + 0.5);
    std::vector<Coloring> cs;
    cs.reserve(cnt);
    for (uint64_t code = 0; code < cnt; ++code) {
        Coloring c;
        c.q = q;
        c.assignment.resize(n);
        uint64_t x = code;
        for (int v = 0; v < n; ++v) {
            c.assignment[v] = static_cast<int>(x % q);
            x /= q;
        }
        cs.push_back(std::move(c));
    }
    return cs;
}

// Probability that m = q vertices colored uniformly from q colors are all
// distinct: q!/q^q.
inline double rainbow_probability(int q) {
    double p = 1.0;
    for (int i = 1; i <= q; ++i) p *= static_cast<double>(i) / static_cast<double>(q);
    return p;
}

struct ColorClasses {
    std::vector<std::vector<int>> verts;  // per color

    static ColorClasses build(const Coloring& c) {
        ColorClasses cc;
        cc.verts.assign(c.q, {});
        for (int v = 0; v < c.n(); ++v) cc.verts[c.assignment[v]].push_back(v);
        return cc;
    }
};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct ColorCodeConfig {
    int ell = 0;
    int k = -1;  // NBW window; -1 means self-avoiding
    int num_colorings = 64;
    uint64_t seed = 0;
    enum class Mode { kMaterialize, kImplicit };
    Mode mode = Mode::kMaterialize;
    // Materializing runs one DP per source; refuse when the state space
    // n * 2^q would not fit the budget.
    size_t state_budget = size_t{1} << 24;

    void validate() const {
        if (ell < 1) throw InvalidParameter("ell must be >= 1");
        if (num_colorings < 1) throw InvalidParameter("num_colorings must be >= 1");
    }
};

// ---------------------------------------------------------------------------
// Self-avoiding walk DP
//
// Per coloring c the DP computes, for every target u,
//   sum over walks (v_0, ..., v_ell = u) whose ell+1 vertices carry ell+1
//   distinct colors, of z_{v_0} * prod Y(v_t, v_{t+1}).
// State is (current vertex, set of colors used); each step adds exactly one
// color, so only sets of size step+1 are reachable and the final state is the
// full palette. Repeated vertices repeat a color and are excluded
// automatically, which is what makes the rainbow sum range over
// self-avoiding walks only.
// ---------------------------------------------------------------------------

// Set bookkeeping shared across colorings of one palette size.
struct SetTables {
    int q = 0;
    std::vector<std::vector<uint32_t>> by_popcount;  // sets grouped by size
    std::vector<int> rank;                           // rank within its group

    static SetTables build(int q) {
        if (q < 1 || q > 20) throw InvalidParameter("palette size out of supported range [1,20]");
        SetTables st;
        st.q = q;
        st.by_popcount.assign(q + 1, {});
        st.rank.assign(size_t{1} << q, 0);
        for (uint32_t s = 0; s < (1u << q); ++s) {
            int pc = __builtin_popcount(s);
            st.rank[s] = static_cast<int>(st.by_popcount[pc].size());
            st.by_popcount[pc].push_back(s);
        }
        return st;
    }
};

// B-plane SAW DP. `cur` holds one block of B vectors per live color set,
// plane-major: cur[rank(S) * B * n + b * n + v].
class SawDp {
  public:
    SawDp(const Matrix& Y, const Coloring& coloring, const ColorClasses& classes,
          const SetTables& tables, int B)
        : Y_(Y), c_(coloring), cls_(classes), st_(tables), n_(Y.n), B_(B) {
        size_t max_sets = 0;
        for (const auto& g : st_.by_popcount) max_sets = std::max(max_sets, g.size());
        cur_.assign(max_sets * B_ * n_, 0.0);
        next_.assign(max_sets * B_ * n_, 0.0);
        m_.assign(static_cast<size_t>(B_) * n_, 0.0);
        level_ = 0;
    }

    // Standard operator-apply start: plane b holds z_b spread over the
    // singleton set of each vertex's own color.
    void init_from_planes(const double* Z) {
        std::fill(cur_.begin(), cur_.end(), 0.0);
        level_ = 0;
        const size_t bn = static_cast<size_t>(B_) * n_;
        for (int v = 0; v < n_; ++v) {
            uint32_t s = 1u << c_.assignment[v];
            double* slot = cur_.data() + static_cast<size_t>(st_.rank[s]) * bn;
            for (int b = 0; b < B_; ++b) slot[static_cast<size_t>(b) * n_ + v] = Z[static_cast<size_t>(b) * n_ + v];
        }
    }

    // Cycle-style start: plane b begins at vertex starts[b] with the color
    // set {color_of_start}. All starts must share one color class.
    void init_at_vertices(const std::vector<int>& starts) {
        std::fill(cur_.begin(), cur_.end(), 0.0);
        level_ = 0;
        const size_t bn = static_cast<size_t>(B_) * n_;
        for (int b = 0; b < static_cast<int>(starts.size()); ++b) {
            int v = starts[b];
            uint32_t s = 1u << c_.assignment[v];
            cur_[static_cast<size_t>(st_.rank[s]) * bn + static_cast<size_t>(b) * n_ + v] = 1.0;
        }
    }

    void step() {
        const int q = st_.q;
        const size_t bn = static_cast<size_t>(B_) * n_;
        const auto& live = st_.by_popcount[level_ + 1];
        const auto& nxt = st_.by_popcount[level_ + 2];
        std::fill(next_.begin(), next_.begin() + nxt.size() * bn, 0.0);

        for (uint32_t S : live) {
            const double* src = cur_.data() + static_cast<size_t>(st_.rank[S]) * bn;
            std::fill(m_.begin(), m_.end(), 0.0);
            bool any = false;
            for (int color = 0; color < q; ++color) {
                if (!(S & (1u << color))) continue;
                for (int v : cls_.verts[color]) {
                    const double* yrow = Y_.row(v);
                    for (int b = 0; b < B_; ++b) {
                        double fv = src[static_cast<size_t>(b) * n_ + v];
                        if (fv == 0.0) continue;
                        any = true;
                        double* mb = m_.data() + static_cast<size_t>(b) * n_;
                        for (int u = 0; u < n_; ++u) mb[u] += yrow[u] * fv;
                    }
                }
            }
            if (!any) continue;
            for (int color = 0; color < q; ++color) {
                if (S & (1u << color)) continue;
                uint32_t T = S | (1u << color);
                double* dst = next_.data() + static_cast<size_t>(st_.rank[T]) * bn;
                for (int b = 0; b < B_; ++b) {
                    const double* mb = m_.data() + static_cast<size_t>(b) * n_;
                    double* db = dst + static_cast<size_t>(b) * n_;
                    for (int v : cls_.verts[color]) db[v] += mb[v];
                }
            }
        }
        cur_.swap(next_);
        ++level_;
    }

    void run(int steps) {
        for (int s = 0; s < steps; ++s) step();
    }

    // Pointer to the block for color set S at the current level.
    const double* level_block(uint32_t S) const {
        return cur_.data() + static_cast<size_t>(st_.rank[S]) * B_ * n_;
    }

    int level() const { return level_; }

  private:
    const Matrix& Y_;
    const Coloring& c_;
    const ColorClasses& cls_;
    const SetTables& st_;
    int n_, B_, level_;
    Vec cur_, next_, m_;
};

// Per-coloring SAW apply: out += p_c(Y) * Z for B planes.
inline void saw_apply_per_coloring(const Matrix& Y, const Coloring& coloring,
                                   const ColorClasses& classes, const SetTables& tables,
                                   int ell, const double* Z, double* out, int B) {
    if (coloring.q != ell + 1)
        throw InvalidParameter("saw coloring palette must be ell+1 (got q=" +
                               std::to_string(coloring.q) + ", ell=" + std::to_string(ell) + ")");
    SawDp dp(Y, coloring, classes, tables, B);
    dp.init_from_planes(Z);
    dp.run(ell);
    uint32_t full = (1u << coloring.q) - 1;
    const double* fin = dp.level_block(full);
    for (size_t i = 0; i < static_cast<size_t>(B) * Y.n; ++i) out[i] += fin[i];
}

// ---------------------------------------------------------------------------
// Non-backtracking walk DP
//
// State is (current vertex, ordered tuple of the last min(step+1, k+1)
// colors), most recent first. Appending a vertex requires its color to
// differ from everything in the tuple, which makes every window of k+2
// consecutive vertices rainbow. Tuples are indexed densely base q with
// digit 0 the most recent color.
// ---------------------------------------------------------------------------

class NbwDp {
  public:
    NbwDp(const Matrix& Y, const Coloring& coloring, const ColorClasses& classes,
          int k, int B, size_t state_budget = size_t{1} << 26)
        : Y_(Y), c_(coloring), cls_(classes), q_(coloring.q), k_(k), n_(Y.n), B_(B) {
        if (k_ < 1) throw InvalidParameter("nbw window k must be >= 1");
        pow_q_.assign(k_ + 2, 1);
        for (int i = 1; i <= k_ + 1; ++i) pow_q_[i] = pow_q_[i - 1] * q_;
        if (static_cast<size_t>(pow_q_[k_ + 1]) * n_ > state_budget)
            throw InvalidParameter("nbw state space q^{k+1} * n exceeds budget; reduce k or ell");
        size_t slots = static_cast<size_t>(pow_q_[k_ + 1]) * B_ * n_;
        cur_.assign(slots, 0.0);
        next_.assign(slots, 0.0);
        sum_.assign(static_cast<size_t>(B_) * n_, 0.0);
        scratch_.assign(static_cast<size_t>(q_) * B_ * n_, 0.0);
        steps_done_ = 0;
    }

    void init_from_planes(const double* Z) {
        std::fill(cur_.begin(), cur_.end(), 0.0);
        steps_done_ = 0;
        const size_t bn = static_cast<size_t>(B_) * n_;
        for (int v = 0; v < n_; ++v) {
            size_t idx = static_cast<size_t>(c_.assignment[v]);
            for (int b = 0; b < B_; ++b)
                cur_[idx * bn + static_cast<size_t>(b) * n_ + v] = Z[static_cast<size_t>(b) * n_ + v];
        }
    }

    void step() {
        const size_t bn = static_cast<size_t>(B_) * n_;
        int m_old = std::min(steps_done_ + 1, k_ + 1);
        bool growing = m_old < k_ + 1;
        int m_new = growing ? m_old + 1 : m_old;
        std::fill(next_.begin(), next_.begin() + static_cast<size_t>(pow_q_[m_new]) * bn, 0.0);

        if (growing) {
            for_each_tuple(m_old, [&](int64_t idx, const int* digits) {
                const double* src = cur_.data() + static_cast<size_t>(idx) * bn;
                if (!matvec_into(src, digits[0], m_.data())) return;
                for (int c0 = 0; c0 < q_; ++c0) {
                    if (contains(digits, m_old, c0)) continue;
                    double* dst = next_.data() + (static_cast<size_t>(c0) + q_ * static_cast<size_t>(idx)) * bn;
                    scatter_class(m_.data(), c0, dst);
                }
            });
        } else {
            // Steady window: group by the k colors kept; the dropped color d
            // ranges over the remainder. For each kept prefix, one pooled sum
            // minus the single excluded term gives every target tuple.
            for_each_tuple(k_, [&](int64_t prefix, const int* digits) {
                std::fill(sum_.begin(), sum_.end(), 0.0);
                bool any = false;
                for (int d = 0; d < q_; ++d) {
                    double* md = scratch_.data() + static_cast<size_t>(d) * bn;
                    if (contains(digits, k_, d)) continue;
                    size_t old_idx = static_cast<size_t>(prefix) + static_cast<size_t>(d) * pow_q_[k_];
                    const double* src = cur_.data() + old_idx * bn;
                    if (matvec_into(src, digits[0], md)) {
                        any = true;
                        for (size_t i = 0; i < bn; ++i) sum_[i] += md[i];
                    } else {
                        std::fill(md, md + bn, 0.0);
                    }
                }
                if (!any) return;
                for (int c0 = 0; c0 < q_; ++c0) {
                    if (contains(digits, k_, c0)) continue;
                    const double* mc = scratch_.data() + static_cast<size_t>(c0) * bn;
                    double* dst = next_.data() + (static_cast<size_t>(c0) + q_ * static_cast<size_t>(prefix)) * bn;
                    for (int b = 0; b < B_; ++b) {
                        const double* sb = sum_.data() + static_cast<size_t>(b) * n_;
                        const double* mb = mc + static_cast<size_t>(b) * n_;
                        double* db = dst + static_cast<size_t>(b) * n_;
                        for (int v : cls_.verts[c0]) db[v] += sb[v] - mb[v];
                    }
                }
            });
        }
        cur_.swap(next_);
        ++steps_done_;
    }

    void run(int steps) {
        m_.assign(static_cast<size_t>(B_) * n_, 0.0);
        for (int s = 0; s < steps; ++s) step();
    }

    void sum_all_into(double* out) const {
        const size_t bn = static_cast<size_t>(B_) * n_;
        int m = std::min(steps_done_ + 1, k_ + 1);
        for_each_tuple(m, [&](int64_t idx, const int*) {
            const double* src = cur_.data() + static_cast<size_t>(idx) * bn;
            for (size_t i = 0; i < bn; ++i) out[i] += src[i];
        });
    }

  private:
    static bool contains(const int* digits, int len, int c) {
        for (int i = 0; i < len; ++i)
            if (digits[i] == c) return true;
        return false;
    }

    // Visit every tuple of `len` pairwise-distinct colors.
    template <class Fn>
    void for_each_tuple(int len, Fn&& fn) const {
        int digits[8];
        int64_t total = pow_q_[len];
        for (int64_t idx = 0; idx < total; ++idx) {
            int64_t x = idx;
            bool ok = true;
            for (int i = 0; i < len; ++i) {
                digits[i] = static_cast<int>(x % q_);
                x /= q_;
                for (int j = 0; j < i && ok; ++j)
                    if (digits[j] == digits[i]) ok = false;
                if (!ok) break;
            }
            if (ok) fn(idx, digits);
        }
    }

    // m = Y * src restricted to the support class; false when src is zero.
    bool matvec_into(const double* src, int support_color, double* m) const {
        std::fill(m, m + static_cast<size_t>(B_) * n_, 0.0);
        bool any = false;
        for (int v : cls_.verts[support_color]) {
            const double* yrow = Y_.row(v);
            for (int b = 0; b < B_; ++b) {
                double fv = src[static_cast<size_t>(b) * n_ + v];
                if (fv == 0.0) continue;
                any = true;
                double* mb = m + static_cast<size_t>(b) * n_;
                for (int u = 0; u < n_; ++u) mb[u] += yrow[u] * fv;
            }
        }
        return any;
    }

    void scatter_class(const double* m, int color, double* dst) const {
        for (int b = 0; b < B_; ++b) {
            const double* mb = m + static_cast<size_t>(b) * n_;
            double* db = dst + static_cast<size_t>(b) * n_;
            for (int v : cls_.verts[color]) db[v] += mb[v];
        }
    }

    const Matrix& Y_;
    const Coloring& c_;
    const ColorClasses& cls_;
    int q_, k_, n_, B_, steps_done_;
    std::vector<int64_t> pow_q_;
    Vec cur_, next_, sum_, scratch_, m_;
};

inline void nbw_apply_per_coloring(const Matrix& Y, const Coloring& coloring,
                                   const ColorClasses& classes, int ell, int k,
                                   const double* Z, double* out, int B) {
    if (coloring.q != ell + 1)
        throw InvalidParameter("nbw coloring palette must be ell+1 (got q=" +
                               std::to_string(coloring.q) + ", ell=" + std::to_string(ell) + ")");
    NbwDp dp(Y, coloring, classes, k, B);
    dp.init_from_planes(Z);
    dp.run(ell);
    dp.sum_all_into(out);
}

// ---------------------------------------------------------------------------
// Materialized per-coloring matrices and estimator averages
// ---------------------------------------------------------------------------

namespace detail {

constexpr int kBlock = 4;

template <class ApplyPerColoring>
Matrix materialize_per_coloring(const Matrix& Y, ApplyPerColoring&& apply) {
    const int n = Y.n;
    Matrix P(n);
    Vec Z(static_cast<size_t>(kBlock) * n, 0.0), R(static_cast<size_t>(kBlock) * n, 0.0);
    for (int base = 0; base < n; base += kBlock) {
        int B = std::min(kBlock, n - base);
        std::fill(Z.begin(), Z.end(), 0.0);
        for (int b = 0; b < B; ++b) Z[static_cast<size_t>(b) * n + base + b] = 1.0;
        std::fill(R.begin(), R.begin() + static_cast<size_t>(B) * n, 0.0);
        apply(Z.data(), R.data(), B);
        for (int b = 0; b < B; ++b)
            for (int v = 0; v < n; ++v) P.at(base + b, v) = R[static_cast<size_t>(b) * n + v];
    }
    return P;
}

}  // namespace detail

inline Matrix saw_per_coloring(const Matrix& Y, const Coloring& coloring, int ell) {
    coloring.validate();
    ColorClasses cls = ColorClasses::build(coloring);
    SetTables st = SetTables::build(ell + 1);
    return detail::materialize_per_coloring(Y, [&](const double* Z, double* R, int B) {
        saw_apply_per_coloring(Y, coloring, cls, st, ell, Z, R, B);
    });
}

inline Matrix nbw_per_coloring(const Matrix& Y, const Coloring& coloring, int ell, int k) {
    coloring.validate();
    ColorClasses cls = ColorClasses::build(coloring);
    return detail::materialize_per_coloring(Y, [&](const double* Z, double* R, int B) {
        nbw_apply_per_coloring(Y, coloring, cls, ell, k, Z, R, B);
    });
}

inline void check_materialize_budget(int n, int ell, const ColorCodeConfig& cfg) {
    size_t states = static_cast<size_t>(n) << (ell + 1);
    if (states > cfg.state_budget)
        throw CapExceeded("materialize mode needs n*2^(ell+1)=" + std::to_string(states) +
                          " states, over budget " + std::to_string(cfg.state_budget) +
                          "; use implicit mode");
}

// Average of per-coloring matrices over an explicit coloring set, with an
// optional scale. Colorings are processed in parallel but summed in index
// order, so the result is independent of scheduling.
template <class PerColoring>
Matrix averaged_matrix(int n, const std::vector<Coloring>& colorings, double scale,
                       PerColoring&& per) {
    std::vector<Matrix> slots(colorings.size());
    parallel_for(colorings.size(), [&](size_t t) { slots[t] = per(colorings[t]); });
    Matrix out(n);
    for (size_t t = 0; t < slots.size(); ++t)
        for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += slots[t].a[i];
    for (double& v : out.a) v *= scale;
    return out;
}

// Rescaled color-coded SAW estimate: (1 / (C * r)) * sum_t p_{c_t}(Y) with
// r = (ell+1)!/(ell+1)^{ell+1}, so the expectation over colorings equals the
// exact self-avoiding walk matrix.
inline Matrix saw_colorcoded(const Matrix& Y, const ColorCodeConfig& cfg) {
    cfg.validate();
    if (cfg.mode != ColorCodeConfig::Mode::kMaterialize)
        throw InvalidParameter("saw_colorcoded materializes; use the operator form for implicit mode");
    check_materialize_budget(Y.n, cfg.ell, cfg);
    auto colorings = sample_colorings(Y.n, cfg.ell + 1, cfg.num_colorings, cfg.seed);
    double scale = 1.0 / (cfg.num_colorings * rainbow_probability(cfg.ell + 1));
    return averaged_matrix(Y.n, colorings, scale,
                           [&](const Coloring& c) { return saw_per_coloring(Y, c, cfg.ell); });
}

// Color-coded NBW estimate: plain average of per-coloring matrices. The
// coloring average itself is the estimator (the rainbow-window weight is part
// of its definition), so no rescale is applied.
inline Matrix nbw_colorcoded(const Matrix& Y, const ColorCodeConfig& cfg) {
    cfg.validate();
    if (cfg.k < 1) throw InvalidParameter("nbw_colorcoded requires k >= 1");
    check_materialize_budget(Y.n, cfg.ell, cfg);
    auto colorings = sample_colorings(Y.n, cfg.ell + 1, cfg.num_colorings, cfg.seed);
    double scale = 1.0 / cfg.num_colorings;
    return averaged_matrix(Y.n, colorings, scale,
                           [&](const Coloring& c) { return nbw_per_coloring(Y, c, cfg.ell, cfg.k); });
}

// ---------------------------------------------------------------------------
// Implicit operator
// ---------------------------------------------------------------------------

// Matrix-free color-coded walk estimator. apply_block never materializes the
// n x 2^q transition structure; it runs one state-vector sweep per coloring
// and averages with a deterministic reduction order.
class WalkEstimatorOperator {
  public:
    WalkEstimatorOperator(const Matrix& Y, std::vector<Coloring> colorings, int ell, int k)
        : Y_(Y), colorings_(std::move(colorings)), ell_(ell), k_(k) {
        if (colorings_.empty()) throw InvalidParameter("need at least one coloring");
        for (const auto& c : colorings_) {
            if (c.q != ell + 1) throw InvalidParameter("coloring palette must be ell+1");
            classes_.push_back(ColorClasses::build(c));
        }
        if (k_ < 0) tables_ = SetTables::build(ell + 1);
        double r = k_ < 0 ? rainbow_probability(ell + 1) : 1.0;
        scale_ = 1.0 / (static_cast<double>(colorings_.size()) * r);
    }

    int n() const { return Y_.n; }

    // out = estimate * Z for B planes (overwrites out).
    void apply_block(const double* Z, double* out, int B) const {
        size_t bn = static_cast<size_t>(B) * Y_.n;
        std::vector<Vec> slots(colorings_.size());
        parallel_for(colorings_.size(), [&](size_t t) {
            slots[t].assign(bn, 0.0);
            if (k_ < 0)
                saw_apply_per_coloring(Y_, colorings_[t], classes_[t], tables_, ell_,
                                       Z, slots[t].data(), B);
            else
                nbw_apply_per_coloring(Y_, colorings_[t], classes_[t], ell_, k_,
                                       Z, slots[t].data(), B);
        });
        std::fill(out, out + bn, 0.0);
        for (size_t t = 0; t < slots.size(); ++t)
            for (size_t i = 0; i < bn; ++i) out[i] += slots[t][i];
        for (size_t i = 0; i < bn; ++i) out[i] *= scale_;
    }

    Vec apply(const Vec& z) const {
        Vec out(Y_.n, 0.0);
        apply_block(z.data(), out.data(), 1);
        return out;
    }

  private:
    const Matrix& Y_;
    std::vector<Coloring> colorings_;
    std::vector<ColorClasses> classes_;
    SetTables tables_;
    int ell_, k_;
    double scale_;
};

// Rescaled color-coded SAW estimate applied to z over an explicit coloring
// set; equals saw_colorcoded(Y, .) * z whenever the latter is computable.
inline Vec saw_operator_apply(const Matrix& Y, const std::vector<Coloring>& colorings,
                              int ell, const Vec& z) {
    WalkEstimatorOperator op(Y, colorings, ell, -1);
    return op.apply(z);
}

inline Vec nbw_operator_apply(const Matrix& Y, const std::vector<Coloring>& colorings,
                              int ell, int k, const Vec& z) {
    WalkEstimatorOperator op(Y, colorings, ell, k);
    return op.apply(z);
}

}  // namespace heavyspike::colorcode
