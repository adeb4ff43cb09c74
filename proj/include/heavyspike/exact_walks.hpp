#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "heavyspike/common.hpp"

namespace heavyspike::exact {

// Brute-force enumeration is intentionally guarded: these routines exist to
// validate the scalable evaluators at tiny sizes, not to run at scale.
struct EnumerationCaps {
    int max_n_matrix = 10;
    int max_ell_matrix = 5;
    int max_n_tensor = 8;
    int max_ell_tensor = 2;
};

inline void check_matrix_cap(int n, int ell, const EnumerationCaps& caps) {
    if (n > caps.max_n_matrix)
        throw CapExceeded("enumeration refused: n=" + std::to_string(n) +
                          " exceeds cap " + std::to_string(caps.max_n_matrix));
    if (ell > caps.max_ell_matrix)
        throw CapExceeded("enumeration refused: ell=" + std::to_string(ell) +
                          " exceeds cap " + std::to_string(caps.max_ell_matrix));
}

inline void check_tensor_cap(int n, int ell, const EnumerationCaps& caps) {
    if (n > caps.max_n_tensor)
        throw CapExceeded("tensor enumeration refused: n=" + std::to_string(n) +
                          " exceeds cap " + std::to_string(caps.max_n_tensor));
    if (ell > caps.max_ell_tensor)
        throw CapExceeded("tensor enumeration refused: ell=" + std::to_string(ell) +
                          " exceeds cap " + std::to_string(caps.max_ell_tensor));
}

// Walk family selector used by the oracle CLI.
struct WalkFamilySpec {
    enum class Tag { kSaw, kNbw, kCycle, kTensorHyperpath };
    Tag tag = Tag::kSaw;
    int ell = 1;
    int k = 1;  // non-backtracking window, kNbw only

    void validate(int n) const {
        if (ell < 1) throw InvalidParameter("walk length ell must be >= 1");
        if (tag == Tag::kNbw && k < 1) throw InvalidParameter("nbw window k must be >= 1");
        if (tag == Tag::kCycle && (ell < 3 || ell > n))
            throw InvalidParameter("cycle length must satisfy 3 <= ell <= n");
    }
};

using VertexSeq = std::vector<int>;

// All self-avoiding walks of ell edges from i to j on the complete graph K_n
// (0-based vertices). Exhaustive and duplicate-free.
inline std::vector<VertexSeq> enumerate_saw(int n, int i, int j, int ell,
                                            const EnumerationCaps& caps = {}) {
    check_matrix_cap(n, ell, caps);
    if (i == j) throw InvalidParameter("enumerate_saw: endpoints must differ");
    if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidParameter("enumerate_saw: vertex out of range");
    if (ell + 1 > n) return {};

    std::vector<VertexSeq> out;
    VertexSeq walk{i};
    std::vector<char> used(n, 0);
    used[i] = 1;
    auto rec = [&](auto&& self, int steps_left) -> void {
        int cur = walk.back();
        (void)cur;
        if (steps_left == 1) {
            if (!used[j]) {
                walk.push_back(j);
                out.push_back(walk);
                walk.pop_back();
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v] || v == j) continue;
            used[v] = 1;
            walk.push_back(v);
            self(self, steps_left - 1);
            walk.pop_back();
            used[v] = 0;
        }
    };
    rec(rec, ell);
    return out;
}

// True when every window of k+2 consecutive vertices in walk is pairwise
// distinct, i.e. a candidate extension differs from the previous k+1 vertices.
inline bool nbw_extension_ok(const VertexSeq& walk, int v, int k) {
    int m = static_cast<int>(walk.size());
    for (int t = std::max(0, m - (k + 1)); t < m; ++t)
        if (walk[t] == v) return false;
    return true;
}

// All k-step non-backtracking walks of ell edges from i to j: no vertex
// repeats within any window of k+2 consecutive positions.
inline std::vector<VertexSeq> enumerate_nbw(int n, int i, int j, int ell, int k,
                                            const EnumerationCaps& caps = {}) {
    check_matrix_cap(n, ell, caps);
    if (i == j) throw InvalidParameter("enumerate_nbw: endpoints must differ");
    if (k < 1) throw InvalidParameter("enumerate_nbw: k must be >= 1");
    std::vector<VertexSeq> out;
    VertexSeq walk{i};
    auto rec = [&](auto&& self, int steps_left) -> void {
        if (steps_left == 0) {
            if (walk.back() == j) out.push_back(walk);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (!nbw_extension_ok(walk, v, k)) continue;
            if (steps_left == 1 && v != j) continue;
            walk.push_back(v);
            self(self, steps_left - 1);
            walk.pop_back();
        }
    };
    rec(rec, ell);
    return out;
}

// Simple ell-cycles, one representative per undirected cycle: lowest vertex
// first, then the smaller of its two neighbors.
inline std::vector<VertexSeq> enumerate_cycles(int n, int ell,
                                               const EnumerationCaps& caps = {}) {
    check_matrix_cap(n, ell, caps);
    if (ell < 3 || ell > n)
        throw InvalidParameter("enumerate_cycles: need 3 <= ell <= n");
    std::vector<VertexSeq> out;
    VertexSeq cyc;
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cyc.size()) == ell) {
            if (cyc[1] < cyc.back()) out.push_back(cyc);
            return;
        }
        for (int v = cyc[0] + 1; v < n; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            cyc.push_back(v);
            self(self);
            cyc.pop_back();
            used[v] = 0;
        }
    };
    for (int v0 = 0; v0 < n; ++v0) {
        cyc.assign(1, v0);
        std::fill(used.begin(), used.end(), 0);
        used[v0] = 1;
        rec(rec);
    }
    return out;
}

// A hyperpath rooted at `root`: ordered pairs (a_t, b_t) alternate with
// singles c_t, ending in the terminal vertex w. All 3*ell-1 vertices are
// distinct; hyperedges run (root,a1,b1), (a1,b1,c1), (c1,a2,b2), ...,
// (c_{ell-1}, w, w). For ell = 1 the path collapses to the single final edge
// (root, w, w).
struct HyperpathDescriptor {
    int root = 0;
    std::vector<std::pair<int, int>> pairs;  // (a_t, b_t), t = 1..ell-1
    std::vector<int> singles;                // c_t, t = 1..ell-1
    int terminal = 0;                        // w

    std::vector<std::array<int, 3>> hyperedges() const {
        std::vector<std::array<int, 3>> es;
        int prev = root;
        for (size_t t = 0; t < pairs.size(); ++t) {
            es.push_back({prev, pairs[t].first, pairs[t].second});
            es.push_back({pairs[t].first, pairs[t].second, singles[t]});
            prev = singles[t];
        }
        es.push_back({prev, terminal, terminal});
        return es;
    }

    std::vector<int> vertices() const {
        std::vector<int> vs{root};
        for (size_t t = 0; t < pairs.size(); ++t) {
            vs.push_back(pairs[t].first);
            vs.push_back(pairs[t].second);
            vs.push_back(singles[t]);
        }
        vs.push_back(terminal);
        return vs;
    }
};

inline std::vector<HyperpathDescriptor> enumerate_tensor_hyperpaths(
    int n, int root, int ell, const EnumerationCaps& caps = {}) {
    check_tensor_cap(n, ell, caps);
    if (ell < 1) throw InvalidParameter("enumerate_tensor_hyperpaths: ell must be >= 1");
    if (root < 0 || root >= n) throw InvalidParameter("enumerate_tensor_hyperpaths: root out of range");
    std::vector<HyperpathDescriptor> out;
    if (3 * ell - 1 > n) return out;

    HyperpathDescriptor d;
    d.root = root;
    std::vector<char> used(n, 0);
    used[root] = 1;
    auto rec = [&](auto&& self, int t) -> void {
        if (t == ell) {
            for (int w = 0; w < n; ++w) {
                if (used[w]) continue;
                d.terminal = w;
                out.push_back(d);
            }
            return;
        }
        for (int a = 0; a < n; ++a) {
            if (used[a]) continue;
            used[a] = 1;
            for (int b = 0; b < n; ++b) {
                if (used[b]) continue;
                used[b] = 1;
                for (int c = 0; c < n; ++c) {
                    if (used[c]) continue;
                    used[c] = 1;
                    d.pairs.emplace_back(a, b);
                    d.singles.push_back(c);
                    self(self, t + 1);
                    d.pairs.pop_back();
                    d.singles.pop_back();
                    used[c] = 0;
                }
                used[b] = 0;
            }
            used[a] = 0;
        }
    };
    rec(rec, 1);
    return out;
}

// ---------------------------------------------------------------------------
// Exact polynomial evaluators
// ---------------------------------------------------------------------------

inline double walk_product(const Matrix& Y, const VertexSeq& walk) {
    double p = 1.0;
    for (size_t t = 0; t + 1 < walk.size(); ++t) p *= Y.at(walk[t], walk[t + 1]);
    return p;
}

// P_ij = sum over self-avoiding walks from i to j of the edge product.
inline Matrix saw_matrix_exact(const Matrix& Y, int ell,
                               const EnumerationCaps& caps = {}) {
    check_matrix_cap(Y.n, ell, caps);
    Matrix P(Y.n);
    for (int i = 0; i < Y.n; ++i)
        for (int j = i + 1; j < Y.n; ++j) {
            double s = 0.0;
            for (const auto& w : enumerate_saw(Y.n, i, j, ell, caps))
                s += walk_product(Y, w);
            P.at(i, j) = s;
            P.at(j, i) = s;
        }
    return P;
}

// Exact probability that a uniform coloring of the walk's distinct vertices
// with q colors makes every (k+2)-window rainbow. Enumerates all q^{|V|}
// assignments of the walk's own vertex set.
inline double nbw_rainbow_weight_exact(const VertexSeq& walk, int k, int q) {
    std::vector<int> verts(walk.begin(), walk.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    int m = static_cast<int>(verts.size());
    std::vector<int> pos(walk.size());
    for (size_t t = 0; t < walk.size(); ++t)
        pos[t] = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), walk[t]) - verts.begin());

    uint64_t total = 1;
    for (int t = 0; t < m; ++t) total *= static_cast<uint64_t>(q);
    uint64_t good = 0;
    std::vector<int> color(m, 0);
    for (uint64_t code = 0; code < total; ++code) {
        uint64_t c = code;
        for (int t = 0; t < m; ++t) {
            color[t] = static_cast<int>(c % q);
            c /= q;
        }
        bool ok = true;
        int L = static_cast<int>(walk.size());
        for (int a = 0; a < L && ok; ++a)
            for (int b = a + 1; b < std::min(L, a + k + 2) && ok; ++b)
                if (color[pos[a]] == color[pos[b]]) ok = false;
        if (ok) ++good;
    }
    return static_cast<double>(good) / static_cast<double>(total);
}

// Unweighted (weight_palette = 0): plain sum of edge products over NBW walks.
// With weight_palette = q > 0: each walk is weighted by its exact rainbow
// probability under a uniform q-coloring, which is the estimator the
// color-coded evaluator approximates.
inline Matrix nbw_matrix_exact(const Matrix& Y, int ell, int k,
                               int weight_palette = 0,
                               const EnumerationCaps& caps = {}) {
    check_matrix_cap(Y.n, ell, caps);
    Matrix P(Y.n);
    for (int i = 0; i < Y.n; ++i)
        for (int j = i + 1; j < Y.n; ++j) {
            double s = 0.0;
            for (const auto& w : enumerate_nbw(Y.n, i, j, ell, k, caps)) {
                double p = walk_product(Y, w);
                if (weight_palette > 0) p *= nbw_rainbow_weight_exact(w, k, weight_palette);
                s += p;
            }
            P.at(i, j) = s;
            P.at(j, i) = s;
        }
    return P;
}

// Sum over canonical simple ell-cycles of the product of edge weights around
// the cycle, each undirected edge used once.
inline double cycle_statistic_exact(const Matrix& Y, int ell,
                                    const EnumerationCaps& caps = {}) {
    check_matrix_cap(Y.n, ell, caps);
    double s = 0.0;
    for (const auto& cyc : enumerate_cycles(Y.n, ell, caps)) {
        double p = walk_product(Y, cyc);
        p *= Y.at(cyc.back(), cyc.front());
        s += p;
    }
    return s;
}

inline double hyperpath_product(const Tensor3& Y, const HyperpathDescriptor& d) {
    double p = 1.0;
    for (const auto& e : d.hyperedges()) p *= Y.at(e[0], e[1], e[2]);
    return p;
}

// P_i = sum over hyperpaths rooted at i of the hyperedge product.
inline Vec tensor_estimate_exact(const Tensor3& Y, int ell,
                                 const EnumerationCaps& caps = {}) {
    check_tensor_cap(Y.n, ell, caps);
    Vec P(Y.n, 0.0);
    for (int i = 0; i < Y.n; ++i)
        for (const auto& d : enumerate_tensor_hyperpaths(Y.n, i, ell, caps))
            P[i] += hyperpath_product(Y, d);
    return P;
}

}  // namespace heavyspike::exact
