#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace heavyspike {

using Vec = std::vector<double>;

// Parameter violates a documented precondition (maps to CLI exit code 2).
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested scale exceeds an enumeration or memory guard.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite value produced mid-computation; carries the iteration index.
struct NumericFailure : std::runtime_error {
    int iteration;
    NumericFailure(const std::string& what, int iter)
        : std::runtime_error(what), iteration(iter) {}
};

struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense symmetric n x n matrix, row major, both triangles stored.
struct Matrix {
    int n = 0;
    Vec a;

    Matrix() = default;
    explicit Matrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    const double* row(int i) const { return a.data() + static_cast<size_t>(i) * n; }
    double* row(int i) { return a.data() + static_cast<size_t>(i) * n; }
};

// Dense order-3 tensor, index (i,j,k) with i slowest.
struct Tensor3 {
    int n = 0;
    Vec a;

    Tensor3() = default;
    explicit Tensor3(int n_)
        : n(n_), a(static_cast<size_t>(n_) * n_ * n_, 0.0) {}

    double& at(int i, int j, int k) {
        return a[(static_cast<size_t>(i) * n + j) * n + k];
    }
    double at(int i, int j, int k) const {
        return a[(static_cast<size_t>(i) * n + j) * n + k];
    }
};

inline double dot(const double* x, const double* y, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

inline double dot(const Vec& x, const Vec& y) {
    return dot(x.data(), y.data(), static_cast<int>(x.size()));
}

inline double norm2(const Vec& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

inline int max_threads() {
    if (const char* env = std::getenv("HEAVYSPIKE_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, count). Work is striped across threads; callers
// that reduce must write per-index slots and combine in index order so the
// result does not depend on scheduling.
template <class Fn>
void parallel_for(size_t count, Fn&& fn) {
    int nt = max_threads();
    if (nt <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    nt = static_cast<int>(std::min<size_t>(nt, count));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::exception_ptr first_error;
    std::mutex err_mu;
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (size_t i = t; i < count; i += nt) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace heavyspike
