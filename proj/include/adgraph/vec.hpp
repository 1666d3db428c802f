#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "adgraph/common.hpp"

namespace adgraph {

/// Dense real vector. Model-side vectors are tiny (d is ~32), so this is a
/// thin wrapper over std::vector with no view machinery.
struct Vec {
    std::vector<double> v;

    Vec() = default;
    explicit Vec(std::size_t n, double fill = 0.0) : v(n, fill) {}
    Vec(std::initializer_list<double> init) : v(init) {}

    std::size_t size() const { return v.size(); }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
    double* data() { return v.data(); }
    const double* data() const { return v.data(); }
    std::span<double> span() { return v; }
    std::span<const double> span() const { return v; }
};

/// Dense row-major matrix with shape fixed at construction.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0)
        : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
    std::size_t size() const { return a.size(); }
    double* data() { return a.data(); }
    const double* data() const { return a.data(); }
    std::span<const double> span() const { return a; }
};

// ---------------------------------------------------------------------------
// Shared numerical kernels. Both the recording and the plain execution path of
// the tape call these, which is what makes the two paths bit-identical.
// ---------------------------------------------------------------------------

inline double sigmoid_scalar(double x) {
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

inline double tanh_scalar(double x) { return std::tanh(x); }

/// log(1 + exp(x)) without overflow for large |x|.
inline double softplus_stable(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

/// psi * log(1 + exp(x / psi)); strictly positive for all finite x.
inline double softplus_scaled(double x, double psi) {
    if (!(psi > 0.0)) fail_numeric("softplus_scaled: psi must be positive");
    return psi * softplus_stable(x / psi);
}

/// y = W x for a rows x cols matrix stored row-major.
inline void affine_kernel(double* out, const double* w, int rows, int cols, const double* x) {
    for (int r = 0; r < rows; ++r) {
        const double* row = w + static_cast<std::size_t>(r) * cols;
        double acc = 0.0;
        for (int c = 0; c < cols; ++c) acc += row[c] * x[c];
        out[r] = acc;
    }
}

/// Max-subtracted softmax; output sums to 1 for any finite input.
inline void softmax_kernel(std::span<const double> in, std::span<double> out) {
    if (in.empty()) fail_numeric("softmax: empty input");
    double mx = in[0];
    for (double x : in)
        if (x > mx) mx = x;
    double sum = 0.0;
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[i] = std::exp(in[i] - mx);
        sum += out[i];
    }
    for (std::size_t i = 0; i < in.size(); ++i) out[i] /= sum;
}

inline std::vector<double> softmax(std::span<const double> in) {
    std::vector<double> out(in.size());
    softmax_kernel(in, out);
    return out;
}

inline bool all_finite(std::span<const double> xs) {
    for (double x : xs)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace adgraph
