// Basic vector/point utilities shared across the library.
//
// Points live in R^2 or R^3; the runtime dimension is carried by the
// geometry objects, so Vec always stores three components and operations
// take the active dimension n.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gg {

struct Vec {
    std::array<double, 3> c{0.0, 0.0, 0.0};

    Vec() = default;
    Vec(double x, double y) : c{x, y, 0.0} {}
    Vec(double x, double y, double z) : c{x, y, z} {}

    double& operator[](int i) { return c[static_cast<size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<size_t>(i)]; }

    double x() const { return c[0]; }
    double y() const { return c[1]; }
    double z() const { return c[2]; }

    Vec operator+(const Vec& o) const { return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]}; }
    Vec operator-(const Vec& o) const { return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2]}; }
    Vec operator*(double s) const { return {c[0] * s, c[1] * s, c[2] * s}; }
    Vec operator/(double s) const { return {c[0] / s, c[1] / s, c[2] / s}; }
    Vec& operator+=(const Vec& o) {
        c[0] += o.c[0]; c[1] += o.c[1]; c[2] += o.c[2];
        return *this;
    }
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

inline double dot(const Vec& a, const Vec& b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a, int n) { return std::sqrt(dot(a, a, n)); }

inline double norm_inf(const Vec& a, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s = std::max(s, std::abs(a[i]));
    return s;
}

inline double dist(const Vec& a, const Vec& b, int n) { return norm(a - b, n); }

// Axis-aligned box, the universal bounding region.
struct Box {
    Vec lo, hi;
    int n = 2;

    Vec center() const { return (lo + hi) * 0.5; }
    Vec halfwidth() const { return (hi - lo) * 0.5; }
    double diag() const { return dist(lo, hi, n); }
    double volume() const {
        double v = 1.0;
        for (int i = 0; i < n; ++i) v *= (hi[i] - lo[i]);
        return v;
    }
    bool contains(const Vec& p) const {
        for (int i = 0; i < n; ++i)
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        return true;
    }
    Box inflated(double m) const {
        Box b = *this;
        for (int i = 0; i < n; ++i) {
            b.lo[i] -= m;
            b.hi[i] += m;
        }
        return b;
    }
};

// Fixed-topology pairwise summation; bit-identical independent of chunking.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// Streaming accumulator with deterministic pairwise reduction topology.
// Values are combined in insertion order along a fixed binary counter tree,
// so the result does not depend on how the work was partitioned upstream.
class PairwiseAccumulator {
public:
    void add(double x) {
        uint64_t c = count_++;
        int level = 0;
        while (c & 1u) {
            x += stack_[static_cast<size_t>(level)];
            c >>= 1;
            ++level;
        }
        if (static_cast<size_t>(level) >= stack_.size()) stack_.resize(static_cast<size_t>(level) + 1);
        stack_[static_cast<size_t>(level)] = x;
    }
    double total() const {
        double s = 0.0;
        uint64_t c = count_;
        for (size_t i = 0; i < stack_.size(); ++i, c >>= 1)
            if (c & 1u) s += stack_[i];
        return s;
    }

private:
    std::vector<double> stack_;
    uint64_t count_ = 0;
};

constexpr double pi() { return 3.14159265358979323846; }

struct GGError : std::runtime_error {
    explicit GGError(const std::string& what) : std::runtime_error(what) {}
};
struct UnsupportedDomainError : GGError {
    using GGError::GGError;
};
struct ResolutionError : GGError {
    using GGError::GGError;
};
struct UndefinedAverageError : GGError {
    using GGError::GGError;
};
struct IntegrationFailure : GGError {
    using GGError::GGError;
};
struct InconsistentSpecError : GGError {
    using GGError::GGError;
};

}  // namespace gg
