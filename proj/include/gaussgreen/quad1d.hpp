// Adaptive 1D quadrature (Gauss-Kronrod 7/15 with bisection) plus fixed
// Gauss-Legendre rules for curve integrals.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "core.hpp"

namespace gg {

namespace detail {
// Kronrod 15 nodes/weights on [-1,1]; the embedded Gauss-7 uses odd entries.
inline const double kGK15X[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline const double kGK15W[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline const double kG7W[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};
}  // namespace detail

struct Quad1DResult {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
};

// Adaptive GK15 on [a,b]. Splits the worst interval until the global error
// estimate is below tol or the interval budget is exhausted.
inline Quad1DResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                                 double tol = 1e-10, int max_intervals = 20000) {
    struct Seg {
        double a, b, value, error;
    };
    auto gk = [&f](double lo, double hi) {
        double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        double k = 0.0, g = 0.0;
        for (int i = 0; i < 15; ++i) {
            double v = f(c + h * detail::kGK15X[i]);
            k += detail::kGK15W[i] * v;
            if (i % 2 == 1) g += detail::kG7W[i / 2] * v;
        }
        Seg s{lo, hi, k * h, 0.0};
        s.error = std::abs(k - g) * std::abs(h);
        return s;
    };

    Quad1DResult out;
    if (a == b) return out;
    std::vector<Seg> segs{gk(a, b)};
    out.evals = 15;
    while (static_cast<int>(segs.size()) < max_intervals) {
        double total_err = 0.0;
        size_t worst = 0;
        for (size_t i = 0; i < segs.size(); ++i) {
            total_err += segs[i].error;
            if (segs[i].error > segs[worst].error) worst = i;
        }
        if (total_err < tol) break;
        Seg s = segs[worst];
        double mid = 0.5 * (s.a + s.b);
        if (mid == s.a || mid == s.b) break;
        segs[worst] = gk(s.a, mid);
        segs.push_back(gk(mid, s.b));
        out.evals += 30;
    }
    std::vector<double> vals, errs;
    vals.reserve(segs.size());
    errs.reserve(segs.size());
    for (const auto& s : segs) {
        vals.push_back(s.value);
        errs.push_back(s.error);
    }
    out.value = pairwise_sum(vals);
    out.error = pairwise_sum(errs);
    return out;
}

// Gauss-Legendre nodes on [0,1] (computed once per order by Newton on the
// Legendre recurrence).
inline const std::vector<std::pair<double, double>>& gauss_legendre_01(int order) {
    static std::vector<std::vector<std::pair<double, double>>> cache(65);
    if (order < 1) order = 1;
    if (order > 64) order = 64;
    auto& entry = cache[static_cast<size_t>(order)];
    if (!entry.empty()) return entry;
    int n = order;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi() * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        entry.emplace_back(0.5 * (x + 1.0), 0.5 * w);
    }
    std::sort(entry.begin(), entry.end());
    return entry;
}

// Curve given by a C^1 parametrization on [0,1] with constant-speed-ish
// param; integrates g(point) dH^1 by composite Gauss, doubling panels until
// stable.
struct Curve {
    std::function<Vec(double)> gamma;        // position
    std::function<Vec(double)> tangent;      // d gamma / dt (not normalized)
    double t0 = 0.0, t1 = 1.0;
};

inline double integrate_curve(const Curve& c, const std::function<double(const Vec&)>& g, int dim,
                              double tol = 1e-10, int nodes_per_panel = 16) {
    auto eval = [&](int panels) {
        const auto& gl = gauss_legendre_01(nodes_per_panel);
        std::vector<double> parts;
        parts.reserve(static_cast<size_t>(panels) * gl.size());
        double len = c.t1 - c.t0;
        for (int p = 0; p < panels; ++p) {
            double a = c.t0 + len * p / panels;
            double w = len / panels;
            for (auto [xi, wi] : gl) {
                double t = a + w * xi;
                Vec pos = c.gamma(t);
                Vec tan = c.tangent(t);
                parts.push_back(wi * w * g(pos) * norm(tan, dim));
            }
        }
        return pairwise_sum(parts);
    };
    double prev = eval(1);
    for (int panels = 2; panels <= 256; panels *= 2) {
        double cur = eval(panels);
        if (std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

inline Curve segment_curve(const Vec& a, const Vec& b) {
    Curve c;
    c.gamma = [a, b](double t) { return a + (b - a) * t; };
    c.tangent = [a, b](double) { return b - a; };
    return c;
}

// Circular arc around `center`, radius r, angles [a0,a1] in the xy-plane.
inline Curve arc_curve(const Vec& center, double r, double a0, double a1) {
    Curve c;
    c.gamma = [=](double t) {
        double ang = a0 + (a1 - a0) * t;
        return Vec{center.x() + r * std::cos(ang), center.y() + r * std::sin(ang), center.z()};
    };
    c.tangent = [=](double t) {
        double ang = a0 + (a1 - a0) * t;
        return Vec{-r * std::sin(ang) * (a1 - a0), r * std::cos(ang) * (a1 - a0), 0.0};
    };
    return c;
}

}  // namespace gg
