// Delta-indexed value series with liminf/limsup brackets and limit
// extrapolation. Every boundary-limit style quantity in the library is
// reported through these types.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "core.hpp"

namespace gg {

// Default schedule delta_j = delta0 * 2^-j, j = 0..steps-1.
inline std::vector<double> dyadic_schedule(double delta0, int steps = 11) {
    std::vector<double> s;
    s.reserve(static_cast<size_t>(steps));
    double d = delta0;
    for (int j = 0; j < steps; ++j, d *= 0.5) s.push_back(d);
    return s;
}

struct SeriesPoint {
    double delta = 0.0;   // delta or k index
    double value = 0.0;
    double error = 0.0;   // quadrature error estimate for this entry
};

// Result of a delta -> 0 limit estimate.
struct TraceEvaluation {
    std::optional<double> value;        // extrapolated limit when converged
    double bracket_lo = 0.0;            // liminf estimate over the tail
    double bracket_hi = 0.0;            // limsup estimate over the tail
    bool converged = false;
    double extrapolation_error = 0.0;
    std::vector<SeriesPoint> series;
    std::vector<double> accumulation_points;  // nonempty when oscillating
    std::string method;

    double value_or_mid() const {
        if (value) return *value;
        return 0.5 * (bracket_lo + bracket_hi);
    }
};

// Least-squares fit value ~ a + b*delta over the last `window` points.
inline std::optional<double> linear_extrapolate(const std::vector<SeriesPoint>& s, int window = 4) {
    if (s.size() < 2) return std::nullopt;
    size_t m = std::min<size_t>(s.size(), static_cast<size_t>(window));
    size_t off = s.size() - m;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = off; i < s.size(); ++i) {
        sx += s[i].delta;
        sy += s[i].value;
        sxx += s[i].delta * s[i].delta;
        sxy += s[i].delta * s[i].value;
    }
    double nm = static_cast<double>(m);
    double den = nm * sxx - sx * sx;
    if (std::abs(den) < 1e-300) return s.back().value;
    double b = (nm * sxy - sx * sy) / den;
    double a = (sy - b * sx) / nm;
    return a;
}

// Convergence rule: bracket over the tail collapses below
// max(abs_tol, 5 * worst quadrature error on the tail).
struct LimitOptions {
    int tail = 4;             // points entering bracket/fit
    double abs_tol = 1e-3;
    double quad_factor = 5.0;
};

inline TraceEvaluation estimate_limit(std::vector<SeriesPoint> s, const LimitOptions& opt = {}) {
    TraceEvaluation ev;
    ev.series = std::move(s);
    if (ev.series.empty()) return ev;
    size_t m = std::min<size_t>(ev.series.size(), static_cast<size_t>(opt.tail));
    size_t off = ev.series.size() - m;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double werr = 0.0;
    for (size_t i = off; i < ev.series.size(); ++i) {
        lo = std::min(lo, ev.series[i].value);
        hi = std::max(hi, ev.series[i].value);
        werr = std::max(werr, ev.series[i].error);
    }
    ev.bracket_lo = lo;
    ev.bracket_hi = hi;
    double tol = std::max(opt.abs_tol, opt.quad_factor * werr);
    ev.converged = (hi - lo) < tol;
    auto a = linear_extrapolate(ev.series, opt.tail);
    if (ev.converged && a) {
        ev.value = std::clamp(*a, lo - tol, hi + tol);
        ev.extrapolation_error = std::max(werr, 0.5 * (hi - lo));
    } else {
        // Oscillating tails: report the accumulation values instead of a limit.
        // Two-cluster split of the tail; close clusters mean slow convergence,
        // well separated ones an honest subsequence dependence.
        std::vector<double> tailv;
        for (size_t i = off; i < ev.series.size(); ++i) tailv.push_back(ev.series[i].value);
        std::sort(tailv.begin(), tailv.end());
        double gap = 0.0;
        size_t cut = 0;
        for (size_t i = 0; i + 1 < tailv.size(); ++i) {
            if (tailv[i + 1] - tailv[i] > gap) {
                gap = tailv[i + 1] - tailv[i];
                cut = i + 1;
            }
        }
        if (tailv.size() >= 2 && gap > 0.5 * (hi - lo)) {
            double c1 = 0, c2 = 0;
            for (size_t i = 0; i < cut; ++i) c1 += tailv[i];
            for (size_t i = cut; i < tailv.size(); ++i) c2 += tailv[i];
            ev.accumulation_points = {c1 / static_cast<double>(cut),
                                      c2 / static_cast<double>(tailv.size() - cut)};
        }
        ev.extrapolation_error = hi - lo;
    }
    return ev;
}

// Observed convergence order from consecutive difference ratios (dyadic
// schedules). Median of log2 ratios over the usable part of the series.
inline std::optional<double> observed_rate(const std::vector<SeriesPoint>& s) {
    std::vector<double> rates;
    for (size_t i = 0; i + 2 < s.size(); ++i) {
        double d1 = s[i].value - s[i + 1].value;
        double d2 = s[i + 1].value - s[i + 2].value;
        if (std::abs(d2) < 1e-14 || std::abs(d1) < 1e-14) continue;
        double r = d1 / d2;
        if (r <= 0) continue;
        rates.push_back(std::log2(r));
    }
    if (rates.empty()) return std::nullopt;
    std::sort(rates.begin(), rates.end());
    return rates[rates.size() / 2];
}

}  // namespace gg
