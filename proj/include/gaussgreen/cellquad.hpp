// Adaptive cell quadrature over implicitly described regions.
//
// Refinement is purely geometric (region boundary, declared singular points,
// integrand-supplied hints), never driven by sampled integrand values, so
// the rule is exactly linear in the integrand: superposed integrands are
// evaluated on identical nodes.
//
// Declared point singularities are excluded from the cell sweep by a ball
// and integrated on a polar/spherical patch with adaptive radial rules.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "core.hpp"
#include "domain.hpp"
#include "quad1d.hpp"

namespace gg {

// membership + conservative cell classification
struct Region {
    Box box;
    std::function<bool(const Vec&)> contains;
    // -1 fully outside, +1 fully inside, 0 undecided; must be conservative
    std::function<int(const Vec& center, double radius)> classify;
};

inline Region region_all(Box b) {
    Region r;
    r.box = b;
    r.contains = [](const Vec&) { return true; };
    r.classify = [](const Vec&, double) { return +1; };
    return r;
}

inline Region region_domain(DomainPtr d) {
    Region r;
    r.box = d->bbox();
    r.contains = [d](const Vec& p) { return d->inside(p); };
    r.classify = [d](const Vec& c, double rad) {
        double s = d->sdf(c);
        if (s < -rad) return +1;
        if (s > rad) return -1;
        return 0;
    };
    return r;
}

enum class CollarSide { Inside, Outside, Both };

// (bd Omega)_{(a,b)} intersected with the requested side of Omega.
inline Region region_collar(DomainPtr d, double a, double b, CollarSide side) {
    Region r;
    r.box = d->bbox();
    r.contains = [d, a, b, side](const Vec& p) {
        double s = d->sdf(p);
        double ds = std::abs(s);
        if (!(ds > a && ds < b)) return false;
        switch (side) {
            case CollarSide::Inside: return s < 0.0;
            case CollarSide::Outside: return s > 0.0;
            case CollarSide::Both: return true;
        }
        return false;
    };
    r.classify = [d, a, b, side](const Vec& c, double rad) {
        double s = d->sdf(c);
        double lo = s - rad, hi = s + rad;  // sdf is 1-Lipschitz
        double alo, ahi;                    // admissible sdf interval(s)
        switch (side) {
            case CollarSide::Inside: alo = -b; ahi = -a; break;
            case CollarSide::Outside: alo = a; ahi = b; break;
            case CollarSide::Both:
                if (lo > a && hi < b) return +1;
                if (lo > -b && hi < -a) return +1;
                if ((hi < -b) || (lo > b) || (hi < a && lo > -a)) return -1;
                return 0;
        }
        if (lo > alo && hi < ahi) return +1;
        if (hi < alo || lo > ahi) return -1;
        return 0;
    };
    return r;
}

inline Region region_intersect(Region a, Region b) {
    Region r;
    r.box = a.box;
    for (int i = 0; i < r.box.n; ++i) {
        r.box.lo[i] = std::max(a.box.lo[i], b.box.lo[i]);
        r.box.hi[i] = std::min(a.box.hi[i], b.box.hi[i]);
        if (r.box.hi[i] <= r.box.lo[i]) r.box.hi[i] = r.box.lo[i];
    }
    auto ca = a.contains, cb = b.contains;
    r.contains = [ca, cb](const Vec& p) { return ca(p) && cb(p); };
    auto ka = a.classify, kb = b.classify;
    r.classify = [ka, kb](const Vec& c, double rad) {
        int x = ka(c, rad);
        if (x == -1) return -1;
        int y = kb(c, rad);
        if (y == -1) return -1;
        return (x == 1 && y == 1) ? +1 : 0;
    };
    return r;
}

inline Region region_restrict_box(Region a, Box clip) {
    Region b = region_all(clip);
    Region r = region_intersect(std::move(a), b);
    r.box = clip;
    return r;
}

struct SingularPoint {
    Vec at;
    double power = 1.0;       // |f| <~ C dist^-power near the point
    double patch_radius = 0;  // 0 = pick automatically
};

struct Integrand {
    std::function<double(const Vec&)> f;
    std::vector<SingularPoint> singular;
    // request refinement of a cell (center, radius); used for oscillatory
    // features; geometric, independent of sampled values
    std::function<bool(const Vec&, double)> refine_hint;
};

struct CellQuadOptions {
    int gauss_order = 3;
    int interior_depth = 4;    // uniform split depth before Gauss cells (2D)
    int interior_depth3 = 2;
    int max_depth = 13;        // boundary-cell refinement limit (2D)
    int max_depth3 = 9;
    int subsample = 4;         // per-axis membership samples on ragged leaves
    double tol_radial = 1e-10;
    double theta_tol = 1e-9;
    long max_cells = 6'000'000;
    double min_cell = 0.0;     // optional absolute floor on cell half-width

    static CellQuadOptions coarse() {
        CellQuadOptions o;
        o.max_depth = 11;
        o.max_depth3 = 7;
        o.interior_depth = 3;
        return o;
    }
    static CellQuadOptions fine() {
        CellQuadOptions o;
        o.max_depth = 15;
        o.max_depth3 = 10;
        o.interior_depth = 5;
        return o;
    }
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long cells = 0;
};

namespace detail {

struct CellTask {
    Vec center;
    Vec half;
    int depth;
};

inline double cell_radius(const Vec& half, int n) { return norm(half, n); }

}  // namespace detail

// Integral of f over the region with singular patches excluded from the cell
// sweep. Patches are integrated separately below.
inline QuadResult integrate_cells(const Region& region, const Integrand& g,
                                  const CellQuadOptions& opt) {
    int n = region.box.n;
    const auto& gl = gauss_legendre_01(opt.gauss_order);
    int interior_depth = n == 2 ? opt.interior_depth : opt.interior_depth3;

    auto in_patch = [&](const Vec& p) {
        for (const auto& s : g.singular)
            if (dist(p, s.at, n) < s.patch_radius) return true;
        return false;
    };
    // -1: cell fully inside some patch ball; +1 fully clear; 0 straddles
    auto patch_classify = [&](const Vec& c, double rad) {
        int res = +1;
        for (const auto& s : g.singular) {
            double d = dist(c, s.at, n);
            if (d + rad < s.patch_radius) return -1;
            if (d - rad < s.patch_radius) res = 0;
        }
        return res;
    };

    int max_depth = n == 2 ? opt.max_depth : opt.max_depth3;

    QuadResult out;
    PairwiseAccumulator acc, errs;
    std::vector<detail::CellTask> stack;
    stack.push_back({region.box.center(), region.box.halfwidth(), 0});

    while (!stack.empty()) {
        detail::CellTask t = stack.back();
        stack.pop_back();
        ++out.cells;
        bool budget_ok = out.cells < opt.max_cells;

        double rad = detail::cell_radius(t.half, n);
        int cls = region.classify(t.center, rad);
        if (cls == -1) continue;
        int pcls = patch_classify(t.center, rad);
        if (pcls == -1) continue;

        bool hinted = g.refine_hint && g.refine_hint(t.center, rad);
        // geometric grading toward singular points outside their patches;
        // patch-rim cells refine a fixed amount relative to the patch radius
        bool graded = false;
        for (const auto& s : g.singular) {
            double d = dist(t.center, s.at, n);
            if (d - rad < 3.0 * rad && rad > 0.20 * s.patch_radius) graded = true;
            if (pcls == 0 && d - rad < s.patch_radius && rad > s.patch_radius / 32.0) graded = true;
        }
        bool can_split = budget_ok && t.depth < max_depth && (opt.min_cell <= 0.0 || rad > opt.min_cell);
        bool split = false;
        if (can_split) {
            if (cls == 0 || hinted || graded) split = true;
            else if (t.depth < interior_depth) split = true;
        }
        if (split) {
            Vec h2 = t.half * 0.5;
            int kids = 1 << n;
            for (int k = 0; k < kids; ++k) {
                Vec c = t.center;
                for (int i = 0; i < n; ++i) c[i] += ((k >> i) & 1 ? 1.0 : -1.0) * h2[i];
                stack.push_back({c, h2, t.depth + 1});
            }
            continue;
        }

        double vol = 1.0;
        for (int i = 0; i < n; ++i) vol *= 2.0 * t.half[i];
        if (vol <= 0.0) continue;

        if (cls == +1 && pcls == +1) {
            // tensor Gauss rule
            double sum = 0.0;
            if (n == 2) {
                for (auto [x, wx] : gl)
                    for (auto [y, wy] : gl) {
                        Vec p{t.center.x() + (2 * x - 1) * t.half.x(),
                              t.center.y() + (2 * y - 1) * t.half.y()};
                        sum += wx * wy * g.f(p);
                    }
            } else {
                for (auto [x, wx] : gl)
                    for (auto [y, wy] : gl)
                        for (auto [z, wz] : gl) {
                            Vec p{t.center.x() + (2 * x - 1) * t.half.x(),
                                  t.center.y() + (2 * y - 1) * t.half.y(),
                                  t.center.z() + (2 * z - 1) * t.half.z()};
                            sum += wx * wy * wz * g.f(p);
                        }
            }
            acc.add(sum * vol);
            continue;
        }

        // ragged leaf: membership subsampling
        int m = n == 2 ? opt.subsample : std::min(opt.subsample, 3);
        double w = vol / std::pow(double(m), n);
        double sum = 0.0;
        double amax = 0.0;
        int inside_cnt = 0, total = 0;
        if (n == 2) {
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    Vec p{t.center.x() + ((i + 0.5) / m * 2 - 1) * t.half.x(),
                          t.center.y() + ((j + 0.5) / m * 2 - 1) * t.half.y()};
                    ++total;
                    if (region.contains(p) && !in_patch(p)) {
                        double v = g.f(p);
                        sum += v;
                        amax = std::max(amax, std::abs(v));
                        ++inside_cnt;
                    }
                }
        } else {
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < m; ++k) {
                        Vec p{t.center.x() + ((i + 0.5) / m * 2 - 1) * t.half.x(),
                              t.center.y() + ((j + 0.5) / m * 2 - 1) * t.half.y(),
                              t.center.z() + ((k + 0.5) / m * 2 - 1) * t.half.z()};
                        ++total;
                        if (region.contains(p) && !in_patch(p)) {
                            double v = g.f(p);
                            sum += v;
                            amax = std::max(amax, std::abs(v));
                            ++inside_cnt;
                        }
                    }
        }
        acc.add(sum * w);
        if (inside_cnt > 0 && inside_cnt < total) errs.add(amax * vol / m);
    }
    out.value = acc.total();
    out.error = errs.total();
    return out;
}

// Polar (2D) / spherical (3D) patch integral of f over B_R(p) intersected
// with the region (minus any previously handled patch balls). Radial rule
// uses r = R s^2 so integrands with |f| ~ r^-q, q < n, stay integrable and
// tame at the center.
inline QuadResult integrate_patch(const Region& region, const Integrand& g,
                                  const SingularPoint& sp,
                                  std::span<const SingularPoint> exclude,
                                  const CellQuadOptions& opt) {
    int n = region.box.n;
    double R = sp.patch_radius;
    QuadResult out;
    if (R <= 0) return out;

    auto radial = [&](const Vec& dir) {
        auto h = [&](double s) {
            double r = R * s * s;
            Vec p = sp.at + dir * r;
            if (!region.contains(p)) return 0.0;
            for (const auto& e : exclude)
                if (dist(p, e.at, n) < e.patch_radius) return 0.0;
            double jac = (n == 2) ? r : r * r;
            return g.f(p) * jac * 2.0 * R * s;
        };
        return integrate_1d(h, 0.0, 1.0, opt.tol_radial, 2000);
    };

    if (n == 2) {
        auto ftheta = [&](double th) {
            return radial(Vec{std::cos(th), std::sin(th)}).value;
        };
        auto q = integrate_1d(ftheta, 0.0, 2.0 * pi(), opt.theta_tol, 4000);
        out.value = q.value;
        out.error = q.error;
        return out;
    }
    // 3D: Gauss in cos(phi), adaptive-free uniform in azimuth with doubling
    auto sphere_eval = [&](int n_az, int n_polar) {
        const auto& gp = gauss_legendre_01(n_polar);
        std::vector<double> parts;
        parts.reserve(static_cast<size_t>(n_az) * gp.size());
        for (int i = 0; i < n_az; ++i) {
            double th = 2.0 * pi() * (i + 0.5) / n_az;
            for (auto [u, wu] : gp) {
                double c = 2.0 * u - 1.0;  // cos(phi) in (-1,1)
                double s = std::sqrt(std::max(0.0, 1.0 - c * c));
                Vec dir{s * std::cos(th), s * std::sin(th), c};
                double w = (2.0 * pi() / n_az) * (2.0 * wu);
                parts.push_back(w * radial(dir).value);
            }
        }
        return pairwise_sum(parts);
    };
    double prev = sphere_eval(16, 8);
    for (int m = 32; m <= 128; m *= 2) {
        double cur = sphere_eval(m, m / 2);
        if (std::abs(cur - prev) < 1e-7 * std::max(1.0, std::abs(cur)) || m == 128) {
            out.value = cur;
            out.error = std::abs(cur - prev);
            return out;
        }
        prev = cur;
    }
    out.value = prev;
    return out;
}

// Full integral: cell sweep with patches cut out, plus patch integrals.
inline QuadResult integrate_region(const Region& region, Integrand g, const CellQuadOptions& opt = {}) {
    int n = region.box.n;
    // default patch radii
    double diag = region.box.diag();
    for (auto& s : g.singular) {
        if (s.patch_radius <= 0) s.patch_radius = 0.05 * diag;
    }
    QuadResult total = integrate_cells(region, g, opt);
    for (size_t si = 0; si < g.singular.size(); ++si) {
        const auto& s = g.singular[si];
        // skip patches entirely outside the region box neighbourhood
        bool near = true;
        for (int i = 0; i < n; ++i)
            if (s.at[i] < region.box.lo[i] - s.patch_radius ||
                s.at[i] > region.box.hi[i] + s.patch_radius)
                near = false;
        if (!near) continue;
        QuadResult p = integrate_patch(region, g, s,
                                       std::span<const SingularPoint>(g.singular.data(), si), opt);
        total.value += p.value;
        total.error += p.error;
    }
    return total;
}

// Convenience: integral of f over a domain.
inline QuadResult integrate_domain(DomainPtr d, const Integrand& g, const CellQuadOptions& opt = {}) {
    return integrate_region(region_domain(std::move(d)), g, opt);
}

}  // namespace gg
