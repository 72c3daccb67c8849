// Bounded domains in R^2/R^3 with exact signed distance, normal fields,
// boundary parametrizations and measure-theoretic membership conventions.
//
// Catalog kinds store their boundary as a list of features (segments and
// circular arcs); signed distance is the exact minimum over features with
// the sign decided by a membership predicate. Composite kinds (unions of
// rectangles, square-minus-blocks) keep feature lists pruned by bounding
// intervals so distance queries stay cheap for large families.
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "quad1d.hpp"
#include "json.hpp"

namespace gg {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Boundary features

struct BoundaryFeature {
    enum class Type { Segment, Arc };
    Type type = Type::Segment;
    // segment
    Vec a, b;
    // arc (xy-plane)
    Vec center;
    double radius = 0.0, ang0 = 0.0, ang1 = 0.0;
    // outward normal: constant for segments; for arcs +1 means radially out
    Vec outward;
    double arc_orientation = 1.0;

    double length() const {
        if (type == Type::Segment) return dist(a, b, 2);
        return radius * std::abs(ang1 - ang0);
    }

    // Euclidean distance from p to the feature; fills the closest point.
    double distance(const Vec& p, Vec* closest = nullptr) const {
        if (type == Type::Segment) {
            Vec d = b - a;
            double len2 = dot(d, d, 2);
            double t = len2 > 0 ? std::clamp(dot(p - a, d, 2) / len2, 0.0, 1.0) : 0.0;
            Vec q = a + d * t;
            if (closest) *closest = q;
            return dist(p, q, 2);
        }
        double ang = std::atan2(p.y() - center.y(), p.x() - center.x());
        double lo = std::min(ang0, ang1), hi = std::max(ang0, ang1);
        double best = std::numeric_limits<double>::infinity();
        Vec bestq;
        // candidate on the open arc
        for (double shift : {-2.0 * pi(), 0.0, 2.0 * pi()}) {
            double aa = ang + shift;
            if (aa >= lo && aa <= hi) {
                Vec q{center.x() + radius * std::cos(aa), center.y() + radius * std::sin(aa), 0.0};
                double d = dist(p, q, 2);
                if (d < best) {
                    best = d;
                    bestq = q;
                }
            }
        }
        for (double aa : {ang0, ang1}) {
            Vec q{center.x() + radius * std::cos(aa), center.y() + radius * std::sin(aa), 0.0};
            double d = dist(p, q, 2);
            if (d < best) {
                best = d;
                bestq = q;
            }
        }
        if (closest) *closest = bestq;
        return best;
    }

    Curve curve() const {
        if (type == Type::Segment) return segment_curve(a, b);
        return arc_curve(center, radius, ang0, ang1);
    }

    Vec normal_at(const Vec& p) const {
        if (type == Type::Segment) return outward;
        Vec r = p - center;
        double n = norm(r, 2);
        if (n == 0) return outward;
        return r * (arc_orientation / n);
    }
};

inline BoundaryFeature make_segment(const Vec& a, const Vec& b, const Vec& outward) {
    BoundaryFeature f;
    f.type = BoundaryFeature::Type::Segment;
    f.a = a;
    f.b = b;
    f.outward = outward;
    return f;
}

inline BoundaryFeature make_arc(const Vec& c, double r, double a0, double a1, double orientation) {
    BoundaryFeature f;
    f.type = BoundaryFeature::Type::Arc;
    f.center = c;
    f.radius = r;
    f.ang0 = a0;
    f.ang1 = a1;
    f.arc_orientation = orientation;
    return f;
}

// ---------------------------------------------------------------------------
// Boundary inclusion (which parts of the topological boundary belong to the
// represented Borel set; consumed by the measure layer only)

struct BoundaryInclusion {
    enum class Mode { Open, Closed, Custom };
    Mode mode = Mode::Open;
    bool custom_default = false;
    std::vector<std::pair<Vec, bool>> custom_points;
    double match_radius = 1e-9;

    bool contains_boundary_point(const Vec& p, int n) const {
        switch (mode) {
            case Mode::Open: return false;
            case Mode::Closed: return true;
            case Mode::Custom:
                for (const auto& [q, in] : custom_points)
                    if (dist(p, q, n) <= match_radius) return in;
                return custom_default;
        }
        return false;
    }

    static BoundaryInclusion open() { return {}; }
    static BoundaryInclusion closed() {
        BoundaryInclusion b;
        b.mode = Mode::Closed;
        return b;
    }
};

// Analytic description of truncated families (comb domains): what the full
// infinite family would do, asserted symbolically.
struct AnalyticTail {
    bool has_tail = false;
    bool infinite_perimeter = false;
    std::optional<double> finiteness_series_bound;  // e.g. sum(1/(2k^2)+1/k^3)
};

struct MedialFlag {
    Vec nu;
    bool flagged = false;  // near the medial axis / non-differentiability set
};

// ---------------------------------------------------------------------------
// Domain interface

class Domain {
public:
    virtual ~Domain() = default;

    virtual int dim() const = 0;
    virtual Box bbox() const = 0;
    virtual double sdf(const Vec& p) const = 0;
    virtual bool inside(const Vec& p) const { return sdf(p) < 0.0; }
    virtual std::string kind() const = 0;
    virtual json params_json() const { return json::object(); }

    // Features are available for 2D catalog kinds; empty otherwise.
    virtual const std::vector<BoundaryFeature>& boundary_features() const {
        static const std::vector<BoundaryFeature> none;
        return none;
    }
    virtual AnalyticTail analytic_tail() const { return {}; }
    virtual bool is_empty() const { return false; }

    // Outward normal (gradient of the signed distance). Default: direction
    // to the nearest boundary feature, finite differences as fallback.
    virtual MedialFlag normal(const Vec& p) const {
        const auto& feats = boundary_features();
        if (!feats.empty()) {
            double best = std::numeric_limits<double>::infinity(), second = best;
            Vec q, bq;
            for (const auto& f : feats) {
                double d = f.distance(p, &q);
                if (d < best) {
                    second = best;
                    best = d;
                    bq = q;
                } else {
                    second = std::min(second, d);
                }
            }
            MedialFlag mf;
            mf.flagged = (second - best) < 1e-9 * (1.0 + best) || best < 1e-14;
            Vec dir = p - bq;
            double dn = norm(dir, dim());
            if (dn < 1e-14) {
                mf.flagged = true;
                mf.nu = Vec{1, 0, 0};
                return mf;
            }
            double s = inside(p) ? -1.0 : 1.0;
            mf.nu = dir * (s / dn);
            return mf;
        }
        return fd_normal(p);
    }

    MedialFlag fd_normal(const Vec& p) const {
        double h = 1e-6 * std::max(1.0, bbox().diag());
        MedialFlag mf;
        Vec g;
        for (int i = 0; i < dim(); ++i) {
            Vec pp = p, pm = p, pp2 = p, pm2 = p;
            pp[i] += h;
            pm[i] -= h;
            pp2[i] += 2 * h;
            pm2[i] -= 2 * h;
            g[i] = (8 * (sdf(pp) - sdf(pm)) - (sdf(pp2) - sdf(pm2))) / (12 * h);
        }
        double n = norm(g, dim());
        mf.flagged = std::abs(n - 1.0) > 0.02;
        mf.nu = n > 1e-14 ? g / n : Vec{1, 0, 0};
        return mf;
    }

    double boundary_distance(const Vec& p) const { return std::abs(sdf(p)); }

    BoundaryInclusion inclusion;
    std::string catalog_name;  // empty for ad-hoc domains
};

using DomainPtr = std::shared_ptr<const Domain>;

// ---------------------------------------------------------------------------
// Rectangle / box (works in 2D and 3D)

class BoxDomain final : public Domain {
public:
    BoxDomain(Vec lo, Vec hi, int n) : lo_(lo), hi_(hi), n_(n) { build_features(); }

    int dim() const override { return n_; }
    Box bbox() const override {
        Box b{lo_, hi_, n_};
        double m = 0.25 * b.diag();
        return b.inflated(m);
    }
    std::string kind() const override { return "rectangle"; }
    json params_json() const override {
        json j;
        j["lo"] = std::vector<double>(lo_.c.begin(), lo_.c.begin() + n_);
        j["hi"] = std::vector<double>(hi_.c.begin(), hi_.c.begin() + n_);
        return j;
    }

    double sdf(const Vec& p) const override {
        double inside_d = -std::numeric_limits<double>::infinity();
        double out2 = 0.0;
        bool outside = false;
        for (int i = 0; i < n_; ++i) {
            double c = 0.5 * (lo_[i] + hi_[i]);
            double h = 0.5 * (hi_[i] - lo_[i]);
            double q = std::abs(p[i] - c) - h;
            if (q > 0) {
                out2 += q * q;
                outside = true;
            }
            inside_d = std::max(inside_d, q);
        }
        return outside ? std::sqrt(out2) : inside_d;
    }

    MedialFlag normal(const Vec& p) const override {
        if (n_ == 2) return Domain::normal(p);
        // nearest-face normal for boxes in 3D
        MedialFlag mf;
        double best = std::numeric_limits<double>::infinity(), second = best;
        int axis = 0;
        double sign = 1.0;
        bool out_any = false;
        Vec outdir;
        for (int i = 0; i < n_; ++i) {
            double dl = p[i] - lo_[i], dh = hi_[i] - p[i];
            if (dl < 0 || dh < 0) out_any = true;
            double d = std::min(std::abs(dl), std::abs(dh));
            if (d < best) {
                second = best;
                best = d;
                axis = i;
                sign = std::abs(dl) < std::abs(dh) ? -1.0 : 1.0;
            } else {
                second = std::min(second, d);
            }
            outdir[i] = dl < 0 ? dl : (dh < 0 ? -dh : 0.0);
        }
        if (out_any) {
            double nn = norm(outdir, n_);
            mf.nu = nn > 0 ? outdir / nn : Vec{1, 0, 0};
            return mf;
        }
        mf.flagged = (second - best) < 1e-12;
        Vec nu;
        nu[axis] = sign;
        mf.nu = nu;
        return mf;
    }

    const std::vector<BoundaryFeature>& boundary_features() const override { return feats_; }

    Vec lo_, hi_;

private:
    void build_features() {
        if (n_ != 2) return;
        Vec A{lo_.x(), lo_.y()}, B{hi_.x(), lo_.y()}, C{hi_.x(), hi_.y()}, D{lo_.x(), hi_.y()};
        feats_ = {make_segment(A, B, {0, -1}), make_segment(B, C, {1, 0}),
                  make_segment(C, D, {0, 1}), make_segment(D, A, {-1, 0})};
    }
    int n_;
    std::vector<BoundaryFeature> feats_;
};

// ---------------------------------------------------------------------------
// Ball

class BallDomain final : public Domain {
public:
    BallDomain(Vec c, double r, int n) : c_(c), r_(r), n_(n) {
        if (n_ == 2) feats_ = {make_arc(c_, r_, 0.0, 2.0 * pi(), +1.0)};
    }
    int dim() const override { return n_; }
    Box bbox() const override {
        Vec lo = c_, hi = c_;
        for (int i = 0; i < n_; ++i) {
            lo[i] -= 1.3 * r_;
            hi[i] += 1.3 * r_;
        }
        return Box{lo, hi, n_};
    }
    std::string kind() const override { return "ball"; }
    json params_json() const override {
        json j;
        j["center"] = std::vector<double>(c_.c.begin(), c_.c.begin() + n_);
        j["radius"] = r_;
        return j;
    }
    double sdf(const Vec& p) const override { return dist(p, c_, n_) - r_; }
    MedialFlag normal(const Vec& p) const override {
        MedialFlag mf;
        Vec d = p - c_;
        double n = norm(d, n_);
        if (n < 1e-12) {
            mf.flagged = true;
            mf.nu = Vec{1, 0, 0};
            return mf;
        }
        mf.nu = d / n;
        return mf;
    }
    const std::vector<BoundaryFeature>& boundary_features() const override { return feats_; }

    Vec c_;
    double r_;

private:
    int n_;
    std::vector<BoundaryFeature> feats_;
};

// ---------------------------------------------------------------------------
// Cone sector: { vertex + (r, theta): 0 < r < R, ang0 < theta < ang0+alpha }

class ConeSectorDomain final : public Domain {
public:
    ConeSectorDomain(Vec vertex, double alpha, double R = 1.0, double ang0 = 0.0)
        : v_(vertex), alpha_(alpha), R_(R), ang0_(ang0) {
        Vec e0{std::cos(ang0_), std::sin(ang0_)};
        Vec e1{std::cos(ang0_ + alpha_), std::sin(ang0_ + alpha_)};
        Vec p0 = v_ + e0 * R_;
        Vec p1 = v_ + e1 * R_;
        // outward normals of the radial edges
        Vec n0{std::sin(ang0_), -std::cos(ang0_)};
        Vec n1{-std::sin(ang0_ + alpha_), std::cos(ang0_ + alpha_)};
        feats_ = {make_segment(v_, p0, n0), make_segment(v_, p1, n1),
                  make_arc(v_, R_, ang0_, ang0_ + alpha_, +1.0)};
    }

    int dim() const override { return 2; }
    Box bbox() const override {
        Box b{v_ - Vec{R_, R_}, v_ + Vec{R_, R_}, 2};
        return b.inflated(0.3 * R_);
    }
    std::string kind() const override { return "cone_sector"; }
    json params_json() const override {
        return json{{"vertex", {v_.x(), v_.y()}}, {"alpha", alpha_}, {"radius", R_}, {"ang0", ang0_}};
    }

    bool inside(const Vec& p) const override {
        Vec d = p - v_;
        double r = norm(d, 2);
        if (r >= R_ || r == 0.0) return false;
        double th = std::atan2(d.y(), d.x()) - ang0_;
        th -= 2.0 * pi() * std::floor(th / (2.0 * pi()));
        return th > 0.0 && th < alpha_;
    }

    double sdf(const Vec& p) const override {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : feats_) best = std::min(best, f.distance(p));
        return inside(p) ? -best : best;
    }

    const std::vector<BoundaryFeature>& boundary_features() const override { return feats_; }

    Vec v_;
    double alpha_, R_, ang0_;

private:
    std::vector<BoundaryFeature> feats_;
};

// ---------------------------------------------------------------------------
// Simple polygon (vertices counter-clockwise)

class PolygonDomain final : public Domain {
public:
    explicit PolygonDomain(std::vector<Vec> verts) : verts_(std::move(verts)) {
        size_t m = verts_.size();
        for (size_t i = 0; i < m; ++i) {
            Vec a = verts_[i], b = verts_[(i + 1) % m];
            Vec t = b - a;
            Vec n{t.y(), -t.x()};  // right normal = outward for CCW order
            double nn = norm(n, 2);
            feats_.push_back(make_segment(a, b, nn > 0 ? n / nn : Vec{1, 0}));
        }
        lo_ = hi_ = verts_[0];
        for (const auto& v : verts_) {
            for (int i = 0; i < 2; ++i) {
                lo_[i] = std::min(lo_[i], v[i]);
                hi_[i] = std::max(hi_[i], v[i]);
            }
        }
    }

    int dim() const override { return 2; }
    Box bbox() const override {
        Box b{lo_, hi_, 2};
        return b.inflated(0.25 * b.diag());
    }
    std::string kind() const override { return "polygon"; }
    json params_json() const override {
        json v = json::array();
        for (const auto& p : verts_) v.push_back({p.x(), p.y()});
        return json{{"vertices", v}};
    }

    bool inside(const Vec& p) const override {
        // even-odd ray casting
        bool in = false;
        size_t m = verts_.size();
        for (size_t i = 0, j = m - 1; i < m; j = i++) {
            const Vec& a = verts_[i];
            const Vec& b = verts_[j];
            if ((a.y() > p.y()) != (b.y() > p.y())) {
                double xint = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
                if (p.x() < xint) in = !in;
            }
        }
        return in;
    }

    double sdf(const Vec& p) const override {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : feats_) best = std::min(best, f.distance(p));
        return inside(p) ? -best : best;
    }

    const std::vector<BoundaryFeature>& boundary_features() const override { return feats_; }

private:
    std::vector<Vec> verts_;
    Vec lo_, hi_;
    std::vector<BoundaryFeature> feats_;
};

// ---------------------------------------------------------------------------
// Rectangle families (comb domains). Members are pairwise disjoint with
// disjoint closures, so min over member distances is the exact distance.

struct CombRect {
    double x0, x1, y0, y1;
};

class CombDomain final : public Domain {
public:
    // family: "dtex2" R_k = (1/(2k+1), 1/(2k)) x (0,1)
    //         "dtex7" R_k = (1/k, 1/k + 1/k^2) x (0, 1/k)
    CombDomain(std::string family, int k_max) : family_(std::move(family)), k_max_(k_max) {
        if (k_max_ < 1) throw GGError("comb: K_max must be >= 1");
        for (int k = 1; k <= k_max_; ++k) rects_.push_back(member(k));
        // sorted by x0 descending already (k increasing -> x decreasing)
        for (const auto& r : rects_) {
            Vec A{r.x0, r.y0}, B{r.x1, r.y0}, C{r.x1, r.y1}, D{r.x0, r.y1};
            feats_.push_back(make_segment(A, B, {0, -1}));
            feats_.push_back(make_segment(B, C, {1, 0}));
            feats_.push_back(make_segment(C, D, {0, 1}));
            feats_.push_back(make_segment(D, A, {-1, 0}));
        }
    }

    CombRect member(int k) const {
        if (family_ == "dtex2")
            return {1.0 / (2.0 * k + 1.0), 1.0 / (2.0 * k), 0.0, 1.0};
        if (family_ == "dtex7")
            return {1.0 / k, 1.0 / k + 1.0 / (double(k) * k), 0.0, 1.0 / k};
        throw UnsupportedDomainError("unknown comb family: " + family_);
    }

    int dim() const override { return 2; }
    Box bbox() const override {
        double xmax = rects_.front().x1, ymax = 0.0;
        for (const auto& r : rects_) ymax = std::max(ymax, r.y1);
        return Box{{-0.2, -0.2}, {xmax + 0.2, ymax + 0.2}, 2};
    }
    std::string kind() const override { return "comb"; }
    json params_json() const override { return json{{"family", family_}, {"k_max", k_max_}}; }

    bool inside(const Vec& p) const override {
        for (const auto& r : rects_) {
            if (p.x() > r.x1) break;  // rects sorted by decreasing x
            if (p.x() > r.x0 && p.y() > r.y0 && p.y() < r.y1) return true;
        }
        return false;
    }

    double sdf(const Vec& p) const override {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : rects_) {
            // distance lower bound by x-interval gap; prune when sorted-out
            double gap = 0.0;
            if (p.x() < r.x0) gap = r.x0 - p.x();
            else if (p.x() > r.x1) gap = p.x() - r.x1;
            if (gap > best) {
                if (p.x() > r.x1) break;
                continue;
            }
            best = std::min(best, rect_abs_dist(r, p));
        }
        return inside(p) ? -best : best;
    }

    const std::vector<BoundaryFeature>& boundary_features() const override { return feats_; }

    AnalyticTail analytic_tail() const override {
        AnalyticTail t;
        t.has_tail = true;
        t.infinite_perimeter = true;  // both families: sum of member perimeters diverges
        if (family_ == "dtex7") {
            // sum_k (1/(2k^2) + 1/k^3) = pi^2/12 + zeta(3)
            t.finiteness_series_bound = pi() * pi() / 12.0 + 1.2020569031595943;
        }
        return t;
    }

    int k_max() const { return k_max_; }
    const std::vector<CombRect>& rects() const { return rects_; }

private:
    static double rect_abs_dist(const CombRect& r, const Vec& p) {
        double cx = 0.5 * (r.x0 + r.x1), cy = 0.5 * (r.y0 + r.y1);
        double hx = 0.5 * (r.x1 - r.x0), hy = 0.5 * (r.y1 - r.y0);
        double qx = std::abs(p.x() - cx) - hx;
        double qy = std::abs(p.y() - cy) - hy;
        if (qx <= 0 && qy <= 0) return -std::max(qx, qy);
        double ox = std::max(qx, 0.0), oy = std::max(qy, 0.0);
        return std::sqrt(ox * ox + oy * oy);
    }

    std::string family_;
    int k_max_;
    std::vector<CombRect> rects_;
    std::vector<BoundaryFeature> feats_;
};

// ---------------------------------------------------------------------------
// sf-ex2 comb: unit square minus convex blocks conv(Gamma_{2k}, Gamma_{2k+1})
// where Gamma_k = {1/k} x [0, k^-5/4].

class CombSfex2Domain final : public Domain {
public:
    explicit CombSfex2Domain(int k_max) : k_max_(k_max) {
        for (int k = 1; k <= k_max_; ++k) {
            double xr = 1.0 / (2.0 * k), xl = 1.0 / (2.0 * k + 1.0);
            double yr = std::pow(2.0 * k, -1.25), yl = std::pow(2.0 * k + 1.0, -1.25);
            blocks_.push_back(Block{xl, xr, yl, yr});
        }
        build_features();
    }

    static double gamma_y(int k) { return std::pow(double(k), -1.25); }
    static double gamma_x(int k) { return 1.0 / double(k); }

    int dim() const override { return 2; }
    Box bbox() const override { return Box{{-0.2, -0.2}, {1.2, 1.2}, 2}; }
    std::string kind() const override { return "comb_sfex2"; }
    json params_json() const override { return json{{"k_max", k_max_}}; }

    struct Block {
        double xl, xr;  // = x_{2k+1}, x_{2k}
        double yl, yr;  // heights at xl, xr (yl < yr)
        double top_at(double x) const { return yl + (yr - yl) * (x - xl) / (xr - xl); }
    };

    bool in_block(const Vec& p) const {
        if (p.y() < 0) return false;
        for (const auto& b : blocks_) {
            if (p.x() > b.xr) break;  // blocks sorted by decreasing x
            if (p.x() >= b.xl && p.x() <= b.xr && p.y() <= b.top_at(p.x())) return true;
        }
        return false;
    }

    bool inside(const Vec& p) const override {
        if (p.x() <= 0 || p.x() >= 1 || p.y() <= 0 || p.y() >= 1) return false;
        return !in_block(p);
    }

    double sdf(const Vec& p) const override {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : feats_) {
            best = std::min(best, f.distance(p));
            if (best == 0) break;
        }
        return inside(p) ? -best : best;
    }

    const std::vector<BoundaryFeature>& boundary_features() const override { return feats_; }

    AnalyticTail analytic_tail() const override {
        AnalyticTail t;
        t.has_tail = true;
        t.infinite_perimeter = false;  // sum_k y_k converges
        return t;
    }

    int k_max() const { return k_max_; }
    const std::vector<Block>& blocks() const { return blocks_; }

private:
    void build_features() {
        // square edges; the bottom edge is split at the block footprints
        feats_.push_back(make_segment({1, 0}, {1, 1}, {1, 0}));
        feats_.push_back(make_segment({1, 1}, {0, 1}, {0, 1}));
        feats_.push_back(make_segment({0, 1}, {0, 0}, {-1, 0}));
        double xprev = 0.0;
        for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) {
            if (it->xl > xprev) feats_.push_back(make_segment({xprev, 0}, {it->xl, 0}, {0, -1}));
            xprev = it->xr;
        }
        feats_.push_back(make_segment({xprev, 0}, {1, 0}, {0, -1}));
        // block walls: left wall (outward normal +x would point into the block;
        // outward for Omega is toward the block, i.e. +x on the left wall)
        for (const auto& b : blocks_) {
            feats_.push_back(make_segment({b.xl, 0}, {b.xl, b.yl}, {1, 0}));
            feats_.push_back(make_segment({b.xr, 0}, {b.xr, b.yr}, {-1, 0}));
            Vec t{b.xr - b.xl, b.yr - b.yl};
            Vec n{-t.y(), t.x()};
            double nn = norm(n, 2);
            // slanted top: outward points down into the block
            feats_.push_back(make_segment({b.xl, b.yl}, {b.xr, b.yr}, n * (-1.0 / nn)));
        }
    }

    int k_max_;
    std::vector<Block> blocks_;
    std::vector<BoundaryFeature> feats_;
};

// ---------------------------------------------------------------------------
// CSG union / difference. min/max of member signed distances; exact when the
// member boundaries do not interact (disjoint closures for unions, strictly
// nested for differences), a 1-Lipschitz lower bound otherwise.

class CsgDomain final : public Domain {
public:
    enum class Op { Union, Difference };
    CsgDomain(Op op, std::vector<DomainPtr> members) : op_(op), members_(std::move(members)) {
        if (members_.empty()) throw GGError("csg: no members");
        for (const auto& m : members_)
            for (const auto& f : m->boundary_features()) feats_.push_back(f);
    }

    int dim() const override { return members_[0]->dim(); }
    Box bbox() const override {
        Box b = members_[0]->bbox();
        for (const auto& m : members_) {
            Box mb = m->bbox();
            for (int i = 0; i < b.n; ++i) {
                b.lo[i] = std::min(b.lo[i], mb.lo[i]);
                b.hi[i] = std::max(b.hi[i], mb.hi[i]);
            }
        }
        return b;
    }
    std::string kind() const override {
        return op_ == Op::Union ? "csg-union" : "csg-difference";
    }
    json params_json() const override;

    bool inside(const Vec& p) const override {
        if (op_ == Op::Union) {
            for (const auto& m : members_)
                if (m->inside(p)) return true;
            return false;
        }
        if (!members_[0]->inside(p)) return false;
        for (size_t i = 1; i < members_.size(); ++i)
            if (members_[i]->sdf(p) <= 0.0) return false;
        return true;
    }

    double sdf(const Vec& p) const override {
        if (op_ == Op::Union) {
            double s = members_[0]->sdf(p);
            for (size_t i = 1; i < members_.size(); ++i) s = std::min(s, members_[i]->sdf(p));
            return s;
        }
        double s = members_[0]->sdf(p);
        for (size_t i = 1; i < members_.size(); ++i) s = std::max(s, -members_[i]->sdf(p));
        return s;
    }

    const std::vector<BoundaryFeature>& boundary_features() const override { return feats_; }

    const std::vector<DomainPtr>& members() const { return members_; }
    Op op() const { return op_; }

private:
    Op op_;
    std::vector<DomainPtr> members_;
    std::vector<BoundaryFeature> feats_;
};

// ---------------------------------------------------------------------------
// Level-set representations: a parent shifted by delta (exact, used for
// sublevel domains) or a sampled grid with multilinear interpolation.

class OffsetDomain final : public Domain {
public:
    OffsetDomain(DomainPtr parent, double delta) : parent_(std::move(parent)), delta_(delta) {}

    int dim() const override { return parent_->dim(); }
    Box bbox() const override { return parent_->bbox().inflated(std::max(0.0, delta_)); }
    std::string kind() const override { return "level-set-grid"; }
    json params_json() const override;
    double sdf(const Vec& p) const override { return parent_->sdf(p) - delta_; }
    MedialFlag normal(const Vec& p) const override { return parent_->normal(p); }
    bool is_empty() const override { return empty_; }
    void mark_empty() { empty_ = true; }

    DomainPtr parent() const { return parent_; }
    double delta() const { return delta_; }

private:
    DomainPtr parent_;
    double delta_;
    bool empty_ = false;
};

class GridDomain final : public Domain {
public:
    GridDomain(Box box, std::array<int, 3> cells, std::vector<double> values)
        : box_(box), cells_(cells), values_(std::move(values)) {}

    int dim() const override { return box_.n; }
    Box bbox() const override { return box_.inflated(0.1 * box_.diag()); }
    std::string kind() const override { return "level-set-grid"; }
    json params_json() const override {
        json j;
        j["lo"] = std::vector<double>(box_.lo.c.begin(), box_.lo.c.begin() + box_.n);
        j["hi"] = std::vector<double>(box_.hi.c.begin(), box_.hi.c.begin() + box_.n);
        j["cells"] = std::vector<int>(cells_.begin(), cells_.begin() + box_.n);
        j["values"] = values_;
        return j;
    }

    // multilinear interpolation of nodal values; clamped outside the grid
    double sdf(const Vec& p) const override {
        int n = box_.n;
        double w[3], fr[3];
        int idx[3];
        for (int i = 0; i < n; ++i) {
            double t = (p[i] - box_.lo[i]) / (box_.hi[i] - box_.lo[i]) * cells_[static_cast<size_t>(i)];
            t = std::clamp(t, 0.0, double(cells_[static_cast<size_t>(i)]) - 1e-12);
            idx[i] = static_cast<int>(t);
            fr[i] = t - idx[i];
            w[i] = fr[i];
        }
        (void)w;
        auto node = [&](int dx, int dy, int dz) {
            int ix = idx[0] + dx, iy = idx[1] + dy, iz = n == 3 ? idx[2] + dz : 0;
            size_t stride_x = 1;
            size_t stride_y = static_cast<size_t>(cells_[0] + 1);
            size_t stride_z = stride_y * static_cast<size_t>(cells_[1] + 1);
            return values_[static_cast<size_t>(ix) * stride_x + static_cast<size_t>(iy) * stride_y +
                           static_cast<size_t>(iz) * stride_z];
        };
        if (n == 2) {
            double v00 = node(0, 0, 0), v10 = node(1, 0, 0), v01 = node(0, 1, 0), v11 = node(1, 1, 0);
            return (1 - fr[0]) * (1 - fr[1]) * v00 + fr[0] * (1 - fr[1]) * v10 +
                   (1 - fr[0]) * fr[1] * v01 + fr[0] * fr[1] * v11;
        }
        double v = 0.0;
        for (int dz = 0; dz <= 1; ++dz)
            for (int dy = 0; dy <= 1; ++dy)
                for (int dx = 0; dx <= 1; ++dx) {
                    double w3 = (dx ? fr[0] : 1 - fr[0]) * (dy ? fr[1] : 1 - fr[1]) *
                                (dz ? fr[2] : 1 - fr[2]);
                    v += w3 * node(dx, dy, dz);
                }
        return v;
    }

    MedialFlag normal(const Vec& p) const override { return fd_normal(p); }

private:
    Box box_;
    std::array<int, 3> cells_;
    std::vector<double> values_;
};

inline json CsgDomain::params_json() const {
    json members = json::array();
    for (const auto& m : members_) {
        json jm;
        jm["kind"] = m->kind();
        jm["params"] = m->params_json();
        members.push_back(jm);
    }
    return json{{"members", members}};
}

inline json OffsetDomain::params_json() const {
    json jp;
    jp["kind"] = parent_->kind();
    jp["params"] = parent_->params_json();
    return json{{"parent", jp}, {"offset", delta_}};
}

// ---------------------------------------------------------------------------
// Default operating resolution (design choice: diag/1024 in 2D, diag/256 in 3D)

inline double default_resolution(const Domain& dom) {
    double diag = dom.bbox().diag();
    return dom.dim() == 2 ? diag / 1024.0 : diag / 256.0;
}

}  // namespace gg
