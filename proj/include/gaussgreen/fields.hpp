// Field specifications: vector fields with declared divergence-measure
// decompositions, scalar fields, test functions, and validation utilities.
#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cellquad.hpp"
#include "core.hpp"
#include "domain.hpp"
#include "quad1d.hpp"

namespace gg {

// ---------------------------------------------------------------------------

struct ScalarFieldSpec {
    std::function<double(const Vec&)> eval;
    std::vector<SingularPoint> singularities;
    std::optional<double> sup_bound;  // set => essentially bounded
    std::function<bool(const Vec&, double)> refine_hint;
    std::string name = "user";

    double operator()(const Vec& p) const { return eval(p); }

    static ScalarFieldSpec constant(double c) {
        ScalarFieldSpec f;
        f.eval = [c](const Vec&) { return c; };
        f.sup_bound = std::abs(c);
        f.name = "const";
        return f;
    }
};

struct VectorFieldSpec {
    std::function<Vec(const Vec&)> eval;
    std::vector<SingularPoint> singularities;
    std::optional<double> essential_bound;
    std::function<bool(const Vec&, double)> refine_hint;
    std::string name = "user";
    int dim = 2;

    Vec operator()(const Vec& p) const { return eval(p); }
};

// A surface concentration of div F: scalar density along a parametrized curve.
struct SurfacePart {
    Curve curve;
    std::function<double(const Vec&)> density;
    std::string tag;
};

struct DivergenceMeasureSpec {
    std::function<double(const Vec&)> ac_density;  // nullptr when absent
    std::vector<SingularPoint> ac_singularities;
    std::vector<std::pair<Vec, double>> atoms;
    std::vector<SurfacePart> surface_parts;

    bool trivial() const { return !ac_density && atoms.empty() && surface_parts.empty(); }

    static DivergenceMeasureSpec zero() { return {}; }
};

// W^{1,inf} test function: value + gradient evaluators with declared norms.
struct TestFunctionSpec {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> grad;
    double sup_norm = 1.0;
    double grad_sup_norm = 1.0;
    std::optional<Box> support_hint;
    std::function<bool(const Vec&, double)> refine_hint;
    std::string name = "phi";

    double w1inf_norm() const { return std::max(sup_norm, grad_sup_norm); }

    static TestFunctionSpec one() {
        TestFunctionSpec t;
        t.value = [](const Vec&) { return 1.0; };
        t.grad = [](const Vec&) { return Vec{0, 0, 0}; };
        t.sup_norm = 1.0;
        t.grad_sup_norm = 0.0;
        t.name = "one";
        return t;
    }

    static TestFunctionSpec coordinate(int axis) {
        TestFunctionSpec t;
        t.value = [axis](const Vec& p) { return p[axis]; };
        t.grad = [axis](const Vec&) {
            Vec g;
            g[axis] = 1.0;
            return g;
        };
        t.sup_norm = 10.0;
        t.grad_sup_norm = 1.0;
        t.name = axis == 0 ? "x" : (axis == 1 ? "y" : "z");
        return t;
    }

    // C^1 bump (1 - |x-c|^2/R^2)^2 supported on B_R(c), peak 1.
    static TestFunctionSpec bump(const Vec& c, double R, int dim, double height = 1.0) {
        TestFunctionSpec t;
        t.value = [c, R, dim, height](const Vec& p) {
            double q = 1.0 - dot(p - c, p - c, dim) / (R * R);
            return q > 0 ? height * q * q : 0.0;
        };
        t.grad = [c, R, dim, height](const Vec& p) {
            double q = 1.0 - dot(p - c, p - c, dim) / (R * R);
            if (q <= 0) return Vec{0, 0, 0};
            return (p - c) * (height * 2.0 * q * (-2.0 / (R * R)));
        };
        t.sup_norm = std::abs(height);
        // max of |grad| = height * 8/(3*sqrt(3)*R) at |x-c| = R/sqrt(3)
        t.grad_sup_norm = std::abs(height) * 8.0 / (3.0 * std::sqrt(3.0) * R);
        Box b;
        b.n = dim;
        for (int i = 0; i < dim; ++i) {
            b.lo[i] = c[i] - R;
            b.hi[i] = c[i] + R;
        }
        t.support_hint = b;
        t.name = "bump";
        return t;
    }
};

// Vector-valued test function phi: U -> R^n with jacobian rows grad(phi_i).
struct VectorTestSpec {
    std::function<Vec(const Vec&)> value;
    std::function<std::array<Vec, 3>(const Vec&)> jacobian;
    double sup_norm = 1.0;
    double grad_sup_norm = 1.0;
    std::string name = "Phi";

    double divergence(const Vec& p, int dim) const {
        auto J = jacobian(p);
        double d = 0.0;
        for (int i = 0; i < dim; ++i) d += J[static_cast<size_t>(i)][i];
        return d;
    }
};

// ---------------------------------------------------------------------------
// Part-wise pairing of phi against a divergence measure. The weight callback
// decides how much of each atom/surface point to count (domain membership,
// boundary inclusion, chi weights); it receives the location.

inline double pair_divergence(const DivergenceMeasureSpec& divspec,
                              const std::function<double(const Vec&)>& phi,
                              const std::function<double(const Vec&)>& weight,
                              int dim, double curve_tol = 1e-10) {
    std::vector<double> parts;
    for (const auto& [p, mass] : divspec.atoms) {
        double w = weight(p);
        if (w != 0.0) parts.push_back(w * mass * phi(p));
    }
    for (const auto& sp : divspec.surface_parts) {
        double v = integrate_curve(
            sp.curve,
            [&](const Vec& p) {
                double w = weight(p);
                return w == 0.0 ? 0.0 : w * sp.density(p) * phi(p);
            },
            dim, curve_tol);
        parts.push_back(v);
    }
    return pairwise_sum(parts);
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
    double max_residual = 0.0;
    std::vector<double> residuals;
    bool pass(double tol) const { return max_residual < tol; }
};

// Audits ac/atom/surface decomposition of div F against the distributional
// definition: for compactly supported phi, int F.Dphi + int phi d(divF) = 0.
inline ValidationReport validate_field(const VectorFieldSpec& F, const DivergenceMeasureSpec& divF,
                                       const std::vector<TestFunctionSpec>& probes, Box domain_box,
                                       const CellQuadOptions& opt = {}) {
    ValidationReport rep;
    for (const auto& phi : probes) {
        Box b = phi.support_hint ? *phi.support_hint : domain_box;
        b.n = domain_box.n;
        Region reg = region_all(b);
        Integrand g;
        g.f = [&](const Vec& p) { return dot(F.eval(p), phi.grad(p), F.dim); };
        g.singular = F.singularities;
        g.refine_hint = F.refine_hint;
        double volpart = integrate_region(reg, g, opt).value;
        double acpart = 0.0;
        if (divF.ac_density) {
            Integrand ga;
            ga.f = [&](const Vec& p) { return divF.ac_density(p) * phi.value(p); };
            ga.singular = divF.ac_singularities;
            acpart = integrate_region(reg, ga, opt).value;
        }
        double measure = pair_divergence(
            divF, phi.value, [](const Vec&) { return 1.0; }, F.dim);
        double r = std::abs(volpart + acpart + measure) / std::max(1.0, phi.w1inf_norm());
        rep.residuals.push_back(r);
        rep.max_residual = std::max(rep.max_residual, r);
    }
    return rep;
}

struct TestFunctionReport {
    bool pass = true;
    double worst_grad_mismatch = 0.0;
    Vec worst_point;
    int skipped_nonsmooth = 0;
    std::string message;
};

// Finite-difference audit of the declared gradient and the declared norms.
// Sample points where two-scale finite differences disagree are treated as
// the lambda-null nonsmooth set and skipped.
inline TestFunctionReport validate_test_function(const TestFunctionSpec& phi, int samples, Box box,
                                                 unsigned seed = 0x5eed) {
    if (samples < 100) throw GGError("validate_test_function: samples >= 100 required");
    TestFunctionReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int n = box.n;
    double h = 1e-5 * box.diag();
    for (int s = 0; s < samples; ++s) {
        Vec p;
        for (int i = 0; i < n; ++i) p[i] = box.lo[i] + U(rng) * (box.hi[i] - box.lo[i]);
        double val = phi.value(p);
        if (std::abs(val) > phi.sup_norm * (1.0 + 1e-6) + 1e-12) {
            rep.pass = false;
            rep.message = "sup norm violated";
            rep.worst_point = p;
            return rep;
        }
        Vec g1, g2;
        for (int i = 0; i < n; ++i) {
            Vec pp = p, pm = p;
            pp[i] += h;
            pm[i] -= h;
            g1[i] = (phi.value(pp) - phi.value(pm)) / (2 * h);
            pp[i] = p[i] + h / 4;
            pm[i] = p[i] - h / 4;
            g2[i] = (phi.value(pp) - phi.value(pm)) / (h / 2);
        }
        if (norm(g1 - g2, n) > 1e-3 * (1.0 + norm(g1, n))) {
            ++rep.skipped_nonsmooth;  // ridge / kink point, measure zero
            continue;
        }
        Vec gd = phi.grad(p);
        double mism = norm(gd - g2, n) / (1.0 + norm(gd, n));
        if (mism > rep.worst_grad_mismatch) {
            rep.worst_grad_mismatch = mism;
            rep.worst_point = p;
        }
        if (norm(gd, n) > phi.grad_sup_norm * (1.0 + 1e-6) + 1e-12) {
            rep.pass = false;
            rep.message = "gradient sup norm violated";
            rep.worst_point = p;
            return rep;
        }
    }
    if (rep.skipped_nonsmooth > samples / 2) {
        rep.pass = false;
        rep.message = "too many nonsmooth samples";
        return rep;
    }
    if (rep.worst_grad_mismatch > 1e-4) {
        rep.pass = false;
        rep.message = "declared gradient mismatch at (" + std::to_string(rep.worst_point.x()) +
                      ", " + std::to_string(rep.worst_point.y()) + ")";
    }
    return rep;
}

}  // namespace gg
