// Scratch driver used while bringing the quadrature engine up. Not a test.
#include <chrono>
#include <cstdio>

#include "gaussgreen/cellquad.hpp"
#include "gaussgreen/domain.hpp"

using namespace gg;

int main() {
    auto t0 = std::chrono::steady_clock::now();
    auto square = std::make_shared<BoxDomain>(Vec{0, 0}, Vec{1, 1}, 2);
    auto ball = std::make_shared<BallDomain>(Vec{0, 0}, 1.0, 2);
    auto cone = std::make_shared<ConeSectorDomain>(Vec{0, 0}, pi() / 2.0, 1.0, 0.0);

    CellQuadOptions opt;
    Integrand one{[](const Vec&) { return 1.0; }, {}, nullptr};

    auto a = integrate_domain(square, one, opt);
    std::printf("area square   = %.8f (err %.2e, cells %ld)\n", a.value, a.error, a.cells);

    auto b = integrate_domain(ball, one, opt);
    std::printf("area ball     = %.8f vs %.8f (err %.2e, cells %ld)\n", b.value, pi(), b.error, b.cells);

    Integrand f3x{[](const Vec& p) { return 3.0 * p.x(); }, {}, nullptr};
    auto c = integrate_domain(square, f3x, opt);
    std::printf("int 3x        = %.8f (want 1.5)\n", c.value);

    // rot singular: integral of -y/(2 pi (x^2+y^2)) over cone = -1/(2pi)
    Integrand rs;
    rs.f = [](const Vec& p) {
        double r2 = p.x() * p.x() + p.y() * p.y();
        return -p.y() / (2.0 * pi() * r2);
    };
    rs.singular = {{Vec{0, 0}, 1.0, 0.15}};
    auto d = integrate_domain(cone, rs, opt);
    std::printf("rotsing       = %.8f vs %.8f  (diff %.2e)\n", d.value, -1.0 / (2 * pi()),
                d.value + 1.0 / (2 * pi()));

    // collar: (1/delta) vol((bd S)_delta cap S) -> perimeter 4 - O(delta)
    for (double delta : {0.02, 0.01}) {
        auto reg = region_collar(square, 0.0, delta, CollarSide::Inside);
        auto v = integrate_region(reg, one, opt);
        std::printf("collar d=%.3f: %.8f (want %.8f)\n", delta, v.value / delta, 4 - 4 * delta);
    }

    // 1D oscillatory
    auto osc = integrate_1d([](double s) { return std::sin(1.0 / s); }, 1e-14, 1.0, 1e-10, 20000);
    std::printf("int sin(1/s)  = %.8f (≈0.50406706)\n", osc.value);

    // 3D cube volume and point-source integral
    auto cube = std::make_shared<BoxDomain>(Vec{0, 0, 0}, Vec{1, 1, 1}, 3);
    auto vc = integrate_domain(cube, one, opt);
    std::printf("vol cube      = %.8f (cells %ld)\n", vc.value, vc.cells);
    Integrand ps3;
    ps3.f = [](const Vec& p) { return 1.0 / (2.0 * pi() * dot(p, p, 3)); };
    ps3.singular = {{Vec{0, 0, 0}, 2.0, 0.2}};
    auto vps = integrate_domain(cube, ps3, opt);
    std::printf("int 1/(2pi r^2) cube = %.8f (cells %ld)\n", vps.value, vps.cells);

    auto t1 = std::chrono::steady_clock::now();
    std::printf("elapsed %.2f s\n", std::chrono::duration<double>(t1 - t0).count());
    return 0;
}
