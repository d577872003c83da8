#include "doctest.h"

#include <cmath>

#include "nilharm/quadrature.hpp"

using namespace nilharm::quad;
using doctest::Approx;

TEST_CASE("Gauss-Legendre integrates polynomials") {
    const Rule r = gauss_legendre(10, 0.0, 2.0);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::pow(r.x[i], 19);
    CHECK(s == Approx(std::pow(2.0, 20) / 20).epsilon(1e-13));
    const Rule big = gauss_legendre(1500);
    double c = 0.0;
    for (std::size_t i = 0; i < big.size(); ++i) c += big.w[i] * std::cos(300 * big.x[i]);
    CHECK(c == Approx(2 * std::sin(300.0) / 300).epsilon(1e-10).scale(1e-3));
}

TEST_CASE("Gauss-Jacobi moments") {
    for (double a : {-0.5, 0.0, 0.5, 2.0})
        for (double b : {-0.5, 0.5, 1.5}) {
            const Rule r = gauss_jacobi(12, a, b);
            double s = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::pow(1 + r.x[i], 3);
            // int (1-x)^a (1+x)^{b+3} dx = 2^{a+b+4} B(a+1, b+4)
            const double ref = std::pow(2.0, a + b + 4) * std::tgamma(a + 1) * std::tgamma(b + 4) / std::tgamma(a + b + 5);
            CHECK(s == Approx(ref).epsilon(1e-12));
        }
}

TEST_CASE("Gauss-Laguerre and Gauss-Hermite") {
    const Rule l = gauss_laguerre(20, 1.5);
    double s = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) s += l.w[i] * l.x[i] * l.x[i];
    CHECK(s == Approx(std::tgamma(4.5)).epsilon(1e-12));
    const Rule h = gauss_hermite(20);
    double g = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) g += h.w[i] * std::pow(h.x[i], 4);
    CHECK(g == Approx(0.75 * std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("sphere rules") {
    for (int n = 1; n <= 6; ++n) {
        const SphereRule r = sphere_rule(n, 6);
        double area = 0.0, second = 0.0;
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            CHECK(r.x[i].norm() == Approx(1.0).epsilon(1e-14));
            area += r.w[i];
            second += r.w[i] * r.x[i](0) * r.x[i](0);
        }
        CHECK(area == Approx(sphere_area(n)).epsilon(1e-13));
        CHECK(second == Approx(sphere_area(n) / n).epsilon(1e-12));
    }
    CHECK(sphere_area(3) == Approx(4 * M_PI));
}

TEST_CASE("Dirichlet rule moments") {
    const SimplexRule r = dirichlet_rule({1.0, 1.0, 0.5}, 8);
    double total = 0.0, m1 = 0.0, m3 = 0.0;
    for (std::size_t i = 0; i < r.t.size(); ++i) {
        total += r.w[i];
        m1 += r.w[i] * r.t[i][0];
        m3 += r.w[i] * r.t[i][2];
        CHECK(r.t[i][0] + r.t[i][1] + r.t[i][2] == Approx(1.0));
    }
    CHECK(total == Approx(1.0).epsilon(1e-13));
    CHECK(m1 == Approx(1.0 / 2.5).epsilon(1e-13));
    CHECK(m3 == Approx(0.5 / 2.5).epsilon(1e-13));
}
