#include "doctest.h"

#include <cmath>

#include "nilharm/plancherel.hpp"
#include "nilharm/quadrature.hpp"

using namespace nilharm::plancherel;
using nilharm::group::GroupPoint;
using nilharm::matpolar::OrthGroup;
using nilharm::matpolar::haar_quadrature;
using doctest::Approx;

namespace {

// exp(-|x|^2 - |a|^2)
std::complex<double> gaussian(const GroupPoint& p) { return std::exp(-p.x.squaredNorm() - p.a.squaredNorm()); }

// Its pairing with the spherical function of (r, lambda, l) for v = 2, 3, by separation of variables.
double gaussian_hat(int v, double r, double lam, int l) {
    const int z = v * (v - 1) / 2;
    double val = std::pow(M_PI, 0.5 * z) * std::exp(-lam * lam / 4) * 4 * M_PI * std::pow(4 - lam, l) / std::pow(4 + lam, l + 1);
    if (v == 3) val *= std::sqrt(M_PI) * std::exp(-r * r / 4);
    return val;
}

}  // namespace

TEST_CASE("normalizing constants") {
    CHECK(plancherel_constant(2) == Approx(std::pow(2 * M_PI, -2)).epsilon(1e-14));
    CHECK(plancherel_constant(4) == Approx(std::pow(2 * M_PI, -8)).epsilon(1e-14));
    CHECK(plancherel_constant(3) == Approx(2 * std::pow(2 * M_PI, -5)).epsilon(1e-14));
    CHECK(plancherel_density(2, Eigen::VectorXd::Constant(1, 1.7)) == Approx(2 * std::pow(2 * M_PI, -2) * 1.7).epsilon(1e-13));
    CHECK(plancherel_density(2, Eigen::VectorXd::Zero(1)) == 0.0);
    CHECK(plancherel_weight(nilharm::spherical::make_param(2, 0.0, {1.7}, {3})) ==
          Approx(plancherel_density(2, Eigen::VectorXd::Constant(1, 1.7))));
}

TEST_CASE("spectral measure reproduces the Gaussian norm for v = 2..5") {
    // sum over l of |<f, phi>|^2 for the Gaussian is pi^{z + 2v'} e^{-|lambda|^2/2} / prod(lambda) (times pi e^{-r^2/2} for odd v)
    for (int v = 2; v <= 5; ++v) {
        const int z = v * (v - 1) / 2, vp = v / 2;
        const auto g = nilharm::quad::composite_legendre(0.0, 12.0, 6, 20);
        double spectral = 0.0;
        if (vp == 1) {
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double l = g.x[i];
                spectral += g.w[i] * plancherel_density(v, Eigen::VectorXd::Constant(1, l)) / l * std::exp(-l * l / 2);
            }
        } else {
            for (std::size_t i = 0; i < g.size(); ++i)
                for (std::size_t j = 0; j < g.size(); ++j) {
                    const Eigen::Vector2d l(g.x[i], g.x[j]);
                    spectral += 0.5 * g.w[i] * g.w[j] * plancherel_density(v, l) / (l(0) * l(1)) * std::exp(-l.squaredNorm() / 2);
                }
        }
        spectral *= std::pow(M_PI, z + 2 * vp);
        if (v % 2) spectral *= M_PI * std::sqrt(M_PI / 2);
        CAPTURE(v);
        CHECK(spectral == Approx(std::pow(M_PI / 2, 0.5 * (v + z))).epsilon(1e-8));
    }
}

TEST_CASE("grids") {
    GridOptions o;
    o.lambda_cells = 20;
    o.l_max = 4;
    const SpectralGrid g2 = make_grid(2, OrthGroup::O, o);
    CHECK(g2.size() == 20 * 5);
    for (const auto& a : g2.atoms) CHECK(a.weight > 0);
    const SpectralGrid g2s = make_grid(2, OrthGroup::SO, o);
    CHECK(g2s.size() == 2 * g2.size());
    CHECK(g2s.atoms[0].weight == Approx(0.5 * g2.atoms[0].weight));
    o.r_cells = 6;
    const SpectralGrid g3 = make_grid(3, OrthGroup::O, o);
    CHECK(g3.size() == 20 * 6 * 5);
    const SpectralGrid g4 = make_grid(4, OrthGroup::O, o);
    CHECK(g4.size() == 190 * 15);
    for (const auto& a : g4.atoms) CHECK(a.param.lambda_star[0] > a.param.lambda_star[1]);
    CHECK_THROWS_AS(make_grid(3, OrthGroup::SO, o), std::invalid_argument);
}

TEST_CASE("v=2 Gaussian transforms") {
    for (double lam : {0.5, 2.0, 5.0})
        for (int l = 0; l <= 5; ++l) {
            const auto p = nilharm::spherical::make_param(2, 0.0, {lam}, {l});
            CAPTURE(lam);
            CAPTURE(l);
            CHECK(std::abs(transform_reduced(gaussian, p) - gaussian_hat(2, 0, lam, l)) < 1e-10);
        }
    const auto kq = haar_quadrature(2, OrthGroup::O, 1);
    for (double lam : {0.5, 2.0})
        for (int l : {0, 3}) {
            const auto p = nilharm::spherical::make_param(2, 0.0, {lam}, {l});
            const auto d = transform_direct(gaussian, p, kq);
            CHECK(!d.radial_warning);
            CHECK(std::abs(d.value - transform_reduced(gaussian, p)) < 1e-4);
        }
    const auto zero = transform_reduced([](const GroupPoint&) { return std::complex<double>(0.0); },
                                        nilharm::spherical::make_param(2, 0.0, {1.0}, {0}));
    CHECK(zero == std::complex<double>(0.0));
    // phi = 1 gives the integral
    const auto one = transform_direct(gaussian, nilharm::spherical::make_param(2, 0.0, {0.0}, {}), kq);
    CHECK(one.value.real() == Approx(std::pow(M_PI, 1.5)).epsilon(1e-8));
    const auto bad = transform_direct([](const GroupPoint& p) { return std::complex<double>(p.x(0)); },
                                      nilharm::spherical::make_param(2, 0.0, {1.0}, {0}), kq);
    CHECK(bad.radial_warning);
}

TEST_CASE("v=3 Gaussian transforms") {
    ReducedOptions ro;
    ro.r_box = 6;
    ro.r_panels = 2;
    ro.a_box = 6;
    ro.a_panels = 3;
    ro.x_box = 6;
    ro.x_panels = 2;
    ro.marginal_panels = 2;
    for (double r : {0.0, 1.3})
        for (int l : {0, 2}) {
            const auto p = nilharm::spherical::make_param(3, r, {1.5}, {l});
            CHECK(std::abs(transform_reduced(gaussian, p, ro) - gaussian_hat(3, r, 1.5, l)) < 1e-6);
        }
    const auto kq = haar_quadrature(3, OrthGroup::O, 2);
    nilharm::group::HaarOptions h;
    h.samples = 20000;
    h.scale = 0.6;
    for (int l : {0, 1}) {
        const auto p = nilharm::spherical::make_param(3, 0.7, {1.2}, {l});
        const auto d = transform_direct(gaussian, p, kq, h);
        const double ref = gaussian_hat(3, 0.7, 1.2, l);
        CAPTURE(l);
        CHECK(std::abs(d.value - ref) < 0.02 * std::abs(ref));
    }
    CHECK_THROWS_AS(transform_reduced(gaussian, nilharm::spherical::make_param(4, 0.0, {2.0, 1.0}, {0, 0})),
                    std::invalid_argument);
}

TEST_CASE("Parseval for the v=2 Gaussian improves under refinement") {
    const double exact = std::pow(M_PI / 2, 1.5);
    double last = 1e9;
    for (int k = 0; k < 3; ++k) {
        GridOptions o;
        o.lambda_min = 0.2 / std::pow(4.0, k);
        o.l_max = 10 * (1 << (2 * k));
        o.lambda_cells = 100 + 100 * k;
        const SpectralGrid g = make_grid(2, OrthGroup::O, o);
        const auto ghat = transform_grid(gaussian, g);
        const auto res = parseval_residual(gaussian, ghat, g);
        CHECK(res.group_norm2 == Approx(exact).epsilon(1e-10));
        MESSAGE("Parseval relative residual " << res.relative);
        CHECK(res.relative < last);
        last = res.relative;
    }
    CHECK(last < 0.02);
}

TEST_CASE("v=2 inversion of the Gaussian") {
    GridOptions o;
    o.lambda_min = 0.005;
    o.l_max = 200;
    const SpectralGrid g = make_grid(2, OrthGroup::O, o);
    const auto ghat = sample_on_grid([](const auto& p) { return std::complex<double>(gaussian_hat(2, 0, p.lambda_star[0], p.l[0])); }, g);
    const auto kq = haar_quadrature(2, OrthGroup::O, 1);
    const auto at_e = inversion(ghat, nilharm::group::identity(2), g, kq);
    CHECK(at_e.value.real() == Approx(1.0).epsilon(0.02));
    for (int t = 0; t < 5; ++t) {
        const GroupPoint p = nilharm::group::random_point(2, 40 + t, 0.7);
        CHECK(std::abs(inversion(ghat, p, g, kq).value - gaussian(p)) < 0.02);
    }
    const std::vector<std::complex<double>> zero(g.size(), 0.0);
    CHECK(inversion(zero, nilharm::group::identity(2), g, kq).value == std::complex<double>(0.0));
}

TEST_CASE("v=2 roundtrip from a spectral bump") {
    const SpectralGrid g = make_grid(2, OrthGroup::O);
    auto bump = [](const nilharm::spherical::SphericalParam& p) {
        const double d = p.lambda_star[0] - 2.0;
        return p.l[0] <= 2 ? std::complex<double>((1.0 + 0.5 * p.l[0]) * std::exp(-2.0 * d * d)) : 0.0;
    };
    const auto ghat = sample_on_grid(bump, g);
    const auto kq = haar_quadrature(2, OrthGroup::O, 1);
    const auto f = inverse_function(ghat, g, kq);
    const auto back = transform_grid(f, g);
    double peak = 0.0;
    for (const auto& x : ghat) peak = std::max(peak, std::abs(x));
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::abs(ghat[i]) > 0.05 * peak) worst = std::max(worst, std::abs(back[i] - ghat[i]) / std::abs(ghat[i]));
    MESSAGE("roundtrip relative error " << worst);
    CHECK(worst < 0.02);
    const auto pr = parseval_residual(f, ghat, g);
    MESSAGE("bump Parseval relative residual " << pr.relative);
    CHECK(pr.relative < 0.02);
    CHECK(tail_ratio(ghat, g) < 1e-3);
}

TEST_CASE("heat kernel") {
    GridOptions o;
    o.l_max = 100;
    o.lambda_min = 0.005;
    const SpectralGrid g = make_grid(2, OrthGroup::O, o);
    const double t = 1.0;
    const auto kq = haar_quadrature(2, OrthGroup::O, 1);
    const auto h = multiplier_kernel([t](double e) { return std::complex<double>(std::exp(-t * e)); }, g, kq);
    MESSAGE("heat tail ratio " << h.tail_ratio);
    CHECK(h.tail_ratio < 0.02);
    // closed-form l-sum leaves a one-dimensional integral in lambda
    auto heat = [t](double rho2, double a) {
        const auto q = nilharm::quad::composite_legendre(0.0, 60.0, 40, 16);
        double s = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double l = q.x[i];
            s += q.w[i] * l / (2 * std::sinh(t * l)) * std::exp(-l * rho2 / (4 * std::tanh(t * l))) * std::cos(l * a);
        }
        return s * 2 / (4 * M_PI * M_PI);
    };
    for (int k = 0; k < 4; ++k) {
        const GroupPoint p = nilharm::group::random_point(2, 90 + k, 0.6);
        const double ref = heat(p.x.squaredNorm(), p.a(0));
        CHECK(std::abs(h.eval(p).real() - ref) < 0.02 * heat(0, 0));
        const Eigen::MatrixXd r = nilharm::matpolar::random_orthogonal(2, k + 3);
        CHECK(std::abs(h.eval(nilharm::group::k_action(r, p)) - h.eval(p)) < 1e-10);
    }
    ReducedOptions ro;
    ro.a_box = 6;
    ro.a_panels = 12;
    const auto back = transform_grid(h.eval, g, ro);
    double worst = 0.0, worst_abs = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.atoms[i].param.lambda_star[0] < 0.5) continue;
        const double e = std::abs(back[i] - h.ghat[i]);
        peak = std::max(peak, std::abs(h.ghat[i]));
        worst_abs = std::max(worst_abs, e);
        if (std::abs(h.ghat[i]) > 0.1) worst = std::max(worst, e / std::abs(h.ghat[i]));
    }
    MESSAGE("heat roundtrip absolute error " << worst_abs);
    CHECK(worst_abs < 0.02 * peak);
    MESSAGE("heat roundtrip relative error " << worst);
    CHECK(worst < 0.02);
    const auto zero = multiplier_kernel([](double) { return std::complex<double>(0.0); }, g, kq);
    CHECK(zero.eval(nilharm::group::identity(2)) == std::complex<double>(0.0));
}
