#include "doctest.h"

#include <cmath>
#include <random>

#include "nilharm/multiplier.hpp"

using namespace nilharm::multiplier;
using nilharm::group::GroupPoint;
using nilharm::matpolar::OrthGroup;
using nilharm::matpolar::haar_quadrature;
using doctest::Approx;

namespace {

double smooth_bump(double u) { return std::abs(u) < 1 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

}  // namespace

TEST_CASE("bump function") {
    CHECK(bump(0.5) == 0.0);
    CHECK(bump(2.0) == 0.0);
    CHECK(bump(0.3) == 0.0);
    CHECK(bump(-1.0) == 0.0);
    CHECK(bump(1.0) + bump(2.0) + bump(0.5) == Approx(1.0).epsilon(1e-15));
    double worst = 0.0;
    for (double e = -6; e <= 6; e += 0.0137) {
        const double y = std::pow(10.0, e);
        double s = 0.0;
        for (int j = -30; j <= 30; ++j) s += bump(std::ldexp(y, -j));
        worst = std::max(worst, std::abs(s - 1.0));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("index bookkeeping") {
    MultIndex idx{std::nullopt, {1, 2}, {2}, {0, 3}};
    CHECK(pair_index(0, 1, 2) == 0);
    CHECK(pair_index(1, 3, 4) == 4);
    CHECK(s_iota(idx) == Approx(std::exp2(0.5) + std::exp2(4.0)));
    CHECK(d_eta_delta(idx, 4) == Approx(2 + 0.75));
    CHECK(L_iota(idx) == Approx(2 + 4 * 1));
    CHECK(D_iota(idx) == Approx(8 * 1 + 4 * 3));
    CHECK(in_index_set(idx, 4));
    CHECK_FALSE(in_index_set(idx, 5));
    MultIndex odd{1, {0}, {}, {2}};
    CHECK(in_index_set(odd, 3));
    CHECK(s_iota(odd) == Approx(std::exp2(2.0) + std::exp2(0.5)));
    CHECK(R_iota(odd) == Approx(0.5));
    CHECK(D_iota(odd) == Approx(1 + 8));
    CHECK(d_eta_delta(odd, 3) == 0.0);
    MultIndex bad{std::nullopt, {3, 1}, {2}, {0, 0}};
    CHECK_FALSE(in_index_set(bad, 4));
}

TEST_CASE("partition of unity on random parameters") {
    for (int v = 2; v <= 5; ++v) {
        const auto rep = partition_check(v, 1000, 42 + v);
        CHECK(rep.max_error < 1e-12);
        CHECK(rep.max_active <= rep.bound);
        CHECK(rep.all_in_index_set);
        CHECK(rep.min_energy_ratio >= 0.25);
        CHECK(rep.max_energy_ratio <= 16.0);
        CHECK(rep.max_h_error < 1e-12);
    }
}

TEST_CASE("support of chi_iota") {
    std::mt19937_64 rng(3);
    for (int v : {3, 4, 5})
        for (int k = 0; k < 200; ++k) {
            const PPoint p = random_point(v, rng);
            for (const auto& idx : enumerate_active(v, p)) {
                CHECK(chi_iota(idx, p) > 0);
                for (std::size_t i = 0; i < p.lambda.size(); ++i) {
                    const double q = p.lambda[i] * p.lambda[i];
                    CHECK((q > std::exp2(idx.eta[i] - 1) && q < std::exp2(idx.eta[i] + 1)));
                    CHECK((p.l[i] + 1 > std::exp2(idx.zeta[i] - 1) && p.l[i] + 1 < std::exp2(idx.zeta[i] + 1)));
                }
                if (idx.theta) {
                    const double q = std::pow(p.r, 4);
                    CHECK((q > std::exp2(*idx.theta - 1) && q < std::exp2(*idx.theta + 1)));
                }
            }
        }
}

TEST_CASE("printed delta bound rejects active indices") {
    std::mt19937_64 rng(5);
    int rejected = 0;
    for (int k = 0; k < 500; ++k) {
        const PPoint p = random_point(4, rng);
        for (const auto& idx : enumerate_active(4, p)) rejected += !in_index_set(idx, 4, true);
    }
    CHECK(rejected > 0);
}

TEST_CASE("degenerate points have no active index") {
    CHECK(enumerate_active(4, PPoint{0.0, {1.0, 1.0}, {0, 0}}).empty());
    CHECK(enumerate_active(3, PPoint{0.0, {1.0}, {0}}).empty());
    CHECK_THROWS_AS(enumerate_active(4, PPoint{0.0, {1.0}, {0}}), std::invalid_argument);
}

TEST_CASE("Xi identity") {
    std::mt19937_64 rng(8);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const GroupPoint n = nilharm::group::random_point(2, 100 + k, 1.5);
        const auto eval = spherical_eval(2, n);
        const PPoint p{0.0, {0.3 + 0.1 * k}, {k % 6}};
        const auto lhs = xi_apply(2, eval, p);
        worst = std::max(worst, std::abs(lhs - n.x.squaredNorm() * eval(p)));
    }
    CHECK(worst < 1e-8);
    GroupPoint n0 = nilharm::group::random_point(2, 9, 1.0);
    n0.x.setZero();
    CHECK(std::abs(xi_apply(2, spherical_eval(2, n0), PPoint{0.0, {1.2}, {3}})) < 1e-12);

    const auto kq = haar_quadrature(3, OrthGroup::O, 8);
    for (int k = 0; k < 4; ++k) {
        const GroupPoint n = nilharm::group::random_point(3, 200 + k, 1.0);
        const auto eval = spherical_eval(3, n, &kq);
        const PPoint p{0.7, {0.9}, {k}};
        CHECK(std::abs(xi_apply(3, eval, p, {1e-3, 1e-2}) - n.x.squaredNorm() * eval(p)) < 1e-3);
    }
}

TEST_CASE("aleph identity") {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const GroupPoint n = nilharm::group::random_point(2, 300 + k, 1.5);
        const auto eval = spherical_eval(2, n);
        const PPoint p{0.0, {0.4 + 0.1 * k}, {k % 5}};
        worst = std::max(worst, std::abs(aleph_apply(2, eval, p, {1e-2, 1e-2}) - n.a.squaredNorm() * eval(p)));
    }
    CHECK(worst < 1e-3);
    GroupPoint n0 = nilharm::group::random_point(2, 9, 1.0);
    n0.a.setZero();
    CHECK(std::abs(aleph_apply(2, spherical_eval(2, n0), PPoint{0.0, {1.2}, {2}}, {1e-2, 1e-2})) < 1e-3);

    const auto kq3 = haar_quadrature(3, OrthGroup::O, 8);
    for (int k = 0; k < 3; ++k) {
        const GroupPoint n = nilharm::group::random_point(3, 500 + k, 0.8);
        const auto eval = spherical_eval(3, n, &kq3);
        const PPoint p{0.7, {0.9}, {k}};
        CHECK(std::abs(aleph_apply(3, eval, p, {1e-2, 1e-2}) - n.a.squaredNorm() * eval(p)) < 1e-2);
    }
    CHECK_THROWS_AS(aleph_apply(4, spherical_eval(2, n0), PPoint{0.0, {1.0, 1.001}, {0, 0}}), std::domain_error);
}

TEST_CASE("aleph identity with Monte Carlo K-averages") {
    for (int v : {4, 5}) {
        const auto kq = haar_quadrature(v, OrthGroup::O, 20000);
        const GroupPoint n = nilharm::group::random_point(v, 900, 0.7);
        const auto eval = spherical_eval(v, n, &kq);
        const PPoint p{v == 5 ? 0.5 : 0.0, {0.6, 1.3}, {0, 1}};
        CHECK(std::abs(aleph_apply(v, eval, p, {1e-2, 1e-2}) - n.a.squaredNorm() * eval(p)) < 0.05);
    }
}

namespace {

GridFunction line_grid(int n, double step, int ln) {
    GridFunction g;
    g.lambda_axes.push_back({0.0, step, n});
    g.l_axes.push_back({0, ln});
    g.values.assign(g.size(), 0.0);
    return g;
}

}  // namespace

TEST_CASE("T norms on the Fourier side") {
    GridFunction g = line_grid(8, 0.5, 8);
    g.values[3 * 8 + 4] = 1.0;
    CHECK(t_norm_weighted(g, 1.0, 1.0, 1.0, 0.0).norm == Approx(std::sqrt(0.5)).epsilon(1e-12));
    // (Id + Delta^* Delta) on a spike: 3 at the spike, -1 at both neighbours
    CHECK(t_norm_weighted(g, 0.0, 0.0, 1.0, 1.0).norm == Approx(std::sqrt(0.5 * 11)).epsilon(1e-12));
    CHECK(t_norm_weighted(g, 0.0, 0.0, 1.0, 1.0, 1).norm == Approx(std::sqrt(0.5 * 11)).epsilon(1e-12));

    GridFunction gauss = line_grid(400, 0.05, 1);
    for (int k = 0; k < 400; ++k) {
        const double x = -10 + 0.05 * k;
        gauss.values[k] = std::exp(-x * x / 2);
    }
    CHECK(t_norm_weighted(gauss, 1.0, 0.0, 0.0, 1.0).norm == Approx(std::sqrt(2.75 * std::sqrt(M_PI))).epsilon(1e-10));
    CHECK(t_norm_weighted(gauss, 1.0, 0.0, 0.0, 0.0).norm == Approx(std::sqrt(std::sqrt(M_PI))).epsilon(1e-10));

    GridFunction mixed = line_grid(64, 0.1, 12);
    for (int a = 0; a < 64; ++a)
        for (int b = 0; b < 12; ++b) mixed.values[a * 12 + b] = std::exp(-std::pow(0.1 * a - 3.2, 2)) * std::sin(0.7 * b + 0.3);
    const double once = t_norm_weighted(mixed, 2.0, 0.0, 3.0, 1.0).norm;
    const double twice = t_norm_weighted(t_apply_weighted(mixed, 2.0, 0.0, 3.0, 0.5), 2.0, 0.0, 3.0, 0.5, 1).norm;
    CHECK(twice == Approx(once).epsilon(1e-10));

    const MultIndex idx{std::nullopt, {0}, {}, {1}};
    CHECK(t_iota_norm(mixed, idx, 0.7).norm ==
          Approx(t_norm_weighted(mixed, std::exp2(0.5 * L_iota(idx)), 1.0, std::exp2(0.5 * D_iota(idx)), 0.7).norm));
}

TEST_CASE("multiplier criterion") {
    const SpectralEval zero = [](const PPoint&) { return cplx(0.0); };
    CriterionOptions opt;
    opt.eps = 2.5;
    const Window w{0.7, 1.3, 0.1, 6};
    CHECK(multiplier_criterion(2, zero, w, opt).value == 0.0);
    CriterionOptions bad = opt;
    bad.eps = 2.0;
    CHECK_THROWS_AS(multiplier_criterion(2, zero, w, bad), std::invalid_argument);
    CHECK_THROWS_AS(multiplier_criterion(2, zero, Window{0.0, 1.0, 0.1, 3}, opt), std::invalid_argument);
    CHECK_THROWS_AS(multiplier_criterion(3, zero, Window{0.5, 1.0, 0.1, 3, 0.0, 1.0}, opt), std::invalid_argument);

    const SpectralEval cell = [](const PPoint& p) {
        return cplx(smooth_bump((p.lambda[0] - 1.0) / 0.25) * smooth_bump((p.l[0] - 3.0) / 3.0));
    };
    std::vector<double> vals;
    for (int m : {128, 256, 512}) {
        opt.points_per_axis = m;
        vals.push_back(multiplier_criterion(2, cell, w, opt).value);
    }
    CHECK(vals.back() > 0);
    CHECK(std::abs(vals[1] - vals[2]) < 0.05 * vals[2]);
    CHECK(std::abs(vals[0] - vals[2]) < 0.05 * vals[2]);

    opt.points_per_axis = 128;
    const SpectralEval one = [](const PPoint&) { return cplx(1.0); };
    std::vector<double> growth;
    for (int k = 1; k <= 4; ++k) {
        const Window wk{std::exp2(-0.5 * k), std::exp2(0.5 * k), 0.1, (1 << k) - 1};
        growth.push_back(multiplier_criterion(2, one, wk, opt).value);
    }
    for (std::size_t i = 1; i < growth.size(); ++i) CHECK(growth[i] > growth[i - 1]);
    CHECK(growth.back() > 2 * growth.front());
}
