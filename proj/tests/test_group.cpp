#include "doctest.h"

#include <cmath>
#include <random>

#include "nilharm/group.hpp"

using namespace nilharm::group;
using doctest::Approx;

namespace {

Eigen::MatrixXd random_orthogonal(int v, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0, 1);
    Eigen::MatrixXd g(v, v);
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) g(i, j) = n(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    return qr.householderQ();
}

double dist(const GroupPoint& p, const GroupPoint& q) { return (p.x - q.x).norm() + (p.a - q.a).norm(); }

double gaussian(const GroupPoint& p) { return std::exp(-p.x.squaredNorm() - p.a.squaredNorm()); }

}  // namespace

TEST_CASE("dimensions") {
    const GroupDims d = GroupDims::of(4);
    CHECK(d.v_prime == 2);
    CHECK(d.z == 6);
    CHECK(d.Q == 16);
    CHECK(GroupDims::of(5).even == false);
    CHECK_THROWS(GroupDims::of(1));
    CHECK(pair_index(0, 1, 4) == 0);
    CHECK(pair_index(2, 3, 4) == 5);
    CHECK(pair_index(3, 1, 4) == 4);
}

TEST_CASE("group law") {
    for (int v = 2; v <= 5; ++v) {
        const GroupPoint e = identity(v);
        for (int t = 0; t < 50; ++t) {
            const GroupPoint p = random_point(v, 100 + t), q = random_point(v, 200 + t), r = random_point(v, 300 + t);
            CHECK(dist(product(p, e), p) == 0.0);
            CHECK(dist(product(p, inverse(p)), e) < 1e-15);
            CHECK(dist(product(product(p, q), r), product(p, product(q, r))) < 1e-12);
        }
    }
    GroupPoint x1 = identity(2), x2 = identity(2);
    x1.x(0) = 1.0;
    x2.x(1) = 1.0;
    CHECK(product(x1, x2).a(0) == Approx(0.5));
    CHECK_THROWS(product(identity(2), identity(3)));
}

TEST_CASE("dilations and the Koranyi norm") {
    GroupPoint p = identity(3);
    p.x(0) = 2.0;
    CHECK(koranyi_norm(p) == Approx(2.0).epsilon(1e-15));
    GroupPoint q = identity(2);
    q.a(0) = 16.0;
    CHECK(koranyi_norm(q) == Approx(4.0).epsilon(1e-15));
    CHECK_THROWS(dilate(0.0, p));
    for (int t = 0; t < 100; ++t) {
        const GroupPoint g = random_point(4, t);
        CHECK(dist(dilate(1.0, g), g) == 0.0);
        CHECK(dist(dilate(1.7, dilate(0.3, g)), dilate(1.7 * 0.3, g)) < 1e-14);
        const double r = 0.1 + 0.37 * t;
        CHECK(std::abs(koranyi_norm(dilate(r, g)) - r * koranyi_norm(g)) < 1e-12 * r * koranyi_norm(g));
        CHECK(koranyi_norm(inverse(g)) == koranyi_norm(g));
    }
}

TEST_CASE("quasi-norm constant stays bounded") {
    double worst = 0.0;
    for (int t = 0; t < 2000; ++t) {
        const GroupPoint p = random_point(3, 5000 + t, std::exp((t % 7) - 3.0));
        const GroupPoint q = random_point(3, 9000 + t, std::exp((t % 5) - 2.0));
        worst = std::max(worst, koranyi_norm(product(p, q)) / (koranyi_norm(p) + koranyi_norm(q)));
    }
    CHECK(worst < 2.0);
}

TEST_CASE("orthogonal action") {
    for (int v = 2; v <= 5; ++v)
        for (int t = 0; t < 20; ++t) {
            const Eigen::MatrixXd k = random_orthogonal(v, 40 + t);
            const GroupPoint p = random_point(v, t), q = random_point(v, 77 + t);
            CHECK(dist(k_action(Eigen::MatrixXd::Identity(v, v), p), p) < 1e-15);
            CHECK(std::abs(koranyi_norm(k_action(k, p)) - koranyi_norm(p)) < 1e-12);
            CHECK(dist(k_action(k, product(p, q)), product(k_action(k, p), k_action(k, q))) < 1e-10);
        }
    CHECK_THROWS(k_action(2.0 * Eigen::MatrixXd::Identity(2, 2), identity(2)));
}

TEST_CASE("Haar integration") {
    const GroupDims d2 = GroupDims::of(2);
    const auto g2 = haar_integrate_group([](const GroupPoint& p) { return gaussian(p); }, d2);
    CHECK(g2.value.real() == Approx(std::pow(M_PI, 1.5)).epsilon(1e-10));
    CHECK_FALSE(g2.tail_warning);
    const auto odd = haar_integrate_group([](const GroupPoint& p) { return p.x(0) * gaussian(p); }, d2);
    CHECK(std::abs(odd.value) < 1e-12);
    GroupPoint shift = random_point(2, 3, 0.5);
    const auto tr = haar_integrate_group(
        [&](const GroupPoint& p) { return gaussian(product(shift, p)); }, d2);
    CHECK(tr.value.real() == Approx(std::pow(M_PI, 1.5)).epsilon(1e-6));

    const GroupDims d3 = GroupDims::of(3);
    HaarOptions opt;
    opt.box = 5.0;
    const auto g3 = haar_integrate_group([](const GroupPoint& p) { return gaussian(p); }, d3, opt);
    CHECK(g3.value.real() == Approx(std::pow(M_PI, 3.0)).epsilon(1e-2));
    CHECK(g3.error_estimate < 0.01 * std::pow(M_PI, 3.0));
}

TEST_CASE("sphere measure") {
    for (int v = 2; v <= 4; ++v) {
        const GroupDims d = GroupDims::of(v);
        const auto rules = sphere_pairing_rules(d, v == 4 ? 3 : 10, 24);
        const auto one = sphere_pairing([](const GroupPoint&) { return 1.0; }, 1.3, d, rules);
        CHECK(one.real() == Approx(mu_mass(d)).epsilon(1e-9));
    }
    const GroupDims d2 = GroupDims::of(2);
    const auto rules = sphere_pairing_rules(d2, 16);
    double prev = 1e300;
    for (double s : {0.5, 0.8, 1.0, 1.2}) {
        const double val = sphere_pairing([](const GroupPoint& p) { return std::exp(-std::pow(koranyi_norm(p), 8)); },
                                          s, d2, rules).real();
        CHECK(val < prev);
        CHECK(val == Approx(mu_mass(d2) * std::exp(-std::pow(s, 8))).epsilon(1e-9));
        prev = val;
    }
    const GroupDims d3 = GroupDims::of(3);
    const auto r3 = sphere_pairing_rules(d3, 10);
    const Eigen::MatrixXd k = random_orthogonal(3, 11);
    auto f = [](const GroupPoint& p) { return std::exp(-p.x(0) * p.x(0) - 2 * p.a(1) * p.a(1) + p.x(2)); };
    const auto a = sphere_pairing(f, 1.1, d3, r3);
    const auto b = sphere_pairing([&](const GroupPoint& p) { return f(k_action(k, p)); }, 1.1, d3, r3);
    CHECK(std::abs(a - b) < 1e-6);
}

TEST_CASE("polar identity") {
    auto f = [](const GroupPoint& p) { return std::complex<double>(gaussian(p)); };
    CHECK(polar_identity_residual([](const GroupPoint&) { return 0.0; }, GroupDims::of(2), 8, 16) == 0.0);
    CHECK(polar_identity_residual(f, GroupDims::of(2), 16, 24) < 1e-4);
    HaarOptions opt;
    opt.box = 5.0;
    CHECK(polar_identity_residual(f, GroupDims::of(3), 8, 16, opt) / std::pow(M_PI, 3.0) < 1e-2);
}

TEST_CASE("type-H models") {
    const TypeHModel h1 = typeh_heisenberg(1);
    CHECK((h1.J[0] * h1.J[0] + Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);
    CHECK(typeh_heisenberg(2).valid());
    const TypeHModel prod = typeh_product(typeh_heisenberg(1), typeh_heisenberg(2));
    CHECK(prod.v_dim == 6);
    CHECK(prod.valid());
    CHECK_FALSE(typeh_direct_product(typeh_heisenberg(1), typeh_heisenberg(1)).valid());
    const TypeHPoint p{Eigen::Vector2d(1, 0), Eigen::VectorXd::Zero(1)};
    const TypeHPoint q{Eigen::Vector2d(0, 1), Eigen::VectorXd::Zero(1)};
    CHECK(typeh_product_law(h1, p, q).zc(0) == Approx(0.5));
}
