#include "nilharm/spherical.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "nilharm/specfun.hpp"

namespace nilharm::spherical {

using group::GroupPoint;

int SphericalParam::v0() const {
    int n = 0;
    for (double x : lambda_star)
        if (x > 0) ++n;
    return n;
}

std::vector<double> SphericalParam::distinct() const {
    std::vector<double> out;
    for (double x : lambda_star)
        if (x > 0 && (out.empty() || out.back() != x)) out.push_back(x);
    return out;
}

int SphericalParam::v1() const { return static_cast<int>(distinct().size()); }

std::vector<int> SphericalParam::multiplicities() const {
    std::vector<int> m;
    double last = -1.0;
    for (double x : lambda_star) {
        if (x <= 0) continue;
        if (x == last) ++m.back();
        else m.push_back(1);
        last = x;
    }
    return m;
}

SphericalParam make_param(int v, double r_star, std::vector<double> lambda_star, std::vector<int> l,
                          std::optional<int> epsilon) {
    if (v < 2) throw std::invalid_argument("spherical parameter: v must be at least 2");
    if (static_cast<int>(lambda_star.size()) != v / 2)
        throw std::invalid_argument("spherical parameter: lambda must have length v/2");
    if (!(r_star >= 0)) throw std::invalid_argument("spherical parameter: r must be nonnegative");
    for (std::size_t i = 0; i < lambda_star.size(); ++i) {
        if (!(lambda_star[i] >= 0)) throw std::invalid_argument("spherical parameter: lambda must be nonnegative");
        if (i > 0 && lambda_star[i] > lambda_star[i - 1])
            throw std::invalid_argument("spherical parameter: lambda must be weakly decreasing");
    }
    for (int x : l)
        if (x < 0) throw std::invalid_argument("spherical parameter: l must be nonnegative");
    if (epsilon && *epsilon != 1 && *epsilon != -1)
        throw std::invalid_argument("spherical parameter: epsilon must be +1 or -1");
    SphericalParam p{v, r_star, std::move(lambda_star), std::move(l), epsilon};
    if (static_cast<int>(p.l.size()) != p.v1())
        throw std::invalid_argument("spherical parameter: l needs one entry per distinct nonzero lambda");
    if (2 * p.v0() == v && r_star != 0.0)
        throw std::invalid_argument("spherical parameter: r must vanish when 2 v0 = v");
    return p;
}

cplx theta_eval(const SphericalParam& param, const GroupPoint& p) {
    const int v = param.v;
    if (p.v() != v) throw std::invalid_argument("theta_eval: dimension mismatch");
    const int vp = v / 2;
    double phase = param.r_star * p.x(v - 1);
    for (int b = 0; b < vp; ++b) {
        double lam = param.lambda_star[b];
        if (b == vp - 1 && param.epsilon) lam *= *param.epsilon;
        if (lam != 0.0) phase += lam * p.a(group::pair_index(2 * b, 2 * b + 1, v));
    }
    const auto m = param.multiplicities();
    const auto lam = param.distinct();
    double prod = 1.0;
    int b = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
        double r2 = 0.0;
        for (int c = 0; c < m[j]; ++c, ++b) r2 += p.x(2 * b) * p.x(2 * b) + p.x(2 * b + 1) * p.x(2 * b + 1);
        prod *= specfun::laguerre_norm(param.l[j], m[j] - 1.0, 0.5 * lam[j] * r2);
    }
    return std::polar(prod, phase);
}

namespace {

void check_tag(const SphericalParam& param, const matpolar::OrthQuadrature& kq) {
    const bool so = (kq.group == matpolar::OrthGroup::SO);
    if (so != param.epsilon.has_value())
        throw std::invalid_argument("phi_eval: quadrature group does not match epsilon");
    if (!kq.nodes.empty() && kq.nodes.front().rows() != param.v)
        throw std::invalid_argument("phi_eval: quadrature dimension mismatch");
}

}  // namespace

double phi_bessel(double r_star, const GroupPoint& p) {
    return specfun::bessel_reduced(0.5 * (p.v() - 2), r_star * p.x.norm());
}

cplx phi_eval(const SphericalParam& param, const GroupPoint& p, const matpolar::OrthQuadrature& kq) {
    check_tag(param, kq);
    if (param.lambda_zero()) return phi_bessel(param.r_star, p);
    cplx sum = 0.0;
    double wsum = 0.0;
    for (std::size_t i = 0; i < kq.nodes.size(); ++i) {
        sum += kq.weights[i] * theta_eval(param, group::k_action(kq.nodes[i], p));
        wsum += kq.weights[i];
    }
    return sum / wsum;
}

double phi_v2_closed(double lambda, int l, const GroupPoint& p) {
    return std::cos(lambda * p.a(0)) * specfun::laguerre_norm(l, 0.0, 0.5 * lambda * p.x.squaredNorm());
}

HeisenbergPoint heisenberg_product(const HeisenbergPoint& p, const HeisenbergPoint& q) {
    HeisenbergPoint out{p.z, p.t + q.t};
    for (std::size_t i = 0; i < p.z.size(); ++i) {
        out.z[i] += q.z[i];
        out.t += 0.5 * std::imag(p.z[i] * std::conj(q.z[i]));
    }
    return out;
}

cplx heisenberg_spherical(const HeisenbergParam& hp, const std::vector<cplx>& z, double t) {
    int total = 0;
    for (int mj : hp.m) {
        if (mj <= 0) throw std::invalid_argument("heisenberg_spherical: partition entries must be positive");
        total += mj;
    }
    if (total != static_cast<int>(z.size())) throw std::invalid_argument("heisenberg_spherical: partition mismatch");
    std::vector<double> r2;
    int c = 0;
    for (int mj : hp.m) {
        double s = 0.0;
        for (int k = 0; k < mj; ++k, ++c) s += std::norm(z[c]);
        r2.push_back(s);
    }
    if (const auto* lag = std::get_if<HeisenbergLaguerre>(&hp.family)) {
        if (lag->l.size() != hp.m.size()) throw std::invalid_argument("heisenberg_spherical: l size mismatch");
        double prod = 1.0;
        for (std::size_t j = 0; j < hp.m.size(); ++j)
            prod *= specfun::laguerre_norm(lag->l[j], hp.m[j] - 1.0, 0.5 * std::abs(lag->lambda) * r2[j]);
        return std::polar(prod, -lag->lambda * t);
    }
    const auto& bes = std::get<HeisenbergBessel>(hp.family);
    if (bes.mu.size() != hp.m.size()) throw std::invalid_argument("heisenberg_spherical: mu size mismatch");
    double prod = 1.0;
    for (std::size_t j = 0; j < hp.m.size(); ++j)
        prod *= specfun::bessel_reduced(hp.m[j] - 1.0, bes.mu[j] * std::sqrt(r2[j]));
    return prod;
}

double heisenberg_eigenvalue(const HeisenbergParam& hp) {
    double e = 0.0;
    if (const auto* lag = std::get_if<HeisenbergLaguerre>(&hp.family)) {
        for (std::size_t j = 0; j < hp.m.size(); ++j) e += std::abs(lag->lambda) * (2.0 * lag->l[j] + hp.m[j]);
    } else {
        for (double mu : std::get<HeisenbergBessel>(hp.family).mu) e += mu * mu;
    }
    return e;
}

namespace {

template <class F>
cplx second_diff(const F& f, double h) {
    return (-f(-2 * h) + 16.0 * f(-h) - 30.0 * f(0.0) + 16.0 * f(h) - f(2 * h)) / (12.0 * h * h);
}

}  // namespace

double heisenberg_fd_residual(const HeisenbergParam& hp, const HeisenbergPoint& p, double step) {
    auto f = [&](const HeisenbergPoint& q) { return heisenberg_spherical(hp, q.z, q.t); };
    cplx lap = 0.0;
    for (std::size_t i = 0; i < p.z.size(); ++i)
        for (cplx dir : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
            lap -= second_diff(
                [&](double s) {
                    HeisenbergPoint e{std::vector<cplx>(p.z.size(), 0.0), 0.0};
                    e.z[i] = s * dir;
                    return f(heisenberg_product(p, e));
                },
                step);
        }
    return std::abs(lap - heisenberg_eigenvalue(hp) * f(p));
}

cplx typeh_spherical(const group::TypeHModel& model, const TypeHFamily& family, const group::TypeHPoint& p) {
    const int vp = model.v_dim / 2;
    if (const auto* lag = std::get_if<TypeHLaguerre>(&family)) {
        if (lag->zeta.size() != model.z_dim) throw std::invalid_argument("typeh_spherical: zeta size mismatch");
        const double nz = lag->zeta.norm();
        if (nz == 0.0) throw std::invalid_argument("typeh_spherical: zeta must be nonzero");
        return std::polar(specfun::laguerre_norm(lag->l, vp - 1.0, 0.5 * nz * p.x.squaredNorm()), lag->zeta.dot(p.zc));
    }
    return specfun::bessel_reduced(vp - 1.0, std::get<TypeHBessel>(family).r * p.x.norm());
}

double typeh_eigenvalue(const group::TypeHModel& model, const TypeHFamily& family) {
    if (const auto* lag = std::get_if<TypeHLaguerre>(&family))
        return lag->zeta.norm() * (2.0 * lag->l + model.v_dim / 2);
    const double r = std::get<TypeHBessel>(family).r;
    return r * r;
}

double typeh_fd_residual(const group::TypeHModel& model, const TypeHFamily& family, const group::TypeHPoint& p,
                         double step) {
    cplx lap = 0.0;
    for (int i = 0; i < model.v_dim; ++i) {
        lap -= second_diff(
            [&](double s) {
                group::TypeHPoint e{Eigen::VectorXd::Zero(model.v_dim), Eigen::VectorXd::Zero(model.z_dim)};
                e.x(i) = s;
                return typeh_spherical(model, family, group::typeh_product_law(model, p, e));
            },
            step);
    }
    return std::abs(lap - typeh_eigenvalue(model, family) * typeh_spherical(model, family, p));
}

double sublaplacian_eigenvalue(const SphericalParam& param) {
    const auto lam = param.distinct();
    const auto m = param.multiplicities();
    double e = param.r_star * param.r_star;
    for (std::size_t j = 0; j < lam.size(); ++j) e += lam[j] * (2.0 * param.l[j] + m[j]);
    return e;
}

double center_laplacian_eigenvalue(const SphericalParam& param) {
    double e = 0.0;
    for (double x : param.lambda_star) e += x * x;
    return e;
}

double dc0_eigenvalue(const SphericalParam& param) {
    if (param.v % 2 == 1) return 0.0;
    double e = 1.0;
    for (double x : param.lambda_star) e *= x * x;
    return e;
}

double sublaplacian_fd_residual(const SphericalParam& param, const GroupPoint& p,
                                const matpolar::OrthQuadrature& kq, double step) {
    const int v = param.v;
    cplx lap = 0.0;
    for (int i = 0; i < v; ++i) {
        lap -= second_diff(
            [&](double s) {
                GroupPoint e = group::identity(v);
                e.x(i) = s;
                return phi_eval(param, group::product(p, e), kq);
            },
            step);
    }
    return std::abs(lap - sublaplacian_eigenvalue(param) * phi_eval(param, p, kq));
}

double center_laplacian_fd_residual(const SphericalParam& param, const GroupPoint& p,
                                    const matpolar::OrthQuadrature& kq, double step) {
    const int v = param.v;
    cplx lap = 0.0;
    for (int i = 0; i < v * (v - 1) / 2; ++i) {
        lap -= second_diff(
            [&](double s) {
                GroupPoint q = p;
                q.a(i) += s;
                return phi_eval(param, q, kq);
            },
            step);
    }
    return std::abs(lap - center_laplacian_eigenvalue(param) * phi_eval(param, p, kq));
}

double functional_equation_residual(const SphericalParam& param, const GroupPoint& p1, const GroupPoint& p2,
                                    const matpolar::OrthQuadrature& kq) {
    check_tag(param, kq);
    cplx lhs = 0.0;
    for (std::size_t i = 0; i < kq.nodes.size(); ++i)
        lhs += kq.weights[i] * phi_eval(param, group::product(p1, group::k_action(kq.nodes[i], p2)), kq);
    return std::abs(lhs - phi_eval(param, p1, kq) * phi_eval(param, p2, kq));
}

}  // namespace nilharm::spherical
