#include "nilharm/areafn.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "nilharm/quadrature.hpp"
#include "nilharm/specfun.hpp"

namespace nilharm::areafn {

using group::GroupDims;

namespace {

void check_order(int order) {
    if (order < 0 || order > 3) throw std::invalid_argument("areafn: derivative order must be in [0, 3]");
}

Jet jet_product(const Jet& f, const Jet& g) {
    const int n = static_cast<int>(f.size());
    Jet out(n, 0.0);
    static const double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    for (int m = 0; m < n; ++m)
        for (int k = 0; k <= m; ++k) out[m] += binom[m][k] * f[k] * g[m - k];
    return out;
}

/// s-jet of F(k s^2) from F^{(m)}(k s^2).
Jet jet_square(const double* F, double k, double s, int order) {
    Jet out(order + 1);
    const double u1 = 2 * k * s, u2 = 2 * k;
    out[0] = F[0];
    if (order >= 1) out[1] = F[1] * u1;
    if (order >= 2) out[2] = F[2] * u1 * u1 + F[1] * u2;
    if (order >= 3) out[3] = F[3] * u1 * u1 * u1 + 3 * F[2] * u1 * u2;
    return out;
}

/// s-jet of F(b s) from F^{(m)}(b s).
Jet jet_linear(const double* F, double b, int order) {
    Jet out(order + 1);
    double p = 1.0;
    for (int m = 0; m <= order; ++m, p *= b) out[m] = F[m] * p;
    return out;
}

Jet laguerre_jet(int n, double alpha, double k, double s, int order) {
    double F[4] = {0, 0, 0, 0};
    const double u = k * s * s;
    const double scale = std::exp(-0.5 * u - specfun::log_binomial(n, alpha));
    static const double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    double P[4];
    for (int q = 0; q <= order; ++q) P[q] = (q % 2 ? -1.0 : 1.0) * specfun::laguerre_poly(n - q, alpha + q, u);
    for (int m = 0; m <= order; ++m) {
        double acc = 0.0;
        for (int q = 0; q <= m; ++q) acc += binom[m][q] * P[q] * std::pow(-0.5, m - q);
        F[m] = acc * scale;
    }
    return jet_square(F, k, s, order);
}

Jet bessel_square_jet(double alpha, double k, double s, int order) {
    double F[4] = {0, 0, 0, 0};
    const double u = k * s * s;
    F[0] = specfun::bessel_reduced(alpha, u);
    for (int m = 1; m <= order; ++m) F[m] = specfun::bessel_reduced_deriv(alpha, u, m);
    return jet_square(F, k, s, order);
}

Jet bessel_linear_jet(double alpha, double b, double s, int order) {
    double F[4] = {0, 0, 0, 0};
    const double u = b * s;
    F[0] = specfun::bessel_reduced(alpha, u);
    for (int m = 1; m <= order; ++m) F[m] = specfun::bessel_reduced_deriv(alpha, u, m);
    return jet_linear(F, b, order);
}

void accumulate(Jet& acc, const Jet& j, double w) {
    for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += w * j[m];
}

/// Splitting of |x|^2 on S^{v-1} into the Lambda blocks and the remaining coordinates.
struct Layout {
    std::vector<double> distinct;
    std::vector<int> mult;
    std::vector<int> l;
    double r_star = 0.0;
    double lambda_norm = 0.0;
    int rest = 0;  // coordinates outside the blocks, x_v among them
    quad::SimplexRule dir;
};

Layout make_layout(const SphericalParam& param, const PairingRules& rules) {
    if (param.v != rules.dims.v) throw std::invalid_argument("areafn: parameter and rules disagree on v");
    Layout L;
    L.distinct = param.distinct();
    L.mult = param.multiplicities();
    L.l = param.l;
    L.r_star = param.r_star;
    for (double x : param.lambda_star) L.lambda_norm += x * x;
    L.lambda_norm = std::sqrt(L.lambda_norm);
    std::vector<double> a;
    for (int m : L.mult) a.push_back(m);
    L.rest = param.v - 2 * param.v0();
    if (L.rest > 0) a.push_back(0.5 * L.rest);
    L.dir = quad::dirichlet_rule(a, rules.dirichlet_order);
    return L;
}

Jet layout_jet(const Layout& L, double s, const PairingRules& rules, int order) {
    const GroupDims& d = rules.dims;
    const double area = quad::sphere_area(d.v) * quad::sphere_area(d.z);
    Jet total(order + 1, 0.0);
    for (const auto& node : rules.radial) {
        Jet xpart(order + 1, 0.0);
        const double r2 = node.r * node.r;
        for (std::size_t q = 0; q < L.dir.w.size(); ++q) {
            const auto& t = L.dir.t[q];
            Jet prod(order + 1, 0.0);
            prod[0] = 1.0;
            for (std::size_t j = 0; j < L.distinct.size(); ++j)
                prod = jet_product(prod, laguerre_jet(L.l[j], L.mult[j] - 1.0, 0.5 * L.distinct[j] * r2 * t[j], s, order));
            if (L.rest > 0 && L.r_star > 0)
                prod = jet_product(prod, bessel_linear_jet(0.5 * (L.rest - 2), L.r_star * node.r * std::sqrt(t.back()), s, order));
            accumulate(xpart, prod, L.dir.w[q]);
        }
        const Jet zpart = bessel_square_jet(0.5 * (d.z - 2), node.c * L.lambda_norm, s, order);
        accumulate(total, jet_product(xpart, zpart), node.w * area);
    }
    return total;
}

void check_j(int j) {
    if (j < 1 || j > 3) throw std::invalid_argument("areafn: j must be in [1, 3]");
}

AreaResult integrate_area(const std::function<Jet(double)>& jet, int j, const std::vector<double>& s_grid, double tol) {
    check_j(j);
    if (s_grid.empty() || s_grid.front() <= 0) throw std::invalid_argument("areafn: s-grid must be positive");
    const double s_max = s_grid.back();
    double total = 0.0, tail = 0.0;
    double s_prev = 0.0, i_prev = 0.0;
    for (double s : s_grid) {
        if (s <= s_prev) throw std::invalid_argument("areafn: s-grid must be increasing");
        const double d = std::abs(jet(s)[j]);
        const double val = d * d * std::pow(s, 2 * j - 1);
        const double piece = 0.5 * (s - s_prev) * (val + i_prev);
        total += piece;
        if (s_prev >= 0.9 * s_max) tail += piece;
        s_prev = s;
        i_prev = val;
    }
    AreaResult out;
    out.value = std::sqrt(total);
    out.tail_ratio = total > 0 ? tail / total : 0.0;
    out.tail_flag = out.tail_ratio > tol;
    return out;
}

}  // namespace

PairingRules pairing_rules(const GroupDims& dims, int radial_panels, int radial_order, int dirichlet_order) {
    return {dims, group::radial_mu_rule(dims, radial_panels, radial_order), dirichlet_order};
}

GroupDims typeh_dims(const group::TypeHModel& model) {
    GroupDims d;
    d.v = model.v_dim;
    d.v_prime = model.v_dim / 2;
    d.z = model.z_dim;
    d.Q = model.v_dim + 2 * model.z_dim;
    d.even = model.v_dim % 2 == 0;
    return d;
}

Jet mu_phi_jet(const SphericalParam& param, double s, const PairingRules& rules, int order) {
    check_order(order);
    return layout_jet(make_layout(param, rules), s, rules, order);
}

cplx mu_phi_pairing(const SphericalParam& param, double s, const PairingRules& rules) {
    return mu_phi_jet(param, s, rules, 0)[0];
}

DerivResult mu_phi_deriv(const SphericalParam& param, double s, int j, double step, const PairingRules& rules) {
    check_j(j);
    if (step <= 0) throw std::invalid_argument("mu_phi_deriv: step must be positive");
    if (s - (j == 3 ? 2 : 1) * step < 0) throw std::invalid_argument("mu_phi_deriv: stencil leaves s >= 0");
    const Layout L = make_layout(param, rules);
    auto f = [&](double t) { return layout_jet(L, t, rules, 0)[0]; };
    auto diff = [&](double h) -> cplx {
        if (j == 1) return (f(s + h) - f(s - h)) / (2 * h);
        if (j == 2) return (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
        return (f(s + 2 * h) - 2.0 * f(s + h) + 2.0 * f(s - h) - f(s - 2 * h)) / (2 * h * h * h);
    };
    const cplx coarse = diff(step), fine = diff(0.5 * step);
    return {(4.0 * fine - coarse) / 3.0, std::abs(fine - coarse) / 3.0};
}

Jet typeh_mu_phi_jet(const group::TypeHModel& model, const spherical::TypeHFamily& family, double s,
                     const PairingRules& rules, int order) {
    check_order(order);
    const GroupDims& d = rules.dims;
    if (d.v != model.v_dim || d.z != model.z_dim) throw std::invalid_argument("areafn: rules do not match the model");
    const double area = quad::sphere_area(d.v) * quad::sphere_area(d.z);
    const double vp = 0.5 * model.v_dim;
    Jet total(order + 1, 0.0);
    for (const auto& node : rules.radial) {
        Jet term;
        if (const auto* lag = std::get_if<spherical::TypeHLaguerre>(&family)) {
            const double zn = lag->zeta.norm();
            term = jet_product(laguerre_jet(lag->l, vp - 1, 0.5 * zn * node.r * node.r, s, order),
                               bessel_square_jet(0.5 * (d.z - 2), node.c * zn, s, order));
        } else {
            const double r = std::get<spherical::TypeHBessel>(family).r;
            term = bessel_linear_jet(vp - 1, r * node.r, s, order);
        }
        accumulate(total, term, node.w * area);
    }
    return total;
}

std::vector<double> uniform_s_grid(double s_max, int n) {
    if (n < 1 || s_max <= 0) throw std::invalid_argument("uniform_s_grid: bad arguments");
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = s_max * (i + 1) / n;
    return s;
}

std::vector<double> log_s_grid(double s_min, double s_max, int n) {
    if (n < 2 || s_min <= 0 || s_max <= s_min) throw std::invalid_argument("log_s_grid: bad arguments");
    std::vector<double> s(n);
    const double q = std::log(s_max / s_min) / (n - 1);
    for (int i = 0; i < n; ++i) s[i] = s_min * std::exp(q * i);
    return s;
}

AreaResult area_hat(const SphericalParam& param, int j, const std::vector<double>& s_grid, const PairingRules& rules,
                    double tol) {
    const Layout L = make_layout(param, rules);
    auto out = integrate_area([&](double s) { return layout_jet(L, s, rules, j); }, j, s_grid, tol);
    out.range_warning = j > rules.dims.v / 2 - 1;
    return out;
}

AreaResult typeh_area_hat(const group::TypeHModel& model, const spherical::TypeHFamily& family, int j,
                          const std::vector<double>& s_grid, const PairingRules& rules, double tol) {
    auto out = integrate_area([&](double s) { return typeh_mu_phi_jet(model, family, s, rules, j); }, j, s_grid, tol);
    out.range_warning = j > model.v_dim / 2 - 1;
    return out;
}

namespace {

template <class Eval>
AreaScanReport scan(std::size_t n, int j, const std::vector<double>& s_grid, Eval eval) {
    AreaScanReport rep;
    rep.j = j;
    rep.s_points = s_grid.size();
    rep.s_max = s_grid.empty() ? 0.0 : s_grid.back();
    for (std::size_t i = 0; i < n; ++i) {
        const AreaResult a = eval(i);
        rep.values.push_back(a.value);
        rep.tail_flags.push_back(a.tail_flag);
        if (rep.argmax < 0 || a.value > rep.max) {
            rep.max = a.value;
            rep.argmax = static_cast<int>(i);
        }
    }
    return rep;
}

}  // namespace

AreaScanReport scan_uniform_bound(const std::vector<SphericalParam>& grid, int j, const std::vector<double>& s_grid,
                                  const PairingRules& rules) {
    return scan(grid.size(), j, s_grid, [&](std::size_t i) { return area_hat(grid[i], j, s_grid, rules); });
}

AreaScanReport typeh_scan_uniform_bound(const group::TypeHModel& model,
                                        const std::vector<spherical::TypeHFamily>& grid, int j,
                                        const std::vector<double>& s_grid, const PairingRules& rules) {
    return scan(grid.size(), j, s_grid,
                [&](std::size_t i) { return typeh_area_hat(model, grid[i], j, s_grid, rules); });
}

std::vector<SphericalParam> normalized_grid(int v, const ScanExtent& ext) {
    if (v < 2 || v > 5) throw std::invalid_argument("normalized_grid: v must be in [2, 5]");
    if (ext.l_max < 0 || ext.angles < 1 || ext.r_cells < 1 || ext.r_max <= 0)
        throw std::invalid_argument("normalized_grid: bad extent");
    std::vector<SphericalParam> out;
    out.push_back(spherical::make_param(v, 1.0, std::vector<double>(v / 2, 0.0), {}));
    std::vector<double> radii{0.0};
    if (v > 2)
        for (int k = 1; k <= ext.r_cells; ++k) radii.push_back(ext.r_max * k / ext.r_cells);
    auto with_radii = [&](const std::vector<double>& lam, const std::vector<int>& l, bool full) {
        for (double r : radii) {
            if (r > 0 && !full) break;
            out.push_back(spherical::make_param(v, r, lam, l));
        }
    };
    std::vector<double> first(v / 2, 0.0);
    first[0] = 1.0;
    for (int l = 0; l <= ext.l_max; ++l) with_radii(first, {l}, 2 < v);
    if (v >= 4) {
        const bool full = v == 5;
        for (int k = 1; k <= ext.angles; ++k) {
            if (k == ext.angles) {
                const double c = std::sqrt(0.5);
                for (int l = 0; l <= ext.l_max; ++l) with_radii({c, c}, {l}, full);
                continue;
            }
            const double th = 0.25 * M_PI * k / ext.angles;
            for (int l1 = 0; l1 <= ext.l_max; ++l1)
                for (int l2 = 0; l2 <= ext.l_max; ++l2)
                    with_radii({std::cos(th), std::sin(th)}, {l1, l2}, full);
        }
    }
    return out;
}

ScanExtent doubled(const ScanExtent& ext) {
    return {2 * ext.l_max, 2 * ext.angles, 2 * ext.r_max, 2 * ext.r_cells};
}

}  // namespace nilharm::areafn
