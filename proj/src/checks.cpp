#include "nilharm/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "nilharm/areafn.hpp"
#include "nilharm/multiplier.hpp"
#include "nilharm/plancherel.hpp"
#include "nilharm/quadrature.hpp"
#include "nilharm/specfun.hpp"

namespace nilharm::checks {

using cplx = std::complex<double>;
using group::GroupDims;
using group::GroupPoint;
using matpolar::OrthGroup;
using matpolar::haar_quadrature;
using spherical::SphericalParam;

bool Report::pass() const {
    return std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.pass; });
}

void Report::add(std::string name, double value, double tolerance) {
    metrics.push_back({std::move(name), value, tolerance, Metric::Kind::at_most, value <= tolerance});
}

void Report::add_lower(std::string name, double value, double tolerance) {
    metrics.push_back({std::move(name), value, tolerance, Metric::Kind::at_least, value >= tolerance});
}

void Report::add_flag(std::string name, bool ok) {
    metrics.push_back({std::move(name), ok ? 1.0 : 0.0, std::numeric_limits<double>::quiet_NaN(), Metric::Kind::flag, ok});
}

void Report::override_tolerance(double tol) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    for (auto& m : metrics)
        if (m.kind == Metric::Kind::at_most) {
            m.tolerance = tol;
            m.pass = m.value <= tol;
        }
}

void Report::merge(const Report& other) {
    for (auto m : other.metrics) {
        m.name = other.command + "." + m.name;
        metrics.push_back(std::move(m));
    }
    for (auto [k, x] : other.values) values.emplace_back(other.command + "." + k, x);
    seconds += other.seconds;
}

namespace {

class Run {
public:
    Run(std::string command, const Options& opt) : start_(std::chrono::steady_clock::now()), opt_(opt) {
        rep.command = std::move(command);
        rep.seed = opt.seed;
    }

    Report finish() {
        if (opt_.tol) rep.override_tolerance(*opt_.tol);
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return std::move(rep);
    }

    Report rep;

private:
    std::chrono::steady_clock::time_point start_;
    Options opt_;
};

std::vector<int> v_list(const Options& opt, std::vector<int> defaults, const std::vector<int>& allowed) {
    if (!opt.v) return defaults;
    if (std::find(allowed.begin(), allowed.end(), *opt.v) == allowed.end())
        throw std::invalid_argument("unsupported v = " + std::to_string(*opt.v) + " for this check");
    return {*opt.v};
}

SphericalParam random_param(int v, std::mt19937_64& rng, bool so) {
    std::uniform_real_distribution<double> lam(0.3, 1.8), rr(0.0, 1.5);
    std::uniform_int_distribution<int> li(0, 4);
    std::vector<double> ls(v / 2);
    for (auto& x : ls) x = lam(rng);
    std::sort(ls.rbegin(), ls.rend());
    std::vector<int> l;
    for (std::size_t i = 0; i < ls.size(); ++i) l.push_back(li(rng));
    const double r = (v % 2) ? rr(rng) : 0.0;
    std::optional<int> eps;
    if (so) eps = (rng() % 2) ? 1 : -1;
    return spherical::make_param(v, r, ls, l, eps);
}

int default_k_order(int v) { return v == 2 ? 16 : v == 3 ? 8 : 4000; }

double point_distance(const GroupPoint& p, const GroupPoint& q) { return (p.x - q.x).norm() + (p.a - q.a).norm(); }

cplx gaussian(const GroupPoint& p) { return std::exp(-p.x.squaredNorm() - p.a.squaredNorm()); }

double smooth_bump(double u) { return std::abs(u) < 1 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

}  // namespace

Report specfun_check(const Options& opt) {
    using namespace specfun;
    Run run("specfun-check", opt);
    const int nodes = opt.order.value_or(40), nmax = opt.l_max.value_or(20);
    run.rep.inputs = {{"laguerre_nodes", nodes}, {"n_max", nmax}, {"shift_l_max", 30}, {"bessel_points", 50}};

    const auto rule = quad::gauss_laguerre(nodes, 0.0, true);
    double ortho = 0.0;
    for (int n = 0; n <= nmax; ++n)
        for (int m = 0; m <= nmax; ++m) {
            double s = 0.0;
            for (std::size_t k = 0; k < rule.size(); ++k)
                s += rule.w[k] * laguerre_norm(n, 0.0, rule.x[k]) * laguerre_norm(m, 0.0, rule.x[k]);
            ortho = std::max(ortho, std::abs(s - (n == m ? 1.0 : 0.0)));
        }
    run.rep.add("laguerre_orthonormality", ortho, 1e-8);

    double ode = 0.0;
    for (int n : {1, 2, 3, 5}) {
        const double mu = 2.3;
        for (int k = 1; k <= 50; ++k) {
            const double x = 0.2 * k, s = std::sqrt(x);
            const double y = bessel_reduced(n - 1, mu * s);
            const double j1 = bessel_reduced_deriv(n - 1, mu * s, 1);
            const double j2 = bessel_reduced_deriv(n - 1, mu * s, 2);
            const double y1 = j1 * mu / (2 * s);
            const double y2 = j2 * mu * mu / (4 * x) - j1 * mu / (4 * x * s);
            ode = std::max(ode, std::abs(4 * x * y2 + 4 * n * y1 + mu * mu * y) / (1 + std::abs(mu * mu * y)));
        }
    }
    run.rep.add("bessel_ode", ode, 1e-6);

    double shift = 0.0;
    for (int l = 0; l <= 30; ++l)
        for (double x = 0.0; x <= 40.0; x += 0.5) {
            const Sequence R = [x](int k) { return cplx(laguerre_norm(k, 0.0, x)); };
            const Sequence dR = [x](int k) { return cplx(laguerre_norm_deriv(k, 0.0, x, 1)); };
            const double L = laguerre_norm(l, 0.0, x);
            const double dL = laguerre_norm_deriv(l, 0.0, x, 1);
            const double d2L = laguerre_norm_deriv(l, 0.0, x, 2);
            shift = std::max(shift, std::abs(apply_seq_operator(SeqOp::beta, R, l) - x * L));
            shift = std::max(shift, std::abs(apply_seq_operator(SeqOp::alpha, R, l) - x * dL));
            shift = std::max(shift, std::abs(apply_seq_operator(SeqOp::gamma, R, l) - apply_seq_operator(SeqOp::alpha, dR, l)));
            shift = std::max(shift, std::abs(apply_seq_operator(SeqOp::gamma, R, l) - (dL + x * d2L)));
        }
    run.rep.add("shift_identities", shift, 1e-9);
    return run.finish();
}

Report group_check(const Options& opt) {
    using namespace group;
    Run run("group-check", opt);
    const std::uint64_t base = opt.seed * 10007;
    run.rep.inputs = {{"triples_per_v", 50}, {"homogeneity_points", 100}};

    double assoc = 0.0, homog = 0.0;
    for (int v = 2; v <= 5; ++v) {
        for (int t = 0; t < 50; ++t) {
            const GroupPoint p = random_point(v, base + 100 + t), q = random_point(v, base + 200 + t),
                             r = random_point(v, base + 300 + t);
            assoc = std::max(assoc, point_distance(product(product(p, q), r), product(p, product(q, r))));
        }
        for (int t = 0; t < 100; ++t) {
            const GroupPoint g = random_point(v, base + 1000 + t);
            const double r = 0.1 + 0.37 * t;
            homog = std::max(homog, std::abs(koranyi_norm(dilate(r, g)) - r * koranyi_norm(g)) / (r * koranyi_norm(g)));
        }
    }
    run.rep.add("associativity", assoc, 1e-12);
    run.rep.add("koranyi_homogeneity", homog, 1e-12);

    run.rep.add("polar_identity_v2", polar_identity_residual(gaussian, GroupDims::of(2), 16, 24), 1e-4);
    HaarOptions h;
    h.box = 5.0;
    h.seed = opt.seed;
    run.rep.add("polar_identity_v3_relative", polar_identity_residual(gaussian, GroupDims::of(3), 8, 16, h) / std::pow(M_PI, 3.0),
                1e-2);
    return run.finish();
}

Report polar_check(const Options& opt) {
    using namespace matpolar;
    Run run("polar-check", opt);
    const auto vs = v_list(opt, {2, 3, 4, 5}, {2, 3, 4, 5});
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd;
    run.rep.inputs = {{"matrices_per_v", 1000}};
    double recon = 0.0;
    for (int v : vs)
        for (auto g : {OrthGroup::O, OrthGroup::SO})
            for (int t = 0; t < 1000; ++t) {
                Eigen::VectorXd a(v * (v - 1) / 2);
                for (int i = 0; i < a.size(); ++i) a(i) = nd(rng);
                const Eigen::MatrixXd A = group::antisym_matrix(a, v);
                recon = std::max(recon, (reconstruct(antisym_polar(A, g)) - A).norm());
            }
    run.rep.add("reconstruction", recon, 1e-9);

    const AntisymFunction gauss = [](const Eigen::MatrixXd& A) { return cplx(std::exp(-0.5 * A.squaredNorm())); };
    for (int v : vs) {
        if (v > 3) continue;
        const OrthQuadrature q = haar_quadrature(v, OrthGroup::O, opt.order.value_or(v == 2 ? 24 : 12));
        const cplx polar = polar_integrate_antisym(gauss, v, q, 60, 7.0);
        const cplx direct = direct_integrate_antisym(gauss, v, 64, 7.0);
        run.rep.values.emplace_back("gaussian_polar_v" + std::to_string(v), polar.real());
        run.rep.values.emplace_back("gaussian_direct_v" + std::to_string(v), direct.real());
        run.rep.add("gaussian_polar_vs_direct_v" + std::to_string(v), std::abs(polar - direct) / std::abs(direct),
                    v == 2 ? 1e-4 : 1e-2);
    }
    for (int v : vs) run.rep.values.emplace_back("eta_constant_v" + std::to_string(v), eta_constant(v));
    if (std::find(vs.begin(), vs.end(), 2) != vs.end()) run.rep.add("eta_constant_v2", std::abs(eta_constant(2) - 2.0), 1e-12);
    return run.finish();
}

Report spherical_eval(const SphericalParam& param, const std::optional<GroupPoint>& point, const Options& opt) {
    Run run("spherical-eval", opt);
    const int v = param.v;
    const OrthGroup g = param.epsilon ? OrthGroup::SO : OrthGroup::O;
    const int order = opt.order.value_or(default_k_order(v));
    const auto kq = haar_quadrature(v, g, order, opt.seed);
    const GroupPoint p = point.value_or(group::identity(v));
    if (p.v() != v) throw std::invalid_argument("point and parameter have different v");
    const cplx phi = spherical::phi_eval(param, p, kq);
    run.rep.inputs = {{"v", v}, {"k_order", order}};
    run.rep.values = {{"re", phi.real()}, {"im", phi.imag()}, {"abs", std::abs(phi)}};
    run.rep.add("abs_excess", std::abs(phi) - 1.0, 1e-6);
    if (point_distance(p, group::identity(v)) == 0.0) run.rep.add("identity_value", std::abs(phi - 1.0), 0.0);
    if (v == 2 && !param.epsilon)
        run.rep.add("closed_form_v2", std::abs(phi - spherical::phi_v2_closed(param.lambda_star[0], param.l.empty() ? 0 : param.l[0], p)),
                    1e-8);
    return run.finish();
}

Report spherical_sample_check(const Options& opt) {
    using namespace spherical;
    Run run("spherical-sample", opt);
    std::mt19937_64 rng(opt.seed);
    const auto q2 = haar_quadrature(2, OrthGroup::O, 16);
    const auto q3 = haar_quadrature(3, OrthGroup::O, 8);
    const auto q3s = haar_quadrature(3, OrthGroup::SO, 8);
    const std::uint64_t base = opt.seed * 10007;
    double identity_err = 0.0, bound = 0.0;
    for (int t = 0; t < 500; ++t) {
        const int v = 2 + t % 3 / 2;
        const bool so = (v == 3) && (t % 2 == 0);
        const SphericalParam p = random_param(v, rng, so);
        const auto& kq = (v == 2) ? q2 : (so ? q3s : q3);
        if (t < 20) identity_err = std::max(identity_err, std::abs(phi_eval(p, group::identity(v), kq) - 1.0));
        bound = std::max(bound, std::abs(phi_eval(p, group::random_point(v, base + 1000 + t, 1.5), kq)));
    }
    double closed = 0.0;
    for (int l = 0; l <= 5; ++l)
        for (double lam : {0.2, 1.0, 2.7}) {
            const SphericalParam p = make_param(2, 0.0, {lam}, {l});
            for (int t = 0; t < 10; ++t) {
                const GroupPoint g = group::random_point(2, base + 50 * l + t, 2.0);
                closed = std::max(closed, std::abs(phi_eval(p, g, q2) - phi_v2_closed(lam, l, g)));
            }
        }
    run.rep.inputs = {{"sampled_pairs", 500}, {"identity_pairs", 20}, {"closed_form_pairs", 180}};
    run.rep.values = {{"max_abs_phi", bound}};
    run.rep.add("identity_value", identity_err, 0.0);
    run.rep.add("abs_excess", bound - 1.0, 1e-6);
    run.rep.add("closed_form_v2", closed, 1e-8);
    return run.finish();
}

Report spherical_eigencheck(const Options& opt) {
    using namespace spherical;
    Run run("spherical-eigencheck", opt);
    const auto vs = v_list(opt, {2, 3}, {2, 3});
    std::mt19937_64 rng(opt.seed);
    const auto q2 = haar_quadrature(2, OrthGroup::O, opt.order.value_or(16));
    const auto q3 = haar_quadrature(3, OrthGroup::O, opt.order.value_or(6));
    const auto q3s = haar_quadrature(3, OrthGroup::SO, opt.order.value_or(6));
    const std::uint64_t base = opt.seed * 10007;
    double sub = 0.0, center = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int v = vs[t % vs.size()];
        const bool so = (v == 3) && (opt.group == OrthGroup::SO || t % 4 == 1);
        const SphericalParam p = random_param(v, rng, so);
        const auto& kq = (v == 2) ? q2 : (so ? q3s : q3);
        const GroupPoint g = group::random_point(v, base + 700 + t, 1.0);
        sub = std::max(sub, sublaplacian_fd_residual(p, g, kq) / (1.0 + sublaplacian_eigenvalue(p)));
        center = std::max(center, center_laplacian_fd_residual(p, g, kq) / (1.0 + center_laplacian_eigenvalue(p)));
    }
    run.rep.inputs = {{"pairs", 20}};
    run.rep.add("sublaplacian_relative", sub, 1e-4);
    run.rep.add("center_laplacian_relative", center, 1e-4);
    return run.finish();
}

Report spherical_funceq_check(const Options& opt) {
    using namespace spherical;
    Run run("spherical-funceq-check", opt);
    const auto vs = v_list(opt, {2, 3}, {2, 3});
    std::mt19937_64 rng(opt.seed);
    const std::uint64_t base = opt.seed * 10007;
    for (int v : vs) {
        const bool so = v == 3 && opt.group == OrthGroup::SO;
        const auto kq = haar_quadrature(v, so ? OrthGroup::SO : OrthGroup::O, opt.order.value_or(v == 2 ? 16 : 6));
        const int n = v == 2 ? 10 : 3;
        const double scale = v == 2 ? 1.0 : 0.8;
        double worst = 0.0;
        for (int t = 0; t < n; ++t) {
            const SphericalParam p = random_param(v, rng, so);
            worst = std::max(worst, functional_equation_residual(p, group::random_point(v, base + 300 + t, scale),
                                                                 group::random_point(v, base + 400 + t, scale), kq));
        }
        run.rep.add("functional_equation_v" + std::to_string(v), worst, v == 2 ? 1e-6 : 1e-3);
    }
    return run.finish();
}

namespace {

plancherel::GridOptions grid_options(const Options& opt, plancherel::GridOptions o) {
    if (opt.lambda_range) {
        o.lambda_min = opt.lambda_range->first;
        o.lambda_max = opt.lambda_range->second;
    }
    if (opt.l_max) o.l_max = *opt.l_max;
    if (opt.r_max) o.r_max = *opt.r_max;
    return o;
}

void require_v2(const Options& opt) {
    if (opt.v && *opt.v != 2) throw std::invalid_argument("this Plancherel check is implemented for v = 2");
}

}  // namespace

Report plancherel_roundtrip(const Options& opt) {
    using namespace plancherel;
    require_v2(opt);
    Run run("plancherel-roundtrip", opt);
    const SpectralGrid g = make_grid(2, OrthGroup::O, grid_options(opt, {}));
    auto bump = [](const SphericalParam& p) {
        const double d = p.lambda_star[0] - 2.0;
        return p.l[0] <= 2 ? cplx((1.0 + 0.5 * p.l[0]) * std::exp(-2.0 * d * d)) : 0.0;
    };
    const auto ghat = sample_on_grid(bump, g);
    const auto kq = haar_quadrature(2, OrthGroup::O, 1);
    const auto f = inverse_function(ghat, g, kq);
    const auto back = transform_grid(f, g);
    double peak = 0.0, worst = 0.0;
    for (const auto& x : ghat) peak = std::max(peak, std::abs(x));
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::abs(ghat[i]) > 0.05 * peak) worst = std::max(worst, std::abs(back[i] - ghat[i]) / std::abs(ghat[i]));
    const auto pr = parseval_residual(f, ghat, g);
    run.rep.inputs = {{"v", 2}, {"lambda_min", g.opt.lambda_min}, {"lambda_max", g.opt.lambda_max}, {"l_max", g.opt.l_max},
                      {"atoms", static_cast<double>(g.size())}};
    run.rep.values = {{"group_norm2", pr.group_norm2}, {"spectral_norm2", pr.spectral_norm2}, {"tail_ratio", tail_ratio(ghat, g)}};
    run.rep.add("roundtrip_relative", worst, 0.02);
    run.rep.add("parseval_relative", pr.relative, 0.02);
    return run.finish();
}

Report plancherel_parseval(const Options& opt) {
    using namespace plancherel;
    require_v2(opt);
    Run run("plancherel-parseval", opt);
    run.rep.table.columns = {"lambda_min", "l_max", "lambda_cells", "group_norm2", "spectral_norm2", "relative"};
    double last = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    for (int k = 0; k < 3; ++k) {
        GridOptions o;
        o.lambda_min = 0.2 / std::pow(4.0, k);
        o.l_max = 10 * (1 << (2 * k));
        o.lambda_cells = 100 + 100 * k;
        const SpectralGrid g = make_grid(2, OrthGroup::O, o);
        const auto res = parseval_residual(gaussian, transform_grid(gaussian, g), g);
        run.rep.table.rows.push_back({o.lambda_min, double(o.l_max), double(o.lambda_cells), res.group_norm2, res.spectral_norm2,
                                      res.relative});
        decreasing = decreasing && res.relative < last;
        last = res.relative;
    }
    run.rep.inputs = {{"v", 2}, {"refinements", 3}};
    run.rep.values = {{"exact_norm2", std::pow(M_PI / 2, 1.5)}};
    run.rep.add_flag("decreasing_under_refinement", decreasing);
    run.rep.add("parseval_relative", last, 0.02);
    return run.finish();
}

Report plancherel_kernel(const Options& opt) {
    using namespace plancherel;
    require_v2(opt);
    Run run("plancherel-kernel", opt);
    GridOptions o;
    o.l_max = 100;
    o.lambda_min = 0.005;
    const SpectralGrid g = make_grid(2, OrthGroup::O, grid_options(opt, o));
    const double t = 1.0;
    const auto kq = haar_quadrature(2, OrthGroup::O, 1);
    const auto h = multiplier_kernel([t](double e) { return cplx(std::exp(-t * e)); }, g, kq);
    auto heat = [t](double rho2, double a) {
        const auto q = quad::composite_legendre(0.0, 60.0, 40, 16);
        double s = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double l = q.x[i];
            s += q.w[i] * l / (2 * std::sinh(t * l)) * std::exp(-l * rho2 / (4 * std::tanh(t * l))) * std::cos(l * a);
        }
        return s * 2 / (4 * M_PI * M_PI);
    };
    double closed = 0.0;
    for (int k = 0; k < 4; ++k) {
        const GroupPoint p = group::random_point(2, opt.seed * 10007 + 90 + k, 0.6);
        closed = std::max(closed, std::abs(h.eval(p).real() - heat(p.x.squaredNorm(), p.a(0))) / heat(0, 0));
    }
    ReducedOptions ro;
    ro.a_box = 6;
    ro.a_panels = 12;
    const auto back = transform_grid(h.eval, g, ro);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.atoms[i].param.lambda_star[0] < 0.5 || std::abs(h.ghat[i]) <= 0.1) continue;
        worst = std::max(worst, std::abs(back[i] - h.ghat[i]) / std::abs(h.ghat[i]));
    }
    run.rep.inputs = {{"v", 2}, {"t", t}, {"lambda_min", g.opt.lambda_min}, {"l_max", g.opt.l_max}};
    run.rep.values = {{"tail_ratio", h.tail_ratio}};
    run.rep.add("kernel_vs_closed_form", closed, 0.02);
    run.rep.add("kernel_roundtrip_relative", worst, 0.02);
    run.rep.add("tail_ratio", h.tail_ratio, 0.02);
    return run.finish();
}

Report areafn_pair(const SphericalParam& param, const std::vector<double>& s, int j, const Options& opt) {
    using namespace areafn;
    Run run("areafn-pair", opt);
    const auto rules = pairing_rules(GroupDims::of(param.v));
    run.rep.table.columns = {"s", "re", "im", "abs_d1", "abs_d2", "abs_d3"};
    double worst = 0.0;
    for (double x : s) {
        const Jet jet = mu_phi_jet(param, x, rules, 3);
        run.rep.table.rows.push_back({x, jet[0].real(), jet[0].imag(), std::abs(jet[1]), std::abs(jet[2]), std::abs(jet[3])});
        for (int k = 1; k <= 3; ++k) {
            const double step = 1e-2;
            if (x - (k == 3 ? 2 : 1) * step < 0) continue;
            const DerivResult fd = mu_phi_deriv(param, x, k, step, rules);
            worst = std::max(worst, std::abs(jet[k] - fd.value) / (1 + std::abs(jet[k])));
        }
    }
    const double s_max = opt.r_max.value_or(20.0);
    const auto a = area_hat(param, j, uniform_s_grid(s_max, int(100 * s_max)), rules);
    run.rep.inputs = {{"v", param.v}, {"j", j}, {"s_max", s_max}};
    run.rep.values = {{"area", a.value}, {"tail_ratio", a.tail_ratio}, {"range_warning", a.range_warning ? 1.0 : 0.0}};
    run.rep.add("jet_vs_differences", worst, 1e-5);
    if (!a.range_warning) run.rep.add_flag("area_tail_converged", !a.tail_flag);
    return run.finish();
}

Report areafn_scan(const std::string& target, const Options& opt) {
    using namespace areafn;
    Run run("areafn-scan-" + target, opt);
    const auto s_grid = uniform_s_grid(8.0, 400);
    const auto long_grid = uniform_s_grid(120.0, 8000);
    run.rep.table.columns = {"extent", "index", "area", "tail_flag"};
    auto record = [&](int extent, const AreaScanReport& r) {
        for (std::size_t i = 0; i < r.values.size(); ++i)
            run.rep.table.rows.push_back({double(extent), double(i), r.values[i], r.tail_flags[i] ? 1.0 : 0.0});
        return std::none_of(r.tail_flags.begin(), r.tail_flags.end(), [](bool f) { return f; });
    };
    double scale_dev = 0.0;
    if (target == "n42") {
        const auto rules = pairing_rules(GroupDims::of(4), 4, 12, 12);
        const ScanExtent ext{opt.l_max.value_or(2), 2, opt.r_max.value_or(1.0), 1};
        const auto g1 = normalized_grid(4, ext), g2 = normalized_grid(4, doubled(ext));
        const auto a = scan_uniform_bound(g1, 1, s_grid, rules);
        const auto b = scan_uniform_bound(g2, 1, s_grid, rules);
        const bool clean = record(1, a) && record(2, b);
        run.rep.inputs = {{"v", 4}, {"j", 1}, {"l_max", ext.l_max}, {"r_max", ext.r_max}, {"points", double(g1.size())},
                          {"points_doubled", double(g2.size())}};
        run.rep.values = {{"max", a.max}, {"max_doubled", b.max}};
        run.rep.add("doubling_change", std::abs(b.max - a.max) / a.max, 0.1);
        run.rep.add_flag("no_tail_flags", clean);
        const auto nrules = pairing_rules(GroupDims::of(4), 4, 16);
        const double base = area_hat(spherical::make_param(4, 1.0, {0.0, 0.0}, {}), 1, long_grid, nrules).value;
        for (double r : {0.5, 3.0})
            scale_dev = std::max(scale_dev,
                                 std::abs(area_hat(spherical::make_param(4, r, {0.0, 0.0}, {}), 1, long_grid, nrules).value - base) / base);
    } else if (target == "h2") {
        const auto model = group::typeh_heisenberg(2);
        const auto rules = pairing_rules(typeh_dims(model), 4, 16);
        const int L = opt.l_max.value_or(8);
        auto family = [](int n) {
            std::vector<spherical::TypeHFamily> fam{spherical::TypeHBessel{1.0}};
            for (int l = 0; l <= n; ++l) fam.push_back(spherical::TypeHLaguerre{Eigen::VectorXd::Ones(1), l});
            return fam;
        };
        const auto h_grid = uniform_s_grid(16.0, 800);
        const auto a = typeh_scan_uniform_bound(model, family(L), 1, h_grid, rules);
        const auto b = typeh_scan_uniform_bound(model, family(2 * L), 1, h_grid, rules);
        const bool clean = record(1, a) && record(2, b);
        run.rep.inputs = {{"j", 1}, {"l_max", L}, {"l_max_doubled", 2 * L}};
        run.rep.values = {{"max", a.max}, {"max_doubled", b.max}};
        run.rep.add("doubling_change", std::abs(b.max - a.max) / a.max, 0.1);
        run.rep.add_flag("no_tail_flags", clean);
        const double base = typeh_area_hat(model, spherical::TypeHBessel{1.0}, 1, long_grid, rules).value;
        for (double r : {0.5, 2.0, 4.0})
            scale_dev = std::max(scale_dev,
                                 std::abs(typeh_area_hat(model, spherical::TypeHBessel{r}, 1, long_grid, rules).value - base) / base);
    } else {
        throw std::invalid_argument("unknown scan target '" + target + "' (use h2 or n42)");
    }
    run.rep.add("scale_invariance", scale_dev, 1e-3);
    return run.finish();
}

Report multiplier_partition_check(const Options& opt) {
    Run run("multiplier-partition-check", opt);
    const auto vs = v_list(opt, {2, 3, 4, 5}, {2, 3, 4, 5});
    const int points = opt.order.value_or(1000);
    double err = 0.0, herr = 0.0, lo = 1e300, hi = 0.0;
    bool overlap = true, in_set = true;
    for (int v : vs) {
        const auto r = multiplier::partition_check(v, points, opt.seed * 10007 + v);
        err = std::max(err, r.max_error);
        herr = std::max(herr, r.max_h_error);
        lo = std::min(lo, r.min_energy_ratio);
        hi = std::max(hi, r.max_energy_ratio);
        overlap = overlap && r.max_active <= r.bound;
        in_set = in_set && r.all_in_index_set;
        run.rep.values.emplace_back("max_active_v" + std::to_string(v), r.max_active);
        run.rep.values.emplace_back("overlap_bound_v" + std::to_string(v), r.bound);
    }
    run.rep.inputs = {{"points_per_v", points}};
    run.rep.add("partition_error", err, 1e-12);
    run.rep.add("energy_partition_error", herr, 1e-12);
    run.rep.add_flag("bounded_overlap", overlap);
    run.rep.add_flag("active_indices_in_index_set", in_set);
    run.rep.add_lower("support_lower_ratio", lo, 0.25);
    run.rep.add("support_upper_ratio", hi, 16.0);
    return run.finish();
}

Report multiplier_xi_check(const Options& opt) {
    using namespace multiplier;
    Run run("multiplier-xi-check", opt);
    const auto vs = v_list(opt, {2}, {2, 3});
    const std::uint64_t base = opt.seed * 10007;
    for (int v : vs) {
        double worst = 0.0;
        if (v == 2) {
            for (int k = 0; k < 20; ++k) {
                const GroupPoint n = group::random_point(2, base + 100 + k, 1.5);
                const auto eval = multiplier::spherical_eval(2, n);
                const PPoint p{0.0, {0.3 + 0.1 * k}, {k % 6}};
                worst = std::max(worst, std::abs(xi_apply(2, eval, p) - n.x.squaredNorm() * eval(p)));
            }
        } else {
            const auto kq = haar_quadrature(3, OrthGroup::O, opt.order.value_or(8));
            for (int k = 0; k < 4; ++k) {
                const GroupPoint n = group::random_point(3, base + 200 + k, 1.0);
                const auto eval = multiplier::spherical_eval(3, n, &kq);
                const PPoint p{0.7, {0.9}, {k}};
                worst = std::max(worst, std::abs(xi_apply(3, eval, p, {1e-3, 1e-2}) - n.x.squaredNorm() * eval(p)));
            }
        }
        run.rep.add("xi_identity_v" + std::to_string(v), worst, v == 2 ? 1e-8 : 1e-3);
    }
    return run.finish();
}

Report multiplier_aleph_check(const Options& opt) {
    using namespace multiplier;
    Run run("multiplier-aleph-check", opt);
    const auto vs = v_list(opt, {2}, {2, 3, 4, 5});
    const std::uint64_t base = opt.seed * 10007;
    for (int v : vs) {
        double worst = 0.0;
        if (v == 2) {
            for (int k = 0; k < 20; ++k) {
                const GroupPoint n = group::random_point(2, base + 300 + k, 1.5);
                const auto eval = multiplier::spherical_eval(2, n);
                const PPoint p{0.0, {0.4 + 0.1 * k}, {k % 5}};
                worst = std::max(worst, std::abs(aleph_apply(2, eval, p, {1e-2, 1e-2}) - n.a.squaredNorm() * eval(p)));
            }
        } else {
            const auto kq = haar_quadrature(v, OrthGroup::O, opt.order.value_or(v == 3 ? 8 : 20000), opt.seed);
            for (int k = 0; k < (v == 3 ? 3 : 1); ++k) {
                const GroupPoint n = group::random_point(v, base + 500 + k, v == 3 ? 0.8 : 0.7);
                const auto eval = multiplier::spherical_eval(v, n, &kq);
                const PPoint p = v == 3 ? PPoint{0.7, {0.9}, {k}} : PPoint{v == 5 ? 0.5 : 0.0, {0.6, 1.3}, {0, 1}};
                worst = std::max(worst, std::abs(aleph_apply(v, eval, p, {1e-2, 1e-2}) - n.a.squaredNorm() * eval(p)));
            }
        }
        run.rep.add("aleph_identity_v" + std::to_string(v), worst, v == 2 ? 1e-3 : v == 3 ? 1e-2 : 0.05);
    }
    return run.finish();
}

Report multiplier_criterion_check(const Options& opt) {
    using namespace multiplier;
    Run run("multiplier-criterion", opt);
    if (opt.v && *opt.v != 2) throw std::invalid_argument("the criterion check is implemented for v = 2");
    CriterionOptions co;
    co.eps = 2.5;
    const double lo = opt.lambda_range ? opt.lambda_range->first : 0.7, hi = opt.lambda_range ? opt.lambda_range->second : 1.3;
    const Window w{lo, hi, 0.1, opt.l_max.value_or(6)};
    const SpectralEval cell = [](const PPoint& p) {
        return cplx(smooth_bump((p.lambda[0] - 1.0) / 0.25) * smooth_bump((p.l[0] - 3.0) / 3.0));
    };
    run.rep.table.columns = {"kind", "points_per_axis", "window", "value", "cells"};
    std::vector<double> vals;
    for (int m : {128, 256, 512}) {
        co.points_per_axis = m;
        const auto r = multiplier_criterion(2, cell, w, co);
        run.rep.table.rows.push_back({0, double(m), 0, r.value, double(r.cells)});
        vals.push_back(r.value);
    }
    double spread = 0.0;
    for (double x : vals) spread = std::max(spread, std::abs(x - vals.back()) / vals.back());
    co.points_per_axis = 128;
    const SpectralEval one = [](const PPoint&) { return cplx(1.0); };
    std::vector<double> growth;
    for (int k = 1; k <= 4; ++k) {
        const Window wk{std::exp2(-0.5 * k), std::exp2(0.5 * k), 0.1, (1 << k) - 1};
        const auto r = multiplier_criterion(2, one, wk, co);
        run.rep.table.rows.push_back({1, 128, double(k), r.value, double(r.cells)});
        growth.push_back(r.value);
    }
    bool increasing = true;
    for (std::size_t i = 1; i < growth.size(); ++i) increasing = increasing && growth[i] > growth[i - 1];
    run.rep.inputs = {{"v", 2}, {"eps", co.eps}, {"lambda_min", lo}, {"lambda_max", hi}, {"l_max", w.l_max}};
    run.rep.values = {{"bump_value", vals.back()}, {"constant_growth_ratio", growth.back() / growth.front()}};
    run.rep.add("bump_refinement_spread", spread, 0.05);
    run.rep.add_flag("constant_grows_with_window", increasing);
    run.rep.add_lower("constant_growth_ratio", growth.back() / growth.front(), 2.0);
    return run.finish();
}

}  // namespace nilharm::checks
