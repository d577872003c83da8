#include "nilharm/plancherel.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <tuple>
#include <stdexcept>

#include "nilharm/quadrature.hpp"
#include "nilharm/specfun.hpp"

namespace nilharm::plancherel {

using group::GroupPoint;
using matpolar::OrthGroup;

double plancherel_constant(int v) {
    if (v < 2) throw std::invalid_argument("plancherel_constant: v must be at least 2");
    const int vp = v / 2;
    const double e = 0.5 * v * (v - 1);
    if (v % 2 == 0) return std::pow(2.0 * M_PI, -e - vp);
    return 2.0 * std::pow(2.0 * M_PI, -e - 1.0 - vp);
}

double plancherel_density(int v, const Eigen::VectorXd& lambda) {
    if (lambda.size() != v / 2) throw std::invalid_argument("plancherel_density: lambda must have length v/2");
    double prod = 1.0;
    for (int i = 0; i < lambda.size(); ++i) prod *= lambda(i);
    return plancherel_constant(v) * prod * matpolar::eta_density(lambda, v);
}

double plancherel_weight(const SphericalParam& param) {
    return plancherel_density(param.v, Eigen::Map<const Eigen::VectorXd>(param.lambda_star.data(),
                                                                        static_cast<Eigen::Index>(param.lambda_star.size())));
}

namespace {

void decreasing_tuples(int depth, int below, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (depth == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = below - 1; i >= depth - 1; --i) {
        cur.push_back(i);
        decreasing_tuples(depth - 1, i, cur, out);
        cur.pop_back();
    }
}

void bounded_multi_indices(int dims, int budget, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (dims == 0) {
        out.push_back(cur);
        return;
    }
    for (int l = 0; l <= budget; ++l) {
        cur.push_back(l);
        bounded_multi_indices(dims - 1, budget - l, cur, out);
        cur.pop_back();
    }
}

}  // namespace

SpectralGrid make_grid(int v, OrthGroup group, const GridOptions& opt) {
    if (v < 2) throw std::invalid_argument("make_grid: v must be at least 2");
    if (!(opt.lambda_min > 0 && opt.lambda_max > opt.lambda_min))
        throw std::invalid_argument("make_grid: need 0 < lambda_min < lambda_max");
    if (opt.lambda_cells < 1 || opt.l_max < 0 || opt.r_cells < 1 || !(opt.r_max > 0))
        throw std::invalid_argument("make_grid: bad truncation parameters");
    const bool odd = (v % 2 == 1);
    if (odd && group == OrthGroup::SO)
        throw std::invalid_argument("make_grid: SO(v) grids are only provided for even v");
    const int vp = v / 2;
    if (opt.lambda_cells < vp) throw std::invalid_argument("make_grid: fewer cells than lambda coordinates");

    std::vector<double> edges(opt.lambda_cells + 1);
    for (int i = 0; i <= opt.lambda_cells; ++i) {
        const double t = static_cast<double>(i) / opt.lambda_cells;
        edges[i] = opt.log_spaced ? opt.lambda_min * std::pow(opt.lambda_max / opt.lambda_min, t)
                                  : opt.lambda_min + t * (opt.lambda_max - opt.lambda_min);
    }

    std::vector<std::vector<int>> cells, ls;
    std::vector<int> cur;
    decreasing_tuples(vp, opt.lambda_cells, cur, cells);
    bounded_multi_indices(vp, opt.l_max, cur, ls);

    std::vector<std::optional<int>> eps = {std::nullopt};
    double eps_factor = 1.0;
    if (group == OrthGroup::SO) {
        eps = {1, -1};
        eps_factor = 0.5;
    }
    const int nr = odd ? opt.r_cells : 1;
    const double dr = opt.r_max / opt.r_cells;

    SpectralGrid grid{v, group, opt, {}, {}, {}};
    for (const auto& c : cells) {
        Eigen::VectorXd lam(vp);
        double vol = 1.0;
        bool edge = false;
        for (int b = 0; b < vp; ++b) {
            lam(b) = 0.5 * (edges[c[b]] + edges[c[b] + 1]);
            vol *= edges[c[b] + 1] - edges[c[b]];
            edge = edge || c[b] == 0 || c[b] == opt.lambda_cells - 1;
        }
        const double base = plancherel_density(v, lam) * vol * eps_factor;
        const std::vector<double> lamv(lam.data(), lam.data() + vp);
        for (int ri = 0; ri < nr; ++ri) {
            const double r = odd ? (ri + 0.5) * dr : 0.0;
            const double w = odd ? base * dr : base;
            const bool redge = edge || (odd && ri == nr - 1);
            for (const auto& e : eps) {
                AtomBlock blk{static_cast<int>(grid.atoms.size()), static_cast<int>(ls.size())};
                for (const auto& l : ls) {
                    int total = 0;
                    for (int x : l) total += x;
                    grid.atoms.push_back({spherical::make_param(v, r, lamv, l, e), w});
                    grid.boundary.push_back(redge || total == opt.l_max);
                }
                grid.blocks.push_back(blk);
            }
        }
    }
    return grid;
}

std::vector<cplx> sample_on_grid(const std::function<cplx(const SphericalParam&)>& g, const SpectralGrid& grid) {
    std::vector<cplx> out;
    out.reserve(grid.size());
    for (const auto& a : grid.atoms) out.push_back(g(a.param));
    return out;
}

TransformResult transform_direct(const group::GroupFunction& f, const SphericalParam& param,
                                 const matpolar::OrthQuadrature& kq, const group::HaarOptions& opt) {
    TransformResult out;
    for (int i = 0; i < 6 && !kq.nodes.empty(); ++i) {
        const GroupPoint p = group::random_point(param.v, 9001 + i, 1.0);
        const auto& k = kq.nodes[(i * 7919) % kq.nodes.size()];
        const cplx a = f(p), b = f(group::k_action(k, p));
        if (std::abs(a - b) > 1e-8 * (1.0 + std::abs(a))) out.radial_warning = true;
    }
    const auto res = group::haar_integrate_group(
        [&](const GroupPoint& p) { return f(p) * spherical::phi_eval(param, p, kq); }, group::GroupDims::of(param.v),
        opt);
    out.value = res.value;
    out.error_estimate = res.error_estimate;
    out.tail_warning = res.tail_warning;
    return out;
}

namespace {

struct ReducedBlock {
    double lambda;
    double r;
    int eps;
    int l_max;
};

// For v = 2, 3: returns, for each block, <f, phi> for l = 0..l_max.
std::vector<std::vector<cplx>> reduced_blocks(const group::GroupFunction& f, int v,
                                              const std::vector<ReducedBlock>& blocks, const ReducedOptions& opt) {
    if (v != 2 && v != 3) throw std::invalid_argument("transform_reduced: only v = 2 and v = 3 are supported");
    const quad::Rule rr = quad::composite_legendre(0.0, opt.r_box, opt.r_panels, opt.order);
    const quad::Rule ar = quad::composite_legendre(-opt.a_box, opt.a_box, opt.a_panels, opt.order);
    const int nr = static_cast<int>(rr.size()), na = static_cast<int>(ar.size());
    quad::Rule xr{{0.0}, {1.0}};
    quad::Rule mr{{0.0}, {1.0}};
    if (v == 3) {
        xr = quad::composite_legendre(-opt.x_box, opt.x_box, opt.x_panels, opt.order);
        mr = quad::composite_legendre(-opt.a_box, opt.a_box, opt.marginal_panels, opt.order);
    }
    const int nx = static_cast<int>(xr.size()), nm = static_cast<int>(mr.size());

    // g[(i * nx + j) * na + k] = marginal of f at r_i, x_j, a12_k
    std::vector<cplx> g(static_cast<std::size_t>(nr) * nx * na, 0.0);
    GroupPoint p = group::identity(v);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nx; ++j)
            for (int k = 0; k < na; ++k) {
                p.x.setZero();
                p.x(0) = rr.x[i];
                if (v == 3) p.x(2) = xr.x[j];
                p.a(0) = ar.x[k];
                cplx s = 0.0;
                if (v == 2) {
                    s = f(p);
                } else {
                    for (int m1 = 0; m1 < nm; ++m1)
                        for (int m2 = 0; m2 < nm; ++m2) {
                            p.a(1) = mr.x[m1];
                            p.a(2) = mr.x[m2];
                            s += mr.w[m1] * mr.w[m2] * f(p);
                        }
                }
                g[(static_cast<std::size_t>(i) * nx + j) * na + k] = s;
            }

    std::vector<std::vector<cplx>> out;
    std::map<std::pair<double, int>, std::vector<cplx>> cache;  // (lambda, eps) -> G[i * nx + j]
    for (const auto& b : blocks) {
        const auto key = std::make_pair(b.lambda, b.eps);
        auto it = cache.find(key);
        if (it == cache.end()) {
            if (cache.size() > 4) cache.clear();
            std::vector<cplx> phase(na);
            for (int k = 0; k < na; ++k) phase[k] = ar.w[k] * std::polar(1.0, b.eps * b.lambda * ar.x[k]);
            std::vector<cplx> G(static_cast<std::size_t>(nr) * nx, 0.0);
            for (int ij = 0; ij < nr * nx; ++ij) {
                cplx s = 0.0;
                const cplx* row = &g[static_cast<std::size_t>(ij) * na];
                for (int k = 0; k < na; ++k) s += row[k] * phase[k];
                G[ij] = s;
            }
            it = cache.emplace(key, std::move(G)).first;
        }
        const auto& G = it->second;
        std::vector<cplx> res(b.l_max + 1, 0.0);
        for (int i = 0; i < nr; ++i) {
            cplx F = 0.0;
            for (int j = 0; j < nx; ++j) F += xr.w[j] * G[i * nx + j] * std::polar(1.0, b.r * xr.x[j]);
            const auto lag = specfun::laguerre_norm_table(b.l_max, 0.0, 0.5 * b.lambda * rr.x[i] * rr.x[i]);
            const cplx c = 2.0 * M_PI * rr.w[i] * rr.x[i] * F;
            for (int l = 0; l <= b.l_max; ++l) res[l] += c * lag[l];
        }
        out.push_back(std::move(res));
    }
    return out;
}

ReducedBlock block_of(const SphericalParam& param) {
    if (param.v != 2 && param.v != 3)
        throw std::invalid_argument("transform_reduced: only v = 2 and v = 3 are supported");
    if (param.lambda_star[0] <= 0) throw std::invalid_argument("transform_reduced: lambda must be positive");
    return {param.lambda_star[0], param.r_star, param.epsilon.value_or(1), param.l[0]};
}

}  // namespace

cplx transform_reduced(const group::GroupFunction& f, const SphericalParam& param, const ReducedOptions& opt) {
    const ReducedBlock b = block_of(param);
    return reduced_blocks(f, param.v, {b}, opt)[0][b.l_max];
}

std::vector<cplx> transform_grid(const group::GroupFunction& f, const SpectralGrid& grid, const ReducedOptions& opt) {
    std::vector<ReducedBlock> blocks;
    for (const auto& blk : grid.blocks) {
        ReducedBlock b = block_of(grid.atoms[blk.first].param);
        for (int i = 0; i < blk.count; ++i) b.l_max = std::max(b.l_max, grid.atoms[blk.first + i].param.l[0]);
        blocks.push_back(b);
    }
    const auto vals = reduced_blocks(f, grid.v, blocks, opt);
    std::vector<cplx> out(grid.size());
    for (std::size_t bi = 0; bi < grid.blocks.size(); ++bi) {
        const auto& blk = grid.blocks[bi];
        for (int i = 0; i < blk.count; ++i) out[blk.first + i] = vals[bi][grid.atoms[blk.first + i].param.l[0]];
    }
    return out;
}

double tail_ratio(const std::vector<cplx>& ghat, const SpectralGrid& grid) {
    if (ghat.size() != grid.size()) throw std::invalid_argument("tail_ratio: size mismatch");
    double all = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < ghat.size(); ++i) {
        const double m = std::abs(ghat[i]) * grid.atoms[i].weight;
        all += m;
        if (grid.boundary[i]) edge += m;
    }
    return all > 0 ? edge / all : 0.0;
}

namespace {

struct InversionPlan {
    struct Block {
        int first, count, lmax;
    };
    std::vector<Block> blocks;
};

InversionPlan make_plan(const std::vector<cplx>& ghat, const SpectralGrid& grid, const matpolar::OrthQuadrature& kq) {
    if (ghat.size() != grid.size()) throw std::invalid_argument("inversion: size mismatch");
    if ((kq.group == OrthGroup::SO) != (grid.group == OrthGroup::SO))
        throw std::invalid_argument("inversion: quadrature group does not match the grid");
    InversionPlan plan;
    for (const auto& blk : grid.blocks) {
        bool active = false;
        int lmax = 0;
        for (int i = blk.first; i < blk.first + blk.count; ++i) {
            if (ghat[i] != 0.0) active = true;
            for (int l : grid.atoms[i].param.l) lmax = std::max(lmax, l);
        }
        if (active) plan.blocks.push_back({blk.first, blk.count, lmax});
    }
    return plan;
}

cplx evaluate_plan(const InversionPlan& plan, const std::vector<cplx>& ghat, const GroupPoint& p,
                   const SpectralGrid& grid, const matpolar::OrthQuadrature& kq) {
    if (p.v() != grid.v) throw std::invalid_argument("inversion: dimension mismatch");
    const int v = grid.v, vp = v / 2;
    cplx total = 0.0;
    double wsum = 0.0;
    std::vector<std::vector<double>> tables(vp);
    for (std::size_t n = 0; n < kq.nodes.size(); ++n) {
        const GroupPoint q = group::k_action(kq.nodes[n], p);
        cplx node_sum = 0.0;
        for (const auto& blk : plan.blocks) {
            const SphericalParam& par = grid.atoms[blk.first].param;
            double phase = (v % 2 == 1) ? par.r_star * q.x(v - 1) : 0.0;
            for (int b = 0; b < vp; ++b) {
                double lam = par.lambda_star[b];
                if (b == vp - 1 && par.epsilon) lam *= *par.epsilon;
                phase += lam * q.a(group::pair_index(2 * b, 2 * b + 1, v));
                const double rho2 = q.x(2 * b) * q.x(2 * b) + q.x(2 * b + 1) * q.x(2 * b + 1);
                tables[b] = specfun::laguerre_norm_table(blk.lmax, 0.0, 0.5 * par.lambda_star[b] * rho2);
            }
            cplx s = 0.0;
            for (int i = blk.first; i < blk.first + blk.count; ++i) {
                if (ghat[i] == 0.0) continue;
                double lag = 1.0;
                for (int b = 0; b < vp; ++b) lag *= tables[b][grid.atoms[i].param.l[b]];
                s += ghat[i] * grid.atoms[i].weight * lag;
            }
            node_sum += s * std::polar(1.0, -phase);
        }
        total += kq.weights[n] * node_sum;
        wsum += kq.weights[n];
    }
    return total / wsum;
}

}  // namespace

InversionResult inversion(const std::vector<cplx>& ghat, const GroupPoint& p, const SpectralGrid& grid,
                          const matpolar::OrthQuadrature& kq, double tol) {
    InversionResult out;
    out.value = evaluate_plan(make_plan(ghat, grid, kq), ghat, p, grid, kq);
    out.tail_ratio = tail_ratio(ghat, grid);
    out.tail_flag = out.tail_ratio > tol;
    return out;
}

group::GroupFunction inverse_function(std::vector<cplx> ghat, const SpectralGrid& grid,
                                      const matpolar::OrthQuadrature& kq) {
    auto plan = std::make_shared<const InversionPlan>(make_plan(ghat, grid, kq));
    auto data = std::make_shared<const std::tuple<std::vector<cplx>, SpectralGrid, matpolar::OrthQuadrature>>(
        std::move(ghat), grid, kq);
    return [plan, data](const GroupPoint& p) {
        return evaluate_plan(*plan, std::get<0>(*data), p, std::get<1>(*data), std::get<2>(*data));
    };
}

double radial_norm2(const group::GroupFunction& f, int v, const NormOptions& opt) {
    if (v == 2) {
        const quad::Rule rr = quad::composite_legendre(0.0, opt.r_box, opt.panels, opt.order);
        const quad::Rule ar = quad::composite_legendre(-opt.a_box, opt.a_box, 2 * opt.panels, opt.order);
        double s = 0.0;
        GroupPoint p = group::identity(2);
        for (std::size_t i = 0; i < rr.size(); ++i)
            for (std::size_t k = 0; k < ar.size(); ++k) {
                p.x(0) = rr.x[i];
                p.a(0) = ar.x[k];
                s += rr.w[i] * rr.x[i] * ar.w[k] * std::norm(f(p));
            }
        return 2.0 * M_PI * s;
    }
    const auto res = group::haar_integrate_group([&](const GroupPoint& p) { return cplx(std::norm(f(p))); },
                                                 group::GroupDims::of(v), opt.haar);
    return res.value.real();
}

ParsevalResult parseval_residual(const group::GroupFunction& f, const std::vector<cplx>& ghat,
                                 const SpectralGrid& grid, const NormOptions& opt) {
    if (ghat.size() != grid.size()) throw std::invalid_argument("parseval_residual: size mismatch");
    ParsevalResult out;
    out.group_norm2 = radial_norm2(f, grid.v, opt);
    for (std::size_t i = 0; i < ghat.size(); ++i) out.spectral_norm2 += std::norm(ghat[i]) * grid.atoms[i].weight;
    out.residual = std::abs(out.group_norm2 - out.spectral_norm2);
    out.relative = out.group_norm2 > 0 ? out.residual / out.group_norm2 : out.residual;
    return out;
}

KernelHandle multiplier_kernel(const std::function<cplx(double)>& m, const SpectralGrid& grid,
                               const matpolar::OrthQuadrature& kq, double tol) {
    KernelHandle h;
    h.ghat = sample_on_grid([&](const SphericalParam& p) { return m(spherical::sublaplacian_eigenvalue(p)); }, grid);
    h.tail_ratio = tail_ratio(h.ghat, grid);
    h.tail_flag = h.tail_ratio > tol;
    h.eval = inverse_function(h.ghat, grid, kq);
    return h;
}

}  // namespace nilharm::plancherel
