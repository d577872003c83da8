#include "nilharm/multiplier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nilharm/specfun.hpp"

namespace nilharm::multiplier {

namespace {

double transition(double t) {
    auto e = [](double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; };
    const double a = e(t), b = e(1.0 - t);
    return a / (a + b);
}

int vprime(int v) { return v / 2; }
int pairs(int n) { return n * (n - 1) / 2; }

/// Dyadic bins k with bump(2^{-k} q) != 0.
std::vector<std::pair<int, double>> active_bins(double q) {
    std::vector<std::pair<int, double>> out;
    if (!(q > 0) || !std::isfinite(q)) return out;
    const int k0 = static_cast<int>(std::floor(std::log2(q)));
    for (int k = k0 - 1; k <= k0 + 1; ++k) {
        const double b = bump(std::ldexp(q, -k));
        if (b > 0) out.emplace_back(k, b);
    }
    return out;
}

}  // namespace

double bump(double y) {
    if (!(y > 0.5) || !(y < 2.0)) return 0.0;
    const double t = std::log2(y);
    return t <= 0 ? transition(t + 1.0) : 1.0 - transition(t);
}

int pair_index(int i, int j, int n) {
    if (!(0 <= i && i < j && j < n)) throw std::out_of_range("pair_index: need 0 <= i < j < n");
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

double s_iota(const MultIndex& idx) {
    double s = 0.0;
    for (std::size_t i = 0; i < idx.eta.size(); ++i) s += std::exp2(0.5 * idx.eta[i] + idx.zeta[i]);
    if (idx.theta) s += std::exp2(0.5 * *idx.theta);
    return s;
}

double min_delta(const MultIndex& idx) {
    if (!idx.delta.empty()) return *std::min_element(idx.delta.begin(), idx.delta.end());
    return *std::min_element(idx.eta.begin(), idx.eta.end());
}

namespace {

double eta_spread(const MultIndex& idx) {
    const double md = min_delta(idx);
    double m = 0.0;
    for (int e : idx.eta) m = std::max(m, std::abs(e - md));
    return m;
}

}  // namespace

double L_iota(const MultIndex& idx) { return min_delta(idx) + 4.0 * eta_spread(idx); }

double R_iota(const MultIndex& idx) {
    const double md = min_delta(idx);
    return 0.5 * (idx.theta ? std::max<double>(*idx.theta, md) : md);
}

double D_iota(const MultIndex& idx) {
    double d = 8.0 * eta_spread(idx);
    if (idx.theta) d += std::max(*idx.theta - min_delta(idx), 0.0);
    d += 4.0 * *std::max_element(idx.zeta.begin(), idx.zeta.end());
    return d;
}

double d_eta_delta(const MultIndex& idx, int v) {
    const double sd = std::accumulate(idx.delta.begin(), idx.delta.end(), 0.0);
    const double se = std::accumulate(idx.eta.begin(), idx.eta.end(), 0.0);
    return sd + (v % 2 ? 0.75 : 0.25) * se;
}

bool in_index_set(const MultIndex& idx, int v, bool printed_delta_bound) {
    const int n = vprime(v);
    if (static_cast<int>(idx.eta.size()) != n || static_cast<int>(idx.zeta.size()) != n) return false;
    if (static_cast<int>(idx.delta.size()) != pairs(n)) return false;
    if (idx.theta.has_value() != (v % 2 == 1)) return false;
    for (int z : idx.zeta)
        if (z < 0) return false;
    for (int i = 0; i + 1 < n; ++i)
        if (idx.eta[i] > idx.eta[i + 1] + 1) return false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double ei = std::exp2(idx.eta[i]), ej = std::exp2(idx.eta[j]);
            const double d = std::exp2(idx.delta[pair_index(i, j, n)]);
            const double lower = printed_delta_bound ? ej - 4 * ei : 0.25 * ej - ei;
            if (d < lower || d > 4 * ej - ei) return false;
        }
    return true;
}

double chi_iota(const MultIndex& idx, const PPoint& p) {
    const int n = static_cast<int>(p.lambda.size());
    double c = 1.0;
    if (idx.theta) c *= bump(std::ldexp(std::pow(p.r, 4), -*idx.theta));
    for (int i = 0; i < n && c != 0.0; ++i) {
        c *= bump(std::ldexp(p.l[i] + 1.0, -idx.zeta[i]));
        c *= bump(std::ldexp(p.lambda[i] * p.lambda[i], -idx.eta[i]));
    }
    for (int i = 0; i < n && c != 0.0; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double gap = p.lambda[j] * p.lambda[j] - p.lambda[i] * p.lambda[i];
            c *= bump(std::ldexp(gap, -idx.delta[pair_index(i, j, n)]));
        }
    return c;
}

double spectral_energy(const PPoint& p) {
    double e = p.r * p.r;
    for (std::size_t i = 0; i < p.lambda.size(); ++i) e += p.lambda[i] * (2.0 * p.l[i] + 1.0);
    return e;
}

double chi_h(int h, const PPoint& p) { return bump(std::ldexp(spectral_energy(p), -h)); }

std::vector<MultIndex> enumerate_active(int v, const PPoint& p) {
    const int n = vprime(v);
    if (static_cast<int>(p.lambda.size()) != n || static_cast<int>(p.l.size()) != n)
        throw std::invalid_argument("enumerate_active: point does not match v");
    // one list of bins per binned quantity: theta, eta_i, delta_ij, zeta_i
    std::vector<std::vector<std::pair<int, double>>> bins;
    if (v % 2) bins.push_back(active_bins(std::pow(p.r, 4)));
    for (int i = 0; i < n; ++i) bins.push_back(active_bins(p.lambda[i] * p.lambda[i]));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            bins.push_back(active_bins(p.lambda[j] * p.lambda[j] - p.lambda[i] * p.lambda[i]));
    for (int i = 0; i < n; ++i) bins.push_back(active_bins(p.l[i] + 1.0));
    for (const auto& b : bins)
        if (b.empty()) return {};
    std::vector<MultIndex> out;
    std::vector<std::size_t> pos(bins.size(), 0);
    while (true) {
        MultIndex idx;
        std::size_t q = 0;
        if (v % 2) idx.theta = bins[q++][pos[0]].first;
        for (int i = 0; i < n; ++i, ++q) idx.eta.push_back(bins[q][pos[q]].first);
        for (int k = 0; k < pairs(n); ++k, ++q) idx.delta.push_back(bins[q][pos[q]].first);
        for (int i = 0; i < n; ++i, ++q) idx.zeta.push_back(bins[q][pos[q]].first);
        out.push_back(std::move(idx));
        std::size_t k = 0;
        while (k < bins.size() && ++pos[k] == bins[k].size()) pos[k++] = 0;
        if (k == bins.size()) break;
    }
    return out;
}

int overlap_bound(int v) {
    const int n = vprime(v);
    return 1 << ((v % 2) + n + pairs(n) + n);
}

PPoint random_point(int v, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> loglam(std::log(0.01), std::log(100.0));
    std::uniform_real_distribution<double> logr(std::log(0.01), std::log(10.0));
    std::uniform_int_distribution<int> li(0, 50);
    PPoint p;
    for (int i = 0; i < vprime(v); ++i) {
        p.lambda.push_back(std::exp(loglam(rng)));
        p.l.push_back(li(rng));
    }
    std::sort(p.lambda.begin(), p.lambda.end());
    if (v % 2) p.r = std::exp(logr(rng));
    return p;
}

PartitionReport partition_check(int v, int points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PartitionReport rep;
    rep.points = points;
    rep.bound = overlap_bound(v);
    rep.min_energy_ratio = INFINITY;
    for (int k = 0; k < points; ++k) {
        const PPoint p = random_point(v, rng);
        const auto act = enumerate_active(v, p);
        const double energy = spectral_energy(p);
        double sum = 0.0;
        for (const auto& idx : act) {
            sum += chi_iota(idx, p);
            rep.all_in_index_set = rep.all_in_index_set && in_index_set(idx, v);
            const double s = s_iota(idx);
            rep.min_energy_ratio = std::min(rep.min_energy_ratio, energy / s);
            rep.max_energy_ratio = std::max(rep.max_energy_ratio, energy / s);
            double hs = 0.0;
            for (int h = static_cast<int>(std::floor(std::log2(s))) - 4; h <= std::log2(s) + 6; ++h) {
                const double ph = std::exp2(h);
                if (ph > s / 8 && ph < 32 * s) hs += chi_h(h, p);
            }
            rep.max_h_error = std::max(rep.max_h_error, std::abs(hs - 1.0));
        }
        rep.max_error = std::max(rep.max_error, std::abs(sum - 1.0));
        rep.max_active = std::max(rep.max_active, static_cast<int>(act.size()));
    }
    return rep;
}

namespace {

using Op = std::function<cplx(const PPoint&)>;

Op shift(specfun::SeqOp op, int i, Op f) {
    return [op, i, f](const PPoint& p) {
        PPoint q = p;
        const specfun::Sequence seq = [&](int k) {
            q.l[i] = k;
            return f(q);
        };
        return specfun::apply_seq_operator(op, seq, p.l[i]);
    };
}

/// Richardson-extrapolated central difference of order 1 or 2 in lambda_i (i >= 0) or in r (i < 0).
Op deriv(int i, int order, double h, Op f) {
    return [=](const PPoint& p) {
        auto at = [&](double t) {
            PPoint q = p;
            if (i < 0) q.r += t;
            else q.lambda[i] += t;
            return f(q);
        };
        auto diff = [&](double s) -> cplx {
            if (order == 1) return (at(s) - at(-s)) / (2 * s);
            return (at(s) - 2.0 * at(0.0) + at(-s)) / (s * s);
        };
        return (4.0 * diff(0.5 * h) - diff(h)) / 3.0;
    };
}

void check_point(int v, const PPoint& p, double step) {
    const int n = vprime(v);
    if (static_cast<int>(p.lambda.size()) != n || static_cast<int>(p.l.size()) != n)
        throw std::invalid_argument("multiplier: point does not match v");
    for (int i = 0; i < n; ++i) {
        if (p.lambda[i] <= 10 * step) throw std::domain_error("multiplier: lambda_i too close to 0");
        if (i > 0 && p.lambda[i] - p.lambda[i - 1] <= 10 * step)
            throw std::domain_error("multiplier: lambda not well separated");
    }
}

}  // namespace

cplx xi_apply(int v, const SpectralEval& eval, const PPoint& p, const OperatorOptions& opt) {
    check_point(v, p, opt.lambda_step);
    cplx out = 0.0;
    for (int i = 0; i < vprime(v); ++i) out += 2.0 / p.lambda[i] * shift(specfun::SeqOp::beta, i, eval)(p);
    if (v % 2) out -= deriv(-1, 2, opt.r_step, eval)(p);
    return out;
}

cplx aleph_apply(int v, const SpectralEval& eval, const PPoint& p, const OperatorOptions& opt) {
    using specfun::SeqOp;
    check_point(v, p, opt.lambda_step);
    const int n = vprime(v);
    const double h = opt.lambda_step;
    auto al = [&](int i, Op f) { return shift(SeqOp::alpha, i, std::move(f)); };
    auto be = [&](int i, Op f) { return shift(SeqOp::beta, i, std::move(f)); };
    auto ga = [&](int i, Op f) { return shift(SeqOp::gamma, i, std::move(f)); };
    const Op f = eval;
    cplx total = 0.0;
    for (int m = 0; m < n; ++m) {
        const double lm = p.lambda[m];
        const Op a = al(m, f);
        total += deriv(m, 2, h, f)(p);
        total -= 2.0 / lm * al(m, deriv(m, 1, h, f))(p);
        total += (al(m, a)(p) + a(p)) / (lm * lm);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double li = p.lambda[i], lj = p.lambda[j];
            const double g = lj * lj - li * li;
            const cplx first = li * deriv(i, 1, h, f)(p) - al(i, f)(p) - lj * deriv(j, 1, h, f)(p) + al(j, f)(p);
            total += -4.0 / g * first;
            const cplx second = -al(j, f)(p) + lj / li * ga(j, be(i, f))(p) - al(i, f)(p) +
                                li / lj * ga(i, be(j, f))(p) - 2.0 * al(i, al(j, f))(p);
            total += 4.0 * (lj * lj + li * li) / (g * g) * second;
        }
    total = -total;
    if (v % 2) {
        const double r = p.r, hr = opt.r_step;
        for (int i = 0; i < n; ++i) {
            const double li = p.lambda[i];
            const cplx inner = li * ga(i, deriv(-1, 2, hr, f))(p) + 2.0 * r * al(i, deriv(-1, 1, hr, f))(p) +
                               r * r / li * be(i, f)(p) + r * deriv(-1, 1, hr, f)(p);
            total += 2.0 / (li * li) * inner - 2.0 / li * deriv(i, 1, h, f)(p) + 4.0 / (li * li) * al(i, f)(p);
        }
    }
    return total;
}

spherical::SphericalParam to_spherical(int v, const PPoint& p) {
    std::vector<double> lam(p.lambda.rbegin(), p.lambda.rend());
    std::vector<int> l(p.l.rbegin(), p.l.rend());
    return spherical::make_param(v, v % 2 ? p.r : 0.0, lam, l);
}

SpectralEval spherical_eval(int v, const group::GroupPoint& n, const matpolar::OrthQuadrature* kq) {
    if (v == 2)
        return [n](const PPoint& p) { return cplx(spherical::phi_v2_closed(p.lambda[0], p.l[0], n)); };
    if (!kq) throw std::invalid_argument("spherical_eval: v > 2 needs a K-quadrature");
    return [v, n, kq](const PPoint& p) { return spherical::phi_eval(to_spherical(v, p), n, *kq); };
}

std::vector<int> GridFunction::shape() const {
    std::vector<int> s;
    if (r_axis) s.push_back(r_axis->n);
    for (const auto& a : lambda_axes) s.push_back(a.n);
    for (const auto& a : l_axes) s.push_back(a.n);
    return s;
}

std::size_t GridFunction::size() const {
    std::size_t n = 1;
    for (int k : shape()) n *= k;
    return n;
}

double GridFunction::cell() const {
    double c = r_axis ? r_axis->step : 1.0;
    for (const auto& a : lambda_axes) c *= a.step;
    return c;
}

namespace {

struct Spectrum {
    std::vector<int> shape;       // padded
    std::vector<double> symbol;  // T-hat at every frequency
    std::vector<bool> high;      // outer quarter band on a continuous axis
    std::vector<cplx> data;      // forward transform of the padded samples
};

Spectrum spectrum(const GridFunction& g, double wl, double wr, double wd, int pad) {
    if (pad < 1) throw std::invalid_argument("t_norm: pad must be >= 1");
    if (g.values.size() != g.size()) throw std::invalid_argument("t_norm: value count does not match the grid");
    const auto shape = g.shape();
    const int rank = static_cast<int>(shape.size());
    Spectrum sp;
    for (int k : shape) sp.shape.push_back(k * pad);
    std::size_t total = 1;
    for (int k : sp.shape) total *= k;
    // per-axis symbol contribution and step
    std::vector<std::vector<double>> axis_sym(rank);
    std::vector<std::vector<bool>> axis_high(rank);
    int a = 0;
    auto continuous = [&](double step, double w) {
        const int N = sp.shape[a];
        for (int k = 0; k < N; ++k) {
            const int ks = k < (N + 1) / 2 ? k : k - N;
            const double xi = 2 * M_PI * ks / (N * step);
            axis_sym[a].push_back(w * xi * xi);
            axis_high[a].push_back(std::abs(ks) > N / 4);
        }
        ++a;
    };
    if (g.r_axis) continuous(g.r_axis->step, wr);
    for (const auto& ax : g.lambda_axes) continuous(ax.step, wl);
    for (std::size_t q = 0; q < g.l_axes.size(); ++q, ++a) {
        const int N = sp.shape[a];
        for (int k = 0; k < N; ++k) {
            axis_sym[a].push_back(wd * (2.0 - 2.0 * std::cos(2 * M_PI * k / N)));
            axis_high[a].push_back(false);
        }
    }
    sp.data.assign(total, 0.0);
    std::vector<int> idx(rank, 0);
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        std::size_t rem = k, off = 0;
        for (int d = rank - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(rem % shape[d]);
            rem /= shape[d];
        }
        for (int d = 0; d < rank; ++d) off = off * sp.shape[d] + idx[d];
        sp.data[off] = g.values[k];
    }
    auto* buf = reinterpret_cast<fftw_complex*>(sp.data.data());
    fftw_plan plan = fftw_plan_dft(rank, sp.shape.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    sp.symbol.assign(total, 1.0);
    sp.high.assign(total, false);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t rem = k;
        for (int d = rank - 1; d >= 0; --d) {
            const int i = static_cast<int>(rem % sp.shape[d]);
            rem /= sp.shape[d];
            sp.symbol[k] += axis_sym[d][i];
            if (axis_high[d][i]) sp.high[k] = true;
        }
    }
    return sp;
}

}  // namespace

TNormResult t_norm_weighted(const GridFunction& g, double wl, double wr, double wd, double exponent, int pad) {
    const Spectrum sp = spectrum(g, wl, wr, wd, pad);
    double sum = 0.0, high = 0.0;
    for (std::size_t k = 0; k < sp.data.size(); ++k) {
        const double e = std::norm(sp.data[k]) * std::pow(sp.symbol[k], 2 * exponent);
        sum += e;
        if (sp.high[k]) high += e;
    }
    TNormResult out;
    out.norm = std::sqrt(g.cell() * sum / sp.data.size());
    out.high_frequency_share = sum > 0 ? high / sum : 0.0;
    out.coarse_warning = out.high_frequency_share > 1e-3;
    return out;
}

GridFunction t_apply_weighted(const GridFunction& g, double wl, double wr, double wd, double exponent, int pad) {
    Spectrum sp = spectrum(g, wl, wr, wd, pad);
    for (std::size_t k = 0; k < sp.data.size(); ++k) sp.data[k] *= std::pow(sp.symbol[k], exponent) / sp.data.size();
    auto* buf = reinterpret_cast<fftw_complex*>(sp.data.data());
    fftw_plan plan = fftw_plan_dft(static_cast<int>(sp.shape.size()), sp.shape.data(), buf, buf, FFTW_BACKWARD,
                                   FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    GridFunction out = g;
    if (out.r_axis) out.r_axis->n *= pad;
    for (auto& a : out.lambda_axes) a.n *= pad;
    for (auto& a : out.l_axes) a.n *= pad;
    out.values = std::move(sp.data);
    return out;
}

TNormResult t_iota_norm(const GridFunction& g, const MultIndex& idx, double exponent, int pad) {
    return t_norm_weighted(g, std::exp2(0.5 * L_iota(idx)), std::exp2(0.5 * R_iota(idx)), std::exp2(0.5 * D_iota(idx)),
                           exponent, pad);
}

namespace {

std::vector<int> bin_range(double lo, double hi) {
    std::vector<int> out;
    for (int k = static_cast<int>(std::floor(std::log2(lo))) - 1; k <= static_cast<int>(std::ceil(std::log2(hi))) + 1; ++k)
        if (std::exp2(k - 1) < hi && std::exp2(k + 1) > lo) out.push_back(k);
    return out;
}

void check_window(int v, const Window& w) {
    if (!(w.lambda_min > 0) || !(w.lambda_max > w.lambda_min) || !std::isfinite(w.lambda_max))
        throw std::invalid_argument("multiplier_criterion: lambda window must be a bounded interval away from 0");
    if (vprime(v) >= 2 && !(w.gap_min > 0))
        throw std::invalid_argument("multiplier_criterion: gap_min must be positive for v' >= 2");
    if (v % 2 && (!(w.r_min > 0) || !(w.r_max > w.r_min) || !std::isfinite(w.r_max)))
        throw std::invalid_argument("multiplier_criterion: r window must be a bounded interval away from 0");
    if (w.l_max < 0) throw std::invalid_argument("multiplier_criterion: l_max must be >= 0");
}

}  // namespace

std::vector<MultIndex> window_indices(int v, const Window& w) {
    check_window(v, w);
    const int n = vprime(v);
    const auto eta = bin_range(w.lambda_min * w.lambda_min, w.lambda_max * w.lambda_max);
    const auto delta = bin_range(w.gap_min, w.lambda_max * w.lambda_max);
    std::vector<int> zeta;
    for (int k : bin_range(1.0, w.l_max + 1.0))
        if (k >= 0) zeta.push_back(k);
    std::vector<int> theta;
    if (v % 2) theta = bin_range(std::pow(w.r_min, 4), std::pow(w.r_max, 4));
    std::vector<const std::vector<int>*> lists;
    if (v % 2) lists.push_back(&theta);
    for (int i = 0; i < n; ++i) lists.push_back(&eta);
    for (int k = 0; k < pairs(n); ++k) lists.push_back(&delta);
    for (int i = 0; i < n; ++i) lists.push_back(&zeta);
    std::vector<MultIndex> out;
    std::vector<std::size_t> pos(lists.size(), 0);
    for (const auto* l : lists)
        if (l->empty()) return out;
    while (true) {
        MultIndex idx;
        std::size_t q = 0;
        if (v % 2) idx.theta = (*lists[q])[pos[q]], ++q;
        for (int i = 0; i < n; ++i, ++q) idx.eta.push_back((*lists[q])[pos[q]]);
        for (int k = 0; k < pairs(n); ++k, ++q) idx.delta.push_back((*lists[q])[pos[q]]);
        for (int i = 0; i < n; ++i, ++q) idx.zeta.push_back((*lists[q])[pos[q]]);
        if (in_index_set(idx, v)) out.push_back(std::move(idx));
        std::size_t k = 0;
        while (k < lists.size() && ++pos[k] == lists[k]->size()) pos[k++] = 0;
        if (k == lists.size()) break;
    }
    return out;
}

CriterionResult multiplier_criterion(int v, const SpectralEval& f, const Window& window, const CriterionOptions& opt) {
    const int n = vprime(v);
    const double Q = v * v;
    if (!(opt.eps > Q / 2)) throw std::invalid_argument("multiplier_criterion: eps must exceed Q/2");
    if (opt.points_per_axis < 2) throw std::invalid_argument("multiplier_criterion: points_per_axis must be >= 2");
    const double exponent = opt.exponent.value_or(opt.eps / 2);
    const auto cells = window_indices(v, window);
    CriterionResult res;
    res.cells = static_cast<int>(cells.size());
    const int m = opt.points_per_axis;
    for (const auto& idx : cells) {
        GridFunction g;
        auto cont = [m](double lo, double hi) { return ContinuousAxis{lo + 0.5 * (hi - lo) / m, (hi - lo) / m, m}; };
        if (idx.theta) g.r_axis = cont(std::exp2((*idx.theta - 1) / 4.0), std::exp2((*idx.theta + 1) / 4.0));
        for (int i = 0; i < n; ++i) g.lambda_axes.push_back(cont(std::exp2((idx.eta[i] - 1) / 2.0), std::exp2((idx.eta[i] + 1) / 2.0)));
        for (int i = 0; i < n; ++i) {
            const int lo = std::max(0, static_cast<int>(std::ceil(std::exp2(idx.zeta[i] - 1) - 1)));
            const int hi = static_cast<int>(std::floor(std::exp2(idx.zeta[i] + 1) - 1));
            g.l_axes.push_back({lo, hi - lo + 1});
        }
        const auto shape = g.shape();
        g.values.assign(g.size(), 0.0);
        bool nonzero = false;
        PPoint p;
        p.lambda.resize(n);
        p.l.resize(n);
        for (std::size_t k = 0; k < g.values.size(); ++k) {
            std::size_t rem = k;
            std::vector<int> ix(shape.size());
            for (int d = static_cast<int>(shape.size()) - 1; d >= 0; --d) {
                ix[d] = static_cast<int>(rem % shape[d]);
                rem /= shape[d];
            }
            int a = 0;
            if (g.r_axis) p.r = g.r_axis->origin + g.r_axis->step * ix[a++];
            for (int i = 0; i < n; ++i, ++a) p.lambda[i] = g.lambda_axes[i].origin + g.lambda_axes[i].step * ix[a];
            for (int i = 0; i < n; ++i, ++a) p.l[i] = g.l_axes[i].origin + ix[a];
            const double c = chi_iota(idx, p);
            if (c == 0.0) continue;
            g.values[k] = c * f(p);
            nonzero = nonzero || g.values[k] != 0.0;
        }
        if (!nonzero) continue;
        ++res.nonzero_cells;
        const TNormResult t = t_iota_norm(g, idx, exponent, opt.pad);
        res.coarse_warning = res.coarse_warning || t.coarse_warning;
        res.value += std::pow(s_iota(idx), -Q / 4) * std::exp2(d_eta_delta(idx, v)) * t.norm;
    }
    return res;
}

}  // namespace nilharm::multiplier
