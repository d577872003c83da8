#include "nilharm/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nilharm::specfun {

namespace {

constexpr double kSeriesSwitch = 12.0;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::domain_error(std::string(what) + ": non-finite argument");
}

double bessel_series(double alpha, double z) {
    const double q = -0.25 * z * z;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 200; ++k) {
        term *= q / ((k + 1.0) * (alpha + k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) break;
    }
    return sum;
}

double bessel_j(double nu, double z) {
    if (nu >= 0) return std::cyl_bessel_j(nu, z);
    return 2.0 * (nu + 1.0) / z * bessel_j(nu + 1.0, z) - bessel_j(nu + 2.0, z);
}

}  // namespace

double bessel_reduced(double alpha, double z) {
    require_finite(alpha, "bessel_reduced");
    require_finite(z, "bessel_reduced");
    if (alpha <= -1.0) throw std::domain_error("bessel_reduced: alpha must exceed -1");
    z = std::abs(z);
    if (z < kSeriesSwitch) return bessel_series(alpha, z);
    const double scale = std::exp(std::lgamma(alpha + 1.0) - alpha * std::log(0.5 * z));
    return scale * bessel_j(alpha, z);
}

double bessel_reduced_deriv(double alpha, double z, int order) {
    if (order < 0 || order > 4) throw std::domain_error("bessel_reduced_deriv: order out of range");
    require_finite(z, "bessel_reduced_deriv");
    // derivative = sum_k c_k z^{p_k} J_{alpha + s_k}
    struct Term { double c; int p; int s; };
    std::vector<Term> terms{{1.0, 0, 0}};
    for (int d = 0; d < order; ++d) {
        std::vector<Term> next;
        for (const auto& t : terms) {
            if (t.p > 0) next.push_back({t.c * t.p, t.p - 1, t.s});
            next.push_back({-t.c / (2.0 * (alpha + t.s + 1.0)), t.p + 1, t.s + 1});
        }
        terms = std::move(next);
    }
    double sum = 0.0;
    for (const auto& t : terms) sum += t.c * std::pow(z, t.p) * bessel_reduced(alpha + t.s, z);
    return sum;
}

double laguerre_poly(int n, double alpha, double x) {
    if (n < 0) return 0.0;
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double log_binomial(int n, double alpha) {
    return std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0) - std::lgamma(alpha + 1.0);
}

namespace {

// psi_n^(alpha)(x) = L_n^(alpha)(x) e^{-x/2}, scaled by exp(-logscale)
double psi_scaled(int n, double alpha, double x, double logscale) {
    if (n < 0) return 0.0;
    const double p = laguerre_poly(n, alpha, x);
    if (p == 0.0) return 0.0;
    if (!std::isfinite(p)) return 0.0;
    return p * std::exp(-0.5 * x - logscale);
}

double psi_deriv(int n, double alpha, double x, int order, double logscale) {
    if (n < 0) return 0.0;
    if (order == 0) return psi_scaled(n, alpha, x, logscale);
    return -0.5 * psi_deriv(n, alpha, x, order - 1, logscale) -
           psi_deriv(n - 1, alpha + 1.0, x, order - 1, logscale);
}

}  // namespace

double laguerre_norm(int n, double alpha, double x) {
    return laguerre_norm_deriv(n, alpha, x, 0);
}

double laguerre_norm_deriv(int n, double alpha, double x, int order) {
    require_finite(x, "laguerre_norm");
    require_finite(alpha, "laguerre_norm");
    if (alpha <= -1.0) throw std::domain_error("laguerre_norm: alpha must exceed -1");
    if (n < 0) throw std::domain_error("laguerre_norm: negative degree");
    if (order < 0 || order > 3) throw std::domain_error("laguerre_norm_deriv: order out of range");
    return psi_deriv(n, alpha, x, order, log_binomial(n, alpha));
}

std::vector<double> laguerre_norm_table(int nmax, double alpha, double x) {
    require_finite(x, "laguerre_norm");
    if (alpha <= -1.0) throw std::domain_error("laguerre_norm: alpha must exceed -1");
    if (nmax < 0) throw std::domain_error("laguerre_norm: negative degree");
    std::vector<double> out(nmax + 1);
    const double e = std::exp(-0.5 * x);
    double prev = 0.0, cur = 1.0, binom = 1.0;
    for (int n = 0; n <= nmax; ++n) {
        if (n > 0) binom *= (n + alpha) / n;
        out[n] = cur * e / binom;
        const double next = ((2.0 * n + 1.0 + alpha - x) * cur - (n + alpha) * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    return out;
}

double hermite_weber(int k, double x, int kmax) {
    require_finite(x, "hermite_weber");
    if (k < 0) throw std::domain_error("hermite_weber: negative index");
    if (k > kmax) throw std::range_error("hermite_weber: index above configured maximum");
    double prev = 0.0;
    double cur = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    for (int j = 0; j < k; ++j) {
        const double next = x * std::sqrt(2.0 / (j + 1.0)) * cur - std::sqrt(j / (j + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::complex<double> apply_seq_operator(SeqOp op, const Sequence& R, int l) {
    using C = std::complex<double>;
    auto minus = [&]() -> C { return l > 0 ? R(l - 1) : C(0.0); };
    const double dl = l;
    switch (op) {
        case SeqOp::identity:
            return R(l);
        case SeqOp::tau_plus:
            return R(l + 1);
        case SeqOp::tau_minus:
            return minus();
        case SeqOp::delta:
            return R(l + 1) - R(l);
        case SeqOp::alpha:
            return -0.5 * R(l) - 0.5 * dl * minus() + 0.5 * (dl + 1.0) * R(l + 1);
        case SeqOp::beta:
            return -(dl + 1.0) * R(l + 1) + (2.0 * dl + 1.0) * R(l) - dl * minus();
        case SeqOp::gamma:
            return -0.25 * (2.0 * dl + 1.0) * R(l) - 0.25 * dl * minus() - 0.25 * (dl + 1.0) * R(l + 1);
    }
    throw std::logic_error("apply_seq_operator: unknown operator");
}

Sequence compose(SeqOp op, Sequence R) {
    return [op, R = std::move(R)](int l) { return apply_seq_operator(op, R, l); };
}

std::complex<double> apply_seq_operators(std::span<const SeqOp> ops, const Sequence& R, int l) {
    Sequence s = R;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) s = compose(*it, s);
    return s(l);
}

}  // namespace nilharm::specfun
