#include "nilharm/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "nilharm/specfun.hpp"

namespace nilharm::quad {

namespace {

Rule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub, double mu0) {
    const int n = static_cast<int>(diag.size());
    Rule r;
    if (n == 1) {
        r.x = {diag(0)};
        r.w = {mu0};
        return r;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    r.x.resize(n);
    r.w.resize(n);
    for (int k = 0; k < n; ++k) {
        r.x[k] = es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        r.w[k] = mu0 * v0 * v0;
    }
    return r;
}

std::mutex cache_mutex;

Rule legendre_unit(int n) {
    static std::map<int, Rule> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(n, r);
    return r;
}

}  // namespace

Rule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    Rule r = legendre_unit(n);
    const double h = 0.5 * (b - a), c = 0.5 * (b + a);
    for (int i = 0; i < n; ++i) {
        r.x[i] = c + h * r.x[i];
        r.w[i] *= h;
    }
    return r;
}

Rule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be positive");
    if (alpha <= -1.0 || beta <= -1.0) throw std::domain_error("gauss_jacobi: exponents must exceed -1");
    static std::map<std::tuple<int, double, double>, Rule> cache;
    const auto key = std::make_tuple(n, alpha, beta);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const double ab = alpha + beta;
    Eigen::VectorXd d(n), s(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) {
        const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        d(k) = (k == 0) ? (beta - alpha) / (ab + 2.0)
                        : (beta * beta - alpha * alpha) / den;
    }
    for (int k = 1; k < n; ++k) {
        double b2;
        if (k == 1) {
            b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            const double t = 2.0 * k + ab;
            b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
        }
        s(k - 1) = std::sqrt(b2);
    }
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                                std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    Rule r = golub_welsch(d, s.head(std::max(n - 1, 0)), mu0);
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(key, r);
    return r;
}

Rule gauss_jacobi01(int n, double a, double b) {
    Rule r = gauss_jacobi(n, b, a);
    const double scale = std::pow(2.0, -a - b - 1.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r.x[i] = 0.5 * (1.0 + r.x[i]);
        r.w[i] *= scale;
    }
    return r;
}

Rule gauss_laguerre(int n, double alpha, bool scaled) {
    if (n < 1) throw std::invalid_argument("gauss_laguerre: n must be positive");
    Eigen::VectorXd d(n), s(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) d(k) = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k) s(k - 1) = std::sqrt(k * (k + alpha));
    Rule r = golub_welsch(d, s, std::tgamma(alpha + 1.0));
    const double lognorm = std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0) - 2.0 * std::log(n + 1.0);
    for (int k = 0; k < n; ++k) {
        double x = r.x[k];
        for (int it = 0; it < 20; ++it) {
            const double ln = specfun::laguerre_poly(n, alpha, x);
            const double lm = specfun::laguerre_poly(n - 1, alpha, x);
            const double dl = (n * ln - (n + alpha) * lm) / x;
            const double dx = ln / dl;
            x -= dx;
            if (std::abs(dx) < 1e-15 * std::abs(x)) break;
        }
        r.x[k] = x;
        const double lp = specfun::laguerre_poly(n + 1, alpha, x);
        const double logw = lognorm + std::log(x) - 2.0 * std::log(std::abs(lp));
        r.w[k] = std::exp(scaled ? logw + x : logw);
    }
    return r;
}

Rule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n must be positive");
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n), s(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k) s(k - 1) = std::sqrt(0.5 * k);
    return golub_welsch(d, s, std::sqrt(M_PI));
}

Rule composite_legendre(double a, double b, int panels, int order) {
    Rule out;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        Rule r = gauss_legendre(order, a + p * h, a + (p + 1) * h);
        out.x.insert(out.x.end(), r.x.begin(), r.x.end());
        out.w.insert(out.w.end(), r.w.begin(), r.w.end());
    }
    return out;
}

double sphere_area(int n) {
    if (n < 1) throw std::invalid_argument("sphere_area: dimension must be positive");
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

SphereRule sphere_rule(int n, int order) {
    SphereRule out;
    if (n == 1) {
        out.x = {Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, -1.0)};
        out.w = {1.0, 1.0};
        return out;
    }
    if (n == 2) {
        const int m = 2 * order;
        for (int k = 0; k < m; ++k) {
            const double th = 2.0 * M_PI * (k + 0.5) / m;
            Eigen::VectorXd p(2);
            p << std::cos(th), std::sin(th);
            out.x.push_back(p);
            out.w.push_back(2.0 * M_PI / m);
        }
        return out;
    }
    const double e = 0.5 * (n - 3);
    Rule t = gauss_jacobi(order, e, e);
    SphereRule lower = sphere_rule(n - 1, order);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double c = std::sqrt(std::max(0.0, 1.0 - t.x[i] * t.x[i]));
        for (std::size_t j = 0; j < lower.x.size(); ++j) {
            Eigen::VectorXd p(n);
            p.head(n - 1) = c * lower.x[j];
            p(n - 1) = t.x[i];
            out.x.push_back(p);
            out.w.push_back(t.w[i] * lower.w[j]);
        }
    }
    return out;
}

SimplexRule dirichlet_rule(const std::vector<double>& a, int order) {
    SimplexRule out;
    if (a.empty()) throw std::invalid_argument("dirichlet_rule: empty parameter vector");
    if (a.size() == 1) {
        out.t = {{1.0}};
        out.w = {1.0};
        return out;
    }
    double rest = 0.0;
    for (std::size_t i = 1; i < a.size(); ++i) rest += a[i];
    Rule r = gauss_jacobi01(order, a[0] - 1.0, rest - 1.0);
    double total = 0.0;
    for (double w : r.w) total += w;
    SimplexRule tail = dirichlet_rule(std::vector<double>(a.begin() + 1, a.end()), order);
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < tail.t.size(); ++j) {
            std::vector<double> p{r.x[i]};
            for (double u : tail.t[j]) p.push_back((1.0 - r.x[i]) * u);
            out.t.push_back(std::move(p));
            out.w.push_back(r.w[i] / total * tail.w[j]);
        }
    }
    return out;
}

}  // namespace nilharm::quad
