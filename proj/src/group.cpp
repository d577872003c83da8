#include "nilharm/group.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/random/sobol.hpp>
#include <boost/random/uniform_01.hpp>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nilharm::group {

GroupDims GroupDims::of(int v) {
    if (v < 2) throw std::invalid_argument("GroupDims: v must be at least 2");
    GroupDims d;
    d.v = v;
    d.v_prime = v / 2;
    d.z = v * (v - 1) / 2;
    d.Q = v + 2 * d.z;
    d.even = (v % 2 == 0);
    return d;
}

int pair_index(int i, int j, int v) {
    if (i > j) std::swap(i, j);
    if (i == j || i < 0 || j >= v) throw std::out_of_range("pair_index: invalid pair");
    return i * v - i * (i + 1) / 2 + (j - i - 1);
}

Eigen::MatrixXd antisym_matrix(const Eigen::VectorXd& a, int v) {
    if (a.size() != v * (v - 1) / 2) throw std::invalid_argument("antisym_matrix: size mismatch");
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(v, v);
    int idx = 0;
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j) {
            A(i, j) = a(idx);
            A(j, i) = -a(idx);
            ++idx;
        }
    return A;
}

Eigen::VectorXd pack_antisym(const Eigen::MatrixXd& A) {
    const int v = static_cast<int>(A.rows());
    Eigen::VectorXd a(v * (v - 1) / 2);
    int idx = 0;
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j) a(idx++) = 0.5 * (A(i, j) - A(j, i));
    return a;
}

Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const int v = static_cast<int>(x.size());
    Eigen::VectorXd b(v * (v - 1) / 2);
    int idx = 0;
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j) b(idx++) = x(i) * y(j) - x(j) * y(i);
    return b;
}

GroupPoint identity(int v) {
    return {Eigen::VectorXd::Zero(v), Eigen::VectorXd::Zero(v * (v - 1) / 2)};
}

namespace {
void check_dims(const GroupPoint& p) {
    if (p.a.size() != p.x.size() * (p.x.size() - 1) / 2)
        throw std::invalid_argument("GroupPoint: inconsistent dimensions");
}
}  // namespace

GroupPoint product(const GroupPoint& p, const GroupPoint& q) {
    check_dims(p);
    check_dims(q);
    if (p.x.size() != q.x.size()) throw std::invalid_argument("product: dimension mismatch");
    return {p.x + q.x, p.a + q.a + 0.5 * bracket(p.x, q.x)};
}

GroupPoint inverse(const GroupPoint& p) { return {-p.x, -p.a}; }

GroupPoint dilate(double r, const GroupPoint& p) {
    if (!(r > 0)) throw std::domain_error("dilate: r must be positive");
    return {r * p.x, r * r * p.a};
}

double koranyi_norm(const GroupPoint& p) {
    const double x2 = p.x.squaredNorm();
    return std::pow(x2 * x2 + p.a.squaredNorm(), 0.25);
}

GroupPoint k_action(const Eigen::MatrixXd& k, const GroupPoint& p) {
    const int v = p.v();
    if (k.rows() != v || k.cols() != v) throw std::invalid_argument("k_action: dimension mismatch");
    if ((k.transpose() * k - Eigen::MatrixXd::Identity(v, v)).norm() > 1e-10)
        throw std::invalid_argument("k_action: matrix is not orthogonal");
    const Eigen::MatrixXd A = antisym_matrix(p.a, v);
    return {k * p.x, pack_antisym(k * A * k.transpose())};
}

GroupPoint random_point(int v, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, scale);
    GroupPoint p = identity(v);
    for (int i = 0; i < p.x.size(); ++i) p.x(i) = n(rng);
    for (int i = 0; i < p.a.size(); ++i) p.a(i) = n(rng);
    return p;
}

std::vector<RadialNode> radial_mu_rule(const GroupDims& dims, int panels, int order) {
    std::vector<RadialNode> out;
    const double ev = 0.5 * (dims.v - 2);
    const double ez = dims.z - 1.0;
    if (dims.even) {
        quad::Rule th = quad::composite_legendre(0.0, 0.5 * M_PI, panels, order);
        for (std::size_t i = 0; i < th.size(); ++i) {
            const double s = std::sin(th.x[i]), c = std::cos(th.x[i]);
            out.push_back({std::sqrt(s), c, th.w[i] * std::pow(s, ev) * std::pow(c, ez)});
        }
    } else {
        quad::Rule tau = quad::composite_legendre(0.0, 1.0, panels, order);
        for (std::size_t i = 0; i < tau.size(); ++i) {
            const double t = tau.x[i];
            const double th = 0.5 * M_PI * t * t;
            const double s = std::sin(th), c = std::cos(th);
            out.push_back({std::sqrt(s), c, tau.w[i] * M_PI * t * std::pow(s, ev) * std::pow(c, ez)});
        }
    }
    return out;
}

SpherePairingRules sphere_pairing_rules(const GroupDims& dims, int sphere_order, int radial_order) {
    return {quad::sphere_rule(dims.v, sphere_order), quad::sphere_rule(dims.z, sphere_order),
            radial_mu_rule(dims, 4, radial_order)};
}

double mu_mass(const GroupDims& dims) {
    const double beta = std::exp(std::lgamma(0.25 * dims.v) + std::lgamma(0.5 * dims.z) -
                                 std::lgamma(0.25 * dims.v + 0.5 * dims.z));
    return 0.5 * quad::sphere_area(dims.v) * quad::sphere_area(dims.z) * beta;
}

std::complex<double> sphere_pairing(const GroupFunction& f, double s, const GroupDims& dims,
                                    const SpherePairingRules& rules) {
    std::complex<double> total = 0.0;
    GroupPoint p = identity(dims.v);
    for (const auto& node : rules.radial) {
        std::complex<double> inner = 0.0;
        for (std::size_t i = 0; i < rules.sigma_v.x.size(); ++i) {
            p.x = s * node.r * rules.sigma_v.x[i];
            std::complex<double> acc = 0.0;
            for (std::size_t j = 0; j < rules.sigma_z.x.size(); ++j) {
                p.a = s * s * node.c * rules.sigma_z.x[j];
                acc += rules.sigma_z.w[j] * f(p);
            }
            inner += rules.sigma_v.w[i] * acc;
        }
        total += node.w * inner;
    }
    return total;
}

namespace {

IntegralResult tensor_integrate(const GroupFunction& f, const GroupDims& dims, const HaarOptions& opt) {
    const int dim = dims.v + dims.z;
    quad::Rule r = quad::gauss_legendre(opt.order, -opt.box, opt.box);
    const int n = opt.order;
    long total_nodes = 1;
    for (int d = 0; d < dim; ++d) total_nodes *= n;
    std::vector<int> idx(dim, 0);
    GroupPoint p = identity(dims.v);
    std::complex<double> sum = 0.0;
    for (long k = 0; k < total_nodes; ++k) {
        long rem = k;
        double w = 1.0;
        for (int d = 0; d < dim; ++d) {
            idx[d] = static_cast<int>(rem % n);
            rem /= n;
            const double c = r.x[idx[d]];
            if (d < dims.v) p.x(d) = c; else p.a(d - dims.v) = c;
            w *= r.w[idx[d]];
        }
        sum += w * f(p);
    }
    return {sum, 0.0, false};
}

IntegralResult qmc_integrate(const GroupFunction& f, const GroupDims& dims, const HaarOptions& opt) {
    const int dim = dims.v + dims.z;
    const int reps = 8;
    const int per = std::max(1, opt.samples / reps);
    const boost::math::normal_distribution<double> normal(0.0, opt.scale);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::complex<double>> est;
    GroupPoint p = identity(dims.v);
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<double> shift(dim);
        for (auto& s : shift) s = unif(rng);
        boost::random::sobol gen(dim);
        boost::random::uniform_01<double> u01;
        std::complex<double> sum = 0.0;
        for (int k = 0; k < per; ++k) {
            double density = 1.0;
            for (int d = 0; d < dim; ++d) {
                double u = u01(gen) + shift[d];
                if (u >= 1.0) u -= 1.0;
                u = std::clamp(u, 1e-15, 1.0 - 1e-15);
                const double c = boost::math::quantile(normal, u);
                density *= boost::math::pdf(normal, c);
                if (d < dims.v) p.x(d) = c; else p.a(d - dims.v) = c;
            }
            sum += f(p) / density;
        }
        est.push_back(sum / static_cast<double>(per));
    }
    std::complex<double> mean = 0.0;
    for (auto& e : est) mean += e;
    mean /= static_cast<double>(reps);
    double var = 0.0;
    for (auto& e : est) var += std::norm(e - mean);
    var /= (reps - 1.0);
    return {mean, std::sqrt(var / reps), false};
}

bool boundary_tail(const GroupFunction& f, const GroupDims& dims, const HaarOptions& opt) {
    std::mt19937_64 rng(opt.seed + 17);
    std::uniform_real_distribution<double> unif(-opt.box, opt.box);
    const int dim = dims.v + dims.z;
    GroupPoint p = identity(dims.v);
    double peak = std::abs(f(p));
    double edge = 0.0;
    for (int k = 0; k < 64; ++k) {
        const int face = k % dim;
        for (int d = 0; d < dim; ++d) {
            double c = (d == face) ? ((k / dim) % 2 ? opt.box : -opt.box) : unif(rng);
            if (d < dims.v) p.x(d) = c; else p.a(d - dims.v) = c;
        }
        edge = std::max(edge, std::abs(f(p)));
    }
    return edge > opt.tail_tol * std::max(peak, 1e-300);
}

}  // namespace

IntegralResult haar_integrate_group(const GroupFunction& f, const GroupDims& dims, const HaarOptions& opt) {
    IntegralResult res = (dims.v + dims.z <= 3) ? tensor_integrate(f, dims, opt) : qmc_integrate(f, dims, opt);
    res.tail_warning = boundary_tail(f, dims, opt);
    return res;
}

double polar_identity_residual(const GroupFunction& f, const GroupDims& dims, int sphere_order,
                               int radial_order, const HaarOptions& opt) {
    const IntegralResult direct = haar_integrate_group(f, dims, opt);
    const SpherePairingRules rules = sphere_pairing_rules(dims, sphere_order);
    const double rho_max = std::sqrt(2.0) * opt.box;
    quad::Rule rho = quad::composite_legendre(0.0, rho_max, 8, radial_order);
    std::complex<double> polar = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i)
        polar += rho.w[i] * std::pow(rho.x[i], dims.Q - 1) * sphere_pairing(f, rho.x[i], dims, rules);
    return std::abs(direct.value - polar);
}

Eigen::MatrixXd TypeHModel::j_of(const Eigen::VectorXd& zeta) const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(v_dim, v_dim);
    for (int k = 0; k < z_dim; ++k) M += zeta(k) * J[k];
    return M;
}

double TypeHModel::type_h_defect(int samples, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd zeta(z_dim);
        for (int k = 0; k < z_dim; ++k) zeta(k) = n(rng);
        zeta.normalize();
        const Eigen::MatrixXd M = j_of(zeta);
        worst = std::max(worst, (M * M + Eigen::MatrixXd::Identity(v_dim, v_dim)).norm());
        worst = std::max(worst, (M + M.transpose()).norm());
    }
    return worst;
}

TypeHModel typeh_heisenberg(int n) {
    if (n < 1) throw std::invalid_argument("typeh_heisenberg: n must be positive");
    TypeHModel m;
    m.v_dim = 2 * n;
    m.z_dim = 1;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int b = 0; b < n; ++b) {
        J(2 * b, 2 * b + 1) = -1.0;
        J(2 * b + 1, 2 * b) = 1.0;
    }
    m.J = {J};
    return m;
}

TypeHModel typeh_product(const TypeHModel& a, const TypeHModel& b) {
    if (a.z_dim != b.z_dim) throw std::invalid_argument("typeh_product: centers differ in dimension");
    TypeHModel m;
    m.v_dim = a.v_dim + b.v_dim;
    m.z_dim = a.z_dim;
    for (int k = 0; k < a.z_dim; ++k) {
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m.v_dim, m.v_dim);
        J.topLeftCorner(a.v_dim, a.v_dim) = a.J[k];
        J.bottomRightCorner(b.v_dim, b.v_dim) = b.J[k];
        m.J.push_back(J);
    }
    return m;
}

TypeHModel typeh_direct_product(const TypeHModel& a, const TypeHModel& b) {
    TypeHModel m;
    m.v_dim = a.v_dim + b.v_dim;
    m.z_dim = a.z_dim + b.z_dim;
    for (int k = 0; k < a.z_dim; ++k) {
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m.v_dim, m.v_dim);
        J.topLeftCorner(a.v_dim, a.v_dim) = a.J[k];
        m.J.push_back(J);
    }
    for (int k = 0; k < b.z_dim; ++k) {
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m.v_dim, m.v_dim);
        J.bottomRightCorner(b.v_dim, b.v_dim) = b.J[k];
        m.J.push_back(J);
    }
    return m;
}

TypeHPoint typeh_product_law(const TypeHModel& m, const TypeHPoint& p, const TypeHPoint& q) {
    TypeHPoint out{p.x + q.x, p.zc + q.zc};
    for (int k = 0; k < m.z_dim; ++k) out.zc(k) += 0.5 * q.x.dot(m.J[k] * p.x);
    return out;
}

}  // namespace nilharm::group
