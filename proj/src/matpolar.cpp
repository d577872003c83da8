#include "nilharm/matpolar.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/random/sobol.hpp>
#include <boost/random/uniform_01.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "nilharm/group.hpp"
#include "nilharm/quadrature.hpp"

namespace nilharm::matpolar {

namespace {

Eigen::MatrixXd elementary(int v, int i, int j) {
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(v, v);
    E(i, j) = 1.0;
    E(j, i) = -1.0;
    return E;
}

}  // namespace

Eigen::MatrixXd d2(const Eigen::VectorXd& lambda, int v, int eps) {
    if (lambda.size() != v / 2) throw std::invalid_argument("d2: lambda must have length v/2");
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(v, v);
    for (int i = 0; i < lambda.size(); ++i) {
        const double l = (i == lambda.size() - 1) ? eps * lambda(i) : lambda(i);
        D(2 * i, 2 * i + 1) = l;
        D(2 * i + 1, 2 * i) = -l;
    }
    return D;
}

Eigen::MatrixXd reconstruct(const AntisymPolar& p) {
    const int v = static_cast<int>(p.k.rows());
    return p.k.transpose() * d2(p.lambda, v, p.epsilon.value_or(1)) * p.k;
}

AntisymPolar antisym_polar(const Eigen::MatrixXd& A, OrthGroup group) {
    const int v = static_cast<int>(A.rows());
    if (A.cols() != v || v < 1) throw std::invalid_argument("antisym_polar: matrix must be square");
    const double scale = std::max(1.0, A.norm());
    if ((A + A.transpose()).norm() > 1e-10 * scale)
        throw std::invalid_argument("antisym_polar: matrix is not antisymmetric");
    const Eigen::MatrixXd As = 0.5 * (A - A.transpose());
    const int vp = v / 2;

    Eigen::RealSchur<Eigen::MatrixXd> schur(As);
    const Eigen::MatrixXd& T = schur.matrixT();
    const Eigen::MatrixXd& U = schur.matrixU();
    struct Block { double lambda; Eigen::VectorXd u, w; };
    std::vector<Block> blocks;
    std::vector<Eigen::VectorXd> kernel;
    for (int i = 0; i < v;) {
        if (i + 1 < v && T(i + 1, i) != 0.0) {
            Eigen::VectorXd u = U.col(i), w = U.col(i + 1);
            double b = 0.5 * (T(i, i + 1) - T(i + 1, i));
            if (b < 0) {
                std::swap(u, w);
                b = -b;
            }
            blocks.push_back({b, u, w});
            i += 2;
        } else {
            kernel.push_back(U.col(i));
            i += 1;
        }
    }
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const Block& a, const Block& b) { return a.lambda > b.lambda; });
    std::size_t kidx = 0;
    while (static_cast<int>(blocks.size()) < vp) {
        blocks.push_back({0.0, kernel.at(kidx), kernel.at(kidx + 1)});
        kidx += 2;
    }

    Eigen::MatrixXd k(v, v);
    Eigen::VectorXd lambda(vp);
    for (int b = 0; b < vp; ++b) {
        k.row(2 * b) = blocks[b].u.transpose();
        k.row(2 * b + 1) = blocks[b].w.transpose();
        lambda(b) = blocks[b].lambda;
    }
    if (v % 2 == 1) k.row(v - 1) = kernel.at(kidx).transpose();

    AntisymPolar out{lambda, k, std::nullopt};
    if (group == OrthGroup::SO) {
        out.epsilon = 1;
        if (k.determinant() < 0) {
            out.k.row(v - 1) *= -1.0;
            if (v % 2 == 0 && lambda(vp - 1) > 0) out.epsilon = -1;
        }
    }
    return out;
}

namespace {

double vandermonde(const Eigen::VectorXd& lambda, int v) {
    double p = 1.0;
    for (int j = 0; j < lambda.size(); ++j)
        for (int k = j + 1; k < lambda.size(); ++k) {
            const double d = lambda(j) * lambda(j) - lambda(k) * lambda(k);
            p *= d * d;
        }
    if (v % 2 == 1)
        for (int i = 0; i < lambda.size(); ++i) p *= lambda(i) * lambda(i);
    return p;
}

}  // namespace

double eta_constant(int v) {
    static std::mutex m;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(m);
    if (auto it = cache.find(v); it != cache.end()) return it->second;
    const int vp = v / 2;
    const int z = v * (v - 1) / 2;
    const quad::Rule gh = quad::gauss_hermite(2 * v + 4);
    const int n = static_cast<int>(gh.size());
    long total = 1;
    for (int d = 0; d < vp; ++d) total *= n;
    double integral = 0.0;
    Eigen::VectorXd lam(vp);
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        double w = 1.0;
        for (int d = 0; d < vp; ++d) {
            const int i = static_cast<int>(rem % n);
            rem /= n;
            lam(d) = gh.x[i];
            w *= gh.w[i];
        }
        integral += w * vandermonde(lam, v);
    }
    double fact = 1.0;
    for (int i = 2; i <= vp; ++i) fact *= i;
    const double c = std::pow(M_PI, 0.5 * z) * fact * std::pow(2.0, vp) / integral;
    cache.emplace(v, c);
    return c;
}

double eta_density(const Eigen::VectorXd& lambda, int v) {
    return eta_constant(v) * vandermonde(lambda, v);
}

Eigen::MatrixXd random_orthogonal(int v, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXd g(v, v);
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) g(i, j) = n(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < v; ++j)
        if (r(j, j) < 0) q.col(j) *= -1.0;
    return q;
}

OrthQuadrature haar_quadrature(int v, OrthGroup group, int order, std::uint64_t seed) {
    if (v < 2) throw std::invalid_argument("haar_quadrature: v must be at least 2");
    if (order < 1) throw std::invalid_argument("haar_quadrature: order must be positive");
    OrthQuadrature q;
    q.group = group;
    q.order = order;
    q.seed = seed;
    const bool with_reflections = (group == OrthGroup::O);
    if (v == 2) {
        for (int i = 0; i < order; ++i) {
            const double t = 2.0 * M_PI * (i + 0.25) / order;
            Eigen::Matrix2d r;
            r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
            q.nodes.push_back(r);
            if (with_reflections) {
                Eigen::Matrix2d s = r * Eigen::Vector2d(1.0, -1.0).asDiagonal();
                q.nodes.push_back(s);
            }
        }
    } else if (v == 3) {
        const quad::Rule cb = quad::gauss_legendre(order, -1.0, 1.0);
        const int m = 2 * order;
        std::vector<double> w;
        for (std::size_t b = 0; b < cb.size(); ++b) {
            const double beta = std::acos(cb.x[b]);
            for (int a = 0; a < m; ++a)
                for (int g = 0; g < m; ++g) {
                    const double al = 2.0 * M_PI * a / m, ga = 2.0 * M_PI * (g + 0.5) / m;
                    Eigen::Matrix3d r = (Eigen::AngleAxisd(al, Eigen::Vector3d::UnitZ()) *
                                         Eigen::AngleAxisd(beta, Eigen::Vector3d::UnitY()) *
                                         Eigen::AngleAxisd(ga, Eigen::Vector3d::UnitZ()))
                                            .toRotationMatrix();
                    q.nodes.push_back(r);
                    if (with_reflections) q.nodes.push_back(-r);
                }
        }
    } else {
        for (int i = 0; i < order; ++i) {
            Eigen::MatrixXd k = random_orthogonal(v, seed * 1000003ULL + i);
            if (group == OrthGroup::SO && k.determinant() < 0) k.col(0) *= -1.0;
            q.nodes.push_back(k);
        }
    }
    if (v == 3) {
        const quad::Rule cb = quad::gauss_legendre(order, -1.0, 1.0);
        const int m = 2 * order;
        for (std::size_t b = 0; b < cb.size(); ++b)
            for (int a = 0; a < m * m; ++a)
                for (int r = 0; r < (with_reflections ? 2 : 1); ++r)
                    q.weights.push_back(0.5 * cb.w[b] / (m * m) / (with_reflections ? 2.0 : 1.0));
    } else {
        q.weights.assign(q.nodes.size(), 1.0 / q.nodes.size());
    }
    return q;
}

std::complex<double> polar_integrate_antisym(const AntisymFunction& g, int v, const OrthQuadrature& kq,
                                             int radial_order, double lambda_max) {
    const int vp = v / 2;
    const quad::Rule r = quad::gauss_legendre(radial_order, 0.0, lambda_max);
    const int n = static_cast<int>(r.size());
    long total = 1;
    for (int d = 0; d < vp; ++d) total *= n;
    double fact = 1.0;
    for (int i = 2; i <= vp; ++i) fact *= i;
    std::complex<double> sum = 0.0;
    Eigen::VectorXd lam(vp);
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        double w = 1.0;
        for (int d = 0; d < vp; ++d) {
            const int i = static_cast<int>(rem % n);
            rem /= n;
            lam(d) = r.x[i];
            w *= r.w[i];
        }
        Eigen::VectorXd sorted = lam;
        std::sort(sorted.data(), sorted.data() + vp, std::greater<double>());
        const Eigen::MatrixXd D = d2(sorted, v);
        std::complex<double> kavg = 0.0;
        for (std::size_t j = 0; j < kq.nodes.size(); ++j)
            kavg += kq.weights[j] * g(kq.nodes[j].transpose() * D * kq.nodes[j]);
        sum += w * eta_density(sorted, v) / fact * kavg;
    }
    return sum;
}

std::complex<double> direct_integrate_antisym(const AntisymFunction& g, int v, int order, double box) {
    const int z = v * (v - 1) / 2;
    if (z <= 3) {
        const quad::Rule r = quad::composite_legendre(-box, box, std::max(1, order / 16), 16);
        const int n = static_cast<int>(r.size());
        long total = 1;
        for (int d = 0; d < z; ++d) total *= n;
        Eigen::VectorXd a(z);
        std::complex<double> sum = 0.0;
        for (long idx = 0; idx < total; ++idx) {
            long rem = idx;
            double w = 1.0;
            for (int d = 0; d < z; ++d) {
                const int i = static_cast<int>(rem % n);
                rem /= n;
                a(d) = r.x[i];
                w *= r.w[i];
            }
            sum += w * g(group::antisym_matrix(a, v));
        }
        return sum;
    }
    const boost::math::normal_distribution<double> normal(0.0, 1.0);
    boost::random::sobol gen(z);
    boost::random::uniform_01<double> u01;
    const int samples = 1 << 17;
    Eigen::VectorXd a(z);
    std::complex<double> sum = 0.0;
    for (int s = 0; s < samples; ++s) {
        double density = 1.0;
        for (int d = 0; d < z; ++d) {
            const double u = std::clamp(u01(gen), 1e-15, 1.0 - 1e-15);
            a(d) = boost::math::quantile(normal, u);
            density *= boost::math::pdf(normal, a(d));
        }
        sum += g(group::antisym_matrix(a, v)) / density;
    }
    return sum / static_cast<double>(samples);
}

double polar_laplacian_residual(const AntisymFunction& f, const Eigen::MatrixXd& kp,
                                const Eigen::VectorXd& lambda, double step) {
    const int v = static_cast<int>(kp.rows());
    const int vp = v / 2;
    for (int i = 0; i < vp; ++i) {
        if (lambda(i) < 10 * step) throw std::domain_error("polar_laplacian_residual: lambda too close to 0");
        for (int j = i + 1; j < vp; ++j)
            if (std::abs(lambda(i) - lambda(j)) < 10 * step)
                throw std::domain_error("polar_laplacian_residual: near-degenerate lambda");
    }
    const double h = step;
    auto second = [h](const std::function<std::complex<double>(double)>& u) {
        return (-u(-2 * h) + 16.0 * u(-h) - 30.0 * u(0.0) + 16.0 * u(h) - u(2 * h)) / (12.0 * h * h);
    };
    auto first = [h](const std::function<std::complex<double>(double)>& u) {
        return (u(-2 * h) - 8.0 * u(-h) + 8.0 * u(h) - u(2 * h)) / (12.0 * h);
    };
    const Eigen::MatrixXd A = kp * d2(lambda, v) * kp.transpose();

    std::complex<double> lhs = 0.0;
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j) {
            const Eigen::MatrixXd E = elementary(v, i, j);
            lhs += second([&](double t) { return f(A + t * E); });
        }

    auto g = [&](const Eigen::MatrixXd& k, const Eigen::VectorXd& l) {
        return f(k * d2(l, v) * k.transpose());
    };
    auto along = [&](const Eigen::MatrixXd& W) {
        return second([&](double t) { return g(kp * (t * W).exp(), lambda); });
    };
    auto dlam = [&](int i, int order) {
        auto u = [&, i](double t) {
            Eigen::VectorXd l = lambda;
            l(i) += t;
            return g(kp, l);
        };
        return order == 1 ? first(u) : second(u);
    };

    std::complex<double> rhs = 0.0;
    for (int l = 0; l < vp; ++l) rhs += dlam(l, 2);
    for (int i = 0; i < vp; ++i)
        for (int j = i + 1; j < vp; ++j) {
            const double li = lambda(i), lj = lambda(j);
            const double den = lj * lj - li * li;
            const int a = 2 * i, b = 2 * i + 1, c = 2 * j, d = 2 * j + 1;
            const std::vector<Eigen::MatrixXd> dirs = {
                (-lj * elementary(v, a, d) + li * elementary(v, b, c)) / den,
                (-li * elementary(v, a, d) + lj * elementary(v, b, c)) / den,
                (lj * elementary(v, a, c) + li * elementary(v, b, d)) / den,
                (-li * elementary(v, a, c) - lj * elementary(v, b, d)) / den,
            };
            for (const auto& W : dirs) rhs += along(W);
            rhs += -4.0 / den * (li * dlam(i, 1) - lj * dlam(j, 1));
        }
    if (v % 2 == 1) {
        for (int i = 0; i < vp; ++i) {
            const double li = lambda(i);
            for (int t : {2 * i, 2 * i + 1}) rhs += along(elementary(v, t, v - 1)) / (li * li);
            rhs += 2.0 / li * dlam(i, 1);
        }
    }
    return std::abs(lhs - rhs);
}

}  // namespace nilharm::matpolar
