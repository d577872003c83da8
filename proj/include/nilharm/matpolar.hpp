#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace nilharm::matpolar {

enum class OrthGroup { O, SO };

/// A = k^T D2^eps(lambda) k, lambda weakly decreasing and nonnegative.
struct AntisymPolar {
    Eigen::VectorXd lambda;
    Eigen::MatrixXd k;
    std::optional<int> epsilon;  // set for SO(v) only
};

AntisymPolar antisym_polar(const Eigen::MatrixXd& A, OrthGroup group);

/// Block-diagonal lambda_i J, J = [[0,1],[-1,0]], eps on the last block, zero last row if v is odd.
Eigen::MatrixXd d2(const Eigen::VectorXd& lambda, int v, int eps = 1);

Eigen::MatrixXd reconstruct(const AntisymPolar& p);

/// Normalizing constant c of the polar Jacobian, so that int_{A_v} g = int_O(v) int_L g(k.D2) deta dk.
double eta_constant(int v);
double eta_density(const Eigen::VectorXd& lambda, int v);

struct OrthQuadrature {
    std::vector<Eigen::MatrixXd> nodes;
    std::vector<double> weights;
    OrthGroup group = OrthGroup::O;
    int order = 0;
    std::uint64_t seed = 0;
};

/// v=2 and v=3 are deterministic product rules; v >= 4 is seeded Gaussian-QR sampling.
OrthQuadrature haar_quadrature(int v, OrthGroup group, int order, std::uint64_t seed = 1);

Eigen::MatrixXd random_orthogonal(int v, std::uint64_t seed);

using AntisymFunction = std::function<std::complex<double>(const Eigen::MatrixXd&)>;

/// int_{O(v)} int_L g(k^T D2(lambda) k) deta dk, lambda truncated to [0, lambda_max].
std::complex<double> polar_integrate_antisym(const AntisymFunction& g, int v, const OrthQuadrature& kq,
                                             int radial_order = 48, double lambda_max = 7.0);

/// Gaussian-type direct integral over A_v in the a-coordinates (tensor rule, z <= 3).
std::complex<double> direct_integrate_antisym(const AntisymFunction& g, int v, int order = 48,
                                              double box = 7.0);

/// |Delta f(A) - polar expression| at A = kp D2(lambda) kp^T (kp = k^T in AntisymPolar terms).
double polar_laplacian_residual(const AntisymFunction& f, const Eigen::MatrixXd& kp,
                                const Eigen::VectorXd& lambda, double step = 1e-3);

}  // namespace nilharm::matpolar
