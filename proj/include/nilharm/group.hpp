#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "nilharm/quadrature.hpp"

namespace nilharm::group {

struct GroupDims {
    int v = 2;
    int v_prime = 1;
    int z = 1;
    int Q = 4;
    bool even = true;

    static GroupDims of(int v);
};

/// Exponential coordinates exp(X + A); `a` holds A_{ij}, i<j, in lexicographic order.
struct GroupPoint {
    Eigen::VectorXd x;
    Eigen::VectorXd a;

    int v() const { return static_cast<int>(x.size()); }
};

int pair_index(int i, int j, int v);
Eigen::MatrixXd antisym_matrix(const Eigen::VectorXd& a, int v);
Eigen::VectorXd pack_antisym(const Eigen::MatrixXd& A);

/// [X, X'] as an a-vector: x_i x'_j - x_j x'_i.
Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

GroupPoint identity(int v);
GroupPoint product(const GroupPoint& p, const GroupPoint& q);
GroupPoint inverse(const GroupPoint& p);
GroupPoint dilate(double r, const GroupPoint& p);
double koranyi_norm(const GroupPoint& p);
GroupPoint k_action(const Eigen::MatrixXd& k, const GroupPoint& p);

GroupPoint random_point(int v, std::uint64_t seed, double scale = 1.0);

using GroupFunction = std::function<std::complex<double>(const GroupPoint&)>;

/// Node of the radial part of mu: r, sqrt(1 - r^4), and a weight that already
/// contains 2 r^{v-1} (1-r^4)^{(z-2)/2} dr.
struct RadialNode {
    double r;
    double c;
    double w;
};

/// Composite Gauss-Legendre in the angle theta with r^2 = sin(theta); for odd v the
/// angle is further written theta = (pi/2) tau^2 to remove the endpoint singularity.
std::vector<RadialNode> radial_mu_rule(const GroupDims& dims, int panels, int order);

struct SpherePairingRules {
    quad::SphereRule sigma_v;
    quad::SphereRule sigma_z;
    std::vector<RadialNode> radial;
};

SpherePairingRules sphere_pairing_rules(const GroupDims& dims, int sphere_order, int radial_order = 16);

/// Total mass of the unit-sphere measure mu.
double mu_mass(const GroupDims& dims);

/// int_{S_1} f(s.n) dmu(n), with unnormalized surface measures on S^{v-1}, S^{z-1}.
std::complex<double> sphere_pairing(const GroupFunction& f, double s, const GroupDims& dims,
                                    const SpherePairingRules& rules);

struct IntegralResult {
    std::complex<double> value;
    double error_estimate = 0.0;
    bool tail_warning = false;
};

struct HaarOptions {
    double box = 6.0;        // half-width in each coordinate
    int order = 48;          // Gauss-Legendre nodes per axis (deterministic path)
    int samples = 200000;    // quasi-MC samples (v >= 3)
    double scale = 1.0;      // std of the Gaussian map used by quasi-MC
    std::uint64_t seed = 1;
    double tail_tol = 1e-8;
};

/// int_N f dn = int int f(exp(X + A)) dX dA.
IntegralResult haar_integrate_group(const GroupFunction& f, const GroupDims& dims,
                                    const HaarOptions& opt = {});

/// |int_N f - int_0^inf int_{S_1} f(rho.n) dmu rho^{Q-1} drho|.
double polar_identity_residual(const GroupFunction& f, const GroupDims& dims, int sphere_order,
                               int radial_order, const HaarOptions& opt = {});

struct TypeHModel {
    int v_dim = 2;
    int z_dim = 1;
    std::vector<Eigen::MatrixXd> J;

    Eigen::MatrixXd j_of(const Eigen::VectorXd& zeta) const;
    /// max over a test grid of ||J(Z)^2 + |Z|^2 Id||.
    double type_h_defect(int samples = 64, std::uint64_t seed = 7) const;
    bool valid(double tol = 1e-10) const { return type_h_defect() < tol; }
};

TypeHModel typeh_heisenberg(int n);

/// Groups sharing the same center, generators concatenated: J_k = diag(J_k^a, J_k^b).
TypeHModel typeh_product(const TypeHModel& a, const TypeHModel& b);

/// Direct product with separate centers (not type-H in general).
TypeHModel typeh_direct_product(const TypeHModel& a, const TypeHModel& b);

struct TypeHPoint {
    Eigen::VectorXd x;
    Eigen::VectorXd zc;
};

/// Step-2 law: z = z + z' + 1/2 <J_k X, X'>.
TypeHPoint typeh_product_law(const TypeHModel& m, const TypeHPoint& p, const TypeHPoint& q);

}  // namespace nilharm::group
