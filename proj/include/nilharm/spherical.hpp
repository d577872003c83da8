#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "nilharm/group.hpp"
#include "nilharm/matpolar.hpp"

namespace nilharm::spherical {

using cplx = std::complex<double>;

/// Labels one bounded spherical function of (N_{v,2}, O(v)) or (N_{v,2}, SO(v)).
struct SphericalParam {
    int v = 2;
    double r_star = 0.0;
    std::vector<double> lambda_star;  // length v/2, weakly decreasing, >= 0
    std::vector<int> l;               // one entry per distinct nonzero lambda
    std::optional<int> epsilon;       // present for SO(v)

    int v0() const;
    int v1() const;
    std::vector<double> distinct() const;
    std::vector<int> multiplicities() const;
    bool lambda_zero() const { return v0() == 0; }
};

/// Validates and returns the parameter; throws std::invalid_argument on violations.
SphericalParam make_param(int v, double r_star, std::vector<double> lambda_star, std::vector<int> l,
                          std::optional<int> epsilon = std::nullopt);

cplx theta_eval(const SphericalParam& param, const group::GroupPoint& p);
cplx phi_eval(const SphericalParam& param, const group::GroupPoint& p, const matpolar::OrthQuadrature& kq);
double phi_bessel(double r_star, const group::GroupPoint& p);

/// Closed form for v = 2: cos(lambda a_12) L_l(lambda |x|^2 / 2).
double phi_v2_closed(double lambda, int l, const group::GroupPoint& p);

struct HeisenbergLaguerre {
    double lambda;
    std::vector<int> l;
};
struct HeisenbergBessel {
    std::vector<double> mu;
};
struct HeisenbergParam {
    std::vector<int> m;  // partition of the complex coordinates
    std::variant<HeisenbergLaguerre, HeisenbergBessel> family;
};

/// Heisenberg group H^n = C^n x R with (z,t)(z',t') = (z+z', t+t'+(1/2) sum Im z_i conj(z'_i)).
struct HeisenbergPoint {
    std::vector<cplx> z;
    double t = 0.0;
};

HeisenbergPoint heisenberg_product(const HeisenbergPoint& p, const HeisenbergPoint& q);
cplx heisenberg_spherical(const HeisenbergParam& hp, const std::vector<cplx>& z, double t);
double heisenberg_eigenvalue(const HeisenbergParam& hp);
/// |L f - E f| by central differences along the left-invariant fields.
double heisenberg_fd_residual(const HeisenbergParam& hp, const HeisenbergPoint& p, double step = 1e-3);

struct TypeHLaguerre {
    Eigen::VectorXd zeta;
    int l = 0;
};
struct TypeHBessel {
    double r = 0.0;
};
using TypeHFamily = std::variant<TypeHLaguerre, TypeHBessel>;

cplx typeh_spherical(const group::TypeHModel& model, const TypeHFamily& family, const group::TypeHPoint& p);
double typeh_eigenvalue(const group::TypeHModel& model, const TypeHFamily& family);
double typeh_fd_residual(const group::TypeHModel& model, const TypeHFamily& family, const group::TypeHPoint& p,
                         double step = 1e-3);

double sublaplacian_eigenvalue(const SphericalParam& param);
double center_laplacian_eigenvalue(const SphericalParam& param);
double dc0_eigenvalue(const SphericalParam& param);

/// |L phi - E_L phi| with L = -sum X_i^2 by central differences.
double sublaplacian_fd_residual(const SphericalParam& param, const group::GroupPoint& p,
                                const matpolar::OrthQuadrature& kq, double step = 1e-3);
/// |Delta_Z phi - E_Z phi| with Delta_Z = -sum d^2/da_ij^2.
double center_laplacian_fd_residual(const SphericalParam& param, const group::GroupPoint& p,
                                    const matpolar::OrthQuadrature& kq, double step = 1e-3);

/// |int_K phi(p1 . k.p2) dk - phi(p1) phi(p2)|.
double functional_equation_residual(const SphericalParam& param, const group::GroupPoint& p1,
                                    const group::GroupPoint& p2, const matpolar::OrthQuadrature& kq);

}  // namespace nilharm::spherical
