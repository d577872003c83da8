#pragma once

#include <Eigen/Dense>
#include <vector>

namespace nilharm::quad {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

/// Gauss-Legendre on [a, b].
Rule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Gauss-Jacobi on [-1, 1] for the weight (1-x)^alpha (1+x)^beta.
Rule gauss_jacobi(int n, double alpha, double beta);

/// Gauss-Jacobi mapped to [0, 1] for the weight t^a (1-t)^b (weights include the weight function).
Rule gauss_jacobi01(int n, double a, double b);

/// Generalized Gauss-Laguerre for x^alpha e^{-x}. With scaled = true the weights
/// are multiplied by e^{x_k}, so that sum w_k f(x_k) approximates int x^alpha f dx.
Rule gauss_laguerre(int n, double alpha, bool scaled = false);

/// Gauss-Hermite for e^{-x^2}.
Rule gauss_hermite(int n);

/// Composite Gauss-Legendre with `panels` equal panels of `order` nodes.
Rule composite_legendre(double a, double b, int panels, int order);

/// Surface area of the unit sphere S^{n-1} in R^n (S^0 has mass 2).
double sphere_area(int n);

struct SphereRule {
    std::vector<Eigen::VectorXd> x;
    std::vector<double> w;  // sums to sphere_area(n)
};

/// Product rule on S^{n-1} (polar angles by Gauss-Jacobi, the circle by equal angles).
SphereRule sphere_rule(int n, int order);

struct SimplexRule {
    std::vector<std::vector<double>> t;
    std::vector<double> w;  // probability weights
};

/// Quadrature for the Dirichlet(a_1..a_k) distribution on the simplex, by stick breaking.
SimplexRule dirichlet_rule(const std::vector<double>& a, int order);

}  // namespace nilharm::quad
