#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace nilharm::specfun {

// Reduced Bessel function  J_alpha(z) * Gamma(alpha+1) * (z/2)^(-alpha), equal to 1 at z = 0.
// Accepts alpha > -1 (alpha = -1/2 gives cos z).
double bessel_reduced(double alpha, double z);

// order-th derivative in z, order in 1..4.
double bessel_reduced_deriv(double alpha, double z, int order);

// Plain Laguerre polynomial L_n^(alpha)(x) by the three-term recurrence.
double laguerre_poly(int n, double alpha, double x);

// log of the generalized binomial C(n+alpha, n).
double log_binomial(int n, double alpha);

// Normalized Laguerre function L_n^(alpha)(x) e^{-x/2} / C(n+alpha, n).
double laguerre_norm(int n, double alpha, double x);

// laguerre_norm for n = 0..nmax at one point.
std::vector<double> laguerre_norm_table(int nmax, double alpha, double x);

// order-th derivative in x of laguerre_norm, order in 0..3.
double laguerre_norm_deriv(int n, double alpha, double x, int order);

// L^2-normalized Hermite-Weber function h_k.
double hermite_weber(int k, double x, int kmax = 60);

enum class SeqOp { identity, tau_plus, tau_minus, delta, alpha, beta, gamma };

using Sequence = std::function<std::complex<double>(int)>;

std::complex<double> apply_seq_operator(SeqOp op, const Sequence& R, int l);

/// Applies ops[0] o ops[1] o ... o ops[n-1] (the last one acts first).
std::complex<double> apply_seq_operators(std::span<const SeqOp> ops, const Sequence& R, int l);

Sequence compose(SeqOp op, Sequence R);

}  // namespace nilharm::specfun
