#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "nilharm/group.hpp"
#include "nilharm/matpolar.hpp"
#include "nilharm/spherical.hpp"

namespace nilharm::multiplier {

using cplx = std::complex<double>;

/// Smooth, supported in [1/2, 2], sum_j bump(2^{-j} y) = 1 for y > 0.
double bump(double y);

/// Point of the parameter space; lambda is increasing and l has one entry per lambda.
struct PPoint {
    double r = 0.0;
    std::vector<double> lambda;
    std::vector<int> l;
};

struct MultIndex {
    std::optional<int> theta;  // odd v only
    std::vector<int> eta;
    std::vector<int> delta;  // pairs i < j in lexicographic order
    std::vector<int> zeta;

    bool operator==(const MultIndex&) const = default;
};

int pair_index(int i, int j, int n);

double s_iota(const MultIndex& idx);
double min_delta(const MultIndex& idx);
double L_iota(const MultIndex& idx);
double R_iota(const MultIndex& idx);
double D_iota(const MultIndex& idx);
double d_eta_delta(const MultIndex& idx, int v);

/// Membership in the index set. `printed_delta_bound` uses 2^{eta_j} - 4.2^{eta_i} as the lower delta bound.
bool in_index_set(const MultIndex& idx, int v, bool printed_delta_bound = false);

double chi_iota(const MultIndex& idx, const PPoint& p);
double chi_h(int h, const PPoint& p);
/// sum_i lambda_i (2 l_i + 1) + r^2
double spectral_energy(const PPoint& p);

std::vector<MultIndex> enumerate_active(int v, const PPoint& p);
int overlap_bound(int v);

/// Log-uniform lambda, uniform l and r.
PPoint random_point(int v, std::mt19937_64& rng);

struct PartitionReport {
    int points = 0;
    double max_error = 0.0;
    int max_active = 0;
    int bound = 0;
    bool all_in_index_set = true;
    double min_energy_ratio = 0.0;  // min over active iota of energy / s_iota
    double max_energy_ratio = 0.0;
    double max_h_error = 0.0;  // |sum_h chi_h - 1| over the dyadic h-window of each active iota
};

PartitionReport partition_check(int v, int points, std::uint64_t seed);

using SpectralEval = std::function<cplx(const PPoint&)>;

struct OperatorOptions {
    double lambda_step = 1e-3;
    double r_step = 1e-3;
};

/// Xi = 2 sum beta_i / lambda_i (- d_r^2 for odd v).
cplx xi_apply(int v, const SpectralEval& eval, const PPoint& p, const OperatorOptions& opt = {});
/// aleph, signed so that aleph.phi(n) = |A|^2 phi(n).
cplx aleph_apply(int v, const SpectralEval& eval, const PPoint& p, const OperatorOptions& opt = {});

spherical::SphericalParam to_spherical(int v, const PPoint& p);
/// phi_p(n) as a function of p; closed form for v = 2, K-quadrature otherwise.
SpectralEval spherical_eval(int v, const group::GroupPoint& n, const matpolar::OrthQuadrature* kq = nullptr);

struct ContinuousAxis {
    double origin = 0.0;
    double step = 1.0;
    int n = 1;
};

struct IntegerAxis {
    int origin = 0;
    int n = 1;
};

/// Samples on a product grid; r axis first (odd v), then the lambda axes, then the l axes; row-major.
struct GridFunction {
    std::optional<ContinuousAxis> r_axis;
    std::vector<ContinuousAxis> lambda_axes;
    std::vector<IntegerAxis> l_axes;
    std::vector<cplx> values;

    std::vector<int> shape() const;
    std::size_t size() const;
    double cell() const;
};

struct TNormResult {
    double norm = 0.0;
    bool coarse_warning = false;
    double high_frequency_share = 0.0;
};

/// ||T_iota^exponent g||_{L^2} on the Fourier side (g zero-padded by `pad` on each axis).
TNormResult t_iota_norm(const GridFunction& g, const MultIndex& idx, double exponent, int pad = 2);

/// Same with explicit weights (2^{L/2}, 2^{R/2}, 2^{D/2}).
TNormResult t_norm_weighted(const GridFunction& g, double wl, double wr, double wd, double exponent, int pad = 2);

/// T^exponent g on the padded grid (same weights as t_norm_weighted).
GridFunction t_apply_weighted(const GridFunction& g, double wl, double wr, double wd, double exponent, int pad = 2);

/// Bounded part of the parameter space; the criterion sums over every iota whose cell meets it.
struct Window {
    double lambda_min = 0.5;
    double lambda_max = 2.0;
    double gap_min = 0.1;  // min lambda_j^2 - lambda_i^2, v' >= 2
    int l_max = 4;
    double r_min = 0.5;  // odd v
    double r_max = 2.0;
};

struct CriterionOptions {
    double eps = 0.0;  // > Q/2
    std::optional<double> exponent;  // defaults to eps / 2
    int points_per_axis = 32;
    int pad = 2;
};

struct CriterionResult {
    double value = 0.0;
    int cells = 0;
    int nonzero_cells = 0;
    bool coarse_warning = false;
};

/// sum_iota s_iota^{-Q/4} 2^{d(eta,delta)} ||T_iota^{exponent} (f chi_iota)||.
CriterionResult multiplier_criterion(int v, const SpectralEval& f, const Window& window, const CriterionOptions& opt);

/// Indices whose cells meet the window (candidates for the criterion sum).
std::vector<MultIndex> window_indices(int v, const Window& window);

}  // namespace nilharm::multiplier
