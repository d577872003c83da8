#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "nilharm/group.hpp"
#include "nilharm/matpolar.hpp"
#include "nilharm/spherical.hpp"

namespace nilharm::plancherel {

using cplx = std::complex<double>;
using spherical::SphericalParam;

/// c(v) in the radial Plancherel measure.
double plancherel_constant(int v);

/// c(v) prod(lambda_j) deta/dLambda; zero on the boundary of the ordered simplex.
double plancherel_density(int v, const Eigen::VectorXd& lambda);
double plancherel_weight(const SphericalParam& param);

struct GridOptions {
    double lambda_min = 0.05;
    double lambda_max = 20.0;
    int lambda_cells = 200;
    bool log_spaced = true;
    int l_max = 30;  // bound on l_1 + ... + l_v'
    double r_max = 12.0;
    int r_cells = 48;
};

struct SpectralAtom {
    SphericalParam param;
    double weight = 0.0;
};

/// Atoms sharing (Lambda, r*, epsilon) are stored contiguously.
struct AtomBlock {
    int first = 0;
    int count = 0;
};

struct SpectralGrid {
    int v = 2;
    matpolar::OrthGroup group = matpolar::OrthGroup::O;
    GridOptions opt;
    std::vector<SpectralAtom> atoms;
    std::vector<AtomBlock> blocks;
    std::vector<bool> boundary;  // atom touches the truncation edge

    std::size_t size() const { return atoms.size(); }
};

SpectralGrid make_grid(int v, matpolar::OrthGroup group, const GridOptions& opt = {});

/// Values of g at every atom.
std::vector<cplx> sample_on_grid(const std::function<cplx(const SphericalParam&)>& g, const SpectralGrid& grid);

struct TransformResult {
    cplx value;
    double error_estimate = 0.0;
    bool tail_warning = false;
    bool radial_warning = false;
};

/// <f, phi> = int_N f phi dn, by direct integration over the group.
TransformResult transform_direct(const group::GroupFunction& f, const SphericalParam& param,
                                 const matpolar::OrthQuadrature& kq, const group::HaarOptions& opt = {});

/// Tensor rules for the reduced transform (panels of `order` Gauss-Legendre nodes).
struct ReducedOptions {
    double r_box = 8.0;
    int r_panels = 8;
    double a_box = 8.0;
    int a_panels = 16;
    double x_box = 8.0;
    int x_panels = 4;
    int marginal_panels = 2;
    int order = 16;
};

/// Same pairing through the Fourier transform in the center; v <= 3, Lambda strictly decreasing and positive.
cplx transform_reduced(const group::GroupFunction& f, const SphericalParam& param, const ReducedOptions& opt = {});

/// Reduced transform at every atom, reusing one table of samples of f.
std::vector<cplx> transform_grid(const group::GroupFunction& f, const SpectralGrid& grid,
                                 const ReducedOptions& opt = {});

/// Share of sum |ghat| w carried by atoms on the truncation edge.
double tail_ratio(const std::vector<cplx>& ghat, const SpectralGrid& grid);

struct InversionResult {
    cplx value;
    double tail_ratio = 0.0;
    bool tail_flag = false;
};

/// f(p) = sum over atoms of conj(phi(p)) ghat w.
InversionResult inversion(const std::vector<cplx>& ghat, const group::GroupPoint& p, const SpectralGrid& grid,
                          const matpolar::OrthQuadrature& kq, double tol = 1e-3);

/// Radial function given by its spectral values.
group::GroupFunction inverse_function(std::vector<cplx> ghat, const SpectralGrid& grid,
                                      const matpolar::OrthQuadrature& kq);

struct NormOptions {
    double r_box = 8.0;
    double a_box = 8.0;
    int panels = 8;
    int order = 16;
    group::HaarOptions haar;  // used for v >= 3
};

/// ||f||^2 over N for radial f (polar reduction in X for v = 2).
double radial_norm2(const group::GroupFunction& f, int v, const NormOptions& opt = {});

struct ParsevalResult {
    double group_norm2 = 0.0;
    double spectral_norm2 = 0.0;
    double residual = 0.0;
    double relative = 0.0;
};

ParsevalResult parseval_residual(const group::GroupFunction& f, const std::vector<cplx>& ghat,
                                 const SpectralGrid& grid, const NormOptions& opt = {});

struct KernelHandle {
    group::GroupFunction eval;
    std::vector<cplx> ghat;
    double tail_ratio = 0.0;
    bool tail_flag = false;
};

/// Kernel M with <M, phi> = m(E_L(phi)).
KernelHandle multiplier_kernel(const std::function<cplx(double)>& m, const SpectralGrid& grid,
                               const matpolar::OrthQuadrature& kq, double tol = 1e-3);

}  // namespace nilharm::plancherel
