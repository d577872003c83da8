#pragma once

#include <complex>
#include <vector>

#include "nilharm/group.hpp"
#include "nilharm/spherical.hpp"

namespace nilharm::areafn {

using cplx = std::complex<double>;
using spherical::SphericalParam;

/// Value and s-derivatives d^k/ds^k for k = 0..order.
using Jet = std::vector<cplx>;

struct PairingRules {
    group::GroupDims dims;
    std::vector<group::RadialNode> radial;
    int dirichlet_order = 16;
};

PairingRules pairing_rules(const group::GroupDims& dims, int radial_panels = 4, int radial_order = 16,
                           int dirichlet_order = 16);

/// Dimensions of a type-H group in the same layout as N_{v,2}.
group::GroupDims typeh_dims(const group::TypeHModel& model);

/// <mu_s, phi> and its first `order` derivatives in s (order <= 3), analytically.
Jet mu_phi_jet(const SphericalParam& param, double s, const PairingRules& rules, int order = 0);
cplx mu_phi_pairing(const SphericalParam& param, double s, const PairingRules& rules);

struct DerivResult {
    cplx value;
    double error_estimate = 0.0;
};

/// j-th central difference in s with one Richardson step.
DerivResult mu_phi_deriv(const SphericalParam& param, double s, int j, double step, const PairingRules& rules);

Jet typeh_mu_phi_jet(const group::TypeHModel& model, const spherical::TypeHFamily& family, double s,
                     const PairingRules& rules, int order = 0);

std::vector<double> uniform_s_grid(double s_max, int n);
std::vector<double> log_s_grid(double s_min, double s_max, int n);

struct AreaResult {
    double value = 0.0;
    double tail_ratio = 0.0;  // share of the integral from the last tenth of the s-range
    bool tail_flag = false;
    bool range_warning = false;
};

/// sqrt(int |d^j/ds^j <mu_s, phi>|^2 s^{2j-1} ds), trapezoid rule on s_grid (starting from s = 0).
AreaResult area_hat(const SphericalParam& param, int j, const std::vector<double>& s_grid, const PairingRules& rules,
                    double tol = 1e-2);

AreaResult typeh_area_hat(const group::TypeHModel& model, const spherical::TypeHFamily& family, int j,
                          const std::vector<double>& s_grid, const PairingRules& rules, double tol = 1e-2);

struct ScanExtent {
    int l_max = 4;       // bound on each l_j
    int angles = 4;      // directions of Lambda in the open ordered sector
    double r_max = 2.0;  // largest r* / |Lambda|
    int r_cells = 4;
};

/// Parameters with |Lambda| = 1 (or Lambda = 0, r* = 1) covering the extent; v in [2, 5].
std::vector<SphericalParam> normalized_grid(int v, const ScanExtent& ext);
ScanExtent doubled(const ScanExtent& ext);

struct AreaScanReport {
    int j = 1;
    std::vector<double> values;
    std::vector<bool> tail_flags;
    double max = 0.0;
    int argmax = -1;
    std::size_t s_points = 0;
    double s_max = 0.0;
};

AreaScanReport scan_uniform_bound(const std::vector<SphericalParam>& grid, int j, const std::vector<double>& s_grid,
                                  const PairingRules& rules);
AreaScanReport typeh_scan_uniform_bound(const group::TypeHModel& model,
                                        const std::vector<spherical::TypeHFamily>& grid, int j,
                                        const std::vector<double>& s_grid, const PairingRules& rules);

}  // namespace nilharm::areafn
