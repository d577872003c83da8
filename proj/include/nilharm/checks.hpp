#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilharm/group.hpp"
#include "nilharm/matpolar.hpp"
#include "nilharm/spherical.hpp"

namespace nilharm::checks {

/// One verified quantity: value <= tolerance, value >= tolerance, or a yes/no property.
struct Metric {
    enum class Kind { at_most, at_least, flag };
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    Kind kind = Kind::at_most;
    bool pass = false;
};

/// Plot-ready table attached to a report (CSV projection).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, double>> inputs;
    std::vector<std::pair<std::string, double>> values;
    std::vector<Metric> metrics;
    Table table;
    std::uint64_t seed = 0;
    double seconds = 0.0;

    bool pass() const;
    void add(std::string name, double value, double tolerance);
    void add_lower(std::string name, double value, double tolerance);
    void add_flag(std::string name, bool ok);
    /// Replaces the tolerance of every upper-bound metric.
    void override_tolerance(double tol);
    /// Appends the metrics of `other` with its command as a name prefix.
    void merge(const Report& other);
};

/// Shared run configuration; unset fields take the per-check defaults.
struct Options {
    std::uint64_t seed = 1;
    std::optional<int> v;
    matpolar::OrthGroup group = matpolar::OrthGroup::O;
    std::optional<int> order;
    std::optional<int> l_max;
    std::optional<std::pair<double, double>> lambda_range;
    std::optional<double> r_max;
    std::optional<double> tol;  // replaces every upper-bound tolerance of the report
};

Report specfun_check(const Options& opt = {});
Report group_check(const Options& opt = {});
Report polar_check(const Options& opt = {});

/// phi at one point (identity by default); |phi| <= 1 and phi(e) = 1 are checked.
Report spherical_eval(const spherical::SphericalParam& param, const std::optional<group::GroupPoint>& point,
                      const Options& opt = {});
/// phi(e) = 1, |phi| <= 1 on 500 sampled pairs, and the v=2 closed form.
Report spherical_sample_check(const Options& opt = {});
Report spherical_eigencheck(const Options& opt = {});
Report spherical_funceq_check(const Options& opt = {});

Report plancherel_roundtrip(const Options& opt = {});
Report plancherel_parseval(const Options& opt = {});
Report plancherel_kernel(const Options& opt = {});

/// <mu_s, phi> and its s-derivatives on an s-list, plus the area function S^j.
Report areafn_pair(const spherical::SphericalParam& param, const std::vector<double>& s, int j,
                   const Options& opt = {});
/// Uniform-bound scan on "h2" (Heisenberg H^2, type-H) or "n42" (N_{4,2}), stability under doubling,
/// and scale invariance of the Bessel family.
Report areafn_scan(const std::string& target, const Options& opt = {});

Report multiplier_partition_check(const Options& opt = {});
Report multiplier_xi_check(const Options& opt = {});
Report multiplier_aleph_check(const Options& opt = {});
Report multiplier_criterion_check(const Options& opt = {});

}  // namespace nilharm::checks
