#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "nilharm/checks.hpp"

using namespace nilharm::checks;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::function<Report()> run;
};

Report combine(const std::string& name, const std::vector<std::function<Report()>>& parts) {
    Report r;
    r.command = name;
    for (const auto& p : parts) r.merge(p());
    return r;
}

std::string summary(const Report& r) {
    std::string s;
    for (const auto& m : r.metrics) {
        char buf[160];
        if (m.kind == Metric::Kind::flag)
            std::snprintf(buf, sizeof buf, "%s%s=%s", s.empty() ? "" : "; ", m.name.c_str(), m.pass ? "yes" : "no");
        else
            std::snprintf(buf, sizeof buf, "%s%s=%.3g%s%.3g", s.empty() ? "" : "; ", m.name.c_str(), m.value,
                          m.kind == Metric::Kind::at_most ? "<=" : ">=", m.tolerance);
        s += buf;
    }
    return s;
}

}  // namespace

int main() {
    const Options o;
    const std::vector<Criterion> criteria = {
        {1, "special functions", [&] { return specfun_check(o); }},
        {2, "group geometry", [&] { return group_check(o); }},
        {3, "matrix polar", [&] { return polar_check(o); }},
        {4, "spherical functions",
         [&] { return combine("spherical", {[&] { return spherical_sample_check(o); }, [&] { return spherical_funceq_check(o); }}); }},
        {5, "eigenvalues", [&] { return spherical_eigencheck(o); }},
        {6, "plancherel",
         [&] {
             return combine("plancherel", {[&] { return plancherel_roundtrip(o); }, [&] { return plancherel_parseval(o); },
                                           [&] { return plancherel_kernel(o); }});
         }},
        {7, "area functions",
         [&] { return combine("areafn", {[&] { return areafn_scan("h2", o); }, [&] { return areafn_scan("n42", o); }}); }},
        {8, "multiplier machinery",
         [&] {
             return combine("multiplier", {[&] { return multiplier_partition_check(o); }, [&] { return multiplier_xi_check(o); },
                                           [&] { return multiplier_aleph_check(o); }, [&] { return multiplier_criterion_check(o); }});
         }},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        try {
            const Report r = c.run();
            failed += !r.pass();
            std::printf("%s %d %s (%.1fs): %s\n", r.pass() ? "PASS" : "FAIL", c.id, c.title.c_str(), r.seconds, summary(r).c_str());
        } catch (const std::exception& e) {
            ++failed;
            std::printf("FAIL %d %s: exception: %s\n", c.id, c.title.c_str(), e.what());
        }
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
