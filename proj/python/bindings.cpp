#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nilharm/areafn.hpp"
#include "nilharm/checks.hpp"
#include "nilharm/group.hpp"
#include "nilharm/matpolar.hpp"
#include "nilharm/multiplier.hpp"
#include "nilharm/plancherel.hpp"
#include "nilharm/specfun.hpp"
#include "nilharm/spherical.hpp"

namespace py = pybind11;
using namespace nilharm;

namespace {

py::dict report_dict(const checks::Report& r) {
    py::dict d;
    d["command"] = r.command;
    d["seed"] = r.seed;
    py::dict inputs, values, residuals, tolerances;
    for (const auto& [k, x] : r.inputs) inputs[py::str(k)] = x;
    for (const auto& [k, x] : r.values) values[py::str(k)] = x;
    for (const auto& m : r.metrics) {
        residuals[py::str(m.name)] = m.value;
        tolerances[py::str(m.name)] = m.tolerance;
    }
    d["inputs"] = inputs;
    d["values"] = values;
    d["residuals"] = residuals;
    d["tolerances"] = tolerances;
    d["pass"] = r.pass();
    d["seconds"] = r.seconds;
    return d;
}

checks::Options make_options(std::uint64_t seed, std::optional<int> v, std::optional<int> order, std::optional<int> l_max) {
    checks::Options o;
    o.seed = seed;
    o.v = v;
    o.order = order;
    o.l_max = l_max;
    return o;
}

template <class F>
void def_check(py::module_& m, const char* name, F f) {
    m.def(
        name,
        [f](std::uint64_t seed, std::optional<int> v, std::optional<int> order, std::optional<int> l_max) {
            return report_dict(f(make_options(seed, v, order, l_max)));
        },
        py::arg("seed") = 1, py::arg("v") = py::none(), py::arg("order") = py::none(), py::arg("l_max") = py::none());
}

}  // namespace

PYBIND11_MODULE(_nilharm, m) {
    m.doc() = "Radial Fourier analysis on free two-step nilpotent groups";

    m.def("bessel_reduced", &specfun::bessel_reduced, py::arg("alpha"), py::arg("z"));
    m.def("bessel_reduced_deriv", &specfun::bessel_reduced_deriv, py::arg("alpha"), py::arg("z"), py::arg("order"));
    m.def("laguerre_norm", &specfun::laguerre_norm, py::arg("n"), py::arg("alpha"), py::arg("x"));
    m.def("hermite_weber", &specfun::hermite_weber, py::arg("k"), py::arg("x"), py::arg("kmax") = 60);

    py::class_<group::GroupPoint>(m, "GroupPoint")
        .def(py::init([](Eigen::VectorXd x, Eigen::VectorXd a) {
                 const auto v = x.size();
                 if (a.size() != v * (v - 1) / 2) throw std::invalid_argument("a must have v(v-1)/2 entries");
                 return group::GroupPoint{std::move(x), std::move(a)};
             }),
             py::arg("x"), py::arg("a"))
        .def_readwrite("x", &group::GroupPoint::x)
        .def_readwrite("a", &group::GroupPoint::a)
        .def_property_readonly("v", &group::GroupPoint::v);
    m.def("identity", &group::identity, py::arg("v"));
    m.def("product", &group::product);
    m.def("inverse", &group::inverse);
    m.def("dilate", &group::dilate, py::arg("r"), py::arg("p"));
    m.def("koranyi_norm", &group::koranyi_norm);
    m.def("random_point", &group::random_point, py::arg("v"), py::arg("seed"), py::arg("scale") = 1.0);

    py::enum_<matpolar::OrthGroup>(m, "OrthGroup").value("O", matpolar::OrthGroup::O).value("SO", matpolar::OrthGroup::SO);
    m.def(
        "antisym_polar",
        [](const Eigen::MatrixXd& A, matpolar::OrthGroup g) {
            const auto p = matpolar::antisym_polar(A, g);
            return py::make_tuple(p.lambda, p.k, p.epsilon);
        },
        py::arg("A"), py::arg("group") = matpolar::OrthGroup::O);
    m.def("eta_constant", &matpolar::eta_constant, py::arg("v"));

    py::class_<spherical::SphericalParam>(m, "SphericalParam")
        .def_readonly("v", &spherical::SphericalParam::v)
        .def_readonly("r_star", &spherical::SphericalParam::r_star)
        .def_readonly("lambda_star", &spherical::SphericalParam::lambda_star)
        .def_readonly("l", &spherical::SphericalParam::l)
        .def_readonly("epsilon", &spherical::SphericalParam::epsilon);
    m.def("make_param", &spherical::make_param, py::arg("v"), py::arg("r_star"), py::arg("lambda_star"), py::arg("l"),
          py::arg("epsilon") = py::none());
    m.def(
        "phi",
        [](const spherical::SphericalParam& p, const group::GroupPoint& n, int order, std::uint64_t seed) {
            const auto kq = matpolar::haar_quadrature(p.v, p.epsilon ? matpolar::OrthGroup::SO : matpolar::OrthGroup::O, order, seed);
            return spherical::phi_eval(p, n, kq);
        },
        py::arg("param"), py::arg("point"), py::arg("order") = 16, py::arg("seed") = 1);
    m.def("phi_v2_closed", &spherical::phi_v2_closed, py::arg("lam"), py::arg("l"), py::arg("point"));
    m.def("sublaplacian_eigenvalue", &spherical::sublaplacian_eigenvalue);
    m.def("center_laplacian_eigenvalue", &spherical::center_laplacian_eigenvalue);

    m.def("plancherel_constant", &plancherel::plancherel_constant, py::arg("v"));

    m.def(
        "mu_phi_jet",
        [](const spherical::SphericalParam& p, double s, int order) {
            return areafn::mu_phi_jet(p, s, areafn::pairing_rules(group::GroupDims::of(p.v)), order);
        },
        py::arg("param"), py::arg("s"), py::arg("order") = 0);

    m.def("bump", &multiplier::bump, py::arg("y"));

    def_check(m, "specfun_check", checks::specfun_check);
    def_check(m, "group_check", checks::group_check);
    def_check(m, "polar_check", checks::polar_check);
    def_check(m, "spherical_sample_check", checks::spherical_sample_check);
    def_check(m, "spherical_eigencheck", checks::spherical_eigencheck);
    def_check(m, "spherical_funceq_check", checks::spherical_funceq_check);
    def_check(m, "plancherel_roundtrip", checks::plancherel_roundtrip);
    def_check(m, "plancherel_parseval", checks::plancherel_parseval);
    def_check(m, "plancherel_kernel", checks::plancherel_kernel);
    def_check(m, "multiplier_partition_check", checks::multiplier_partition_check);
    def_check(m, "multiplier_xi_check", checks::multiplier_xi_check);
    def_check(m, "multiplier_aleph_check", checks::multiplier_aleph_check);
    def_check(m, "multiplier_criterion_check", checks::multiplier_criterion_check);
    m.def(
        "areafn_scan", [](const std::string& target, std::uint64_t seed) {
            checks::Options o;
            o.seed = seed;
            return report_dict(checks::areafn_scan(target, o));
        },
        py::arg("target"), py::arg("seed") = 1);
}
