#include "cpmlab/cli.hpp"
#include "cpmlab/hyp_identity.hpp"
#include "cpmlab/limits.hpp"
#include "cpmlab/ste_infinite.hpp"
#include "cpmlab/triple.hpp"

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace cpm;

namespace {

py::tuple run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> full = {"cpm_lab"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = cli::run(int(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

std::vector<cplx> values(const WeightTable& t) {
    std::vector<cplx> v;
    for (int n = 0; n < t.n_states; ++n) v.push_back(t.value(n));
    return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Chiral Potts model numerics";

    py::register_exception<pole_error>(m, "PoleError", PyExc_ValueError);
    py::register_exception<singular_configuration>(m, "SingularConfiguration", PyExc_ValueError);

    m.def("gamma", &cpm::gamma);
    m.def("rgamma", &cpm::rgamma);
    m.def("lgamma", &cpm::lgamma);
    m.def("pochhammer", &pochhammer, py::arg("x"), py::arg("n"));

    py::class_<Modulus>(m, "Modulus")
        .def_static("from_k", &Modulus::from_k)
        .def_readonly("k", &Modulus::k)
        .def_readonly("k_prime", &Modulus::k_prime);

    py::class_<RapidityPoint>(m, "RapidityPoint")
        .def_readonly("k", &RapidityPoint::k)
        .def_readonly("lam", &RapidityPoint::lambda)
        .def_readonly("gamma", &RapidityPoint::gamma)
        .def_readonly("theta", &RapidityPoint::theta)
        .def_readonly("phi", &RapidityPoint::phi)
        .def_readonly("mu_pow_N", &RapidityPoint::mu_pow_N);
    m.def("rapidity_from_lambda", &rapidity_from_lambda, py::arg("modulus"), py::arg("lam"));

    py::enum_<WeightKind>(m, "WeightKind")
        .value("W", WeightKind::W)
        .value("Wbar", WeightKind::Wbar)
        .value("Wf", WeightKind::Wf)
        .value("Wbarf", WeightKind::Wbarf);

    py::class_<ExponentPair>(m, "ExponentPair")
        .def_readonly("alpha", &ExponentPair::alpha)
        .def_readonly("beta", &ExponentPair::beta)
        .def_readonly("a_const", &ExponentPair::a_const);
    m.def("make_exponents", &make_exponents);
    m.def("exponents", &exponents, py::arg("p"), py::arg("q"), py::arg("kind"));

    m.def("weight_values", [](WeightKind kind, int N, const RapidityPoint& p, const RapidityPoint& q) {
        switch (kind) {
            case WeightKind::W: return values(weight_w(N, p, q));
            case WeightKind::Wbar: return values(weight_wbar(N, p, q));
            case WeightKind::Wf: return values(weight_wf(N, p, q));
            default: return values(weight_wbarf(N, p, q));
        }
    }, py::arg("kind"), py::arg("N"), py::arg("p"), py::arg("q"));

    py::class_<SteResidual>(m, "SteResidual")
        .def_readonly("lhs", &SteResidual::lhs)
        .def_readonly("rhs", &SteResidual::rhs)
        .def_readonly("rel_err", &SteResidual::rel_err);

    py::class_<PrincipalTriple>(m, "PrincipalTriple")
        .def_readonly("p", &PrincipalTriple::p)
        .def_readonly("q", &PrincipalTriple::q)
        .def_readonly("r", &PrincipalTriple::r);
    m.def("make_triple", &make_triple, py::arg("k"), py::arg("lambda_p"), py::arg("lambda_q"), py::arg("lambda_r"));

    m.def("ste_residual", [](int N, const PrincipalTriple& t, long a, long b, long c) {
        return ste_residual(N, t.p, t.q, t.r, a, b, c);
    });
    m.def("dual_ste_residual", [](int N, const PrincipalTriple& t, long a, long b) {
        return dual_ste_residual(N, t.p, t.q, t.r, a, b);
    });

    py::class_<SumSteResult>(m, "SumSteResult")
        .def_readonly("residual", &SumSteResult::residual)
        .def_readonly("tail_bound", &SumSteResult::tail_bound)
        .def_readonly("decay_exponent", &SumSteResult::decay_exponent);
    py::class_<IntegralSteResult>(m, "IntegralSteResult").def_readonly("residual", &IntegralSteResult::residual);

    m.def("regime1_ste", &regime1_ste, py::arg("triple"), py::arg("a"), py::arg("b"), py::arg("c"),
          py::arg("cutoff") = 100000, py::call_guard<py::gil_scoped_release>());
    m.def("regime2_ste", [](const PrincipalTriple& t, double x, double y, double z, int levels) {
        QuadratureConfig cfg;
        cfg.levels = levels;
        return regime2_ste(t, x, y, z, cfg);
    }, py::arg("triple"), py::arg("x"), py::arg("y"), py::arg("z"), py::arg("levels") = 10);
    m.def("regime3_ste", [](const PrincipalTriple& t, double x, double y, double z, bool nonchiral) {
        return regime3_ste(t, x, y, z, QuadratureConfig{}, nonchiral);
    }, py::arg("triple"), py::arg("x"), py::arg("y"), py::arg("z"), py::arg("nonchiral") = false);

    m.def("limit_weight_I", &limit_weight_I);
    m.def("h1_closed_form", &h1_closed_form);
    m.def("h1_partial_sum", [](const ExponentPair& e, double x, long cutoff) {
        return h1_partial_sum(e, x, cutoff).value;
    });
    m.def("s_n_exact", &s_n_exact);
    m.def("asymptotic_check", [](int N, double alpha, long n, int order) {
        auto c = asymptotic_check(N, alpha, n, order);
        return py::dict(py::arg("exact") = c.exact, py::arg("value") = c.value, py::arg("error") = c.error,
                        py::arg("bound") = c.bound);
    });

    py::class_<IdentityInstance>(m, "IdentityInstance")
        .def(py::init([](std::array<cplx, 3> x, std::array<cplx, 3> y, std::array<long, 3> mm) {
            return IdentityInstance{x, y, mm};
        }), py::arg("x"), py::arg("y"), py::arg("m") = std::array<long, 3>{0, 0, 0})
        .def_readwrite("x", &IdentityInstance::x)
        .def_readwrite("y", &IdentityInstance::y)
        .def_readwrite("m", &IdentityInstance::m);
    m.def("solve_conditions", &solve_conditions, py::arg("x1"), py::arg("x2"), py::arg("y1"), py::arg("y2"),
          py::arg("branch") = 0);
    m.def("instance_from_rapidities", &instance_from_rapidities);

    py::class_<IdentityResidual>(m, "IdentityResidual")
        .def_readonly("lhs", &IdentityResidual::lhs)
        .def_readonly("rhs", &IdentityResidual::rhs)
        .def_readonly("rel_err", &IdentityResidual::rel_err)
        .def_readonly("tail_bound", &IdentityResidual::tail_bound);
    m.def("identity_residual", &identity_residual, py::arg("instance"), py::arg("cutoff") = 100000,
          py::call_guard<py::gil_scoped_release>());
    m.def("rhs_closed_form", [](const IdentityInstance& inst) { return rhs_closed_form(inst); });
    m.def("orbit_labels", [](const IdentityInstance& inst) {
        std::vector<std::string> labels;
        for (const auto& mem : symmetry_orbit(inst).members) labels.push_back(mem.label);
        return labels;
    });
    m.def("dougall_5h5", [](cplx x1, cplx x2, cplx x3, cplx a, long cutoff) {
        auto d = dougall_5h5_check(x1, x2, x3, a, cutoff);
        return py::dict(py::arg("lhs") = d.lhs, py::arg("rhs") = d.rhs, py::arg("rel_err") = d.rel_err);
    }, py::arg("x1"), py::arg("x2"), py::arg("x3"), py::arg("a"), py::arg("cutoff") = 100000);
    m.def("dougall_ramanujan_value", &dougall_ramanujan_value);

    m.def("run_cli", &run_cli, py::arg("args"), "run the command-line front end; returns (exit_code, stdout, stderr)");
}
