#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <vector>

#include "qwsink/bessel.hpp"
#include "qwsink/observables.hpp"
#include "qwsink/propagator.hpp"
#include "qwsink/resolvent.hpp"
#include "qwsink/verify.hpp"
#include "qwsink/wigner.hpp"

namespace py = pybind11;
using namespace qwsink;

namespace {

int default_cone(int s0, double x) { return s0 + static_cast<int>(std::ceil(x)) + 20; }

std::vector<std::vector<double>> by_center(const std::vector<double>& flat, int m_max, int K) {
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<size_t>(m_max - 1));
    for (int m = 2; m <= m_max; ++m) {
        const auto begin = flat.begin() + static_cast<long>(m - 2) * K;
        out.emplace_back(begin, begin + K);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Continuous-time quantum walk on a half line with an absorbing end site";
    m.attr("__version__") = "0.1.0";

    m.def("bessel_j", &bessel_j, py::arg("n"), py::arg("x"),
          "Bessel function J_n(x) for integer n >= 0 and x >= 0");
    m.def(
        "bessel_row",
        [](double x, int n_max) { return bessel_j_row(x, n_max).values; },
        py::arg("x"), py::arg("n_max"), "J_0(x) .. J_{n_max}(x) as a list");

    m.def(
        "propagator",
        [](int s, int s0, double t, double omega, double kappa) {
            return propagator(s, s0, TimePoint(t, omega), WalkParams(omega, kappa));
        },
        py::arg("s"), py::arg("s0"), py::arg("t"), py::arg("omega") = 1.0,
        py::arg("kappa") = 0.0, "Amplitude K(s, s0; t) on the absorbing half line");

    m.def(
        "propagator_column",
        [](int s0, double t, double omega, double kappa, int s_max) {
            const TimePoint tp(t, omega);
            if (s_max <= 0) s_max = default_cone(s0, tp.x);
            return propagator_column(s0, tp, WalkParams(omega, kappa), s_max);
        },
        py::arg("s0"), py::arg("t"), py::arg("omega") = 1.0, py::arg("kappa") = 0.0,
        py::arg("s_max") = 0, "K(s, s0; t) for s = 1..s_max (0 picks the ballistic cone)");

    m.def(
        "propagate_state",
        [](const std::vector<cplx>& values, double t, double omega, double kappa) {
            const WalkParams params(omega, kappa);
            return propagate_state(AmplitudeVector(values, params), TimePoint(t, omega), params)
                .values;
        },
        py::arg("values"), py::arg("t"), py::arg("omega") = 1.0, py::arg("kappa") = 0.0,
        "Evolve a normalized state given on sites 1..len(values)");

    m.def(
        "survival",
        [](int s0, double t, double omega, double kappa, int site_cutoff) {
            return survival(s0, TimePoint(t, omega), WalkParams(omega, kappa), {}, site_cutoff);
        },
        py::arg("s0"), py::arg("t"), py::arg("omega") = 1.0, py::arg("kappa") = 0.0,
        py::arg("site_cutoff") = 0, "Survival probability S(t | s0)");

    m.def(
        "first_passage_density",
        [](int s0, double t, double omega, double kappa) {
            return first_passage_density(s0, TimePoint(t, omega), WalkParams(omega, kappa));
        },
        py::arg("s0"), py::arg("t"), py::arg("omega") = 1.0, py::arg("kappa") = 0.0,
        "Absorption-time density F(t | s0) = kappa |K(1, s0; t)|^2");

    m.def("reflection_amplitude", &reflection_amplitude, py::arg("k"), py::arg("eta"),
          "Band-mode reflection amplitude R(k)");
    m.def("absorption_fraction", &absorption_fraction, py::arg("k"), py::arg("eta"),
          "Absorbed flux fraction A(k) = 1 - |R(k)|^2");
    m.def(
        "absorption_probability",
        [](int s0, double eta) { return absorption_probability(s0, eta); }, py::arg("s0"),
        py::arg("eta"), "Total absorption probability for release site s0");

    m.def(
        "boundary_pole",
        [](double omega, double kappa) -> py::object {
            const auto pole = boundary_pole(WalkParams(omega, kappa));
            if (!pole) return py::none();
            py::dict d;
            d["q_p"] = pole->q_p;
            d["z_p"] = pole->z_p;
            d["gamma_p"] = pole->gamma_p;
            d["residue_prefactor"] = pole->residue_prefactor;
            return d;
        },
        py::arg("omega") = 1.0, py::arg("kappa") = 0.0,
        "Boundary resonance data for eta > 1, else None");

    m.def("localization_length", &localization_length, py::arg("eta"),
          "Spatial extent 1/ln(eta) of the boundary resonance (eta > 1)");

    m.def(
        "wigner",
        [](int s0, double t, double omega, double kappa, int m_max, int k_nodes) {
            const WalkParams params(omega, kappa);
            const TimePoint tp(t, omega);
            if (m_max <= 0) m_max = 2 * default_cone(s0, tp.x);
            if (k_nodes <= 0) k_nodes = 2 * m_max + 16;
            const WignerField f = params.eta > 1.0
                ? wigner_strong_decomposition(s0, m_max, k_nodes, tp, params)
                : wigner_weak_decomposition(s0, m_max, k_nodes, tp, params);
            py::dict out;
            out["m_max"] = f.m_max;
            out["t"] = f.t;
            out["k_grid"] = f.k_grid;
            out["total"] = by_center(f.total, f.m_max, f.k_nodes());
            py::dict channels;
            for (const auto& [name, values] : f.channels)
                channels[py::str(name)] = by_center(values, f.m_max, f.k_nodes());
            out["channels"] = channels;
            out["trace"] = f.trace();
            return out;
        },
        py::arg("s0"), py::arg("t"), py::arg("omega") = 1.0, py::arg("kappa") = 0.0,
        py::arg("m_max") = 0, py::arg("k_nodes") = 0,
        "Channel-resolved phase-space distribution; rows are centers m = 2..m_max");

    m.def(
        "verify",
        [](bool quick) {
            const auto results =
                run_acceptance(quick ? VerifyLevel::Quick : VerifyLevel::Full);
            py::list out;
            for (const auto& r : results) {
                py::dict d;
                d["id"] = r.id;
                d["name"] = r.name;
                d["passed"] = r.passed;
                d["measured"] = r.measured;
                d["threshold"] = r.threshold;
                d["note"] = r.note;
                out.append(d);
            }
            return out;
        },
        py::arg("quick") = true, "Run the built-in verification suite");
}
