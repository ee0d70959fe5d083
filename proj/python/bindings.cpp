#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fockq/errors.hpp"
#include "fockq/fockplane.hpp"
#include "fockq/quantizer.hpp"
#include "fockq/spectra.hpp"
#include "fockq/symbols.hpp"
#include "fockq/verify.hpp"

namespace py = pybind11;
using namespace fockq;

namespace {

Eigen::MatrixXcd dense(const OperatorMatrix& op) { return op.entries(); }

PhasePoint point(double q, double p) { return PhasePoint(q, p); }

py::dict summary_dict(const SpectrumSummary& s) {
    py::dict d;
    d["N"] = s.dim;
    d["lambda_m"] = s.lambda_min_pos;
    d["lambda_M"] = s.lambda_max;
    d["delta"] = s.delta;
    d["width"] = s.width;
    d["sigma"] = s.sigma;
    d["parity"] = std::string(to_string(s.parity));
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Coherent-state quantization of the plane in a truncated Fock space.";

    static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
    static py::exception<DomainError> domain(m, "DomainError", PyExc_ValueError);
    static py::exception<RangeError> range(m, "RangeError", PyExc_OverflowError);
    static py::exception<QuadratureError> quadrature(m, "QuadratureError", base.ptr());
    static py::exception<InvariantViolation> invariant(m, "InvariantViolation", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DomainError& e) {
            py::set_error(domain, e.what());
        } catch (const RangeError& e) {
            py::set_error(range, e.what());
        } catch (const QuadratureError& e) {
            py::set_error(quadrature, e.what());
        } catch (const InvariantViolation& e) {
            py::set_error(invariant, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    // phase plane
    m.def("normalization_factor", &normalization_factor, py::arg("n"), py::arg("r2"),
          "Truncated exponential sum over n < N of r2^n / n!.");
    m.def("log_normalization_factor", &log_normalization_factor, py::arg("n"), py::arg("r2"));
    m.def(
        "coherent_state",
        [](std::size_t n, double q, double p) {
            const auto s = coherent_state(FrameConfig(n), point(q, p));
            return py::array_t<cdouble>(static_cast<py::ssize_t>(s.coeffs.size()), s.coeffs.data());
        },
        py::arg("n"), py::arg("q"), py::arg("p"), "Fock coefficients of the normalized truncated coherent state.");
    m.def(
        "reproducing_kernel",
        [](std::size_t n, double q1, double p1, double q2, double p2) {
            return reproducing_kernel(FrameConfig(n), point(q1, p1), point(q2, p2));
        },
        py::arg("n"), py::arg("q1"), py::arg("p1"), py::arg("q2"), py::arg("p2"));
    m.def(
        "identity_deviation",
        [](std::size_t n, double tol) {
            return verify_identity_resolution(FrameConfig(n), QuadratureSpec::for_dim(n), tol);
        },
        py::arg("n"), py::arg("tol") = 1e-10, "max |quadrature of |z><z| - I| with the default rule.");

    // operators
    m.def("quantize_monomial", [](std::size_t n, unsigned a, unsigned b) { return dense(quantize_monomial(n, a, b)); },
          py::arg("n"), py::arg("a"), py::arg("b"), "Dense matrix of the quantized monomial z^a conj(z)^b.");
    m.def(
        "quantize",
        [](const std::vector<std::tuple<unsigned, unsigned, cdouble>>& terms, std::size_t n) {
            PolynomialSymbol sym;
            for (const auto& [a, b, c] : terms) sym.add(a, b, c);
            return dense(quantize(sym, n));
        },
        py::arg("terms"), py::arg("n"), "Quantize sum c z^a conj(z)^b given as [(a, b, c), ...].");
    m.def("position_operator", [](std::size_t n) { return dense(position_operator(n)); }, py::arg("n"));
    m.def("momentum_operator", [](std::size_t n) { return dense(momentum_operator(n)); }, py::arg("n"));
    m.def("hamiltonian", [](std::size_t n) { return dense(hamiltonian(n)); }, py::arg("n"));
    m.def(
        "commutator_deviation",
        [](std::size_t n) {
            const auto c = commutator(position_operator(n), momentum_operator(n));
            const auto expected =
                (OperatorMatrix::identity(n) - top_level_projector(n) * double(n)) * cdouble(0.0, 1.0);
            return c.max_abs_diff(expected);
        },
        py::arg("n"), "max |[Q_N, P_N] - i(I - N E_N)|.");

    // lower symbols
    m.def("corrective_factor", &corrective_factor, py::arg("n"), py::arg("r"));
    m.def(
        "quadratic_symbols",
        [](std::size_t n, double q, double p) {
            const auto s = quadratic_symbols(n, point(q, p));
            return std::make_pair(s.a, s.b);
        },
        py::arg("n"), py::arg("q"), py::arg("p"), "(A, B) with <Q^2> = A + B and <P^2> = A - B.");
    m.def("uncertainty_product", [](std::size_t n, double q, double p) { return uncertainty_product(n, point(q, p)); },
          py::arg("n"), py::arg("q"), py::arg("p"));
    m.def(
        "symbol_grid",
        [](std::size_t n, const std::string& which, std::pair<double, double> q_range,
           std::pair<double, double> p_range, std::size_t steps) {
            const GridAxis qa{q_range.first, q_range.second, steps};
            const GridAxis pa{p_range.first, p_range.second, steps};
            SymbolGrid g;
            {
                py::gil_scoped_release release;
                g = symbol_grid(n, parse_symbol_kind(which), qa, pa);
            }
            py::array_t<double> out({steps, steps});
            std::copy(g.values.begin(), g.values.end(), out.mutable_data());
            return out;
        },
        py::arg("n"), py::arg("which"), py::arg("q_range") = std::make_pair(-6.0, 6.0),
        py::arg("p_range") = std::make_pair(-6.0, 6.0), py::arg("steps") = 49,
        "Values on a steps x steps grid, indexed [iq, ip].");

    // spectra
    m.def("position_spectrum", [](std::size_t n) { return eig_all(SymTridiagonal::position(n)); }, py::arg("n"),
          "All eigenvalues of Q_N, ascending.");
    m.def("hermite_residual", &hermite_residual, py::arg("n"), py::arg("x"));
    m.def(
        "spectrum_summary", [](std::size_t n, double tol) { return summary_dict(spectrum_summary(n, tol)); },
        py::arg("n"), py::arg("tol") = 1e-13);
    m.def(
        "sigma_table",
        [](const std::vector<std::size_t>& dims, double tol) {
            std::vector<SpectrumSummary> rows;
            {
                py::gil_scoped_release release;
                rows = sigma_table(dims, tol);
            }
            py::list out;
            for (const auto& s : rows) out.append(summary_dict(s));
            return out;
        },
        py::arg("dims"), py::arg("tol") = 1e-13);
    m.def(
        "gap_properties",
        [](std::size_t n) {
            const auto r = gap_properties(n);
            py::dict d;
            d["gaps_ok"] = r.gaps_ok;
            d["interlacing_ok"] = r.interlacing_ok;
            d["worst_gap_margin"] = r.worst_gap_margin;
            d["worst_interlace_margin"] = r.worst_interlace_margin;
            return d;
        },
        py::arg("n"));
    m.def(
        "semicircle_compare",
        [](std::size_t n, double x1, double x2) {
            const auto c = semicircle_compare(n, x1, x2);
            return py::make_tuple(c.predicted, c.exact, c.relative_deviation);
        },
        py::arg("n"), py::arg("x1"), py::arg("x2"), "(predicted, exact, relative deviation) on [x1, x2].");

    m.def(
        "verify",
        [](std::size_t n_max_dense, std::uint64_t seed) {
            VerifyReport r;
            {
                py::gil_scoped_release release;
                r = run_verification({n_max_dense, seed, false});
            }
            py::dict d;
            for (const auto& c : r.checks) d[py::str(c.name)] = py::make_tuple(c.passed, c.worst, c.detail);
            return d;
        },
        py::arg("n_max_dense") = 64, py::arg("seed") = 1, "Check name -> (passed, worst, detail).");
}
