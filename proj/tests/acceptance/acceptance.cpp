// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fockq/errors.hpp"
#include "fockq/fockplane.hpp"
#include "fockq/quantizer.hpp"
#include "fockq/spectra.hpp"
#include "fockq/symbols.hpp"
#include "oracles.hpp"

using namespace fockq;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double table_deviation(const std::vector<std::size_t>& dims, const std::vector<double>& expected) {
    const auto rows = sigma_table(dims);
    double worst = 0.0;
    for (std::size_t i = 0; i < dims.size(); ++i) worst = std::max(worst, std::abs(rows[i].sigma - expected[i]));
    return worst;
}

Outcome table_reproduction() {
    constexpr double tol = 1e-5, core_budget = 60.0, extended_budget = 600.0;
    auto t0 = std::chrono::steady_clock::now();
    const double core = table_deviation({10, 55, 100, 551, 1000, 5555, 10000},
                                        {4.713054, 5.774856, 5.941534, 6.173778, 6.209670, 6.259760, 6.267356});
    const double core_time = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const double ext = table_deviation({55255, 100000, 500555, 1000000}, {6.278122, 6.279776, 6.282020, 6.282450});
    const double ext_time = seconds_since(t0);
    const bool ok = core <= tol && ext <= tol && core_time <= core_budget && ext_time <= extended_budget;
    return {ok, fmt("core max |dev| %.2e in %.2f s; ", core, core_time) +
                    fmt("extended max |dev| %.2e in %.2f s", ext, ext_time)};
}

Outcome sigma_inequality() {
    std::vector<std::size_t> dims;
    for (std::size_t n = 2; n <= 2000; ++n) dims.push_back(n);
    for (std::size_t n : {55255u, 100000u, 500555u, 1000000u}) dims.push_back(n);
    std::vector<SpectrumSummary> rows;
    try {
        rows = sigma_table(dims);
    } catch (const InvariantViolation& e) {
        return {false, e.what()};
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) worst = std::max(worst, r.sigma - two_pi);
    std::size_t non_monotone = 0;
    for (std::size_t i = 2; i < rows.size() && rows[i].dim <= 200; ++i)
        if (!(rows[i].sigma > rows[i - 2].sigma)) ++non_monotone;
    return {worst < 0.0 && non_monotone == 0,
            fmt("max sigma - 2pi = %.3e over %g dims; ", worst, double(rows.size())) +
                fmt("%g parity-monotonicity violations in 2..200", double(non_monotone))};
}

Outcome commutator_identity() {
    constexpr double tol = 1e-12;
    std::vector<std::size_t> dims;
    for (std::size_t n = 1; n <= 200; ++n) dims.push_back(n);
    dims.push_back(500);
    dims.push_back(1000);
    double worst = 0.0;
    for (std::size_t n : dims) {
        const auto c = commutator(position_operator(n), momentum_operator(n));
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(n, n) * cdouble(0.0, 1.0);
        expected(n - 1, n - 1) -= cdouble(0.0, double(n));
        worst = std::max(worst, (c.entries() - expected).cwiseAbs().maxCoeff());
    }
    return {worst <= tol, fmt("max |[Q,P] - i(I - N E_N)| = %.3e (tol %.0e)", worst, tol)};
}

Outcome hamiltonian_identity() {
    constexpr double tol = 1e-12;
    double worst = 0.0;
    for (std::size_t n = 1; n <= 500; ++n) {
        const auto q = position_operator(n);
        const auto p = momentum_operator(n);
        Eigen::MatrixXcd h = 0.5 * (p.entries() * p.entries() + q.entries() * q.entries());
        for (std::size_t k = 0; k < n; ++k)
            h(k, k) -= k + 1 == n ? 0.5 * double(n - 1) : 0.5 * double(2 * k + 1);
        worst = std::max(worst, h.cwiseAbs().maxCoeff());
    }
    const auto h5 = hamiltonian(5);
    const double want[] = {0.5, 1.5, 2.5, 3.5, 2.0};
    bool exact = true;
    for (std::size_t k = 0; k < 5; ++k) exact = exact && h5(k, k) == cdouble(want[k], 0.0);
    return {worst <= tol && exact,
            fmt("max deviation %.3e for N <= 500 (tol %.0e); ", worst, tol) +
                (exact ? "N = 5 diagonal exact" : "N = 5 diagonal mismatch")};
}

Outcome identity_resolution() {
    constexpr double tol = 1e-10;
    double worst = 0.0;
    for (std::size_t n = 1; n <= 64; ++n) {
        try {
            worst = std::max(worst, verify_identity_resolution(FrameConfig(n), QuadratureSpec::for_dim(n), tol));
        } catch (const QuadratureError& e) {
            return {false, e.what()};
        }
    }
    return {worst <= tol, fmt("max deviation %.3e for N <= 64 (tol %.0e)", worst, tol)};
}

Outcome lower_symbols() {
    constexpr double tol = 1e-10, origin_tol = 1e-12;
    std::mt19937_64 rng(20261014);
    std::uniform_real_distribution<double> radius(0.0, 6.0), angle(0.0, two_pi);
    double worst = 0.0;
    for (std::size_t n = 2; n <= 64; ++n) {
        const auto q = position_operator(n);
        const auto p = momentum_operator(n);
        const auto q2 = q * q, p2 = p * p;
        const auto h = hamiltonian(n);
        for (int s = 0; s < 100; ++s) {
            const double r = radius(rng);
            const PhasePoint x = PhasePoint::from_z(std::polar(r, angle(rng)));
            // sandwich through the extended-precision coherent vector
            const auto cs = oracle::coherent_coeffs(n, x.z().real(), x.z().imag());
            const Eigen::Map<const Eigen::VectorXcd> v(cs.data(), static_cast<Eigen::Index>(n));
            const auto sandwich = [&](const OperatorMatrix& a) { return v.dot(a.entries() * v); };
            const auto quad = quadratic_symbols(n, x);
            const double c = corrective_factor(n, r);
            worst = std::max({worst, std::abs(sandwich(q) - c * x.q()), std::abs(sandwich(p) - c * x.p()),
                              std::abs(sandwich(q2) - (quad.a + quad.b)), std::abs(sandwich(p2) - (quad.a - quad.b)),
                              std::abs(sandwich(h) - quad.a)});
        }
    }
    double origin = 0.0;
    for (std::size_t n = 2; n <= 200; ++n)
        origin = std::max(origin, std::abs(uncertainty_product(n, PhasePoint(0.0, 0.0)) - 0.5));
    return {worst <= tol && origin <= origin_tol,
            fmt("closed forms max deviation %.3e (tol %.0e); ", worst, tol) +
                fmt("|dQ dP - 1/2| at z = 0 max %.3e (tol %.0e)", origin, origin_tol)};
}

Outcome hermite_zeros() {
    constexpr double tol = 1e-8;
    double worst = 0.0, oracle_worst = 0.0;
    bool interlace = true, gaps = true;
    std::size_t first_bad = 0;
    std::vector<double> prev = eig_all(SymTridiagonal::position(1));
    for (std::size_t n = 2; n <= 2001; ++n) {
        std::vector<double> cur = eig_all(SymTridiagonal::position(n));
        const GapReport g = gap_properties(prev, cur);
        if (!g.ok() && first_bad == 0) first_bad = n - 1;
        interlace = interlace && g.interlacing_ok;
        gaps = gaps && g.gaps_ok;
        if (n <= 2000) {
            for (double lam : cur) worst = std::max(worst, hermite_residual(n, lam));
            if (n == 10 || n == 250 || n == 2000) {
                // independent residual from the 50-digit recurrence
                for (std::size_t i = cur.size() / 2; i < cur.size(); i += std::max<std::size_t>(1, n / 20)) {
                    const oracle::big x(cur[i]);
                    const oracle::big h = oracle::hermite(n, x);
                    const oracle::big d = 2 * oracle::big(n) * oracle::hermite(n - 1, x);
                    oracle_worst = std::max(oracle_worst, abs(h / d).convert_to<double>() / std::sqrt(2.0 * n));
                }
            }
        }
        prev = std::move(cur);
    }
    const bool ok = worst <= tol && oracle_worst <= tol && interlace && gaps;
    return {ok, fmt("max residual %.3e, oracle residual %.3e (tol %.0e); ", worst, oracle_worst, tol) +
                    (interlace ? "interlacing strict, " : "interlacing fails, ") +
                    (gaps ? std::string("gap inequalities hold for N <= 2000")
                          : "gap inequality fails at N = " + std::to_string(first_bad))};
}

Outcome asymptotics() {
    const std::size_t big_n = 100000, mid_n = 10000;
    const auto ext = extreme_eigenvalues(SymTridiagonal::position(big_n));
    const double ratio = ext.lambda_max / std::sqrt(2.0 * big_n);
    const bool ratio_ok = ratio >= 0.985 && ratio <= 1.0;

    // ten seeded sub-intervals inside [-0.9R, 0.9R], each at least 0.1R wide
    const double r = std::sqrt(2.0 * mid_n);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.9 * r, 0.9 * r);
    double worst = 0.0;
    for (int i = 0; i < 10;) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 0.1 * r) continue;
        worst = std::max(worst, semicircle_compare(mid_n, a, b).relative_deviation);
        ++i;
    }
    return {ratio_ok && worst <= 0.02,
            fmt("lambda_M / sqrt(2N) = %.6f at N = 1e5; ", ratio) +
                fmt("semicircle max relative deviation %.4f on 10 intervals at N = 1e4 (tol 0.02)", worst)};
}

Outcome oracle_equivalence() {
    constexpr double tol = 1e-10;
    double worst = 0.0;
    for (std::size_t n = 1; n <= 32; ++n) {
        const auto quad = QuadratureSpec::for_dim(n);
        for (unsigned a = 0; a <= 5; ++a)
            for (unsigned b = 0; b <= 5; ++b) {
                const auto f = [a, b](const PhasePoint& x) { return std::pow(x.z(), a) * std::pow(std::conj(x.z()), b); };
                worst = std::max(worst, quantize_monomial(n, a, b).scaled_max_diff(quantize_quadrature(f, n, quad)));
            }
    }
    return {worst <= tol, fmt("max |closed form - quadrature| / max(1, |entry|) = %.3e for a, b <= 5, N <= 32 (tol %.0e)", worst, tol)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"table reproduction", table_reproduction},
        {"sigma below 2 pi", sigma_inequality},
        {"commutator identity", commutator_identity},
        {"hamiltonian identity", hamiltonian_identity},
        {"resolution of identity", identity_resolution},
        {"lower-symbol closed forms", lower_symbols},
        {"hermite zeros, interlacing, gaps", hermite_zeros},
        {"asymptotics", asymptotics},
        {"monomial oracle equivalence", oracle_equivalence},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.passed) ++failures;
        std::printf("%s criterion %zu (%s): %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
