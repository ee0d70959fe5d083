#include "fockq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "fockq/errors.hpp"
#include "fockq/fockplane.hpp"
#include "fockq/quantizer.hpp"
#include "fockq/spectra.hpp"
#include "fockq/symbols.hpp"

namespace fockq {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

SymTridiagonal spectral_matrix(std::size_t n, bool fault) {
    SymTridiagonal t = SymTridiagonal::position(n);
    if (fault && n >= 4) t.offdiag[(n - 1) / 2] *= 1.5;
    return t;
}

CheckResult max_deviation_check(std::string name, double worst, double tol) {
    std::ostringstream d;
    d << "max deviation " << worst << " (tolerance " << tol << ")";
    return {std::move(name), worst <= tol, worst, d.str()};
}

CheckResult check_commutator(std::size_t n_max) {
    double worst = 0.0;
    for (std::size_t n = 1; n <= std::min<std::size_t>(n_max, 200); ++n) {
        const auto c = commutator(position_operator(n), momentum_operator(n));
        const auto expected = (OperatorMatrix::identity(n) - top_level_projector(n) * double(n)) * cdouble{0, 1};
        worst = std::max(worst, c.max_abs_diff(expected));
    }
    return max_deviation_check("commutator", worst, 1e-12);
}

CheckResult check_hamiltonian(std::size_t n_max) {
    double worst = 0.0;
    for (std::size_t n = 1; n <= std::min<std::size_t>(n_max, 500); ++n) {
        const auto q = position_operator(n);
        const auto p = momentum_operator(n);
        const auto h = (p * p + q * q) * 0.5;
        worst = std::max(worst, h.max_abs_diff(hamiltonian(n)));
    }
    return max_deviation_check("hamiltonian", worst, 1e-12);
}

CheckResult check_identity(std::size_t n_max) {
    double worst = 0.0;
    for (std::size_t n = 1; n <= std::min<std::size_t>(n_max, 64); n = n < 8 ? n + 1 : n * 2) {
        try {
            worst = std::max(worst, verify_identity_resolution(FrameConfig(n), QuadratureSpec::for_dim(n)));
        } catch (const QuadratureError& e) {
            return {"identity-resolution", false, std::numeric_limits<double>::infinity(), e.what()};
        }
    }
    return max_deviation_check("identity-resolution", worst, 1e-10);
}

CheckResult check_sandwich(std::size_t n_max, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> radius(0.0, 6.0), angle(0.0, two_pi);
    double worst = 0.0;
    for (std::size_t n = 2; n <= std::min<std::size_t>(n_max, 64); ++n) {
        const auto q = position_operator(n);
        const auto p = momentum_operator(n);
        const auto q2 = q * q;
        const auto p2 = p * p;
        const auto h = hamiltonian(n);
        for (int s = 0; s < 20; ++s) {
            const double r = radius(rng), phi = angle(rng);
            const PhasePoint x = PhasePoint::from_z(std::polar(r, phi));
            const auto quad = quadratic_symbols(n, x);
            const double c = corrective_factor(n, r);
            worst = std::max({worst,
                              std::abs(lower_symbol(q, x) - c * x.q()),
                              std::abs(lower_symbol(p, x) - c * x.p()),
                              std::abs(lower_symbol(q2, x) - (quad.a + quad.b)),
                              std::abs(lower_symbol(p2, x) - (quad.a - quad.b)),
                              std::abs(lower_symbol(h, x) - quad.a)});
        }
    }
    return max_deviation_check("lower-symbols", worst, 1e-10);
}

CheckResult check_monomials(std::size_t n_max) {
    double worst = 0.0;
    for (std::size_t n = 1; n <= std::min<std::size_t>(n_max, 16); n *= 2) {
        const auto quad = QuadratureSpec::for_dim(n);
        for (unsigned a = 0; a <= 3; ++a)
            for (unsigned b = 0; b <= 3; ++b) {
                const auto f = [a, b](const PhasePoint& x) {
                    return std::pow(x.z(), a) * std::pow(std::conj(x.z()), b);
                };
                worst = std::max(worst, quantize_monomial(n, a, b).scaled_max_diff(quantize_quadrature(f, n, quad)));
            }
    }
    return max_deviation_check("monomial-quadrature", worst, 1e-10);
}

struct SpectralChecks {
    CheckResult symmetry;
    CheckResult hermite;
    CheckResult sturm;
    CheckResult interlacing;
    CheckResult gaps;
};

SpectralChecks check_spectra(std::size_t n_max, bool fault, std::mt19937_64& rng) {
    SpectralChecks out;
    double sym = 0.0, herm = 0.0;
    std::size_t sturm_mismatch = 0;
    double worst_interlace = std::numeric_limits<double>::infinity();
    double worst_gap = std::numeric_limits<double>::infinity();
    std::size_t first_bad_interlace = 0, first_bad_gap = 0;
    std::vector<double> prev = eig_all(spectral_matrix(1, fault));
    for (std::size_t n = 2; n <= n_max + 1; ++n) {
        const auto t = spectral_matrix(n, fault);
        std::vector<double> cur = eig_all(t);
        // prev has order n-1, cur order n
        const GapReport g = gap_properties(prev, cur);
        if (g.worst_interlace_margin < worst_interlace) worst_interlace = g.worst_interlace_margin;
        if (!g.interlacing_ok && first_bad_interlace == 0) first_bad_interlace = n - 1;
        if (g.worst_gap_margin < worst_gap) worst_gap = g.worst_gap_margin;
        if (!g.gaps_ok && first_bad_gap == 0) first_bad_gap = n - 1;
        if (n <= n_max) {
            for (std::size_t i = 0; i < n; ++i) {
                sym = std::max(sym, std::abs(cur[i] + cur[n - 1 - i]));
                herm = std::max(herm, hermite_residual(n, cur[i]));
            }
            std::uniform_real_distribution<double> thr(cur.front() - 0.5, cur.back() + 0.5);
            for (int s = 0; s < 10; ++s) {
                const double lam = thr(rng);
                const auto exact = static_cast<std::size_t>(
                    std::lower_bound(cur.begin(), cur.end(), lam) - cur.begin());
                if (sturm_count(t, lam) != exact) ++sturm_mismatch;
            }
        }
        prev = std::move(cur);
    }
    out.symmetry = max_deviation_check("spectrum-symmetry", sym, 1e-12);
    out.hermite = max_deviation_check("hermite-zeros", herm, 1e-8);
    out.sturm = {"sturm-qr", sturm_mismatch == 0, static_cast<double>(sturm_mismatch),
                 std::to_string(sturm_mismatch) + " count mismatches"};
    out.interlacing = {"interlacing", first_bad_interlace == 0, worst_interlace,
                       first_bad_interlace == 0 ? "strict"
                                                : "fails at N = " + std::to_string(first_bad_interlace)};
    out.gaps = {"gaps", first_bad_gap == 0, worst_gap,
                first_bad_gap == 0 ? "all gap inequalities hold"
                                   : "fails at N = " + std::to_string(first_bad_gap)};
    return out;
}

CheckResult check_sigma(std::size_t n_max) {
    double worst = -std::numeric_limits<double>::infinity();
    double last[2] = {0.0, 0.0};
    std::string detail = "sigma < 2 pi, increasing per parity";
    bool ok = true;
    for (std::size_t n = 2; n <= std::max<std::size_t>(n_max, 200); ++n) {
        const auto t = SymTridiagonal::position(n);
        const auto ext = extreme_eigenvalues(t);
        const auto s = make_summary(n, ext.lambda_min_pos, ext.lambda_max);
        worst = std::max(worst, s.sigma - two_pi);
        if (!(s.sigma < two_pi)) {
            ok = false;
            detail = "sigma >= 2 pi at N = " + std::to_string(n);
        }
        auto& prev = last[n % 2];
        if (n <= 200 && prev != 0.0 && !(s.sigma > prev)) {
            ok = false;
            detail = "sigma not increasing at N = " + std::to_string(n);
        }
        prev = s.sigma;
    }
    return {"sigma-bound", ok, worst, detail};
}

}  // namespace

bool VerifyReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> VerifyReport::failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.passed) out.push_back(c.name);
    return out;
}

VerifyReport run_verification(const VerifyOptions& opts) {
    if (opts.n_max_dense < 2) throw DomainError("n-max-dense must be >= 2");
    std::mt19937_64 rng(opts.seed);
    VerifyReport r;
    r.checks.push_back(check_commutator(opts.n_max_dense));
    r.checks.push_back(check_hamiltonian(opts.n_max_dense));
    r.checks.push_back(check_identity(opts.n_max_dense));
    r.checks.push_back(check_monomials(opts.n_max_dense));
    r.checks.push_back(check_sandwich(opts.n_max_dense, rng));
    auto spectral = check_spectra(opts.n_max_dense, opts.inject_fault, rng);
    r.checks.push_back(std::move(spectral.symmetry));
    r.checks.push_back(std::move(spectral.hermite));
    r.checks.push_back(std::move(spectral.sturm));
    r.checks.push_back(std::move(spectral.interlacing));
    r.checks.push_back(std::move(spectral.gaps));
    r.checks.push_back(check_sigma(opts.n_max_dense));
    return r;
}

}  // namespace fockq
