#include "fockq/symbols.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "fockq/errors.hpp"
#include "fockq/parallel.hpp"

namespace fockq {

namespace {

constexpr double variance_clamp = 1e-14;

// Partial sums of x^j/j! expressed relative to the largest term, so the
// closed-form ratios never overflow.
struct ScaledSums {
    double all = 0.0;       // j < N
    double drop1 = 0.0;     // j < N-1
    double drop2 = 0.0;     // j < N-2
    double energy = 0.0;    // sum x^j/j! * (2j+1 - N delta_{j,N-1})/2
};

ScaledSums scaled_sums(std::size_t n_dim, double x) {
    if (n_dim < 1) throw DomainError("dimension must be >= 1");
    if (!std::isfinite(x) || x < 0.0) throw DomainError("|z|^2 must be finite and >= 0");
    std::vector<double> rel(n_dim, 0.0);
    const auto peak = static_cast<std::size_t>(
        std::min(static_cast<double>(n_dim - 1), std::floor(x)));
    rel[peak] = 1.0;
    for (std::size_t j = peak; j > 0; --j) rel[j - 1] = rel[j] * static_cast<double>(j) / x;
    for (std::size_t j = peak + 1; j < n_dim; ++j) rel[j] = rel[j - 1] * x / static_cast<double>(j);

    ScaledSums s;
    for (std::size_t j = 0; j < n_dim; ++j) {
        s.all += rel[j];
        if (j + 1 < n_dim) s.drop1 += rel[j];
        if (j + 2 < n_dim) s.drop2 += rel[j];
        const double level = (j + 1 < n_dim) ? 0.5 * static_cast<double>(2 * j + 1)
                                             : 0.5 * static_cast<double>(n_dim - 1);
        s.energy += rel[j] * level;
    }
    return s;
}

double clamp_variance(double v, double scale) {
    if (v >= 0.0) return v;
    if (v >= -variance_clamp * std::max(1.0, scale)) return 0.0;
    throw RangeError("negative variance " + std::to_string(v) + " (precision loss)");
}

}  // namespace

cdouble lower_symbol(const OperatorMatrix& op, const PhasePoint& x) {
    const FrameConfig cfg(op.dim());
    const CoherentState s = coherent_state(cfg, x);
    const Eigen::Map<const Eigen::VectorXcd> c(s.coeffs.data(),
                                               static_cast<Eigen::Index>(s.coeffs.size()));
    return c.dot(op.entries() * c);  // dot() conjugates the left operand
}

double corrective_factor(std::size_t n_dim, double r) {
    if (!std::isfinite(r) || r < 0.0) throw DomainError("|z| must be finite and >= 0");
    const ScaledSums s = scaled_sums(n_dim, r * r);
    return s.drop1 / s.all;
}

QuadraticSymbols quadratic_symbols(std::size_t n_dim, const PhasePoint& x) {
    const ScaledSums s = scaled_sums(n_dim, x.abs2());
    const cdouble z = x.z();
    const double re_z2 = (z * z).real();  // (z^2 + conj(z)^2)/2
    return {s.energy / s.all, re_z2 * s.drop2 / s.all};
}

double uncertainty_product(std::size_t n_dim, const PhasePoint& x) {
    const ScaledSums s = scaled_sums(n_dim, x.abs2());
    const double c = s.drop1 / s.all;
    const double a = s.energy / s.all;
    const cdouble z = x.z();
    const double b = (z * z).real() * s.drop2 / s.all;
    const double mean_q = c * x.q();
    const double mean_p = c * x.p();
    const double var_q = clamp_variance(a + b - mean_q * mean_q, a + std::abs(b));
    const double var_p = clamp_variance(a - b - mean_p * mean_p, a + std::abs(b));
    return std::sqrt(var_q) * std::sqrt(var_p);
}

SymbolKind parse_symbol_kind(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    if (upper == "Q2") return SymbolKind::Q2;
    if (upper == "P2") return SymbolKind::P2;
    if (upper == "H") return SymbolKind::H;
    if (upper == "UNCERTAINTY") return SymbolKind::Uncertainty;
    if (upper == "C") return SymbolKind::C;
    throw DomainError("unknown symbol kind '" + std::string(name) +
                      "' (expected Q2, P2, H, UNCERTAINTY or C)");
}

std::string_view to_string(SymbolKind kind) noexcept {
    switch (kind) {
        case SymbolKind::Q2: return "Q2";
        case SymbolKind::P2: return "P2";
        case SymbolKind::H: return "H";
        case SymbolKind::Uncertainty: return "UNCERTAINTY";
        case SymbolKind::C: return "C";
    }
    return "?";
}

double symbol_value(SymbolKind kind, std::size_t n_dim, const PhasePoint& x) {
    switch (kind) {
        case SymbolKind::Q2: {
            const auto s = quadratic_symbols(n_dim, x);
            return s.a + s.b;
        }
        case SymbolKind::P2: {
            const auto s = quadratic_symbols(n_dim, x);
            return s.a - s.b;
        }
        case SymbolKind::H: return quadratic_symbols(n_dim, x).a;
        case SymbolKind::Uncertainty: return uncertainty_product(n_dim, x);
        case SymbolKind::C: return corrective_factor(n_dim, std::sqrt(x.abs2()));
    }
    throw DomainError("unknown symbol kind");
}

double GridAxis::at(std::size_t i) const noexcept {
    if (i + 1 == steps) return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void GridAxis::validate(std::string_view name) const {
    if (steps < 2) throw DomainError(std::string(name) + " axis needs at least 2 steps");
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
        throw DomainError(std::string(name) + " axis needs finite min < max");
}

SymbolGrid symbol_grid(std::size_t n_dim, SymbolKind kind, const GridAxis& q_axis,
                       const GridAxis& p_axis, std::size_t threads) {
    if (n_dim < 1) throw DomainError("dimension must be >= 1");
    q_axis.validate("q");
    p_axis.validate("p");
    SymbolGrid grid{n_dim, kind, q_axis, p_axis,
                    std::vector<double>(q_axis.steps * p_axis.steps)};
    parallel_for(q_axis.steps, threads == 0 ? default_threads() : threads, [&](std::size_t iq) {
        for (std::size_t ip = 0; ip < p_axis.steps; ++ip)
            grid.values[iq * p_axis.steps + ip] =
                symbol_value(kind, n_dim, PhasePoint(q_axis.at(iq), p_axis.at(ip)));
    });
    return grid;
}

}  // namespace fockq
