#include "fockq/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fockq/errors.hpp"
#include "fockq/parallel.hpp"

namespace fockq {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
std::atomic<std::size_t> g_full_spectrum_cap{20000};

double gershgorin_upper(const SymTridiagonal& t) {
    const std::size_t n = t.dim();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const double left = k > 0 ? std::abs(t.offdiag[k - 1]) : 0.0;
        const double right = k + 1 < n ? std::abs(t.offdiag[k]) : 0.0;
        hi = std::max(hi, t.diag[k] + left + right);
    }
    return hi;
}

double gershgorin_lower(const SymTridiagonal& t) {
    const std::size_t n = t.dim();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const double left = k > 0 ? std::abs(t.offdiag[k - 1]) : 0.0;
        const double right = k + 1 < n ? std::abs(t.offdiag[k]) : 0.0;
        lo = std::min(lo, t.diag[k] - left - right);
    }
    return lo;
}

void require_shape(const SymTridiagonal& t) {
    if (t.dim() < 1) throw DomainError("tridiagonal matrix must have dimension >= 1");
    if (t.offdiag.size() + 1 != t.dim())
        throw DimensionMismatch("offdiag must have exactly N-1 entries");
}

// Bisection on [lo, hi] with sturm_count(lo) <= index < sturm_count(hi).
double bisect(const SymTridiagonal& t, std::size_t index, double lo, double hi, double rel_tol) {
    for (int it = 0; it < 256; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(t, mid) > index)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

SymTridiagonal SymTridiagonal::position(std::size_t n_dim) {
    if (n_dim < 1) throw DomainError("dimension must be >= 1");
    SymTridiagonal t;
    t.diag.assign(n_dim, 0.0);
    t.offdiag.resize(n_dim - 1);
    for (std::size_t k = 1; k < n_dim; ++k) t.offdiag[k - 1] = std::sqrt(0.5 * static_cast<double>(k));
    return t;
}

bool SymTridiagonal::unreduced() const noexcept {
    return std::all_of(offdiag.begin(), offdiag.end(), [](double e) { return e > 0.0; });
}

double CharPolyValue::value() const noexcept {
    return std::ldexp(value_mantissa, static_cast<int>(std::clamp(exponent, -100000L, 100000L)));
}

double CharPolyValue::derivative() const noexcept {
    return std::ldexp(derivative_mantissa,
                      static_cast<int>(std::clamp(exponent, -100000L, 100000L)));
}

CharPolyValue char_poly_recurrence(std::size_t n_dim, double lambda) {
    if (n_dim == 0) return {1.0, 0.0, 0};
    // (prev, cur) = (p_{k-1}, p_k) and their derivatives
    double prev = 1.0, cur = -lambda;
    double dprev = 0.0, dcur = -1.0;
    long exponent = 0;
    for (std::size_t k = 1; k < n_dim; ++k) {
        const double half_k = 0.5 * static_cast<double>(k);
        const double next = -lambda * cur - half_k * prev;
        const double dnext = -cur - lambda * dcur - half_k * dprev;
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
        const double big = std::max({std::abs(cur), std::abs(prev), std::abs(dcur), std::abs(dprev)});
        if (big > 0x1p+200 || (big < 0x1p-200 && big > 0.0)) {
            int e = 0;
            std::frexp(big, &e);
            prev = std::ldexp(prev, -e);
            cur = std::ldexp(cur, -e);
            dprev = std::ldexp(dprev, -e);
            dcur = std::ldexp(dcur, -e);
            exponent += e;
        }
    }
    return {cur, dcur, exponent};
}

CharPolyValue hermite_value(std::size_t n_dim, double lambda) {
    CharPolyValue v = char_poly_recurrence(n_dim, lambda);
    if (n_dim % 2 == 1) {
        v.value_mantissa = -v.value_mantissa;
        v.derivative_mantissa = -v.derivative_mantissa;
    }
    v.exponent += static_cast<long>(n_dim);
    return v;
}

double hermite_residual(std::size_t n_dim, double lambda) {
    if (n_dim < 1) throw DomainError("dimension must be >= 1");
    const CharPolyValue v = char_poly_recurrence(n_dim, lambda);
    if (v.value_mantissa == 0.0) return 0.0;
    return std::abs(v.value_mantissa / v.derivative_mantissa) /
           std::sqrt(2.0 * static_cast<double>(n_dim));
}

std::size_t full_spectrum_cap() noexcept { return g_full_spectrum_cap.load(std::memory_order_relaxed); }
void set_full_spectrum_cap(std::size_t cap) noexcept {
    g_full_spectrum_cap.store(cap, std::memory_order_relaxed);
}

std::vector<double> eig_all(const SymTridiagonal& t) {
    require_shape(t);
    const std::size_t n = t.dim();
    if (n > full_spectrum_cap())
        throw DomainError("dimension " + std::to_string(n) + " exceeds the full-spectrum cap " +
                          std::to_string(full_spectrum_cap()) + "; use bisection");
    std::vector<double> d = t.diag;
    std::vector<double> e(n, 0.0);
    std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();
    const std::size_t limit = 30 * std::max<std::size_t>(n, 1);
    std::size_t steps = 0;

    for (std::size_t l = 0; l < n; ++l) {
        for (;;) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= tiny) break;
            }
            if (m == l) break;
            if (++steps > limit)
                throw ConvergenceError("QL iteration did not converge within " +
                                       std::to_string(limit) + " implicit steps");
            // shift from the leading 2x2 block
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::sqrt(g * g + 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool early = false;
            for (std::size_t i = m; i-- > l;) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::sqrt(f * f + g * g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (early) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::size_t sturm_count(const SymTridiagonal& t, double lambda) {
    require_shape(t);
    const std::size_t n = t.dim();
    double max_e2 = 1.0;
    for (double e : t.offdiag) max_e2 = std::max(max_e2, e * e);
    const double pivmin = std::numeric_limits<double>::min() * max_e2;
    std::size_t count = 0;
    double d = t.diag[0] - lambda;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
    for (std::size_t k = 1; k < n; ++k) {
        const double e = t.offdiag[k - 1];
        d = (t.diag[k] - lambda) - e * e / d;
        if (std::abs(d) < pivmin) d = -pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

double kth_eigenvalue(const SymTridiagonal& t, std::size_t index, double rel_tol) {
    require_shape(t);
    if (index >= t.dim()) throw DomainError("eigenvalue index out of range");
    const double lo0 = gershgorin_lower(t);
    const double hi0 = gershgorin_upper(t);
    const double pad = 1e-12 * std::max({1.0, std::abs(lo0), std::abs(hi0)});
    return bisect(t, index, lo0 - pad, hi0 + pad, rel_tol);
}

ExtremeEigenvalues extreme_eigenvalues(const SymTridiagonal& t, double rel_tol) {
    require_shape(t);
    const std::size_t n = t.dim();
    if (n < 2) throw DomainError("extreme positive eigenvalues need N >= 2");
    if (!(rel_tol > 0.0)) throw DomainError("tolerance must be positive");
    if (std::any_of(t.diag.begin(), t.diag.end(), [](double v) { return v != 0.0; }))
        throw DomainError("extreme_eigenvalues requires a zero diagonal");

    const double top = std::max(std::sqrt(2.0 * static_cast<double>(n)) + 2.0, gershgorin_upper(t));
    const std::size_t count_lo = sturm_count(t, 0.0);
    const std::size_t count_hi = sturm_count(t, top);
    const std::size_t max_index = n - 1;
    const std::size_t min_pos_index = (n + 1) / 2;
    if (count_hi != n || count_lo > min_pos_index)
        throw ConvergenceError("bisection bracket [0, " + std::to_string(top) +
                               "] invalid: counts " + std::to_string(count_lo) + " and " +
                               std::to_string(count_hi) + " for N = " + std::to_string(n));
    ExtremeEigenvalues out;
    out.lambda_max = bisect(t, max_index, 0.0, top, rel_tol);
    out.lambda_min_pos = bisect(t, min_pos_index, 0.0, top, rel_tol);
    return out;
}

std::string_view to_string(Parity p) noexcept { return p == Parity::Even ? "even" : "odd"; }

SpectrumSummary make_summary(std::size_t n_dim, double lambda_min_pos, double lambda_max) {
    SpectrumSummary s;
    s.dim = n_dim;
    s.lambda_min_pos = lambda_min_pos;
    s.lambda_max = lambda_max;
    s.parity = n_dim % 2 == 0 ? Parity::Even : Parity::Odd;
    s.delta = s.parity == Parity::Odd ? lambda_min_pos : 2.0 * lambda_min_pos;
    s.width = 2.0 * lambda_max;
    s.sigma = s.delta * s.width;
    return s;
}

SpectrumSummary spectrum_summary(std::size_t n_dim, double rel_tol) {
    if (n_dim < 2) throw DomainError("spectrum summary needs N >= 2 (no positive eigenvalue)");
    const auto ext = extreme_eigenvalues(SymTridiagonal::position(n_dim), rel_tol);
    const SpectrumSummary s = make_summary(n_dim, ext.lambda_min_pos, ext.lambda_max);
    if (!(s.sigma < two_pi))
        throw InvariantViolation("sigma_N = " + std::to_string(s.sigma) + " >= 2 pi at N = " +
                                 std::to_string(n_dim));
    return s;
}

std::vector<SpectrumSummary> sigma_table(std::span<const std::size_t> dims, double rel_tol,
                                         std::size_t threads) {
    std::vector<SpectrumSummary> out(dims.size());
    parallel_for(dims.size(), threads == 0 ? default_threads() : threads,
                 [&](std::size_t i) { out[i] = spectrum_summary(dims[i], rel_tol); });
    return out;
}

GapReport gap_properties(std::span<const double> spectrum_n, std::span<const double> spectrum_n1) {
    const std::size_t n = spectrum_n.size();
    if (n < 1 || spectrum_n1.size() != n + 1)
        throw DimensionMismatch("gap_properties needs spectra of orders N and N+1");
    GapReport r;
    r.dim = n;
    r.worst_gap_margin = std::numeric_limits<double>::infinity();
    // positive zeros are the upper half of a spectrum symmetric about 0
    const std::size_t first_pos = (n + 1) / 2;
    if (first_pos + 1 < n) {
        const double lambda1 = spectrum_n[first_pos];
        const double factor = n % 2 == 1 ? 1.0 : 2.0;
        for (std::size_t i = first_pos; i + 1 < n; ++i) {
            const double margin = (spectrum_n[i + 1] - spectrum_n[i]) - factor * lambda1;
            r.worst_gap_margin = std::min(r.worst_gap_margin, margin);
        }
        r.gaps_ok = r.worst_gap_margin > 0.0;
    }
    r.worst_interlace_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double margin = std::min(spectrum_n[i] - spectrum_n1[i], spectrum_n1[i + 1] - spectrum_n[i]);
        r.worst_interlace_margin = std::min(r.worst_interlace_margin, margin);
    }
    r.interlacing_ok = r.worst_interlace_margin > 0.0;
    return r;
}

GapReport gap_properties(std::size_t n_dim) {
    if (n_dim < 1) throw DomainError("dimension must be >= 1");
    const auto a = eig_all(SymTridiagonal::position(n_dim));
    const auto b = eig_all(SymTridiagonal::position(n_dim + 1));
    return gap_properties(a, b);
}

SemicircleCount semicircle_density(std::size_t n_dim, double x1, double x2) {
    if (n_dim < 1) throw DomainError("dimension must be >= 1");
    if (!std::isfinite(x1) || !std::isfinite(x2) || !(x1 < x2))
        throw DomainError("semicircle interval needs finite x1 < x2");
    const double r2 = 2.0 * static_cast<double>(n_dim);
    const double r = std::sqrt(r2);
    SemicircleCount out;
    if (x1 < -r || x2 > r) out.clipped = true;
    const double a = std::clamp(x1, -r, r);
    const double b = std::clamp(x2, -r, r);
    // antiderivative of sqrt(R^2 - t^2)
    const auto prim = [&](double t) {
        return 0.5 * (t * std::sqrt(std::max(0.0, r2 - t * t)) + r2 * std::asin(std::clamp(t / r, -1.0, 1.0)));
    };
    out.predicted = (prim(b) - prim(a)) / std::numbers::pi;
    return out;
}

SemicircleComparison semicircle_compare(std::size_t n_dim, double x1, double x2) {
    const SemicircleCount pred = semicircle_density(n_dim, x1, x2);
    const SymTridiagonal t = SymTridiagonal::position(n_dim);
    SemicircleComparison c;
    c.predicted = pred.predicted;
    c.exact = sturm_count(t, x2) - sturm_count(t, x1);
    c.relative_deviation =
        std::abs(c.predicted - static_cast<double>(c.exact)) / std::max<double>(1.0, static_cast<double>(c.exact));
    return c;
}

AsymptoticReport asymptotic_check(std::size_t n_dim, double rel_tol) {
    if (n_dim < 100) throw DomainError("asymptotic check needs N >= 100");
    const SpectrumSummary s = spectrum_summary(n_dim, rel_tol);
    const double root = std::sqrt(2.0 * static_cast<double>(n_dim));
    AsymptoticReport r;
    r.dim = n_dim;
    r.max_ratio = s.lambda_max / root;
    r.min_ratio = (s.parity == Parity::Odd ? 1.0 : 2.0) * s.lambda_min_pos * root / std::numbers::pi;
    r.sigma_ratio = s.sigma / two_pi;
    return r;
}

}  // namespace fockq
