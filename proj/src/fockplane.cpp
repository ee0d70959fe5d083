#include "fockq/fockplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "fockq/errors.hpp"
#include "fockq/quadrature.hpp"

namespace fockq {

namespace {

void require_dim(std::size_t n_dim) {
    if (n_dim < 1) throw DomainError("dimension must be >= 1");
}

void require_r2(double r2) {
    if (!std::isfinite(r2) || r2 < 0.0) throw DomainError("|z|^2 must be finite and >= 0");
}

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

PhasePoint::PhasePoint(double q, double p) : q_(q), p_(p) {
    if (!std::isfinite(q) || !std::isfinite(p))
        throw DomainError("phase point coordinates must be finite");
}

PhasePoint PhasePoint::from_z(cdouble z) {
    return {std::numbers::sqrt2 * z.real(), std::numbers::sqrt2 * z.imag()};
}

cdouble PhasePoint::z() const noexcept {
    constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    return {q_ * inv_sqrt2, p_ * inv_sqrt2};
}

FrameConfig::FrameConfig(std::size_t dim) : dim_(dim) {
    require_dim(dim);
    inv_sqrt_index_.resize(dim);
    half_log_factorial_.resize(dim);
    inv_sqrt_index_[0] = 1.0;
    half_log_factorial_[0] = 0.0;
    for (std::size_t n = 1; n < dim; ++n) {
        inv_sqrt_index_[n] = 1.0 / std::sqrt(static_cast<double>(n));
        half_log_factorial_[n] = 0.5 * std::lgamma(static_cast<double>(n) + 1.0);
    }
}

QuadratureSpec QuadratureSpec::for_dim(std::size_t n_dim) {
    return {n_dim + 4, 4 * n_dim + 4};
}

double normalization_factor(std::size_t n_dim, double r2) {
    require_dim(n_dim);
    require_r2(r2);
    CompensatedSum acc;
    acc.add(1.0);
    double term = 1.0;
    for (std::size_t n = 1; n < n_dim; ++n) {
        term *= r2 / static_cast<double>(n);
        if (!std::isfinite(term)) break;  // the sum overflows too
        acc.add(term);
        // Past the peak the terms shrink at least geometrically.
        if (static_cast<double>(n) > 2.0 * r2 && term <= acc.sum * 1e-18) break;
    }
    const double v = acc.value();
    if (!std::isfinite(v) || !std::isfinite(term))
        throw RangeError("normalization factor overflows at |z|^2 = " + std::to_string(r2) +
                         "; use the log-domain variant");
    return v;
}

double log_normalization_factor(std::size_t n_dim, double r2) {
    require_dim(n_dim);
    require_r2(r2);
    if (r2 == 0.0 || n_dim == 1) return 0.0;
    const double log_r2 = std::log(r2);
    // log of the largest term, attained at n = min(N-1, floor(r2))
    const auto peak = static_cast<std::size_t>(
        std::min(static_cast<double>(n_dim - 1), std::floor(r2)));
    const double log_peak =
        static_cast<double>(peak) * log_r2 - std::lgamma(static_cast<double>(peak) + 1.0);
    CompensatedSum acc;
    acc.add(1.0);
    // walk down from the peak, then up
    double rel = 1.0;
    for (std::size_t n = peak; n > 0; --n) {
        rel *= static_cast<double>(n) / r2;
        acc.add(rel);
        if (rel < 1e-18) break;
    }
    rel = 1.0;
    for (std::size_t n = peak + 1; n < n_dim; ++n) {
        rel *= r2 / static_cast<double>(n);
        acc.add(rel);
        if (rel < 1e-18) break;
    }
    return log_peak + std::log(acc.value());
}

CoherentState coherent_state(const FrameConfig& cfg, const PhasePoint& x) {
    const double norm = normalization_factor(cfg.dim(), x.abs2());
    const cdouble z = x.z();
    const auto inv_sqrt = cfg.inv_sqrt_index();
    CoherentState s{std::vector<cdouble>(cfg.dim()), x};
    s.coeffs[0] = 1.0 / std::sqrt(norm);
    for (std::size_t n = 1; n < cfg.dim(); ++n) s.coeffs[n] = s.coeffs[n - 1] * z * inv_sqrt[n];
    return s;
}

LogCoherentState coherent_state_log(const FrameConfig& cfg, const PhasePoint& x) {
    LogCoherentState s;
    s.source = x;
    s.log_normalization = log_normalization_factor(cfg.dim(), x.abs2());
    s.log_magnitude.resize(cfg.dim());
    s.phase.resize(cfg.dim());
    const cdouble z = x.z();
    const double log_abs = std::log(std::abs(z));  // -inf at the origin
    const double arg = std::arg(z);
    const auto half_lf = cfg.half_log_factorial();
    s.log_magnitude[0] = -0.5 * s.log_normalization;
    s.phase[0] = 0.0;
    for (std::size_t n = 1; n < cfg.dim(); ++n) {
        const double nn = static_cast<double>(n);
        s.log_magnitude[n] = nn * log_abs - half_lf[n] - 0.5 * s.log_normalization;
        s.phase[n] = std::remainder(nn * arg, 2.0 * std::numbers::pi);
    }
    return s;
}

cdouble overlap(const CoherentState& a, const CoherentState& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("overlap of states with dimensions " + std::to_string(a.dim()) +
                                " and " + std::to_string(b.dim()));
    double re = 0.0;
    double im = 0.0;
    for (std::size_t n = 0; n < a.dim(); ++n) {
        const double ar = a.coeffs[n].real(), ai = a.coeffs[n].imag();
        const double br = b.coeffs[n].real(), bi = b.coeffs[n].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

cdouble reproducing_kernel(const FrameConfig& cfg, const PhasePoint& x, const PhasePoint& y) {
    const cdouble w = std::conj(x.z()) * y.z();
    cdouble term = 1.0;
    cdouble sum = 1.0;
    for (std::size_t n = 1; n < cfg.dim(); ++n) {
        term *= w / static_cast<double>(n);
        sum += term;
    }
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
        throw RangeError("reproducing kernel overflows");
    return sum;
}

double verify_identity_resolution(const FrameConfig& cfg, const QuadratureSpec& quad,
                                  double tolerance) {
    const std::size_t n = cfg.dim();
    using LMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
    using LVector = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, 1>;
    LMatrix acc = LMatrix::Zero(n, n);
    LVector u(n);
    for (const auto& node : plane_nodes(quad)) {
        u(0) = 1.0L;
        for (std::size_t k = 1; k < n; ++k)
            u(k) = u(k - 1) * node.z / std::sqrt(static_cast<long double>(k));
        acc.noalias() += node.weight * (u * u.adjoint());
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            const std::complex<long double> expected = (k == l) ? 1.0L : 0.0L;
            worst = std::max(worst, static_cast<double>(std::abs(acc(k, l) - expected)));
        }
    if (!(worst <= tolerance)) {
        // radial degree N-1 in t needs M >= ceil(N/2); angular modes |k-l| <= N-1 need K >= N
        const std::size_t need_m = (n + 1) / 2;
        const std::size_t need_k = n;
        throw QuadratureError("identity resolution deviates by " + std::to_string(worst) +
                                  " (radial order " + std::to_string(quad.radial) +
                                  ", angular order " + std::to_string(quad.angular) +
                                  "); exactness requires radial >= " + std::to_string(need_m) +
                                  " and angular >= " + std::to_string(need_k),
                              need_m, need_k);
    }
    return worst;
}

}  // namespace fockq
