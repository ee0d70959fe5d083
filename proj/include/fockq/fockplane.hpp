#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fockq {

using cdouble = std::complex<double>;

/// Point z = (q + i p)/sqrt(2) of the dimensionless phase plane.
class PhasePoint {
public:
    PhasePoint() = default;
    PhasePoint(double q, double p);

    static PhasePoint from_z(cdouble z);

    double q() const noexcept { return q_; }
    double p() const noexcept { return p_; }
    cdouble z() const noexcept;
    /// |z|^2 = (q^2 + p^2)/2
    double abs2() const noexcept { return 0.5 * (q_ * q_ + p_ * p_); }

private:
    double q_ = 0.0;
    double p_ = 0.0;
};

/// Truncation level N of the Fock space together with per-N tables.
class FrameConfig {
public:
    explicit FrameConfig(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    /// 1/sqrt(n) for n = 1..N-1; entry 0 is 1.
    std::span<const double> inv_sqrt_index() const noexcept { return inv_sqrt_index_; }
    /// log(n!)/2 for n = 0..N-1.
    std::span<const double> half_log_factorial() const noexcept { return half_log_factorial_; }

private:
    std::size_t dim_;
    std::vector<double> inv_sqrt_index_;
    std::vector<double> half_log_factorial_;
};

struct CoherentState {
    /// coeffs[n] = z^n / sqrt(n! N(|z|^2))
    std::vector<cdouble> coeffs;
    PhasePoint source;

    std::size_t dim() const noexcept { return coeffs.size(); }
};

/// Coherent state stored as log|c_n| and arg c_n, usable far past the
/// double-precision overflow of N(|z|^2).
struct LogCoherentState {
    std::vector<double> log_magnitude;
    std::vector<double> phase;
    double log_normalization = 0.0;
    PhasePoint source;
};

/// Polar product rule on the plane: `radial` Gauss-Laguerre nodes in t = |z|^2
/// times `angular` equispaced angles.
struct QuadratureSpec {
    std::size_t radial = 0;
    std::size_t angular = 0;

    /// M = N + 4, K = 4N + 4; exact for every matrix element of an N-level frame.
    static QuadratureSpec for_dim(std::size_t n_dim);
};

/// Partial exponential sum sum_{n<N} r2^n/n!. Throws RangeError when the sum overflows.
double normalization_factor(std::size_t n_dim, double r2);

/// log of the partial exponential sum, valid for any finite r2 >= 0.
double log_normalization_factor(std::size_t n_dim, double r2);

CoherentState coherent_state(const FrameConfig& cfg, const PhasePoint& x);
LogCoherentState coherent_state_log(const FrameConfig& cfg, const PhasePoint& x);

/// <a|b> = sum_n conj(a_n) b_n
cdouble overlap(const CoherentState& a, const CoherentState& b);

/// Finite-N reproducing kernel K(z, z') = sum_{n<N} (conj(z) z')^n / n!.
cdouble reproducing_kernel(const FrameConfig& cfg, const PhasePoint& x, const PhasePoint& y);

/// Evaluates (1/pi) int |z><z| N(|z|^2) e^{-|z|^2} d^2z by quadrature and returns
/// max |result - I_N|. Throws QuadratureError (with the exact orders needed) if
/// the deviation exceeds `tolerance`.
double verify_identity_resolution(const FrameConfig& cfg, const QuadratureSpec& quad,
                                  double tolerance = 1e-10);

}  // namespace fockq
