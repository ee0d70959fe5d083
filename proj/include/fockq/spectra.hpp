#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fockq/tridiagonal.hpp"

namespace fockq {

/// Value of the characteristic polynomial p_N(lambda) = det(Q_N - lambda I)
/// and its derivative, both equal to mantissa * 2^exponent.
struct CharPolyValue {
    double value_mantissa = 1.0;
    double derivative_mantissa = 0.0;
    long exponent = 0;

    double value() const noexcept;
    double derivative() const noexcept;
};

/// Evaluates p_{k+1} = -lambda p_k - (k/2) p_{k-1}, p_0 = 1, p_1 = -lambda,
/// rescaling by powers of two so no intermediate under- or overflows.
CharPolyValue char_poly_recurrence(std::size_t n_dim, double lambda);

/// Physicists' Hermite polynomial H_N(lambda) = (-2)^N p_N(lambda).
CharPolyValue hermite_value(std::size_t n_dim, double lambda);

/// |p_N / p_N'| / sqrt(2N): the Newton correction at lambda relative to the
/// spectral half-width. Zero at an exact zero of H_N.
double hermite_residual(std::size_t n_dim, double lambda);

/// Largest N accepted by eig_all (default 20000).
std::size_t full_spectrum_cap() noexcept;
void set_full_spectrum_cap(std::size_t cap) noexcept;

/// All eigenvalues, ascending, by implicit-shift QL with Wilkinson-type shifts.
std::vector<double> eig_all(const SymTridiagonal& t);

/// Number of eigenvalues below lambda (an eigenvalue exactly at lambda may be
/// counted either way).
std::size_t sturm_count(const SymTridiagonal& t, double lambda);

/// Eigenvalue with 0-based ascending index `index`, by Sturm bisection.
double kth_eigenvalue(const SymTridiagonal& t, std::size_t index, double rel_tol = 1e-13);

struct ExtremeEigenvalues {
    double lambda_min_pos = 0.0;  ///< smallest positive eigenvalue
    double lambda_max = 0.0;      ///< largest eigenvalue
};

/// Requires a zero diagonal (spectrum symmetric about 0) and N >= 2.
ExtremeEigenvalues extreme_eigenvalues(const SymTridiagonal& t, double rel_tol = 1e-13);

enum class Parity { Even, Odd };
std::string_view to_string(Parity p) noexcept;

struct SpectrumSummary {
    std::size_t dim = 0;
    double lambda_min_pos = 0.0;
    double lambda_max = 0.0;
    double delta = 0.0;  ///< lambda_m (odd N) or 2 lambda_m (even N)
    double width = 0.0;  ///< 2 lambda_M
    double sigma = 0.0;  ///< delta * width
    Parity parity = Parity::Even;
};

SpectrumSummary make_summary(std::size_t n_dim, double lambda_min_pos, double lambda_max);

/// Summary of Q_N via bisection. Throws InvariantViolation if sigma >= 2 pi.
SpectrumSummary spectrum_summary(std::size_t n_dim, double rel_tol = 1e-13);

/// Batch spectrum_summary; output order follows `dims`.
std::vector<SpectrumSummary> sigma_table(std::span<const std::size_t> dims,
                                         double rel_tol = 1e-13, std::size_t threads = 0);

struct GapReport {
    std::size_t dim = 0;
    bool gaps_ok = true;
    /// min over i of (lambda_{i+1} - lambda_i) - c lambda_1, c = 1 (odd) or 2 (even)
    double worst_gap_margin = 0.0;
    bool interlacing_ok = true;
    /// min distance between an eigenvalue of order N and its neighbours of order N+1
    double worst_interlace_margin = 0.0;

    bool ok() const noexcept { return gaps_ok && interlacing_ok; }
};

/// Checks gaps between consecutive positive eigenvalues of order N and strict
/// interlacing with order N+1, given both sorted spectra.
GapReport gap_properties(std::span<const double> spectrum_n, std::span<const double> spectrum_n1);
GapReport gap_properties(std::size_t n_dim);

struct SemicircleCount {
    double predicted = 0.0;
    bool clipped = false;  ///< interval extended past [-sqrt(2N), sqrt(2N)]
};

/// N int_{x1}^{x2} w(t) dt with w(t) = sqrt(2N - t^2)/(pi N).
SemicircleCount semicircle_density(std::size_t n_dim, double x1, double x2);

struct SemicircleComparison {
    double predicted = 0.0;
    std::size_t exact = 0;
    double relative_deviation = 0.0;
};

SemicircleComparison semicircle_compare(std::size_t n_dim, double x1, double x2);

struct AsymptoticReport {
    std::size_t dim = 0;
    double max_ratio = 0.0;    ///< lambda_M / sqrt(2N)
    double min_ratio = 0.0;    ///< lambda_m sqrt(2N)/pi (odd) or 2 lambda_m sqrt(2N)/pi (even)
    double sigma_ratio = 0.0;  ///< sigma_N / (2 pi)
};

AsymptoticReport asymptotic_check(std::size_t n_dim, double rel_tol = 1e-13);

}  // namespace fockq
