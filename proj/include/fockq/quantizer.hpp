#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <utility>

#include <Eigen/Dense>

#include "fockq/fockplane.hpp"
#include "fockq/tridiagonal.hpp"

namespace fockq {

/// f(z, conj z) = sum c * z^a * conj(z)^b. Terms are keyed by (a, b); adding a
/// term with an existing key merges coefficients.
class PolynomialSymbol {
public:
    using Key = std::pair<unsigned, unsigned>;

    PolynomialSymbol() = default;

    PolynomialSymbol& add(unsigned a, unsigned b, cdouble c);

    const std::map<Key, cdouble>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    cdouble evaluate(const PhasePoint& x) const;

    /// q = (z + conj z)/sqrt(2)
    static PolynomialSymbol position();
    /// p = (z - conj z)/(i sqrt(2))
    static PolynomialSymbol momentum();

private:
    std::map<Key, cdouble> terms_;
};

/// Real-valued iff every (a, b, c) is matched by (b, a, conj c).
bool is_real_symbol(const PolynomialSymbol& sym, double tol = 1e-14);

using ComplexMatrix = Eigen::MatrixXcd;

/// Dense N x N matrix over the Fock basis |0>, ..., |N-1>.
class OperatorMatrix {
public:
    static constexpr double hermitian_tolerance = 1e-12;

    explicit OperatorMatrix(ComplexMatrix entries);

    static OperatorMatrix zero(std::size_t n_dim);
    static OperatorMatrix identity(std::size_t n_dim);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    const ComplexMatrix& entries() const noexcept { return entries_; }
    cdouble operator()(std::size_t k, std::size_t l) const { return entries_(k, l); }
    bool hermitian() const noexcept { return hermitian_; }

    /// max_{k,l} |A(k,l) - B(k,l)|
    double max_abs_diff(const OperatorMatrix& other) const;
    /// max_abs_diff / max(1, max_{k,l} |A(k,l)|): entries of size 2^m carry
    /// absolute rounding of order 2^(m-53).
    double scaled_max_diff(const OperatorMatrix& other) const;

    OperatorMatrix operator+(const OperatorMatrix& rhs) const;
    OperatorMatrix operator-(const OperatorMatrix& rhs) const;
    OperatorMatrix operator*(const OperatorMatrix& rhs) const;
    OperatorMatrix operator*(cdouble s) const;

private:
    ComplexMatrix entries_;
    bool hermitian_ = false;
};

/// Largest N for which dense operators are built (default 4096).
std::size_t dense_cap() noexcept;
void set_dense_cap(std::size_t cap) noexcept;

/// Closed-form quantization of z^a conj(z)^b:
/// entry (k, l) = delta_{k+a, l+b} (k+a)! / sqrt(k! l!).
OperatorMatrix quantize_monomial(std::size_t n_dim, unsigned a, unsigned b);

OperatorMatrix quantize(const PolynomialSymbol& sym, std::size_t n_dim);

using PhaseFunction = std::function<cdouble(const PhasePoint&)>;

/// Numerical quantization by the polar product rule. Entry (k, l) is
/// sum_i w_i f(z_i) z_i^k conj(z_i)^l / sqrt(k! l!).
OperatorMatrix quantize_quadrature(const PhaseFunction& f, std::size_t n_dim,
                                   const QuadratureSpec& quad);

OperatorMatrix position_operator(std::size_t n_dim);
OperatorMatrix momentum_operator(std::size_t n_dim);
/// diag((2k - 1 - N delta_{k,N})/2), k = 1..N
OperatorMatrix hamiltonian(std::size_t n_dim);
/// Projector E_N onto the highest level |N-1>.
OperatorMatrix top_level_projector(std::size_t n_dim);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// X1 = sqrt(theta) Q_N, X2 = sqrt(theta) P_N, so [X1, X2] = i theta (I - N E_N).
std::pair<OperatorMatrix, OperatorMatrix> hall_coordinates(std::size_t n_dim, double theta);

/// P_N is unitarily similar to the tridiagonal with offdiag |P_N(k,k+1)|,
/// which coincides with the one of Q_N.
SymTridiagonal momentum_tridiagonal(std::size_t n_dim);

}  // namespace fockq
