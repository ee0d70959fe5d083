#include "fockq/quantizer.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fockq/errors.hpp"
#include "fockq/quadrature.hpp"

namespace fockq {

namespace {

std::atomic<std::size_t> g_dense_cap{4096};

void require_dense_dim(std::size_t n_dim) {
    if (n_dim < 1) throw DomainError("dimension must be >= 1");
    if (n_dim > dense_cap())
        throw DomainError("dimension " + std::to_string(n_dim) + " exceeds the dense cap " +
                          std::to_string(dense_cap()));
}

// sqrt(prod_{j=from+1}^{to} j) = sqrt(to!/from!), without forming factorials.
double sqrt_factorial_ratio(std::size_t from, std::size_t to) {
    double prod = 1.0;
    for (std::size_t j = from + 1; j <= to; ++j) prod *= std::sqrt(static_cast<double>(j));
    if (std::isfinite(prod)) return prod;
    const double log_ratio =
        std::lgamma(static_cast<double>(to) + 1.0) - std::lgamma(static_cast<double>(from) + 1.0);
    return std::exp(0.5 * log_ratio);
}

// Exact integer ratios while they fit the long double mantissa, so small
// entries (and every diagonal one) come out correctly rounded.
double monomial_entry(std::size_t k, std::size_t l, std::size_t top) {
    constexpr long double exact_limit = 0x1p63L;
    long double r1 = 1.0L, r2 = 1.0L;
    for (std::size_t j = k + 1; j <= top; ++j) r1 *= static_cast<long double>(j);
    for (std::size_t j = l + 1; j <= top; ++j) r2 *= static_cast<long double>(j);
    if (r1 < exact_limit && r2 < exact_limit) {
        if (k == l) return static_cast<double>(r1);
        return static_cast<double>(std::sqrt(r1 * r2));
    }
    return sqrt_factorial_ratio(k, top) * sqrt_factorial_ratio(l, top);
}

void add_monomial(ComplexMatrix& m, unsigned a, unsigned b, cdouble c) {
    const auto n = static_cast<std::size_t>(m.rows());
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t top = k + a;  // k + a = l + b
        if (top < b) continue;
        const std::size_t l = top - b;
        if (l >= n) continue;
        // (k+a)!/sqrt(k! l!) = sqrt((k+a)!/k! * (k+a)!/l!)
        const double v = monomial_entry(k, l, top);
        if (!std::isfinite(v))
            throw RangeError("monomial matrix element overflows at (" + std::to_string(k) + ", " +
                             std::to_string(l) + ")");
        m(k, l) += c * v;
    }
}

}  // namespace

PolynomialSymbol& PolynomialSymbol::add(unsigned a, unsigned b, cdouble c) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw DomainError("symbol coefficient must be finite");
    terms_[{a, b}] += c;
    return *this;
}

cdouble PolynomialSymbol::evaluate(const PhasePoint& x) const {
    const cdouble z = x.z();
    cdouble sum = 0.0;
    for (const auto& [key, c] : terms_)
        sum += c * std::pow(z, static_cast<int>(key.first)) *
               std::pow(std::conj(z), static_cast<int>(key.second));
    return sum;
}

PolynomialSymbol PolynomialSymbol::position() {
    constexpr double s = 1.0 / std::numbers::sqrt2;
    PolynomialSymbol sym;
    sym.add(1, 0, s).add(0, 1, s);
    return sym;
}

PolynomialSymbol PolynomialSymbol::momentum() {
    // (z - conj z)/(i sqrt 2) = -i z/sqrt 2 + i conj(z)/sqrt 2
    constexpr double s = 1.0 / std::numbers::sqrt2;
    PolynomialSymbol sym;
    sym.add(1, 0, {0.0, -s}).add(0, 1, {0.0, s});
    return sym;
}

bool is_real_symbol(const PolynomialSymbol& sym, double tol) {
    const auto& terms = sym.terms();
    for (const auto& [key, c] : terms) {
        const auto mirror = terms.find({key.second, key.first});
        const cdouble other = mirror == terms.end() ? cdouble{} : mirror->second;
        if (std::abs(c - std::conj(other)) > tol) return false;
    }
    return true;
}

std::size_t dense_cap() noexcept { return g_dense_cap.load(std::memory_order_relaxed); }
void set_dense_cap(std::size_t cap) noexcept { g_dense_cap.store(cap, std::memory_order_relaxed); }

OperatorMatrix::OperatorMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw DimensionMismatch("operator matrix must be square");
    require_dense_dim(static_cast<std::size_t>(entries_.rows()));
    hermitian_ = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= hermitian_tolerance;
}

OperatorMatrix OperatorMatrix::zero(std::size_t n_dim) {
    require_dense_dim(n_dim);
    return OperatorMatrix(ComplexMatrix::Zero(n_dim, n_dim));
}

OperatorMatrix OperatorMatrix::identity(std::size_t n_dim) {
    require_dense_dim(n_dim);
    return OperatorMatrix(ComplexMatrix::Identity(n_dim, n_dim));
}

double OperatorMatrix::max_abs_diff(const OperatorMatrix& other) const {
    if (dim() != other.dim()) throw DimensionMismatch("operator dimensions differ");
    return (entries_ - other.entries_).cwiseAbs().maxCoeff();
}

double OperatorMatrix::scaled_max_diff(const OperatorMatrix& other) const {
    const double scale = entries_.size() == 0 ? 1.0 : std::max(1.0, entries_.cwiseAbs().maxCoeff());
    return max_abs_diff(other) / scale;
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& rhs) const {
    if (dim() != rhs.dim()) throw DimensionMismatch("operator dimensions differ");
    return OperatorMatrix(entries_ + rhs.entries_);
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& rhs) const {
    if (dim() != rhs.dim()) throw DimensionMismatch("operator dimensions differ");
    return OperatorMatrix(entries_ - rhs.entries_);
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& rhs) const {
    if (dim() != rhs.dim()) throw DimensionMismatch("operator dimensions differ");
    return OperatorMatrix(entries_ * rhs.entries_);
}

OperatorMatrix OperatorMatrix::operator*(cdouble s) const { return OperatorMatrix(entries_ * s); }

OperatorMatrix quantize_monomial(std::size_t n_dim, unsigned a, unsigned b) {
    require_dense_dim(n_dim);
    ComplexMatrix m = ComplexMatrix::Zero(n_dim, n_dim);
    add_monomial(m, a, b, 1.0);
    return OperatorMatrix(std::move(m));
}

OperatorMatrix quantize(const PolynomialSymbol& sym, std::size_t n_dim) {
    require_dense_dim(n_dim);
    ComplexMatrix m = ComplexMatrix::Zero(n_dim, n_dim);
    for (const auto& [key, c] : sym.terms()) add_monomial(m, key.first, key.second, c);
    return OperatorMatrix(std::move(m));
}

OperatorMatrix quantize_quadrature(const PhaseFunction& f, std::size_t n_dim,
                                   const QuadratureSpec& quad) {
    require_dense_dim(n_dim);
    using LComplex = std::complex<long double>;
    using LMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;
    using LVector = Eigen::Matrix<LComplex, Eigen::Dynamic, 1>;
    LMatrix acc = LMatrix::Zero(n_dim, n_dim);
    LVector u(n_dim);
    for (const auto& node : plane_nodes(quad)) {
        const cdouble z{static_cast<double>(node.z.real()), static_cast<double>(node.z.imag())};
        const cdouble fz = f(PhasePoint::from_z(z));
        u(0) = 1.0L;
        for (std::size_t k = 1; k < n_dim; ++k)
            u(k) = u(k - 1) * node.z / std::sqrt(static_cast<long double>(k));
        const LComplex scale = node.weight * LComplex(fz.real(), fz.imag());
        acc.noalias() += scale * (u * u.adjoint());
    }
    return OperatorMatrix(acc.cast<cdouble>());
}

OperatorMatrix position_operator(std::size_t n_dim) {
    require_dense_dim(n_dim);
    ComplexMatrix m = ComplexMatrix::Zero(n_dim, n_dim);
    for (std::size_t n = 0; n + 1 < n_dim; ++n) {
        const double v = std::sqrt(0.5 * static_cast<double>(n + 1));
        m(n, n + 1) = v;
        m(n + 1, n) = v;
    }
    return OperatorMatrix(std::move(m));
}

OperatorMatrix momentum_operator(std::size_t n_dim) {
    require_dense_dim(n_dim);
    ComplexMatrix m = ComplexMatrix::Zero(n_dim, n_dim);
    for (std::size_t n = 0; n + 1 < n_dim; ++n) {
        const double v = std::sqrt(0.5 * static_cast<double>(n + 1));
        m(n, n + 1) = cdouble{0.0, -v};
        m(n + 1, n) = cdouble{0.0, v};
    }
    return OperatorMatrix(std::move(m));
}

OperatorMatrix hamiltonian(std::size_t n_dim) {
    require_dense_dim(n_dim);
    ComplexMatrix m = ComplexMatrix::Zero(n_dim, n_dim);
    for (std::size_t n = 0; n + 1 < n_dim; ++n) m(n, n) = 0.5 * static_cast<double>(2 * n + 1);
    m(n_dim - 1, n_dim - 1) = 0.5 * static_cast<double>(n_dim - 1);
    return OperatorMatrix(std::move(m));
}

OperatorMatrix top_level_projector(std::size_t n_dim) {
    require_dense_dim(n_dim);
    ComplexMatrix m = ComplexMatrix::Zero(n_dim, n_dim);
    m(n_dim - 1, n_dim - 1) = 1.0;
    return OperatorMatrix(std::move(m));
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("commutator of operators with different dimensions");
    return OperatorMatrix(a.entries() * b.entries() - b.entries() * a.entries());
}

std::pair<OperatorMatrix, OperatorMatrix> hall_coordinates(std::size_t n_dim, double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw DomainError("theta must be positive and finite");
    const double s = std::sqrt(theta);
    return {position_operator(n_dim) * s, momentum_operator(n_dim) * s};
}

SymTridiagonal momentum_tridiagonal(std::size_t n_dim) {
    if (n_dim < 1) throw DomainError("dimension must be >= 1");
    SymTridiagonal t;
    t.diag.assign(n_dim, 0.0);
    t.offdiag.resize(n_dim - 1);
    // |P_N(n, n+1)| = |-i sqrt((n+1)/2)|
    for (std::size_t n = 0; n + 1 < n_dim; ++n)
        t.offdiag[n] = std::abs(cdouble{0.0, -std::sqrt(0.5 * static_cast<double>(n + 1))});
    return t;
}

}  // namespace fockq
