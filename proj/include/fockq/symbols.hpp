#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "fockq/fockplane.hpp"
#include "fockq/quantizer.hpp"

namespace fockq {

/// <z|A|z> computed from the coherent-state vector.
cdouble lower_symbol(const OperatorMatrix& op, const PhasePoint& x);

/// C(r) = sum_{j<N-1} r^{2j}/j! / N(r^2), the factor in <z|Q_N|z> = C q.
double corrective_factor(std::size_t n_dim, double r);

struct QuadraticSymbols {
    double a = 0.0;  ///< <z|H_N|z>
    double b = 0.0;  ///< <z|Q_N^2|z> = a + b, <z|P_N^2|z> = a - b
};

QuadraticSymbols quadratic_symbols(std::size_t n_dim, const PhasePoint& x);

/// Delta Q_N * Delta P_N in the state |z>.
double uncertainty_product(std::size_t n_dim, const PhasePoint& x);

enum class SymbolKind { Q2, P2, H, Uncertainty, C };

SymbolKind parse_symbol_kind(std::string_view name);
std::string_view to_string(SymbolKind kind) noexcept;

/// Value of `kind` at x via the closed forms.
double symbol_value(SymbolKind kind, std::size_t n_dim, const PhasePoint& x);

struct GridAxis {
    double min = -6.0;
    double max = 6.0;
    std::size_t steps = 49;

    double at(std::size_t i) const noexcept;
    void validate(std::string_view name) const;
};

struct SymbolGrid {
    std::size_t n_dim = 0;
    SymbolKind kind = SymbolKind::Q2;
    GridAxis q_axis;
    GridAxis p_axis;
    /// values[iq * p_axis.steps + ip]
    std::vector<double> values;

    double at(std::size_t iq, std::size_t ip) const { return values[iq * p_axis.steps + ip]; }
};

/// Dense sweep over q_axis x p_axis. `threads` = 0 uses default_threads().
SymbolGrid symbol_grid(std::size_t n_dim, SymbolKind kind, const GridAxis& q_axis,
                       const GridAxis& p_axis, std::size_t threads = 0);

}  // namespace fockq
