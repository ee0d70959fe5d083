#pragma once

#include <cstddef>
#include <vector>

namespace fockq {

/// Real symmetric tridiagonal matrix: diag has N entries, offdiag N-1.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;

    std::size_t dim() const noexcept { return diag.size(); }

    /// Tridiagonal form of Q_N: zero diagonal, offdiag[k-1] = sqrt(k/2).
    static SymTridiagonal position(std::size_t n_dim);

    /// True when every offdiag entry is strictly positive (simple spectrum).
    bool unreduced() const noexcept;
};

}  // namespace fockq
