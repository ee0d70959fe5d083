#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "fockq/quantizer.hpp"
#include "fockq/spectra.hpp"
#include "fockq/symbols.hpp"

namespace fockq::io {

/// Nine significant digits, "%.9g".
std::string format_number(double v);

// Symbols: JSON array of {"a": int, "b": int, "re": float, "im": float}.
PolynomialSymbol symbol_from_json(std::string_view text);
std::string symbol_to_json(const PolynomialSymbol& sym);

/// One row per Fock index k; columns re(k,0), im(k,0), re(k,1), im(k,1), ...
void write_operator_csv(std::ostream& out, const OperatorMatrix& op);
/// {"dim": N, "hermitian": bool, "re": [[...]], "im": [[...]]}
void write_operator_json(std::ostream& out, const OperatorMatrix& op);

/// Header `N,lambda_m,lambda_M,delta,width,sigma,parity`, plus `,2pi` when requested.
void write_summary_csv(std::ostream& out, std::span<const SpectrumSummary> rows,
                       bool two_pi_column = false);
void write_summary_json(std::ostream& out, std::span<const SpectrumSummary> rows,
                        bool two_pi_column = false);

/// Header `index,eigenvalue`.
void write_spectrum_csv(std::ostream& out, std::span<const double> eigenvalues);
void write_spectrum_json(std::ostream& out, std::size_t n_dim, std::span<const double> eigenvalues);

/// Header `q,p,value`, q-major.
void write_grid_csv(std::ostream& out, const SymbolGrid& grid);
void write_grid_json(std::ostream& out, const SymbolGrid& grid);

// gnuplot scripts reading the CSV written next to them.
std::string grid_gnuplot(const SymbolGrid& grid, std::string_view data_path);
std::string sigma_gnuplot(std::string_view data_path);
std::string extremes_gnuplot(std::string_view data_path);
std::string spectrum_gnuplot(std::size_t n_dim, std::string_view data_path);

}  // namespace fockq::io
