#include "fockq/io.hpp"

#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fockq/errors.hpp"

namespace fockq::io {

using nlohmann::json;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

json summary_row(const SpectrumSummary& s, bool two_pi_column) {
    json row = {{"N", s.dim},
                {"lambda_m", s.lambda_min_pos},
                {"lambda_M", s.lambda_max},
                {"delta", s.delta},
                {"width", s.width},
                {"sigma", s.sigma},
                {"parity", std::string(to_string(s.parity))}};
    if (two_pi_column) row["2pi"] = two_pi;
    return row;
}

json axis_json(const GridAxis& a) { return {{"min", a.min}, {"max", a.max}, {"steps", a.steps}}; }

std::string_view grid_label(SymbolKind kind) {
    switch (kind) {
        case SymbolKind::Q2: return "<z|Q_N^2|z>";
        case SymbolKind::P2: return "<z|P_N^2|z>";
        case SymbolKind::H: return "<z|H_N|z>";
        case SymbolKind::Uncertainty: return "Delta Q_N Delta P_N";
        case SymbolKind::C: return "C(|z|)";
    }
    return "value";
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

PolynomialSymbol symbol_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("invalid symbol JSON: ") + e.what());
    }
    if (!doc.is_array()) throw DomainError("symbol JSON must be an array of terms");
    PolynomialSymbol sym;
    for (const auto& term : doc) {
        if (!term.is_object() || !term.contains("a") || !term.contains("b"))
            throw DomainError("each symbol term needs integer fields 'a' and 'b'");
        const auto& a = term.at("a");
        const auto& b = term.at("b");
        if (!a.is_number_integer() || !b.is_number_integer() || a.get<long long>() < 0 ||
            b.get<long long>() < 0)
            throw DomainError("symbol exponents must be nonnegative integers");
        const double re = term.value("re", 0.0);
        const double im = term.value("im", 0.0);
        sym.add(a.get<unsigned>(), b.get<unsigned>(), {re, im});
    }
    return sym;
}

std::string symbol_to_json(const PolynomialSymbol& sym) {
    json doc = json::array();
    for (const auto& [key, c] : sym.terms())
        doc.push_back({{"a", key.first}, {"b", key.second}, {"re", c.real()}, {"im", c.imag()}});
    return doc.dump();
}

void write_operator_csv(std::ostream& out, const OperatorMatrix& op) {
    const std::size_t n = op.dim();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            if (l > 0) out << ',';
            out << format_number(op(k, l).real()) << ',' << format_number(op(k, l).imag());
        }
        out << '\n';
    }
}

void write_operator_json(std::ostream& out, const OperatorMatrix& op) {
    const std::size_t n = op.dim();
    json re = json::array(), im = json::array();
    for (std::size_t k = 0; k < n; ++k) {
        json rrow = json::array(), irow = json::array();
        for (std::size_t l = 0; l < n; ++l) {
            rrow.push_back(op(k, l).real());
            irow.push_back(op(k, l).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    out << json{{"dim", n}, {"hermitian", op.hermitian()}, {"re", re}, {"im", im}}.dump() << '\n';
}

void write_summary_csv(std::ostream& out, std::span<const SpectrumSummary> rows, bool two_pi_column) {
    out << "N,lambda_m,lambda_M,delta,width,sigma,parity" << (two_pi_column ? ",2pi" : "") << '\n';
    for (const auto& s : rows) {
        out << s.dim << ',' << format_number(s.lambda_min_pos) << ',' << format_number(s.lambda_max)
            << ',' << format_number(s.delta) << ',' << format_number(s.width) << ','
            << format_number(s.sigma) << ',' << to_string(s.parity);
        if (two_pi_column) out << ',' << format_number(two_pi);
        out << '\n';
    }
}

void write_summary_json(std::ostream& out, std::span<const SpectrumSummary> rows, bool two_pi_column) {
    json doc = json::array();
    for (const auto& s : rows) doc.push_back(summary_row(s, two_pi_column));
    out << doc.dump(2) << '\n';
}

void write_spectrum_csv(std::ostream& out, std::span<const double> eigenvalues) {
    out << "index,eigenvalue\n";
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        out << i << ',' << format_number(eigenvalues[i]) << '\n';
}

void write_spectrum_json(std::ostream& out, std::size_t n_dim, std::span<const double> eigenvalues) {
    out << json{{"N", n_dim}, {"eigenvalues", std::vector<double>(eigenvalues.begin(), eigenvalues.end())}}
               .dump()
        << '\n';
}

void write_grid_csv(std::ostream& out, const SymbolGrid& grid) {
    out << "q,p,value\n";
    for (std::size_t iq = 0; iq < grid.q_axis.steps; ++iq)
        for (std::size_t ip = 0; ip < grid.p_axis.steps; ++ip)
            out << format_number(grid.q_axis.at(iq)) << ',' << format_number(grid.p_axis.at(ip)) << ','
                << format_number(grid.at(iq, ip)) << '\n';
}

void write_grid_json(std::ostream& out, const SymbolGrid& grid) {
    out << json{{"N", grid.n_dim},
                {"which", std::string(to_string(grid.kind))},
                {"q", axis_json(grid.q_axis)},
                {"p", axis_json(grid.p_axis)},
                {"values", grid.values}}
               .dump()
        << '\n';
}

std::string grid_gnuplot(const SymbolGrid& grid, std::string_view data_path) {
    std::ostringstream s;
    s << "set datafile separator ','\n"
      << "set title '" << grid_label(grid.kind) << ", N = " << grid.n_dim << "'\n"
      << "set xlabel 'q'\nset ylabel 'p'\nset zlabel '" << grid_label(grid.kind) << "'\n"
      << "set hidden3d\nset ticslevel 0\n"
      << "set dgrid3d " << grid.p_axis.steps << "," << grid.q_axis.steps << "\n"
      << "splot '" << data_path << "' every ::1 using 1:2:3 with lines notitle\n"
      << "pause mouse close\n";
    return s.str();
}

std::string sigma_gnuplot(std::string_view data_path) {
    std::ostringstream s;
    s << "set datafile separator ','\n"
      << "set title 'sigma_N = delta_N Delta_N'\n"
      << "set xlabel 'N'\nset ylabel 'sigma_N'\nset logscale x\nset key bottom right\n"
      << "plot '" << data_path << "' every ::1 using 1:6 with linespoints title 'sigma_N', \\\n"
      << "     2*pi with lines dashtype 2 title '2 pi'\n"
      << "pause mouse close\n";
    return s.str();
}

std::string extremes_gnuplot(std::string_view data_path) {
    std::ostringstream s;
    s << "set datafile separator ','\n"
      << "set multiplot layout 2,1\n"
      << "set xlabel 'N'\nset logscale xy\n"
      << "set ylabel 'eigenmax(N)'\n"
      << "plot '" << data_path << "' every ::1 using 1:(strcol(7) eq 'even' ? $3 : 1/0) with points title 'N even', \\\n"
      << "     '' every ::1 using 1:(strcol(7) eq 'odd' ? $3 : 1/0) with points title 'N odd', \\\n"
      << "     sqrt(2*x) title 'sqrt(2N)'\n"
      << "set ylabel 'eigenmin(N)'\n"
      << "plot '" << data_path << "' every ::1 using 1:(strcol(7) eq 'even' ? $2 : 1/0) with points title 'N even', \\\n"
      << "     '' every ::1 using 1:(strcol(7) eq 'odd' ? $2 : 1/0) with points title 'N odd'\n"
      << "unset multiplot\npause mouse close\n";
    return s.str();
}

std::string spectrum_gnuplot(std::size_t n_dim, std::string_view data_path) {
    std::ostringstream s;
    s << "set datafile separator ','\n"
      << "set title 'Spectrum of Q_N, N = " << n_dim << "'\n"
      << "set xlabel 'index'\nset ylabel 'eigenvalue'\n"
      << "plot '" << data_path << "' every ::1 using 1:2 with points pointtype 7 notitle\n"
      << "pause mouse close\n";
    return s.str();
}

}  // namespace fockq::io
