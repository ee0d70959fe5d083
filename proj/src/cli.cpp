#include "fockq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fockq/errors.hpp"
#include "fockq/io.hpp"
#include "fockq/parallel.hpp"
#include "fockq/quantizer.hpp"
#include "fockq/spectra.hpp"
#include "fockq/symbols.hpp"
#include "fockq/verify.hpp"

namespace fockq::cli {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

enum class Format { Csv, Json };

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw DomainError("unknown format '" + s + "' (expected csv or json)");
}

// Writes to a file, or to `fallback` when the path is empty or "-".
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : path_(path) {
        if (path.empty() || path == "-") {
            stream_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw IoError("cannot open '" + path + "' for writing");
        stream_ = file_.get();
    }

    std::ostream& stream() { return *stream_; }
    bool is_file() const { return file_ != nullptr; }

    void close() {
        stream_->flush();
        if (file_) {
            file_->close();
            if (!*file_) throw IoError("failed writing '" + path_ + "'");
        }
    }

private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw IoError("failed writing '" + path + "'");
}

void emit_plot(bool wanted, const std::string& out_path, Format fmt, const std::string& script) {
    if (!wanted) return;
    if (out_path.empty() || out_path == "-") throw DomainError("--plot requires --out <file>");
    if (fmt != Format::Csv) throw DomainError("--plot requires --format csv");
    write_text_file(out_path + ".gp", script);
}

struct CommonOutput {
    std::string out;
    std::string format = "csv";
    bool plot = false;

    void attach(CLI::App* cmd, bool with_plot = true) {
        cmd->add_option("-o,--out", out, "Output file (default: stdout)");
        cmd->add_option("-f,--format", format, "csv or json")->capture_default_str();
        if (with_plot) cmd->add_flag("--plot", plot, "Also write a gnuplot script <out>.gp");
    }
};

int cmd_spectrum(std::size_t n, const std::string& method, std::size_t cap, bool summary,
                 double tol, const CommonOutput& o, std::ostream& out) {
    if (n < 2) throw DomainError("spectrum needs --n >= 2 (N = 1 has no positive eigenvalue)");
    const Format fmt = parse_format(o.format);
    std::string chosen = method;
    if (chosen == "auto") chosen = n <= cap ? "qr" : "bisect";
    if (chosen != "qr" && chosen != "bisect")
        throw DomainError("unknown method '" + method + "' (expected auto, qr or bisect)");

    Sink sink(o.out, out);
    if (chosen == "qr") {
        if (n > cap) throw DomainError("--method qr limited to N <= " + std::to_string(cap));
        const std::size_t old_cap = full_spectrum_cap();
        set_full_spectrum_cap(std::max(cap, old_cap));
        const auto eig = eig_all(SymTridiagonal::position(n));
        set_full_spectrum_cap(old_cap);
        if (summary) {
            const auto s = make_summary(n, eig[(n + 1) / 2], eig.back());
            const std::vector<SpectrumSummary> rows{s};
            fmt == Format::Csv ? io::write_summary_csv(sink.stream(), rows) : io::write_summary_json(sink.stream(), rows);
            emit_plot(o.plot, o.out, fmt, io::extremes_gnuplot(o.out));
        } else {
            fmt == Format::Csv ? io::write_spectrum_csv(sink.stream(), eig)
                               : io::write_spectrum_json(sink.stream(), n, eig);
            emit_plot(o.plot, o.out, fmt, io::spectrum_gnuplot(n, o.out));
        }
    } else {
        const std::vector<SpectrumSummary> rows{spectrum_summary(n, tol)};
        fmt == Format::Csv ? io::write_summary_csv(sink.stream(), rows) : io::write_summary_json(sink.stream(), rows);
        emit_plot(o.plot, o.out, fmt, io::extremes_gnuplot(o.out));
    }
    sink.close();
    return kOk;
}

int cmd_sigma_table(const std::optional<std::string>& list, const std::vector<std::size_t>& geometric,
                    double tol, std::size_t threads, const CommonOutput& o, std::ostream& out) {
    const Format fmt = parse_format(o.format);
    std::vector<std::size_t> dims;
    if (list && !geometric.empty()) throw DomainError("--n and --geometric are mutually exclusive");
    if (list) {
        dims = parse_dim_list(*list);
    } else if (!geometric.empty()) {
        if (geometric.size() != 3) throw DomainError("--geometric takes START STOP COUNT");
        dims = geometric_ladder(geometric[0], geometric[1], geometric[2]);
    } else {
        dims = table_dims();
    }
    for (std::size_t n : dims)
        if (n < 2) throw DomainError("every N must be >= 2");
    const auto rows = sigma_table(dims, tol, threads);
    Sink sink(o.out, out);
    fmt == Format::Csv ? io::write_summary_csv(sink.stream(), rows, true)
                       : io::write_summary_json(sink.stream(), rows, true);
    emit_plot(o.plot, o.out, fmt, io::sigma_gnuplot(o.out));
    sink.close();
    return kOk;
}

int cmd_lower_symbols(std::optional<std::size_t> n, const std::string& which, const GridAxis& qa,
                      const GridAxis& pa, std::size_t threads, const CommonOutput& o, std::ostream& out) {
    const SymbolKind kind = parse_symbol_kind(which);
    const Format fmt = parse_format(o.format);
    std::size_t dim = 12;
    if (kind == SymbolKind::H) dim = 5;
    if (kind == SymbolKind::Uncertainty) dim = 2;
    if (n) dim = *n;
    if (dim < 2) throw DomainError("lower-symbols needs --n >= 2");
    const SymbolGrid grid = symbol_grid(dim, kind, qa, pa, threads);
    Sink sink(o.out, out);
    fmt == Format::Csv ? io::write_grid_csv(sink.stream(), grid) : io::write_grid_json(sink.stream(), grid);
    emit_plot(o.plot, o.out, fmt, io::grid_gnuplot(grid, o.out));
    sink.close();
    return kOk;
}

int cmd_bounds(PhysicalScales scales, std::optional<std::size_t> sigma_n,
               std::optional<double> universe, bool as_json, std::ostream& out) {
    if (universe) scales.l_c = characteristic_length_for(scales.l_m, *universe);
    scales.validate();
    const double sigma = sigma_n ? spectrum_summary(*sigma_n).sigma : two_pi;
    const BoundsReport r = compute_bounds(scales, sigma);
    if (as_json) {
        nlohmann::json j = {{"sigma", r.sigma},       {"l_c", scales.l_c},
                            {"l_m", scales.l_m},       {"rho_u", r.rho_u},
                            {"l_M", r.l_max},          {"position_bound", r.position_bound}};
        if (r.momentum_bound) j["momentum_bound"] = *r.momentum_bound;
        if (r.hall_min_length) j["hall_min_length"] = *r.hall_min_length;
        if (r.hall_max_size) j["hall_max_size"] = *r.hall_max_size;
        out << j.dump(2) << '\n';
        return kOk;
    }
    using io::format_number;
    const std::string sig = sigma_n ? "sigma_" + std::to_string(*sigma_n) : std::string("2 pi");
    out << "sigma = " << format_number(r.sigma) << " (" << sig << ")\n";
    if (universe) out << "l_c = " << format_number(scales.l_c) << " m (from l_m L = 2 pi l_c^2)\n";
    out << "rho_u = l_c / l_m = " << format_number(r.rho_u) << '\n'
        << "delta_N(Q) Delta_N(Q) <= " << sig << " l_c^2 = " << format_number(r.position_bound) << " m^2\n";
    if (r.momentum_bound)
        out << "delta_N(P) Delta_N(P) <= " << sig << " p_c^2 = " << format_number(*r.momentum_bound) << '\n';
    out << "l_M = sigma rho_u l_c = " << format_number(r.l_max) << " m\n";
    if (r.hall_min_length) {
        out << "Hall: l_m = sqrt(theta) = " << format_number(*r.hall_min_length) << " m\n"
            << "Hall: l_M <= " << sig << " (l_c / sqrt(theta)) l_c = " << format_number(*r.hall_max_size)
            << " m\n";
    }
    return kOk;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out) {
    const VerifyReport report = run_verification(opts);
    for (const auto& c : report.checks)
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    if (report.ok()) {
        out << "all checks passed\n";
        return kOk;
    }
    out << "failed:";
    for (const auto& name : report.failures()) out << ' ' << name;
    out << '\n';
    return kVerifyFailed;
}

int cmd_quantize(const std::string& symbol_path, std::size_t n, const CommonOutput& o, std::ostream& out) {
    std::ifstream in(symbol_path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + symbol_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const PolynomialSymbol sym = io::symbol_from_json(buf.str());
    const Format fmt = parse_format(o.format);
    if (n < 1) throw DomainError("--n must be >= 1");
    const OperatorMatrix op = quantize(sym, n);
    Sink sink(o.out, out);
    fmt == Format::Csv ? io::write_operator_csv(sink.stream(), op) : io::write_operator_json(sink.stream(), op);
    sink.close();
    return kOk;
}

}  // namespace

const std::vector<std::size_t>& table_dims() {
    static const std::vector<std::size_t> dims{10, 55, 100, 551, 1000, 5555, 10000,
                                               55255, 100000, 500555, 1000000};
    return dims;
}

std::vector<std::size_t> geometric_ladder(std::size_t start, std::size_t stop, std::size_t count) {
    if (start < 1 || stop < start || count < 2)
        throw DomainError("geometric ladder needs 1 <= START <= STOP and COUNT >= 2");
    std::vector<std::size_t> out;
    const double ratio = std::log(static_cast<double>(stop) / static_cast<double>(start));
    for (std::size_t i = 0; i < count; ++i) {
        const double v = static_cast<double>(start) *
                         std::exp(ratio * static_cast<double>(i) / static_cast<double>(count - 1));
        const auto n = static_cast<std::size_t>(std::llround(v));
        if (out.empty() || out.back() != n) out.push_back(n);
    }
    return out;
}

std::vector<std::size_t> parse_dim_list(std::string_view text) {
    std::vector<std::size_t> out;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (item.empty()) continue;
        if (!std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw DomainError("invalid dimension '" + item + "'");
        out.push_back(std::stoull(item));
    }
    if (out.empty()) throw DomainError("empty dimension list");
    return out;
}

void PhysicalScales::validate() const {
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(l_c) || !positive(l_m)) throw DomainError("l_c and l_m must be positive");
    if (p_c && !positive(*p_c)) throw DomainError("p_c must be positive");
    if (theta && !positive(*theta)) throw DomainError("theta must be positive");
    if (rho_u() < 1.0) throw DomainError("rho_u = l_c / l_m must be >= 1");
}

BoundsReport compute_bounds(const PhysicalScales& scales, double sigma) {
    scales.validate();
    if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
    BoundsReport r;
    r.sigma = sigma;
    r.rho_u = scales.rho_u();
    r.l_max = sigma * r.rho_u * scales.l_c;
    r.position_bound = sigma * scales.l_c * scales.l_c;
    if (scales.p_c) r.momentum_bound = sigma * *scales.p_c * *scales.p_c;
    if (scales.theta) {
        r.hall_min_length = std::sqrt(*scales.theta);
        r.hall_max_size = sigma * scales.l_c * scales.l_c / *r.hall_min_length;
    }
    return r;
}

double characteristic_length_for(double l_m, double universe_size) {
    if (!(l_m > 0.0) || !(universe_size > 0.0)) throw DomainError("l_m and universe size must be positive");
    return std::sqrt(l_m * universe_size / two_pi);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coherent-state quantization in a truncated Fock space", "fockq"};
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: FOCKQ_THREADS or all cores)");

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Spectrum or extreme eigenvalues of Q_N");
    std::size_t spec_n = 0;
    std::string method = "auto";
    std::size_t cap = 20000;
    bool spec_summary = false;
    double tol = 1e-13;
    CommonOutput spec_out;
    spectrum_cmd->add_option("-n,--n", spec_n, "Dimension N")->required();
    spectrum_cmd->add_option("--method", method, "auto, qr or bisect")->capture_default_str();
    spectrum_cmd->add_option("--dense-cap", cap, "Largest N for the full QL spectrum")->capture_default_str();
    spectrum_cmd->add_flag("--summary", spec_summary, "With qr: write the summary row instead of all eigenvalues");
    spectrum_cmd->add_option("--tol", tol, "Relative bisection tolerance")->capture_default_str();
    spec_out.attach(spectrum_cmd);

    // sigma-table
    auto* table = app.add_subcommand("sigma-table", "sigma_N = delta_N Delta_N for a list of N");
    std::optional<std::string> table_list;
    std::vector<std::size_t> geometric;
    double table_tol = 1e-13;
    CommonOutput table_out;
    table->add_option("-n,--n", table_list, "Comma-separated dimensions (default: the eleven reference dimensions)");
    table->add_option("--geometric", geometric, "START STOP COUNT")->expected(3);
    table->add_option("--tol", table_tol, "Relative bisection tolerance")->capture_default_str();
    table_out.attach(table);

    // lower-symbols
    auto* symb = app.add_subcommand("lower-symbols", "Lower symbols over a (q, p) grid");
    std::optional<std::size_t> symb_n;
    std::string which = "Q2";
    GridAxis qa, pa;
    std::optional<std::size_t> steps;
    CommonOutput symb_out;
    symb->add_option("-n,--n", symb_n, "Dimension N (default 12 for Q2/P2/C, 5 for H, 2 for UNCERTAINTY)");
    symb->add_option("--which", which, "Q2, P2, H, UNCERTAINTY or C")->capture_default_str();
    symb->add_option("--q-min", qa.min)->capture_default_str();
    symb->add_option("--q-max", qa.max)->capture_default_str();
    symb->add_option("--p-min", pa.min)->capture_default_str();
    symb->add_option("--p-max", pa.max)->capture_default_str();
    symb->add_option("--q-steps", qa.steps)->capture_default_str();
    symb->add_option("--p-steps", pa.steps)->capture_default_str();
    symb->add_option("--steps", steps, "Steps on both axes");
    symb_out.attach(symb);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Dimensioned uncertainty bounds and maximal length");
    PhysicalScales scales;
    std::optional<double> lc, pc, theta, universe;
    std::optional<std::size_t> sigma_n;
    std::string bounds_format = "text";
    bounds->add_option("--lc", lc, "Characteristic length l_c [m]");
    bounds->add_option("--lm", scales.l_m, "Minimal length l_m [m]")->required();
    bounds->add_option("--pc", pc, "Characteristic momentum p_c");
    bounds->add_option("--theta", theta, "Minimal area theta [m^2] (Hall model)");
    bounds->add_option("--sigma-n", sigma_n, "Use sigma_N at this N instead of 2 pi");
    bounds->add_option("--universe-size", universe, "Solve l_c from l_m L = 2 pi l_c^2");
    bounds->add_option("-f,--format", bounds_format, "text or json")->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "Run the invariant verification suite");
    VerifyOptions vopts;
    verify->add_option("--n-max-dense", vopts.n_max_dense, "Largest dense N checked")->capture_default_str();
    verify->add_option("--seed", vopts.seed)->capture_default_str();
    verify->add_flag("--inject-fault", vopts.inject_fault, "Perturb one off-diagonal entry (harness self-test)");

    // quantize
    auto* quant = app.add_subcommand("quantize", "Quantize a polynomial symbol read from JSON");
    std::string symbol_path;
    std::size_t quant_n = 0;
    CommonOutput quant_out;
    quant->add_option("--symbol", symbol_path, "JSON array of {a, b, re, im}")->required();
    quant->add_option("-n,--n", quant_n, "Dimension N")->required();
    quant_out.attach(quant, false);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*spectrum_cmd) return cmd_spectrum(spec_n, method, cap, spec_summary, tol, spec_out, out);
        if (*table) return cmd_sigma_table(table_list, geometric, table_tol, threads, table_out, out);
        if (*symb) {
            if (steps) qa.steps = pa.steps = *steps;
            return cmd_lower_symbols(symb_n, which, qa, pa, threads, symb_out, out);
        }
        if (*bounds) {
            if (!lc && !universe) throw DomainError("bounds needs --lc or --universe-size");
            if (lc) scales.l_c = *lc;
            scales.p_c = pc;
            scales.theta = theta;
            if (bounds_format != "text" && bounds_format != "json")
                throw DomainError("bounds format must be text or json");
            return cmd_bounds(scales, sigma_n, universe, bounds_format == "json", out);
        }
        if (*verify) return cmd_verify(vopts, out);
        if (*quant) return cmd_quantize(symbol_path, quant_n, quant_out, out);
    } catch (const IoError& e) {
        err << "fockq: I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const DomainError& e) {
        err << "fockq: " << e.what() << '\n';
        return kUsage;
    } catch (const RangeError& e) {
        err << "fockq: " << e.what() << '\n';
        return kUsage;
    } catch (const QuadratureError& e) {
        err << "fockq: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "fockq: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kUsage;
}

int run(int argc, char** argv) {
    return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace fockq::cli
