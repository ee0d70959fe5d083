#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fockq::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3 };

/// Reference dimensions for the sigma_N table.
const std::vector<std::size_t>& table_dims();

/// Geometric ladder start..stop with `count` points, rounded and deduplicated.
std::vector<std::size_t> geometric_ladder(std::size_t start, std::size_t stop, std::size_t count);

/// Comma-separated list of dimensions; throws DomainError on empty or malformed input.
std::vector<std::size_t> parse_dim_list(std::string_view text);

/// Physical scales, SI units.
struct PhysicalScales {
    double l_c = 0.0;                ///< characteristic length
    std::optional<double> p_c;       ///< characteristic momentum
    double l_m = 0.0;                ///< assumed minimal length
    std::optional<double> theta;     ///< minimal area of the Hall model

    void validate() const;
    double rho_u() const { return l_c / l_m; }
};

struct BoundsReport {
    double sigma = 0.0;             ///< 2 pi, or sigma_N when a finite N was requested
    double rho_u = 0.0;
    double l_max = 0.0;             ///< sigma rho_u l_c
    double position_bound = 0.0;    ///< sigma l_c^2
    std::optional<double> momentum_bound;  ///< sigma p_c^2
    std::optional<double> hall_min_length; ///< sqrt(theta)
    std::optional<double> hall_max_size;   ///< sigma l_c^2 / sqrt(theta)
};

BoundsReport compute_bounds(const PhysicalScales& scales, double sigma);

/// l_c solving l_m * L = 2 pi l_c^2.
double characteristic_length_for(double l_m, double universe_size);

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace fockq::cli
