#include "fockq/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fockq/errors.hpp"

namespace fockq {

GaussLaguerreRule gauss_laguerre(std::size_t m) {
    if (m < 1) throw DomainError("Gauss-Laguerre order must be >= 1");
    GaussLaguerreRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const long double n = static_cast<long double>(m);
    long double z = 0.0L;
    for (std::size_t i = 0; i < m; ++i) {
        // asymptotic initial guesses, then Newton on L_m
        if (i == 0) {
            z = 3.0L / (1.0L + 2.4L * n);
        } else if (i == 1) {
            z += 15.0L / (1.0L + 2.5L * n);
        } else {
            const long double ai = static_cast<long double>(i - 1);
            z += ((1.0L + 2.55L * ai) / (1.9L * ai)) * (z - rule.nodes[i - 2]);
        }
        // (p1, p2) = (L_m(z), L_{m-1}(z)); pp = L_m'(z)
        long double p1 = 0.0L, p2 = 0.0L, pp = 0.0L;
        const auto evaluate = [&] {
            p1 = 1.0L;
            p2 = 0.0L;
            for (std::size_t j = 1; j <= m; ++j) {
                const long double p3 = p2;
                p2 = p1;
                const long double jj = static_cast<long double>(j);
                p1 = ((2.0L * jj - 1.0L - z) * p2 - (jj - 1.0L) * p3) / jj;
            }
            pp = n * (p1 - p2) / z;
        };
        bool converged = false;
        for (int it = 0; it < 200; ++it) {
            evaluate();
            const long double step = p1 / pp;
            z -= step;
            if (std::abs(step) <= 1e-15L * z) {
                converged = true;
                break;
            }
        }
        evaluate();
        if (!converged)
            throw ConvergenceError("Gauss-Laguerre node " + std::to_string(i) + " of order " +
                                   std::to_string(m) + " did not converge");
        rule.nodes[i] = z;
        rule.weights[i] = -1.0L / (pp * n * p2);
    }
    return rule;
}

std::vector<PlaneNode> plane_nodes(const QuadratureSpec& spec) {
    if (spec.radial < 1 || spec.angular < 1)
        throw DomainError("quadrature orders must be >= 1");
    const auto rule = gauss_laguerre(spec.radial);
    const long double k = static_cast<long double>(spec.angular);
    std::vector<PlaneNode> out;
    out.reserve(spec.radial * spec.angular);
    for (std::size_t i = 0; i < spec.radial; ++i) {
        const long double r = std::sqrt(rule.nodes[i]);
        const long double w = rule.weights[i] / k;
        for (std::size_t j = 0; j < spec.angular; ++j) {
            const long double phi = 2.0L * std::numbers::pi_v<long double> *
                                    static_cast<long double>(j) / k;
            out.push_back({{r * std::cos(phi), r * std::sin(phi)}, w});
        }
    }
    return out;
}

}  // namespace fockq
