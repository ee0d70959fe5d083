#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "fockq/fockplane.hpp"

namespace fockq {

/// Gauss-Laguerre rule for int_0^inf g(t) e^{-t} dt, nodes ascending.
/// Computed in extended precision; exact for polynomials of degree <= 2m-1.
struct GaussLaguerreRule {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};

GaussLaguerreRule gauss_laguerre(std::size_t m);

struct PlaneNode {
    std::complex<long double> z;
    long double weight;
};

/// Nodes for (1/pi) int g(z) e^{-|z|^2} d^2z ~ sum_i weight_i g(z_i); weights sum to 1.
std::vector<PlaneNode> plane_nodes(const QuadratureSpec& spec);

}  // namespace fockq
