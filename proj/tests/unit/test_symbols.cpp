#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "fockq/errors.hpp"
#include "fockq/symbols.hpp"

using namespace fockq;

namespace {

// Delta Q Delta P straight from dense sandwiches.
double sandwich_uncertainty(std::size_t n, const PhasePoint& x) {
    const auto q = position_operator(n);
    const auto p = momentum_operator(n);
    const double mq = lower_symbol(q, x).real(), mp = lower_symbol(p, x).real();
    const double vq = lower_symbol(q * q, x).real() - mq * mq;
    const double vp = lower_symbol(p * p, x).real() - mp * mp;
    return std::sqrt(std::max(vq, 0.0) * std::max(vp, 0.0));
}

}  // namespace

TEST_CASE("lower symbols of basic operators") {
    const PhasePoint x(1.1, -0.6);
    for (std::size_t n : {1u, 2u, 8u, 30u}) {
        CHECK(std::abs(lower_symbol(OperatorMatrix::identity(n), x) - 1.0) <= 1e-12);
        const double c = corrective_factor(n, std::sqrt(x.abs2()));
        CHECK(std::abs(lower_symbol(position_operator(n), x) - c * x.q()) <= 1e-12);
        CHECK(std::abs(lower_symbol(momentum_operator(n), x) - c * x.p()) <= 1e-12);
        CHECK(std::abs(lower_symbol(hamiltonian(n), x) - quadratic_symbols(n, x).a) <= 1e-12);
    }
    CHECK(std::abs(lower_symbol(position_operator(12), x).imag()) <= 1e-12);
}

TEST_CASE("corrective factor") {
    for (std::size_t n : {2u, 3u, 50u}) CHECK(corrective_factor(n, 0.0) == 1.0);
    CHECK(corrective_factor(2, 1.0) == 0.5);

    SUBCASE("agrees with the sandwich on the real axis") {
        const double r = 2.0;
        const PhasePoint x(r * std::numbers::sqrt2, 0.0);
        const double sandwich = lower_symbol(position_operator(12), x).real() / x.q();
        CHECK(std::abs(corrective_factor(12, r) - sandwich) <= 1e-12);
    }
    SUBCASE("in (0, 1] and decreasing in r") {
        for (std::size_t n : {2u, 5u, 12u, 40u}) {
            double prev = 1.0;
            for (int i = 1; i <= 200; ++i) {
                const double c = corrective_factor(n, 0.05 * i);
                CHECK(c > 0.0);
                CHECK(c <= 1.0);
                CHECK(c <= prev);
                prev = c;
            }
            CHECK(corrective_factor(n, 10.0) < corrective_factor(n, 1.0));
        }
    }
    SUBCASE("tends to 1 as N grows") {
        CHECK(corrective_factor(100, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(corrective_factor(5, -1.0), DomainError);
}

TEST_CASE("quadratic symbols") {
    for (std::size_t n : {2u, 3u, 12u}) {
        const auto s = quadratic_symbols(n, PhasePoint(0.0, 0.0));
        CHECK(s.a == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(s.b == 0.0);
    }
    SUBCASE("P^2 symbol is the Q^2 symbol rotated by pi/2") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-4.0, 4.0);
        for (int i = 0; i < 50; ++i) {
            const PhasePoint x(u(rng), u(rng));
            const PhasePoint rotated = PhasePoint::from_z(x.z() * cdouble(0.0, 1.0));
            CHECK(symbol_value(SymbolKind::P2, 12, x) ==
                  doctest::Approx(symbol_value(SymbolKind::Q2, 12, rotated)).epsilon(1e-13));
        }
    }
    SUBCASE("closed forms match the sandwich on [-6, 6]^2 for N = 12") {
        const std::size_t n = 12;
        const auto q = position_operator(n);
        const auto p = momentum_operator(n);
        const auto q2 = q * q, p2 = p * p;
        for (double qq = -6.0; qq <= 6.0; qq += 0.75)
            for (double pp = -6.0; pp <= 6.0; pp += 0.75) {
                const PhasePoint x(qq, pp);
                const auto s = quadratic_symbols(n, x);
                CHECK(std::abs(lower_symbol(q2, x) - (s.a + s.b)) <= 1e-10);
                CHECK(std::abs(lower_symbol(p2, x) - (s.a - s.b)) <= 1e-10);
            }
    }
}

TEST_CASE("uncertainty product") {
    for (std::size_t n = 2; n <= 200; ++n)
        CHECK(std::abs(uncertainty_product(n, PhasePoint(0.0, 0.0)) - 0.5) <= 1e-12);

    SUBCASE("matches dense sandwich") {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        for (std::size_t n : {2u, 5u, 10u, 15u})
            for (int i = 0; i < 20; ++i) {
                const PhasePoint x(u(rng), u(rng));
                CHECK(std::abs(uncertainty_product(n, x) - sandwich_uncertainty(n, x)) <= 1e-9);
            }
    }
    SUBCASE("symmetric under quarter turns and conjugation") {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> u(-4.0, 4.0);
        for (std::size_t n : {2u, 5u, 10u, 15u})
            for (int i = 0; i < 20; ++i) {
                const cdouble z(u(rng), u(rng));
                const double ref = uncertainty_product(n, PhasePoint::from_z(z));
                for (const cdouble w : {z * cdouble(0.0, 1.0), -z, std::conj(z)})
                    CHECK(std::abs(uncertainty_product(n, PhasePoint::from_z(w)) - ref) <= 1e-12);
            }
    }
    SUBCASE("phase dependence vanishes in the flat region only") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi), rad(0.0, 2.0);
        for (int i = 0; i < 50; ++i) {
            const double r = rad(rng);
            const double ref = uncertainty_product(40, PhasePoint::from_z(r));
            CHECK(std::abs(uncertainty_product(40, PhasePoint::from_z(std::polar(r, phase(rng)))) - ref) <= 1e-10);
        }
        // finite N: B depends on Re z^2, so the product does depend on arg z
        const double on_axis = uncertainty_product(5, PhasePoint::from_z(2.0));
        const double diagonal = uncertainty_product(5, PhasePoint::from_z(std::polar(2.0, std::numbers::pi / 4)));
        CHECK(std::abs(diagonal - on_axis) > 0.1);
    }
    SUBCASE("N = 2 stays at or below 1/2") {
        for (double q = -30.0; q <= 30.0; q += 0.01)
            CHECK(uncertainty_product(2, PhasePoint(q, 0.0)) <= 0.5 + 1e-12);
        const double at10 = uncertainty_product(2, PhasePoint(10.0, 0.0));
        CHECK(at10 < 0.5);
        CHECK(at10 > uncertainty_product(2, PhasePoint(5.0, 0.0)));
        CHECK(uncertainty_product(2, PhasePoint(200.0, 0.0)) == doctest::Approx(0.5).epsilon(1e-3));
    }
    SUBCASE("flat region around the origin grows with N") {
        const auto flat_extent = [](std::size_t n) {
            double q = 0.0;
            while (std::abs(uncertainty_product(n, PhasePoint(q + 1e-3, 0.0)) - 0.5) <= 1e-6) q += 1e-3;
            return q;
        };
        const double e5 = flat_extent(5), e10 = flat_extent(10), e15 = flat_extent(15);
        CHECK(e5 < e10);
        CHECK(e10 < e15);
    }
}

TEST_CASE("symbol grids") {
    SUBCASE("uncertainty near the origin") {
        const auto g = symbol_grid(7, SymbolKind::Uncertainty, {-1e-4, 1e-4, 2}, {-1e-4, 1e-4, 2});
        REQUIRE(g.values.size() == 4);
        for (double v : g.values) CHECK(v == doctest::Approx(0.5).epsilon(1e-6));
    }
    SUBCASE("Q2 grid is even in q and in p") {
        const GridAxis axis{-6.0, 6.0, 25};
        const auto g = symbol_grid(12, SymbolKind::Q2, axis, axis);
        for (std::size_t i = 0; i < 25; ++i)
            for (std::size_t j = 0; j < 25; ++j) {
                CHECK(g.at(i, j) == doctest::Approx(g.at(24 - i, j)).epsilon(1e-12));
                CHECK(g.at(i, j) == doctest::Approx(g.at(i, 24 - j)).epsilon(1e-12));
            }
    }
    SUBCASE("H grid depends only on |z|") {
        const GridAxis axis{-4.0, 4.0, 17};
        const auto g = symbol_grid(5, SymbolKind::H, axis, axis);
        for (std::size_t i = 0; i < 17; ++i)
            for (std::size_t j = 0; j < 17; ++j) {
                const PhasePoint x(axis.at(i), axis.at(j));
                const double r = std::sqrt(2.0 * x.abs2());
                CHECK(g.at(i, j) == doctest::Approx(symbol_value(SymbolKind::H, 5, PhasePoint(r, 0.0))).epsilon(1e-12));
            }
    }
    SUBCASE("identical output for any thread count") {
        const GridAxis axis{-3.0, 3.0, 31};
        const auto a = symbol_grid(10, SymbolKind::Uncertainty, axis, axis, 1);
        const auto b = symbol_grid(10, SymbolKind::Uncertainty, axis, axis, 4);
        CHECK(a.values == b.values);
    }
    SUBCASE("invalid axes") {
        CHECK_THROWS_AS(symbol_grid(5, SymbolKind::H, {0.0, 1.0, 1}, {0.0, 1.0, 4}), DomainError);
        CHECK_THROWS_AS(symbol_grid(5, SymbolKind::H, {1.0, 1.0, 4}, {0.0, 1.0, 4}), DomainError);
    }
    CHECK(parse_symbol_kind("uncertainty") == SymbolKind::Uncertainty);
    CHECK_THROWS_AS(parse_symbol_kind("Q3"), DomainError);
}
