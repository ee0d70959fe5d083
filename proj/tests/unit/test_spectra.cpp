#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "fockq/errors.hpp"
#include "fockq/quantizer.hpp"
#include "fockq/spectra.hpp"
#include "oracles.hpp"

using namespace fockq;

TEST_CASE("characteristic polynomial") {
    CHECK(char_poly_recurrence(2, 0.0).value() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(hermite_value(2, 0.0).value() == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(hermite_value(3, 1.0).value() == doctest::Approx(-4.0).epsilon(1e-15));  // 8 - 12
    for (double z : {0.0, std::sqrt(1.5), -std::sqrt(1.5)}) CHECK(hermite_residual(3, z) <= 1e-15);

    SUBCASE("matches the extended-precision recurrence") {
        for (std::size_t n : {7u, 40u, 300u})
            for (double x : {0.3, -1.7, 5.0}) {
                const auto h = hermite_value(n, x);
                const oracle::big ref = oracle::hermite(n, oracle::big(x));
                const oracle::big ref_d = 2 * oracle::big(n) * oracle::hermite(n - 1, oracle::big(x));
                const double step = abs(ref / ref_d).convert_to<double>() / std::sqrt(2.0 * n);
                CHECK(hermite_residual(n, x) == doctest::Approx(step).epsilon(1e-11));
                // mantissa and exponent against log2 of the reference
                const double log2_ref = (log(abs(ref)) / log(oracle::big(2))).convert_to<double>();
                CHECK(std::log2(std::abs(h.value_mantissa)) + double(h.exponent) ==
                      doctest::Approx(log2_ref).epsilon(1e-12));
                if (n > 40) continue;
                CHECK((h.value() < 0) == (ref < 0));
                CHECK(h.value() == doctest::Approx(ref.convert_to<double>()).epsilon(1e-11));
                CHECK(h.derivative() == doctest::Approx(ref_d.convert_to<double>()).epsilon(1e-11));
            }
    }
    SUBCASE("no overflow for large N") {
        const auto v = char_poly_recurrence(100000, 12.5);
        CHECK(std::isfinite(v.value_mantissa));
        CHECK(v.value_mantissa != 0.0);
        CHECK(std::isfinite(hermite_residual(100000, 12.5)));
    }
}

TEST_CASE("full spectrum") {
    const auto s2 = eig_all(SymTridiagonal::position(2));
    REQUIRE(s2.size() == 2);
    CHECK(s2[0] == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-15));
    CHECK(s2[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

    const auto s3 = eig_all(SymTridiagonal::position(3));
    REQUIRE(s3.size() == 3);
    CHECK(std::abs(s3[1]) <= 1e-15);
    CHECK(s3[2] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));

    for (std::size_t n : {1u, 5u, 12u, 33u, 128u}) {
        const auto t = SymTridiagonal::position(n);
        const auto ql = eig_all(t);
        const auto dense = oracle::dense_position_spectrum(n);
        REQUIRE(ql.size() == n);
        CHECK(std::is_sorted(ql.begin(), ql.end()));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(ql[i] - dense[i]) <= 1e-12);
            CHECK(std::abs(ql[i] - kth_eigenvalue(t, i)) <= 1e-12);
            CHECK(std::abs(ql[i] + ql[n - 1 - i]) <= 1e-12);
        }
    }
    SUBCASE("momentum spectrum equals position spectrum") {
        const std::size_t n = 17;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(momentum_operator(n).entries(),
                                                          Eigen::EigenvaluesOnly);
        const auto q = eig_all(SymTridiagonal::position(n));
        const auto p = eig_all(momentum_tridiagonal(n));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(es.eigenvalues()(static_cast<Eigen::Index>(i)) - q[i]) <= 1e-12);
            CHECK(std::abs(p[i] - q[i]) <= 1e-12);
        }
    }
    SUBCASE("cap") {
        const std::size_t old = full_spectrum_cap();
        set_full_spectrum_cap(10);
        CHECK_THROWS_AS(eig_all(SymTridiagonal::position(11)), DomainError);
        set_full_spectrum_cap(old);
    }
    CHECK_THROWS_AS(eig_all(SymTridiagonal{{0.0, 0.0}, {}}), DimensionMismatch);
    CHECK(eig_all(SymTridiagonal::position(50)) == eig_all(SymTridiagonal::position(50)));
}

TEST_CASE("Sturm counts") {
    for (std::size_t n = 2; n <= 40; ++n) {
        const auto t = SymTridiagonal::position(n);
        const double g = std::sqrt(2.0 * n) + 2.0;
        CHECK(sturm_count(t, g) == n);
        CHECK(sturm_count(t, -g) == 0);
        if (n % 2 == 0) {
            CHECK(sturm_count(t, 0.0) == n / 2);
        } else {
            CHECK(sturm_count(t, -1e-9) == n / 2);
            CHECK(sturm_count(t, 1e-9) == n / 2 + 1);
        }
    }
}

TEST_CASE("extreme eigenvalues and sigma") {
    const auto e3 = extreme_eigenvalues(SymTridiagonal::position(3));
    CHECK(e3.lambda_min_pos == doctest::Approx(std::sqrt(1.5)).epsilon(1e-13));
    CHECK(e3.lambda_max == doctest::Approx(std::sqrt(1.5)).epsilon(1e-13));

    CHECK(spectrum_summary(2).sigma == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(spectrum_summary(3).sigma == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(std::abs(spectrum_summary(10).sigma - 4.713054) <= 1e-6);
    CHECK(std::abs(spectrum_summary(1000).sigma - 6.209670) <= 1e-6);

    const auto s10 = spectrum_summary(10);
    CHECK(s10.parity == Parity::Even);
    CHECK(s10.delta == doctest::Approx(2.0 * s10.lambda_min_pos));
    CHECK(s10.width == doctest::Approx(2.0 * s10.lambda_max));
    const auto s11 = spectrum_summary(11);
    CHECK(s11.parity == Parity::Odd);
    CHECK(s11.delta == doctest::Approx(s11.lambda_min_pos));

    SUBCASE("bisection agrees with QL") {
        for (std::size_t n : {4u, 9u, 64u, 301u}) {
            const auto ql = eig_all(SymTridiagonal::position(n));
            const auto e = extreme_eigenvalues(SymTridiagonal::position(n));
            CHECK(std::abs(e.lambda_max - ql.back()) <= 1e-12);
            CHECK(std::abs(e.lambda_min_pos - ql[(n + 1) / 2]) <= 1e-12);
        }
    }
    SUBCASE("monotone within each parity, below 2 pi") {
        std::vector<std::size_t> dims;
        for (std::size_t n = 2; n <= 200; ++n) dims.push_back(n);
        const auto rows = sigma_table(dims);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].dim == dims[i]);
            CHECK(rows[i].sigma < 2.0 * std::numbers::pi);
            if (i >= 2) CHECK(rows[i].sigma > rows[i - 2].sigma);
        }
    }
    SUBCASE("sigma_table is order preserving and thread independent") {
        const std::vector<std::size_t> dims{500, 3, 77, 2, 10000};
        const auto a = sigma_table(dims, 1e-13, 1);
        const auto b = sigma_table(dims, 1e-13, 3);
        for (std::size_t i = 0; i < dims.size(); ++i) {
            CHECK(a[i].dim == dims[i]);
            CHECK(a[i].sigma == b[i].sigma);
        }
    }
    CHECK_THROWS_AS(spectrum_summary(1), DomainError);
    CHECK_THROWS_AS(extreme_eigenvalues(SymTridiagonal{{1.0, 0.0}, {1.0}}), DomainError);
}

TEST_CASE("gaps and interlacing") {
    for (std::size_t n : {5u, 12u, 100u}) {
        const auto r = gap_properties(n);
        CHECK(r.ok());
        CHECK(r.worst_interlace_margin > 0.0);
    }
    SUBCASE("explicit spectra of orders 10 and 11") {
        const auto a = eig_all(SymTridiagonal::position(10));
        const auto b = eig_all(SymTridiagonal::position(11));
        for (std::size_t i = 0; i < 10; ++i) {
            CHECK(b[i] < a[i]);
            CHECK(a[i] < b[i + 1]);
        }
        CHECK(gap_properties(a, b).ok());
    }
    SUBCASE("detects a violation") {
        std::vector<double> a{-1.0, 0.6, 1.0}, b{-1.5, -0.5, 0.5, 1.5};
        CHECK_FALSE(gap_properties(a, b).interlacing_ok);
        std::vector<double> c{-1.0, -0.9, 0.9, 1.0}, d{-2.0, -0.95, 0.0, 0.95, 2.0};
        CHECK_FALSE(gap_properties(c, d).gaps_ok);
    }
    CHECK_THROWS_AS(gap_properties(std::vector<double>{1.0}, std::vector<double>{1.0}), DimensionMismatch);
}

TEST_CASE("semicircle") {
    for (std::size_t n : {10u, 1000u}) {
        const double r = std::sqrt(2.0 * n);
        CHECK(semicircle_density(n, -r, r).predicted == doctest::Approx(double(n)).epsilon(1e-12));
        CHECK(semicircle_density(n, 0.0, r).predicted == doctest::Approx(0.5 * n).epsilon(1e-12));
        CHECK_FALSE(semicircle_density(n, -r, r).clipped);
        const auto clipped = semicircle_density(n, -2.0 * r, 2.0 * r);
        CHECK(clipped.clipped);
        CHECK(clipped.predicted == doctest::Approx(double(n)).epsilon(1e-12));
    }
    const auto c = semicircle_compare(10000, -1.0, 1.0);
    CHECK(c.relative_deviation <= 0.02);
    CHECK(semicircle_compare(10000, -50.0, 60.0).relative_deviation <= 0.02);
    CHECK_THROWS_AS(semicircle_density(10, 1.0, 1.0), DomainError);
}

TEST_CASE("asymptotics") {
    const auto a = asymptotic_check(100000);
    CHECK(a.max_ratio >= 0.985);
    CHECK(a.max_ratio <= 1.0);
    CHECK(a.min_ratio == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(a.sigma_ratio < 1.0);
    CHECK(a.sigma_ratio > 0.99);
    CHECK_THROWS_AS(asymptotic_check(99), DomainError);
}
