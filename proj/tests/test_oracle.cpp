#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sharpcert/certificate.hpp"
#include "sharpcert/oracle.hpp"
#include "sharpcert/rational.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <vector>

using namespace sharpcert;

namespace {

// Exact-arithmetic replay of the ratio: sum|x_i| * max|x_i| / sum x_i^2
// over rationals.
Rational exact_ratio(const std::vector<Rational>& x) {
    Rational abs_sum(0), sq_sum(0), max_abs(0);
    for (const Rational& c : x) {
        abs_sum += c.abs();
        sq_sum += c * c;
        if (c.abs() > max_abs)
            max_abs = c.abs();
    }
    return abs_sum * max_abs / sq_sum;
}

}  // namespace

TEST_CASE("evaluate_ratio: worked examples") {
    CHECK(evaluate_ratio(std::vector<double>{1.0, 1.0}) == 1.0);
    CHECK(std::fabs(evaluate_ratio(std::vector<double>{1.0, 1.0 / 3, 1.0 / 3, 1.0 / 3}) - 1.5) <=
          1e-15);
    CHECK(evaluate_ratio(std::vector<double>{5.0, 0.0, 0.0}) == 1.0);

    CHECK_THROWS_AS(evaluate_ratio(std::vector<double>{0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(evaluate_ratio(std::vector<double>{}), std::domain_error);
    CHECK_THROWS_AS(
        evaluate_ratio(std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()}),
        std::domain_error);
    CHECK_THROWS_AS(
        evaluate_ratio(std::vector<double>{1.0, std::numeric_limits<double>::infinity()}),
        std::domain_error);
}

TEST_CASE("check_inequality: worked examples and the underflow guard") {
    CHECK(check_inequality(std::vector<double>{1.0, 1.0, 1.0}));

    // kernel vector at p=9: ratio within 1e-12 of phi_9 = 2
    std::vector<double> kernel9(9, 0.25);
    kernel9[0] = 1.0;
    CHECK(std::fabs(evaluate_ratio(kernel9) - 2.0) <= 1e-12);
    CHECK(check_inequality(kernel9));

    // tiny coordinates must not underflow to a zero denominator
    CHECK(check_inequality(std::vector<double>{1e-200, 1e-200}));
    CHECK(evaluate_ratio(std::vector<double>{1e-200, 1e-200}) == 1.0);
    // and huge ones must not overflow
    CHECK(evaluate_ratio(std::vector<double>{1e300, 1e300}) == 1.0);
}

TEST_CASE("ratio is scale invariant") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int iter = 0; iter < 50; ++iter) {
        const int p = 2 + static_cast<int>(rng() % 30);
        std::vector<double> x(static_cast<std::size_t>(p));
        for (double& c : x)
            c = normal(rng);
        const double base = evaluate_ratio(x);
        for (double alpha : {1e-100, 1e-3, 1.0, 1e3, 1e100}) {
            std::vector<double> scaled = x;
            for (double& c : scaled)
                c *= alpha;
            CHECK(std::fabs(evaluate_ratio(scaled) - base) <= 1e-12 * base);
        }
    }
}

TEST_CASE("ratio is permutation and sign invariant") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int iter = 0; iter < 50; ++iter) {
        const int p = 2 + static_cast<int>(rng() % 20);
        std::vector<double> x(static_cast<std::size_t>(p));
        for (double& c : x)
            c = normal(rng);
        const double base = evaluate_ratio(x);

        std::vector<double> mutated = x;
        std::shuffle(mutated.begin(), mutated.end(), rng);
        for (double& c : mutated)
            if (rng() & 1)
                c = -c;
        CHECK(std::fabs(evaluate_ratio(mutated) - base) <= 1e-15 * base);
    }

    // the same invariance holds exactly in an exact-arithmetic replay
    for (int iter = 0; iter < 50; ++iter) {
        const int p = 2 + static_cast<int>(rng() % 10);
        std::vector<Rational> x(static_cast<std::size_t>(p));
        bool nonzero = false;
        for (Rational& c : x) {
            c = sharpcert::testing::random_rational(rng);
            nonzero = nonzero || !c.is_zero();
        }
        if (!nonzero)
            x[0] = Rational(1);
        const Rational base = exact_ratio(x);

        std::vector<Rational> mutated = x;
        std::shuffle(mutated.begin(), mutated.end(), rng);
        for (Rational& c : mutated)
            if (rng() & 1)
                c = -c;
        CHECK(exact_ratio(mutated) == base);
    }
}

TEST_CASE("random_search: approaches phi_2 and never exceeds it") {
    const SearchReport report = random_search(2, 100000, 31415);
    const double phi2 = sharp_constant(2).to_double();
    CHECK(report.best_ratio >= 1.2071 - 1e-3);
    CHECK(report.best_ratio <= 1.20710679);
    CHECK(report.gap_to_phi >= -1e-9);
    CHECK(report.gap_to_phi == phi2 - report.best_ratio);
    CHECK(report.best_vector.size() == 2);
}

TEST_CASE("random_search: dimension 1 is identically 1") {
    const SearchReport report = random_search(1, 10, 7);
    CHECK(report.best_ratio == 1.0);
    CHECK(report.gap_to_phi == 0.0);
}

TEST_CASE("random_search: invalid arguments") {
    CHECK_THROWS_AS(random_search(0, 10, 1), std::domain_error);
    CHECK_THROWS_AS(random_search(2, 0, 1), std::domain_error);
}

TEST_CASE("random_search is deterministic across runs and thread counts") {
    const SearchReport a = random_search(16, 20000, 42);
    const SearchReport b = random_search(16, 20000, 42);
    CHECK(a == b);

    setenv("SHARPCERT_THREADS", "1", 1);
    const SearchReport single = random_search(16, 20000, 42);
    setenv("SHARPCERT_THREADS", "2", 1);
    const SearchReport dual = random_search(16, 20000, 42);
    setenv("SHARPCERT_THREADS", "7", 1);
    const SearchReport odd = random_search(16, 20000, 42);
    unsetenv("SHARPCERT_THREADS");

    CHECK(a == single);
    CHECK(a == dual);
    CHECK(a == odd);
    CHECK(render_search_report(a) == render_search_report(dual));

    // different seeds explore differently
    const SearchReport other = random_search(16, 20000, 43);
    CHECK(other.best_vector != a.best_vector);
}

TEST_CASE("no falsification at modest trial counts") {
    for (int p : {2, 3, 8, 64}) {
        const double phi = sharp_constant(p).to_double();
        const SearchReport report = random_search(p, 10000, 2718);
        CHECK(report.best_ratio <= phi + 1e-9);
    }
}

TEST_CASE("p=16 seed=42 regression baseline") {
    // Gap recorded after the first full run on this platform; the sample
    // stream is pinned to libstdc++'s normal_distribution, so a change
    // here means the search pipeline changed.
    const SearchReport report = random_search(16, 1000000, 42);
    CHECK(report.gap_to_phi >= -1e-9);
    CHECK(report.gap_to_phi == -4.440892098500626e-16);
}

TEST_CASE("near-kernel vector sits within 1e-9 of the bound") {
    const std::vector<double> x{1.0, 0.3333333333, 0.3333333333, 0.3333333333};
    const double gap = 1.5 - evaluate_ratio(x);
    CHECK(std::fabs(gap) <= 1e-9);
    CHECK(check_inequality(x));
}

TEST_CASE("raw samples follow the documented distribution") {
    // every tenth trial is the structured shape (1, t, ..., t)
    for (std::int64_t trial : {9, 19, 999}) {
        const auto v = raw_search_sample(8, trial, 5);
        CHECK(v[0] == 1.0);
        for (std::size_t i = 2; i < v.size(); ++i)
            CHECK(v[i] == v[1]);
        CHECK(v[1] >= 0.0);
        CHECK(v[1] <= 1.0);
    }
    // all samples are normalized to unit max-norm
    for (std::int64_t trial = 0; trial < 50; ++trial) {
        const auto v = raw_search_sample(8, trial, 5);
        double m = 0.0;
        for (double c : v)
            m = std::max(m, std::fabs(c));
        CHECK(m == 1.0);
    }
}

TEST_CASE("grid oracle: worked examples") {
    const GridResult g2 = grid_oracle(2, 10000);
    CHECK(std::fabs(g2.value - 1.2071067811865475) <= 1e-8);
    CHECK(std::fabs(g2.argmax - 0.41421356237309503) <= 1e-4);

    const GridResult g4 = grid_oracle(4, 10000);
    CHECK(std::fabs(g4.value - 1.5) <= 1e-8);
    CHECK(std::fabs(g4.argmax - 1.0 / 3) <= 1e-4);

    // endpoints only: max(f(0), f(1)) = 1
    const GridResult coarse = grid_oracle(2, 2);
    CHECK(coarse.value == 1.0);

    CHECK_THROWS_AS(grid_oracle(1, 100), std::domain_error);
    CHECK_THROWS_AS(grid_oracle(4, 1), std::domain_error);
}

TEST_CASE("grid oracle attains phi for all p up to 64") {
    for (int p = 2; p <= 64; ++p) {
        const double phi = sharp_constant(p).to_double();
        const GridResult g = grid_oracle(p, 100000);
        CHECK(g.value >= phi - 1e-8);
        CHECK(g.value <= phi + 1e-12);
        const double t_star = 1.0 / (1.0 + std::sqrt(static_cast<double>(p)));
        CHECK(std::fabs(g.argmax - t_star) <= 1e-4);
    }
}

TEST_CASE("numeric eigenvalues: worked examples") {
    const auto e4 = numeric_eigenvalues(4, 1.5);
    REQUIRE(e4.size() == 4);
    CHECK(std::fabs(e4[0] - 0.0) <= 1e-9);
    CHECK(std::fabs(e4[1] - 1.5) <= 1e-9);
    CHECK(std::fabs(e4[2] - 1.5) <= 1e-9);
    CHECK(std::fabs(e4[3] - 2.0) <= 1e-9);

    const auto e1 = numeric_eigenvalues(1, 3.0);
    REQUIRE(e1.size() == 1);
    CHECK(e1[0] == 2.0);

    const auto exact = spectrum_closed_form(3, QuadExt(2));
    const auto e3 = numeric_eigenvalues(3, 2.0);
    std::size_t j = 0;
    for (const auto& e : exact)
        for (int m = 0; m < e.multiplicity; ++m, ++j)
            CHECK(std::fabs(e3[j] - e.value.to_double()) <= 1e-9);
}

TEST_CASE("jacobi solver meets the residual contract") {
    std::mt19937_64 rng(90210);
    std::uniform_real_distribution<double> uniform(-2.0, 2.0);
    for (int n : {2, 5, 9, 16}) {
        for (int iter = 0; iter < 5; ++iter) {
            std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    const double v = uniform(rng);
                    a[static_cast<std::size_t>(i) * n + j] = v;
                    a[static_cast<std::size_t>(j) * n + i] = v;
                }

            const SymmetricEigen eig = jacobi_symmetric_eigen(a, n);
            double frob = 0.0;
            for (double e : a)
                frob += e * e;
            frob = std::sqrt(frob);

            for (int k = 0; k < n; ++k) {
                double residual = 0.0;
                for (int i = 0; i < n; ++i) {
                    double av = 0.0;
                    for (int j = 0; j < n; ++j)
                        av += a[static_cast<std::size_t>(i) * n + j] *
                              eig.vectors[static_cast<std::size_t>(j) * n + k];
                    const double r =
                        av - eig.values[static_cast<std::size_t>(k)] *
                                 eig.vectors[static_cast<std::size_t>(i) * n + k];
                    residual += r * r;
                }
                CHECK(std::sqrt(residual) <= 1e-10 * frob);
            }
            CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
        }
    }
}
