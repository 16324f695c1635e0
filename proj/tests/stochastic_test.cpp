#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "stochprod/stochastic.hpp"
#include "test_support.hpp"

namespace sp = stochprod;
using sp::testing::matrix;

TEST(Validate, AcceptsIdentity) {
    const auto a = matrix({{1, 0}, {0, 1}});
    EXPECT_EQ(a, sp::StochasticMatrix::identity(2));
}

TEST(Validate, RejectsBadRowSum) {
    try {
        matrix({{0.5, 0.6}, {0.5, 0.5}});
        FAIL() << "expected a stochasticity error";
    } catch (const sp::StochasticityError& e) {
        EXPECT_EQ(e.row(), 0u);
    }
}

TEST(Validate, ClampsTinyNegatives) {
    const std::vector<double> raw{1.0, -1e-12, 0.0, 1.0};
    const auto a = sp::validate_stochastic(2, raw, {1e-9, 1e-10});
    EXPECT_EQ(a, sp::StochasticMatrix::identity(2));
}

TEST(Validate, RejectsLargeNegativesNonSquareAndNonFinite) {
    const std::vector<double> neg{1.1, -0.1, 0.0, 1.0};
    EXPECT_THROW(sp::validate_stochastic(2, neg, {1e-9, 1e-10}), sp::NegativityError);
    EXPECT_THROW(matrix({{1.0, 0.0}, {1.0}}), sp::ShapeError);
    EXPECT_THROW(sp::validate_stochastic(2, std::vector<double>{1, 0, 0}), sp::ShapeError);
    const std::vector<double> inf{INFINITY, 0, 0, 1};
    EXPECT_THROW(sp::validate_stochastic(2, inf), sp::ShapeError);
}

TEST(Validate, RenormalizesRowsWithinTolerance) {
    const auto a = sp::validate_stochastic(2, std::vector<double>{0.5 + 4e-10, 0.5, 0.25, 0.75});
    EXPECT_NEAR(a(0, 0) + a(0, 1), 1.0, 1e-15);
}

TEST(Multiply, Examples) {
    const auto a = matrix({{0.25, 0.75}, {0.5, 0.5}});
    const auto id = sp::StochasticMatrix::identity(2);
    EXPECT_EQ(sp::multiply(a, id), a);
    const auto swap = matrix({{0, 1}, {1, 0}});
    EXPECT_EQ(sp::multiply(swap, swap), id);
    const auto half = matrix({{0.5, 0.5}, {0.5, 0.5}});
    EXPECT_EQ(sp::multiply(half, id), half);
    EXPECT_THROW(sp::multiply(a, sp::StochasticMatrix::identity(3)), sp::DimensionError);
}

TEST(DigraphOf, Examples) {
    EXPECT_EQ(sp::digraph_of(sp::StochasticMatrix::identity(3)),
              sp::Digraph(3, {{0, 0}, {1, 1}, {2, 2}}));
    EXPECT_EQ(sp::digraph_of(matrix({{0.5, 0.5}, {0.5, 0.5}})), sp::complete_digraph(2));
    EXPECT_EQ(sp::digraph_of(matrix({{0, 1}, {1, 0}})), sp::Digraph(2, {{0, 1}, {1, 0}}));
}

TEST(DigraphOf, ThresholdIsConfigurable) {
    const auto a = matrix({{0.999, 0.001}, {0.5, 0.5}});
    EXPECT_EQ(sp::digraph_of(a, 0.01), sp::Digraph(2, {{0, 0}, {1, 0}, {1, 1}}));
}

TEST(MinPositiveEntry, Examples) {
    const std::vector<sp::StochasticMatrix> id{sp::StochasticMatrix::identity(2)};
    EXPECT_EQ(sp::min_positive_entry(id), 1.0);
    const std::vector<sp::StochasticMatrix> one{matrix({{0.25, 0.75}, {0.5, 0.5}})};
    EXPECT_EQ(sp::min_positive_entry(one), 0.25);
    const std::vector<sp::StochasticMatrix> two{matrix({{0.3, 0.7}, {0.5, 0.5}}),
                                                matrix({{0.2, 0.8}, {0.6, 0.4}})};
    EXPECT_DOUBLE_EQ(*sp::min_positive_entry(two), 0.2);
}

TEST(VectorSeminorm, Examples) {
    EXPECT_EQ(sp::vector_seminorm(std::vector<double>{1, 1, 1}), 0.0);
    EXPECT_EQ(sp::vector_seminorm(std::vector<double>{0, 2}), 1.0);
    EXPECT_EQ(sp::vector_seminorm(std::vector<double>{-1, 0, 3}), 2.0);
    EXPECT_THROW(sp::vector_seminorm(std::vector<double>{}), sp::DimensionError);
}

TEST(VectorSeminorm, ShiftSearchOracleAgrees) {
    // Frozen from the shift-search oracle: (0,2) -> 1, (-1,0,3) -> 2.
    EXPECT_NEAR(sp::testing::seminorm_by_shift_search({0, 2}), 1.0, 1e-12);
    EXPECT_NEAR(sp::testing::seminorm_by_shift_search({-1, 0, 3}), 2.0, 1e-12);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int t = 0; t < 200; ++t) {
        std::vector<double> x(1 + t % 7);
        for (auto& v : x)
            v = g(rng);
        EXPECT_NEAR(sp::vector_seminorm(x), sp::testing::seminorm_by_shift_search(x), 1e-12);
    }
}

TEST(VectorSeminorm, HomogeneityAndTriangleInequality) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 1 + t % 9;
        std::vector<double> x(n), y(n), sum(n), scaled(n);
        const double c = 3.0 * g(rng);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = g(rng);
            y[i] = g(rng);
            sum[i] = x[i] + y[i];
            scaled[i] = c * x[i];
        }
        const double nx = sp::vector_seminorm(x);
        EXPECT_NEAR(sp::vector_seminorm(scaled), std::abs(c) * nx,
                    1e-12 * std::max(1.0, std::abs(c) * nx));
        EXPECT_LE(sp::vector_seminorm(sum), nx + sp::vector_seminorm(y) + 1e-12);
    }
}

TEST(MatrixSeminorm, Examples) {
    EXPECT_EQ(sp::matrix_seminorm(matrix({{0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}})),
              0.0);
    const auto id = sp::StochasticMatrix::identity(2);
    EXPECT_EQ(sp::matrix_seminorm(id), 1.0);
    EXPECT_EQ(sp::testing::seminorm_by_binary_vectors(id), 1.0);

    const auto lazy = matrix({{0.75, 0.25}, {0.25, 0.75}});
    EXPECT_DOUBLE_EQ(sp::matrix_seminorm(lazy), 0.5);
    EXPECT_DOUBLE_EQ(sp::testing::seminorm_by_binary_vectors(lazy), 0.5);
    EXPECT_LE(sp::matrix_seminorm(lazy), 1.0 - 2 * 0.25);
}

TEST(MatrixSeminorm, EqualsBinaryVectorSupremum) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 + t % 9;
        const auto a = sp::testing::random_stochastic(n, rng, (t % 3) * 0.3);
        EXPECT_NEAR(sp::matrix_seminorm(a), sp::testing::seminorm_by_binary_vectors(a), 1e-12);
    }
}

TEST(MatrixSeminorm, SubmultiplicativeAndBoundedByLowerBound) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 + t % 6;
        const auto a = sp::testing::random_stochastic(n, rng, 0.3);
        const auto b = sp::testing::random_stochastic(n, rng, 0.3);
        EXPECT_LE(sp::matrix_seminorm(sp::multiply(a, b)),
                  sp::matrix_seminorm(a) * sp::matrix_seminorm(b) + 1e-12);

        const double alpha = u(rng) / static_cast<double>(n);
        const auto c = sp::testing::random_stochastic(n, rng, 0.0, alpha);
        EXPECT_LE(sp::matrix_seminorm(c), 1.0 - static_cast<double>(n) * alpha + 1e-12);
    }
}

TEST(Apply, Examples) {
    const std::vector<double> x{0.3, -2.0};
    EXPECT_EQ(sp::apply(sp::StochasticMatrix::identity(2), x), x);
    const auto rank1 = matrix({{0.25, 0.75}, {0.25, 0.75}});
    const auto y = sp::apply(rank1, x);
    EXPECT_DOUBLE_EQ(y[0], 0.25 * 0.3 - 0.75 * 2.0);
    EXPECT_EQ(y[0], y[1]);
    const auto z = sp::apply(matrix({{0.9, 0.1}, {0.1, 0.9}}), std::vector<double>{0, 1});
    EXPECT_DOUBLE_EQ(z[0], 0.1);
    EXPECT_DOUBLE_EQ(z[1], 0.9);
    EXPECT_THROW(sp::apply(rank1, std::vector<double>{1, 2, 3}), sp::DimensionError);
}

TEST(Apply, DoesNotExpandInfinityNormOrSeminorm) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 1 + t % 8;
        const auto a = sp::testing::random_stochastic(n, rng, 0.4);
        std::vector<double> x(n);
        for (auto& v : x)
            v = g(rng);
        const auto y = sp::apply(a, x);
        double xmax = 0, ymax = 0;
        for (std::size_t i = 0; i < n; ++i) {
            xmax = std::max(xmax, std::abs(x[i]));
            ymax = std::max(ymax, std::abs(y[i]));
        }
        EXPECT_LE(ymax, xmax + 1e-12);
        EXPECT_LE(sp::vector_seminorm(y), sp::matrix_seminorm(a) * sp::vector_seminorm(x) + 1e-12);
    }
}

TEST(DigraphOf, ProductPatternIsWalkProduct) {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 + t % 5;
        const auto a = sp::testing::random_stochastic(n, rng, 0.5, 1e-6);
        const auto b = sp::testing::random_stochastic(n, rng, 0.5, 1e-6);
        const auto expected = sp::testing::bool_product(sp::testing::adjacency(sp::digraph_of(a)),
                                                        sp::testing::adjacency(sp::digraph_of(b)));
        EXPECT_EQ(sp::testing::adjacency(sp::digraph_of(sp::multiply(a, b))), expected);
    }
}
