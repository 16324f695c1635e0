#pragma once

// Row-stochastic matrices and the disagreement semi-norm.
//
// The vector semi-norm is the ∞-distance to the consensus line R·1, which is
// half the spread (max - min). The induced matrix semi-norm of a stochastic
// matrix is the coefficient of ergodicity
//     delta(A) = 1/2 max_{i,i'} sum_j |A(i,j) - A(i',j)|.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stochprod/digraph.hpp"
#include "stochprod/error.hpp"

namespace stochprod {

struct ValidationTolerances {
    double row = 1e-9;  ///< allowed |row sum - 1|
    double neg = 1e-12; ///< entries in [-neg, 0) are clamped to 0
};

/// Dense n x n row-stochastic matrix. Only constructible through
/// validation, so every instance satisfies the invariants.
class StochasticMatrix {
public:
    static StochasticMatrix identity(std::size_t n) {
        if (n == 0)
            throw DimensionError("stochastic matrix needs n >= 1");
        StochasticMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            m.data_[i * n + i] = 1.0;
        return m;
    }

    std::size_t size() const noexcept { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_).subspan(i * n_, n_);
    }

    /// Row-major entries.
    std::span<const double> data() const noexcept { return data_; }

    friend bool operator==(const StochasticMatrix&, const StochasticMatrix&) = default;

private:
    explicit StochasticMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    friend StochasticMatrix validate_stochastic(std::size_t, std::span<const double>,
                                                const ValidationTolerances&);

    std::size_t n_;
    std::vector<double> data_;
};

/// Validates row-major data of an n x n matrix: clamps tiny negatives,
/// rejects larger ones, checks row sums and renormalizes rows to sum to 1.
inline StochasticMatrix validate_stochastic(std::size_t n, std::span<const double> raw,
                                            const ValidationTolerances& tol = {}) {
    if (n == 0)
        throw ShapeError("matrix must have at least one row", 0);
    if (raw.size() != n * n)
        throw ShapeError("expected " + std::to_string(n * n) + " entries, got " +
                             std::to_string(raw.size()),
                         0);
    StochasticMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double v = raw[i * n + j];
            if (!std::isfinite(v))
                throw ShapeError("non-finite entry in row " + std::to_string(i + 1), i);
            if (v < 0.0) {
                if (v < -tol.neg)
                    throw NegativityError("negative entry in row " + std::to_string(i + 1) +
                                              ", column " + std::to_string(j + 1),
                                          i);
                v = 0.0;
            }
            m.data_[i * n + j] = v;
            sum += v;
        }
        if (std::abs(sum - 1.0) > tol.row)
            throw StochasticityError("row " + std::to_string(i + 1) + " sums to " +
                                         std::to_string(sum),
                                     i);
        for (std::size_t j = 0; j < n; ++j)
            m.data_[i * n + j] /= sum;
    }
    return m;
}

/// Square nested-vector input; rows of unequal length are a shape error.
inline StochasticMatrix validate_stochastic(const std::vector<std::vector<double>>& raw,
                                            const ValidationTolerances& tol = {}) {
    const std::size_t n = raw.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (raw[i].size() != n)
            throw ShapeError("matrix is not square (row " + std::to_string(i + 1) + ")", i);
        flat.insert(flat.end(), raw[i].begin(), raw[i].end());
    }
    return validate_stochastic(n, flat, tol);
}

inline StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b) {
    const std::size_t n = a.size();
    if (b.size() != n)
        throw DimensionError("multiply: dimensions differ");
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < n; ++m) {
            const double aim = a(i, m);
            if (aim == 0.0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                out[i * n + j] += aim * b(m, j);
        }
    return validate_stochastic(n, out);
}

/// G(A): edge (i,j) iff A(i,j) > tol_pos.
inline Digraph digraph_of(const StochasticMatrix& a, double tol_pos = 0.0) {
    const std::size_t n = a.size();
    Digraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a(i, j) > tol_pos)
                g.add_edge(i, j);
    return g;
}

/// Smallest entry exceeding tol_pos across all matrices.
inline std::optional<double> min_positive_entry(std::span<const StochasticMatrix> matrices,
                                                double tol_pos = 0.0) {
    std::optional<double> best;
    for (const auto& m : matrices)
        for (double v : m.data())
            if (v > tol_pos && (!best || v < *best))
                best = v;
    return best;
}

inline double vector_seminorm(std::span<const double> x) {
    if (x.empty())
        throw DimensionError("vector_seminorm of an empty vector");
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    return (*hi - *lo) / 2.0;
}

inline double matrix_seminorm(const StochasticMatrix& a) {
    const std::size_t n = a.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) {
            double l1 = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                l1 += std::abs(a(i, j) - a(k, j));
            worst = std::max(worst, l1);
        }
    return std::min(1.0, worst / 2.0);
}

inline std::vector<double> apply(const StochasticMatrix& a, std::span<const double> x) {
    const std::size_t n = a.size();
    if (x.size() != n)
        throw DimensionError("apply: vector length differs from matrix dimension");
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

} // namespace stochprod
