#pragma once

// Backward products P(k) = A(k)...A(1), P(k,l) = A(k)...A(l+1), the
// column supports S_j(k) with their minima mu_j(k), and the contraction
// certificate ||P(K)|| <= 1 - n * alpha^(n(W(n)+1)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "stochprod/digraph.hpp"
#include "stochprod/error.hpp"
#include "stochprod/hypotheses.hpp"
#include "stochprod/stochastic.hpp"

namespace stochprod {

/// Slack on inequalities that hold exactly in real arithmetic.
inline constexpr double exact_slack = 1e-12;
/// Slack on inequalities compounded over the sequence length.
inline constexpr double compound_slack = 1e-9;

/// P(k,l) for 0 <= l <= k <= L; P(k,k) is the identity.
inline StochasticMatrix partial_product(const MatrixSequence& seq, std::size_t l,
                                        std::size_t k) {
    if (l > k || k > seq.length())
        throw IndexError("partial_product: need 0 <= l <= k <= " +
                         std::to_string(seq.length()));
    auto p = StochasticMatrix::identity(seq.dimension());
    for (std::size_t m = l + 1; m <= k; ++m)
        p = multiply(seq.at(m), p);
    return p;
}

/// P(0), P(1), ..., P(L).
inline std::vector<StochasticMatrix> backward_products(const MatrixSequence& seq) {
    std::vector<StochasticMatrix> out{StochasticMatrix::identity(seq.dimension())};
    out.reserve(seq.length() + 1);
    for (std::size_t k = 1; k <= seq.length(); ++k)
        out.push_back(multiply(seq.at(k), out.back()));
    return out;
}

struct ProductState {
    std::size_t k;
    StochasticMatrix product;
    double seminorm;
};

struct SupportProfile {
    /// support[j]: sorted rows i with P(i,j) > tol_pos.
    std::vector<std::vector<std::size_t>> support;
    /// mu[j]: smallest P(i,j) over support[j]; nullopt if the support is empty.
    std::vector<std::optional<double>> mu;
};

inline SupportProfile support_profile(const StochasticMatrix& p, double tol_pos = 0.0) {
    const std::size_t n = p.size();
    SupportProfile out{std::vector<std::vector<std::size_t>>(n),
                       std::vector<std::optional<double>>(n)};
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const double v = p(i, j);
            if (v <= tol_pos)
                continue;
            out.support[j].push_back(i);
            if (!out.mu[j] || v < *out.mu[j])
                out.mu[j] = v;
        }
    return out;
}

/// log of alpha^(n(W(n)+1)).
inline double log_entry_floor(double alpha, std::size_t n) {
    if (!(alpha > 0.0))
        throw ContractViolation("alpha must be positive");
    return static_cast<double>(n * (wielandt_bound(n) + 1)) * std::log(alpha);
}

namespace detail {

// Every entry strictly positive and at least the floor up to relative
// slack. The floor may underflow to 0 for large n; strict positivity keeps
// the test meaningful then, since any positive double exceeds it.
inline bool saturated(const StochasticMatrix& p, double floor, double tol_pos) {
    const double threshold = floor * (1.0 - exact_slack);
    return std::all_of(p.data().begin(), p.data().end(),
                       [&](double v) { return v > tol_pos && v >= threshold; });
}

} // namespace detail

/// Least K in [1, L] with every entry of P(K) at least alpha^(n(W(n)+1)).
inline std::optional<std::size_t> find_saturation_K(const MatrixSequence& seq, double alpha,
                                                    double tol_pos = 0.0) {
    const double floor = std::exp(log_entry_floor(alpha, seq.dimension()));
    auto p = StochasticMatrix::identity(seq.dimension());
    for (std::size_t k = 1; k <= seq.length(); ++k) {
        p = multiply(seq.at(k), p);
        if (detail::saturated(p, floor, tol_pos))
            return k;
    }
    return std::nullopt;
}

/// Least K >= find_saturation_K such that every full block
/// P(mK, (m-1)K), m = 1..floor(L/K), is saturated. K = L always qualifies
/// once P(K0) is saturated, so this exists whenever the scan succeeds.
inline std::optional<std::size_t> find_block_saturation_K(const MatrixSequence& seq,
                                                          double alpha,
                                                          double tol_pos = 0.0) {
    const auto first = find_saturation_K(seq, alpha, tol_pos);
    if (!first)
        return std::nullopt;
    const double floor = std::exp(log_entry_floor(alpha, seq.dimension()));
    for (std::size_t K = *first; K <= seq.length(); ++K) {
        bool ok = true;
        for (std::size_t m = 1; ok && m * K <= seq.length(); ++m)
            ok = detail::saturated(partial_product(seq, (m - 1) * K, m * K), floor, tol_pos);
        if (ok)
            return K;
    }
    return std::nullopt;
}

struct ConvergenceCertificate {
    std::size_t n;
    double alpha;
    std::size_t wielandt;
    /// Least K with P(K) saturated.
    std::size_t saturation_index;
    /// Block length of the envelope; every full K-block of the prefix is saturated.
    std::size_t K;
    double log_entry_floor;
    /// alpha^(n(W(n)+1)); may underflow to 0 for large n.
    double entry_floor;
    /// 1 - n * entry_floor; rounds to 1 when n * entry_floor < 2^-53.
    double contraction;
    /// log1p(-n * entry_floor), exact even when `contraction` rounds to 1.
    double log_contraction;
    /// ||P(K)||.
    double measured_seminorm;

    /// contraction^floor(k / K).
    double envelope(double k) const {
        return std::exp(std::floor(k / static_cast<double>(K)) * log_contraction);
    }
};

/// Re-runs the hypothesis checks, refuses if any fails, and otherwise
/// builds the certificate. nullopt when no saturated product occurs within
/// the prefix. `alpha_override` must be a lower bound on the positive entries.
inline std::optional<ConvergenceCertificate>
contraction_certificate(const MatrixSequence& seq, std::optional<double> alpha_override = {},
                        double tol_pos = 0.0) {
    const auto report = analyze(seq, {1}, tol_pos);
    if (!report.all_conditions_hold()) {
        std::string why;
        for (auto c : report.violations)
            why += std::string(why.empty() ? "" : ",") + to_string(c);
        throw RefusedCertification("hypotheses violated: " + why);
    }
    const double alpha = alpha_override.value_or(*report.alpha);
    if (!(alpha > 0.0) || alpha > *report.alpha)
        throw ContractViolation("alpha must lie in (0, smallest positive entry]");

    const std::size_t n = seq.dimension();
    const auto first = find_saturation_K(seq, alpha, tol_pos);
    if (!first)
        return std::nullopt;
    const auto K = find_block_saturation_K(seq, alpha, tol_pos);

    ConvergenceCertificate c{};
    c.n = n;
    c.alpha = alpha;
    c.wielandt = wielandt_bound(n);
    c.saturation_index = *first;
    c.K = *K;
    c.log_entry_floor = log_entry_floor(alpha, n);
    c.entry_floor = std::exp(c.log_entry_floor);
    c.contraction = 1.0 - static_cast<double>(n) * c.entry_floor;
    c.log_contraction = std::log1p(-static_cast<double>(n) * c.entry_floor);
    c.measured_seminorm = matrix_seminorm(partial_product(seq, 0, c.K));
    if (c.measured_seminorm > c.contraction + exact_slack)
        throw Error("certificate self-check failed: ||P(K)|| exceeds the contraction bound");
    return c;
}

struct ToleranceRun {
    /// k* with ||P(k*)|| <= epsilon, or nullopt if the prefix ran out.
    std::optional<std::size_t> stopped_at;
    ProductState state;
    /// Column-wise midrange of P(k*); within epsilon of every row in ∞-distance.
    std::optional<std::vector<double>> consensus_row;
    /// ||P(k)|| for k = 0..state.k.
    std::vector<double> seminorms;
};

inline ToleranceRun run_to_tolerance(const MatrixSequence& seq, double epsilon) {
    if (!(epsilon > 0.0))
        throw ContractViolation("epsilon must be positive");
    const std::size_t n = seq.dimension();
    auto p = StochasticMatrix::identity(n);
    ToleranceRun run{std::nullopt, {0, p, matrix_seminorm(p)}, std::nullopt, {}};
    run.seminorms.push_back(run.state.seminorm);
    for (std::size_t k = 0;; ++k) {
        if (run.state.seminorm <= epsilon) {
            run.stopped_at = k;
            std::vector<double> row(n);
            for (std::size_t j = 0; j < n; ++j) {
                double lo = run.state.product(0, j), hi = lo;
                for (std::size_t i = 1; i < n; ++i) {
                    lo = std::min(lo, run.state.product(i, j));
                    hi = std::max(hi, run.state.product(i, j));
                }
                row[j] = (lo + hi) / 2.0;
            }
            run.consensus_row = std::move(row);
            return run;
        }
        if (k == seq.length())
            return run;
        p = multiply(seq.at(k + 1), run.state.product);
        run.state = {k + 1, p, matrix_seminorm(p)};
        run.seminorms.push_back(run.state.seminorm);
    }
}

/// ||P(k) x0|| for k = 0..L, iterating x(k) = A(k) x(k-1).
inline std::vector<double> disagreement_trajectory(const MatrixSequence& seq,
                                                   std::span<const double> x0) {
    if (x0.size() != seq.dimension())
        throw DimensionError("initial vector length differs from matrix dimension");
    std::vector<double> x(x0.begin(), x0.end());
    std::vector<double> out{vector_seminorm(x)};
    out.reserve(seq.length() + 1);
    for (const auto& a : seq.items()) {
        x = stochprod::apply(a, x);
        out.push_back(vector_seminorm(x));
    }
    return out;
}

/// Per-column first-support indices k_i (least k with i in S_j(k)) and the
/// lower bound mu_j(k_m) >= alpha^((m-1)(W(n)+1)) along the sorted k_m.
struct ColumnSupportGrowth {
    std::vector<std::optional<std::size_t>> first_support;
    std::vector<std::size_t> sorted_entry_times;
    bool bound_holds = true;
};

inline std::vector<ColumnSupportGrowth> support_growth_diagnostic(const MatrixSequence& seq,
                                                                  double alpha,
                                                                  double tol_pos = 0.0) {
    const std::size_t n = seq.dimension();
    const double log_alpha = std::log(alpha);
    const auto w = static_cast<double>(wielandt_bound(n));
    const auto products = backward_products(seq);
    std::vector<SupportProfile> profiles;
    profiles.reserve(products.size());
    for (const auto& p : products)
        profiles.push_back(support_profile(p, tol_pos));

    std::vector<ColumnSupportGrowth> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto& col = out[j];
        col.first_support.assign(n, std::nullopt);
        for (std::size_t k = 0; k < profiles.size(); ++k)
            for (std::size_t i : profiles[k].support[j])
                if (!col.first_support[i])
                    col.first_support[i] = k;
        for (const auto& t : col.first_support)
            if (t)
                col.sorted_entry_times.push_back(*t);
        std::sort(col.sorted_entry_times.begin(), col.sorted_entry_times.end());
        for (std::size_t m = 0; m < col.sorted_entry_times.size(); ++m) {
            const auto& mu = profiles[col.sorted_entry_times[m]].mu[j];
            const double bound = std::exp(static_cast<double>(m) * (w + 1.0) * log_alpha);
            if (!mu || *mu < bound * (1.0 - exact_slack))
                col.bound_holds = false;
        }
    }
    return out;
}

} // namespace stochprod
