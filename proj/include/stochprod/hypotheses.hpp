#pragma once

// Checks of the four convergence hypotheses for backward products, run on
// a finite prefix A(1), ..., A(L):
//   1. positive entries are bounded below (reported as the realized alpha),
//   2. eventual positivity of sum_{k'=k}^{K} A(k')...A(k),
//   3. every factor is completely reducible,
//   4. an aperiodic sink-free digraph H is contained in every G(A(k)).

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stochprod/digraph.hpp"
#include "stochprod/error.hpp"
#include "stochprod/stochastic.hpp"

namespace stochprod {

/// A(1), ..., A(L), L >= 1, all of one dimension. Indexing is 1-based.
class MatrixSequence {
public:
    explicit MatrixSequence(std::vector<StochasticMatrix> items) : items_(std::move(items)) {
        if (items_.empty())
            throw DimensionError("matrix sequence must contain at least one matrix");
        for (const auto& m : items_)
            if (m.size() != items_.front().size())
                throw DimensionError("matrix sequence mixes dimensions");
    }

    std::size_t dimension() const noexcept { return items_.front().size(); }
    std::size_t length() const noexcept { return items_.size(); }

    /// A(k) for 1 <= k <= L.
    const StochasticMatrix& at(std::size_t k) const {
        if (k == 0 || k > items_.size())
            throw IndexError("factor index " + std::to_string(k) + " outside [1, " +
                             std::to_string(items_.size()) + "]");
        return items_[k - 1];
    }

    std::span<const StochasticMatrix> items() const noexcept { return items_; }

    std::vector<Digraph> digraphs(double tol_pos = 0.0) const {
        std::vector<Digraph> out;
        out.reserve(items_.size());
        for (const auto& m : items_)
            out.push_back(digraph_of(m, tol_pos));
        return out;
    }

private:
    std::vector<StochasticMatrix> items_;
};

/// Entry k-1 tells whether A(k) is completely reducible.
inline std::vector<bool> check_complete_reducibility(const MatrixSequence& seq,
                                                     double tol_pos = 0.0) {
    std::vector<bool> out;
    out.reserve(seq.length());
    for (const auto& m : seq.items())
        out.push_back(is_completely_reducible_pattern(digraph_of(m, tol_pos)));
    return out;
}

struct CoreSearch {
    /// Common subgraph of all factor digraphs.
    Digraph common{0};
    /// Period of the component of `common` holding each node.
    std::vector<std::size_t> node_periods;
    /// Nodes whose component in `common` is not aperiodic.
    std::vector<std::size_t> offending_nodes;
    /// Intra-component edges of `common`, present iff offending_nodes is empty.
    std::optional<Digraph> core;
};

/// Any cycle of a common subgraph lies inside one component of the
/// intersection, so its length is a multiple of that component's period.
/// A core therefore exists iff every component of the intersection has
/// period exactly 1, and the intra-component edges then form one.
inline CoreSearch find_aperiodic_core(const MatrixSequence& seq, double tol_pos = 0.0) {
    const auto graphs = seq.digraphs(tol_pos);
    CoreSearch out{intersection(graphs), {}, {}, std::nullopt};
    const auto ap = is_aperiodic(out.common);
    const std::size_t n = seq.dimension();
    out.node_periods.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        out.node_periods[v] = ap.periods[ap.partition.component_of[v]];
        if (out.node_periods[v] != 1)
            out.offending_nodes.push_back(v);
    }
    if (out.offending_nodes.empty()) {
        Digraph h(n);
        for (const auto& e : out.common.edges())
            if (ap.partition.component_of[e.from] == ap.partition.component_of[e.to])
                h.add_edge(e.from, e.to);
        out.core = std::move(h);
    }
    return out;
}

/// Least K in [k, L] with sum_{k'=k}^{K} A(k')...A(k) entrywise > tol_pos.
inline std::optional<std::size_t> check_eventual_positivity(const MatrixSequence& seq,
                                                            std::size_t k,
                                                            double tol_pos = 0.0) {
    if (k == 0 || k > seq.length())
        throw IndexError("eventual positivity start " + std::to_string(k) +
                         " outside [1, " + std::to_string(seq.length()) + "]");
    const std::size_t n = seq.dimension();
    std::vector<double> sum(n * n, 0.0);
    auto product = seq.at(k);
    for (std::size_t kk = k;; ++kk) {
        if (kk > k)
            product = multiply(seq.at(kk), product);
        bool all_positive = true;
        const auto p = product.data();
        for (std::size_t e = 0; e < n * n; ++e) {
            sum[e] += p[e];
            all_positive = all_positive && sum[e] > tol_pos;
        }
        if (all_positive)
            return kk;
        if (kk == seq.length())
            return std::nullopt;
    }
}

/// Boolean form of the eventual positivity check: union of the patterns of
/// the partial products. Agrees with the numeric form for tol_pos = 0.
inline std::optional<std::size_t> check_eventual_positivity_pattern(const MatrixSequence& seq,
                                                                    std::size_t k) {
    if (k == 0 || k > seq.length())
        throw IndexError("eventual positivity start outside the sequence");
    const std::size_t n = seq.dimension();
    Digraph reach(n);
    for (std::size_t i = 0; i < n; ++i)
        reach.add_edge(i, i);
    Digraph seen(n);
    for (std::size_t kk = k; kk <= seq.length(); ++kk) {
        reach = walk_product(digraph_of(seq.at(kk)), reach);
        for (const auto& e : reach.edges())
            seen.add_edge(e.from, e.to);
        if (seen.edge_count() == n * n)
            return kk;
    }
    return std::nullopt;
}

enum class Condition {
    lower_bound = 1,
    eventual_positivity = 2,
    complete_reducibility = 3,
    aperiodic_core = 4,
};

inline const char* to_string(Condition c) {
    switch (c) {
    case Condition::lower_bound:
        return "lower-bound";
    case Condition::eventual_positivity:
        return "eventual-positivity";
    case Condition::complete_reducibility:
        return "complete-reducibility";
    case Condition::aperiodic_core:
        return "aperiodic-core";
    }
    return "unknown";
}

struct HypothesisReport {
    std::optional<double> alpha;
    /// 1-based indices k with A(k) not completely reducible.
    std::vector<std::size_t> reducibility_failures;
    CoreSearch core;
    /// start k -> least K, or nullopt if not reached within the prefix.
    std::map<std::size_t, std::optional<std::size_t>> eventual_positivity;
    /// Violated conditions in increasing order; empty iff all hold.
    std::vector<Condition> violations;

    bool all_conditions_hold() const noexcept { return violations.empty(); }
};

/// Runs all four checks. `positivity_starts` defaults to {1}.
inline HypothesisReport analyze(const MatrixSequence& seq,
                                const std::set<std::size_t>& positivity_starts = {1},
                                double tol_pos = 0.0) {
    HypothesisReport r;
    r.alpha = min_positive_entry(seq.items(), tol_pos);
    const auto reducible = check_complete_reducibility(seq, tol_pos);
    for (std::size_t k = 0; k < reducible.size(); ++k)
        if (!reducible[k])
            r.reducibility_failures.push_back(k + 1);
    r.core = find_aperiodic_core(seq, tol_pos);
    for (std::size_t k : positivity_starts)
        r.eventual_positivity[k] = check_eventual_positivity(seq, k, tol_pos);

    if (!r.alpha)
        r.violations.push_back(Condition::lower_bound);
    for (const auto& [k, found] : r.eventual_positivity)
        if (!found) {
            r.violations.push_back(Condition::eventual_positivity);
            break;
        }
    if (!r.reducibility_failures.empty())
        r.violations.push_back(Condition::complete_reducibility);
    if (!r.core.core)
        r.violations.push_back(Condition::aperiodic_core);
    return r;
}

} // namespace stochprod
