#pragma once

// Seeded generators for sequences in specific regimes:
//   positive-diagonal        self-loops everywhere plus a random strongly
//                            connected pattern; entries >= alpha
//   cycle-core               the n-cycle 1->2->...->n->1 with chord n->2
//                            (cycle lengths n and n-1) in every factor
//   wolfowitz-set            i.i.d. draws from a fixed set of primitive
//                            matrices whose products are checked primitive
//                            up to depth W(n)+1
//   periodic-counterexample  alternating perfect matchings of the
//                            odd/even bipartition; no aperiodic core
//
// Output is a pure function of (preset, n, length, alpha, seed).

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stochprod/digraph.hpp"
#include "stochprod/error.hpp"
#include "stochprod/sequence_file.hpp"

namespace stochprod {

enum class Preset { positive_diagonal, cycle_core, wolfowitz_set, periodic_counterexample };

inline const char* to_string(Preset p) {
    switch (p) {
    case Preset::positive_diagonal:
        return "positive-diagonal";
    case Preset::cycle_core:
        return "cycle-core";
    case Preset::wolfowitz_set:
        return "wolfowitz-set";
    case Preset::periodic_counterexample:
        return "periodic-counterexample";
    }
    return "unknown";
}

inline std::optional<Preset> parse_preset(std::string_view name) {
    for (auto p : {Preset::positive_diagonal, Preset::cycle_core, Preset::wolfowitz_set,
                   Preset::periodic_counterexample})
        if (name == to_string(p))
            return p;
    return std::nullopt;
}

struct GeneratorParams {
    std::size_t n = 3;
    std::size_t length = 10;
    double alpha = 0.1;
    std::uint64_t seed = 0;
};

/// The n-cycle 1->2->...->n->1 plus the chord n->2.
inline Digraph wielandt_digraph(std::size_t n) {
    if (n < 2)
        throw DimensionError("wielandt_digraph needs n >= 2");
    Digraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        g.add_edge(i, (i + 1) % n);
    g.add_edge(n - 1, 1);
    return g;
}

namespace detail {

// Portable draws: std distributions differ between standard libraries.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    std::size_t below(std::size_t bound) { return static_cast<std::size_t>(rng_() % bound); }

private:
    std::mt19937_64 rng_;
};

inline double extra_edge_probability() { return 0.3; }

// Weights >= alpha on the pattern's edges, each row summing to 1.
inline std::vector<double> random_weights(const Digraph& g, double alpha, Draw& draw) {
    const std::size_t n = g.node_count();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto succ = g.successors(i);
        std::vector<double> u(succ.size());
        double total = 0.0;
        for (auto& x : u) {
            x = 0.05 + draw.uniform();
            total += x;
        }
        const double spare = 1.0 - static_cast<double>(succ.size()) * alpha;
        std::size_t largest = 0;
        for (std::size_t t = 0; t < succ.size(); ++t) {
            m[i * n + succ[t]] = alpha + spare * u[t] / total;
            if (u[t] > u[largest])
                largest = t;
        }
        // Absorb rounding into the largest entry so the row sums to 1 exactly.
        double rest = 0.0;
        for (std::size_t t = 0; t < succ.size(); ++t)
            if (t != largest)
                rest += m[i * n + succ[t]];
        m[i * n + succ[largest]] = 1.0 - rest;
    }
    return m;
}

inline void add_random_edges(Digraph& g, Draw& draw) {
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (draw.uniform() < extra_edge_probability())
                g.add_edge(i, j);
}

inline Digraph random_hamiltonian_cycle(std::size_t n, Draw& draw) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[draw.below(i)]);
    Digraph g(n);
    for (std::size_t t = 0; t < n; ++t)
        g.add_edge(order[t], order[(t + 1) % n]);
    return g;
}

// Pattern-level closure of all products of length <= depth; each must be
// primitive (strongly connected with an exponent within the Wielandt bound).
inline bool products_primitive_to_depth(const std::vector<Digraph>& generators,
                                        std::size_t depth) {
    std::vector<Digraph> frontier = generators;
    std::set<std::string> seen;
    for (std::size_t d = 1; d <= depth && !frontier.empty(); ++d) {
        std::vector<Digraph> next;
        for (const auto& p : frontier) {
            if (!seen.insert(to_string(p)).second)
                continue;
            if (strongly_connected_components(p).components.size() != 1 || !exact_exponent(p))
                return false;
            if (d < depth)
                for (const auto& g : generators)
                    next.push_back(walk_product(g, p));
        }
        frontier = std::move(next);
    }
    return true;
}

// Fixed primitive generators, all containing the Wielandt digraph. Cycle
// edges carry the remaining mass, every other edge exactly alpha.
inline std::vector<std::vector<double>> wolfowitz_generators(std::size_t n, double alpha) {
    const Digraph base = wielandt_digraph(n);
    std::vector<Digraph> patterns(3, base);
    for (std::size_t i = 1; i < n; ++i)
        patterns[1].add_edge(i, i - 1);
    patterns[2].add_edge(0, 0);

    std::vector<std::vector<double>> out;
    for (const auto& g : patterns) {
        std::vector<double> m(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto succ = g.successors(i);
            const std::size_t main = (i + 1) % n;
            for (std::size_t j : succ)
                m[i * n + j] = alpha;
            m[i * n + main] = 1.0 - static_cast<double>(succ.size() - 1) * alpha;
        }
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace detail

inline SequenceFile generate(Preset preset, const GeneratorParams& p) {
    if (p.n < 2)
        throw DimensionError("generate: n must be at least 2");
    if (p.length < 1)
        throw DimensionError("generate: length must be at least 1");
    if (!(p.alpha > 0.0) || p.alpha > 1.0 / static_cast<double>(p.n))
        throw ContractViolation("generate: alpha must lie in (0, 1/n]");

    SequenceFile file;
    file.n = p.n;
    file.metadata = {{"preset", to_string(preset)},
                     {"n", std::to_string(p.n)},
                     {"length", std::to_string(p.length)},
                     {"alpha", format_real(p.alpha)},
                     {"seed", std::to_string(p.seed)}};
    detail::Draw draw(p.seed);
    const std::size_t n = p.n;

    switch (preset) {
    case Preset::positive_diagonal:
        for (std::size_t k = 0; k < p.length; ++k) {
            Digraph g = detail::random_hamiltonian_cycle(n, draw);
            for (std::size_t i = 0; i < n; ++i)
                g.add_edge(i, i);
            detail::add_random_edges(g, draw);
            file.records.push_back(detail::random_weights(g, p.alpha, draw));
        }
        break;
    case Preset::cycle_core: {
        const Digraph core = wielandt_digraph(n);
        for (std::size_t k = 0; k < p.length; ++k) {
            Digraph g = core;
            detail::add_random_edges(g, draw);
            file.records.push_back(detail::random_weights(g, p.alpha, draw));
        }
        break;
    }
    case Preset::wolfowitz_set: {
        const auto gens = detail::wolfowitz_generators(n, p.alpha);
        std::vector<Digraph> patterns;
        for (const auto& m : gens)
            patterns.push_back(digraph_of(validate_stochastic(n, m)));
        const std::size_t depth = wielandt_bound(n) + 1;
        if (!detail::products_primitive_to_depth(patterns, depth))
            throw Error("wolfowitz-set: a bounded-depth product is not primitive");
        file.metadata.emplace_back("set_size", std::to_string(gens.size()));
        file.metadata.emplace_back("checked_depth", std::to_string(depth));
        for (std::size_t k = 0; k < p.length; ++k)
            file.records.push_back(gens[draw.below(gens.size())]);
        break;
    }
    case Preset::periodic_counterexample: {
        if (n % 2 != 0)
            throw DimensionError("periodic-counterexample needs an even n");
        std::vector<double> first(n * n, 0.0), second(n * n, 0.0);
        for (std::size_t i = 0; i < n; i += 2) {
            first[i * n + i + 1] = first[(i + 1) * n + i] = 1.0;
            const std::size_t a = i + 1, b = (i + 2) % n;
            second[a * n + b] = second[b * n + a] = 1.0;
        }
        for (std::size_t k = 0; k < p.length; ++k)
            file.records.push_back(k % 2 == 0 ? first : second);
        break;
    }
    }
    return file;
}

} // namespace stochprod
