#pragma once

// Directed graphs on the node set {0, ..., n-1} with a dense adjacency
// matrix. Self-loops are allowed, multi-edges are not. Text rendering uses
// 1-based labels so that reports read like the usual [n] notation.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stochprod/error.hpp"

namespace stochprod {

struct Edge {
    std::size_t from;
    std::size_t to;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Digraph {
public:
    explicit Digraph(std::size_t n) : n_(n), adj_(n * n, 0) {}

    Digraph(std::size_t n, std::span<const Edge> edges) : Digraph(n) {
        for (const auto& e : edges)
            add_edge(e.from, e.to);
    }

    Digraph(std::size_t n, std::initializer_list<Edge> edges)
        : Digraph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

    std::size_t node_count() const noexcept { return n_; }

    bool has_edge(std::size_t from, std::size_t to) const {
        check_node(from);
        check_node(to);
        return adj_[from * n_ + to] != 0;
    }

    void add_edge(std::size_t from, std::size_t to) {
        check_node(from);
        check_node(to);
        adj_[from * n_ + to] = 1;
    }

    void remove_edge(std::size_t from, std::size_t to) {
        check_node(from);
        check_node(to);
        adj_[from * n_ + to] = 0;
    }

    std::size_t edge_count() const noexcept {
        return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), 1));
    }

    std::size_t out_degree(std::size_t node) const {
        check_node(node);
        return static_cast<std::size_t>(std::count(adj_.begin() + node * n_,
                                                   adj_.begin() + (node + 1) * n_, 1));
    }

    /// Out-neighbours of `node` in increasing order.
    std::vector<std::size_t> successors(std::size_t node) const {
        check_node(node);
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < n_; ++j)
            if (adj_[node * n_ + j])
                out.push_back(j);
        return out;
    }

    /// Edges in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (adj_[i * n_ + j])
                    out.push_back({i, j});
        return out;
    }

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    void check_node(std::size_t v) const {
        if (v >= n_)
            throw IndexError("node " + std::to_string(v + 1) + " outside [1, " +
                             std::to_string(n_) + "]");
    }

    std::size_t n_;
    std::vector<char> adj_;
};

/// Canonical rendering: sorted, 1-based, e.g. "{(1,2),(2,1)}".
inline std::string to_string(const Digraph& g) {
    std::string s = "{";
    bool first = true;
    for (const auto& e : g.edges()) {
        if (!first)
            s += ',';
        first = false;
        s += '(' + std::to_string(e.from + 1) + ',' + std::to_string(e.to + 1) + ')';
    }
    return s + '}';
}

inline Digraph complete_digraph(std::size_t n) {
    if (n == 0)
        throw DimensionError("complete digraph needs at least one node");
    Digraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g.add_edge(i, j);
    return g;
}

/// Edge (i,j) iff some walk i -> m in `first` followed by m -> j in `second`.
/// This is the pattern of the product A*B when first = G(A), second = G(B).
inline Digraph walk_product(const Digraph& first, const Digraph& second) {
    const std::size_t n = first.node_count();
    if (second.node_count() != n)
        throw DimensionError("walk_product: node counts differ");
    Digraph out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m : first.successors(i))
            for (std::size_t j : second.successors(m))
                out.add_edge(i, j);
    return out;
}

struct SccPartition {
    /// Components with sorted members, ordered by smallest member.
    std::vector<std::vector<std::size_t>> components;
    std::vector<std::size_t> component_of;
    /// Sorted, duplicate-free pairs (c1, c2), c1 != c2.
    std::vector<std::pair<std::size_t, std::size_t>> condensation_edges;
};

/// Tarjan's algorithm with an explicit stack.
inline SccPartition strongly_connected_components(const Digraph& g) {
    const std::size_t n = g.node_count();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);

    std::vector<std::size_t> index(n, unvisited), low(n, 0), raw_comp(n, unvisited);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> succ(n);
    for (std::size_t v = 0; v < n; ++v)
        succ[v] = g.successors(v);

    std::size_t next_index = 0, raw_count = 0;
    // (node, position in its successor list)
    std::vector<std::pair<std::size_t, std::size_t>> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited)
            continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;

        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos < succ[v].size()) {
                const std::size_t w = succ[v][pos++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::size_t done = v;
            call.pop_back();
            if (!call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    raw_comp[w] = raw_count;
                } while (w != done);
                ++raw_count;
            }
        }
    }

    // Renumber components by smallest member for a labelling-independent layout.
    SccPartition out;
    out.component_of.assign(n, unvisited);
    std::vector<std::size_t> renumber(raw_count, unvisited);
    for (std::size_t v = 0; v < n; ++v) {
        if (renumber[raw_comp[v]] == unvisited) {
            renumber[raw_comp[v]] = out.components.size();
            out.components.emplace_back();
        }
        out.component_of[v] = renumber[raw_comp[v]];
        out.components[out.component_of[v]].push_back(v);
    }
    for (const auto& e : g.edges()) {
        const auto a = out.component_of[e.from], b = out.component_of[e.to];
        if (a != b)
            out.condensation_edges.emplace_back(a, b);
    }
    std::sort(out.condensation_edges.begin(), out.condensation_edges.end());
    out.condensation_edges.erase(
        std::unique(out.condensation_edges.begin(), out.condensation_edges.end()),
        out.condensation_edges.end());
    return out;
}

namespace detail {

inline std::size_t period_of_component(const Digraph& g, const SccPartition& scc,
                                       std::size_t c) {
    const auto& members = scc.components[c];
    const std::size_t n = g.node_count();
    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> level(n, unseen);
    std::vector<std::size_t> queue{members.front()};
    level[members.front()] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t u = queue[head];
        for (std::size_t v : g.successors(u)) {
            if (scc.component_of[v] != c || level[v] != unseen)
                continue;
            level[v] = level[u] + 1;
            queue.push_back(v);
        }
    }
    std::size_t period = 0;
    for (std::size_t u : members)
        for (std::size_t v : g.successors(u)) {
            if (scc.component_of[v] != c)
                continue;
            const auto a = static_cast<long long>(level[u]) + 1;
            const auto b = static_cast<long long>(level[v]);
            period = std::gcd(period, static_cast<std::size_t>(a > b ? a - b : b - a));
        }
    // A lone node with a self-loop gives |0 + 1 - 0| = 1; without one the gcd
    // stays 0, the sentinel for a cycle-free component.
    return period;
}

} // namespace detail

/// gcd of the cycle lengths inside `component`, or 0 if it has no cycle.
inline std::size_t scc_period(const Digraph& g, std::span<const std::size_t> component) {
    if (component.empty())
        throw ContractViolation("scc_period: empty node set");
    const auto scc = strongly_connected_components(g);
    for (std::size_t v : component)
        if (v >= g.node_count())
            throw IndexError("scc_period: node outside the graph");
    const std::size_t c = scc.component_of[component.front()];
    std::vector<std::size_t> sorted(component.begin(), component.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted != scc.components[c])
        throw ContractViolation("scc_period: node set is not a strongly connected component");
    return detail::period_of_component(g, scc, c);
}

struct AperiodicityReport {
    bool aperiodic = false;
    SccPartition partition;
    /// periods[c] is the period of partition.components[c] (0 = cycle-free).
    std::vector<std::size_t> periods;
};

/// Strict convention: every component must have period exactly 1, so a
/// cycle-free component makes the graph periodic.
inline AperiodicityReport is_aperiodic(const Digraph& g) {
    AperiodicityReport r;
    r.partition = strongly_connected_components(g);
    r.aperiodic = true;
    for (std::size_t c = 0; c < r.partition.components.size(); ++c) {
        r.periods.push_back(detail::period_of_component(g, r.partition, c));
        if (r.periods.back() != 1)
            r.aperiodic = false;
    }
    return r;
}

inline std::vector<std::size_t> sinks(const Digraph& g) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < g.node_count(); ++v)
        if (g.out_degree(v) == 0)
            out.push_back(v);
    return out;
}

inline bool is_subgraph(const Digraph& h, const Digraph& g) {
    if (h.node_count() != g.node_count())
        throw DimensionError("is_subgraph: node counts differ");
    for (const auto& e : h.edges())
        if (!g.has_edge(e.from, e.to))
            return false;
    return true;
}

inline Digraph intersection(std::span<const Digraph> graphs) {
    if (graphs.empty())
        throw DimensionError("intersection of an empty list");
    Digraph out = graphs.front();
    for (const auto& g : graphs.subspan(1)) {
        if (g.node_count() != out.node_count())
            throw DimensionError("intersection: node counts differ");
        for (const auto& e : out.edges())
            if (!g.has_edge(e.from, e.to))
                out.remove_edge(e.from, e.to);
    }
    return out;
}

/// No edge joins two distinct strongly connected components.
inline bool is_completely_reducible_pattern(const Digraph& g) {
    return strongly_connected_components(g).condensation_edges.empty();
}

/// n^2 - 2n + 2.
inline std::size_t wielandt_bound(std::size_t n) {
    if (n == 0)
        throw DimensionError("wielandt_bound: n must be positive");
    return n * n - 2 * n + 2;
}

/// Least e such that walks of every length >= e join every ordered pair, or
/// nullopt when none exists up to the Wielandt bound (the graph is periodic).
inline std::optional<std::size_t> exact_exponent(const Digraph& g) {
    const std::size_t n = g.node_count();
    if (n == 0 || strongly_connected_components(g).components.size() != 1)
        throw ContractViolation("exact_exponent: graph is not strongly connected");
    // Every node has a successor in a strongly connected graph with n > 1, so
    // once the k-step pattern is complete it stays complete.
    const std::size_t cap = wielandt_bound(n);
    Digraph power = g;
    for (std::size_t k = 1; k <= cap; ++k) {
        if (power.edge_count() == n * n)
            return k;
        power = walk_product(power, g);
    }
    return std::nullopt;
}

/// Whether a walk i -> j exists whose m-th step (counted from i) uses an
/// edge of graphs[size-m]; graphs[0] plays the role of the factor with the
/// smallest index. An empty list admits only the empty walk (i == j).
inline bool time_varying_walk_exists(std::size_t n, std::span<const Digraph> graphs,
                                     std::size_t i, std::size_t j) {
    if (i >= n || j >= n)
        throw IndexError("time_varying_walk_exists: node outside [1, n]");
    std::vector<char> reach(n, 0);
    reach[i] = 1;
    for (auto it = graphs.rbegin(); it != graphs.rend(); ++it) {
        if (it->node_count() != n)
            throw DimensionError("time_varying_walk_exists: node counts differ");
        std::vector<char> next(n, 0);
        for (std::size_t u = 0; u < n; ++u)
            if (reach[u])
                for (std::size_t v : it->successors(u))
                    next[v] = 1;
        reach = std::move(next);
    }
    return reach[j] != 0;
}

} // namespace stochprod
