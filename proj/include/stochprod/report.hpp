#pragma once

// Line-oriented key=value reports grouped in [section] blocks. Reals use the
// shortest round-trip decimal form, node labels are 1-based, so identical
// input always renders to identical text.

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "stochprod/convergence.hpp"
#include "stochprod/hypotheses.hpp"
#include "stochprod/sequence_file.hpp"

namespace stochprod::report {

inline std::string join_nodes(std::span<const std::size_t> nodes) {
    std::string s;
    for (std::size_t t = 0; t < nodes.size(); ++t)
        s += (t ? "," : "") + std::to_string(nodes[t] + 1);
    return s;
}

inline std::string join_counts(std::span<const std::size_t> values) {
    std::string s;
    for (std::size_t t = 0; t < values.size(); ++t)
        s += (t ? "," : "") + std::to_string(values[t]);
    return s;
}

inline std::string join_reals(std::span<const double> values) {
    std::string s;
    for (std::size_t t = 0; t < values.size(); ++t)
        s += (t ? "," : "") + format_real(values[t]);
    return s;
}

inline void input_section(std::ostream& out, const std::string& path, const MatrixSequence& seq) {
    out << "[input]\n"
        << "path=" << path << '\n'
        << "n=" << seq.dimension() << '\n'
        << "L=" << seq.length() << '\n';
}

inline void hypotheses_section(std::ostream& out, const HypothesisReport& r) {
    out << "[hypotheses]\n";
    out << "alpha=" << (r.alpha ? format_real(*r.alpha) : "absent") << '\n';
    out << "reducibility_failures=" << join_counts(r.reducibility_failures) << '\n';
    out << "intersection=" << to_string(r.core.common) << '\n';
    out << "node_periods=" << join_counts(r.core.node_periods) << '\n';
    out << "core=" << (r.core.core ? to_string(*r.core.core) : "absent") << '\n';
    out << "core_offending_nodes=" << join_nodes(r.core.offending_nodes) << '\n';
    for (const auto& [k, found] : r.eventual_positivity)
        out << "eventual_positivity." << k << '='
            << (found ? std::to_string(*found) : "absent") << '\n';
    out << "verdict=" << (r.all_conditions_hold() ? "all-conditions-hold" : "conditions-violated")
        << '\n';
    std::string violations;
    for (auto c : r.violations)
        violations += std::string(violations.empty() ? "" : ",") + to_string(c);
    out << "violations=" << violations << '\n';
}

inline void certificate_section(std::ostream& out, const ConvergenceCertificate& c) {
    out << "[certificate]\n"
        << "status=emitted\n"
        << "n=" << c.n << '\n'
        << "alpha=" << format_real(c.alpha) << '\n'
        << "wielandt=" << c.wielandt << '\n'
        << "saturation_index=" << c.saturation_index << '\n'
        << "K=" << c.K << '\n'
        << "entry_floor=" << format_real(c.entry_floor) << '\n'
        << "log_entry_floor=" << format_real(c.log_entry_floor) << '\n'
        << "contraction=" << format_real(c.contraction) << '\n'
        << "log_contraction=" << format_real(c.log_contraction) << '\n'
        << "measured_seminorm=" << format_real(c.measured_seminorm) << '\n';
}

inline void certificate_unavailable(std::ostream& out, const std::string& status,
                                    const std::string& reason) {
    out << "[certificate]\n"
        << "status=" << status << '\n'
        << "reason=" << reason << '\n';
}

inline void trajectory_section(std::ostream& out, double epsilon,
                               std::optional<std::size_t> stopped_at,
                               std::span<const double> seminorms,
                               std::span<const double> disagreement,
                               const std::optional<std::vector<double>>& consensus_row) {
    out << "[trajectory]\n"
        << "epsilon=" << format_real(epsilon) << '\n'
        << "stopped_at=" << (stopped_at ? std::to_string(*stopped_at) : "none") << '\n';
    if (consensus_row)
        out << "consensus_row=" << join_reals(*consensus_row) << '\n';
    for (std::size_t k = 0; k < seminorms.size(); ++k)
        out << "seminorm." << k << '=' << format_real(seminorms[k]) << '\n';
    for (std::size_t k = 0; k < disagreement.size(); ++k)
        out << "disagreement." << k << '=' << format_real(disagreement[k]) << '\n';
}

inline void status_section(std::ostream& out, int exit_code) {
    out << "[status]\n"
        << "exit=" << exit_code << '\n';
}

inline std::string seminorm_csv(std::span<const double> seminorms) {
    std::string s = "k,seminorm\n";
    for (std::size_t k = 0; k < seminorms.size(); ++k)
        s += std::to_string(k) + ',' + format_real(seminorms[k]) + '\n';
    return s;
}

} // namespace stochprod::report
