#pragma once

// Command-line front end. Exit codes:
//   0  success / all hypotheses hold / tolerance reached
//   1  hypothesis violated (certification refused)
//   2  input error (parse, validation, bad flags)
//   3  horizon exhausted within the given prefix

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stochprod/convergence.hpp"
#include "stochprod/generate.hpp"
#include "stochprod/hypotheses.hpp"
#include "stochprod/report.hpp"
#include "stochprod/sequence_file.hpp"

namespace stochprod::cli {

enum ExitCode : int { ok = 0, violated = 1, input_error = 2, exhausted = 3 };

struct InputOptions {
    std::string path;
    ValidationTolerances tol;
};

namespace detail {

inline void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("path", in.path, "Matrix sequence file")->required();
    cmd->add_option("--tol-row", in.tol.row, "Allowed deviation of row sums from 1");
    cmd->add_option("--tol-neg", in.tol.neg, "Negative entries down to -tol-neg are clamped to 0");
}

inline std::vector<double> parse_vector(const std::string& text) {
    std::istringstream in(text);
    std::vector<double> out;
    std::string token;
    while (in >> token) {
        std::stringstream split(token);
        std::string part;
        while (std::getline(split, part, ',')) {
            if (part.empty())
                continue;
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(part, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != part.size() || !std::isfinite(v))
                throw ParseError("not a finite number: " + part, 0);
            out.push_back(v);
        }
    }
    return out;
}

inline std::vector<double> read_vector_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path, 0);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_vector(buf.str());
}

} // namespace detail

inline int cmd_validate(const InputOptions& in, std::ostream& out) {
    const auto seq = to_sequence(read_sequence_file(in.path), in.tol);
    report::input_section(out, in.path, seq);
    out << "alpha=" << format_real(*min_positive_entry(seq.items())) << '\n';
    report::status_section(out, ok);
    return ok;
}

inline int cmd_analyze(const InputOptions& in, bool all_starts, double tol_pos,
                       std::ostream& out) {
    const auto seq = to_sequence(read_sequence_file(in.path), in.tol);
    std::set<std::size_t> starts{1};
    if (all_starts)
        for (std::size_t k = 2; k <= seq.length(); ++k)
            starts.insert(k);
    const auto r = analyze(seq, starts, tol_pos);
    report::input_section(out, in.path, seq);
    report::hypotheses_section(out, r);
    const int code = r.all_conditions_hold() ? ok : violated;
    report::status_section(out, code);
    return code;
}

inline int cmd_certify(const InputOptions& in, std::optional<double> alpha_override,
                       double tol_pos, std::ostream& out) {
    const auto seq = to_sequence(read_sequence_file(in.path), in.tol);
    const auto r = analyze(seq, {1}, tol_pos);
    report::input_section(out, in.path, seq);
    report::hypotheses_section(out, r);
    if (alpha_override && !(*alpha_override > 0.0 && *alpha_override <= *r.alpha))
        throw ContractViolation("--alpha must lie in (0, " + format_real(*r.alpha) + "]");

    int code = ok;
    try {
        const auto cert = contraction_certificate(seq, alpha_override, tol_pos);
        if (cert) {
            report::certificate_section(out, *cert);
        } else {
            report::certificate_unavailable(out, "horizon-exhausted",
                                            "no saturated product within the prefix");
            code = exhausted;
        }
    } catch (const RefusedCertification& e) {
        report::certificate_unavailable(out, "refused", e.what());
        code = violated;
    }
    report::status_section(out, code);
    return code;
}

struct SimulateOptions {
    double epsilon = 1e-6;
    std::string x0;
    std::string x0_file;
    std::string csv_path;
};

inline int cmd_simulate(const InputOptions& in, const SimulateOptions& opt, std::ostream& out) {
    const auto seq = to_sequence(read_sequence_file(in.path), in.tol);
    if (!(opt.epsilon > 0.0))
        throw ContractViolation("--epsilon must be positive");

    std::optional<std::vector<double>> x0;
    if (!opt.x0.empty())
        x0 = detail::parse_vector(opt.x0);
    else if (!opt.x0_file.empty())
        x0 = detail::read_vector_file(opt.x0_file);

    std::optional<std::size_t> stopped_at;
    std::vector<double> seminorms, disagreement;
    std::optional<std::vector<double>> consensus;
    if (x0) {
        if (x0->size() != seq.dimension())
            throw DimensionError("x0 has " + std::to_string(x0->size()) +
                                 " entries, expected " + std::to_string(seq.dimension()));
        const auto full = disagreement_trajectory(seq, *x0);
        std::size_t last = seq.length();
        for (std::size_t k = 0; k < full.size(); ++k)
            if (full[k] <= opt.epsilon) {
                stopped_at = last = k;
                break;
            }
        disagreement.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(last) + 1);
        auto p = StochasticMatrix::identity(seq.dimension());
        seminorms.push_back(matrix_seminorm(p));
        for (std::size_t k = 1; k <= last; ++k) {
            p = multiply(seq.at(k), p);
            seminorms.push_back(matrix_seminorm(p));
        }
    } else {
        auto run = run_to_tolerance(seq, opt.epsilon);
        stopped_at = run.stopped_at;
        seminorms = std::move(run.seminorms);
        consensus = std::move(run.consensus_row);
    }

    report::input_section(out, in.path, seq);
    report::trajectory_section(out, opt.epsilon, stopped_at, seminorms, disagreement, consensus);
    if (!opt.csv_path.empty())
        write_file_atomically(opt.csv_path, report::seminorm_csv(seminorms));
    const int code = stopped_at ? ok : exhausted;
    report::status_section(out, code);
    return code;
}

inline int cmd_generate(Preset preset, const GeneratorParams& params, const std::string& out_path,
                        std::ostream& out) {
    const auto file = generate(preset, params);
    std::ostringstream text;
    write_sequence(text, file.n, file.metadata, file.records);
    if (out_path.empty())
        out << text.str();
    else
        write_file_atomically(out_path, text.str());
    return ok;
}

/// Parses `args` (args[0] is the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Convergence analysis for products of stochastic matrices", "stochprod"};
    app.require_subcommand(1);

    InputOptions validate_in, analyze_in, certify_in, simulate_in;
    bool all_starts = false;
    double analyze_tol_pos = 0.0, certify_tol_pos = 0.0;
    std::optional<double> alpha_override;
    SimulateOptions sim;
    std::string preset_name, out_path;
    GeneratorParams gen;

    auto* validate = app.add_subcommand("validate", "Parse and validate a sequence file");
    detail::add_input_options(validate, validate_in);

    auto* analyze_cmd = app.add_subcommand("analyze", "Check the four convergence hypotheses");
    detail::add_input_options(analyze_cmd, analyze_in);
    analyze_cmd->add_flag("--all-starts", all_starts, "Check eventual positivity at every k");
    analyze_cmd->add_option("--tol-pos", analyze_tol_pos, "Entries above this count as positive");

    auto* certify = app.add_subcommand("certify", "Emit a contraction certificate");
    detail::add_input_options(certify, certify_in);
    certify->add_option("--alpha", alpha_override, "Lower bound on the positive entries");
    certify->add_option("--tol-pos", certify_tol_pos, "Entries above this count as positive");

    auto* simulate = app.add_subcommand("simulate", "Run the backward product to a tolerance");
    detail::add_input_options(simulate, simulate_in);
    simulate->add_option("--epsilon", sim.epsilon, "Target semi-norm");
    auto* x0_inline = simulate->add_option("--x0", sim.x0, "Initial vector, comma separated");
    simulate->add_option("--x0-file", sim.x0_file, "File holding the initial vector")
        ->excludes(x0_inline);
    simulate->add_option("--emit-csv", sim.csv_path, "Write a k,seminorm table to this path");

    auto* gen_cmd = app.add_subcommand("generate", "Write a sequence file for a preset regime");
    gen_cmd->add_option("preset", preset_name,
                        "positive-diagonal | cycle-core | wolfowitz-set | periodic-counterexample")
        ->required();
    gen_cmd->add_option("--n", gen.n, "Dimension");
    gen_cmd->add_option("--length", gen.length, "Number of matrices");
    gen_cmd->add_option("--alpha", gen.alpha, "Lower bound on positive entries, in (0, 1/n]");
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("--out", out_path, "Output path (default: standard output)");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }

    try {
        if (*validate)
            return cmd_validate(validate_in, out);
        if (*analyze_cmd)
            return cmd_analyze(analyze_in, all_starts, analyze_tol_pos, out);
        if (*certify)
            return cmd_certify(certify_in, alpha_override, certify_tol_pos, out);
        if (*simulate)
            return cmd_simulate(simulate_in, sim, out);
        if (*gen_cmd) {
            const auto preset = parse_preset(preset_name);
            if (!preset) {
                err << "error: unknown preset " << preset_name << '\n';
                return input_error;
            }
            return cmd_generate(*preset, gen, out_path, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }
    return input_error;
}

} // namespace stochprod::cli
