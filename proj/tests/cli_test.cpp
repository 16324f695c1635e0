#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stochprod/cli.hpp"

namespace sp = stochprod;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "stochprod");
    std::ostringstream out, err;
    const int code = sp::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
    return std::string(STOCHPROD_FIXTURES) + "/" + name;
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "stochprod_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

} // namespace

TEST(Cli, ValidateReportsAlphaAndExitCodes) {
    const auto ok = run({"validate", fixture("three_matrices.txt")});
    EXPECT_EQ(ok.code, 0);
    EXPECT_TRUE(contains(ok.out, "n=3"));

    const auto bad = run({"validate", fixture("bad_row_sum.txt")});
    EXPECT_EQ(bad.code, 2);
    EXPECT_TRUE(contains(bad.err, "record 2, row 1")) << bad.err;

    EXPECT_EQ(run({"validate", fixture("empty_body.txt")}).code, 2);
    EXPECT_EQ(run({"validate", fixture("missing.txt")}).code, 2);
    EXPECT_EQ(run({"validate"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, AnalyzeVerdicts) {
    const auto lazy = run({"analyze", fixture("lazy_walk.txt")});
    EXPECT_EQ(lazy.code, 0);
    EXPECT_TRUE(contains(lazy.out, "verdict=all-conditions-hold"));

    const auto swaps = run({"analyze", fixture("alternating_swaps.txt")});
    EXPECT_EQ(swaps.code, 1);
    EXPECT_TRUE(contains(swaps.out, "violations=aperiodic-core")) << swaps.out;

    const auto tri = run({"analyze", fixture("triangular.txt")});
    EXPECT_EQ(tri.code, 1);
    EXPECT_TRUE(contains(tri.out, "reducibility_failures=2")) << tri.out;

    const auto id = run({"analyze", "--all-starts", fixture("identity.txt")});
    EXPECT_EQ(id.code, 1);
    EXPECT_TRUE(contains(id.out, "eventual_positivity.6=absent")) << id.out;
}

TEST(Cli, CertifyOutcomes) {
    const auto rank1 = run({"certify", fixture("rank_one.txt")});
    EXPECT_EQ(rank1.code, 0);
    EXPECT_TRUE(contains(rank1.out, "contraction=0.96875")) << rank1.out;
    EXPECT_TRUE(contains(rank1.out, "status=emitted"));

    EXPECT_EQ(run({"certify", fixture("alternating_swaps.txt")}).code, 1);
    EXPECT_EQ(run({"certify", fixture("triangular.txt")}).code, 1);
    EXPECT_EQ(run({"certify", "--alpha", "0.9", fixture("rank_one.txt")}).code, 2);
    EXPECT_EQ(run({"certify", "--alpha", "0.25", fixture("rank_one.txt")}).code, 0);
}

TEST(Cli, SimulateStopsAndExhausts) {
    const auto lazy = run({"simulate", "--epsilon", "1e-3", fixture("lazy_walk.txt")});
    EXPECT_EQ(lazy.code, 0);
    EXPECT_TRUE(contains(lazy.out, "stopped_at=31")) << lazy.out;

    const auto swaps = run({"simulate", fixture("alternating_swaps.txt")});
    EXPECT_EQ(swaps.code, 3);
    EXPECT_TRUE(contains(swaps.out, "stopped_at=none"));

    const auto flat = run({"simulate", "--x0", "2,2", fixture("alternating_swaps.txt")});
    EXPECT_EQ(flat.code, 0);
    EXPECT_TRUE(contains(flat.out, "stopped_at=0")) << flat.out;

    EXPECT_EQ(run({"simulate", "--x0", "1,2,3", fixture("lazy_walk.txt")}).code, 2);
    EXPECT_EQ(run({"simulate", "--epsilon", "0", fixture("lazy_walk.txt")}).code, 2);
    EXPECT_EQ(run({"simulate", "--x0", "1,2", "--x0-file", "x", fixture("lazy_walk.txt")}).code,
              2);
}

TEST(Cli, SimulateWithVectorFileAndCsv) {
    const auto x0 = scratch("x0.txt");
    std::ofstream(x0) << "0\n1\n";
    const auto csv = scratch("seminorms.csv");
    const auto r = run({"simulate", "--x0-file", x0.string(), "--epsilon", "1e-2", "--emit-csv",
                        csv.string(), fixture("lazy_walk.txt")});
    EXPECT_EQ(r.code, 0);
    // Disagreement of (0,1) under the lazy walk is 0.5 * 0.8^k.
    EXPECT_TRUE(contains(r.out, "stopped_at=18")) << r.out;
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "k,seminorm");
    std::string row;
    std::getline(in, row);
    EXPECT_EQ(row, "0,1");
}

TEST(Cli, ReportsAreReproducible) {
    for (const auto& cmd : {"validate", "analyze", "certify", "simulate"}) {
        const auto a = run({cmd, fixture("three_matrices.txt")});
        const auto b = run({cmd, fixture("three_matrices.txt")});
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, GenerateRoundTripsThroughValidate) {
    const auto path = scratch("generated.txt");
    for (const auto* preset : {"positive-diagonal", "cycle-core", "wolfowitz-set",
                               "periodic-counterexample"}) {
        const auto g = run({"generate", preset, "--n", "4", "--length", "20", "--alpha", "0.1",
                            "--seed", "5", "--out", path.string()});
        ASSERT_EQ(g.code, 0) << preset << g.err;
        EXPECT_EQ(run({"validate", path.string()}).code, 0) << preset;
        const auto on_stdout = run({"generate", preset, "--n", "4", "--length", "20", "--alpha",
                                    "0.1", "--seed", "5"});
        std::ifstream in(path);
        std::stringstream written;
        written << in.rdbuf();
        EXPECT_EQ(on_stdout.out, written.str());
    }
    EXPECT_EQ(run({"generate", "nonsense"}).code, 2);
    EXPECT_EQ(run({"generate", "cycle-core", "--alpha", "0.9"}).code, 2);
}
