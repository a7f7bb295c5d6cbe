#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "cstm/csv.hpp"

using namespace cstm;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CSTM_DATA_DIR;

fs::path scratch(const std::string &name) {
    auto dir = fs::temp_directory_path() / ("cstm_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(cli::RunConfig cfg) {
    std::ostringstream out, err;
    const int code = cli::dispatch(cfg, out, err);
    return {code, out.str(), err.str()};
}

int run_tool(const std::string &args) {
    const int status = std::system((std::string(CSTM_TOOL) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string bundled_spec_with(const std::string &from, const std::string &to) {
    auto text = slurp(kData / "sick_sicker.json");
    const auto pos = text.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    text.replace(pos, from.size(), to);
    return text;
}

} // namespace

TEST(Cli, ValidateBuiltinAndBundled) {
    cli::RunConfig cfg;
    cfg.subcommand = "validate";
    auto r = run(cfg);
    EXPECT_EQ(r.code, cli::kOk) << r.out << r.err;
    EXPECT_NE(r.out.find("OK"), std::string::npos);
    cfg.spec = kData / "sick_sicker.json";
    cfg.variant = ModelVariant::tunnels;
    EXPECT_EQ(run(cfg).code, cli::kOk);
}

TEST(Cli, InfeasibleRowsAreReportedWithCoordinates) {
    const auto dir = scratch("rowsum");
    fs::copy_file(kData / "us_mortality_2015.csv", dir / "us_mortality_2015.csv");
    std::ofstream(dir / "bad.json") << bundled_spec_with("\"p_S1H\": 0.5", "\"p_S1H\": 0.95");
    cli::RunConfig cfg;
    cfg.subcommand = "validate";
    cfg.spec = dir / "bad.json";
    const auto r = run(cfg);
    EXPECT_EQ(r.code, cli::kValidationFailed);
    EXPECT_NE(r.out.find("INVALID"), std::string::npos);
    EXPECT_NE(r.out.find("P[S1,S1,0]"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("out of bounds"), std::string::npos);

    cfg.subcommand = "run";
    cfg.out_dir = dir / "out";
    EXPECT_EQ(run(cfg).code, cli::kValidationFailed);
    EXPECT_FALSE(fs::exists(dir / "out" / "totals.csv"));
}

TEST(Cli, MissingLifeTableIsAValidationFailure) {
    const auto dir = scratch("no_lt");
    std::ofstream(dir / "spec.json") << slurp(kData / "sick_sicker.json");
    cli::RunConfig cfg;
    cfg.subcommand = "validate";
    cfg.spec = dir / "spec.json";
    const auto r = run(cfg);
    EXPECT_EQ(r.code, cli::kValidationFailed);
    EXPECT_NE(r.out.find("life table coverage"), std::string::npos) << r.out;
}

TEST(Cli, LifeTableOverride) {
    const auto dir = scratch("lt_override");
    std::ofstream(dir / "short.csv") << "age,mortality_rate\n25,0.01\n26,0.01\n";
    cli::RunConfig cfg;
    cfg.subcommand = "validate";
    cfg.life_table = dir / "short.csv";
    EXPECT_EQ(run(cfg).code, cli::kValidationFailed);
    std::ofstream(dir / "broken.csv") << "age;rate\n";
    cfg.life_table = dir / "broken.csv";
    EXPECT_EQ(run(cfg).code, cli::kIoError);
}

TEST(Cli, IoAndUsageErrors) {
    cli::RunConfig cfg;
    cfg.subcommand = "validate";
    cfg.spec = "/nonexistent/spec.json";
    EXPECT_EQ(run(cfg).code, cli::kIoError);
    cfg = {};
    cfg.subcommand = "psa";
    cfg.n_samples = 0;
    EXPECT_EQ(run(cfg).code, cli::kUsage);
    cfg.n_samples = 2;
    cfg.wtp_step = 0;
    EXPECT_EQ(run(cfg).code, cli::kUsage);
    cfg.subcommand = "bogus";
    EXPECT_EQ(run(cfg).code, cli::kUsage);
}

TEST(Cli, RunWritesOutputs) {
    const auto dir = scratch("run");
    cli::RunConfig cfg;
    cfg.subcommand = "run";
    cfg.out_dir = dir;
    cfg.write_arrays = true;
    const auto r = run(cfg);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    for (const char *f : {"totals.csv", "summary.txt", "trace_SoC.csv", "survival_AB.csv",
                          "prevalence_B.csv", "outcomes_A.csv", "transitions_SoC.csv",
                          "dynamics_SoC.csv"}) {
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    }
    const auto totals = read_csv(dir / "totals.csv");
    EXPECT_NEAR(totals.numeric_column("cost")[0], evaluate_all(builtin_sick_sicker())[0].total_cost,
                1e-4);
}

TEST(Cli, TunnelRunWritesExpandedAndAggregatedTraces) {
    const auto dir = scratch("run_tunnels");
    cli::RunConfig cfg;
    cfg.subcommand = "run";
    cfg.out_dir = dir;
    cfg.variant = ModelVariant::tunnels;
    ASSERT_EQ(run(cfg).code, cli::kOk);
    EXPECT_EQ(read_csv(dir / "trace_SoC.csv").header.size(), 1u + 78u);
    EXPECT_EQ(read_csv(dir / "trace_aggregated_SoC.csv").header.size(), 1u + 4u);
}

TEST(Cli, CeaTable) {
    const auto dir = scratch("cea");
    cli::RunConfig cfg;
    cfg.subcommand = "cea";
    cfg.out_dir = dir;
    const auto r = run(cfg);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto t = read_csv(dir / "cea.csv");
    EXPECT_EQ(t.column("strategy"), (std::vector<std::string>{"SoC", "B", "AB", "A"}));
    EXPECT_EQ(read_csv(dir / "frontier.csv").rows.size(), 3u);
}

TEST(Cli, PsaIsByteIdenticalForAFixedSeed) {
    const auto a = scratch("psa_a");
    const auto b = scratch("psa_b");
    const std::string common = " psa --samples 50 --seed 123 --wtp-step 10000 ";
    ASSERT_EQ(run_tool(common + "--threads 1 --out " + a.string()), 0);
    ASSERT_EQ(run_tool(common + "--threads 4 --out " + b.string()), 0);
    for (const char *f : {"psa_samples.csv", "psa_parameters.csv", "ceac.csv", "elc.csv", "evpi.csv"}) {
        const auto x = slurp(a / f);
        EXPECT_FALSE(x.empty()) << f;
        EXPECT_EQ(x, slurp(b / f)) << f;
    }
}

TEST(Cli, ToolExitCodes) {
    EXPECT_EQ(run_tool("validate"), 0);
    EXPECT_EQ(run_tool(""), 2);
    EXPECT_EQ(run_tool("run --variant bogus"), 2);
    EXPECT_EQ(run_tool("validate --spec /nonexistent.json"), 3);
    const auto dir = scratch("tool_invalid");
    std::ofstream(dir / "spec.json") << slurp(kData / "sick_sicker.json");
    EXPECT_EQ(run_tool("validate --spec " + (dir / "spec.json").string()), 1);
}

TEST(Cli, CurrencyFormat) {
    EXPECT_EQ(cli::format_currency(114471.96), "$114,472");
    EXPECT_EQ(cli::format_currency(999), "$999");
    EXPECT_EQ(cli::format_currency(-1234.4), "-$1,234");
}
