#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "cstm/life_table.hpp"
#include "cstm/spec_io.hpp"

using namespace cstm;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CSTM_DATA_DIR;

fs::path scratch_dir(const std::string &name) {
    auto dir = fs::temp_directory_path() / ("cstm_spec_io_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path &p, const std::string &text) { std::ofstream(p) << text; }

const char *kMinimal = R"({
  "states": {"names": ["H", "S1", "S2", "D"], "absorbing": ["D"], "death": ["D"]},
  "time": {"age_init": 0, "age_max": 3},
  "initial": [1, 0, 0, 0],
  "parameters": {"p_HS1": 0.1, "p_S1H": 0.2, "p_S1S2": 0.1, "hr_S1": 2, "hr_S2": 4,
                 "p_S1S2_scale": 0.1, "p_S1S2_shape": 1, "d_c": 0, "d_e": 0, "c": 1},
  "life_table": {"first_age": 0, "rates": [0.01, 0.02, 0.03]},
  "state_rewards": {"cost": {"H": 1, "S1": "c", "S2": ["c", 1], "D": 0},
                    "utility": {"H": 1, "S1": 1, "S2": 1, "D": 0}},
  "strategies": [{"name": "only"}]
})";

} // namespace

TEST(SpecIo, MinimalSpecParsesAndValidates) {
    const auto spec = parse_spec(kMinimal);
    EXPECT_EQ(spec.grid.n_cycles, 3);
    EXPECT_EQ(spec.tunnels.size, 3);
    EXPECT_EQ(spec.strategies[0].label, "only");
    EXPECT_EQ(spec.state_rewards.cost.at("S2").evaluate(spec.parameters), 2.0);
    const auto report = validate_spec(spec);
    EXPECT_TRUE(report.ok()) << report.to_string();
}

TEST(SpecIo, BundledFileMatchesBuiltin) {
    auto from_file = load_spec(kData / "sick_sicker.json");
    EXPECT_EQ(from_file.life_table_source, "us_mortality_2015.csv");
    EXPECT_TRUE(from_file.life_table_error.empty()) << from_file.life_table_error;
    from_file.life_table_source.clear();
    EXPECT_EQ(from_file, builtin_sick_sicker());
}

TEST(SpecIo, BuiltinRoundTripsWithInlineLifeTable) {
    const auto spec = builtin_sick_sicker();
    const auto text = serialize_spec(spec);
    EXPECT_EQ(parse_spec(text), spec);
    EXPECT_EQ(serialize_spec(parse_spec(text)), text);
}

TEST(SpecIo, FileRoundTripKeepsLifeTablePath) {
    const auto dir = scratch_dir("roundtrip");
    fs::copy_file(kData / "us_mortality_2015.csv", dir / "us_mortality_2015.csv");
    const auto original = load_spec(kData / "sick_sicker.json");
    save_spec(original, dir / "copy.json");
    const auto reloaded = load_spec(dir / "copy.json");
    EXPECT_EQ(reloaded, original);
    EXPECT_EQ(reloaded.life_table_source, "us_mortality_2015.csv");
}

TEST(SpecIo, RoundTripPreservesExpressionsAndDistributions) {
    auto spec = parse_spec(kMinimal);
    spec.strategies[0].transition_reward_edits.push_back({{"H", "S1"}, "D", "-c", 0.25});
    spec.psa = DistributionSpec{{"p_HS1", Distribution::beta(2, 18)},
                                {"c", Distribution::uniform(0.5, 1.5)},
                                {"hr_S1", Distribution::fixed(2)}};
    EXPECT_EQ(parse_spec(serialize_spec(spec)), spec);
}

TEST(SpecIo, MomentFormEqualsFactory) {
    auto text = std::string(kMinimal);
    text.insert(text.rfind('}'), R"(, "psa": {"p_HS1": {"family": "beta", "mean": 0.1, "se": 0.02},
        "c": {"family": "fixed"}})");
    const auto spec = parse_spec(text);
    EXPECT_EQ(spec.psa->at("p_HS1"), Distribution::beta_from_moments(0.1, 0.02));
    EXPECT_EQ(spec.psa->at("c"), Distribution::fixed(1.0));
}

TEST(SpecIo, InitialAsObject) {
    auto text = std::string(kMinimal);
    text.replace(text.find("[1, 0, 0, 0]"), 12, R"({"H": 0.25, "S2": 0.75})");
    EXPECT_EQ(parse_spec(text).initial.values(), (std::vector<double>{0.25, 0, 0.75, 0}));
}

TEST(SpecIo, SchemaErrors) {
    EXPECT_THROW((void)parse_spec("{"), IoError);
    EXPECT_THROW((void)parse_spec("[]"), IoError);
    auto text = std::string(kMinimal);
    EXPECT_THROW((void)parse_spec(text.substr(0, 1) + R"("bogus": 1,)" + text.substr(1)), IoError);
    auto bad_number = text;
    bad_number.replace(bad_number.find("0.1"), 3, "\"x\"");
    EXPECT_THROW((void)parse_spec(bad_number), IoError);
    auto no_states = text;
    no_states.replace(no_states.find("\"states\""), 8, "\"stated\"");
    EXPECT_THROW((void)parse_spec(no_states), IoError);
}

TEST(SpecIo, UnreadableLifeTableIsAValidationProblem) {
    const auto dir = scratch_dir("missing_lt");
    auto text = std::string(kMinimal);
    text.replace(text.find(R"({"first_age")"), std::string(R"({"first_age": 0, "rates": [0.01, 0.02, 0.03]})").size(),
                 "\"absent.csv\"");
    write(dir / "spec.json", text);
    const auto spec = load_spec(dir / "spec.json");
    EXPECT_FALSE(spec.life_table.has_value());
    const auto report = validate_spec(spec);
    EXPECT_TRUE(report.contains("life table coverage"));
    EXPECT_TRUE(report.contains("absent.csv"));
}

TEST(SpecIo, MissingFileIsAnIoError) {
    EXPECT_THROW((void)load_spec("/nonexistent/spec.json"), IoError);
}
