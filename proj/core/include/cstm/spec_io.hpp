#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cstm/model.hpp"

namespace cstm {

// Specs are JSON documents. A minimal example:
//
//   {
//     "name": "toy",
//     "states": {"names": ["H", "S1", "S2", "D"], "absorbing": ["D"], "death": ["D"]},
//     "time": {"age_init": 25, "age_max": 100, "cycle_length": 1},
//     "initial": [1, 0, 0, 0],
//     "parameters": {"p_HS1": 0.15, ...},
//     "life_table": "us_mortality_2015.csv",
//     "state_rewards": {"cost": {"H": "c_H", ...}, "utility": {"H": "u_H", ...}},
//     "transition_rewards": [{"origins": ["H"], "destination": "S1",
//                             "cost": "ic_HS1", "utility": "-du_HS1"}],
//     "strategies": [{"name": "SoC"},
//                    {"name": "B", "cost_addons": {"S1": "c_trtB"},
//                     "hazard_modifiers": {"S1S2": "hr_S1S2_trtB"}}],
//     "tunnels": {"state": "S1", "size": 75},
//     "psa": {"p_HS1": {"family": "beta", "mean": 0.15, "se": 0.025}}
//   }
//
// Reward and modifier values are a number, a parameter name (optionally
// prefixed with '-') or an array of those, which are summed. The life
// table is a CSV path relative to the spec file, or inline as
// {"first_age": 0, "rates": [...]}.

/// Throws IoError on malformed JSON or schema errors. A life table that
/// cannot be loaded does not throw; it is recorded in
/// ModelSpec::life_table_error and reported by validate_spec.
[[nodiscard]] ModelSpec parse_spec(std::string_view json_text,
                                   const std::filesystem::path &base_dir = {});

[[nodiscard]] ModelSpec load_spec(const std::filesystem::path &path);

/// Pretty-printed JSON. parse_spec(serialize_spec(s), dir) == s whenever
/// the life table path (if any) resolves from `dir`.
[[nodiscard]] std::string serialize_spec(const ModelSpec &spec);

void save_spec(const ModelSpec &spec, const std::filesystem::path &path);

} // namespace cstm
