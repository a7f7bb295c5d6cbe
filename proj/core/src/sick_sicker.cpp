#include <string_view>

#include "cstm/life_table.hpp"
#include "cstm/model.hpp"

namespace cstm {

namespace detail {
extern const std::string_view kReferenceLifeTableCsv;
}

const LifeTable &reference_life_table() {
    static const LifeTable table =
        parse_life_table_csv(detail::kReferenceLifeTableCsv, "<bundled us_mortality_2015.csv>");
    return table;
}

ModelSpec builtin_sick_sicker() {
    ModelSpec spec;
    spec.name = "Sick-Sicker (age-dependent mortality)";
    spec.states = StateSpace({"H", "S1", "S2", "D"}, {"D"}, {"D"});
    spec.grid = TimeGrid::from_ages(25, 100, 1.0);
    spec.parameters = {
        {"d_e", 0.03},     {"d_c", 0.03},

        {"p_HS1", 0.15},   {"p_S1H", 0.5},          {"p_S1S2", 0.105},
        {"hr_S1", 3.0},    {"hr_S2", 10.0},         {"hr_S1S2_trtB", 0.6},
        {"p_S1S2_scale", 0.08},                     {"p_S1S2_shape", 1.1},

        {"c_H", 2000.0},   {"c_S1", 4000.0},        {"c_S2", 15000.0},
        {"c_D", 0.0},      {"c_trtA", 12000.0},     {"c_trtB", 13000.0},
        {"u_H", 1.0},      {"u_S1", 0.75},          {"u_S2", 0.5},
        {"u_D", 0.0},      {"u_trtA", 0.95},

        {"du_HS1", 0.01},  {"ic_HS1", 1000.0},      {"ic_D", 2000.0},
    };
    spec.life_table = reference_life_table();
    spec.initial = InitialStateVector({1.0, 0.0, 0.0, 0.0});

    spec.state_rewards.cost = {{"H", "c_H"}, {"S1", "c_S1"}, {"S2", "c_S2"}, {"D", "c_D"}};
    spec.state_rewards.utility = {{"H", "u_H"}, {"S1", "u_S1"}, {"S2", "u_S2"}, {"D", "u_D"}};
    spec.transition_rewards = {
        {{"H"}, "S1", "ic_HS1", "-du_HS1"},
        {{"H", "S1", "S2"}, "D", "ic_D", 0.0},
    };

    const ParamExpr both_costs(std::vector<ParamExpr::Term>{{0.0, "c_trtA", false},
                                                            {0.0, "c_trtB", false}});
    Strategy soc{"SoC", "Standard of care", {}, {}, {}, {}};
    Strategy a{"A", "Strategy A", {{"S1", "u_trtA"}}, {{"S1", "c_trtA"}, {"S2", "c_trtA"}}, {}, {}};
    Strategy b{"B", "Strategy B", {}, {{"S1", "c_trtB"}, {"S2", "c_trtB"}},
               {{"S1S2", "hr_S1S2_trtB"}}, {}};
    Strategy ab{"AB", "Strategy AB", {{"S1", "u_trtA"}}, {{"S1", both_costs}, {"S2", both_costs}},
                {{"S1S2", "hr_S1S2_trtB"}}, {}};
    spec.strategies = {soc, a, b, ab};

    spec.tunnels = {"S1", spec.grid.n_cycles};
    spec.psa = default_sick_sicker_distributions();
    return spec;
}

} // namespace cstm
