#include "cstm/spec_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "cstm/life_table.hpp"

namespace cstm {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string &path, const std::string &msg) {
    throw IoError(fmt::format("spec {}: {}", path.empty() ? "<root>" : path, msg));
}

const json &require(const json &obj, const char *key, const std::string &path) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        schema_error(path, fmt::format("missing key '{}'", key));
    }
    return *it;
}

void expect_object(const json &j, const std::string &path) {
    if (!j.is_object()) {
        schema_error(path, "expected an object");
    }
}

void reject_unknown_keys(const json &j, std::initializer_list<const char *> allowed,
                         const std::string &path) {
    for (const auto &[key, _] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char *a) { return key == a; }) == allowed.end()) {
            schema_error(path, fmt::format("unknown key '{}'", key));
        }
    }
}

double get_number(const json &j, const std::string &path) {
    if (!j.is_number()) {
        schema_error(path, "expected a number");
    }
    return j.get<double>();
}

std::string get_string(const json &j, const std::string &path) {
    if (!j.is_string()) {
        schema_error(path, "expected a string");
    }
    return j.get<std::string>();
}

std::vector<std::string> get_strings(const json &j, const std::string &path) {
    if (!j.is_array()) {
        schema_error(path, "expected an array of strings");
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(get_string(j[i], fmt::format("{}[{}]", path, i)));
    }
    return out;
}

ParamExpr::Term term_from_json(const json &j, const std::string &path) {
    if (j.is_number()) {
        return {j.get<double>(), {}, false};
    }
    if (j.is_string()) {
        auto s = j.get<std::string>();
        ParamExpr::Term t;
        if (!s.empty() && s.front() == '-') {
            t.negated = true;
            s.erase(0, 1);
        }
        if (s.empty()) {
            schema_error(path, "empty parameter name");
        }
        t.parameter = std::move(s);
        return t;
    }
    schema_error(path, "expected a number or a parameter name");
}

ParamExpr expr_from_json(const json &j, const std::string &path) {
    std::vector<ParamExpr::Term> terms;
    if (j.is_array()) {
        if (j.empty()) {
            schema_error(path, "empty expression");
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            terms.push_back(term_from_json(j[i], fmt::format("{}[{}]", path, i)));
        }
    } else {
        terms.push_back(term_from_json(j, path));
    }
    return ParamExpr(std::move(terms));
}

json term_to_json(const ParamExpr::Term &t) {
    if (t.parameter.empty()) {
        return t.constant;
    }
    return (t.negated ? "-" : "") + t.parameter;
}

json expr_to_json(const ParamExpr &e) {
    if (e.terms().size() == 1) {
        return term_to_json(e.terms().front());
    }
    json arr = json::array();
    for (const auto &t : e.terms()) {
        arr.push_back(term_to_json(t));
    }
    return arr;
}

std::map<std::string, ParamExpr> expr_map_from_json(const json &j, const std::string &path) {
    expect_object(j, path);
    std::map<std::string, ParamExpr> out;
    for (const auto &[key, value] : j.items()) {
        out.emplace(key, expr_from_json(value, path + "." + key));
    }
    return out;
}

json expr_map_to_json(const std::map<std::string, ParamExpr> &m) {
    json obj = json::object();
    for (const auto &[key, value] : m) {
        obj[key] = expr_to_json(value);
    }
    return obj;
}

TransitionReward transition_reward_from_json(const json &j, const std::string &path) {
    expect_object(j, path);
    reject_unknown_keys(j, {"origins", "destination", "cost", "utility"}, path);
    TransitionReward r;
    r.origins = get_strings(require(j, "origins", path), path + ".origins");
    r.destination = get_string(require(j, "destination", path), path + ".destination");
    r.cost = j.contains("cost") ? expr_from_json(j["cost"], path + ".cost") : ParamExpr(0.0);
    r.utility =
        j.contains("utility") ? expr_from_json(j["utility"], path + ".utility") : ParamExpr(0.0);
    return r;
}

json transition_reward_to_json(const TransitionReward &r) {
    return json{{"origins", r.origins},
                {"destination", r.destination},
                {"cost", expr_to_json(r.cost)},
                {"utility", expr_to_json(r.utility)}};
}

Strategy strategy_from_json(const json &j, const std::string &path) {
    expect_object(j, path);
    reject_unknown_keys(j,
                        {"name", "label", "utility_overrides", "cost_addons", "hazard_modifiers",
                         "transition_reward_edits"},
                        path);
    Strategy s;
    s.name = get_string(require(j, "name", path), path + ".name");
    s.label = j.contains("label") ? get_string(j["label"], path + ".label") : s.name;
    if (j.contains("utility_overrides")) {
        s.utility_overrides = expr_map_from_json(j["utility_overrides"], path + ".utility_overrides");
    }
    if (j.contains("cost_addons")) {
        s.cost_addons = expr_map_from_json(j["cost_addons"], path + ".cost_addons");
    }
    if (j.contains("hazard_modifiers")) {
        s.hazard_modifiers = expr_map_from_json(j["hazard_modifiers"], path + ".hazard_modifiers");
    }
    if (j.contains("transition_reward_edits")) {
        const auto &arr = j["transition_reward_edits"];
        if (!arr.is_array()) {
            schema_error(path + ".transition_reward_edits", "expected an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            s.transition_reward_edits.push_back(transition_reward_from_json(
                arr[i], fmt::format("{}.transition_reward_edits[{}]", path, i)));
        }
    }
    return s;
}

json strategy_to_json(const Strategy &s) {
    json j{{"name", s.name}, {"label", s.label}};
    if (!s.utility_overrides.empty()) {
        j["utility_overrides"] = expr_map_to_json(s.utility_overrides);
    }
    if (!s.cost_addons.empty()) {
        j["cost_addons"] = expr_map_to_json(s.cost_addons);
    }
    if (!s.hazard_modifiers.empty()) {
        j["hazard_modifiers"] = expr_map_to_json(s.hazard_modifiers);
    }
    if (!s.transition_reward_edits.empty()) {
        json arr = json::array();
        for (const auto &r : s.transition_reward_edits) {
            arr.push_back(transition_reward_to_json(r));
        }
        j["transition_reward_edits"] = arr;
    }
    return j;
}

double field(const json &j, const char *key, const std::string &path) {
    return get_number(require(j, key, path), path + "." + key);
}

Distribution distribution_from_json(const json &j, const std::string &path,
                                    const ParameterSet &params, const std::string &name) {
    expect_object(j, path);
    Family family{};
    try {
        family = family_from_string(get_string(require(j, "family", path), path + ".family"));
    } catch (const std::invalid_argument &e) {
        schema_error(path + ".family", e.what());
    }
    const bool moments = j.contains("mean") || j.contains("se");
    try {
        switch (family) {
        case Family::fixed:
            reject_unknown_keys(j, {"family", "value"}, path);
            if (j.contains("value")) {
                return Distribution::fixed(field(j, "value", path));
            }
            if (!params.contains(name)) {
                schema_error(path, "fixed distribution without a value for an unknown parameter");
            }
            return Distribution::fixed(params.get(name));
        case Family::beta:
            if (moments) {
                reject_unknown_keys(j, {"family", "mean", "se"}, path);
                return Distribution::beta_from_moments(field(j, "mean", path),
                                                       field(j, "se", path));
            }
            reject_unknown_keys(j, {"family", "alpha", "beta"}, path);
            return Distribution::beta(field(j, "alpha", path), field(j, "beta", path));
        case Family::gamma:
            if (moments) {
                reject_unknown_keys(j, {"family", "mean", "se"}, path);
                return Distribution::gamma_from_moments(field(j, "mean", path),
                                                        field(j, "se", path));
            }
            reject_unknown_keys(j, {"family", "shape", "scale"}, path);
            return Distribution::gamma(field(j, "shape", path), field(j, "scale", path));
        case Family::lognormal:
            if (moments) {
                reject_unknown_keys(j, {"family", "mean", "se"}, path);
                return Distribution::lognormal_from_moments(field(j, "mean", path),
                                                            field(j, "se", path));
            }
            reject_unknown_keys(j, {"family", "meanlog", "sdlog"}, path);
            return Distribution::lognormal(field(j, "meanlog", path), field(j, "sdlog", path));
        case Family::uniform:
            reject_unknown_keys(j, {"family", "min", "max"}, path);
            return Distribution::uniform(field(j, "min", path), field(j, "max", path));
        }
    } catch (const std::invalid_argument &e) {
        schema_error(path, e.what());
    }
    schema_error(path, "unsupported family");
}

json distribution_to_json(const Distribution &d) {
    json j{{"family", std::string(to_string(d.family))}};
    switch (d.family) {
    case Family::fixed:
        j["value"] = d.a;
        break;
    case Family::beta:
        j["alpha"] = d.a;
        j["beta"] = d.b;
        break;
    case Family::gamma:
        j["shape"] = d.a;
        j["scale"] = d.b;
        break;
    case Family::lognormal:
        j["meanlog"] = d.a;
        j["sdlog"] = d.b;
        break;
    case Family::uniform:
        j["min"] = d.a;
        j["max"] = d.b;
        break;
    }
    return j;
}

void read_life_table(const json &j, const std::filesystem::path &base_dir, ModelSpec &spec) {
    if (j.is_string()) {
        spec.life_table_source = j.get<std::string>();
        std::filesystem::path p(spec.life_table_source);
        if (p.is_relative() && !base_dir.empty()) {
            p = base_dir / p;
        }
        try {
            spec.life_table = read_life_table_csv(p);
        } catch (const Error &e) {
            spec.life_table_error = e.what();
        }
        return;
    }
    expect_object(j, "life_table");
    reject_unknown_keys(j, {"first_age", "rates"}, "life_table");
    const auto first = require(j, "first_age", "life_table");
    if (!first.is_number_integer()) {
        schema_error("life_table.first_age", "expected an integer");
    }
    const auto &rates_json = require(j, "rates", "life_table");
    if (!rates_json.is_array()) {
        schema_error("life_table.rates", "expected an array");
    }
    std::vector<double> rates;
    for (std::size_t i = 0; i < rates_json.size(); ++i) {
        rates.push_back(get_number(rates_json[i], fmt::format("life_table.rates[{}]", i)));
    }
    try {
        spec.life_table = LifeTable(first.get<int>(), std::move(rates));
    } catch (const ValidationError &e) {
        spec.life_table_error = e.what();
    }
}

} // namespace

ModelSpec parse_spec(std::string_view json_text, const std::filesystem::path &base_dir) {
    json root;
    try {
        root = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error &e) {
        throw IoError(fmt::format("spec is not valid JSON: {}", e.what()));
    }
    expect_object(root, "");
    reject_unknown_keys(root,
                        {"name", "states", "time", "initial", "parameters", "life_table",
                         "state_rewards", "transition_rewards", "strategies", "tunnels", "psa"},
                        "");

    ModelSpec spec;
    spec.name = root.contains("name") ? get_string(root["name"], "name") : "";

    const auto &states = require(root, "states", "");
    expect_object(states, "states");
    reject_unknown_keys(states, {"names", "absorbing", "death"}, "states");
    spec.states = StateSpace(
        get_strings(require(states, "names", "states"), "states.names"),
        states.contains("absorbing") ? get_strings(states["absorbing"], "states.absorbing")
                                     : std::vector<std::string>{},
        states.contains("death") ? get_strings(states["death"], "states.death")
                                 : std::vector<std::string>{});

    const auto &time = require(root, "time", "");
    expect_object(time, "time");
    reject_unknown_keys(time, {"age_init", "age_max", "cycle_length", "n_cycles"}, "time");
    spec.grid.age_init = field(time, "age_init", "time");
    spec.grid.age_max = field(time, "age_max", "time");
    spec.grid.cycle_length =
        time.contains("cycle_length") ? get_number(time["cycle_length"], "time.cycle_length") : 1.0;
    if (time.contains("n_cycles")) {
        if (!time["n_cycles"].is_number_integer()) {
            schema_error("time.n_cycles", "expected an integer");
        }
        spec.grid.n_cycles = time["n_cycles"].get<int>();
    } else if (spec.grid.cycle_length > 0.0) {
        const double n = (spec.grid.age_max - spec.grid.age_init) / spec.grid.cycle_length;
        spec.grid.n_cycles = static_cast<int>(std::lround(n));
    }

    const auto &params = require(root, "parameters", "");
    expect_object(params, "parameters");
    for (const auto &[key, value] : params.items()) {
        spec.parameters.set(key, get_number(value, "parameters." + key));
    }

    if (root.contains("life_table")) {
        read_life_table(root["life_table"], base_dir, spec);
    }

    const auto &init = require(root, "initial", "");
    std::vector<double> occupancy;
    if (init.is_array()) {
        for (std::size_t i = 0; i < init.size(); ++i) {
            occupancy.push_back(get_number(init[i], fmt::format("initial[{}]", i)));
        }
    } else if (init.is_object()) {
        occupancy.assign(spec.states.size(), 0.0);
        for (const auto &[key, value] : init.items()) {
            if (!spec.states.contains(key)) {
                schema_error("initial." + key, "unknown state");
            }
            occupancy[spec.states.index_of(key)] = get_number(value, "initial." + key);
        }
    } else {
        schema_error("initial", "expected an array or an object");
    }
    spec.initial = InitialStateVector(std::move(occupancy));

    const auto &rewards = require(root, "state_rewards", "");
    expect_object(rewards, "state_rewards");
    reject_unknown_keys(rewards, {"cost", "utility"}, "state_rewards");
    spec.state_rewards.cost =
        expr_map_from_json(require(rewards, "cost", "state_rewards"), "state_rewards.cost");
    spec.state_rewards.utility =
        expr_map_from_json(require(rewards, "utility", "state_rewards"), "state_rewards.utility");

    if (root.contains("transition_rewards")) {
        const auto &arr = root["transition_rewards"];
        if (!arr.is_array()) {
            schema_error("transition_rewards", "expected an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            spec.transition_rewards.push_back(
                transition_reward_from_json(arr[i], fmt::format("transition_rewards[{}]", i)));
        }
    }

    const auto &strategies = require(root, "strategies", "");
    if (!strategies.is_array()) {
        schema_error("strategies", "expected an array");
    }
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        spec.strategies.push_back(
            strategy_from_json(strategies[i], fmt::format("strategies[{}]", i)));
    }

    spec.tunnels = {"S1", spec.grid.n_cycles};
    if (root.contains("tunnels")) {
        const auto &t = root["tunnels"];
        expect_object(t, "tunnels");
        reject_unknown_keys(t, {"state", "size"}, "tunnels");
        if (t.contains("state")) {
            spec.tunnels.state = get_string(t["state"], "tunnels.state");
        }
        if (t.contains("size")) {
            if (!t["size"].is_number_integer()) {
                schema_error("tunnels.size", "expected an integer");
            }
            spec.tunnels.size = t["size"].get<int>();
        }
    }

    if (root.contains("psa")) {
        const auto &psa = root["psa"];
        expect_object(psa, "psa");
        DistributionSpec dists;
        for (const auto &[key, value] : psa.items()) {
            dists.emplace(key, distribution_from_json(value, "psa." + key, spec.parameters, key));
        }
        spec.psa = std::move(dists);
    }
    return spec;
}

ModelSpec load_spec(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open spec '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_spec(buf.str(), path.parent_path());
    } catch (const IoError &e) {
        throw IoError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::string serialize_spec(const ModelSpec &spec) {
    json root;
    root["name"] = spec.name;
    root["states"] = json{{"names", spec.states.names()},
                          {"absorbing", spec.states.absorbing()},
                          {"death", spec.states.death_states()}};
    root["time"] = json{{"age_init", spec.grid.age_init},
                        {"age_max", spec.grid.age_max},
                        {"cycle_length", spec.grid.cycle_length},
                        {"n_cycles", spec.grid.n_cycles}};
    root["initial"] = spec.initial.values();
    json params = json::object();
    for (const auto &[k, v] : spec.parameters.values()) {
        params[k] = v;
    }
    root["parameters"] = params;
    if (!spec.life_table_source.empty()) {
        root["life_table"] = spec.life_table_source;
    } else if (spec.life_table) {
        root["life_table"] =
            json{{"first_age", spec.life_table->first_age()}, {"rates", spec.life_table->rates()}};
    }
    root["state_rewards"] = json{{"cost", expr_map_to_json(spec.state_rewards.cost)},
                                 {"utility", expr_map_to_json(spec.state_rewards.utility)}};
    json trs = json::array();
    for (const auto &r : spec.transition_rewards) {
        trs.push_back(transition_reward_to_json(r));
    }
    root["transition_rewards"] = trs;
    json strategies = json::array();
    for (const auto &s : spec.strategies) {
        strategies.push_back(strategy_to_json(s));
    }
    root["strategies"] = strategies;
    root["tunnels"] = json{{"state", spec.tunnels.state}, {"size", spec.tunnels.size}};
    if (spec.psa) {
        json psa = json::object();
        for (const auto &[k, d] : *spec.psa) {
            psa[k] = distribution_to_json(d);
        }
        root["psa"] = psa;
    }
    return root.dump(2) + "\n";
}

void save_spec(const ModelSpec &spec, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError(fmt::format("cannot write spec '{}'", path.string()));
    }
    out << serialize_spec(spec);
    if (!out) {
        throw IoError(fmt::format("error writing spec '{}'", path.string()));
    }
}

} // namespace cstm
