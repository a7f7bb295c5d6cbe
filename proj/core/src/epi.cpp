#include "cstm/epi.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace cstm {

std::vector<double> survival(const CohortTrace &trace,
                             const std::vector<std::string> &death_states) {
    std::vector<bool> dead(static_cast<std::size_t>(trace.n_states()), false);
    for (const auto &d : death_states) {
        dead[static_cast<std::size_t>(trace.index_of(d))] = true;
    }
    std::vector<double> s(static_cast<std::size_t>(trace.values.rows()), 0.0);
    for (Eigen::Index t = 0; t < trace.values.rows(); ++t) {
        double alive = 0.0;
        for (int j = 0; j < trace.n_states(); ++j) {
            if (!dead[static_cast<std::size_t>(j)]) {
                alive += trace.values(t, j);
            }
        }
        s[static_cast<std::size_t>(t)] = alive;
    }
    return s;
}

double life_expectancy(const std::vector<double> &survival, double cycle_length) {
    return std::accumulate(survival.begin(), survival.end(), 0.0) * cycle_length;
}

std::vector<std::optional<double>> prevalence(const CohortTrace &trace,
                                              const std::vector<std::string> &states,
                                              const std::vector<std::string> &death_states) {
    for (const auto &s : states) {
        if (std::find(death_states.begin(), death_states.end(), s) != death_states.end()) {
            throw std::invalid_argument(
                fmt::format("prevalence state '{}' is a death state", s));
        }
    }
    std::vector<int> cols;
    for (const auto &s : states) {
        cols.push_back(trace.index_of(s));
    }
    const auto alive = survival(trace, death_states);
    std::vector<std::optional<double>> out(alive.size());
    for (std::size_t t = 0; t < alive.size(); ++t) {
        if (alive[t] <= 0.0) {
            continue;
        }
        double sick = 0.0;
        for (int c : cols) {
            sick += trace.values(static_cast<Eigen::Index>(t), c);
        }
        out[t] = sick / alive[t];
    }
    return out;
}

} // namespace cstm
