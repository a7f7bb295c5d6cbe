#include "cstm/cea.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace cstm {

std::string_view to_string(DominanceStatus s) noexcept {
    switch (s) {
    case DominanceStatus::ND:
        return "ND";
    case DominanceStatus::D:
        return "D";
    case DominanceStatus::ED:
        return "ED";
    }
    return "?";
}

std::vector<CeaRow> calculate_icers(const std::vector<double> &costs,
                                    const std::vector<double> &effects,
                                    const std::vector<std::string> &names) {
    const std::size_t n = names.size();
    if (n == 0) {
        throw std::invalid_argument("no strategies to compare");
    }
    if (costs.size() != n || effects.size() != n) {
        throw std::invalid_argument(fmt::format("got {} names, {} costs and {} effects", n,
                                                costs.size(), effects.size()));
    }
    if (std::set<std::string>(names.begin(), names.end()).size() != n) {
        throw std::invalid_argument("strategy names must be unique");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(costs[i]) || !std::isfinite(effects[i])) {
            throw std::invalid_argument(
                fmt::format("strategy '{}' has a non-finite cost or effect", names[i]));
        }
    }

    // Cheapest first; for equal cost the more effective first; then input order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (costs[a] != costs[b]) {
            return costs[a] < costs[b];
        }
        return effects[a] > effects[b];
    });

    std::vector<DominanceStatus> status(n, DominanceStatus::ND);

    // After sorting, a strategy is strongly dominated exactly when some
    // earlier strategy is at least as effective.
    double best_effect = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const auto i = order[k];
        if (effects[i] <= best_effect) {
            status[i] = DominanceStatus::D;
        } else {
            best_effect = effects[i];
        }
    }

    std::vector<std::size_t> front;
    for (auto i : order) {
        if (status[i] == DominanceStatus::ND) {
            front.push_back(i);
        }
    }
    const auto icer_between = [&](std::size_t a, std::size_t b) {
        return (costs[b] - costs[a]) / (effects[b] - effects[a]);
    };
    for (bool changed = true; changed && front.size() > 2;) {
        changed = false;
        for (std::size_t k = 1; k + 1 < front.size(); ++k) {
            if (icer_between(front[k - 1], front[k]) >= icer_between(front[k], front[k + 1])) {
                status[front[k]] = DominanceStatus::ED;
                front.erase(front.begin() + static_cast<std::ptrdiff_t>(k));
                changed = true;
                break;
            }
        }
    }

    std::vector<CeaRow> rows;
    rows.reserve(n);
    for (std::size_t k = 0; k < front.size(); ++k) {
        const auto i = front[k];
        CeaRow r{names[i], costs[i], effects[i]};
        if (k > 0) {
            const auto prev = front[k - 1];
            r.inc_cost = costs[i] - costs[prev];
            r.inc_effect = effects[i] - effects[prev];
            r.icer = r.inc_cost / r.inc_effect;
        }
        rows.push_back(std::move(r));
    }
    for (auto i : order) {
        if (status[i] != DominanceStatus::ND) {
            CeaRow r{names[i], costs[i], effects[i]};
            r.status = status[i];
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

std::vector<CeaRow> frontier(const std::vector<CeaRow> &rows) {
    std::vector<CeaRow> out;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
                 [](const CeaRow &r) { return r.status == DominanceStatus::ND; });
    return out;
}

} // namespace cstm
