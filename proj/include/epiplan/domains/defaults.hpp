// Seeded default instances, one per bench matrix cell. Layouts depend on
// the domain, map, team size, scenario, and seed, but never on the
// communication model, so the three models of one coordinate run on the
// same placements.

#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "epiplan/domains/bw4t.hpp"
#include "epiplan/domains/comm_model.hpp"
#include "epiplan/domains/gridworld.hpp"

namespace epiplan::domains {

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ull;
    for (char c : tag) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001b3ull;
        h ^= h >> 31;
    }
    return h;
}

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

// k distinct values from 0..bound-1, excluding `taken`
inline std::vector<int> draw_distinct(std::mt19937_64& rng, int k, int bound,
                                      const std::set<int>& taken) {
    if (k + static_cast<int>(taken.size()) > bound) {
        throw std::invalid_argument("map too small for the requested layout");
    }
    std::set<int> used = taken;
    std::vector<int> out;
    while (static_cast<int>(out.size()) < k) {
        int v = static_cast<int>(draw(rng, bound));
        if (used.insert(v).second) out.push_back(v);
    }
    return out;
}

}  // namespace detail

inline GridworldConfig default_gridworld_config(int width, int height, int team,
                                                Scenario scenario, CommModel model,
                                                std::uint64_t seed) {
    std::string tag = "gridworld:" + std::to_string(width) + "x" + std::to_string(height) +
                      ":" + std::to_string(team) + ":" + scenario_token(scenario);
    std::mt19937_64 rng(detail::mix_seed(seed, tag));
    const int cells = width * height;
    const int survivors = scenario == Scenario::BlockedCells ? 1 : 3;

    for (int attempt = 0; attempt < 1000; ++attempt) {
        GridworldConfig c;
        c.width = width;
        c.height = height;
        c.scenario = scenario;
        c.comm_model = model;
        std::set<int> taken;
        auto starts = detail::draw_distinct(rng, team, cells, {});
        for (int i = 0; i < team; ++i) {
            c.agent_starts["a" + std::to_string(i + 1)] = starts[i];
            taken.insert(starts[i]);
        }
        auto placed = detail::draw_distinct(rng, survivors, cells, taken);
        for (int i = 0; i < survivors; ++i) {
            c.survivor_positions["s" + std::to_string(i + 1)] = placed[i];
            taken.insert(placed[i]);
        }
        if (is_commander_scenario(scenario)) {
            c.commander_agent = "a1";
            if (scenario == Scenario::CommanderNonBroadcast) c.liaison_agent = "a2";
        }
        if (scenario == Scenario::BlockedCells) {
            c.liaison_agent = "a1";
            auto target = detail::draw_distinct(rng, 1, cells, taken);
            c.target_position = target[0];
            taken.insert(target[0]);
            for (int b : detail::draw_distinct(rng, 2, cells, taken)) {
                c.blocked_cells.insert(b);
            }
            // with several agents a corridor map can force an impossible
            // swap; only ship layouts where the free cells keep a cycle
            if (team >= 2 &&
                !detail::grid_supports_shuffling(width, height, c.blocked_cells)) {
                continue;
            }
        }
        try {
            detail::check_gridworld_config(c);
            return c;
        } catch (const std::invalid_argument&) {
            // blocked layout cut something off; redraw
        }
    }
    throw std::invalid_argument("no valid gridworld layout found for " + tag);
}

inline BW4TConfig default_bw4t_config(int rooms, int team, Scenario scenario,
                                      CommModel model, std::uint64_t seed) {
    std::string tag = "bw4t:rooms" + std::to_string(rooms) + ":" + std::to_string(team) +
                      ":" + scenario_token(scenario);
    std::mt19937_64 rng(detail::mix_seed(seed, tag));
    const std::vector<std::string> colors = {"red", "green", "blue", "yellow"};

    for (int attempt = 0; attempt < 1000; ++attempt) {
        BW4TConfig c;
        c.room_count = rooms;
        c.scenario = scenario;
        c.comm_model = model;
        c.target_colors = {"red", "blue"};
        for (std::size_t i = 0; i < colors.size(); ++i) {
            int room = 1 + static_cast<int>(detail::draw(rng, rooms));
            c.block_placement["b" + std::to_string(i + 1)] = {room, colors[i]};
        }
        for (int i = 0; i < team; ++i) c.agent_starts["a" + std::to_string(i + 1)] = 0;
        if (is_commander_scenario(scenario)) {
            c.commander_agent = "a1";
            c.agent_starts["a1"] = 1;  // the post sits in a search room, off the drop zone
            if (scenario == Scenario::CommanderNonBroadcast) c.liaison_agent = "a2";
        }
        if (scenario == Scenario::BlockedCells) {
            std::vector<int> target_free;
            for (int r = 1; r <= rooms; ++r) {
                bool has_target = false;
                for (const auto& [block, info] : c.block_placement) {
                    (void)block;
                    if (info.room == r &&
                        (info.color == c.target_colors.first ||
                         info.color == c.target_colors.second)) {
                        has_target = true;
                    }
                }
                if (!has_target) target_free.push_back(r);
            }
            if (target_free.empty()) continue;  // redraw placements
            c.blocked_room =
                target_free[detail::draw(rng, target_free.size())];
        }
        try {
            detail::check_bw4t_config(c);
            return c;
        } catch (const std::invalid_argument&) {
        }
    }
    throw std::invalid_argument("no valid bw4t layout found for " + tag);
}

inline GeneratedTask generate(const GridworldConfig& c) {
    GeneratedTask t = gridworld(c);
    t.domain = apply_comm_model(std::move(t.domain), c.comm_model, c.scenario);
    return t;
}

inline GeneratedTask generate(const BW4TConfig& c) {
    GeneratedTask t = bw4t(c);
    t.domain = apply_comm_model(std::move(t.domain), c.comm_model, c.scenario);
    return t;
}

}  // namespace epiplan::domains
