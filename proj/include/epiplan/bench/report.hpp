// Aggregation and reporting. Per domain, metrics of solved runs average
// across the scenario/setup cells; relative effectiveness is the
// percentage change of each baseline against Selective,
// (baseline - selective) / selective * 100, so higher means a worse
// baseline. A zero Selective average makes the change undefined (null in
// JSON, "undefined" in CSV), never infinite.

#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epiplan/bench/matrix.hpp"
#include "epiplan/json_io.hpp"

namespace epiplan::bench {

inline const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {
        "schema",       "domain",          "map",
        "team",         "scenario",        "model",
        "seed",         "outcome",         "strategy",
        "expansions",   "planning_ms",     "raw_plan_length",
        "total_actions", "noop_actions",   "total_communications",
        "sharedness_percent", "plan_validated"};
    return cols;
}

inline std::string records_to_csv(const std::vector<BenchRecord>& records) {
    std::string out;
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out += cols[i];
        out += i + 1 < cols.size() ? ',' : '\n';
    }
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return std::string(buf);
    };
    for (const auto& r : records) {
        out += std::to_string(io::kSchemaVersion) + ",";
        out += r.at.domain + "," + r.at.map + "," + std::to_string(r.at.team) + ",";
        out += std::string(domains::scenario_token(r.at.scenario)) + ",";
        out += std::string(domains::comm_model_token(r.at.model)) + ",";
        out += std::to_string(r.seed) + ",";
        out += std::string(outcome_text(r.outcome)) + "," + r.strategy + ",";
        out += std::to_string(r.expansions) + "," + num(r.planning_ms) + ",";
        out += std::to_string(r.metrics.raw_plan_length) + ",";
        out += std::to_string(r.metrics.total_actions) + ",";
        out += std::to_string(r.metrics.noop_actions) + ",";
        out += std::to_string(r.metrics.total_communications) + ",";
        out += num(r.metrics.sharedness_percent) + ",";
        out += r.plan_validated ? "1" : "0";
        out += "\n";
    }
    return out;
}

struct MetricAverages {
    int solved = 0;
    double completion_time_ms = 0.0;
    double total_actions = 0.0;
    double total_communications = 0.0;
    double sharedness_percent = 0.0;
};

inline std::optional<double> pct_change(double selective, double baseline) {
    if (selective == 0.0) return std::nullopt;  // undefined, not infinite
    return (baseline - selective) / selective * 100.0;
}

struct DomainSummary {
    std::map<domains::CommModel, MetricAverages> averages;
    // baseline -> metric name -> change (missing = undefined)
    std::map<domains::CommModel, std::map<std::string, std::optional<double>>> change;
};

struct Summary {
    std::map<std::string, DomainSummary> domains_;
};

inline Summary summarize(const std::vector<BenchRecord>& records) {
    Summary s;
    std::map<std::string, std::map<domains::CommModel, std::vector<const BenchRecord*>>>
        buckets;
    for (const auto& r : records) {
        if (r.outcome == BenchRecord::Outcome::Solved) {
            buckets[r.at.domain][r.at.model].push_back(&r);
        }
    }
    for (auto& [domain, by_model] : buckets) {
        DomainSummary& ds = s.domains_[domain];
        for (auto& [model, recs] : by_model) {
            MetricAverages avg;
            avg.solved = static_cast<int>(recs.size());
            for (const BenchRecord* r : recs) {
                avg.completion_time_ms += r->planning_ms;
                avg.total_actions += r->metrics.total_actions;
                avg.total_communications += r->metrics.total_communications;
                avg.sharedness_percent += r->metrics.sharedness_percent;
            }
            if (avg.solved > 0) {
                avg.completion_time_ms /= avg.solved;
                avg.total_actions /= avg.solved;
                avg.total_communications /= avg.solved;
                avg.sharedness_percent /= avg.solved;
            }
            ds.averages[model] = avg;
        }
        auto sel = ds.averages.find(domains::CommModel::Selective);
        if (sel == ds.averages.end()) continue;
        for (auto model : {domains::CommModel::NoComm, domains::CommModel::CommAll}) {
            auto base = ds.averages.find(model);
            if (base == ds.averages.end()) continue;
            auto& out = ds.change[model];
            out["completion_time_ms"] =
                pct_change(sel->second.completion_time_ms, base->second.completion_time_ms);
            out["total_actions"] =
                pct_change(sel->second.total_actions, base->second.total_actions);
            out["total_communications"] = pct_change(sel->second.total_communications,
                                                     base->second.total_communications);
        }
    }
    return s;
}

inline nlohmann::json summary_to_json(const Summary& s) {
    nlohmann::json j;
    j["schema"] = io::kSchemaVersion;
    auto round2 = [](double v) { return std::llround(v * 100.0) / 100.0; };
    for (const auto& [domain, ds] : s.domains_) {
        nlohmann::json jd;
        for (const auto& [model, avg] : ds.averages) {
            jd["averages"][domains::comm_model_token(model)] = {
                {"solved", avg.solved},
                {"completion_time_ms", round2(avg.completion_time_ms)},
                {"total_actions", round2(avg.total_actions)},
                {"total_communications", round2(avg.total_communications)},
                {"sharedness_percent", round2(avg.sharedness_percent)},
            };
        }
        for (const auto& [model, metrics] : ds.change) {
            nlohmann::json jc;
            for (const auto& [metric, value] : metrics) {
                if (value) {
                    jc[metric] = round2(*value);
                } else {
                    jc[metric] = nullptr;
                }
            }
            jd["pct_change_vs_selective"][domains::comm_model_token(model)] = jc;
        }
        j["domains"][domain] = jd;
    }
    return j;
}

inline nlohmann::json record_to_json(const BenchRecord& r) {
    nlohmann::json j;
    j["schema"] = io::kSchemaVersion;
    j["domain"] = r.at.domain;
    j["map"] = r.at.map;
    j["team"] = r.at.team;
    j["scenario"] = domains::scenario_token(r.at.scenario);
    j["model"] = domains::comm_model_token(r.at.model);
    j["seed"] = r.seed;
    j["outcome"] = outcome_text(r.outcome);
    if (!r.note.empty()) j["note"] = r.note;
    j["strategy"] = r.strategy;
    j["expansions"] = r.expansions;
    j["generated"] = r.generated;
    j["planning_ms"] = r.planning_ms;
    j["plan"] = r.plan;
    j["plan_validated"] = r.plan_validated;
    j["metrics"] = io::metrics_to_json(r.metrics);
    return j;
}

inline BenchRecord record_from_json(const nlohmann::json& j) {
    BenchRecord r;
    r.at.domain = j.at("domain").get<std::string>();
    r.at.map = j.at("map").get<std::string>();
    r.at.team = j.at("team").get<int>();
    r.at.scenario = domains::scenario_from_token(j.at("scenario").get<std::string>());
    r.at.model = domains::comm_model_from_token(j.at("model").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.outcome = outcome_from_text(j.at("outcome").get<std::string>());
    r.note = j.value("note", "");
    r.strategy = j.value("strategy", "");
    r.expansions = j.value("expansions", std::int64_t{0});
    r.generated = j.value("generated", std::int64_t{0});
    r.planning_ms = j.value("planning_ms", 0.0);
    if (j.contains("plan")) r.plan = j["plan"].get<std::vector<std::string>>();
    r.plan_validated = j.value("plan_validated", false);
    if (j.contains("metrics")) r.metrics = io::metrics_from_json(j["metrics"]);
    return r;
}

inline nlohmann::json matrix_config_to_json(const MatrixConfig& c) {
    nlohmann::json j;
    j["schema"] = io::kSchemaVersion;
    j["domains"] = c.domains;
    auto setups = [](const std::vector<MapTeam>& v) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& s : v) out.push_back({{"map", s.map}, {"team", s.team}});
        return out;
    };
    j["gridworld_setups"] = setups(c.gridworld_setups);
    j["bw4t_setups"] = setups(c.bw4t_setups);
    nlohmann::json scenarios = nlohmann::json::array();
    for (auto s : c.scenarios) scenarios.push_back(domains::scenario_token(s));
    j["scenarios"] = scenarios;
    nlohmann::json models = nlohmann::json::array();
    for (auto m : c.models) models.push_back(domains::comm_model_token(m));
    j["models"] = models;
    j["seed"] = c.seed;
    j["strategy"] = search::to_string(c.strategy);
    j["max_expansions"] = c.limits.max_expansions;
    j["timeout_ms"] = c.limits.wall_clock_ms;
    j["depth"] = c.depth;
    j["turns"] = c.turn_taking;
    j["concurrency"] = c.concurrency;
    return j;
}

inline MatrixConfig matrix_config_from_json(const nlohmann::json& j) {
    MatrixConfig c;
    if (j.contains("domains")) c.domains = j["domains"].get<std::vector<std::string>>();
    auto setups = [](const nlohmann::json& arr) {
        std::vector<MapTeam> out;
        for (const auto& s : arr) {
            out.push_back({s.at("map").get<std::string>(), s.at("team").get<int>()});
        }
        return out;
    };
    if (j.contains("gridworld_setups")) c.gridworld_setups = setups(j["gridworld_setups"]);
    if (j.contains("bw4t_setups")) c.bw4t_setups = setups(j["bw4t_setups"]);
    if (j.contains("scenarios")) {
        c.scenarios.clear();
        for (const auto& s : j["scenarios"]) {
            c.scenarios.push_back(domains::scenario_from_token(s.get<std::string>()));
        }
    }
    if (j.contains("models")) {
        c.models.clear();
        for (const auto& m : j["models"]) {
            c.models.push_back(domains::comm_model_from_token(m.get<std::string>()));
        }
    }
    c.seed = j.value("seed", std::uint64_t{7});
    if (j.contains("strategy")) {
        c.strategy = search::strategy_from_string(j["strategy"].get<std::string>());
    }
    c.limits.max_expansions = j.value("max_expansions", c.limits.max_expansions);
    c.limits.wall_clock_ms = j.value("timeout_ms", c.limits.wall_clock_ms);
    c.depth = j.value("depth", c.depth);
    c.turn_taking = j.value("turns", c.turn_taking);
    c.concurrency = j.value("concurrency", c.concurrency);
    return c;
}

inline nlohmann::json records_to_json(const std::vector<BenchRecord>& records) {
    nlohmann::json j;
    j["schema"] = io::kSchemaVersion;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) arr.push_back(record_to_json(r));
    j["records"] = arr;
    return j;
}

inline std::vector<BenchRecord> records_from_json(const nlohmann::json& j) {
    std::vector<BenchRecord> out;
    for (const auto& jr : j.at("records")) out.push_back(record_from_json(jr));
    return out;
}

}  // namespace epiplan::bench
