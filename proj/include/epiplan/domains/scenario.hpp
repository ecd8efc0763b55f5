// Scenario and communication-model identifiers shared by the generators,
// the transformer, and the bench harness.

#pragma once

#include <stdexcept>
#include <string>

namespace epiplan::domains {

enum class Scenario {
    EpistemicGoal,         // S1
    NonEpistemicGoal,      // S2
    CommanderBroadcast,    // S3
    CommanderNonBroadcast, // S4
    BlockedCells,          // S5
};

inline const char* scenario_token(Scenario s) {
    switch (s) {
        case Scenario::EpistemicGoal: return "S1";
        case Scenario::NonEpistemicGoal: return "S2";
        case Scenario::CommanderBroadcast: return "S3";
        case Scenario::CommanderNonBroadcast: return "S4";
        case Scenario::BlockedCells: return "S5";
    }
    return "?";
}

inline Scenario scenario_from_token(const std::string& s) {
    if (s == "S1" || s == "s1" || s == "epistemic") return Scenario::EpistemicGoal;
    if (s == "S2" || s == "s2" || s == "nonepistemic") return Scenario::NonEpistemicGoal;
    if (s == "S3" || s == "s3" || s == "commander-broadcast")
        return Scenario::CommanderBroadcast;
    if (s == "S4" || s == "s4" || s == "commander-nonbroadcast")
        return Scenario::CommanderNonBroadcast;
    if (s == "S5" || s == "s5" || s == "blocked") return Scenario::BlockedCells;
    throw std::invalid_argument("unknown scenario '" + s + "'");
}

inline bool is_commander_scenario(Scenario s) {
    return s == Scenario::CommanderBroadcast || s == Scenario::CommanderNonBroadcast;
}

enum class CommModel { Selective, NoComm, CommAll };

inline const char* comm_model_token(CommModel m) {
    switch (m) {
        case CommModel::Selective: return "selective";
        case CommModel::NoComm: return "nocomm";
        case CommModel::CommAll: return "commall";
    }
    return "?";
}

inline CommModel comm_model_from_token(const std::string& s) {
    if (s == "selective") return CommModel::Selective;
    if (s == "nocomm") return CommModel::NoComm;
    if (s == "commall") return CommModel::CommAll;
    throw std::invalid_argument("unknown communication model '" + s + "'");
}

}  // namespace epiplan::domains
