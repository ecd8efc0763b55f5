// scratch probe for single bench coordinates
#include <cstdio>
#include <string>

#include "epiplan/bench/matrix.hpp"
#include "epiplan/bench/report.hpp"

using namespace epiplan;

int main(int argc, char** argv) {
    bench::Coordinate at;
    at.domain = argc > 1 ? argv[1] : "gridworld";
    at.map = argc > 2 ? argv[2] : "3x3";
    at.team = argc > 3 ? std::atoi(argv[3]) : 3;
    at.scenario = domains::scenario_from_token(argc > 4 ? argv[4] : "S1");
    at.model = domains::comm_model_from_token(argc > 5 ? argv[5] : "selective");
    bench::MatrixConfig c;
    c.limits.wall_clock_ms = argc > 6 ? std::atof(argv[6]) : 60000;
    auto rec = bench::run_coordinate(at, c);
    std::printf("%s -> %s exp=%lld ms=%.1f plan=%zu actions=%ld comms=%ld note=%s\n",
                at.label().c_str(), bench::outcome_text(rec.outcome),
                static_cast<long long>(rec.expansions), rec.planning_ms, rec.plan.size(),
                rec.metrics.total_actions, rec.metrics.total_communications,
                rec.note.c_str());
    return 0;
}
