#pragma once

#include <string>
#include <vector>

#include "polcomp/bt.hpp"
#include "polcomp/fsm.hpp"
#include "polcomp/sim.hpp"

namespace polcomp {

enum class RunOutcome { Success, Failure, Timeout };

std::string_view to_string(RunOutcome outcome);

struct RunResult {
    RunOutcome outcome = RunOutcome::Timeout;
    int steps = 0;
    std::string digest;
    double final_battery = 0.0;
    std::vector<CommandRecord> commands;
};

// Ticks the tree once per simulation step until the root reports Success with
// no scripted disturbance still pending, or the budget runs out. A Failure at
// the root is not final: conditions move, so the next tick tries again.
RunResult run_tree(const PolicyTree& tree, const Library& library,
                   const ScenarioSpec& scenario);

// Steps the machine once per simulation step until it reaches a terminal
// state or the budget runs out.
RunResult run_machine(const StateMachine& machine, const Library& library,
                      const ScenarioSpec& scenario);

}  // namespace polcomp
