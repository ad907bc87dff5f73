#include "polcomp/runner.hpp"

namespace polcomp {

std::string_view to_string(RunOutcome outcome) {
    switch (outcome) {
        case RunOutcome::Success: return "success";
        case RunOutcome::Failure: return "failure";
        case RunOutcome::Timeout: return "timeout";
    }
    return "?";
}

namespace {

RunResult finish(Simulation& sim, RunOutcome outcome) {
    RunResult result;
    result.outcome = outcome;
    result.steps = sim.step();
    result.digest = sim.digest();
    result.final_battery = sim.battery();
    result.commands = sim.commands();
    return result;
}

}  // namespace

RunResult run_tree(const PolicyTree& tree, const Library& library,
                   const ScenarioSpec& scenario) {
    tree.validate();
    Simulation sim(library, scenario);
    BtExecution exec(tree);
    for (int i = 0; i < scenario.budget; ++i) {
        Status status = exec.tick(sim);
        if (status == Status::Success && sim.pending_events() == 0) {
            return finish(sim, RunOutcome::Success);
        }
        sim.advance();
    }
    return finish(sim, RunOutcome::Timeout);
}

RunResult run_machine(const StateMachine& machine, const Library& library,
                      const ScenarioSpec& scenario) {
    Simulation sim(library, scenario);
    FsmExecution exec(machine);
    for (int i = 0; i < scenario.budget; ++i) {
        Status status = exec.step(sim);
        if (status == Status::Success) return finish(sim, RunOutcome::Success);
        if (status == Status::Failure) return finish(sim, RunOutcome::Failure);
        sim.advance();
    }
    return finish(sim, RunOutcome::Timeout);
}

}  // namespace polcomp
