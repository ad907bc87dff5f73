#pragma once

#include "polcomp/skills.hpp"

namespace polcomp {

// What a policy sees of the world it controls. Policies poll conditions and
// drive skills through this interface; the simulator implements it, and tests
// substitute scripted fakes.
class WorldView {
  public:
    virtual ~WorldView() = default;

    // Evaluates a ground condition against the current world state.
    virtual bool check(const Condition& condition) = 0;

    // Starts an attempt of `skill` unless one is already underway.
    virtual void send(const Skill& skill) = 0;

    // Progress of the current attempt. A terminal answer retires the attempt,
    // so a later send() starts a fresh one.
    virtual Status monitor(const Skill& skill) = 0;

    // Aborts the current attempt, keeping whatever partial effects happened.
    virtual void cancel(const Skill& skill) = 0;
};

}  // namespace polcomp
