#pragma once

#include <stdexcept>
#include <vector>

#include "polcomp/bt.hpp"
#include "polcomp/fsm.hpp"
#include "polcomp/skills.hpp"

namespace polcomp {

class SynthesisError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class UnachievableConditionError : public SynthesisError {
  public:
    using SynthesisError::SynthesisError;
};

class AmbiguousAchieverError : public SynthesisError {
  public:
    using SynthesisError::SynthesisError;
};

class CyclicDependencyError : public SynthesisError {
  public:
    using SynthesisError::SynthesisError;
};

class OrderingConflictError : public SynthesisError {
  public:
    using SynthesisError::SynthesisError;
};

// Rejects goal lists where satisfying a later goal necessarily unmakes an
// earlier one: two different objects both wanted in the single gripper, or
// the same object wanted both held and placed.
void check_goal_ordering(const Library& library, const std::vector<Condition>& goals);

// The skill that produces `goal`, with its parameters bound from it. Exactly
// one must match.
Achiever resolve_achiever(const Library& library, const Condition& goal);

// Grows a tree from the goals backwards: each condition becomes a fallback
// that either observes the condition or runs its achiever behind the
// achiever's own expanded preconditions. An achiever without preconditions
// sits directly under the fallback. Multiple goals share a sequence root.
PolicyTree backchain(const Library& library, const std::vector<Condition>& goals);

// One goal's expansion grown inside an existing tree; returns the detached
// fallback for the caller to attach.
NodeId expand_condition(PolicyTree& tree, const Library& library,
                        const Condition& goal);

// The skills a straight-line execution of the goals would run, in order,
// paired with the condition each one achieves.
struct Milestone {
    Skill skill;
    Condition achieves;
};
std::vector<Milestone> linearize(const Library& library,
                                 const std::vector<Condition>& goals);

// Chains the milestones with the fault tolerance wiring: Running holds,
// Failure falls back to idle, and idle's dispatch table resumes at the
// furthest milestone already achieved.
StateMachine assemble_fault_tolerant_fsm(const Library& library,
                                         const std::vector<Condition>& goals);

// Brittle baseline: the same chain, but any failure goes straight to
// $failure and idle only knows how to start from the beginning.
StateMachine assemble_sequential_fsm(const Library& library,
                                     const std::vector<Condition>& goals);

}  // namespace polcomp
