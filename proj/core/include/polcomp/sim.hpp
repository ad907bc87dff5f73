#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "polcomp/skills.hpp"
#include "polcomp/world.hpp"

namespace polcomp {

class SimError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Scripted disturbance applied when the step counter reaches at_step.
struct ScriptEvent {
    enum class Kind { MoveObject, SetBattery, SetDrainRate };

    Kind kind = Kind::MoveObject;
    int at_step = 0;
    std::string object;
    std::string station;
    double value = 0.0;

    bool operator==(const ScriptEvent&) const = default;
};

// Makes the nth attempt of every skill sharing a failure model come back
// Failure after running its course. Attempts are counted from 1.
struct FailureInjection {
    std::string model;
    int attempt = 1;

    bool operator==(const FailureInjection&) const = default;
};

struct ScenarioSpec {
    std::string name;
    double initial_battery = 100.0;
    double drain_rate = 0.5;
    std::string robot_station;  // empty: start at the origin
    int budget = 500;
    std::vector<FailureInjection> failures;
    std::vector<ScriptEvent> events;

    bool operator==(const ScenarioSpec&) const = default;
};

// Everything the simulator did on behalf of a policy, for assertions and
// digests. kind is "send", "cancel", "done" or "fail".
struct CommandRecord {
    int step = 0;
    std::string kind;
    std::string skill;
    double battery = 0.0;
};

// Deterministic kinematic playground: point robot on a plane, stations with
// fixed coordinates, objects that sit on stations or in the gripper, a
// battery, and named flags. Time only moves in advance(); everything else is
// a pure read or an instantaneous world interaction, so runs are repeatable
// command for command.
class Simulation : public WorldView {
  public:
    Simulation(const Library& library, const ScenarioSpec& scenario);

    bool check(const Condition& condition) override;
    void send(const Skill& skill) override;
    Status monitor(const Skill& skill) override;
    void cancel(const Skill& skill) override;

    // One time step: scripted events land, active attempts progress, the
    // battery drains (or charges).
    void advance();

    int step() const { return step_; }
    double battery() const { return battery_; }
    double robot_x() const { return robot_x_; }
    double robot_y() const { return robot_y_; }
    const std::string& holding() const { return holding_; }
    bool flag(const std::string& name) const { return flags_.count(name) > 0; }
    std::pair<double, double> object_position(const std::string& name) const;

    // Scripted events that have not landed yet.
    int pending_events() const;

    const std::vector<CommandRecord>& commands() const { return commands_; }

    // Rolling FNV-1a hash of every state snapshot and command so far, as
    // sixteen hex digits.
    std::string digest() const;

    static constexpr double kSpeed = 1.0;
    static constexpr double kChargeRate = 8.0;
    static constexpr double kPoseTolerance = 0.1;
    static constexpr double kPlaceTolerance = 0.2;

  private:
    struct ObjectState {
        double x = 0.0;
        double y = 0.0;
        bool held = false;
    };

    // What completing an attempt does, precomputed from the skill's
    // postconditions when the command is sent.
    struct Attempt {
        Skill skill;
        int elapsed = 0;
        int duration = 1;
        bool doomed = false;        // injected failure
        bool failed_early = false;  // precondition did not hold at send
        bool has_target = false;    // drive toward target_arg
        Arg target_arg;
        std::string grasp;                                   // object to pick up
        std::vector<std::pair<std::string, std::string>> releases;  // object, station
        bool charging = false;
        double charge_to = 0.0;
        std::vector<std::string> raise_flags;
    };

    const StationDecl& station(const std::string& name) const;
    std::pair<double, double> resolve_pose(const Arg& arg) const;
    double condition_tolerance(const ConditionDecl& decl) const;
    void apply_event(const ScriptEvent& event);
    void apply_effects(const Attempt& attempt);
    void record(const std::string& kind, const std::string& skill);
    void absorb(const std::string& text);
    void snapshot();

    const Library* library_;
    std::vector<FailureInjection> failures_;
    std::vector<ScriptEvent> events_;
    std::vector<bool> event_done_;

    int step_ = 0;
    double robot_x_ = 0.0;
    double robot_y_ = 0.0;
    double battery_ = 100.0;
    double drain_rate_ = 0.5;
    std::string holding_;
    std::map<std::string, ObjectState> objects_;
    std::set<std::string> flags_;

    std::map<std::string, Attempt> attempts_;  // keyed by skill instance text
    std::map<std::string, int> attempt_counts_;
    std::vector<CommandRecord> commands_;
    std::uint64_t hash_ = 14695981039346656037ull;
};

}  // namespace polcomp
