#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polcomp {

class DomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class UnknownSymbolError : public DomainError {
  public:
    using DomainError::DomainError;
};

class DuplicateNameError : public DomainError {
  public:
    using DomainError::DomainError;
};

// Tri-valued result of ticking a node, stepping a machine, or monitoring a
// command. Conditions only ever report Success or Failure.
enum class Status { Success, Failure, Running };

std::string_view to_string(Status status);

enum class ParamType { Pose, Object, Station, Percent };

std::string_view to_string(ParamType type);
std::optional<ParamType> param_type_from(std::string_view text);

struct Param {
    std::string name;
    ParamType type = ParamType::Pose;

    bool operator==(const Param&) const = default;
};

// Argument of a condition or skill instance. A Symbol names a station, an
// object, or (inside a declaration) a formal parameter; PoseOf refers to the
// current location of an object, wherever it happens to be.
struct Arg {
    enum class Kind { Symbol, PoseOf, Number };

    Kind kind = Kind::Symbol;
    std::string name;
    double value = 0.0;

    static Arg symbol(std::string n);
    static Arg pose_of(std::string n);
    static Arg number(double v);

    bool operator==(const Arg&) const = default;

    // "delivery", "@cube", "20".
    std::string text() const;
};

// Predicate instance, e.g. object_at(cube, delivery).
struct Condition {
    std::string name;
    std::vector<Arg> args;

    bool operator==(const Condition&) const = default;

    std::string text() const;
};

// Command instance, e.g. move_to(@cube).
struct Skill {
    std::string name;
    std::vector<Arg> args;

    bool operator==(const Skill&) const = default;

    std::string text() const;
};

// What a condition checks is determined by its parameter signature, not by
// its name: () flag, (pose) robot position, (object) grasp, (object, station)
// placement, (percent) battery level.
enum class ConditionKind { Flag, RobotAt, InHand, ObjectAt, BatteryAbove };

struct ConditionDecl {
    std::string name;
    std::vector<Param> params;
    std::optional<double> tolerance;

    ConditionKind kind() const;
};

// Signature check used both by the registry and by the file loader.
std::optional<ConditionKind> infer_condition_kind(const std::vector<Param>& params);

struct SkillDecl {
    std::string name;
    std::vector<Param> params;
    std::vector<Condition> pre;
    std::vector<Condition> post;
    int duration = 1;
    // Key scripted failures are matched against; defaults to the skill name.
    std::string failure_model;
};

struct GoalDecl {
    std::string name;
    std::vector<Condition> conditions;
};

struct StationDecl {
    std::string name;
    double x = 0.0;
    double y = 0.0;
};

struct ObjectDecl {
    std::string name;
    std::string station;  // initial placement
};

using Bindings = std::map<std::string, Arg>;

// Replaces formal-parameter symbols in `pattern` with their bound arguments.
// Throws DomainError when a PoseOf slot receives a non-symbol binding.
Condition substitute(const Condition& pattern, const Bindings& bindings);

// Matches a ground condition against a declaration's postcondition pattern,
// extending `bindings`. Returns false (leaving bindings untouched) on any
// mismatch or binding conflict.
bool unify(const Condition& ground, const Condition& pattern,
           const std::vector<Param>& params, Bindings& bindings);

struct Achiever {
    const SkillDecl* decl = nullptr;
    Skill instance;
    std::vector<Condition> preconditions;  // ground
};

// Declaration registry for one task domain. Iteration order everywhere is
// insertion order, which keeps generated policies and serialized files stable.
class Library {
  public:
    void add_condition(ConditionDecl decl);
    void add_skill(SkillDecl decl);
    void add_goal(GoalDecl decl);
    void add_station(StationDecl decl);
    void add_object(ObjectDecl decl);

    const std::vector<ConditionDecl>& conditions() const { return conditions_; }
    const std::vector<SkillDecl>& skills() const { return skills_; }
    const std::vector<GoalDecl>& goals() const { return goals_; }
    const std::vector<StationDecl>& stations() const { return stations_; }
    const std::vector<ObjectDecl>& objects() const { return objects_; }

    const ConditionDecl* find_condition(std::string_view name) const;
    const SkillDecl* find_skill(std::string_view name) const;
    const GoalDecl* find_goal(std::string_view name) const;
    const StationDecl* find_station(std::string_view name) const;
    const ObjectDecl* find_object(std::string_view name) const;

    const ConditionDecl& condition(std::string_view name) const;
    const SkillDecl& skill(std::string_view name) const;
    const GoalDecl& goal(std::string_view name) const;

    // Every skill whose postconditions can produce `goal`, in declaration
    // order. Deciding what to do when this is empty or ambiguous is the
    // caller's business.
    std::vector<Achiever> achievers_for(const Condition& goal) const;

  private:
    std::vector<ConditionDecl> conditions_;
    std::vector<SkillDecl> skills_;
    std::vector<GoalDecl> goals_;
    std::vector<StationDecl> stations_;
    std::vector<ObjectDecl> objects_;
};

}  // namespace polcomp
