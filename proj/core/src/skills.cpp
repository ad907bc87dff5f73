#include "polcomp/skills.hpp"

#include <cstdio>
#include <utility>

namespace polcomp {

std::string_view to_string(Status status) {
    switch (status) {
        case Status::Success: return "success";
        case Status::Failure: return "failure";
        case Status::Running: return "running";
    }
    return "?";
}

std::string_view to_string(ParamType type) {
    switch (type) {
        case ParamType::Pose: return "pose";
        case ParamType::Object: return "object";
        case ParamType::Station: return "station";
        case ParamType::Percent: return "percent";
    }
    return "?";
}

std::optional<ParamType> param_type_from(std::string_view text) {
    if (text == "pose") return ParamType::Pose;
    if (text == "object") return ParamType::Object;
    if (text == "station") return ParamType::Station;
    if (text == "percent") return ParamType::Percent;
    return std::nullopt;
}

Arg Arg::symbol(std::string n) { return {Kind::Symbol, std::move(n), 0.0}; }
Arg Arg::pose_of(std::string n) { return {Kind::PoseOf, std::move(n), 0.0}; }
Arg Arg::number(double v) { return {Kind::Number, {}, v}; }

std::string Arg::text() const {
    switch (kind) {
        case Kind::Symbol: return name;
        case Kind::PoseOf: return "@" + name;
        case Kind::Number: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", value);
            return buf;
        }
    }
    return {};
}

namespace {

std::string instance_text(const std::string& name, const std::vector<Arg>& args) {
    std::string out = name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) out += ", ";
        out += args[i].text();
    }
    out += ")";
    return out;
}

}  // namespace

std::string Condition::text() const { return instance_text(name, args); }
std::string Skill::text() const { return instance_text(name, args); }

std::optional<ConditionKind> infer_condition_kind(const std::vector<Param>& params) {
    if (params.empty()) return ConditionKind::Flag;
    if (params.size() == 1) {
        switch (params[0].type) {
            case ParamType::Pose: return ConditionKind::RobotAt;
            case ParamType::Object: return ConditionKind::InHand;
            case ParamType::Percent: return ConditionKind::BatteryAbove;
            default: return std::nullopt;
        }
    }
    if (params.size() == 2 && params[0].type == ParamType::Object &&
        params[1].type == ParamType::Station) {
        return ConditionKind::ObjectAt;
    }
    return std::nullopt;
}

ConditionKind ConditionDecl::kind() const {
    auto kind = infer_condition_kind(params);
    if (!kind) throw DomainError("condition " + name + " has an unsupported signature");
    return *kind;
}

Condition substitute(const Condition& pattern, const Bindings& bindings) {
    Condition out;
    out.name = pattern.name;
    out.args.reserve(pattern.args.size());
    for (const Arg& arg : pattern.args) {
        if (arg.kind == Arg::Kind::Symbol) {
            auto it = bindings.find(arg.name);
            out.args.push_back(it != bindings.end() ? it->second : arg);
        } else if (arg.kind == Arg::Kind::PoseOf) {
            auto it = bindings.find(arg.name);
            if (it == bindings.end()) {
                out.args.push_back(arg);
            } else if (it->second.kind == Arg::Kind::Symbol) {
                out.args.push_back(Arg::pose_of(it->second.name));
            } else {
                throw DomainError("@" + arg.name + " needs a symbol binding, got " +
                                  it->second.text());
            }
        } else {
            out.args.push_back(arg);
        }
    }
    return out;
}

namespace {

bool is_param(const std::vector<Param>& params, const std::string& name) {
    for (const Param& p : params) {
        if (p.name == name) return true;
    }
    return false;
}

}  // namespace

bool unify(const Condition& ground, const Condition& pattern,
           const std::vector<Param>& params, Bindings& bindings) {
    if (ground.name != pattern.name || ground.args.size() != pattern.args.size()) {
        return false;
    }
    Bindings trial = bindings;
    for (std::size_t i = 0; i < ground.args.size(); ++i) {
        const Arg& g = ground.args[i];
        const Arg& p = pattern.args[i];
        switch (p.kind) {
            case Arg::Kind::Symbol:
                if (is_param(params, p.name)) {
                    auto it = trial.find(p.name);
                    if (it == trial.end()) {
                        trial.emplace(p.name, g);
                    } else if (!(it->second == g)) {
                        return false;
                    }
                } else if (!(g == p)) {
                    return false;
                }
                break;
            case Arg::Kind::PoseOf:
                if (is_param(params, p.name)) {
                    if (g.kind != Arg::Kind::PoseOf) return false;
                    Arg bound = Arg::symbol(g.name);
                    auto it = trial.find(p.name);
                    if (it == trial.end()) {
                        trial.emplace(p.name, bound);
                    } else if (!(it->second == bound)) {
                        return false;
                    }
                } else if (!(g == p)) {
                    return false;
                }
                break;
            case Arg::Kind::Number:
                if (!(g == p)) return false;
                break;
        }
    }
    bindings = std::move(trial);
    return true;
}

void Library::add_condition(ConditionDecl decl) {
    if (find_condition(decl.name)) {
        throw DuplicateNameError("condition " + decl.name + " already declared");
    }
    if (!infer_condition_kind(decl.params)) {
        throw DomainError("condition " + decl.name + " has an unsupported signature");
    }
    conditions_.push_back(std::move(decl));
}

void Library::add_skill(SkillDecl decl) {
    if (find_skill(decl.name)) {
        throw DuplicateNameError("skill " + decl.name + " already declared");
    }
    if (decl.duration < 1) {
        throw DomainError("skill " + decl.name + " needs a duration of at least one step");
    }
    if (decl.failure_model.empty()) decl.failure_model = decl.name;
    skills_.push_back(std::move(decl));
}

void Library::add_goal(GoalDecl decl) {
    if (find_goal(decl.name)) {
        throw DuplicateNameError("goal " + decl.name + " already declared");
    }
    goals_.push_back(std::move(decl));
}

void Library::add_station(StationDecl decl) {
    if (find_station(decl.name)) {
        throw DuplicateNameError("station " + decl.name + " already declared");
    }
    stations_.push_back(std::move(decl));
}

void Library::add_object(ObjectDecl decl) {
    if (find_object(decl.name)) {
        throw DuplicateNameError("object " + decl.name + " already declared");
    }
    objects_.push_back(std::move(decl));
}

const ConditionDecl* Library::find_condition(std::string_view name) const {
    for (const auto& d : conditions_) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

const SkillDecl* Library::find_skill(std::string_view name) const {
    for (const auto& d : skills_) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

const GoalDecl* Library::find_goal(std::string_view name) const {
    for (const auto& d : goals_) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

const StationDecl* Library::find_station(std::string_view name) const {
    for (const auto& d : stations_) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

const ObjectDecl* Library::find_object(std::string_view name) const {
    for (const auto& d : objects_) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

const ConditionDecl& Library::condition(std::string_view name) const {
    if (const auto* d = find_condition(name)) return *d;
    throw UnknownSymbolError("unknown condition " + std::string(name));
}

const SkillDecl& Library::skill(std::string_view name) const {
    if (const auto* d = find_skill(name)) return *d;
    throw UnknownSymbolError("unknown skill " + std::string(name));
}

const GoalDecl& Library::goal(std::string_view name) const {
    if (const auto* d = find_goal(name)) return *d;
    throw UnknownSymbolError("unknown goal " + std::string(name));
}

std::vector<Achiever> Library::achievers_for(const Condition& goal) const {
    std::vector<Achiever> out;
    for (const SkillDecl& decl : skills_) {
        for (const Condition& post : decl.post) {
            Bindings bindings;
            if (!unify(goal, post, decl.params, bindings)) continue;
            Achiever a;
            a.decl = &decl;
            a.instance.name = decl.name;
            for (const Param& p : decl.params) {
                auto it = bindings.find(p.name);
                if (it == bindings.end()) {
                    throw DomainError("skill " + decl.name + " parameter " + p.name +
                                      " is not determined by achieving " + goal.text());
                }
                a.instance.args.push_back(it->second);
            }
            for (const Condition& pre : decl.pre) {
                a.preconditions.push_back(substitute(pre, bindings));
            }
            out.push_back(std::move(a));
            break;
        }
    }
    return out;
}

}  // namespace polcomp
