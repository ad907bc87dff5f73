#include "polcomp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace polcomp {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

Simulation::Simulation(const Library& library, const ScenarioSpec& scenario)
    : library_(&library),
      failures_(scenario.failures),
      events_(scenario.events),
      event_done_(scenario.events.size(), false),
      battery_(scenario.initial_battery),
      drain_rate_(scenario.drain_rate) {
    if (!scenario.robot_station.empty()) {
        const StationDecl& s = station(scenario.robot_station);
        robot_x_ = s.x;
        robot_y_ = s.y;
    }
    for (const ObjectDecl& obj : library.objects()) {
        const StationDecl& s = station(obj.station);
        objects_[obj.name] = {s.x, s.y, false};
    }
    snapshot();
}

const StationDecl& Simulation::station(const std::string& name) const {
    if (const StationDecl* s = library_->find_station(name)) return *s;
    throw SimError("no station named " + name);
}

std::pair<double, double> Simulation::object_position(const std::string& name) const {
    auto it = objects_.find(name);
    if (it == objects_.end()) throw SimError("no object named " + name);
    if (it->second.held) return {robot_x_, robot_y_};
    return {it->second.x, it->second.y};
}

std::pair<double, double> Simulation::resolve_pose(const Arg& arg) const {
    if (arg.kind == Arg::Kind::PoseOf) return object_position(arg.name);
    if (arg.kind == Arg::Kind::Symbol) {
        const StationDecl& s = station(arg.name);
        return {s.x, s.y};
    }
    throw SimError("cannot use " + arg.text() + " as a pose");
}

double Simulation::condition_tolerance(const ConditionDecl& decl) const {
    if (decl.tolerance) return *decl.tolerance;
    return decl.kind() == ConditionKind::ObjectAt ? kPlaceTolerance : kPoseTolerance;
}

bool Simulation::check(const Condition& condition) {
    const ConditionDecl& decl = library_->condition(condition.name);
    if (condition.args.size() != decl.params.size()) {
        throw SimError(condition.text() + " does not match its declaration");
    }
    switch (decl.kind()) {
        case ConditionKind::Flag:
            return flags_.count(condition.name) > 0;
        case ConditionKind::RobotAt: {
            auto [x, y] = resolve_pose(condition.args[0]);
            return std::hypot(robot_x_ - x, robot_y_ - y) <= condition_tolerance(decl);
        }
        case ConditionKind::InHand:
            return holding_ == condition.args[0].name && !holding_.empty();
        case ConditionKind::ObjectAt: {
            const std::string& name = condition.args[0].name;
            auto it = objects_.find(name);
            if (it == objects_.end()) throw SimError("no object named " + name);
            if (it->second.held) return false;
            const StationDecl& s = station(condition.args[1].name);
            return std::hypot(it->second.x - s.x, it->second.y - s.y) <=
                   condition_tolerance(decl);
        }
        case ConditionKind::BatteryAbove:
            if (condition.args[0].kind != Arg::Kind::Number) {
                throw SimError(condition.text() + " needs a numeric threshold");
            }
            return battery_ > condition.args[0].value;
    }
    return false;
}

void Simulation::send(const Skill& skill) {
    std::string key = skill.text();
    if (attempts_.count(key) > 0) return;  // already underway

    const SkillDecl& decl = library_->skill(skill.name);
    if (skill.args.size() != decl.params.size()) {
        throw SimError(key + " does not match its declaration");
    }
    Bindings bindings;
    for (std::size_t i = 0; i < decl.params.size(); ++i) {
        bindings.emplace(decl.params[i].name, skill.args[i]);
    }

    Attempt attempt;
    attempt.skill = skill;
    attempt.duration = decl.duration;

    int count = ++attempt_counts_[decl.failure_model];
    for (const FailureInjection& f : failures_) {
        if (f.model == decl.failure_model && f.attempt == count) attempt.doomed = true;
    }

    for (const Condition& pre : decl.pre) {
        if (!check(substitute(pre, bindings))) {
            attempt.failed_early = true;
            break;
        }
    }

    for (const Condition& pattern : decl.post) {
        Condition post = substitute(pattern, bindings);
        const ConditionDecl& cdecl = library_->condition(post.name);
        switch (cdecl.kind()) {
            case ConditionKind::Flag:
                attempt.raise_flags.push_back(post.name);
                break;
            case ConditionKind::RobotAt:
                attempt.has_target = true;
                attempt.target_arg = post.args[0];
                break;
            case ConditionKind::InHand:
                attempt.grasp = post.args[0].name;
                // A full gripper rejects a second grasp outright.
                if (!holding_.empty() && holding_ != attempt.grasp) {
                    attempt.failed_early = true;
                }
                break;
            case ConditionKind::ObjectAt:
                attempt.releases.emplace_back(post.args[0].name, post.args[1].name);
                break;
            case ConditionKind::BatteryAbove:
                attempt.charging = true;
                attempt.charge_to = post.args[0].value;
                break;
        }
    }

    attempts_.emplace(key, std::move(attempt));
    record("send", key);
}

Status Simulation::monitor(const Skill& skill) {
    std::string key = skill.text();
    auto it = attempts_.find(key);
    if (it == attempts_.end()) {
        throw SimError("no attempt of " + key + " to monitor");
    }
    Attempt& attempt = it->second;

    if (attempt.failed_early || (attempt.doomed && attempt.elapsed >= attempt.duration)) {
        record("fail", key);
        attempts_.erase(it);
        return Status::Failure;
    }
    if (attempt.doomed) return Status::Running;

    bool ready = attempt.elapsed >= attempt.duration;
    if (attempt.has_target) {
        auto [x, y] = resolve_pose(attempt.target_arg);
        ready = ready && std::hypot(robot_x_ - x, robot_y_ - y) <= kPoseTolerance;
    }
    if (attempt.charging) {
        ready = attempt.elapsed >= attempt.duration && battery_ > attempt.charge_to;
    }
    if (!ready) return Status::Running;

    Attempt done = std::move(attempt);
    attempts_.erase(it);
    apply_effects(done);
    record("done", key);
    return Status::Success;
}

void Simulation::cancel(const Skill& skill) {
    auto it = attempts_.find(skill.text());
    if (it == attempts_.end()) return;
    attempts_.erase(it);
    record("cancel", skill.text());
}

void Simulation::apply_effects(const Attempt& attempt) {
    if (!attempt.grasp.empty()) {
        auto it = objects_.find(attempt.grasp);
        if (it == objects_.end()) throw SimError("no object named " + attempt.grasp);
        if (holding_.empty()) {
            holding_ = attempt.grasp;
            it->second.held = true;
        }
    }
    for (const auto& [object, station_name] : attempt.releases) {
        auto it = objects_.find(object);
        if (it == objects_.end()) throw SimError("no object named " + object);
        const StationDecl& s = station(station_name);
        it->second = {s.x, s.y, false};
        if (holding_ == object) holding_.clear();
    }
    for (const std::string& f : attempt.raise_flags) flags_.insert(f);
}

void Simulation::apply_event(const ScriptEvent& event) {
    switch (event.kind) {
        case ScriptEvent::Kind::MoveObject: {
            auto it = objects_.find(event.object);
            if (it == objects_.end()) throw SimError("no object named " + event.object);
            const StationDecl& s = station(event.station);
            // Moving a held object knocks it out of the gripper.
            if (holding_ == event.object) holding_.clear();
            it->second = {s.x, s.y, false};
            absorb("e" + std::to_string(step_) + " move " + event.object + ">" +
                   event.station);
            break;
        }
        case ScriptEvent::Kind::SetBattery:
            battery_ = event.value;
            absorb("e" + std::to_string(step_) + " battery " + fixed6(event.value));
            break;
        case ScriptEvent::Kind::SetDrainRate:
            drain_rate_ = event.value;
            absorb("e" + std::to_string(step_) + " drain " + fixed6(event.value));
            break;
    }
}

void Simulation::advance() {
    ++step_;
    for (std::size_t i = 0; i < events_.size(); ++i) {
        if (!event_done_[i] && events_[i].at_step <= step_) {
            apply_event(events_[i]);
            event_done_[i] = true;
        }
    }

    bool charging = false;
    for (auto& [key, attempt] : attempts_) {
        ++attempt.elapsed;
        if (attempt.failed_early) continue;
        if (attempt.has_target) {
            auto [tx, ty] = resolve_pose(attempt.target_arg);
            double dx = tx - robot_x_;
            double dy = ty - robot_y_;
            double dist = std::hypot(dx, dy);
            if (dist <= kSpeed) {
                robot_x_ = tx;
                robot_y_ = ty;
            } else {
                robot_x_ += dx / dist * kSpeed;
                robot_y_ += dy / dist * kSpeed;
            }
        }
        if (attempt.charging && !attempt.doomed) {
            charging = true;
            battery_ = std::min(100.0, battery_ + kChargeRate);
        }
    }
    if (!charging) battery_ = std::max(0.0, battery_ - drain_rate_);
    snapshot();
}

int Simulation::pending_events() const {
    int n = 0;
    for (std::size_t i = 0; i < events_.size(); ++i) {
        if (!event_done_[i]) ++n;
    }
    return n;
}

void Simulation::record(const std::string& kind, const std::string& skill) {
    commands_.push_back({step_, kind, skill, battery_});
    absorb("c" + std::to_string(step_) + " " + kind + " " + skill);
}

void Simulation::absorb(const std::string& text) {
    for (unsigned char ch : text) {
        hash_ ^= ch;
        hash_ *= 1099511628211ull;
    }
    hash_ ^= '\n';
    hash_ *= 1099511628211ull;
}

void Simulation::snapshot() {
    std::string line = "s" + std::to_string(step_) + " r" + fixed6(robot_x_) + "," +
                       fixed6(robot_y_) + " b" + fixed6(battery_) + " h" +
                       (holding_.empty() ? "-" : holding_);
    for (const auto& [name, obj] : objects_) {
        line += " o" + name + ":" + fixed6(obj.x) + "," + fixed6(obj.y) +
                (obj.held ? "*" : "");
    }
    for (const std::string& f : flags_) line += " f" + f;
    absorb(line);
}

std::string Simulation::digest() const {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(hash_));
    return buf;
}

}  // namespace polcomp
