#include "polcomp/dsl.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace polcomp {

std::string ParseError::to_string() const {
    return "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
           message;
}

const ScenarioSpec* Document::find_scenario(std::string_view name) const {
    for (const ScenarioSpec& s : scenarios) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

std::vector<Condition> Document::goal_conditions() const {
    std::vector<Condition> out;
    for (const GoalDecl& g : library.goals()) {
        out.insert(out.end(), g.conditions.begin(), g.conditions.end());
    }
    return out;
}

namespace {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// Thrown internally while parsing; surfaces as ParseResult::error.
struct Halt {
    ParseError error;
};

[[noreturn]] void fail(std::string message, int line, int col) {
    throw Halt{{std::move(message), line, col}};
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Instance or declaration head as written: name, arguments, optional ".2"
// style ordinal used to tell repeated machine states apart.
struct Unit {
    std::string name;
    std::vector<Arg> args;
    bool parens = false;
    int ordinal = 0;

    std::string text() const {
        std::string out = name;
        if (parens) {
            out += "(";
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (i > 0) out += ", ";
                out += args[i].text();
            }
            out += ")";
        }
        if (ordinal > 0) out += "." + std::to_string(ordinal);
        return out;
    }

    Condition as_condition() const { return {name, args}; }
    Skill as_skill() const { return {name, args}; }
};

// Scans one logical line. Columns are 1-based over the original line.
class Cursor {
  public:
    Cursor(std::string_view text, int line) : text_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    int col() const { return static_cast<int>(pos_) + 1; }
    int line() const { return line_; }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool try_literal(std::string_view lit) {
        skip_ws();
        if (text_.substr(pos_, lit.size()) != lit) return false;
        pos_ += lit.size();
        return true;
    }

    void expect_literal(std::string_view lit) {
        skip_ws();
        if (!try_literal(lit)) {
            fail("expected '" + std::string(lit) + "'", line_, col());
        }
    }

    std::string ident() {
        skip_ws();
        if (pos_ >= text_.size() || !ident_start(text_[pos_])) {
            fail("expected a name", line_, col());
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    double number() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ == start) fail("expected a number", line_, col());
        return std::stod(std::string(text_.substr(start, pos_ - start)));
    }

    int integer() {
        double v = number();
        int i = static_cast<int>(v);
        if (static_cast<double>(i) != v) fail("expected an integer", line_, col());
        return i;
    }

    Arg arg() {
        skip_ws();
        if (peek() == '@') {
            ++pos_;
            return Arg::pose_of(ident());
        }
        if (pos_ < text_.size() &&
            (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '-' ||
             peek() == '+')) {
            return Arg::number(number());
        }
        return Arg::symbol(ident());
    }

    Unit unit() {
        Unit u;
        u.name = ident();
        if (peek() == '(') {
            u.parens = true;
            ++pos_;
            skip_ws();
            if (peek() != ')') {
                u.args.push_back(arg());
                skip_ws();
                while (peek() == ',') {
                    ++pos_;
                    u.args.push_back(arg());
                    skip_ws();
                }
            }
            expect_literal(")");
        }
        if (peek() == '.') {
            ++pos_;
            u.ordinal = integer();
        }
        return u;
    }

    // $success, $failure, idle, or a unit's text.
    std::string target() {
        skip_ws();
        if (peek() == '$') {
            ++pos_;
            return "$" + ident();
        }
        std::size_t mark = pos_;
        std::string word = ident();
        if (word == "idle" && (at_end() || peek() != '(')) return word;
        pos_ = mark;
        return unit().text();
    }

    std::vector<Param> params() {
        std::vector<Param> out;
        expect_literal("(");
        skip_ws();
        while (peek() != ')') {
            Param p;
            p.name = ident();
            expect_literal(":");
            std::string type_word = ident();
            auto type = param_type_from(type_word);
            if (!type) fail("unknown parameter type " + type_word, line_, col());
            p.type = *type;
            out.push_back(std::move(p));
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                skip_ws();
            }
        }
        expect_literal(")");
        return out;
    }

    void done() {
        if (!at_end()) {
            fail("unexpected trailing input", line_, col());
        }
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
};

struct Line {
    std::string text;  // comments stripped
    int number = 0;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    int number = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view raw = end == std::string_view::npos
                                   ? text.substr(start)
                                   : text.substr(start, end - start);
        std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        lines.push_back({std::string(raw), number});
        if (end == std::string_view::npos) break;
        start = end + 1;
        ++number;
    }
    return lines;
}

bool blank(const Line& line) {
    for (char c : line.text) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

class Parser {
  public:
    explicit Parser(std::string_view text) : lines_(split_lines(text)) {}

    Document run() {
        while (index_ < lines_.size()) {
            const Line& line = lines_[index_];
            if (blank(line)) {
                ++index_;
                continue;
            }
            Cursor cur(line.text, line.number);
            std::string head = cur.ident();
            if (head == "station") {
                parse_station(cur);
            } else if (head == "object") {
                parse_object(cur);
            } else if (head == "condition") {
                parse_condition(cur);
            } else if (head == "skill") {
                parse_skill(cur);
            } else if (head == "goal") {
                parse_goal(cur);
            } else if (head == "scenario") {
                parse_scenario(cur);
            } else if (head == "bt") {
                parse_bt(cur);
            } else if (head == "fsm") {
                parse_fsm(cur);
            } else {
                fail("unknown directive " + head, line.number, 1);
            }
        }
        return std::move(doc_);
    }

  private:
    // Every block opener consumes its own line; block bodies run to a line
    // holding just "}".
    std::vector<Line> block_body() {
        std::vector<Line> body;
        ++index_;
        while (index_ < lines_.size()) {
            Line line = lines_[index_];
            Cursor probe(line.text, line.number);
            if (probe.try_literal("}")) {
                probe.done();
                ++index_;
                return body;
            }
            if (!blank(line)) body.push_back(std::move(line));
            ++index_;
        }
        fail("missing closing brace", lines_.back().number, 1);
    }

    template <typename Fn>
    void guarded(int line, Fn&& fn) {
        try {
            fn();
        } catch (const DomainError& e) {
            fail(e.what(), line, 1);
        } catch (const MachineError& e) {
            fail(e.what(), line, 1);
        }
    }

    void parse_station(Cursor& cur) {
        StationDecl s;
        s.name = cur.ident();
        s.x = cur.number();
        s.y = cur.number();
        cur.done();
        guarded(cur.line(), [&] { doc_.library.add_station(std::move(s)); });
        ++index_;
    }

    void parse_object(Cursor& cur) {
        ObjectDecl o;
        o.name = cur.ident();
        o.station = cur.ident();
        cur.done();
        guarded(cur.line(), [&] { doc_.library.add_object(std::move(o)); });
        ++index_;
    }

    void parse_condition(Cursor& cur) {
        ConditionDecl c;
        c.name = cur.ident();
        c.params = cur.params();
        if (cur.try_literal("tol")) c.tolerance = cur.number();
        cur.done();
        guarded(cur.line(), [&] { doc_.library.add_condition(std::move(c)); });
        ++index_;
    }

    void parse_skill(Cursor& cur) {
        SkillDecl s;
        s.name = cur.ident();
        s.params = cur.params();
        cur.expect_literal("{");
        cur.done();
        int head_line = cur.line();
        for (const Line& line : block_body()) {
            Cursor body(line.text, line.number);
            std::string word = body.ident();
            if (word == "pre") {
                s.pre.push_back(body.unit().as_condition());
            } else if (word == "post") {
                s.post.push_back(body.unit().as_condition());
            } else if (word == "duration") {
                s.duration = body.integer();
            } else if (word == "fails_as") {
                s.failure_model = body.ident();
            } else {
                fail("unknown skill clause " + word, line.number, 1);
            }
            body.done();
        }
        guarded(head_line, [&] { doc_.library.add_skill(std::move(s)); });
    }

    void parse_goal(Cursor& cur) {
        GoalDecl g;
        g.name = cur.ident();
        cur.expect_literal("{");
        cur.done();
        int head_line = cur.line();
        for (const Line& line : block_body()) {
            Cursor body(line.text, line.number);
            g.conditions.push_back(body.unit().as_condition());
            body.done();
        }
        guarded(head_line, [&] { doc_.library.add_goal(std::move(g)); });
    }

    void parse_scenario(Cursor& cur) {
        ScenarioSpec s;
        s.name = cur.ident();
        cur.expect_literal("{");
        cur.done();
        for (const Line& line : block_body()) {
            Cursor body(line.text, line.number);
            std::string word = body.ident();
            if (word == "battery") {
                s.initial_battery = body.number();
            } else if (word == "drain") {
                s.drain_rate = body.number();
            } else if (word == "robot") {
                s.robot_station = body.ident();
            } else if (word == "budget") {
                s.budget = body.integer();
            } else if (word == "fail") {
                FailureInjection f;
                f.model = body.ident();
                body.expect_literal("attempt");
                f.attempt = body.integer();
                s.failures.push_back(std::move(f));
            } else if (word == "at") {
                ScriptEvent e;
                e.at_step = body.integer();
                std::string what = body.ident();
                if (what == "move") {
                    e.kind = ScriptEvent::Kind::MoveObject;
                    e.object = body.ident();
                    e.station = body.ident();
                } else if (what == "battery") {
                    e.kind = ScriptEvent::Kind::SetBattery;
                    e.value = body.number();
                } else if (what == "drain") {
                    e.kind = ScriptEvent::Kind::SetDrainRate;
                    e.value = body.number();
                } else {
                    fail("unknown event " + what, line.number, 1);
                }
                s.events.push_back(std::move(e));
            } else {
                fail("unknown scenario clause " + word, line.number, 1);
            }
            body.done();
        }
        for (const ScenarioSpec& other : doc_.scenarios) {
            if (other.name == s.name) {
                fail("scenario " + s.name + " already declared", cur.line(), 1);
            }
        }
        doc_.scenarios.push_back(std::move(s));
    }

    void parse_bt(Cursor& cur) {
        cur.expect_literal("{");
        cur.done();
        if (doc_.tree || doc_.machine) fail("more than one policy block", cur.line(), 1);
        std::vector<Line> body = block_body();

        // The body is one s-expression; scan it with line tracking.
        std::string joined;
        std::vector<int> line_of;  // per character
        for (const Line& line : body) {
            for (char c : line.text) {
                joined.push_back(c);
                line_of.push_back(line.number);
            }
            joined.push_back('\n');
            line_of.push_back(line.number);
        }

        PolicyTree tree;
        std::size_t pos = 0;
        auto line_at = [&](std::size_t p) {
            return p < line_of.size() ? line_of[p] : (body.empty() ? cur.line() : body.back().number);
        };
        auto skip = [&] {
            while (pos < joined.size() &&
                   std::isspace(static_cast<unsigned char>(joined[pos]))) {
                ++pos;
            }
        };

        auto parse_node = [&](auto&& self) -> NodeId {
            skip();
            if (pos >= joined.size()) fail("unterminated policy", line_at(pos), 1);
            if (joined[pos] == '(') {
                ++pos;
                skip();
                std::size_t start = pos;
                while (pos < joined.size() && ident_char(joined[pos])) ++pos;
                std::string kind = joined.substr(start, pos - start);
                NodeId control;
                if (kind == "sequence") {
                    control = tree.add_sequence();
                } else if (kind == "fallback") {
                    control = tree.add_fallback();
                } else {
                    fail("unknown control node " + kind, line_at(start), 1);
                }
                skip();
                while (pos < joined.size() && joined[pos] != ')') {
                    tree.attach(control, self(self));
                    skip();
                }
                if (pos >= joined.size()) {
                    fail("missing ')'", line_at(pos), 1);
                }
                ++pos;
                return control;
            }
            // Leaf: unit plus ? or !.
            std::size_t start = pos;
            int depth = 0;
            while (pos < joined.size()) {
                char c = joined[pos];
                if (c == '(') ++depth;
                if (c == ')') {
                    if (depth == 0) break;
                    --depth;
                }
                if (depth == 0 && (c == '?' || c == '!')) break;
                if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) break;
                ++pos;
            }
            if (pos >= joined.size() || (joined[pos] != '?' && joined[pos] != '!')) {
                fail("a leaf needs a ? or ! suffix", line_at(start), 1);
            }
            char suffix = joined[pos];
            std::string unit_text = joined.substr(start, pos - start);
            ++pos;
            Cursor unit_cur(unit_text, line_at(start));
            Unit u = unit_cur.unit();
            unit_cur.done();
            return suffix == '?' ? tree.add_condition(u.as_condition())
                                 : tree.add_action(u.as_skill());
        };

        tree.set_root(parse_node(parse_node));
        skip();
        if (pos < joined.size()) {
            fail("unexpected input after the policy", line_at(pos), 1);
        }
        doc_.tree = std::move(tree);
    }

    void parse_fsm(Cursor& cur) {
        cur.expect_literal("{");
        cur.done();
        if (doc_.tree || doc_.machine) fail("more than one policy block", cur.line(), 1);
        std::vector<Line> body = block_body();
        StateMachine machine;

        struct PendingState {
            std::string id;
            Skill skill;
            bool connected = false;
            GuardLink trigger;
            std::string success;
            std::string failure = StateMachine::kIdle;
            int line = 0;
        };
        std::vector<PendingState> pending;

        // States first so that forward transition targets resolve.
        for (const Line& line : body) {
            Cursor probe(line.text, line.number);
            if (probe.ident() != "state") continue;
            PendingState p;
            p.line = line.number;
            Unit id = probe.unit();
            p.id = id.text();
            if (probe.try_literal("runs")) {
                p.skill = probe.unit().as_skill();
            } else {
                p.skill = id.as_skill();
            }
            if (probe.try_literal("connected")) {
                p.connected = true;
                if (probe.try_literal("unless")) {
                    p.trigger.negate = true;
                } else {
                    probe.expect_literal("when");
                }
                p.trigger.condition = probe.unit().as_condition();
                p.trigger.target = p.id;
            }
            probe.expect_literal("->");
            p.success = probe.target();
            if (probe.try_literal("onfail")) p.failure = probe.target();
            probe.done();
            pending.push_back(std::move(p));
        }
        for (const PendingState& p : pending) {
            guarded(p.line, [&] { machine.add_state(p.id, p.skill); });
        }
        for (const PendingState& p : pending) {
            guarded(p.line, [&] {
                machine.set_transition(p.id, Status::Running, p.id);
                machine.set_transition(p.id, Status::Failure, p.failure);
                machine.set_transition(p.id, Status::Success, p.success);
            });
        }

        for (const Line& line : body) {
            Cursor body_cur(line.text, line.number);
            std::string word = body_cur.ident();
            if (word == "state") continue;
            if (word == "guard") {
                std::string from = body_cur.target();
                GuardLink link;
                if (body_cur.try_literal("unless")) {
                    link.negate = true;
                } else {
                    body_cur.expect_literal("when");
                }
                link.condition = body_cur.unit().as_condition();
                body_cur.expect_literal("->");
                link.target = body_cur.target();
                body_cur.done();
                guarded(line.number, [&] {
                    if (from == StateMachine::kIdle) {
                        machine.add_idle_guard(std::move(link));
                    } else {
                        machine.add_guard(from, std::move(link));
                    }
                });
            } else if (word == "idle") {
                DispatchEntry entry;
                if (!body_cur.try_literal("else")) {
                    body_cur.expect_literal("when");
                    entry.require.push_back(body_cur.unit().as_condition());
                    while (body_cur.try_literal("&")) {
                        entry.require.push_back(body_cur.unit().as_condition());
                    }
                }
                body_cur.expect_literal("->");
                entry.target = body_cur.target();
                body_cur.done();
                guarded(line.number, [&] { machine.add_dispatch(std::move(entry)); });
            } else {
                fail("unknown machine clause " + word, line.number, 1);
            }
        }

        // Connected markers only matter for later edits.
        for (const PendingState& p : pending) {
            if (p.connected) machine.mark_connected(p.id, p.trigger);
        }
        doc_.machine = std::move(machine);
    }

    std::vector<Line> lines_;
    std::size_t index_ = 0;
    Document doc_;
};

}  // namespace

ParseResult parse_document(std::string_view text) {
    ParseResult result;
    try {
        Parser parser(text);
        result.document = parser.run();
    } catch (const Halt& halt) {
        result.error = halt.error;
    }
    return result;
}

namespace {

void serialize_library(const Document& doc, std::ostringstream& out) {
    for (const StationDecl& s : doc.library.stations()) {
        out << "station " << s.name << " " << format_number(s.x) << " "
            << format_number(s.y) << "\n";
    }
    if (!doc.library.stations().empty()) out << "\n";

    for (const ObjectDecl& o : doc.library.objects()) {
        out << "object " << o.name << " " << o.station << "\n";
    }
    if (!doc.library.objects().empty()) out << "\n";

    for (const ConditionDecl& c : doc.library.conditions()) {
        out << "condition " << c.name << "(";
        for (std::size_t i = 0; i < c.params.size(); ++i) {
            if (i > 0) out << ", ";
            out << c.params[i].name << ": " << to_string(c.params[i].type);
        }
        out << ")";
        if (c.tolerance) out << " tol " << format_number(*c.tolerance);
        out << "\n";
    }
    if (!doc.library.conditions().empty()) out << "\n";

    for (const SkillDecl& s : doc.library.skills()) {
        out << "skill " << s.name << "(";
        for (std::size_t i = 0; i < s.params.size(); ++i) {
            if (i > 0) out << ", ";
            out << s.params[i].name << ": " << to_string(s.params[i].type);
        }
        out << ") {\n";
        for (const Condition& pre : s.pre) out << "  pre " << pre.text() << "\n";
        for (const Condition& post : s.post) out << "  post " << post.text() << "\n";
        out << "  duration " << s.duration << "\n";
        if (s.failure_model != s.name) out << "  fails_as " << s.failure_model << "\n";
        out << "}\n\n";
    }

    for (const GoalDecl& g : doc.library.goals()) {
        out << "goal " << g.name << " {\n";
        for (const Condition& c : g.conditions) out << "  " << c.text() << "\n";
        out << "}\n\n";
    }
}

void serialize_scenarios(const Document& doc, std::ostringstream& out) {
    for (const ScenarioSpec& s : doc.scenarios) {
        out << "scenario " << s.name << " {\n";
        out << "  battery " << format_number(s.initial_battery) << "\n";
        out << "  drain " << format_number(s.drain_rate) << "\n";
        if (!s.robot_station.empty()) out << "  robot " << s.robot_station << "\n";
        out << "  budget " << s.budget << "\n";
        for (const FailureInjection& f : s.failures) {
            out << "  fail " << f.model << " attempt " << f.attempt << "\n";
        }
        for (const ScriptEvent& e : s.events) {
            out << "  at " << e.at_step << " ";
            switch (e.kind) {
                case ScriptEvent::Kind::MoveObject:
                    out << "move " << e.object << " " << e.station;
                    break;
                case ScriptEvent::Kind::SetBattery:
                    out << "battery " << format_number(e.value);
                    break;
                case ScriptEvent::Kind::SetDrainRate:
                    out << "drain " << format_number(e.value);
                    break;
            }
            out << "\n";
        }
        out << "}\n\n";
    }
}

void serialize_tree_node(const PolicyTree& tree, NodeId id, int indent,
                         std::ostringstream& out) {
    const TreeNode& n = tree.node(id);
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    switch (n.type) {
        case NodeType::Condition:
            out << pad << n.condition.text() << "?";
            return;
        case NodeType::Action:
            out << pad << n.skill.text() << "!";
            return;
        case NodeType::Sequence:
        case NodeType::Fallback:
            out << pad << "(" << (n.type == NodeType::Sequence ? "sequence" : "fallback");
            for (NodeId child : n.children) {
                out << "\n";
                serialize_tree_node(tree, child, indent + 1, out);
            }
            out << ")";
            return;
    }
}

std::string strip_ordinal(const std::string& id) {
    std::size_t dot = id.rfind('.');
    if (dot == std::string::npos || dot + 1 >= id.size()) return id;
    for (std::size_t i = dot + 1; i < id.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) return id;
    }
    return id.substr(0, dot);
}

void serialize_machine(const StateMachine& machine, std::ostringstream& out) {
    out << "fsm {\n";
    for (const MachineState& s : machine.states()) {
        out << "  state " << s.id;
        if (strip_ordinal(s.id) != s.skill.text()) out << " runs " << s.skill.text();
        if (s.connected) {
            out << " connected " << (s.trigger.negate ? "unless " : "when ")
                << s.trigger.condition.text();
        }
        auto it = s.on.find(Status::Success);
        out << " -> " << (it != s.on.end() ? it->second : StateMachine::kIdle);
        auto fail_it = s.on.find(Status::Failure);
        if (fail_it != s.on.end() && fail_it->second != StateMachine::kIdle) {
            out << " onfail " << fail_it->second;
        }
        out << "\n";
    }
    for (const MachineState& s : machine.states()) {
        for (const GuardLink& g : s.guards) {
            out << "  guard " << s.id << (g.negate ? " unless " : " when ")
                << g.condition.text() << " -> " << g.target << "\n";
        }
    }
    for (const GuardLink& g : machine.idle_guards()) {
        out << "  guard idle" << (g.negate ? " unless " : " when ")
            << g.condition.text() << " -> " << g.target << "\n";
    }
    for (const DispatchEntry& e : machine.dispatch()) {
        out << "  idle";
        if (e.require.empty()) {
            out << " else";
        } else {
            for (std::size_t i = 0; i < e.require.size(); ++i) {
                out << (i == 0 ? " when " : " & ") << e.require[i].text();
            }
        }
        out << " -> " << e.target << "\n";
    }
    out << "}\n";
}

}  // namespace

std::string serialize(const Document& doc) {
    std::ostringstream out;
    serialize_library(doc, out);
    serialize_scenarios(doc, out);
    if (doc.tree) {
        out << "bt {\n";
        serialize_tree_node(*doc.tree, doc.tree->root(), 1, out);
        out << "\n}\n";
    } else if (doc.machine) {
        serialize_machine(*doc.machine, out);
    }
    std::string text = out.str();
    // At most one blank line at the end.
    while (text.size() >= 2 && text[text.size() - 1] == '\n' &&
           text[text.size() - 2] == '\n') {
        text.pop_back();
    }
    return text;
}

Document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError(path + ": cannot open");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    ParseResult result = parse_document(buffer.str());
    if (!result.ok()) {
        throw FileError(path + ": " + result.error->to_string());
    }
    return std::move(*result.document);
}

void save_document(const Document& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FileError(path + ": cannot write");
    out << serialize(doc);
    if (!out) throw FileError(path + ": write failed");
}

}  // namespace polcomp
