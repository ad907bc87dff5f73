#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polcomp/bt.hpp"
#include "polcomp/fsm.hpp"
#include "polcomp/sim.hpp"
#include "polcomp/skills.hpp"

namespace polcomp {

struct ParseError {
    std::string message;
    int line = 0;  // 1-based
    int col = 0;   // 1-based

    std::string to_string() const;
};

// One .pol file: a task domain, optional scenarios, and at most one policy
// (a tree or a machine).
struct Document {
    Library library;
    std::vector<ScenarioSpec> scenarios;
    std::optional<PolicyTree> tree;
    std::optional<StateMachine> machine;

    const ScenarioSpec* find_scenario(std::string_view name) const;

    // Every goal condition in declaration order.
    std::vector<Condition> goal_conditions() const;
};

struct ParseResult {
    std::optional<Document> document;
    std::optional<ParseError> error;

    bool ok() const { return document.has_value(); }
};

ParseResult parse_document(std::string_view text);

// Canonical form: one fixed section order and spelling, so serializing,
// parsing and serializing again reproduces the same bytes.
std::string serialize(const Document& document);

class FileError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Throws FileError carrying "<path>: line L, col C: ..." on bad input.
Document load_document(const std::string& path);
void save_document(const Document& document, const std::string& path);

}  // namespace polcomp
