#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polcomp/dsl.hpp"
#include "polcomp/report.hpp"

namespace polcomp {

// The four pinned result sets. Exp1 is the baseline build and its
// behavior, Exp2 adds the battery responder, Exp3 appends docking, Scale
// replays the battery edit on the five-cube task.
enum class ExperimentId { Exp1, Exp2, Exp3, Scale, All };

std::optional<ExperimentId> experiment_from(std::string_view name);
std::string_view to_string(ExperimentId id);

// A snapshot of both policies for the same capability level, plus what the
// edit that produced it cost on each side. The baseline stage has empty
// receipts.
struct Stage {
    std::string name;
    PolicyTree tree;
    StateMachine machine;
    EditReceipt tree_receipt;
    EditReceipt machine_receipt;
};

// baseline -> battery -> docking, grown by the standard recipes from the
// document's goals. The document supplies the skill library; any policy it
// carries is ignored.
std::vector<Stage> build_fetch_stages(const Document& doc);

// baseline -> battery for the larger task. Same recipes, bigger policies.
std::vector<Stage> build_scale_stages(const Document& doc);

// Full study: structural metrics and pairwise edit distances for every stage
// of both documents, plus scenario runs that exercise the grown behavior.
StudyReport compile_study(const Document& fetch, const Document& scale);

struct CheckResult {
    bool ok = true;
    std::vector<std::string> mismatches;
};

// Compares a freshly compiled study against the pinned reference results,
// restricted to one experiment unless asked for all of them.
CheckResult check_study(const StudyReport& report,
                        ExperimentId which = ExperimentId::All);

}  // namespace polcomp
