#pragma once

#include <stdexcept>
#include <string>

#include "polcomp/dsl.hpp"
#include "polcomp/receipt.hpp"

namespace polcomp {

class EditError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kRechargeThreshold = 20.0;

struct RecipeResult {
    EditReceipt receipt;
    std::string summary;
};

// Guards the whole policy with a battery responder: a tree gets a leading
// battery fallback under a sequence root, a machine gets a connected state
// triggered from everywhere once the level is no longer above `threshold`.
// The responder is whichever declared skill restores the battery.
RecipeResult apply_add_recharge(Document& doc, double threshold = kRechargeThreshold);

// Appends one more terminal objective: the named skill's postcondition
// becomes a trailing fallback (tree) or a state spliced in front of $success
// (machine), and finishing now requires it.
RecipeResult apply_add_tail(Document& doc, const std::string& skill_name);

// Reverses either of the above, identified by the responsible skill's name.
// Trees drop the fragment and hoist a single-child root; machines splice the
// chain back together and forget the requirement.
RecipeResult apply_remove(Document& doc, const std::string& skill_name);

// Dispatch by command-line spelling: add-recharge, add-dock, remove.
RecipeResult apply_recipe(Document& doc, const std::string& recipe,
                          const std::string& target);

}  // namespace polcomp
