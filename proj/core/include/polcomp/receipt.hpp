#pragma once

namespace polcomp {

// Tally of elementary edit operations applied to a policy representation.
// One operation is one node or state brought into or out of existence, or one
// parent-child link or state-to-state arrow changed. Rewiring that reuses an
// existing arrow costs nothing, matching how the policy's graph view changes.
struct EditReceipt {
    int nodes_created = 0;
    int nodes_removed = 0;
    int links_added = 0;
    int links_removed = 0;

    int total() const {
        return nodes_created + nodes_removed + links_added + links_removed;
    }

    EditReceipt operator-(const EditReceipt& other) const {
        return {nodes_created - other.nodes_created, nodes_removed - other.nodes_removed,
                links_added - other.links_added, links_removed - other.links_removed};
    }

    bool operator==(const EditReceipt&) const = default;
};

}  // namespace polcomp
