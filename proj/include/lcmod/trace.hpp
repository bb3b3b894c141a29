#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lcmod/instance.hpp"

namespace lcmod {

// One rule application: removed vertices are original ids, removed
// colors are original dense ids, witness pairs are rule-specific
// (crown: modulator vertex -> matched clique partner; color-hall:
// removed vertex -> matched color).
struct TraceStep {
    int rule = 0;
    std::vector<int> removed_vertices;
    std::vector<int> removed_colors;
    std::vector<std::pair<int, int>> witness;
};

// Ordered log of rule applications plus the compaction map from reduced
// vertex ids back to original ids. Replaying the removals on the
// original instance reproduces the reduced one.
struct KernelTrace {
    std::string kind;                 // "pce", "rlc", "save"
    std::vector<TraceStep> steps;
    std::vector<int> vertex_map;      // reduced id -> original id

    // serialized with original color labels so files stand alone
    std::string serialize(const Instance& original) const;
    static KernelTrace parse(const std::string& text, const Instance& original);
};

} // namespace lcmod
