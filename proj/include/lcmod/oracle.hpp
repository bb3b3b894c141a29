#pragma once

#include <optional>

#include "lcmod/instance.hpp"

namespace lcmod {

struct OracleLimits {
    int max_vertices = 14;                 // brute_backtrack / brute_budget
    long long max_modulator_products = 1000000;  // brute_modulator_enum
};

// Exhaustive DFS over vertices in descending-degree order (lowest index
// breaks ties); respects any pre-coloring. Budget constraints are the
// business of brute_budget, not this one.
std::optional<Coloring> brute_backtrack(const Instance& inst, const OracleLimits& lim = {});

// Second, structurally different oracle: enumerate proper list colorings
// of G[D], extend each over the clique by maximum bipartite matching.
std::optional<Coloring> brute_modulator_enum(const Instance& inst, const OracleLimits& lim = {});

// Backtracking that additionally tracks the number of distinct budget
// colors in use.
std::optional<Coloring> brute_budget(const Instance& inst, const OracleLimits& lim = {});

// Total, list-respecting, proper, consistent with any pre-coloring, and
// within budget when the instance has one.
bool verify_coloring(const Instance& inst, const Coloring& c);

} // namespace lcmod
