#pragma once

#include "lcmod/kernel_pce.hpp"   // InternalError
#include "lcmod/trace.hpp"

namespace lcmod {

// Everything the compression computes and the lift consumes. Vertices
// and colors are original ids masked by the alive sets; the output
// instance is a compaction described by output_vmap / output_cmap.
struct RlcState {
    Instance orig;
    int k = 0;
    Bits alive_v, alive_t;
    std::vector<TraceStep> hall_steps;      // color-hall removals with witnesses
    std::vector<int> modulator;             // alive D, ascending original ids

    bool compressed = false;                // full machinery ran (n >= 11k)
    std::vector<int> rare;                  // T_R, ascending dense ids
    std::vector<std::pair<int, int>> match_cd;   // H* matching: clique vertex -> modulator vertex
    std::vector<std::pair<int, int>> match_ct;   // H* matching: clique vertex -> rare color
    Bits xc, xd, xt;                        // X = V(M) split by side
    Bits tprime;                            // T'
    std::vector<int> vprime;                // V', ascending original ids
    int q = 0;
    std::optional<Bits> trimmed_universal;  // U when |T'| >= |V'|k+q
    bool x_size_bound_holds = true;         // |X| <= 5k (informational)

    std::vector<int> output_vmap;           // output vertex -> original vertex
    std::vector<int> output_cmap;           // output color -> original dense color
};

struct RlcCompression {
    bool yes = false;       // decided by the complement-matching rule
    Instance output;        // BUDGET instance (dummy budget when n < 11k)
    RlcState state;
};

struct RlcKernel {
    bool yes = false;
    Instance output;        // tag RLC, regular lists
    bool padded = false;
};

// Complement matching of >= k edges -> YES; otherwise V(M) is the modulator.
std::optional<std::vector<int>> rule_modulator_or_yes(const Instance& inst);

// Deletes vertex neighborhoods of deficient color sets until none exist.
// Returns the rule-10 steps; mutates the alive mask.
std::vector<TraceStep> rule_color_hall(const Instance& inst, Bits& alive_v, Bits& alive_t);

std::vector<int> classify_rare(const Instance& inst, const Bits& alive_v, const Bits& alive_t,
                               const std::vector<int>& modulator, int k);

RlcCompression compress_rlc(const Instance& inst);
RlcKernel kernelize_rlc(const Instance& inst);

// lambda0: proper list coloring of compression.output within its budget.
// Returns a total proper list coloring of the original instance, built by
// the staged extension; stages that cannot complete throw InternalError.
Coloring lift_rlc(const RlcCompression& compression, const Coloring& lambda0);

} // namespace lcmod
