#pragma once

#include "lcmod/trace.hpp"

namespace lcmod {

// Working state over the original ids: vertices and palette colors are
// masked out rather than renumbered, so the trace stays in original
// coordinates until the final compaction.
class PceKernelizer {
public:
    explicit PceKernelizer(const Instance& inst);

    bool rule_low_degree();         // Rule 1
    bool rule_crown();              // Rule 2
    bool rule_precolored_clique();  // Rule 3
    bool rule_matching_trim();      // Rule 4, once; false = definitive NO
    void run_rules_to_fixpoint();   // Rules 1-3 in loop order 1,2,3

    bool definitive_no() const { return definitive_no_; }
    const Bits& alive_vertices() const { return alive_v_; }
    const Bits& alive_palette() const { return alive_q_; }
    const KernelTrace& trace() const { return trace_; }

    Instance reduced_instance() const;   // compacts and fills trace vertex_map

    // live classification, exposed for tests
    std::vector<int> current_cn() const;
    std::vector<int> current_dprime() const;

private:
    int palette_count() const { return alive_q_.count(); }
    int alive_degree(int v) const;

    const Instance& orig_;
    Bits alive_v_, alive_q_, in_d_;
    bool definitive_no_ = false;
    bool trimmed_ = false;
    mutable KernelTrace trace_;
};

struct PceResult {
    bool no = false;        // definitive NO; reduced is a canonical NO instance
    Instance reduced;
    KernelTrace trace;
};

// Rules 1-3 to fixpoint, Rule 4 once; asserts the 3k vertex bound.
PceResult kernelize_pce(const Instance& inst);

// Replays the trace backwards. Throws std::invalid_argument when lambda
// does not verify on the reduced instance; InternalError if a lift stage
// cannot be completed, which the rules' safety arguments rule out.
Coloring lift_pce(const Instance& original, const PceResult& result, const Coloring& lambda);

} // namespace lcmod
