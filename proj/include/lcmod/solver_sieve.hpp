#pragma once

#include <optional>

#include "lcmod/ff.hpp"
#include "lcmod/instance.hpp"
#include "lcmod/solver_partition.hpp"   // SolveOptions

namespace lcmod {

// Auxiliary bipartite graph H: rows are the real vertices plus padding
// rows, columns are the union of lists plus one artificial color per
// modulator vertex. Artificial color l'_d touches only d; padding rows
// touch every column.
struct AuxiliaryGraph {
    std::vector<int> real_cols;   // dense color ids, ascending
    int k = 0;                    // |D|
    int n = 0;
    int dim = 0;                  // |real_cols| + k == n + padding
    int padding = 0;

    int col_of_color(int dense_color) const;   // index into [0, dim)
    int col_of_artificial(int d_index) const { return int(real_cols.size()) + d_index; }
};

// membership of s in S(v,l) per the three-case family definition;
// artificial covers both artificial columns and padding rows
bool edge_family_member(const Instance& folded, const std::vector<int>& modulator,
                        int v, int dense_color, const Bits& s);

// Per-edge tables of P_{-I} at a fixed x-assignment. Only the candidate
// modulator vertices of an edge can appear in its sets, so each table is
// stored over that candidate mask and queried by projection; values
// match the full 2^k table bit for bit.
class EdgeTables {
public:
    struct PerEdge {
        int row, col;
        bool constant_one;       // artificial column or padding row
        int dvert = -1;          // D-index when the row is a modulator vertex
        uint32_t cand_mask = 0;  // over D-index space
        std::vector<F64> table;  // zeta form, indexed by compressed subset of cand
    };

    static EdgeTables build(const Instance& folded, const std::vector<int>& modulator,
                            const AuxiliaryGraph& aux, const std::vector<F64>& x,
                            size_t memory_budget_bytes = size_t(1) << 32);

    F64 lookup(const PerEdge& e, uint32_t zero_mask) const;
    const std::vector<PerEdge>& edges() const { return edges_; }
    int k() const { return k_; }

private:
    int k_ = 0;
    std::vector<PerEdge> edges_;
};

AuxiliaryGraph build_auxiliary(const Instance& folded, const std::vector<int>& modulator);

SquareMatrix assemble_sieve_matrix(const AuxiliaryGraph& aux, const EdgeTables& tables,
                                   uint32_t zero_mask, const std::vector<F64>& y);

// O*(2^k): random x,y, then XOR of det A_{-I} over all I. One-sided
// error, never YES on a NO instance.
bool decide_sieve(const Instance& inst, const SolveOptions& opt);

} // namespace lcmod
