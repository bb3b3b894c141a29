#pragma once

#include <optional>

#include "lcmod/ff.hpp"
#include "lcmod/instance.hpp"

namespace lcmod {

// Partition of the modulator into independent blocks, each block tagged
// as fresh (its color is unused on the clique) or reuse (its color is
// shared with a clique vertex).
struct LabeledPartition {
    std::vector<std::vector<int>> fresh_blocks;
    std::vector<std::vector<int>> reuse_blocks;
};

// Streams every labeled partition exactly once: set partitions in
// restricted-growth-string order, blocks ordered by first appearance,
// then the 2^B fresh/reuse label vectors in lexicographic order
// (fresh < reuse). Partitions with a dependent block are skipped.
class LabeledPartitionStream {
public:
    LabeledPartitionStream(const Graph& g, const std::vector<int>& modulator);
    std::optional<LabeledPartition> next();

private:
    bool advance_rgs();
    bool blocks_independent() const;

    const Graph& g_;
    std::vector<int> verts_;
    std::vector<int> rgs_;
    int num_blocks_ = 0;
    uint64_t label_mask_ = 0;
    bool fresh_partition_ = true;
    bool done_ = false;
};

// Matrix over the bipartition (C + fresh blocks + dummies, union of
// lists): fresh-block rows hit exactly the block's common colors, clique
// rows carry y*(1 xor sum of live reuse variables), dummy rows hit
// everything. Infeasible (nullopt from make) when there are more rows
// than colors.
class PartitionMatrixBuilder {
public:
    static std::optional<PartitionMatrixBuilder> make(const Instance& folded,
                                                      const LabeledPartition& lp);

    int reuse_count() const { return t_; }
    int dim() const { return dim_; }

    // x: one value per reuse block; zero_mask: subset I of [t] forced to 0;
    // y: per-edge values in the builder's fixed edge order
    SquareMatrix assemble(const std::vector<F64>& x, uint32_t zero_mask,
                          const std::vector<F64>& y) const;
    size_t edge_count() const { return edges_.size(); }

private:
    struct Edge {
        int row, col;
        bool structural_one;        // block/dummy edge: weight y
        std::vector<int> reuse_ids; // J for clique edges
    };
    int dim_ = 0;
    int t_ = 0;
    std::vector<Edge> edges_;
};

struct SolveOptions {
    uint64_t seed = 1;
    int repetitions = 2;
    int jobs = 1;
};

// Never answers YES on a NO instance; misses a YES with probability
// <= (d/2^64) per repetition.
bool decide_partition(const Instance& inst, const SolveOptions& opt);

} // namespace lcmod
