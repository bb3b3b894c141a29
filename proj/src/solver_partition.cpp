#include "lcmod/solver_partition.hpp"

#include <atomic>
#include <mutex>
#include <thread>

namespace lcmod {

LabeledPartitionStream::LabeledPartitionStream(const Graph& g, const std::vector<int>& modulator)
    : g_(g), verts_(modulator), rgs_(modulator.size(), 0) {
    if (verts_.empty()) {
        num_blocks_ = 0;
    } else {
        num_blocks_ = 1;   // rgs all zeros: one block
    }
    fresh_partition_ = true;
}

bool LabeledPartitionStream::blocks_independent() const {
    for (int b = 0; b < num_blocks_; ++b) {
        Bits block(g_.n());
        for (size_t i = 0; i < verts_.size(); ++i)
            if (rgs_[i] == b) block.set(verts_[i]);
        if (!is_independent_set(g_, block)) return false;
    }
    return true;
}

bool LabeledPartitionStream::advance_rgs() {
    // standard RGS successor: find rightmost position that can grow
    const int k = int(verts_.size());
    if (k == 0) return false;
    for (int i = k - 1; i >= 1; --i) {
        int prefix_max = 0;
        for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs_[j]);
        if (rgs_[i] <= prefix_max) {
            ++rgs_[i];
            for (int j = i + 1; j < k; ++j) rgs_[j] = 0;
            num_blocks_ = 0;
            for (int j = 0; j < k; ++j) num_blocks_ = std::max(num_blocks_, rgs_[j] + 1);
            return true;
        }
    }
    return false;
}

std::optional<LabeledPartition> LabeledPartitionStream::next() {
    while (!done_) {
        if (fresh_partition_) {
            fresh_partition_ = false;
            label_mask_ = 0;
            if (!blocks_independent()) {
                if (!advance_rgs()) { done_ = true; break; }
                fresh_partition_ = true;
                continue;
            }
        } else {
            ++label_mask_;
            if (label_mask_ >= (uint64_t(1) << num_blocks_)) {
                if (!advance_rgs()) { done_ = true; break; }
                fresh_partition_ = true;
                continue;
            }
        }
        LabeledPartition lp;
        for (int b = 0; b < num_blocks_; ++b) {
            std::vector<int> block;
            for (size_t i = 0; i < verts_.size(); ++i)
                if (rgs_[i] == b) block.push_back(verts_[i]);
            if ((label_mask_ >> b) & 1)
                lp.reuse_blocks.push_back(std::move(block));
            else
                lp.fresh_blocks.push_back(std::move(block));
        }
        return lp;
    }
    return std::nullopt;
}

std::optional<PartitionMatrixBuilder> PartitionMatrixBuilder::make(const Instance& inst,
                                                                   const LabeledPartition& lp) {
    const int n = inst.n();
    Bits in_d(n);
    for (const auto& b : lp.fresh_blocks)
        for (int v : b) in_d.set(v);
    for (const auto& b : lp.reuse_blocks)
        for (int v : b) in_d.set(v);

    std::vector<int> cvs;
    for (int v = 0; v < n; ++v)
        if (!in_d.test(v)) cvs.push_back(v);

    Bits union_colors(inst.num_colors);
    for (int v = 0; v < n; ++v) union_colors |= inst.lists[v];
    std::vector<int> cols = union_colors.to_vector();

    const int p = int(lp.fresh_blocks.size());
    const int rows_real = int(cvs.size()) + p;
    if (rows_real > int(cols.size())) return std::nullopt;   // more vertices than colors

    auto common_list = [&](const std::vector<int>& block) {
        Bits acc = inst.lists[block.front()];
        for (size_t i = 1; i < block.size(); ++i) acc &= inst.lists[block[i]];
        return acc;
    };

    std::vector<Bits> fresh_common, reuse_common;
    for (const auto& b : lp.fresh_blocks) {
        fresh_common.push_back(common_list(b));
        if (fresh_common.back().empty()) return std::nullopt;  // all-zero row
    }
    for (const auto& b : lp.reuse_blocks) {
        reuse_common.push_back(common_list(b));
        if (reuse_common.back().empty()) return std::nullopt;  // x_j unattainable
    }

    PartitionMatrixBuilder out;
    out.t_ = int(lp.reuse_blocks.size());
    out.dim_ = int(cols.size());

    // adjacency of each C-vertex to each reuse block, once
    std::vector<Bits> reuse_union;
    for (const auto& b : lp.reuse_blocks)
        reuse_union.push_back(Bits::of(n, b));

    for (size_t i = 0; i < cvs.size(); ++i) {
        const int c = cvs[i];
        std::vector<int> open_blocks;   // reuse blocks with no neighbor of c
        for (int j = 0; j < out.t_; ++j)
            if (!inst.g.neighbors(c).intersects(reuse_union[j])) open_blocks.push_back(j);
        const Bits& l = inst.lists[c];
        for (size_t ci = 0; ci < cols.size(); ++ci) {
            if (!l.test(cols[ci])) continue;
            Edge e;
            e.row = int(i);
            e.col = int(ci);
            e.structural_one = false;
            for (int j : open_blocks)
                if (reuse_common[j].test(cols[ci])) e.reuse_ids.push_back(j);
            out.edges_.push_back(std::move(e));
        }
    }
    for (int b = 0; b < p; ++b)
        for (size_t ci = 0; ci < cols.size(); ++ci)
            if (fresh_common[b].test(cols[ci]))
                out.edges_.push_back({int(cvs.size()) + b, int(ci), true, {}});
    for (int r = rows_real; r < out.dim_; ++r)
        for (size_t ci = 0; ci < cols.size(); ++ci)
            out.edges_.push_back({r, int(ci), true, {}});
    return out;
}

SquareMatrix PartitionMatrixBuilder::assemble(const std::vector<F64>& x, uint32_t zero_mask,
                                              const std::vector<F64>& y) const {
    SquareMatrix m(dim_);
    for (size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        F64 w = FF_ONE;
        for (int j : ed.reuse_ids)
            if (!((zero_mask >> j) & 1)) w ^= x[j];
        m.at(ed.row, ed.col) = ff_mul(y[e], w);
    }
    return m;
}

namespace {

// nonzero sieve value for this labeled partition at a random point?
bool partition_item_hits(const Instance& folded, const LabeledPartition& lp, Rng rng) {
    auto builder = PartitionMatrixBuilder::make(folded, lp);
    if (!builder) return false;
    const int t = builder->reuse_count();
    std::vector<F64> x(t), y(builder->edge_count());
    for (auto& v : x) v = F64(rng.next());
    for (auto& v : y) v = F64(rng.next());
    F64 acc = FF_ZERO;
    for (uint32_t mask = 0; mask < (uint32_t(1) << t); ++mask)
        acc ^= determinant(builder->assemble(x, mask, y));
    return !acc.is_zero();
}

} // namespace

bool decide_partition(const Instance& inst, const SolveOptions& opt) {
    if (!inst.modulator)
        throw std::invalid_argument("decide_partition: instance has no modulator");
    if (inst.budget && inst.budget->tprime.count() > inst.budget->q)
        throw std::invalid_argument("decide_partition: budget constraints are not supported");
    const Instance folded = fold_precoloring(inst);
    const Rng base(opt.seed);

    for (int rep = 0; rep < opt.repetitions; ++rep) {
        if (opt.jobs <= 1) {
            LabeledPartitionStream stream(folded.g, *folded.modulator);
            uint64_t idx = 0;
            while (auto lp = stream.next()) {
                if (partition_item_hits(folded, *lp, base.split(rep, idx++)))
                    return true;
            }
        } else {
            LabeledPartitionStream stream(folded.g, *folded.modulator);
            std::mutex mu;
            std::atomic<bool> found{false};
            uint64_t idx = 0;
            auto worker = [&] {
                while (!found.load(std::memory_order_relaxed)) {
                    std::optional<LabeledPartition> lp;
                    uint64_t my_idx;
                    {
                        std::lock_guard<std::mutex> lock(mu);
                        lp = stream.next();
                        my_idx = idx++;
                    }
                    if (!lp) return;
                    if (partition_item_hits(folded, *lp, base.split(rep, my_idx)))
                        found.store(true, std::memory_order_relaxed);
                }
            };
            std::vector<std::thread> pool;
            for (int j = 0; j < opt.jobs; ++j) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
            if (found.load()) return true;
        }
    }
    return false;
}

} // namespace lcmod
