#include "lcmod/solver_sieve.hpp"

#include <algorithm>
#include <thread>

namespace lcmod {

int AuxiliaryGraph::col_of_color(int dense_color) const {
    auto it = std::lower_bound(real_cols.begin(), real_cols.end(), dense_color);
    return int(it - real_cols.begin());
}

AuxiliaryGraph build_auxiliary(const Instance& folded, const std::vector<int>& modulator) {
    AuxiliaryGraph aux;
    Bits uni(folded.num_colors);
    for (int v = 0; v < folded.n(); ++v) uni |= folded.lists[v];
    aux.real_cols = uni.to_vector();
    aux.k = int(modulator.size());
    aux.n = folded.n();
    aux.dim = int(aux.real_cols.size()) + aux.k;
    aux.padding = aux.dim - aux.n;
    return aux;
}

bool edge_family_member(const Instance& folded, const std::vector<int>& modulator,
                        int v, int dense_color, const Bits& s) {
    Bits in_d = Bits::of(folded.n(), modulator);
    const bool v_in_d = v >= 0 && v < folded.n() && in_d.test(v);
    const bool artificial = (v < 0 || v >= folded.n() || dense_color < 0);
    if (artificial) return s.empty();
    if (!s.subset_of(in_d)) return false;
    if (!is_independent_set(folded.g, s)) return false;
    for (int u = s.first(); u >= 0; u = s.next(u))
        if (!folded.lists[u].test(dense_color)) return false;
    if (v_in_d) return s.test(v);
    return !folded.g.neighbors(v).intersects(s);
}

namespace {

uint32_t compress_bits(uint32_t value, uint32_t selector) {
    uint32_t out = 0;
    int pos = 0;
    while (selector) {
        uint32_t low = selector & (selector - uint32_t(1));
        uint32_t bit = selector ^ low;
        if (value & bit) out |= uint32_t(1) << pos;
        ++pos;
        selector = low;
    }
    return out;
}

// zeta-transformed table over the candidate set: per subset, the product
// of the members' x values if the members are pairwise nonadjacent,
// extra_factor times that when the row is a modulator vertex
std::vector<F64> build_table(const std::vector<int>& cand_dindex,
                             const std::vector<uint32_t>& cand_adj,
                             const std::vector<F64>& x, F64 extra_factor) {
    const int m = int(cand_dindex.size());
    const size_t sz = size_t(1) << m;
    std::vector<F64> f(sz, FF_ZERO);
    std::vector<bool> ok(sz, false);
    f[0] = extra_factor;
    ok[0] = true;
    for (size_t s = 1; s < sz; ++s) {
        int low = __builtin_ctzll(s);
        size_t rest = s & (s - 1);
        if (!ok[rest] || (cand_adj[low] & rest)) continue;
        ok[s] = true;
        f[s] = ff_mul(f[rest], x[cand_dindex[low]]);
    }
    for (int d = 0; d < m; ++d) {
        const size_t bit = size_t(1) << d;
        for (size_t s = 0; s < sz; ++s)
            if (s & bit) f[s] ^= f[s ^ bit];
    }
    return f;
}

} // namespace

EdgeTables EdgeTables::build(const Instance& folded, const std::vector<int>& modulator,
                             const AuxiliaryGraph& aux, const std::vector<F64>& x,
                             size_t memory_budget_bytes) {
    const int k = int(modulator.size());
    if (k > 30) throw std::length_error("solver_sieve: modulator larger than 30 is unsupported");
    EdgeTables out;
    out.k_ = k;

    std::vector<int> dindex(folded.n(), -1);
    for (int i = 0; i < k; ++i) dindex[modulator[i]] = i;

    // D-restricted neighbor masks make membership checks O(1) words
    std::vector<uint32_t> dmask_adj(folded.n(), 0);
    for (int v = 0; v < folded.n(); ++v) {
        uint32_t m = 0;
        for (int i = 0; i < k; ++i)
            if (folded.g.has_edge(v, modulator[i])) m |= uint32_t(1) << i;
        dmask_adj[v] = m;
    }
    std::vector<uint32_t> color_carriers(folded.num_colors, 0);  // which D-vertices list a color
    for (int i = 0; i < k; ++i) {
        const Bits& l = folded.lists[modulator[i]];
        for (int c = l.first(); c >= 0; c = l.next(c)) color_carriers[c] |= uint32_t(1) << i;
    }

    size_t budget_used = 0;
    auto charge = [&](size_t entries) {
        budget_used += entries * sizeof(F64);
        if (budget_used > memory_budget_bytes)
            throw CapacityError("solver_sieve: edge tables exceed the memory budget");
    };

    for (int v = 0; v < folded.n(); ++v) {
        const bool is_d = dindex[v] >= 0;
        const Bits& l = folded.lists[v];
        for (int c = l.first(); c >= 0; c = l.next(c)) {
            PerEdge e;
            e.row = v;
            e.col = aux.col_of_color(c);
            e.constant_one = false;
            e.dvert = dindex[v];
            uint32_t cand = color_carriers[c] & ~dmask_adj[v];
            if (is_d) cand &= ~(uint32_t(1) << dindex[v]);
            e.cand_mask = cand;
            std::vector<int> cand_list;
            for (uint32_t m = cand; m; m &= m - 1)
                cand_list.push_back(__builtin_ctz(m));
            std::vector<uint32_t> cand_adj(cand_list.size(), 0);
            for (size_t i = 0; i < cand_list.size(); ++i)
                cand_adj[i] = compress_bits(dmask_adj[modulator[cand_list[i]]], cand);
            charge(size_t(1) << cand_list.size());
            e.table = build_table(cand_list, cand_adj, x,
                                  is_d ? x[dindex[v]] : FF_ONE);
            out.edges_.push_back(std::move(e));
        }
    }
    for (int i = 0; i < k; ++i) {
        PerEdge e;
        e.row = modulator[i];
        e.col = aux.col_of_artificial(i);
        e.constant_one = true;
        out.edges_.push_back(std::move(e));
    }
    for (int r = 0; r < aux.padding; ++r)
        for (int col = 0; col < aux.dim; ++col) {
            PerEdge e;
            e.row = aux.n + r;
            e.col = col;
            e.constant_one = true;
            out.edges_.push_back(std::move(e));
        }
    return out;
}

F64 EdgeTables::lookup(const PerEdge& e, uint32_t zero_mask) const {
    if (e.constant_one) return FF_ONE;
    if (e.dvert >= 0 && ((zero_mask >> e.dvert) & 1)) return FF_ZERO;
    uint32_t live = e.cand_mask & ~zero_mask;
    return e.table[compress_bits(live, e.cand_mask)];
}

SquareMatrix assemble_sieve_matrix(const AuxiliaryGraph& aux, const EdgeTables& tables,
                                   uint32_t zero_mask, const std::vector<F64>& y) {
    SquareMatrix m(aux.dim);
    const auto& edges = tables.edges();
    for (size_t i = 0; i < edges.size(); ++i) {
        F64 p = tables.lookup(edges[i], zero_mask);
        if (!p.is_zero()) m.at(edges[i].row, edges[i].col) = ff_mul(y[i], p);
    }
    return m;
}

bool decide_sieve(const Instance& inst, const SolveOptions& opt) {
    if (!inst.modulator)
        throw std::invalid_argument("decide_sieve: instance has no modulator");
    if (inst.budget && inst.budget->tprime.count() > inst.budget->q)
        throw std::invalid_argument("decide_sieve: budget constraints are not supported");
    const Instance folded = fold_precoloring(inst);
    const std::vector<int>& mod = *folded.modulator;
    const int k = int(mod.size());

    AuxiliaryGraph aux = build_auxiliary(folded, mod);
    if (aux.padding < 0) return false;   // |L| < |C|: reject outright

    const Rng base(opt.seed);
    for (int rep = 0; rep < opt.repetitions; ++rep) {
        Rng rng = base.split(rep);
        std::vector<F64> x(k);
        for (auto& v : x) v = F64(rng.next());
        EdgeTables tables = EdgeTables::build(folded, mod, aux, x);
        std::vector<F64> y(tables.edges().size());
        for (auto& v : y) v = F64(rng.next());

        const uint64_t total = uint64_t(1) << k;
        F64 acc = FF_ZERO;
        if (opt.jobs <= 1 || total < 64) {
            for (uint64_t mask = 0; mask < total; ++mask)
                acc ^= determinant(assemble_sieve_matrix(aux, tables, uint32_t(mask), y));
        } else {
            std::vector<F64> partial(opt.jobs, FF_ZERO);
            std::vector<std::thread> pool;
            for (int t = 0; t < opt.jobs; ++t) {
                pool.emplace_back([&, t] {
                    F64 local = FF_ZERO;
                    for (uint64_t mask = t; mask < total; mask += opt.jobs)
                        local ^= determinant(assemble_sieve_matrix(aux, tables, uint32_t(mask), y));
                    partial[t] = local;
                });
            }
            for (auto& th : pool) th.join();
            for (F64 p : partial) acc ^= p;
        }
        if (!acc.is_zero()) return true;
    }
    return false;
}

} // namespace lcmod
