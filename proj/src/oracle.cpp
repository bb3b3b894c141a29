#include "lcmod/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace lcmod {

namespace {

std::vector<int> degree_order(const Graph& g) {
    std::vector<int> order(g.n());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return g.degree(a) > g.degree(b);
    });
    return order;
}

// Sound pigeonhole prune: greedily grow a clique among unassigned
// vertices; its members need pairwise distinct colors from the union of
// their remaining choices, so a clique larger than that union kills the
// branch. Keeps exhaustion feasible on the near-clique kernels.
bool clique_pigeonhole_dead(const Instance& inst, const std::vector<int>& order, size_t pos,
                            const Coloring& col) {
    Bits clique(inst.n());
    Bits avail(inst.num_colors);
    int size = 0;
    for (size_t i = pos; i < order.size(); ++i) {
        const int v = order[i];
        if (!clique.subset_of(inst.g.neighbors(v))) continue;
        clique.set(v);
        ++size;
        Bits mine = inst.lists[v];
        const Bits& nb = inst.g.neighbors(v);
        for (int u = nb.first(); u >= 0; u = nb.next(u))
            if (col.assign[u] >= 0) mine.reset(col.assign[u]);
        avail |= mine;
        if (size > avail.count()) return true;
    }
    return false;
}

bool backtrack(const Instance& inst, const std::vector<int>& order, size_t pos, Coloring& col) {
    if (pos == order.size()) return true;
    if (clique_pigeonhole_dead(inst, order, pos, col)) return false;
    const int v = order[pos];
    const Bits& nb = inst.g.neighbors(v);
    const Bits& l = inst.lists[v];
    for (int c = l.first(); c >= 0; c = l.next(c)) {
        bool clash = false;
        for (int u = nb.first(); u >= 0 && !clash; u = nb.next(u))
            clash = (col.assign[u] == c);
        if (clash) continue;
        col.assign[v] = c;
        if (backtrack(inst, order, pos + 1, col)) return true;
        col.assign[v] = -1;
    }
    return false;
}

} // namespace

std::optional<Coloring> brute_backtrack(const Instance& inst, const OracleLimits& lim) {
    if (inst.n() > lim.max_vertices)
        throw CapacityError("brute_backtrack: instance exceeds the configured vertex cap");
    Instance folded = fold_precoloring(inst);
    Coloring col(folded.n());
    if (backtrack(folded, degree_order(folded.g), 0, col)) return col;
    return std::nullopt;
}

namespace {

bool extend_clique_by_matching(const Instance& inst, const std::vector<int>& cvs, Coloring& col) {
    // c can take q iff q in L(c) and no already-colored neighbor holds q
    BipartiteGraph h(int(cvs.size()), inst.num_colors);
    for (size_t i = 0; i < cvs.size(); ++i) {
        const int v = cvs[i];
        Bits avail = inst.lists[v];
        const Bits& nb = inst.g.neighbors(v);
        for (int u = nb.first(); u >= 0; u = nb.next(u))
            if (col.assign[u] >= 0) avail.reset(col.assign[u]);
        for (int c = avail.first(); c >= 0; c = avail.next(c)) h.add_edge(int(i), c);
    }
    Matching m = maximum_bipartite_matching(h);
    if (m.size() < int(cvs.size())) return false;
    for (size_t i = 0; i < cvs.size(); ++i) col.assign[cvs[i]] = m.left_to_right[i];
    return true;
}

bool enum_modulator(const Instance& inst, const std::vector<int>& dvs, const std::vector<int>& cvs,
                    size_t pos, Coloring& col) {
    if (pos == dvs.size())
        return extend_clique_by_matching(inst, cvs, col);
    const int v = dvs[pos];
    const Bits& nb = inst.g.neighbors(v);
    const Bits& l = inst.lists[v];
    for (int c = l.first(); c >= 0; c = l.next(c)) {
        bool clash = false;
        for (int u = nb.first(); u >= 0 && !clash; u = nb.next(u))
            clash = (col.assign[u] == c);
        if (clash) continue;
        col.assign[v] = c;
        if (enum_modulator(inst, dvs, cvs, pos + 1, col)) return true;
        col.assign[v] = -1;
    }
    return false;
}

} // namespace

std::optional<Coloring> brute_modulator_enum(const Instance& inst, const OracleLimits& lim) {
    if (!inst.modulator)
        throw std::invalid_argument("brute_modulator_enum: instance has no modulator");
    Instance folded = fold_precoloring(inst);
    const std::vector<int>& dvs = *folded.modulator;
    long long prod = 1;
    for (int d : dvs) {
        prod *= std::max(folded.lists[d].count(), 1);
        if (prod > lim.max_modulator_products)
            throw CapacityError("brute_modulator_enum: modulator list product exceeds the cap");
    }
    Bits in_d = Bits::of(folded.n(), dvs);
    std::vector<int> cvs;
    for (int v = 0; v < folded.n(); ++v)
        if (!in_d.test(v)) cvs.push_back(v);
    Coloring col(folded.n());
    if (enum_modulator(folded, dvs, cvs, 0, col)) return col;
    return std::nullopt;
}

namespace {

bool budget_backtrack(const Instance& inst, const std::vector<int>& order, size_t pos,
                      Coloring& col, Bits& used_budget) {
    if (int(used_budget.count()) > inst.budget->q) return false;
    if (pos == order.size()) return true;
    if (clique_pigeonhole_dead(inst, order, pos, col)) return false;
    const int v = order[pos];
    const Bits& nb = inst.g.neighbors(v);
    const Bits& l = inst.lists[v];
    for (int c = l.first(); c >= 0; c = l.next(c)) {
        bool clash = false;
        for (int u = nb.first(); u >= 0 && !clash; u = nb.next(u))
            clash = (col.assign[u] == c);
        if (clash) continue;
        const bool fresh_budget = inst.budget->tprime.test(c) && !used_budget.test(c);
        if (fresh_budget && int(used_budget.count()) >= inst.budget->q) continue;
        col.assign[v] = c;
        if (fresh_budget) used_budget.set(c);
        if (budget_backtrack(inst, order, pos + 1, col, used_budget)) return true;
        if (fresh_budget) used_budget.reset(c);
        col.assign[v] = -1;
    }
    return false;
}

} // namespace

std::optional<Coloring> brute_budget(const Instance& inst, const OracleLimits& lim) {
    if (inst.n() > lim.max_vertices)
        throw CapacityError("brute_budget: instance exceeds the configured vertex cap");
    Instance folded = fold_precoloring(inst);
    if (!folded.budget) return brute_backtrack(inst, lim);
    if (folded.budget->q < 0) return std::nullopt;
    Coloring col(folded.n());
    Bits used(folded.num_colors);
    // pre-colored vertices already commit budget colors
    for (int v = 0; v < folded.n(); ++v)
        if (folded.precolor[v] >= 0 && folded.budget->tprime.test(folded.precolor[v]))
            used.set(folded.precolor[v]);
    if (budget_backtrack(folded, degree_order(folded.g), 0, col, used)) return col;
    return std::nullopt;
}

bool verify_coloring(const Instance& inst, const Coloring& c) {
    if (int(c.assign.size()) != inst.n()) return false;
    for (int v = 0; v < inst.n(); ++v) {
        const int cv = c.assign[v];
        if (cv < 0 || cv >= inst.num_colors) return false;
        if (!inst.lists[v].test(cv)) return false;
        if (inst.precolor[v] >= 0 && inst.precolor[v] != cv) return false;
        const Bits& nb = inst.g.neighbors(v);
        for (int u = nb.first(); u >= 0; u = nb.next(u))
            if (c.assign[u] == cv) return false;
    }
    if (inst.budget && c.distinct_used(inst.budget->tprime) > inst.budget->q) return false;
    return true;
}

} // namespace lcmod
