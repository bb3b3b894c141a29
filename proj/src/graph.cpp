#include "lcmod/graph.hpp"

#include <algorithm>

namespace lcmod {

Graph complement(const Graph& g) {
    const int n = g.n();
    Graph c(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v)) c.add_edge(u, v);
    return c;
}

std::vector<std::pair<int, int>> maximal_matching(const Graph& g) {
    const int n = g.n();
    std::vector<bool> used(n, false);
    std::vector<std::pair<int, int>> m;
    for (int u = 0; u < n; ++u) {
        if (used[u]) continue;
        const Bits& nb = g.neighbors(u);
        for (int v = nb.first(); v >= 0; v = nb.next(v)) {
            if (v > u && !used[v]) {
                used[u] = used[v] = true;
                m.push_back({u, v});
                break;
            }
            // v < u was already scanned as a left endpoint
        }
    }
    return m;
}

namespace {

bool try_augment(const BipartiteGraph& h, int l, std::vector<bool>& seen, Matching& m) {
    const Bits& nb = h.right_neighbors(l);
    for (int r = nb.first(); r >= 0; r = nb.next(r)) {
        if (seen[r]) continue;
        seen[r] = true;
        if (m.right_to_left[r] < 0 || try_augment(h, m.right_to_left[r], seen, m)) {
            m.left_to_right[l] = r;
            m.right_to_left[r] = l;
            return true;
        }
    }
    return false;
}

BipartiteGraph flipped(const BipartiteGraph& h) {
    BipartiteGraph f(h.right_size(), h.left_size());
    for (int l = 0; l < h.left_size(); ++l) {
        const Bits& nb = h.right_neighbors(l);
        for (int r = nb.first(); r >= 0; r = nb.next(r)) f.add_edge(r, l);
    }
    return f;
}

// Deficient set on the LEFT side, with the matching's saturation property.
std::optional<std::vector<int>> deficient_left(const BipartiteGraph& h) {
    Matching m = maximum_bipartite_matching(h);
    int start = -1;
    for (int l = 0; l < h.left_size(); ++l)
        if (m.left_to_right[l] < 0) { start = l; break; }
    if (start < 0) return std::nullopt;

    // alternating closure: from an unsaturated left vertex, follow any
    // edge right, then the matching edge back left
    std::vector<bool> inS(h.left_size(), false), inN(h.right_size(), false);
    std::vector<int> stack{start};
    inS[start] = true;
    while (!stack.empty()) {
        int l = stack.back();
        stack.pop_back();
        const Bits& nb = h.right_neighbors(l);
        for (int r = nb.first(); r >= 0; r = nb.next(r)) {
            if (inN[r]) continue;
            inN[r] = true;
            int back = m.right_to_left[r];   // matched, else m was not maximum
            if (back >= 0 && !inS[back]) {
                inS[back] = true;
                stack.push_back(back);
            }
        }
    }
    std::vector<int> s;
    for (int l = 0; l < h.left_size(); ++l)
        if (inS[l]) s.push_back(l);
    return s;
}

} // namespace

Matching maximum_bipartite_matching(const BipartiteGraph& h) {
    Matching m(h.left_size(), h.right_size());
    for (int l = 0; l < h.left_size(); ++l) {
        std::vector<bool> seen(h.right_size(), false);
        try_augment(h, l, seen, m);
    }
    return m;
}

std::optional<std::vector<int>> find_deficient_set(const BipartiteGraph& h, Side side) {
    if (side == Side::Left) return deficient_left(h);
    return deficient_left(flipped(h));
}

bool is_independent_set(const Graph& g, const Bits& s) {
    for (int u = s.first(); u >= 0; u = s.next(u))
        if (g.neighbors(u).intersects(s)) return false;
    return true;
}

std::vector<int> approx_modulator(const Graph& g) {
    Graph cg = complement(g);
    std::vector<int> d;
    for (auto [u, v] : maximal_matching(cg)) {
        d.push_back(u);
        d.push_back(v);
    }
    std::sort(d.begin(), d.end());
    return d;
}

namespace {

// vertex cover of size <= k in h (mutable via 'removed' mask), branching
// on the lowest-index endpoint pair of the lowest remaining edge
bool vc_branch(const Graph& h, Bits& removed, int k, std::vector<int>& cover) {
    int eu = -1, ev = -1;
    for (int u = 0; u < h.n() && eu < 0; ++u) {
        if (removed.test(u)) continue;
        Bits nb = h.neighbors(u);
        nb.subtract(removed);
        int v = nb.first();
        if (v >= 0) { eu = u; ev = v; }
    }
    if (eu < 0) return true;       // no edges left
    if (k == 0) return false;
    for (int pick : {eu, ev}) {
        removed.set(pick);
        cover.push_back(pick);
        if (vc_branch(h, removed, k - 1, cover)) return true;
        cover.pop_back();
        removed.reset(pick);
    }
    return false;
}

} // namespace

std::optional<std::vector<int>> exact_modulator(const Graph& g, int k) {
    if (k < 0) return std::nullopt;
    Graph cg = complement(g);
    Bits removed(g.n());
    std::vector<int> cover;
    if (!vc_branch(cg, removed, k, cover)) return std::nullopt;
    std::sort(cover.begin(), cover.end());
    return cover;
}

bool verify_modulator(const Graph& g, const std::vector<int>& d) {
    Bits in_d = Bits::of(g.n(), d);
    for (int u = 0; u < g.n(); ++u) {
        if (in_d.test(u)) continue;
        for (int v = u + 1; v < g.n(); ++v) {
            if (in_d.test(v)) continue;
            if (!g.has_edge(u, v)) return false;
        }
    }
    return true;
}

} // namespace lcmod
