#include "lcmod/kernel_save.hpp"

#include <algorithm>
#include <map>

#include "lcmod/oracle.hpp"

namespace lcmod {

SaveState saturate_edges(const Instance& inst) {
    if (inst.tag != Tag::SAVE)
        throw std::invalid_argument("saturate_edges: expected a SAVE instance");
    validate_instance(inst);
    SaveState st;
    st.orig = inst;
    st.gprime = inst.g;
    st.p = inst.n() - inst.num_colors;
    const int n = inst.n();

    std::vector<std::vector<int>> color_class(inst.num_colors);
    for (int v = 0; v < n; ++v)
        if (inst.precolor[v] >= 0) color_class[inst.precolor[v]].push_back(v);

    bool changed = true;
    while (changed) {
        changed = false;
        // R3: differently precolored vertices cannot share a color
        for (int u = 0; u < n; ++u) {
            if (inst.precolor[u] < 0) continue;
            for (int v = u + 1; v < n; ++v)
                if (inst.precolor[v] >= 0 && inst.precolor[v] != inst.precolor[u] &&
                    !st.gprime.has_edge(u, v)) {
                    st.gprime.add_edge(u, v);
                    changed = true;
                }
        }
        // R2: a neighbor of one class member conflicts with the whole class
        for (int u = 0; u < n; ++u) {
            if (inst.precolor[u] >= 0) continue;
            for (int c = 0; c < inst.num_colors; ++c) {
                bool touches = false;
                for (int w : color_class[c])
                    if (st.gprime.has_edge(u, w)) { touches = true; break; }
                if (!touches) continue;
                for (int w : color_class[c])
                    if (!st.gprime.has_edge(u, w)) {
                        st.gprime.add_edge(u, w);
                        changed = true;
                    }
            }
        }
        // R1: two unprecolored vertices whose neighborhoods pin every color
        for (int u = 0; u < n; ++u) {
            if (inst.precolor[u] >= 0) continue;
            Bits seen_u(inst.num_colors);
            const Bits& nu = st.gprime.neighbors(u);
            for (int w = nu.first(); w >= 0; w = nu.next(w))
                if (inst.precolor[w] >= 0) seen_u.set(inst.precolor[w]);
            for (int v = u + 1; v < n; ++v) {
                if (inst.precolor[v] >= 0 || st.gprime.has_edge(u, v)) continue;
                Bits seen = seen_u;
                const Bits& nv = st.gprime.neighbors(v);
                for (int w = nv.first(); w >= 0; w = nv.next(w))
                    if (inst.precolor[w] >= 0) seen.set(inst.precolor[w]);
                if (seen.count() == inst.num_colors) {
                    st.gprime.add_edge(u, v);
                    changed = true;
                }
            }
        }
    }
    return st;
}

namespace {

Coloring build_yes_certificate(const SaveState& st,
                               const std::vector<std::pair<int, int>>& matching) {
    const Instance& inst = st.orig;
    const Graph& g = st.gprime;
    const int n = inst.n();
    Coloring col(n);
    std::vector<int> usage(inst.num_colors, 0);
    auto set_color = [&](int v, int c) {
        col.assign[v] = c;
        ++usage[c];
    };
    auto legal = [&](int v, int c) {
        const Bits& nb = g.neighbors(v);
        for (int u = nb.first(); u >= 0; u = nb.next(u))
            if (col.assign[u] == c) return false;
        return true;
    };
    for (int v = 0; v < n; ++v)
        if (inst.precolor[v] >= 0) set_color(v, inst.precolor[v]);

    // classify matching edges
    std::map<int, std::vector<int>> case2;     // class color -> unprecolored partners
    std::vector<std::pair<int, int>> case1;
    for (auto [a, b] : matching) {
        const bool pa = inst.precolor[a] >= 0, pb = inst.precolor[b] >= 0;
        if (pa && pb) {
            if (inst.precolor[a] != inst.precolor[b])
                throw InternalError("kernelize_save: differing precolors joined in the complement");
        } else if (pa) {
            case2[inst.precolor[a]].push_back(b);
        } else if (pb) {
            case2[inst.precolor[b]].push_back(a);
        } else {
            case1.push_back({a, b});
        }
    }
    // merge unprecolored partners into their class where legal
    for (auto& [c, us] : case2) {
        std::sort(us.begin(), us.end());
        for (int u : us)
            if (legal(u, c)) set_color(u, c);
    }
    // shared lowest legal color per unprecolored pair
    for (auto [u, v] : case1) {
        int chosen = -1;
        for (int c = 0; c < inst.num_colors; ++c)
            if (legal(u, c) && legal(v, c)) { chosen = c; break; }
        if (chosen >= 0) {
            set_color(u, chosen);
            set_color(v, chosen);
        }
    }
    // leftover vertices take unused colors injectively
    int cursor = 0;
    for (int v = 0; v < n; ++v) {
        if (col.assign[v] >= 0) continue;
        while (cursor < inst.num_colors && usage[cursor] > 0) ++cursor;
        if (cursor >= inst.num_colors)
            throw InternalError("kernelize_save: ran out of palette colors in the YES branch");
        set_color(v, cursor);
    }
    if (!verify_coloring(inst, col))
        throw InternalError("kernelize_save: YES certificate fails verification");
    return col;
}

} // namespace

SaveResult kernelize_save(const Instance& inst) {
    SaveResult res;
    res.state = saturate_edges(inst);
    const SaveState& st = res.state;

    Graph cg = complement(st.gprime);
    auto matching = maximal_matching(cg);

    if (int(matching.size()) >= st.p) {
        res.yes = true;
        res.certificate = build_yes_certificate(st, matching);
        return res;
    }

    std::vector<int> d;
    for (auto [u, v] : matching) {
        d.push_back(u);
        d.push_back(v);
    }
    std::sort(d.begin(), d.end());
    res.save_modulator = d;

    Instance pcecm;
    pcecm.g = st.gprime;
    pcecm.num_colors = inst.num_colors;
    pcecm.color_labels = inst.color_labels;
    pcecm.lists = inst.lists;      // palette lists
    pcecm.precolor = inst.precolor;
    pcecm.modulator = d;
    pcecm.tag = Tag::PCECM;
    validate_instance(pcecm);
    res.pce_input = pcecm;
    res.pce = kernelize_pce(pcecm);
    res.no = res.pce.no;
    if (!res.no && res.pce.reduced.n() > 6 * st.p)
        throw InternalError("kernelize_save: kernel exceeds 6(n-|Q|) vertices");
    return res;
}

Coloring lift_save(const SaveResult& result, const Coloring& lambda) {
    if (result.yes) return result.certificate;
    if (result.no)
        throw std::invalid_argument("lift_save: definitive NO has no coloring to lift");
    Coloring on_gprime = lift_pce(result.pce_input, result.pce, lambda);
    if (!verify_coloring(result.state.orig, on_gprime))
        throw InternalError("lift_save: lifted coloring fails on the original graph");
    return on_gprime;
}

} // namespace lcmod
