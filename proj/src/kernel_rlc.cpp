#include "lcmod/kernel_rlc.hpp"

#include <algorithm>

#include "lcmod/oracle.hpp"

namespace lcmod {

namespace {

void require_rlc(const Instance& inst) {
    if (inst.tag != Tag::RLC || inst.param_k < 0)
        throw std::invalid_argument("kernel_rlc: expected an RLC instance with declared k");
}

Instance dummy_yes_budget() {
    Instance d;
    d.g = Graph(1);
    d.num_colors = 1;
    d.color_labels = {1};
    Bits l(1);
    l.set(0);
    d.lists.assign(1, l);
    d.precolor.assign(1, -1);
    d.budget = BudgetConstraint{Bits(1), 0};
    d.tag = Tag::BUDGET;
    return d;
}

Instance dummy_no_budget() {
    Instance d;
    d.g = Graph(1);
    d.num_colors = 0;
    d.lists.assign(1, Bits(0));
    d.precolor.assign(1, -1);
    d.budget = BudgetConstraint{Bits(0), 0};
    d.tag = Tag::BUDGET;
    return d;
}

Instance dummy_no_rlc() {
    // adjacent pair sharing a single-color list
    Instance d;
    d.g = Graph(2);
    d.g.add_edge(0, 1);
    d.num_colors = 1;
    d.color_labels = {1};
    Bits l(1);
    l.set(0);
    d.lists.assign(2, l);
    d.precolor.assign(2, -1);
    d.tag = Tag::RLC;
    d.param_k = 1;
    return d;
}

Instance dummy_yes_rlc() {
    Instance d;
    d.g = Graph(1);
    d.num_colors = 1;
    d.color_labels = {1};
    Bits l(1);
    l.set(0);
    d.lists.assign(1, l);
    d.precolor.assign(1, -1);
    d.tag = Tag::RLC;
    d.param_k = 0;
    return d;
}

// compact the alive sub-instance; fills vmap/cmap (original ids)
Instance compact_alive(const Instance& orig, const Bits& alive_v, const Bits& alive_t,
                       std::vector<int>& vmap, std::vector<int>& cmap) {
    vmap = alive_v.to_vector();
    cmap = alive_t.to_vector();
    std::vector<int> cinv(orig.num_colors, -1);
    for (size_t i = 0; i < cmap.size(); ++i) cinv[cmap[i]] = int(i);
    Instance out;
    const int n = int(vmap.size());
    out.g = Graph(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (orig.g.has_edge(vmap[i], vmap[j])) out.g.add_edge(i, j);
    out.num_colors = int(cmap.size());
    for (int c : cmap) out.color_labels.push_back(orig.color_labels[c]);
    out.lists.assign(n, Bits(out.num_colors));
    for (int i = 0; i < n; ++i) {
        const Bits& l = orig.lists[vmap[i]];
        for (int c = l.first(); c >= 0; c = l.next(c))
            if (cinv[c] >= 0) out.lists[i].set(cinv[c]);
    }
    out.precolor.assign(n, -1);
    return out;
}

} // namespace

std::optional<std::vector<int>> rule_modulator_or_yes(const Instance& inst) {
    require_rlc(inst);
    Graph cg = complement(inst.g);
    auto m = maximal_matching(cg);
    if (int(m.size()) >= inst.param_k) return std::nullopt;   // YES
    std::vector<int> d;
    for (auto [u, v] : m) {
        d.push_back(u);
        d.push_back(v);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<TraceStep> rule_color_hall(const Instance& inst, Bits& alive_v, Bits& alive_t) {
    std::vector<TraceStep> steps;
    while (true) {
        // colors with no alive carrier die quietly (degenerate deficient sets)
        std::vector<int> colors;
        for (int t = alive_t.first(); t >= 0; t = alive_t.next(t)) {
            bool carried = false;
            for (int v = alive_v.first(); v >= 0 && !carried; v = alive_v.next(v))
                carried = inst.lists[v].test(t);
            if (carried) colors.push_back(t);
            else alive_t.reset(t);
        }
        std::vector<int> verts = alive_v.to_vector();
        BipartiteGraph hg(int(verts.size()), int(colors.size()));
        for (size_t i = 0; i < verts.size(); ++i)
            for (size_t j = 0; j < colors.size(); ++j)
                if (inst.lists[verts[i]].test(colors[j])) hg.add_edge(int(i), int(j));
        auto s_local = find_deficient_set(hg, Side::Right);
        if (!s_local) break;

        Bits s_mask(int(colors.size()));
        for (int j : *s_local) s_mask.set(j);
        Bits removed(int(verts.size()));
        for (size_t i = 0; i < verts.size(); ++i)
            for (int j = s_mask.first(); j >= 0; j = s_mask.next(j))
                if (hg.has_edge(int(i), j)) { removed.set(int(i)); break; }

        // witness: matching saturating the removed vertices into S
        BipartiteGraph sub(int(verts.size()), int(colors.size()));
        for (int i = removed.first(); i >= 0; i = removed.next(i))
            for (int j = s_mask.first(); j >= 0; j = s_mask.next(j))
                if (hg.has_edge(i, j)) sub.add_edge(i, j);
        Matching m = maximum_bipartite_matching(sub);

        TraceStep step;
        step.rule = 10;
        for (int i = removed.first(); i >= 0; i = removed.next(i)) {
            if (m.left_to_right[i] < 0)
                throw InternalError("rule_color_hall: witness matching fails to saturate N(S)");
            step.removed_vertices.push_back(verts[i]);
            step.witness.push_back({verts[i], colors[m.left_to_right[i]]});
        }
        for (int j = s_mask.first(); j >= 0; j = s_mask.next(j))
            step.removed_colors.push_back(colors[j]);
        for (int v : step.removed_vertices) alive_v.reset(v);
        for (int c : step.removed_colors) alive_t.reset(c);
        steps.push_back(std::move(step));
    }
    return steps;
}

std::vector<int> classify_rare(const Instance& inst, const Bits& alive_v, const Bits& alive_t,
                               const std::vector<int>& modulator, int k) {
    Bits in_d = Bits::of(inst.n(), modulator);
    std::vector<int> rare;
    for (int t = alive_t.first(); t >= 0; t = alive_t.next(t)) {
        int occ = 0;
        for (int v = alive_v.first(); v >= 0; v = alive_v.next(v))
            if (!in_d.test(v) && inst.lists[v].test(t)) ++occ;
        if (occ <= 6 * k) rare.push_back(t);
    }
    if (int(rare.size()) > 3 * k)
        throw InternalError("classify_rare: more than 3k rare colors; preconditions violated");
    return rare;
}

namespace {

// shared pipeline up to the compression artifacts; returns false if the
// complement-matching rule already decided YES
bool run_pipeline(const Instance& inst, RlcState& st) {
    require_rlc(inst);
    validate_instance(inst);
    st.orig = inst;
    st.k = inst.param_k;
    auto d = rule_modulator_or_yes(inst);
    if (!d) return false;

    st.alive_v = Bits(inst.n());
    for (int v = 0; v < inst.n(); ++v) st.alive_v.set(v);
    st.alive_t = Bits(inst.num_colors);
    for (int c = 0; c < inst.num_colors; ++c) st.alive_t.set(c);
    st.hall_steps = rule_color_hall(inst, st.alive_v, st.alive_t);

    st.modulator.clear();
    for (int v : *d)
        if (st.alive_v.test(v)) st.modulator.push_back(v);
    return true;
}

void build_compression(RlcState& st) {
    const Instance& inst = st.orig;
    const int k = st.k;
    st.compressed = true;
    st.rare = classify_rare(inst, st.alive_v, st.alive_t, st.modulator, k);

    Bits in_d = Bits::of(inst.n(), st.modulator);
    std::vector<int> cvs;
    for (int v = st.alive_v.first(); v >= 0; v = st.alive_v.next(v))
        if (!in_d.test(v)) cvs.push_back(v);

    // H*: (C, D u T_R); right side lists D first, then the rare colors
    const int nd = int(st.modulator.size());
    const int nr = int(st.rare.size());
    BipartiteGraph hstar(int(cvs.size()), nd + nr);
    for (size_t i = 0; i < cvs.size(); ++i) {
        for (int j = 0; j < nd; ++j)
            if (!inst.g.has_edge(cvs[i], st.modulator[j])) hstar.add_edge(int(i), j);
        for (int j = 0; j < nr; ++j)
            if (inst.lists[cvs[i]].test(st.rare[j])) hstar.add_edge(int(i), nd + j);
    }
    Matching m = maximum_bipartite_matching(hstar);

    st.xc = Bits(inst.n());
    st.xd = Bits(inst.n());
    st.xt = Bits(inst.num_colors);
    st.match_cd.clear();
    st.match_ct.clear();
    for (size_t i = 0; i < cvs.size(); ++i) {
        int r = m.left_to_right[i];
        if (r < 0) continue;
        st.xc.set(cvs[i]);
        if (r < nd) {
            st.xd.set(st.modulator[r]);
            st.match_cd.push_back({cvs[i], st.modulator[r]});
        } else {
            st.xt.set(st.rare[r - nd]);
            st.match_ct.push_back({cvs[i], st.rare[r - nd]});
        }
    }

    // constrained rare colors may only occur on lists of D u (C^X)
    for (int t : st.rare) {
        if (st.xt.test(t)) continue;
        for (int c : cvs)
            if (inst.lists[c].test(t) && !st.xc.test(c))
                throw InternalError("build_hstar_and_x: unmatched rare color occurs outside C^X");
    }

    st.tprime = st.alive_t;
    for (int t : st.rare)
        if (!st.xt.test(t)) st.tprime.reset(t);

    st.vprime.clear();
    for (int v = st.alive_v.first(); v >= 0; v = st.alive_v.next(v)) {
        if (in_d.test(v) && !st.xd.test(v)) st.vprime.push_back(v);
        else if (!in_d.test(v) && st.xc.test(v)) st.vprime.push_back(v);
    }
    int c_outside = 0;
    for (int c : cvs) c_outside += !st.xc.test(c);
    st.q = st.tprime.count() - c_outside;

    const int x_total = st.xc.count() + st.xd.count() + st.xt.count();
    st.x_size_bound_holds = x_total <= 5 * k;
    if (st.xc.count() > 5 * k)
        throw InternalError("compress_rlc: |C^X| exceeds 5k");
    if (int(st.vprime.size()) > 7 * k)
        throw InternalError("compress_rlc: |V'| exceeds 7k");
    if (st.q > 7 * k)
        throw InternalError("compress_rlc: budget q exceeds 7k");
}

} // namespace

RlcCompression compress_rlc(const Instance& inst) {
    RlcCompression out;
    if (!run_pipeline(inst, out.state)) {
        out.yes = true;
        out.output = dummy_yes_budget();
        return out;
    }
    RlcState& st = out.state;
    const int k = st.k;
    const int n_cur = st.alive_v.count();

    if (n_cur < 11 * k) {
        out.output = compact_alive(st.orig, st.alive_v, st.alive_t, st.output_vmap, st.output_cmap);
        out.output.budget = BudgetConstraint{Bits(out.output.num_colors), 0};
        out.output.tag = Tag::BUDGET;
        return out;
    }

    build_compression(st);
    if (st.q < 0) {
        // a negative budget is unmeetable, and any coloring of the
        // original restricts to one within budget, so the answer is NO
        out.output = dummy_no_budget();
        st.output_vmap.clear();
        st.output_cmap.clear();
        return out;
    }

    Bits keep_colors = st.tprime;
    if (int(st.tprime.count()) >= int(st.vprime.size()) * k + st.q) {
        Bits universal = st.tprime;
        for (int v : st.vprime) universal &= st.orig.lists[v];
        if (universal.count() < st.q)
            throw InternalError("compress_rlc: fewer than q universal colors");
        Bits u(st.orig.num_colors);
        int need = st.q;
        for (int c = universal.first(); c >= 0 && need > 0; c = universal.next(c), --need)
            u.set(c);
        st.trimmed_universal = u;
        keep_colors = u;
    }
    for (int t : st.rare)
        if (!st.xt.test(t)) keep_colors.set(t);   // (T_R \ X) u (T' or U)

    Bits keep_v = Bits::of(st.orig.n(), st.vprime);
    Instance sub = compact_alive(st.orig, keep_v, keep_colors, st.output_vmap, st.output_cmap);
    std::vector<int> cinv(st.orig.num_colors, -1);
    for (size_t i = 0; i < st.output_cmap.size(); ++i) cinv[st.output_cmap[i]] = int(i);
    BudgetConstraint b;
    b.tprime = Bits(sub.num_colors);
    const Bits& budget_src = st.trimmed_universal ? *st.trimmed_universal : st.tprime;
    for (int c = budget_src.first(); c >= 0; c = budget_src.next(c))
        if (cinv[c] >= 0) b.tprime.set(cinv[c]);
    b.q = st.q;
    sub.budget = b;
    sub.tag = Tag::BUDGET;
    out.output = sub;

    if (out.output.n() > 11 * k)
        throw InternalError("compress_rlc: output exceeds 11k vertices");
    if (out.output.num_colors > 3 * k + 7 * k * k)
        throw InternalError("compress_rlc: output exceeds 3k+7k^2 colors");
    return out;
}

RlcKernel kernelize_rlc(const Instance& inst) {
    RlcKernel out;
    RlcState st;
    if (!run_pipeline(inst, st)) {
        out.yes = true;
        out.output = dummy_yes_rlc();
        return out;
    }
    const int k = st.k;
    const int n_cur = st.alive_v.count();

    auto small_output = [&]() {
        std::vector<int> vmap, cmap;
        Instance sub = compact_alive(st.orig, st.alive_v, st.alive_t, vmap, cmap);
        sub.tag = Tag::RLC;
        int list_size = sub.n() > 0 ? sub.lists[0].count() : 0;
        sub.param_k = sub.n() - list_size;
        validate_instance(sub);
        return sub;
    };

    if (n_cur < 11 * k) {
        out.output = small_output();
        return out;
    }
    build_compression(st);
    if (st.q < 0) {
        // fewer budget colors than the outside clique needs: a no-instance
        out.output = dummy_no_rlc();
        return out;
    }
    if (int(st.tprime.count()) < int(st.vprime.size()) * k + st.q) {
        out.output = small_output();    // already O(k^2) vertices and colors
        return out;
    }

    // padded branch: exactly q universal colors, novel colors to restore
    // regularity, novel clique to absorb them
    Bits universal = st.tprime;
    for (int v : st.vprime) universal &= st.orig.lists[v];
    if (universal.count() < st.q)
        throw InternalError("kernelize_rlc: fewer than q universal colors");
    Bits u(st.orig.num_colors);
    int need = st.q;
    for (int c = universal.first(); c >= 0 && need > 0; c = universal.next(c), --need)
        u.set(c);
    Bits keep_colors = u;
    for (int t : st.rare)
        if (!st.xt.test(t)) keep_colors.set(t);

    std::vector<int> vmap, cmap;
    Bits keep_v = Bits::of(st.orig.n(), st.vprime);
    Instance sub = compact_alive(st.orig, keep_v, keep_colors, vmap, cmap);

    const int base_colors = sub.num_colors;        // |(T_R \ X) u U|
    const int novel = base_colors;                 // |T_N|
    const int old_n = sub.n();
    Instance padded;
    padded.g = Graph(old_n + novel);
    for (int i = 0; i < old_n; ++i)
        for (int j = i + 1; j < old_n; ++j)
            if (sub.g.has_edge(i, j)) padded.g.add_edge(i, j);
    // novel clique, joined to every old vertex so no old vertex can
    // steal a novel color
    for (int i = 0; i < novel; ++i) {
        for (int j = 0; j < old_n; ++j) padded.g.add_edge(old_n + i, j);
        for (int j = i + 1; j < novel; ++j) padded.g.add_edge(old_n + i, old_n + j);
    }
    padded.num_colors = base_colors + novel;
    int next_label = sub.color_labels.empty() ? 1 : sub.color_labels.back() + 1;
    padded.color_labels = sub.color_labels;
    for (int i = 0; i < novel; ++i) padded.color_labels.push_back(next_label + i);
    padded.lists.assign(old_n + novel, Bits(padded.num_colors));
    for (int v = 0; v < old_n; ++v) {
        const Bits& l = sub.lists[v];
        for (int c = l.first(); c >= 0; c = l.next(c)) padded.lists[v].set(c);
        int fill = base_colors - l.count();
        for (int i = 0; i < fill; ++i) padded.lists[v].set(base_colors + i);
    }
    for (int i = 0; i < novel; ++i)
        for (int j = 0; j < novel; ++j) padded.lists[old_n + i].set(base_colors + j);
    padded.precolor.assign(old_n + novel, -1);
    padded.tag = Tag::RLC;
    padded.param_k = old_n;    // n' - |T_N| = |V'|
    validate_instance(padded);

    if (padded.n() > 17 * k)
        throw InternalError("kernelize_rlc: padded output exceeds 17k vertices");
    if (padded.num_colors > 20 * k)
        throw InternalError("kernelize_rlc: padded output exceeds 20k colors");
    out.output = padded;
    out.padded = true;
    return out;
}

namespace {

struct LiftCtx {
    const RlcState& st;
    std::vector<int> usage;          // per original dense color
    Coloring col;                    // over original ids

    explicit LiftCtx(const RlcState& s)
        : st(s), usage(s.orig.num_colors, 0), col(s.orig.n()) {}

    void assign(int v, int c) {
        if (col.assign[v] >= 0) --usage[col.assign[v]];
        col.assign[v] = c;
        ++usage[c];
    }
    bool used(int c) const { return usage[c] > 0; }
    bool conflict(int v, int c) const {
        const Bits& nb = st.orig.g.neighbors(v);
        for (int u = nb.first(); u >= 0; u = nb.next(u))
            if (col.assign[u] == c) return true;
        return false;
    }
};

// every rare color ends up used, writing only at its matched carrier
void stage_all_rare_used(LiftCtx& ctx, const std::vector<int>& rep_vertex) {
    const auto& rare = ctx.st.rare;
    std::vector<int> queue;
    for (size_t i = 0; i < rare.size(); ++i)
        if (!ctx.used(rare[i])) queue.push_back(int(i));
    while (!queue.empty()) {
        int i = queue.back();
        queue.pop_back();
        const int t = rare[i];
        if (ctx.used(t)) continue;
        const int v = rep_vertex[i];
        if (ctx.conflict(v, t))
            throw InternalError("lift_rlc: rare color conflicts at its carrier");
        int old = ctx.col.assign[v];
        ctx.assign(v, t);
        if (old >= 0 && !ctx.used(old)) {
            auto it = std::find(rare.begin(), rare.end(), old);
            if (it != rare.end()) queue.push_back(int(it - rare.begin()));
        }
    }
}

} // namespace

Coloring lift_rlc(const RlcCompression& compression, const Coloring& lambda0) {
    const RlcState& st = compression.state;
    if (compression.yes)
        throw std::invalid_argument("lift_rlc: nothing to lift on the YES branch");
    if (!verify_coloring(compression.output, lambda0))
        throw std::invalid_argument("lift_rlc: coloring does not verify on the compressed instance");

    LiftCtx ctx(st);
    for (size_t i = 0; i < st.output_vmap.size(); ++i)
        if (lambda0.assign[i] >= 0)
            ctx.assign(st.output_vmap[i], st.output_cmap[lambda0.assign[i]]);

    if (st.compressed) {
        Bits in_d = Bits::of(st.orig.n(), st.modulator);

        // stage A: a system of distinct carriers for T_R inside D u (C^X)
        std::vector<int> carriers;
        for (int v = st.alive_v.first(); v >= 0; v = st.alive_v.next(v))
            if (in_d.test(v) || st.xc.test(v)) carriers.push_back(v);
        BipartiteGraph hr(int(carriers.size()), int(st.rare.size()));
        for (size_t i = 0; i < carriers.size(); ++i)
            for (size_t j = 0; j < st.rare.size(); ++j)
                if (st.orig.lists[carriers[i]].test(st.rare[j])) hr.add_edge(int(i), int(j));
        Matching mr = maximum_bipartite_matching(hr);
        std::vector<int> rep(st.rare.size(), -1);
        for (size_t j = 0; j < st.rare.size(); ++j) {
            if (mr.right_to_left[j] < 0)
                throw InternalError("lift_rlc: rare colors admit no carrier system inside D u C^X");
            rep[j] = carriers[mr.right_to_left[j]];
        }
        stage_all_rare_used(ctx, rep);

        // stage B: color the matched part of D via its H* partner
        for (auto [c, d] : st.match_cd) {
            if (ctx.col.assign[d] >= 0) continue;
            int cu = ctx.col.assign[c];
            if (cu >= 0 && st.orig.lists[d].test(cu) && !ctx.conflict(d, cu)) {
                ctx.assign(d, cu);
                continue;
            }
            Bits shared = st.orig.lists[c] & st.orig.lists[d] & st.alive_t;
            int pick = -1, pick_rare = -1;
            for (int t = shared.first(); t >= 0; t = shared.next(t)) {
                if (ctx.used(t)) continue;
                bool is_rare = std::find(st.rare.begin(), st.rare.end(), t) != st.rare.end();
                if (!is_rare) { pick = t; break; }
                if (pick_rare < 0) pick_rare = t;
            }
            if (pick < 0) pick = pick_rare;
            if (pick < 0)
                throw InternalError("lift_rlc: no shared unused color for a modulator pair");
            ctx.assign(d, pick);
            ctx.assign(c, pick);
        }
        stage_all_rare_used(ctx, rep);   // overrides may have orphaned a rare color
        for (int d : st.modulator)
            if (ctx.col.assign[d] < 0)
                throw InternalError("lift_rlc: modulator vertex left uncolored");

        // stage C: saturating matching of the untouched clique part into
        // unused colors
        std::vector<int> rest;
        for (int v = st.alive_v.first(); v >= 0; v = st.alive_v.next(v))
            if (ctx.col.assign[v] < 0) rest.push_back(v);
        std::vector<int> free_colors;
        for (int t = st.alive_t.first(); t >= 0; t = st.alive_t.next(t))
            if (!ctx.used(t)) free_colors.push_back(t);
        BipartiteGraph hp(int(rest.size()), int(free_colors.size()));
        for (size_t i = 0; i < rest.size(); ++i)
            for (size_t j = 0; j < free_colors.size(); ++j)
                if (st.orig.lists[rest[i]].test(free_colors[j])) hp.add_edge(int(i), int(j));
        Matching mp = maximum_bipartite_matching(hp);
        for (size_t i = 0; i < rest.size(); ++i) {
            if (mp.left_to_right[i] < 0)
                throw InternalError("lift_rlc: final extension matching does not saturate the clique");
            ctx.assign(rest[i], free_colors[mp.left_to_right[i]]);
        }
    }

    // replay color-hall removals backwards via their witness matchings
    for (auto it = st.hall_steps.rbegin(); it != st.hall_steps.rend(); ++it)
        for (auto [v, t] : it->witness) {
            if (ctx.conflict(v, t))
                throw InternalError("lift_rlc: color-hall replay conflicts");
            ctx.assign(v, t);
        }

    if (!verify_coloring(st.orig, ctx.col))
        throw InternalError("lift_rlc: lifted coloring fails verification");
    return ctx.col;
}

} // namespace lcmod
