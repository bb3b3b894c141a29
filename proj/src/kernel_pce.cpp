#include "lcmod/kernel_pce.hpp"

#include <algorithm>

#include "lcmod/oracle.hpp"

namespace lcmod {

PceKernelizer::PceKernelizer(const Instance& inst) : orig_(inst) {
    if (inst.tag != Tag::PCECM && inst.tag != Tag::SAVE)
        throw std::invalid_argument("kernelize_pce: expected a PCECM instance");
    if (!inst.modulator)
        throw std::invalid_argument("kernelize_pce: instance has no modulator");
    alive_v_ = Bits(inst.n());
    for (int v = 0; v < inst.n(); ++v) alive_v_.set(v);
    alive_q_ = Bits(inst.num_colors);
    for (int c = 0; c < inst.num_colors; ++c) alive_q_.set(c);
    in_d_ = Bits::of(inst.n(), *inst.modulator);
    trace_.kind = "pce";
}

int PceKernelizer::alive_degree(int v) const {
    return (orig_.g.neighbors(v) & alive_v_).count();
}

std::vector<int> PceKernelizer::current_dprime() const {
    std::vector<int> dp;
    for (int v = in_d_.first(); v >= 0; v = in_d_.next(v))
        if (alive_v_.test(v) && orig_.precolor[v] < 0) dp.push_back(v);
    return dp;
}

std::vector<int> PceKernelizer::current_cn() const {
    // clique vertices with an alive non-neighbor in D'
    std::vector<int> dprime = current_dprime();
    std::vector<int> cn;
    for (int c = alive_v_.first(); c >= 0; c = alive_v_.next(c)) {
        if (in_d_.test(c)) continue;
        for (int d : dprime)
            if (!orig_.g.has_edge(c, d)) { cn.push_back(c); break; }
    }
    return cn;
}

bool PceKernelizer::rule_low_degree() {
    const int q = palette_count();
    for (int v : current_dprime()) {
        if (alive_degree(v) < q) {
            alive_v_.reset(v);
            trace_.steps.push_back({1, {v}, {}, {}});
            return true;
        }
    }
    return false;
}

bool PceKernelizer::rule_crown() {
    std::vector<int> cn = current_cn();
    if (cn.empty()) return false;
    std::vector<int> dvs;
    for (int d = in_d_.first(); d >= 0; d = in_d_.next(d))
        if (alive_v_.test(d)) dvs.push_back(d);
    if (dvs.empty()) return false;

    // J: edge between c in C_N and d in D when {c,d} is NOT an edge of G
    BipartiteGraph j(int(cn.size()), int(dvs.size()));
    for (size_t i = 0; i < cn.size(); ++i)
        for (size_t jd = 0; jd < dvs.size(); ++jd)
            if (!orig_.g.has_edge(cn[i], dvs[jd])) j.add_edge(int(i), int(jd));

    auto a_local = find_deficient_set(j, Side::Left);
    if (!a_local) return false;

    Bits a_mask(int(cn.size()));
    for (int i : *a_local) a_mask.set(i);
    Bits nj(int(dvs.size()));
    for (int i : *a_local) nj |= j.right_neighbors(i);

    // matching saturating N_J(A) with partners inside A
    BipartiteGraph sub(int(dvs.size()), int(cn.size()));
    for (int d = nj.first(); d >= 0; d = nj.next(d))
        for (int i = a_mask.first(); i >= 0; i = a_mask.next(i))
            if (j.has_edge(i, d)) sub.add_edge(d, i);
    Matching m = maximum_bipartite_matching(sub);

    TraceStep step;
    step.rule = 2;
    for (int d = nj.first(); d >= 0; d = nj.next(d)) {
        if (m.left_to_right[d] < 0)
            throw InternalError("rule_crown: deficient-set witness fails to saturate N_J(A)");
        step.witness.push_back({dvs[d], cn[m.left_to_right[d]]});
        if (orig_.precolor[dvs[d]] < 0) step.removed_vertices.push_back(dvs[d]);
    }
    if (step.removed_vertices.empty())
        throw InternalError("rule_crown: N_J(A) contains no unprecolored modulator vertex");
    for (int v : step.removed_vertices) alive_v_.reset(v);
    trace_.steps.push_back(std::move(step));
    return true;
}

bool PceKernelizer::rule_precolored_clique() {
    std::vector<int> cn = current_cn();
    Bits cn_mask = Bits::of(orig_.n(), cn);
    for (int v = alive_v_.first(); v >= 0; v = alive_v_.next(v)) {
        if (in_d_.test(v) || cn_mask.test(v)) continue;    // v must lie in C'
        const int color = orig_.precolor[v];
        if (color < 0) continue;
        TraceStep step;
        step.rule = 3;
        step.removed_colors.push_back(color);
        for (int u = alive_v_.first(); u >= 0; u = alive_v_.next(u))
            if (orig_.precolor[u] == color) step.removed_vertices.push_back(u);
        for (int u : step.removed_vertices) alive_v_.reset(u);
        alive_q_.reset(color);
        trace_.steps.push_back(std::move(step));
        return true;
    }
    return false;
}

bool PceKernelizer::rule_matching_trim() {
    trimmed_ = true;
    std::vector<int> cn = current_cn();
    Bits cn_mask = Bits::of(orig_.n(), cn);
    std::vector<int> cprime;
    for (int v = alive_v_.first(); v >= 0; v = alive_v_.next(v))
        if (!in_d_.test(v) && !cn_mask.test(v)) cprime.push_back(v);

    // palette colors actually pre-used by alive D
    std::vector<int> p_colors;
    Bits preused(orig_.num_colors);
    for (int d = in_d_.first(); d >= 0; d = in_d_.next(d))
        if (alive_v_.test(d) && orig_.precolor[d] >= 0 && !preused.test(orig_.precolor[d])) {
            preused.set(orig_.precolor[d]);
            p_colors.push_back(orig_.precolor[d]);
        }
    std::sort(p_colors.begin(), p_colors.end());

    // c' -- p when no alive vertex pre-colored p is adjacent to c'
    BipartiteGraph h(int(cprime.size()), int(p_colors.size()));
    for (size_t i = 0; i < cprime.size(); ++i)
        for (size_t pi = 0; pi < p_colors.size(); ++pi) {
            bool blocked = false;
            for (int u = alive_v_.first(); u >= 0 && !blocked; u = alive_v_.next(u))
                blocked = orig_.precolor[u] == p_colors[pi] && orig_.g.has_edge(cprime[i], u);
            if (!blocked) h.add_edge(int(i), int(pi));
        }
    Matching m = maximum_bipartite_matching(h);

    TraceStep step;
    step.rule = 4;
    for (size_t i = 0; i < cprime.size(); ++i)
        if (m.left_to_right[i] < 0) step.removed_vertices.push_back(cprime[i]);

    Bits free = alive_q_;
    for (int v = alive_v_.first(); v >= 0; v = alive_v_.next(v))
        if (orig_.precolor[v] >= 0) free.reset(orig_.precolor[v]);
    if (free.count() < int(step.removed_vertices.size())) {
        definitive_no_ = true;       // pigeonhole: not enough spare colors
        return false;
    }
    int need = int(step.removed_vertices.size());
    for (int c = free.first(); c >= 0 && need > 0; c = free.next(c), --need)
        step.removed_colors.push_back(c);

    for (int v : step.removed_vertices) alive_v_.reset(v);
    for (int c : step.removed_colors) alive_q_.reset(c);
    trace_.steps.push_back(std::move(step));
    return true;
}

void PceKernelizer::run_rules_to_fixpoint() {
    while (true) {
        if (rule_low_degree()) continue;
        if (rule_crown()) continue;
        if (rule_precolored_clique()) continue;
        break;
    }
}

Instance PceKernelizer::reduced_instance() const {
    Instance out;
    std::vector<int> vmap = alive_v_.to_vector();
    std::vector<int> cmap = alive_q_.to_vector();
    std::vector<int> vinv(orig_.n(), -1), cinv(orig_.num_colors, -1);
    for (size_t i = 0; i < vmap.size(); ++i) vinv[vmap[i]] = int(i);
    for (size_t i = 0; i < cmap.size(); ++i) cinv[cmap[i]] = int(i);

    const int n = int(vmap.size());
    out.g = Graph(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (orig_.g.has_edge(vmap[i], vmap[j])) out.g.add_edge(i, j);
    out.num_colors = int(cmap.size());
    for (int c : cmap) out.color_labels.push_back(orig_.color_labels[c]);
    Bits full(out.num_colors);
    for (int c = 0; c < out.num_colors; ++c) full.set(c);
    out.lists.assign(n, full);
    out.precolor.assign(n, -1);
    for (int i = 0; i < n; ++i)
        if (orig_.precolor[vmap[i]] >= 0) out.precolor[i] = cinv[orig_.precolor[vmap[i]]];
    std::vector<int> mod;
    for (int i = 0; i < n; ++i)
        if (in_d_.test(vmap[i])) mod.push_back(i);
    out.modulator = mod;
    out.tag = Tag::PCECM;
    trace_.vertex_map = vmap;
    return out;
}

PceResult kernelize_pce(const Instance& inst) {
    PceKernelizer kz(inst);
    kz.run_rules_to_fixpoint();
    PceResult res;
    if (!kz.rule_matching_trim()) {
        res.no = true;
        // canonical constant-size NO instance: a 2-clique with one color
        Instance no_inst;
        no_inst.g = Graph(2);
        no_inst.g.add_edge(0, 1);
        no_inst.num_colors = 1;
        no_inst.color_labels = {1};
        Bits full(1);
        full.set(0);
        no_inst.lists.assign(2, full);
        no_inst.precolor.assign(2, -1);
        no_inst.modulator = std::vector<int>{};
        no_inst.tag = Tag::PCECM;
        res.reduced = no_inst;
        res.trace = kz.trace();
        return res;
    }
    res.reduced = kz.reduced_instance();
    res.trace = kz.trace();
    const int k = int(inst.modulator->size());
    if (res.reduced.n() > 3 * k)
        throw InternalError("kernelize_pce: reduced instance exceeds the 3k bound");
    return res;
}

namespace {

// colors of assigned neighbors of v in the original graph
Bits neighbor_colors(const Instance& orig, const Coloring& col, int v) {
    Bits used(orig.num_colors);
    const Bits& nb = orig.g.neighbors(v);
    for (int u = nb.first(); u >= 0; u = nb.next(u))
        if (col.assign[u] >= 0) used.set(col.assign[u]);
    return used;
}

// backtracking repair over a removed crown set, colors drawn from q_then
bool assign_crown_set(const Instance& orig, Coloring& col, const std::vector<int>& verts,
                      const Bits& q_then, size_t pos) {
    if (pos == verts.size()) return true;
    const int v = verts[pos];
    Bits blocked = neighbor_colors(orig, col, v);
    for (int c = q_then.first(); c >= 0; c = q_then.next(c)) {
        if (blocked.test(c)) continue;
        col.assign[v] = c;
        if (assign_crown_set(orig, col, verts, q_then, pos + 1)) return true;
        col.assign[v] = -1;
    }
    return false;
}

} // namespace

Coloring lift_pce(const Instance& original, const PceResult& result, const Coloring& lambda) {
    if (result.no)
        throw std::invalid_argument("lift_pce: definitive NO has no coloring to lift");
    if (!verify_coloring(result.reduced, lambda))
        throw std::invalid_argument("lift_pce: coloring does not verify on the reduced instance");

    // reduced dense colors -> original dense colors, via the shared labels
    std::vector<int> cmap(result.reduced.num_colors, -1);
    {
        std::vector<int> by_label(original.color_labels.empty() ? 0 : 0);
        int oi = 0;
        for (int rc = 0; rc < result.reduced.num_colors; ++rc) {
            while (oi < original.num_colors &&
                   original.color_labels[oi] != result.reduced.color_labels[rc])
                ++oi;
            if (oi >= original.num_colors)
                throw std::invalid_argument("lift_pce: reduced colors are not a subset of the original");
            cmap[rc] = oi++;
        }
    }

    Coloring col(original.n());
    Bits q_then(original.num_colors);
    for (int rc = 0; rc < result.reduced.num_colors; ++rc) q_then.set(cmap[rc]);
    for (size_t i = 0; i < result.trace.vertex_map.size(); ++i)
        if (lambda.assign[i] >= 0)
            col.assign[result.trace.vertex_map[i]] = cmap[lambda.assign[i]];

    for (auto it = result.trace.steps.rbegin(); it != result.trace.steps.rend(); ++it) {
        const TraceStep& s = *it;
        for (int c : s.removed_colors) q_then.set(c);
        switch (s.rule) {
            case 1: {
                const int v = s.removed_vertices.front();
                Bits blocked = neighbor_colors(original, col, v);
                int chosen = -1;
                for (int c = q_then.first(); c >= 0; c = q_then.next(c))
                    if (!blocked.test(c)) { chosen = c; break; }
                if (chosen < 0)
                    throw InternalError("lift_pce: low-degree vertex has no free color");
                col.assign[v] = chosen;
                break;
            }
            case 2: {
                // matching-prescribed colors first, local repair if blocked
                bool ok = true;
                for (auto [d, a] : s.witness) {
                    if (col.assign[d] >= 0 || std::find(s.removed_vertices.begin(),
                                                        s.removed_vertices.end(), d) ==
                                                  s.removed_vertices.end())
                        continue;
                    const int c = col.assign[a];
                    if (c < 0 || neighbor_colors(original, col, d).test(c)) { ok = false; break; }
                    col.assign[d] = c;
                }
                if (!ok) {
                    for (int v : s.removed_vertices) col.assign[v] = -1;
                    if (!assign_crown_set(original, col, s.removed_vertices, q_then, 0))
                        throw InternalError("lift_pce: crown set admits no proper extension");
                }
                break;
            }
            case 3: {
                const int c = s.removed_colors.front();
                for (int v : s.removed_vertices) col.assign[v] = c;
                break;
            }
            case 4: {
                if (s.removed_vertices.size() != s.removed_colors.size())
                    throw InternalError("lift_pce: malformed trim step");
                for (size_t i = 0; i < s.removed_vertices.size(); ++i)
                    col.assign[s.removed_vertices[i]] = s.removed_colors[i];
                break;
            }
            default:
                throw InternalError("lift_pce: unknown rule id in trace");
        }
    }

    if (!verify_coloring(original, col))
        throw InternalError("lift_pce: lifted coloring fails verification");
    return col;
}

} // namespace lcmod
