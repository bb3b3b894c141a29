#include "lcmod/instance.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace lcmod {

const char* tag_name(Tag t) {
    switch (t) {
        case Tag::LCCM: return "LCCM";
        case Tag::PCECM: return "PCECM";
        case Tag::RLC: return "RLC";
        case Tag::BUDGET: return "BUDGET";
        case Tag::SAVE: return "SAVE";
    }
    return "?";
}

std::optional<Tag> tag_from_name(const std::string& s) {
    for (Tag t : {Tag::LCCM, Tag::PCECM, Tag::RLC, Tag::BUDGET, Tag::SAVE})
        if (s == tag_name(t)) return t;
    return std::nullopt;
}

void validate_instance(const Instance& inst) {
    const int n = inst.n();
    if (int(inst.lists.size()) != n || int(inst.precolor.size()) != n)
        throw ValidationError("instance arrays do not match vertex count");
    for (int v = 0; v < n; ++v) {
        int c = inst.precolor[v];
        if (c >= 0 && !inst.lists[v].test(c))
            throw ValidationError("precolor of vertex " + std::to_string(v) + " not in its list");
    }
    for (int u = 0; u < n; ++u) {
        int cu = inst.precolor[u];
        if (cu < 0) continue;
        const Bits& nb = inst.g.neighbors(u);
        for (int v = nb.first(); v >= 0; v = nb.next(v))
            if (inst.precolor[v] == cu)
                throw ValidationError("pre-coloring is not a proper partial coloring");
    }
    if (inst.modulator && !verify_modulator(inst.g, *inst.modulator))
        throw ValidationError("declared modulator does not leave a clique");
    if (inst.tag == Tag::RLC) {
        if (inst.param_k < 0)
            throw ValidationError("RLC instance requires param k");
        for (int v = 0; v < n; ++v)
            if (inst.lists[v].count() != n - inst.param_k)
                throw ValidationError("RLC lists must all have size n-k");
    }
    if (inst.tag == Tag::PCECM || inst.tag == Tag::SAVE) {
        // pre-coloring extension: every list is the shared palette
        for (int v = 0; v < n; ++v)
            if (inst.lists[v].count() != inst.num_colors)
                throw ValidationError("PCE-style lists must equal the palette");
    }
    if (inst.budget && inst.budget->q < 0)
        throw ValidationError("budget q must be nonnegative");
    if (inst.tag == Tag::BUDGET && !inst.budget)
        throw ValidationError("BUDGET instance requires a budget section");
}

namespace {

struct RawInstance {
    int n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    std::map<int, std::vector<long long>> lists;     // vertex -> labels
    std::vector<std::pair<int, long long>> pre;
    std::optional<std::vector<int>> mod;
    std::optional<std::pair<long long, std::vector<long long>>> budget;
    Tag tag = Tag::LCCM;
    bool tag_seen = false;
    int param_k = -1;
};

[[noreturn]] void fail(int lineno, const std::string& what) {
    throw ParseError("line " + std::to_string(lineno) + ": " + what);
}

} // namespace

Instance parse_instance(const std::string& text) {
    RawInstance raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;

        auto want_vertex = [&](long long v) {
            if (raw.n < 0) fail(lineno, "section before 'p' header");
            if (v < 0 || v >= raw.n) fail(lineno, "vertex id out of range");
            return int(v);
        };

        if (key == "p") {
            std::string kind;
            if (!(ls >> kind >> raw.n >> raw.m) || kind != "listcolor" || raw.n < 0 || raw.m < 0)
                fail(lineno, "malformed header, expected 'p listcolor <n> <m>'");
        } else if (key == "e") {
            long long u, v;
            if (!(ls >> u >> v)) fail(lineno, "malformed edge line");
            int a = want_vertex(u), b = want_vertex(v);
            if (a == b) fail(lineno, "self-loop");
            raw.edges.push_back({a, b});
        } else if (key == "l") {
            long long v;
            std::string colon;
            if (!(ls >> v >> colon) || colon != ":") fail(lineno, "malformed list line");
            int vv = want_vertex(v);
            if (raw.lists.count(vv)) fail(lineno, "duplicate list for vertex");
            std::vector<long long> cs;
            long long c;
            while (ls >> c) {
                if (c < 0) fail(lineno, "negative color label");
                cs.push_back(c);
            }
            if (!ls.eof()) fail(lineno, "malformed color label");
            raw.lists[vv] = cs;
        } else if (key == "pre") {
            long long v, c;
            if (!(ls >> v >> c) || c < 0) fail(lineno, "malformed pre line");
            raw.pre.push_back({want_vertex(v), c});
        } else if (key == "mod") {
            std::vector<int> mod;
            long long v;
            while (ls >> v) mod.push_back(want_vertex(v));
            if (!ls.eof()) fail(lineno, "malformed modulator line");
            raw.mod = mod;
        } else if (key == "budget") {
            long long q;
            std::string colon;
            if (!(ls >> q >> colon) || colon != ":") fail(lineno, "malformed budget line");
            std::vector<long long> cs;
            long long c;
            while (ls >> c) {
                if (c < 0) fail(lineno, "negative color label");
                cs.push_back(c);
            }
            if (!ls.eof()) fail(lineno, "malformed budget color");
            raw.budget = {{q, cs}};
        } else if (key == "tag") {
            std::string name;
            if (!(ls >> name)) fail(lineno, "missing tag name");
            auto t = tag_from_name(name);
            if (!t) fail(lineno, "unknown tag '" + name + "'");
            raw.tag = *t;
            raw.tag_seen = true;
        } else if (key == "param") {
            std::string which;
            long long k;
            if (!(ls >> which >> k) || which != "k" || k < 0) fail(lineno, "malformed param line");
            raw.param_k = int(k);
        } else {
            fail(lineno, "unknown section '" + key + "'");
        }
    }
    if (raw.n < 0) throw ParseError("missing 'p listcolor' header");
    if (int(raw.edges.size()) != raw.m)
        throw ParseError("header edge count " + std::to_string(raw.m) + " does not match " +
                         std::to_string(raw.edges.size()) + " edge lines");

    // dense color table from every label the file mentions
    std::set<long long> labels;
    for (auto& [v, cs] : raw.lists) labels.insert(cs.begin(), cs.end());
    for (auto& [v, c] : raw.pre) labels.insert(c);
    if (raw.budget) labels.insert(raw.budget->second.begin(), raw.budget->second.end());
    std::map<long long, int> dense;
    Instance inst;
    for (long long l : labels) {
        dense[l] = int(inst.color_labels.size());
        inst.color_labels.push_back(int(l));
    }
    inst.num_colors = int(inst.color_labels.size());

    inst.g = Graph(raw.n);
    for (auto [u, v] : raw.edges) inst.g.add_edge(u, v);
    inst.lists.assign(raw.n, Bits(inst.num_colors));
    for (auto& [v, cs] : raw.lists)
        for (long long c : cs) inst.lists[v].set(dense[c]);
    inst.precolor.assign(raw.n, -1);
    for (auto& [v, c] : raw.pre) {
        if (inst.precolor[v] >= 0) throw ParseError("duplicate pre entry for vertex " + std::to_string(v));
        inst.precolor[v] = dense[c];
    }
    if (raw.mod) {
        auto mod = *raw.mod;
        std::sort(mod.begin(), mod.end());
        mod.erase(std::unique(mod.begin(), mod.end()), mod.end());
        inst.modulator = mod;
    }
    if (raw.budget) {
        BudgetConstraint b;
        b.q = int(raw.budget->first);
        b.tprime = Bits(inst.num_colors);
        for (long long c : raw.budget->second) b.tprime.set(dense[c]);
        inst.budget = b;
    }
    inst.tag = raw.tag;
    inst.param_k = raw.param_k;
    validate_instance(inst);
    return inst;
}

std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    out << "p listcolor " << inst.n() << ' ' << inst.g.edge_count() << '\n';
    out << "tag " << tag_name(inst.tag) << '\n';
    if (inst.param_k >= 0) out << "param k " << inst.param_k << '\n';
    for (int u = 0; u < inst.n(); ++u) {
        const Bits& nb = inst.g.neighbors(u);
        for (int v = nb.next(u); v >= 0; v = nb.next(v))
            out << "e " << u << ' ' << v << '\n';
    }
    for (int v = 0; v < inst.n(); ++v) {
        out << "l " << v << " :";
        const Bits& l = inst.lists[v];
        for (int c = l.first(); c >= 0; c = l.next(c)) out << ' ' << inst.color_labels[c];
        out << '\n';
    }
    for (int v = 0; v < inst.n(); ++v)
        if (inst.precolor[v] >= 0)
            out << "pre " << v << ' ' << inst.color_labels[inst.precolor[v]] << '\n';
    if (inst.modulator) {
        out << "mod";
        for (int v : *inst.modulator) out << ' ' << v;
        out << '\n';
    }
    if (inst.budget) {
        out << "budget " << inst.budget->q << " :";
        for (int c = inst.budget->tprime.first(); c >= 0; c = inst.budget->tprime.next(c))
            out << ' ' << inst.color_labels[c];
        out << '\n';
    }
    return out.str();
}

Coloring parse_coloring(const std::string& text, const Instance& inst) {
    std::map<int, int> dense;
    for (int c = 0; c < inst.num_colors; ++c) dense[inst.color_labels[c]] = c;
    Coloring col(inst.n());
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long v, c;
        if (!(ls >> v)) continue;
        if (!(ls >> c) || v < 0 || v >= inst.n())
            fail(lineno, "malformed coloring line");
        auto it = dense.find(int(c));
        if (it == dense.end()) fail(lineno, "unknown color label");
        col.assign[v] = it->second;
    }
    return col;
}

std::string write_coloring(const Coloring& c, const Instance& inst) {
    std::ostringstream out;
    for (int v = 0; v < int(c.assign.size()); ++v)
        if (c.assign[v] >= 0)
            out << v << ' ' << inst.color_labels[c.assign[v]] << '\n';
    return out.str();
}

Instance fold_precoloring(const Instance& inst) {
    Instance r = inst;
    for (int v = 0; v < r.n(); ++v) {
        if (r.precolor[v] >= 0) {
            Bits single(r.num_colors);
            single.set(r.precolor[v]);
            r.lists[v] = single;
        }
    }
    return r;
}

namespace {

// proper color for v given already-planted neighbors, lowest id with a
// random rotation so plantings vary with the seed
int plant_color(const Instance& inst, const std::vector<int>& planted, int v, Rng& rng) {
    Bits blocked(inst.num_colors);
    const Bits& nb = inst.g.neighbors(v);
    for (int u = nb.first(); u >= 0; u = nb.next(u))
        if (planted[u] >= 0) blocked.set(planted[u]);
    int free_count = inst.num_colors - blocked.count();
    if (free_count <= 0) return -1;
    int skip = int(rng.below(uint64_t(free_count)));
    for (int c = 0; c < inst.num_colors; ++c) {
        if (blocked.test(c)) continue;
        if (skip-- == 0) return c;
    }
    return -1;
}

} // namespace

Instance gen_random(const GenParams& p, uint64_t seed) {
    if (p.n < 0 || p.density < 0.0 || p.density > 1.0)
        throw std::invalid_argument("gen_random: bad parameters");
    Rng rng = Rng(seed).split(0xC0105);

    Instance inst;
    const int n = p.n;
    const int k = std::min(p.k, n);
    const bool planted_structure = (p.tag == Tag::LCCM || p.tag == Tag::PCECM);

    int colors = p.num_colors;
    if (colors <= 0) colors = std::max(n + 2, 3);
    inst.num_colors = colors;
    for (int c = 0; c < colors; ++c) inst.color_labels.push_back(c + 1);

    inst.g = Graph(n);
    if (planted_structure) {
        // D = {0..k-1}; rest is a clique
        for (int u = k; u < n; ++u)
            for (int v = u + 1; v < n; ++v) inst.g.add_edge(u, v);
        for (int d = 0; d < k; ++d)
            for (int v = d + 1; v < n; ++v)
                if (rng.chance(p.density)) inst.g.add_edge(d, v);
        std::vector<int> mod;
        for (int d = 0; d < k; ++d) mod.push_back(d);
        inst.modulator = mod;
    } else {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.chance(p.density)) inst.g.add_edge(u, v);
    }

    inst.lists.assign(n, Bits(colors));
    inst.precolor.assign(n, -1);
    inst.tag = p.tag;

    std::vector<int> planted(n, -1);
    if (p.model == ListModel::PlantedYes) {
        // clique first so its colors are mutually distinct, then D
        for (int v = k; v < n; ++v) planted[v] = plant_color(inst, planted, v, rng);
        for (int v = 0; v < k; ++v) planted[v] = plant_color(inst, planted, v, rng);
        for (int v = 0; v < n; ++v)
            if (planted[v] < 0)
                throw std::runtime_error("gen_random: color universe too small to plant a coloring");
    }

    int target = 0;
    switch (p.model) {
        case ListModel::UniformSize: target = std::min(p.list_size, colors); break;
        case ListModel::RegularNMinusK: target = n - k; break;
        case ListModel::PlantedYes: target = std::min(std::max(p.list_size, 1), colors); break;
    }
    if (p.model == ListModel::RegularNMinusK && (target < 0 || target > colors))
        throw std::invalid_argument("gen_random: regular model needs 0 <= n-k <= colors");

    if (p.tag == Tag::PCECM || p.tag == Tag::SAVE) {
        for (int v = 0; v < n; ++v)
            for (int c = 0; c < colors; ++c) inst.lists[v].set(c);
    } else {
        for (int v = 0; v < n; ++v) {
            Bits& l = inst.lists[v];
            if (planted[v] >= 0) l.set(planted[v]);
            while (l.count() < target) l.set(int(rng.below(uint64_t(colors))));
        }
    }
    if (p.tag == Tag::RLC) inst.param_k = k;

    if (p.precolor_frac > 0.0 && (p.tag == Tag::PCECM || p.tag == Tag::SAVE)) {
        for (int v = 0; v < n; ++v) {
            if (!rng.chance(p.precolor_frac)) continue;
            Bits blocked(colors);
            const Bits& nb = inst.g.neighbors(v);
            for (int u = nb.first(); u >= 0; u = nb.next(u))
                if (inst.precolor[u] >= 0) blocked.set(inst.precolor[u]);
            Bits avail = inst.lists[v];
            avail.subtract(blocked);
            int cnt = avail.count();
            if (cnt == 0) continue;    // skip rather than break properness
            int skip = int(rng.below(uint64_t(cnt)));
            for (int c = avail.first(); c >= 0; c = avail.next(c))
                if (skip-- == 0) { inst.precolor[v] = c; break; }
        }
    }

    validate_instance(inst);
    return inst;
}

Instance gen_from_hitting_set(int universe_size, const std::vector<std::vector<int>>& family, int k) {
    if (k < 0 || k > universe_size)
        throw std::invalid_argument("gen_from_hitting_set: need 0 <= k <= universe size");
    for (const auto& f : family) {
        if (f.empty()) throw std::invalid_argument("gen_from_hitting_set: empty set in family");
        for (int e : f)
            if (e < 1 || e > universe_size)
                throw std::invalid_argument("gen_from_hitting_set: element out of universe");
    }
    const int m = int(family.size());
    const int clique = universe_size - k;
    Instance inst;
    inst.num_colors = universe_size;
    for (int c = 0; c < universe_size; ++c) inst.color_labels.push_back(c + 1);
    inst.g = Graph(m + clique);
    inst.lists.assign(m + clique, Bits(universe_size));
    inst.precolor.assign(m + clique, -1);
    for (int i = 0; i < m; ++i)
        for (int e : family[i]) inst.lists[i].set(e - 1);
    for (int j = 0; j < clique; ++j) {
        for (int c = 0; c < universe_size; ++c) inst.lists[m + j].set(c);
        for (int i = 0; i < m; ++i) inst.g.add_edge(i, m + j);
        for (int j2 = j + 1; j2 < clique; ++j2) inst.g.add_edge(m + j, m + j2);
    }
    std::vector<int> mod;
    for (int i = 0; i < m; ++i) mod.push_back(i);
    inst.modulator = mod;
    inst.tag = Tag::LCCM;
    validate_instance(inst);
    return inst;
}

Instance gen_from_independent_set(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("gen_from_independent_set: need k >= 1");
    const int n = g.n();
    Instance inst;
    if (k > n) {
        // no independent set of size k can exist; canonical NO instance
        inst.g = Graph(1);
        inst.num_colors = 0;
        inst.lists.assign(1, Bits(0));
        inst.precolor.assign(1, -1);
        inst.budget = BudgetConstraint{Bits(0), 0};
        inst.tag = Tag::BUDGET;
        return inst;
    }
    inst.g = g;
    inst.num_colors = n + 1;
    for (int c = 0; c < n + 1; ++c) inst.color_labels.push_back(c + 1);
    inst.lists.assign(n, Bits(n + 1));
    inst.precolor.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        inst.lists[v].set(v);       // private color v+1
        inst.lists[v].set(n);       // shared color n+1
    }
    BudgetConstraint b;
    b.tprime = Bits(n + 1);
    for (int c = 0; c <= n; ++c) b.tprime.set(c);
    b.q = n - k + 1;                // k' = k-1: saving k' colors
    inst.budget = b;
    inst.tag = Tag::BUDGET;
    validate_instance(inst);
    return inst;
}

} // namespace lcmod
