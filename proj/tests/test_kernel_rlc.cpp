#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "lcmod/kernel_rlc.hpp"
#include "lcmod/oracle.hpp"

using namespace lcmod;

namespace {

Instance make_rlc(const Graph& g, int k, int universe, uint64_t seed) {
    Rng rng(seed);
    Instance i;
    i.g = g;
    const int n = g.n();
    i.num_colors = universe;
    for (int c = 0; c < universe; ++c) i.color_labels.push_back(c + 1);
    i.lists.assign(n, Bits(universe));
    for (int v = 0; v < n; ++v)
        while (i.lists[v].count() < n - k) i.lists[v].set(int(rng.below(uint64_t(universe))));
    i.precolor.assign(n, -1);
    i.tag = Tag::RLC;
    i.param_k = k;
    validate_instance(i);
    return i;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

// shapes whose complements have small maximal matchings, so the
// modulator rule does not shortcut to YES at k = 2
Graph complete_minus_star(int n, int leaves, uint64_t seed) {
    Rng rng(seed);
    Graph g = complete_graph(n);
    Graph out(n);
    int center = int(rng.below(uint64_t(n)));
    Bits leaf(n);
    while (leaf.count() < std::min(leaves, n - 1)) {
        int v = int(rng.below(uint64_t(n)));
        if (v != center) leaf.set(v);
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool drop = (u == center && leaf.test(v)) || (v == center && leaf.test(u));
            if (!drop) out.add_edge(u, v);
        }
    return out;
}

Graph complete_minus_triangle(int n, uint64_t seed) {
    Rng rng(seed);
    int a = int(rng.below(uint64_t(n)));
    int b = (a + 1 + int(rng.below(uint64_t(n - 1)))) % n;
    int c = a;
    while (c == a || c == b) c = int(rng.below(uint64_t(n)));
    Graph out(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool in_tri = (u == a || u == b || u == c) && (v == a || v == b || v == c);
            if (!in_tri) out.add_edge(u, v);
        }
    return out;
}

Instance fuzz_rlc(uint64_t seed, int max_n) {
    Rng rng(seed * 131 + 17);
    const int shape = int(rng.below(4));
    const int k = (shape == 0) ? 1 : 2;
    const int min_n = std::max(4, k + 2);
    const int n = min_n + int(rng.below(uint64_t(max_n - min_n + 1)));
    Graph g;
    switch (shape) {
        case 0: g = complete_graph(n); break;
        case 1: g = complete_minus_star(n, 1 + int(rng.below(4)), seed); break;
        case 2: g = complete_minus_triangle(n, seed); break;
        default: {
            g = Graph(n);
            double density = 0.3 + 0.6 * rng.unit();
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng.chance(density)) g.add_edge(u, v);
            break;
        }
    }
    const int universe = std::max(n - k, n + int(rng.below(3)) - 1);
    return make_rlc(g, k, universe, seed * 7 + 1);
}

} // namespace

TEST_CASE("rule_modulator_or_yes") {
    Instance complete = make_rlc(complete_graph(6), 1, 6, 3);
    auto d = rule_modulator_or_yes(complete);
    REQUIRE(d.has_value());
    CHECK(d->empty());

    Instance empty_g = make_rlc(Graph(4), 2, 4, 5);
    CHECK(!rule_modulator_or_yes(empty_g).has_value());   // perfect complement matching: YES

    // fuzzed YES-by-rule instances really are YES
    for (uint64_t seed = 0; seed < 80; ++seed) {
        Rng rng(seed);
        const int n = 4 + int(rng.below(8));
        const int k = 1 + int(rng.below(3));
        Graph g(n);
        double density = 0.2 + 0.5 * rng.unit();
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.chance(density)) g.add_edge(u, v);
        if (n - k < 1 || n - k > n) continue;
        Instance inst = make_rlc(g, k, n, seed + 100);
        if (!rule_modulator_or_yes(inst).has_value())
            CHECK(brute_backtrack(inst).has_value());
    }
}

TEST_CASE("rule_color_hall") {
    // |T| <= |V| and no deficient set: unchanged
    Instance tight = make_rlc(complete_graph(5), 1, 4, 9);
    Bits av(tight.n()), at(tight.num_colors);
    for (int v = 0; v < tight.n(); ++v) av.set(v);
    for (int c = 0; c < tight.num_colors; ++c) at.set(c);
    auto steps = rule_color_hall(tight, av, at);
    CHECK(av.count() == 5);

    // a color on no list dies without removing vertices
    Instance ghost = make_rlc(complete_graph(4), 1, 3, 11);
    ghost.num_colors = 4;
    ghost.color_labels.push_back(99);
    for (auto& l : ghost.lists) {
        Bits wider(4);
        for (int c = l.first(); c >= 0; c = l.next(c)) wider.set(c);
        l = wider;
    }
    Bits av2(ghost.n()), at2(4);
    for (int v = 0; v < ghost.n(); ++v) av2.set(v);
    for (int c = 0; c < 4; ++c) at2.set(c);
    rule_color_hall(ghost, av2, at2);
    CHECK(av2.count() == 4);
    CHECK(!at2.test(3));

    // equi-solvability on fuzzed instances
    for (uint64_t seed = 0; seed < 120; ++seed) {
        Instance inst = fuzz_rlc(seed, 11);
        Bits a(inst.n()), t(inst.num_colors);
        for (int v = 0; v < inst.n(); ++v) a.set(v);
        for (int c = 0; c < inst.num_colors; ++c) t.set(c);
        rule_color_hall(inst, a, t);
        // build the reduced sub-instance and compare oracles
        Instance sub;
        {
            std::vector<int> vmap = a.to_vector(), cmap = t.to_vector();
            std::vector<int> cinv(inst.num_colors, -1);
            for (size_t i = 0; i < cmap.size(); ++i) cinv[cmap[i]] = int(i);
            sub.g = Graph(int(vmap.size()));
            for (size_t i = 0; i < vmap.size(); ++i)
                for (size_t j = i + 1; j < vmap.size(); ++j)
                    if (inst.g.has_edge(vmap[i], vmap[j])) sub.g.add_edge(int(i), int(j));
            sub.num_colors = int(cmap.size());
            for (int c : cmap) sub.color_labels.push_back(inst.color_labels[c]);
            sub.lists.assign(vmap.size(), Bits(sub.num_colors));
            for (size_t i = 0; i < vmap.size(); ++i) {
                const Bits& l = inst.lists[vmap[i]];
                for (int c = l.first(); c >= 0; c = l.next(c))
                    if (cinv[c] >= 0) sub.lists[i].set(cinv[c]);
            }
            sub.precolor.assign(vmap.size(), -1);
        }
        OracleLimits lim;
        lim.max_vertices = 12;
        if (inst.n() <= 12)
            CHECK(brute_backtrack(inst, lim).has_value() == brute_backtrack(sub, lim).has_value());
    }
}

TEST_CASE("classify_rare") {
    // every color on every clique list, clique bigger than 6k: nothing rare
    Instance big = make_rlc(complete_graph(8), 1, 7, 13);
    for (auto& l : big.lists) {
        Bits full(7);
        for (int c = 0; c < 7; ++c) full.set(c);
        l = full;
    }
    big.param_k = 1;
    // lists are now size 7 = n-1, still regular
    Bits av(big.n()), at(big.num_colors);
    for (int v = 0; v < big.n(); ++v) av.set(v);
    for (int c = 0; c < big.num_colors; ++c) at.set(c);
    auto rare = classify_rare(big, av, at, {}, 1);
    CHECK(rare.empty());

    // a color carried only by modulator vertices is rare
    Instance mixed = make_rlc(complete_graph(8), 1, 8, 15);
    Bits only_d(8);
    for (int c = 0; c < 8; ++c) only_d.set(c);
    // rebuild lists so color 7 appears on vertex 0's list alone
    for (int v = 0; v < 8; ++v) {
        Bits l(8);
        for (int c = 0; c < 7; ++c) l.set(c);
        if (v == 0) { l.reset(0); l.set(7); }
        mixed.lists[v] = l;
    }
    Bits av3(8), at3(8);
    for (int v = 0; v < 8; ++v) av3.set(v);
    for (int c = 0; c < 8; ++c) at3.set(c);
    auto rare3 = classify_rare(mixed, av3, at3, {0}, 1);
    CHECK(std::find(rare3.begin(), rare3.end(), 7) != rare3.end());
}

TEST_CASE("compress_rlc: identity branch below 11k") {
    for (uint64_t seed = 0; seed < 60; ++seed) {
        Instance inst = fuzz_rlc(seed, 10);   // always below 11k for k in {1,2}... k=1: n<11
        RlcCompression comp = compress_rlc(inst);
        if (comp.yes) {
            if (inst.n() <= 12) CHECK(brute_backtrack(inst).has_value());
            continue;
        }
        CHECK(comp.output.n() <= 11 * inst.param_k);
        if (inst.n() <= 12) {
            OracleLimits lim;
            lim.max_vertices = 12;
            CHECK(brute_budget(comp.output, lim).has_value() ==
                  brute_backtrack(inst, lim).has_value());
        }
    }
}

TEST_CASE("compress_rlc: compressed branch equivalence and lift") {
    int compressed_count = 0, yes_lifted = 0, no_count = 0;
    OracleLimits lim;
    lim.max_vertices = 24;
    for (uint64_t seed = 0; seed < 160; ++seed) {
        Instance inst = fuzz_rlc(seed, 24);
        const int k = inst.param_k;
        if (inst.n() < 11 * k) continue;
        RlcCompression comp = compress_rlc(inst);
        if (comp.yes) {
            CHECK(brute_backtrack(inst, lim).has_value());
            continue;
        }
        const bool truth = brute_backtrack(inst, lim).has_value();
        auto budget_col = brute_budget(comp.output, lim);
        CHECK(budget_col.has_value() == truth);
        if (comp.state.compressed) ++compressed_count;
        if (budget_col) {
            Coloring lifted = lift_rlc(comp, *budget_col);
            CHECK(verify_coloring(inst, lifted));
            ++yes_lifted;
        } else {
            ++no_count;
        }
    }
    CHECK(compressed_count > 0);
    CHECK(yes_lifted > 0);
    CHECK(no_count > 0);
}

TEST_CASE("kernelize_rlc: sizes, regularity, equivalence") {
    int padded_count = 0;
    OracleLimits lim;
    lim.max_vertices = 24;
    for (uint64_t seed = 0; seed < 160; ++seed) {
        Instance inst = fuzz_rlc(seed, 24);
        const int k = inst.param_k;
        RlcKernel kern = kernelize_rlc(inst);
        if (kern.yes) {
            if (inst.n() <= 14) CHECK(brute_backtrack(inst).has_value());
            continue;
        }
        // output is a valid RLC instance (regular lists checked by validate)
        validate_instance(kern.output);
        if (kern.padded) {
            ++padded_count;
            CHECK(kern.output.n() <= 17 * k);
            CHECK(kern.output.num_colors <= 20 * k);
        }
        OracleLimits klim;
        klim.max_vertices = std::max(24, kern.output.n());
        CHECK(brute_backtrack(kern.output, klim).has_value() ==
              brute_backtrack(inst, lim).has_value());
    }
    CHECK(padded_count > 0);
}

TEST_CASE("lift_rlc rejects a non-verifying budget coloring") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        Instance inst = fuzz_rlc(seed, 24);
        if (inst.n() < 11 * inst.param_k) continue;
        RlcCompression comp = compress_rlc(inst);
        if (comp.yes || comp.output.n() == 0) continue;
        Coloring bogus(comp.output.n());
        CHECK_THROWS_AS(lift_rlc(comp, bogus), std::invalid_argument);
        return;
    }
}
