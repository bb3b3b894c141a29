#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcmod/instance.hpp"
#include "lcmod/oracle.hpp"

using namespace lcmod;

TEST_CASE("parse minimal instance") {
    Instance i = parse_instance("p listcolor 1 0\nl 0 : 1\n");
    CHECK(i.n() == 1);
    CHECK(i.num_colors == 1);
    CHECK(i.lists[0].test(0));
    CHECK(i.color_labels[0] == 1);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_instance("p listcolor 2 1\ne 0 5\nl 0 :\nl 1 :\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("l 0 : 1\n"), ParseError);          // section before header
    CHECK_THROWS_AS(parse_instance("p listcolor 2 0\ne 0 1\nl 0 :\nl 1 :\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("p listcolor 1 0\nl 0 : 1\nxyz\n"), ParseError);
    try {
        parse_instance("p listcolor 2 1\ne 0 5\nl 0 :\nl 1 :\n");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("validation errors name the invariant") {
    // precolor outside the list
    CHECK_THROWS_AS(parse_instance("p listcolor 1 0\nl 0 : 1\npre 0 2\n"), ValidationError);
    // improper precoloring
    CHECK_THROWS_AS(
        parse_instance("p listcolor 2 1\ne 0 1\nl 0 : 1\nl 1 : 1\npre 0 1\npre 1 1\n"),
        ValidationError);
    // bogus modulator
    CHECK_THROWS_AS(parse_instance("p listcolor 3 1\ne 0 1\nl 0 : 1\nl 1 : 1\nl 2 : 1\nmod 0\n"),
                    ValidationError);
    // RLC lists must have size n-k
    CHECK_THROWS_AS(
        parse_instance("p listcolor 2 0\ntag RLC\nparam k 1\nl 0 : 1 2\nl 1 : 1\n"),
        ValidationError);
}

TEST_CASE("write/parse round trip is the identity on canonical form") {
    GenParams p;
    p.n = 9;
    p.k = 3;
    p.density = 0.4;
    p.model = ListModel::UniformSize;
    p.list_size = 4;
    p.tag = Tag::LCCM;
    for (uint64_t seed = 0; seed < 25; ++seed) {
        Instance a = gen_random(p, seed);
        std::string text = write_instance(a);
        Instance b = parse_instance(text);
        CHECK(write_instance(b) == text);
    }
    // distinct instances produce distinct texts
    Instance a = gen_random(p, 1), b = gen_random(p, 2);
    CHECK(write_instance(a) != write_instance(b));
}

TEST_CASE("empty graph instance writes header plus nothing else") {
    Instance i;
    i.g = Graph(0);
    i.tag = Tag::LCCM;
    std::string text = write_instance(i);
    CHECK(text == "p listcolor 0 0\ntag LCCM\n");
    Instance back = parse_instance(text);
    CHECK(back.n() == 0);
}

TEST_CASE("gen_random determinism and edge cases") {
    GenParams p;
    p.n = 0;
    Instance empty = gen_random(p, 5);
    CHECK(empty.n() == 0);

    p.n = 10;
    p.k = 3;
    p.model = ListModel::PlantedYes;
    p.list_size = 4;
    CHECK(write_instance(gen_random(p, 99)) == write_instance(gen_random(p, 99)));
    CHECK(write_instance(gen_random(p, 99)) != write_instance(gen_random(p, 100)));
}

TEST_CASE("planted instances are always YES") {
    GenParams p;
    p.model = ListModel::PlantedYes;
    p.tag = Tag::LCCM;
    for (uint64_t seed = 0; seed < 60; ++seed) {
        p.n = 3 + int(seed % 10);
        p.k = int(seed % 4);
        p.density = 0.3 + 0.05 * double(seed % 8);
        p.list_size = 3;
        Instance inst = gen_random(p, seed);
        CHECK(brute_backtrack(inst).has_value());
    }
}

namespace {

bool hitting_set_exists(int n, const std::vector<std::vector<int>>& family, int k) {
    for (uint32_t s = 0; s < (uint32_t(1) << n); ++s) {
        if (__builtin_popcount(s) > k) continue;
        bool hits = true;
        for (const auto& f : family) {
            bool hit = false;
            for (int e : f) hit |= (s >> (e - 1)) & 1;
            if (!hit) { hits = false; break; }
        }
        if (hits) return true;
    }
    return false;
}

bool has_independent_set(const Graph& g, int k) {
    for (uint32_t s = 0; s < (uint32_t(1) << g.n()); ++s) {
        if (__builtin_popcount(s) < k) continue;
        bool ok = true;
        for (int u = 0; u < g.n() && ok; ++u)
            for (int v = u + 1; v < g.n() && ok; ++v)
                if (((s >> u) & 1) && ((s >> v) & 1) && g.has_edge(u, v)) ok = false;
        if (ok) return true;
    }
    return false;
}

} // namespace

TEST_CASE("hitting-set reduction worked examples") {
    // U={1,2}, F={{1},{2}}, k=1: no single element hits both
    Instance no = gen_from_hitting_set(2, {{1}, {2}}, 1);
    CHECK(!brute_backtrack(no).has_value());
    CHECK(!hitting_set_exists(2, {{1}, {2}}, 1));

    Instance yes = gen_from_hitting_set(1, {{1}}, 1);
    CHECK(brute_backtrack(yes).has_value());

    // k = n: no clique part, YES whenever every set is nonempty
    Instance kn = gen_from_hitting_set(3, {{1, 2}, {3}}, 3);
    CHECK(kn.n() == 2);
    CHECK(brute_backtrack(kn).has_value());

    CHECK_THROWS_AS(gen_from_hitting_set(2, {{1}}, 3), std::invalid_argument);
    CHECK_THROWS_AS(gen_from_hitting_set(2, {{}}, 1), std::invalid_argument);
}

TEST_CASE("independent-set reduction worked examples") {
    Graph k2(2);
    k2.add_edge(0, 1);
    Instance i1 = gen_from_independent_set(k2, 1);
    CHECK(has_independent_set(k2, 1));
    CHECK(brute_budget(i1).has_value());

    Graph k3(3);
    k3.add_edge(0, 1);
    k3.add_edge(0, 2);
    k3.add_edge(1, 2);
    Instance i2 = gen_from_independent_set(k3, 2);
    CHECK(!has_independent_set(k3, 2));
    CHECK(!brute_budget(i2).has_value());

    Graph e3(3);
    Instance i3 = gen_from_independent_set(e3, 3);
    CHECK(has_independent_set(e3, 3));
    CHECK(brute_budget(i3).has_value());
}

TEST_CASE("independent-set reduction agrees with brute force on small graphs") {
    Rng rng(41);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = int(rng.below(6));
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.chance(0.5)) g.add_edge(u, v);
        for (int k = 1; k <= n + 1; ++k) {
            Instance inst = gen_from_independent_set(g, k);
            CHECK(brute_budget(inst).has_value() == has_independent_set(g, k));
        }
    }
}

TEST_CASE("fold_precoloring shrinks lists to singletons") {
    Instance i = parse_instance(
        "p listcolor 2 1\ne 0 1\nl 0 : 1 2\nl 1 : 1 2\npre 0 1\ntag PCECM\nmod\n");
    Instance f = fold_precoloring(i);
    CHECK(f.lists[0].count() == 1);
    CHECK(f.lists[0].test(0));
    CHECK(f.lists[1].count() == 2);
}
