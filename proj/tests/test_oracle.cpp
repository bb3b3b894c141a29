#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcmod/instance.hpp"
#include "lcmod/oracle.hpp"

using namespace lcmod;

namespace {

Instance k3_lists(std::vector<std::vector<int>> lists) {
    Instance i;
    i.g = Graph(3);
    i.g.add_edge(0, 1);
    i.g.add_edge(0, 2);
    i.g.add_edge(1, 2);
    int maxc = 0;
    for (auto& l : lists)
        for (int c : l) maxc = std::max(maxc, c);
    i.num_colors = maxc;
    for (int c = 1; c <= maxc; ++c) i.color_labels.push_back(c);
    i.lists.assign(3, Bits(maxc));
    for (int v = 0; v < 3; ++v)
        for (int c : lists[v]) i.lists[v].set(c - 1);
    i.precolor.assign(3, -1);
    return i;
}

} // namespace

TEST_CASE("brute_backtrack basics") {
    CHECK(!brute_backtrack(k3_lists({{1, 2}, {1, 2}, {1, 2}})).has_value());
    auto col = brute_backtrack(k3_lists({{1, 2}, {2, 3}, {1, 3}}));
    REQUIRE(col.has_value());
    CHECK(verify_coloring(k3_lists({{1, 2}, {2, 3}, {1, 3}}), *col));

    Instance lone;
    lone.g = Graph(1);
    lone.num_colors = 0;
    lone.lists.assign(1, Bits(0));
    lone.precolor.assign(1, -1);
    CHECK(!brute_backtrack(lone).has_value());

    Instance big;
    big.g = Graph(15);
    big.num_colors = 0;
    big.lists.assign(15, Bits(0));
    big.precolor.assign(15, -1);
    CHECK_THROWS_AS(brute_backtrack(big), CapacityError);
}

TEST_CASE("brute_budget basics") {
    Instance i;
    i.g = Graph(1);
    i.num_colors = 1;
    i.color_labels = {1};
    Bits l(1);
    l.set(0);
    i.lists.assign(1, l);
    i.precolor.assign(1, -1);
    Bits tp(1);
    tp.set(0);
    i.budget = BudgetConstraint{tp, 0};
    i.tag = Tag::BUDGET;
    CHECK(!brute_budget(i).has_value());
    i.budget->q = 1;
    CHECK(brute_budget(i).has_value());
    // empty budget color set behaves exactly like brute_backtrack
    i.budget = BudgetConstraint{Bits(1), 0};
    CHECK(brute_budget(i).has_value());
}

TEST_CASE("cross-oracle agreement on random modulator instances") {
    GenParams p;
    p.model = ListModel::UniformSize;
    p.tag = Tag::LCCM;
    int yes_count = 0;
    for (uint64_t seed = 0; seed < 500; ++seed) {
        p.n = 2 + int(seed % 9);
        p.k = int(seed % 4);
        p.density = 0.2 + 0.1 * double(seed % 7);
        p.list_size = 2 + int(seed % 3);
        Instance inst = gen_random(p, seed);
        auto a = brute_backtrack(inst);
        auto b = brute_modulator_enum(inst);
        CHECK(a.has_value() == b.has_value());
        if (a) {
            ++yes_count;
            CHECK(verify_coloring(inst, *a));
            CHECK(verify_coloring(inst, *b));
        }
    }
    CHECK(yes_count > 0);               // corpus exercises both answers
    CHECK(yes_count < 500);
}

TEST_CASE("brute_modulator_enum with empty modulator is a pure matching") {
    Instance i = k3_lists({{1, 2}, {2, 3}, {1, 3}});
    i.modulator = std::vector<int>{};
    // K3 is a clique, so the empty set is a valid modulator
    auto a = brute_modulator_enum(i);
    auto b = brute_backtrack(i);
    CHECK(a.has_value() == b.has_value());
}

TEST_CASE("verify_coloring rejects bad colorings") {
    Instance i = k3_lists({{1, 2}, {2, 3}, {1, 3}});
    Coloring c(3);
    c.assign = {0, 1, 2};
    CHECK(verify_coloring(i, c));
    Coloring missing(3);
    missing.assign = {0, 1, -1};
    CHECK(!verify_coloring(i, missing));
    Coloring improper(3);
    improper.assign = {0, 0, 2};
    CHECK(!verify_coloring(i, improper));
    Coloring off_list(3);
    off_list.assign = {2, 1, 0};          // color 3 not in L(0)
    CHECK(!verify_coloring(i, off_list));

    // precoloring consistency
    Instance pre = parse_instance(
        "p listcolor 2 0\nl 0 : 1 2\nl 1 : 1 2\npre 0 1\n");
    Coloring pc(2);
    pc.assign = {1, 0};
    CHECK(!verify_coloring(pre, pc));     // vertex 0 must keep color 1
    pc.assign = {0, 1};
    CHECK(verify_coloring(pre, pc));
}
