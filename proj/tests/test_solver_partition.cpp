#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "lcmod/oracle.hpp"
#include "lcmod/solver_partition.hpp"

using namespace lcmod;

namespace {

// I2: D={0}, edges 0-1 and 1-2; L(0)={1}, L(1)={1,2}, L(2)={1,2}
Instance make_i2() {
    Instance i;
    i.g = Graph(3);
    i.g.add_edge(0, 1);
    i.g.add_edge(1, 2);
    i.num_colors = 2;
    i.color_labels = {1, 2};
    i.lists.assign(3, Bits(2));
    i.lists[0].set(0);
    i.lists[1].set(0);
    i.lists[1].set(1);
    i.lists[2].set(0);
    i.lists[2].set(1);
    i.precolor.assign(3, -1);
    i.modulator = std::vector<int>{0};
    i.tag = Tag::LCCM;
    return i;
}

Instance make_i1() {
    Instance i = make_i2();
    Bits l2(2);
    l2.set(1);
    i.lists[2] = l2;
    return i;
}

// all set partitions of {0..k-1} into independent blocks, each block
// labeled two ways
long long brute_labeled_count(const Graph& g, const std::vector<int>& verts) {
    const int k = int(verts.size());
    if (k == 0) return 1;
    std::vector<int> assign(k, 0);
    long long total = 0;
    auto canonical = [&]() {
        int mx = -1;
        for (int i = 0; i < k; ++i) {
            if (assign[i] > mx + 1) return false;
            mx = std::max(mx, assign[i]);
        }
        return true;
    };
    while (true) {
        if (canonical()) {
            int blocks = 0;
            for (int i = 0; i < k; ++i) blocks = std::max(blocks, assign[i] + 1);
            bool ok = true;
            for (int b = 0; b < blocks && ok; ++b) {
                Bits block(g.n());
                for (int i = 0; i < k; ++i)
                    if (assign[i] == b) block.set(verts[i]);
                ok = is_independent_set(g, block);
            }
            if (ok) total += (long long)1 << blocks;
        }
        int i = k - 1;
        while (i >= 0 && assign[i] == k - 1) assign[i--] = 0;
        if (i < 0) break;
        ++assign[i];
    }
    return total;
}

} // namespace

TEST_CASE("labeled partition stream: base cases") {
    Graph g(3);
    LabeledPartitionStream empty(g, {});
    auto first = empty.next();
    REQUIRE(first.has_value());
    CHECK(first->fresh_blocks.empty());
    CHECK(first->reuse_blocks.empty());
    CHECK(!empty.next().has_value());

    LabeledPartitionStream single(g, {1});
    int count = 0, fresh = 0;
    while (auto lp = single.next()) {
        ++count;
        fresh += !lp->fresh_blocks.empty();
    }
    CHECK(count == 2);
    CHECK(fresh == 1);

    Graph h(2);
    h.add_edge(0, 1);
    LabeledPartitionStream adj(h, {0, 1});
    count = 0;
    while (auto lp = adj.next()) {
        ++count;
        CHECK(lp->fresh_blocks.size() + lp->reuse_blocks.size() == 2);   // joint block excluded
    }
    CHECK(count == 4);
}

TEST_CASE("labeled partition stream matches brute enumeration") {
    Rng rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        const int k = int(rng.below(7));
        Graph g(k + 2);
        for (int u = 0; u < g.n(); ++u)
            for (int v = u + 1; v < g.n(); ++v)
                if (rng.chance(0.4)) g.add_edge(u, v);
        std::vector<int> verts;
        for (int i = 0; i < k; ++i) verts.push_back(i);
        LabeledPartitionStream stream(g, verts);
        long long count = 0;
        while (stream.next()) ++count;
        CHECK(count == brute_labeled_count(g, verts));
    }
}

TEST_CASE("build_partition_matrix worked examples") {
    // D = empty, C = K2 with disjoint singleton lists: 2x2, det != 0
    Instance i;
    i.g = Graph(2);
    i.g.add_edge(0, 1);
    i.num_colors = 2;
    i.color_labels = {1, 2};
    i.lists.assign(2, Bits(2));
    i.lists[0].set(0);
    i.lists[1].set(1);
    i.precolor.assign(2, -1);
    LabeledPartition none;
    auto b = PartitionMatrixBuilder::make(i, none);
    REQUIRE(b.has_value());
    CHECK(b->dim() == 2);
    std::vector<F64> ones(b->edge_count(), FF_ONE);
    CHECK(determinant(b->assemble({}, 0, ones)) == FF_ONE);

    // same lists: pigeonhole rejection
    Instance j = i;
    Bits only1(2);
    only1.set(0);
    j.lists[0] = only1;
    j.lists[1] = only1;
    CHECK(!PartitionMatrixBuilder::make(j, none).has_value());
}

TEST_CASE("reuse variable lands on the open clique edge") {
    // one reuse block {d}: L(d) = {1}; c not adjacent to d, 1 in L(c)
    Instance i;
    i.g = Graph(2);                 // vertex 0 = d, vertex 1 = c, no edge
    i.num_colors = 1;
    i.color_labels = {1};
    i.lists.assign(2, Bits(1));
    i.lists[0].set(0);
    i.lists[1].set(0);
    i.precolor.assign(2, -1);
    LabeledPartition lp;
    lp.reuse_blocks.push_back({0});
    auto b = PartitionMatrixBuilder::make(i, lp);
    REQUIRE(b.has_value());
    CHECK(b->reuse_count() == 1);
    std::vector<F64> ones(b->edge_count(), FF_ONE);
    F64 xval(0xDEADBEEF);
    // with x live the entry is 1 xor x; with x zeroed it is 1
    SquareMatrix live = b->assemble({xval}, 0, ones);
    SquareMatrix dead = b->assemble({xval}, 1, ones);
    CHECK((live.at(0, 0) ^ dead.at(0, 0)) == xval);
}

TEST_CASE("decide_partition on the worked instances") {
    SolveOptions opt{7, 2, 1};
    CHECK(decide_partition(make_i2(), opt));
    CHECK(!decide_partition(make_i1(), opt));
    CHECK(brute_backtrack(make_i2()).has_value());
    CHECK(!brute_backtrack(make_i1()).has_value());

    Instance nomod = make_i2();
    nomod.modulator.reset();
    CHECK_THROWS_AS(decide_partition(nomod, opt), std::invalid_argument);
}

TEST_CASE("decide_partition agrees with the oracle") {
    GenParams p;
    p.tag = Tag::LCCM;
    int yes = 0, no = 0;
    for (uint64_t seed = 0; seed < 300; ++seed) {
        p.n = 3 + int(seed % 8);
        p.k = int(seed % 4);
        p.density = 0.25 + 0.1 * double(seed % 6);
        p.model = (seed % 4 == 0) ? ListModel::PlantedYes : ListModel::UniformSize;
        p.list_size = 2 + int((seed / 4) % 3);
        p.num_colors = std::max(3, p.n);
        Instance inst = gen_random(p, seed);
        const bool truth = brute_backtrack(inst).has_value();
        const bool got = decide_partition(inst, {seed, 2, 1});
        CHECK(got == truth);
        (truth ? yes : no) += 1;
    }
    CHECK(yes > 0);
    CHECK(no > 0);
}

TEST_CASE("one-sided error: repeated runs on NO instances never say YES") {
    std::vector<Instance> nos{make_i1()};
    GenParams p;
    p.tag = Tag::LCCM;
    p.model = ListModel::UniformSize;
    for (uint64_t seed = 0; nos.size() < 4 && seed < 400; ++seed) {
        p.n = 5 + int(seed % 6);
        p.k = 1 + int(seed % 3);
        p.density = 0.3 + 0.1 * double(seed % 5);
        p.list_size = 2;
        p.num_colors = std::max(3, p.n - 2);
        Instance inst = gen_random(p, seed);
        if (!brute_backtrack(inst).has_value()) nos.push_back(inst);
    }
    REQUIRE(nos.size() == 4);
    for (const Instance& inst : nos)
        for (uint64_t seed = 0; seed < 500; ++seed)
            REQUIRE(!decide_partition(inst, {seed, 1, 1}));
}

TEST_CASE("decide_partition is deterministic across jobs") {
    GenParams p;
    p.tag = Tag::LCCM;
    p.n = 9;
    p.k = 3;
    p.density = 0.4;
    p.model = ListModel::UniformSize;
    p.list_size = 3;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Instance inst = gen_random(p, seed);
        CHECK(decide_partition(inst, {seed, 2, 1}) == decide_partition(inst, {seed, 2, 4}));
    }
}
