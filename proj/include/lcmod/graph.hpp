#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lcmod/bits.hpp"

namespace lcmod {

// Undirected simple graph on vertices 0..n-1, adjacency as bitset rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n, Bits(n)) {}

    int n() const { return n_; }
    void add_edge(int u, int v) {
        if (u == v) return;
        adj_[u].set(v);
        adj_[v].set(u);
    }
    bool has_edge(int u, int v) const { return adj_[u].test(v); }
    const Bits& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return adj_[v].count(); }
    int edge_count() const {
        int total = 0;
        for (int v = 0; v < n_; ++v) total += degree(v);
        return total / 2;
    }

private:
    int n_ = 0;
    std::vector<Bits> adj_;
};

// Bipartite graph; edges stored per left vertex as right-side bitsets.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    BipartiteGraph(int left, int right) : nl_(left), nr_(right), adj_(left, Bits(right)) {}

    int left_size() const { return nl_; }
    int right_size() const { return nr_; }
    void add_edge(int l, int r) { adj_[l].set(r); }
    bool has_edge(int l, int r) const { return adj_[l].test(r); }
    const Bits& right_neighbors(int l) const { return adj_[l]; }

private:
    int nl_ = 0, nr_ = 0;
    std::vector<Bits> adj_;
};

// Matching as mutual partner arrays, -1 for unmatched.
struct Matching {
    std::vector<int> left_to_right, right_to_left;

    Matching() = default;
    Matching(int nl, int nr) : left_to_right(nl, -1), right_to_left(nr, -1) {}
    int size() const {
        int c = 0;
        for (int r : left_to_right) c += (r >= 0);
        return c;
    }
    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> p;
        for (int l = 0; l < int(left_to_right.size()); ++l)
            if (left_to_right[l] >= 0) p.push_back({l, left_to_right[l]});
        return p;
    }
};

enum class Side { Left, Right };

Graph complement(const Graph& g);

// Greedy over edges in lowest-(u,v) order; no single edge extends the result.
std::vector<std::pair<int, int>> maximal_matching(const Graph& g);

// Augmenting paths from each left vertex in index order.
Matching maximum_bipartite_matching(const BipartiteGraph& h);

// A set S on the chosen side with |N(S)| < |S| such that a maximum
// matching saturates N(S) with partners inside S, or nullopt when the
// side is saturated. Computed as the alternating-path closure from one
// unsaturated vertex.
std::optional<std::vector<int>> find_deficient_set(const BipartiteGraph& h, Side side);

bool is_independent_set(const Graph& g, const Bits& s);

// Endpoints of a maximal matching in the complement: factor-2 modulator.
std::vector<int> approx_modulator(const Graph& g);

// Bounded vertex-cover branching on the complement; nullopt when no
// modulator of size <= k exists.
std::optional<std::vector<int>> exact_modulator(const Graph& g, int k);

bool verify_modulator(const Graph& g, const std::vector<int>& d);

} // namespace lcmod
