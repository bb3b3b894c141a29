#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcmod/bits.hpp"
#include "lcmod/graph.hpp"
#include "lcmod/rng.hpp"

namespace lcmod {

enum class Tag { LCCM, PCECM, RLC, BUDGET, SAVE };

const char* tag_name(Tag t);
std::optional<Tag> tag_from_name(const std::string& s);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// an existence claim the algorithms rely on failed at runtime
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "use at most q distinct colors from tprime"
struct BudgetConstraint {
    Bits tprime;    // over dense color ids
    int q = 0;
};

// Universal problem container: graph, color lists, optional pre-coloring,
// optional clique modulator, optional budget. Colors are dense ids
// 0..num_colors-1 internally; external integer labels live in a side
// table and only matter for I/O.
struct Instance {
    Graph g;
    int num_colors = 0;
    std::vector<int> color_labels;          // dense id -> label, strictly increasing
    std::vector<Bits> lists;                // per vertex, universe num_colors
    std::vector<int> precolor;              // dense color id or -1
    std::optional<std::vector<int>> modulator;  // ascending vertex ids
    std::optional<BudgetConstraint> budget;
    Tag tag = Tag::LCCM;
    int param_k = -1;                       // declared k for RLC (and SAVE, optional)

    int n() const { return g.n(); }
    bool precolored(int v) const { return precolor[v] >= 0; }

    // palette size |Q| for PCE-style instances (colors table is the palette)
    int palette_size() const { return num_colors; }
};

// Partial or total map vertex -> dense color id (-1 = unassigned).
struct Coloring {
    std::vector<int> assign;

    Coloring() = default;
    explicit Coloring(int n) : assign(n, -1) {}
    bool total() const {
        for (int c : assign) if (c < 0) return false;
        return true;
    }
    int distinct_used(const Bits& among) const {   // among: dense color set
        Bits seen(among.universe());
        for (int c : assign)
            if (c >= 0 && among.test(c)) seen.set(c);
        return seen.count();
    }
};

// Throws ValidationError naming the violated invariant.
void validate_instance(const Instance& inst);

Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst);

// Coloring file: lines "<vertex> <color-label>", '#' comments.
Coloring parse_coloring(const std::string& text, const Instance& inst);
std::string write_coloring(const Coloring& c, const Instance& inst);

// Shrinks precolored vertices' lists to singletons; keeps everything else.
Instance fold_precoloring(const Instance& inst);

enum class ListModel { UniformSize, RegularNMinusK, PlantedYes };

struct GenParams {
    int n = 0;
    double density = 0.5;
    ListModel model = ListModel::UniformSize;
    int list_size = 3;       // UniformSize
    int k = 0;               // modulator size (LCCM/PCECM) or RLC parameter
    int num_colors = 0;      // color universe; 0 = pick a default
    double precolor_frac = 0.0;  // PCECM / SAVE
    Tag tag = Tag::LCCM;
};

// Deterministic for a fixed seed. LCCM/PCECM instances are built with a
// planted modulator structure (first k vertices) so the modulator field
// is exact; RLC/SAVE use a plain G(n, density) graph.
Instance gen_random(const GenParams& p, uint64_t seed);

// Hitting-set reduction: D-vertex per set with its set as list, plus an
// (n-k)-clique holding the full universe, completely joined to D.
Instance gen_from_hitting_set(int universe_size, const std::vector<std::vector<int>>& family, int k);

// Independent-set reduction: private color per vertex plus one shared
// color, budget "at most n-k+1 distinct colors".
Instance gen_from_independent_set(const Graph& g, int k);

} // namespace lcmod
