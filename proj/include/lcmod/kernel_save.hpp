#pragma once

#include "lcmod/kernel_pce.hpp"

namespace lcmod {

// G' is G closed under the three saturation rules; rules only add edges,
// so any proper coloring of G' is proper on G.
struct SaveState {
    Instance orig;
    Graph gprime;
    int p = 0;           // n - |Q|
};

SaveState saturate_edges(const Instance& inst);

struct SaveResult {
    bool yes = false;
    Coloring certificate;             // YES branch, on the original instance
    bool no = false;                  // kernel branch hit a definitive NO
    SaveState state;
    std::vector<int> save_modulator;  // V(M) handed to the PCE kernel
    Instance pce_input;               // PCECM instance on G'
    PceResult pce;                    // kernel output + trace
};

// Maximal matching M in the complement of G': |M| >= p gives an explicit
// certificate built by the three-case pairing; otherwise V(M) is a
// modulator of size <= 2p and the PCE kernel bounds the output by 6p.
SaveResult kernelize_save(const Instance& inst);

// YES branch: the stored certificate. Kernel branch: lift through the
// PCE trace onto G', which is also proper on G.
Coloring lift_save(const SaveResult& result, const Coloring& lambda);

} // namespace lcmod
