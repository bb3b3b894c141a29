#pragma once

#include <cstdint>
#include <vector>

namespace lcmod {

// Dynamic bitset sized at construction. Used for adjacency rows, color
// lists and vertex sets throughout; universe sizes stay in the hundreds,
// so a flat word vector beats anything fancier.
class Bits {
public:
    Bits() = default;
    explicit Bits(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

    int universe() const { return n_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

    void clear() { for (auto& x : w_) x = 0; }

    int count() const {
        int c = 0;
        for (uint64_t x : w_) c += __builtin_popcountll(x);
        return c;
    }
    bool empty() const {
        for (uint64_t x : w_) if (x) return false;
        return true;
    }
    bool any() const { return !empty(); }

    // lowest set bit, or -1
    int first() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64 + __builtin_ctzll(w_[i]));
        return -1;
    }
    int next(int i) const {        // lowest set bit > i, or -1
        ++i;
        if (i >= n_) return -1;
        size_t q = size_t(i) >> 6;
        uint64_t x = w_[q] & (~uint64_t(0) << (i & 63));
        while (true) {
            if (x) return int(q * 64 + __builtin_ctzll(x));
            if (++q >= w_.size()) return -1;
            x = w_[q];
        }
    }

    Bits& operator&=(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bits& subtract(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bits operator&(Bits a, const Bits& b) { a &= b; return a; }
    friend Bits operator|(Bits a, const Bits& b) { a |= b; return a; }

    bool intersects(const Bits& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    bool subset_of(const Bits& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        for (int i = first(); i >= 0; i = next(i)) v.push_back(i);
        return v;
    }
    static Bits of(int universe, const std::vector<int>& items) {
        Bits b(universe);
        for (int i : items) b.set(i);
        return b;
    }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

} // namespace lcmod
