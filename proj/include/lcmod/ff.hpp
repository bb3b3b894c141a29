#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#if defined(LCMOD_USE_PCLMUL)
#include <smmintrin.h>
#include <wmmintrin.h>
#endif

namespace lcmod {

// GF(2^64) = GF(2)[x] / (x^64 + x^4 + x^3 + x + 1).
// Elements are 64-bit words, addition is XOR. The reduction constant
// 0x1b encodes x^4 + x^3 + x + 1 == x^64 (mod m).
//
// The carryless multiply has a portable shift-XOR baseline and, when the
// build enables it, a PCLMULQDQ path. Both reduce identically, so results
// are bit-identical either way.
struct F64 {
    uint64_t v = 0;

    constexpr F64() = default;
    constexpr explicit F64(uint64_t x) : v(x) {}

    bool operator==(const F64&) const = default;
    bool is_zero() const { return v == 0; }

    friend F64 operator^(F64 a, F64 b) { return F64(a.v ^ b.v); }
    F64& operator^=(F64 b) { v ^= b.v; return *this; }
};

inline constexpr F64 FF_ZERO{0};
inline constexpr F64 FF_ONE{1};
inline constexpr uint64_t FF_REDUCER = 0x1b;

namespace detail {

struct U128 { uint64_t lo, hi; };

inline U128 clmul_portable(uint64_t a, uint64_t b) {
    uint64_t lo = 0, hi = 0;
    while (b) {
        int i = __builtin_ctzll(b);
        b &= b - 1;
        lo ^= a << i;
        if (i) hi ^= a >> (64 - i);
    }
    return {lo, hi};
}

#if defined(LCMOD_USE_PCLMUL)
inline U128 clmul(uint64_t a, uint64_t b) {
    __m128i p = _mm_clmulepi64_si128(_mm_set_epi64x(0, (long long)a),
                                     _mm_set_epi64x(0, (long long)b), 0x00);
    return {(uint64_t)_mm_cvtsi128_si64(p),
            (uint64_t)_mm_extract_epi64(p, 1)};
}
#else
inline U128 clmul(uint64_t a, uint64_t b) { return clmul_portable(a, b); }
#endif

// reduce hi*x^64 + lo mod m; hi*0x1b spills at most 5 bits past 64,
// and the second fold of those bits cannot spill again
inline uint64_t reduce(U128 p) {
    U128 f = clmul(p.hi, FF_REDUCER);
    uint64_t r = p.lo ^ f.lo;
    U128 g = clmul(f.hi, FF_REDUCER);
    return r ^ g.lo;
}

} // namespace detail

inline F64 ff_add(F64 a, F64 b) { return a ^ b; }

inline F64 ff_mul(F64 a, F64 b) {
    return F64(detail::reduce(detail::clmul(a.v, b.v)));
}

inline F64 ff_sqr(F64 a) { return ff_mul(a, a); }

inline F64 ff_pow(F64 a, uint64_t e) {
    F64 r = FF_ONE, base = a;
    while (e) {
        if (e & 1) r = ff_mul(r, base);
        base = ff_sqr(base);
        e >>= 1;
    }
    return r;
}

// a^(2^64-2) = a^-1 for a != 0
inline F64 ff_inv(F64 a) {
    if (a.is_zero()) throw std::domain_error("ff_inv: zero has no inverse");
    F64 r = FF_ONE, base = ff_sqr(a);    // a^2
    for (int i = 1; i < 64; ++i) {       // exponent 2^64-2 = bits 1..63
        r = ff_mul(r, base);
        base = ff_sqr(base);
    }
    return r;
}

// Dense square matrix over GF(2^64), row-major.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int dim) : d_(dim), a_(size_t(dim) * dim, FF_ZERO) {}

    int dim() const { return d_; }
    F64& at(int r, int c) { return a_[size_t(r) * d_ + c]; }
    const F64& at(int r, int c) const { return a_[size_t(r) * d_ + c]; }
    F64* row(int r) { return a_.data() + size_t(r) * d_; }
    const F64* row(int r) const { return a_.data() + size_t(r) * d_; }

private:
    int d_ = 0;
    std::vector<F64> a_;
};

// Gaussian elimination with column pivot search. Characteristic 2, so a
// row swap does not flip the result (determinant equals permanent).
F64 determinant(SquareMatrix m);

SquareMatrix matmul(const SquareMatrix& a, const SquareMatrix& b);

// Table of 2^r field values indexed by subset bitmask of an r-element
// ground set, r <= 30.
class SubsetTable {
public:
    SubsetTable() = default;
    explicit SubsetTable(int ground) : r_(check(ground)), vals_(size_t(1) << ground, FF_ZERO) {}

    int ground() const { return r_; }
    size_t size() const { return vals_.size(); }
    F64& operator[](uint32_t mask) { return vals_[mask]; }
    const F64& operator[](uint32_t mask) const { return vals_[mask]; }

private:
    static int check(int r) {
        if (r < 0 || r > 30) throw std::length_error("SubsetTable: ground size must be in [0,30]");
        return r;
    }
    int r_ = 0;
    std::vector<F64> vals_;
};

// Yates butterfly: out[S] = XOR of in[A] over A subseteq S.
SubsetTable fast_zeta(SubsetTable t);

// XOR of eval(I) over all I in 2^[r]. eval must be deterministic; with
// jobs > 1 the mask space is chunked, which is safe because XOR is
// order-independent.
F64 sieve_subsets(int r, const std::function<F64(uint32_t)>& eval, int jobs = 1);

} // namespace lcmod
