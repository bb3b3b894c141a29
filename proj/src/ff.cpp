#include "lcmod/ff.hpp"

#include <thread>

namespace lcmod {

F64 determinant(SquareMatrix m) {
    const int n = m.dim();
    F64 det = FF_ONE;
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r) {
            if (!m.at(r, c).is_zero()) { pivot = r; break; }
        }
        if (pivot < 0) return FF_ZERO;
        if (pivot != c) {
            F64* a = m.row(c);
            F64* b = m.row(pivot);
            for (int j = c; j < n; ++j) std::swap(a[j], b[j]);
        }
        const F64 p = m.at(c, c);
        det = ff_mul(det, p);
        const F64 pinv = ff_inv(p);
        const F64* prow = m.row(c);
        for (int r = c + 1; r < n; ++r) {
            F64* rrow = m.row(r);
            if (rrow[c].is_zero()) continue;
            const F64 f = ff_mul(rrow[c], pinv);
            rrow[c] = FF_ZERO;
            for (int j = c + 1; j < n; ++j)
                rrow[j] ^= ff_mul(f, prow[j]);
        }
    }
    return det;
}

SquareMatrix matmul(const SquareMatrix& a, const SquareMatrix& b) {
    const int n = a.dim();
    SquareMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const F64 aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < n; ++j)
                c.at(i, j) ^= ff_mul(aik, b.at(k, j));
        }
    return c;
}

SubsetTable fast_zeta(SubsetTable t) {
    const int r = t.ground();
    const size_t n = t.size();
    for (int d = 0; d < r; ++d) {
        const uint32_t bit = uint32_t(1) << d;
        for (uint32_t s = 0; s < n; ++s)
            if (s & bit) t[s] ^= t[s ^ bit];
    }
    return t;
}

F64 sieve_subsets(int r, const std::function<F64(uint32_t)>& eval, int jobs) {
    if (r < 0 || r > 30) throw std::length_error("sieve_subsets: ground size must be in [0,30]");
    const uint64_t total = uint64_t(1) << r;
    if (jobs <= 1 || total < 64) {
        F64 acc = FF_ZERO;
        for (uint64_t mask = 0; mask < total; ++mask) acc ^= eval(uint32_t(mask));
        return acc;
    }
    std::vector<F64> partial(jobs, FF_ZERO);
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int t = 0; t < jobs; ++t) {
        threads.emplace_back([&, t] {
            F64 acc = FF_ZERO;
            for (uint64_t mask = t; mask < total; mask += jobs) acc ^= eval(uint32_t(mask));
            partial[t] = acc;
        });
    }
    for (auto& th : threads) th.join();
    F64 acc = FF_ZERO;
    for (F64 p : partial) acc ^= p;
    return acc;
}

} // namespace lcmod
