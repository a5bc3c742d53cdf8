#pragma once

#include <array>
#include <vector>

#include "syzygy/common.hpp"

namespace syz::koszul {

// Pascal triangle cache; n stays tiny (dim of H^0), so u64 never overflows.
inline u64 binom(u32 n, i64 k) {
    if (k < 0 || u32(k) > n) return 0;
    static thread_local std::vector<std::vector<u64>> table;
    if (table.size() <= n) {
        size_t old = table.size();
        table.resize(n + 1);
        for (size_t i = old; i <= n; ++i) {
            table[i].assign(i + 1, 1);
            for (size_t j = 1; j < i; ++j)
                table[i][j] = table[i - 1][j - 1] + table[i - 1][j];
        }
    }
    return table[n][size_t(k)];
}

// Bijection between strictly increasing p-tuples from {0..n-1} and
// [0, C(n,p)), ordered lexicographically on the tuples.
class WedgeBasis {
public:
    WedgeBasis(u32 n, u32 p) : n_(n), p_(p), count_(binom(n, p)) {}

    u32 n() const { return n_; }
    u32 p() const { return p_; }
    u64 count() const { return count_; }

    u64 rank(const std::vector<u32>& tuple) const {
        if (tuple.size() != p_) throw InternalError("wedge rank: wrong arity");
        u64 r = 0;
        u32 prev = 0;  // next admissible value
        for (u32 i = 0; i < p_; ++i) {
            u32 a = tuple[i];
            if (a < prev || a >= n_ || (i > 0 && tuple[i - 1] >= a))
                throw InternalError("wedge rank: tuple not strictly increasing in range");
            for (u32 v = prev; v < a; ++v) r += binom(n_ - 1 - v, i64(p_) - 1 - i);
            prev = a + 1;
        }
        return r;
    }

    std::vector<u32> unrank(u64 index) const {
        if (index >= count_) throw InternalError("wedge unrank: index out of range");
        std::vector<u32> tuple(p_);
        u32 v = 0;
        u64 rem = index;
        for (u32 i = 0; i < p_; ++i) {
            while (true) {
                u64 block = binom(n_ - 1 - v, i64(p_) - 1 - i);
                if (rem < block) break;
                rem -= block;
                ++v;
            }
            tuple[i] = v++;
        }
        return tuple;
    }

private:
    u32 n_, p_;
    u64 count_;
};

}  // namespace syz::koszul
