#pragma once

#include <string>
#include <vector>

#include "syzygy/common.hpp"

namespace syz::fp {

// Arithmetic of Z/p for a prime p < 2^62. Elements are plain u64 values in
// [0, p); the field object carries the modulus. Construction runs a
// deterministic Miller-Rabin test and rejects composites.
class PrimeField {
public:
    explicit PrimeField(u64 p);

    u64 modulus() const { return p_; }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        if (s >= p_) s -= p_;
        return s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const { return u64((u128(a) * b) % p_); }
    u64 pow(u64 a, u64 e) const;
    u64 inv(u64 a) const;

    // reduce a possibly negative machine integer
    u64 from_int(i64 v) const {
        i64 m = v % i64(p_);
        if (m < 0) m += i64(p_);
        return u64(m);
    }
    // reduce a decimal string (arbitrary length, optional sign)
    u64 from_decimal(const std::string& s) const;

    bool is_square(u64 a) const;   // Euler criterion; 0 counts as a square
    u64 sqrt(u64 a) const;         // Tonelli-Shanks, throws if non-residue

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
    u64 p_;
};

// deterministic for all 64-bit inputs (fixed Miller-Rabin base set)
bool is_prime_u64(u64 n);

// smallest prime >= n (n >= 2)
u64 next_prime(u64 n);

}  // namespace syz::fp
