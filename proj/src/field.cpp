#include "syzygy/field.hpp"

namespace syz::fp {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return u64((u128(a) * b) % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // this base set decides primality for every n < 2^64
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

u64 next_prime(u64 n) {
    if (n <= 2) return 2;
    if ((n & 1) == 0) ++n;
    while (!is_prime_u64(n)) n += 2;
    return n;
}

PrimeField::PrimeField(u64 p) : p_(p) {
    if (p >= (u64(1) << 62)) throw ValidationError("modulus does not fit in 62 bits");
    if (!is_prime_u64(p)) throw ValidationError("modulus " + std::to_string(p) + " is not prime");
}

u64 PrimeField::pow(u64 a, u64 e) const { return powmod(a, e, p_); }

u64 PrimeField::inv(u64 a) const {
    if (a == 0) throw ComputeError("division by zero in F_" + std::to_string(p_));
    // extended Euclid; p prime so gcd is 1
    i64 t = 0, nt = 1;
    i64 r = i64(p_), nr = i64(a % p_);
    while (nr != 0) {
        i64 q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (t < 0) t += i64(p_);
    return u64(t);
}

u64 PrimeField::from_decimal(const std::string& s) const {
    if (s.empty()) throw ParseError("empty integer literal");
    size_t i = 0;
    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        i = 1;
    }
    if (i == s.size()) throw ParseError("sign without digits: '" + s + "'");
    u64 acc = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw ParseError("bad integer literal: '" + s + "'");
        acc = add(mul(acc, 10), u64(c - '0'));
    }
    return negative ? neg(acc) : acc;
}

bool PrimeField::is_square(u64 a) const {
    if (a == 0) return true;
    if (p_ == 2) return true;
    return pow(a, (p_ - 1) / 2) == 1;
}

u64 PrimeField::sqrt(u64 a) const {
    if (a == 0) return 0;
    if (p_ == 2) return a;
    if (!is_square(a)) throw ComputeError("sqrt of a non-residue");
    if (p_ % 4 == 3) return pow(a, (p_ + 1) / 4);
    // Tonelli-Shanks
    u64 q = p_ - 1;
    u64 s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (is_square(z)) ++z;
    u64 m = s;
    u64 c = pow(z, q);
    u64 t = pow(a, q);
    u64 r = pow(a, (q + 1) / 2);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mul(tt, tt);
            ++i;
            if (i == m) throw InternalError("Tonelli-Shanks failed");
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mul(b, b);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    return r;
}

}  // namespace syz::fp
