#include "doctest.h"
#include "syzygy/field.hpp"

using namespace syz;
using namespace syz::fp;

TEST_CASE("primality is decided deterministically") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(1000003));
    CHECK(is_prime_u64(1000033));
    CHECK(is_prime_u64(1000037));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(1000001));  // 101 * 9901
    CHECK_FALSE(is_prime_u64(u64(1000003) * 1000033));
    CHECK(next_prime(1000000) == 1000003);
}

TEST_CASE("construction rejects composites and oversized moduli") {
    CHECK_THROWS_AS(PrimeField(1000001), ValidationError);
    CHECK_THROWS_AS(PrimeField(0), ValidationError);
    CHECK_THROWS_AS(PrimeField(u64(1) << 62), ValidationError);
    CHECK_NOTHROW(PrimeField((u64(1) << 61) - 1));  // Mersenne prime, 61 bits
}

TEST_CASE("field arithmetic round-trips") {
    PrimeField f(1000003);
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        u64 a = rng.below(f.modulus() - 1) + 1;
        u64 b = rng.below(f.modulus());
        CHECK(f.mul(a, f.inv(a)) == 1);
        CHECK(f.sub(f.add(b, a), a) == b);
        CHECK(f.add(b, f.neg(b)) == 0);
        CHECK(f.pow(a, f.modulus() - 1) == 1);  // Fermat
    }
}

TEST_CASE("decimal reduction handles signs and big literals") {
    PrimeField f(1000003);
    CHECK(f.from_decimal("0") == 0);
    CHECK(f.from_decimal("-1") == 1000002);
    CHECK(f.from_decimal("1000003") == 0);
    // 123456789012345678901234567890 = 1000003 * q + 671935
    CHECK(f.from_decimal("123456789012345678901234567890") == 671935);
    CHECK_THROWS_AS(f.from_decimal(""), ParseError);
    CHECK_THROWS_AS(f.from_decimal("12a"), ParseError);
}

TEST_CASE("square roots of residues") {
    PrimeField f(1000033);  // p = 1 mod 4, exercises Tonelli-Shanks
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        u64 a = rng.below(f.modulus() - 1) + 1;
        u64 sq = f.mul(a, a);
        CHECK(f.is_square(sq));
        u64 r = f.sqrt(sq);
        CHECK(f.mul(r, r) == sq);
    }
}
