#include <algorithm>

#include "doctest.h"
#include "syzygy/koszul.hpp"
#include "syzygy/synthetic.hpp"

using namespace syz;
using namespace syz::fp;
using namespace syz::koszul;

// ---------------------------------------------------------------------------
// Brute-force oracle for the degree-d rational normal curve, kept independent
// of the engine: own subset enumeration, dense matrices, own elimination.
namespace oracle {

constexpr u64 P = 1000003;

u64 rank_dense(std::vector<std::vector<u64>> m) {
    if (m.empty() || m[0].empty()) return 0;
    size_t nr = m.size(), nc = m[0].size(), r = 0;
    auto powmod = [](u64 a, u64 e) {
        u64 res = 1;
        while (e) {
            if (e & 1) res = (u128(res) * a) % P;
            a = (u128(a) * a) % P;
            e >>= 1;
        }
        return res;
    };
    for (size_t c = 0; c < nc && r < nr; ++c) {
        size_t piv = r;
        while (piv < nr && m[piv][c] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(m[piv], m[r]);
        u64 inv = powmod(m[r][c], P - 2);
        for (size_t i = r + 1; i < nr; ++i) {
            if (!m[i][c]) continue;
            u64 f = (u128(m[i][c]) * inv) % P;
            for (size_t j = 0; j < nc; ++j)
                m[i][j] = (m[i][j] + P - u64((u128(f) * m[r][j]) % P)) % P;
        }
        ++r;
    }
    return r;
}

void gen_subsets(int n, int p, int start, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
    if (int(cur.size()) == p) {
        out.push_back(cur);
        return;
    }
    for (int v = start; v < n; ++v) {
        cur.push_back(v);
        gen_subsets(n, p, v + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> subsets(int n, int p) {
    std::vector<std::vector<int>> out;
    if (p < 0 || p > n) return out;
    std::vector<int> cur;
    gen_subsets(n, p, 0, cur, out);
    return out;
}

struct Diff {
    std::vector<std::vector<u64>> mat;
    size_t rows, cols;
};

// multiplication by v_i shifts the t-exponent by i; B_q has dimension dq+1
Diff differential(int d, int p, int q) {
    int n = d + 1;
    auto dimB = [&](int qq) { return qq >= 0 ? d * qq + 1 : 0; };
    auto from = subsets(n, p);
    auto to = subsets(n, p - 1);
    size_t cols = from.size() * dimB(q);
    size_t rows = p >= 1 ? to.size() * dimB(q + 1) : 0;
    Diff out{std::vector<std::vector<u64>>(rows, std::vector<u64>(cols, 0)), rows, cols};
    if (rows == 0 || cols == 0) return out;
    auto to_index = [&](const std::vector<int>& s) {
        return size_t(std::lower_bound(to.begin(), to.end(), s) - to.begin());
    };
    for (size_t si = 0; si < from.size(); ++si) {
        for (int e = 0; e < dimB(q); ++e) {
            size_t col = si * dimB(q) + e;
            for (size_t j = 0; j < from[si].size(); ++j) {
                int i = from[si][j];
                std::vector<int> sub;
                for (int x : from[si])
                    if (x != i) sub.push_back(x);
                size_t row = to_index(sub) * dimB(q + 1) + (e + i);
                u64 val = (j % 2 == 0) ? 1 : P - 1;
                out.mat[row][col] = (out.mat[row][col] + val) % P;
            }
        }
    }
    return out;
}

u64 kpq(int d, int p, int q) {
    Diff out = differential(d, p, q);
    Diff in = differential(d, p + 1, q - 1);
    return out.cols - rank_dense(out.mat) - rank_dense(in.mat);
}

}  // namespace oracle

// ---------------------------------------------------------------------------

TEST_CASE("single wedge differential on a two-dimensional target") {
    PrimeField f(1000003);
    // n=2, B_0 one-dimensional, B_1 two-dimensional, mu_0 = (1,0)^T, mu_1 = (0,1)^T
    DenseMat m0(f, 2, 1), m1(f, 2, 1);
    m0.at(0, 0) = 1;
    m1.at(1, 0) = 1;
    GradedModule m(f, 2, 0, {1, 2}, {{m0, m1}}, true);
    auto d10 = build_differential(m, 1, 0);
    REQUIRE(d10.rows() == 2);
    REQUIRE(d10.cols() == 2);
    auto dense = d10.to_dense();
    CHECK(dense[0][0] == 1);
    CHECK(dense[1][1] == 1);
    CHECK(dense[0][1] == 0);
    CHECK(dense[1][0] == 0);
}

TEST_CASE("empty exterior powers give empty differentials") {
    PrimeField f(7);
    auto m = rational_normal_curve_module(f, 2, 2);  // n = 3
    auto d = build_differential(m, 4, 0);            // p > n
    CHECK(d.cols() == 0);
    CHECK(rank_and_kernel(d).rank == 0);
}

TEST_CASE("module law verification") {
    PrimeField f(1000003);
    SUBCASE("zero multiplications are a module") {
        DenseMat z(f, 1, 1);
        GradedModule m(f, 2, 0, {1, 1, 1}, {{z, z}, {z, z}}, true);
        CHECK_FALSE(verify_graded_module(m).has_value());
    }
    SUBCASE("scalar actions constant across degrees are a module") {
        DenseMat one(f, 1, 1), two(f, 1, 1);
        one.at(0, 0) = 1;
        two.at(0, 0) = 2;
        GradedModule m(f, 2, 0, {1, 1, 1}, {{one, two}, {one, two}}, true);
        CHECK_FALSE(verify_graded_module(m).has_value());
    }
    SUBCASE("a degree-dependent scalar action is flagged with the witness") {
        DenseMat one(f, 1, 1), two(f, 1, 1);
        one.at(0, 0) = 1;
        two.at(0, 0) = 2;
        // v_1 acts by 1 everywhere, v_2 acts by 1 then by 2: products 1*1 vs 2*1
        GradedModule m(f, 2, 0, {1, 1, 1}, {{one, one}, {one, two}}, true);
        auto v = verify_graded_module(m);
        REQUIRE(v.has_value());
        CHECK(v->q == 0);
        CHECK(v->i == 0);
        CHECK(v->j == 1);
    }
    SUBCASE("rational normal curve modules satisfy the law") {
        for (u32 d = 1; d <= 4; ++d)
            CHECK_FALSE(verify_graded_module(rational_normal_curve_module(f, d, 3)).has_value());
    }
}

TEST_CASE("twisted cubic strand agrees with the brute-force oracle") {
    PrimeField f(oracle::P);
    auto m = rational_normal_curve_module(f, 3, 2);
    // frozen oracle values: q = 1 strand is (3, 2, 0)
    CHECK(oracle::kpq(3, 1, 1) == 3);
    CHECK(oracle::kpq(3, 2, 1) == 2);
    CHECK(oracle::kpq(3, 3, 1) == 0);
    CHECK(koszul_dimension(m, 1, 1) == 3);
    CHECK(koszul_dimension(m, 2, 1) == 2);
    CHECK(koszul_dimension(m, 3, 1) == 0);
    // the differential feeding the (2,1) cell has rank 4
    auto d30 = build_differential(m, 3, 0);
    CHECK(rank_and_kernel(d30).rank == 4);
    CHECK(oracle::rank_dense(oracle::differential(3, 3, 0).mat) == 4);
    // cross-check a rectangle of cells against the oracle
    for (int p = 1; p <= 4; ++p)
        for (int q = 0; q <= 1; ++q)
            CHECK(koszul_dimension(m, u32(p), q) == oracle::kpq(3, p, q));
}

TEST_CASE("composition of consecutive differentials vanishes") {
    PrimeField f(1000033);
    for (u32 d = 2; d <= 4; ++d) {
        auto m = rational_normal_curve_module(f, d, 2);
        for (u32 p = 1; p + 1 <= m.n(); ++p) {
            for (int q = 0; q <= 1; ++q) {
                auto d1 = build_differential(m, p, q);
                auto d2 = build_differential(m, p + 1, q - 1);
                if (d2.cols() == 0 || d1.rows() == 0) continue;
                // feed each basis vector of the source through both maps
                for (u32 c = 0; c < d2.cols(); ++c) {
                    std::vector<u64> e(d2.cols(), 0);
                    e[c] = 1;
                    auto y = d1.apply(d2.apply(e));
                    for (u64 v : y) CHECK(v == 0);
                }
            }
        }
    }
}

TEST_CASE("koszul dimensions are invariant under permuting the basis of V") {
    PrimeField f(1000003);
    auto m = rational_normal_curve_module(f, 3, 2);
    std::vector<u32> perm = {2, 0, 3, 1};
    std::vector<std::vector<DenseMat>> mult;
    for (int q = 0; q < 2; ++q) {
        std::vector<DenseMat> level;
        for (u32 i = 0; i < 4; ++i) level.push_back(m.mu(q, perm[i]));
        mult.push_back(std::move(level));
    }
    GradedModule permuted(f, 4, 0, {1, 4, 7}, std::move(mult), true);
    CHECK_FALSE(verify_graded_module(permuted).has_value());
    for (u32 p = 1; p <= 4; ++p)
        CHECK(koszul_dimension(permuted, p, 1) == koszul_dimension(m, p, 1));
}

TEST_CASE("a non-module input that survives shape checks is caught") {
    PrimeField f(7);
    DenseMat a(f, 1, 2), b(f, 1, 2);  // B_0 -> B_1
    a.at(0, 0) = 1;
    b.at(0, 1) = 1;
    DenseMat c(f, 2, 1), d(f, 2, 1);  // B_1 -> B_2
    c.at(0, 0) = 1;
    d.at(1, 0) = 1;
    GradedModule m(f, 2, 0, {2, 1, 2}, {{a, b}, {c, d}}, true);
    REQUIRE(verify_graded_module(m).has_value());
    CHECK_THROWS_AS(koszul_dimension(m, 1, 1), InternalError);
}

TEST_CASE("module concentrated in degree zero") {
    PrimeField f(1000003);
    u32 n = 5;
    std::vector<DenseMat> level(n, DenseMat(f, 0, 1));
    GradedModule m(f, n, 0, {1, 0}, {level}, true);
    for (u32 p = 0; p <= n; ++p) CHECK(koszul_dimension(m, p, 0) == binom(n, p));
    CHECK(euler_strand(m, n) == 1);
    auto table = betti_table(m, 0, int(n), 0, 1);
    for (u32 p = 0; p <= n; ++p) {
        CHECK(table.dim(int(p), 0) == binom(n, p));
        CHECK(table.dim(int(p), 1) == 0);
    }
}

TEST_CASE("euler characteristic of strands from graded dimensions") {
    PrimeField f(1000003);
    auto zero_mult = [&](const std::vector<u32>& dims, u32 n) {
        std::vector<std::vector<DenseMat>> mult;
        for (size_t q = 0; q + 1 < dims.size(); ++q)
            mult.emplace_back(n, DenseMat(f, dims[q + 1], dims[q]));
        return mult;
    };
    SUBCASE("dims 1,4,10 with n=4 at top weight 2") {
        GradedModule m(f, 4, 0, {1, 4, 10}, zero_mult({1, 4, 10}, 4), true);
        CHECK(euler_strand(m, 2) == 0);  // 6 - 16 + 10
    }
    SUBCASE("dims 1,6,16,26 with n=6 at top weight 3") {
        GradedModule m(f, 6, 0, {1, 6, 16, 26}, zero_mult({1, 6, 16, 26}, 6), true);
        CHECK(euler_strand(m, 3) == 0);  // 20 - 90 + 96 - 26
    }
    SUBCASE("missing degrees are an error") {
        GradedModule m(f, 4, 0, {1, 4}, zero_mult({1, 4}, 4), true);
        CHECK_THROWS_AS(euler_strand(m, 2), ComputeError);
    }
}

TEST_CASE("betti table shares differential ranks and serializes") {
    PrimeField f(1000003);
    auto m = rational_normal_curve_module(f, 3, 2);
    auto table = betti_table(m, 0, 4, 0, 1);
    CHECK(table.dim(1, 1) == 3);
    CHECK(table.dim(2, 1) == 2);
    CHECK(table.dim(3, 1) == 0);
    for (int p = 0; p < 4; ++p)
        CHECK(table.cell(p, 1).rank_in == table.cell(p + 1, 0).rank_out);
    auto csv = table.csv();
    CHECK(csv.find("p,q,dim,rank_out,rank_in,prime") == 0);
    CHECK(csv.find("2,1,2,18,4,1000003") != std::string::npos);
    auto diagram = table.diagram();
    CHECK(diagram.find("3") != std::string::npos);

    SUBCASE("empty range yields an empty table") {
        auto empty = betti_table(m, 2, 1, 0, 1);
        CHECK(empty.cells().empty());
    }
    SUBCASE("thread count does not change results") {
        auto threaded = betti_table(m, 0, 4, 0, 1, 4);
        CHECK(threaded.cells().size() == table.cells().size());
        for (const auto& [key, cell] : table.cells()) {
            CHECK(threaded.cell(key.first, key.second).dim == cell.dim);
            CHECK(threaded.cell(key.first, key.second).rank_out == cell.rank_out);
        }
    }
}

TEST_CASE("duality gap refuses without h1 certificates") {
    PrimeField f(1000003);
    auto m = rational_normal_curve_module(f, 3, 2);
    auto a = betti_table(m, 0, 4, 0, 1);
    auto b = betti_table(m, 0, 4, 0, 1);
    CHECK_THROWS_AS(duality_gap(a, b, 4, 1, 1), ComputeError);
}
