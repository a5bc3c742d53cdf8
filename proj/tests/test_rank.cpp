#include <algorithm>

#include "doctest.h"
#include "syzygy/matrix.hpp"

using namespace syz;
using namespace syz::fp;

namespace {

SparseMatrix random_sparse(const PrimeField& f, Rng& rng, u32 rows, u32 cols, double density) {
    std::vector<Entry> es;
    for (u32 r = 0; r < rows; ++r)
        for (u32 c = 0; c < cols; ++c)
            if (rng.below(1000) < u64(density * 1000))
                es.push_back({r, c, rng.below(f.modulus() - 1) + 1});
    return SparseMatrix(f, rows, cols, std::move(es));
}

}  // namespace

TEST_CASE("rank of zero and identity matrices") {
    PrimeField f(1000003);
    auto z = SparseMatrix::zero(f, 5, 7);
    CHECK(rank_and_kernel(z).rank == 0);
    CHECK(rank_and_kernel(z).kernel_dim == 7);
    auto id = SparseMatrix::identity(f, 6);
    CHECK(rank_and_kernel(id).rank == 6);
    CHECK(rank_and_kernel(id).kernel_dim == 0);
}

TEST_CASE("3x3 over F_7 with a dependent row") {
    PrimeField f(7);
    auto m = SparseMatrix::from_rows(f, {{1, 2, 3}, {2, 4, 6}, {0, 1, 5}});
    auto rk = rank_and_kernel(m);
    CHECK(rk.rank == 2);
    CHECK(rk.kernel_dim == 1);
}

TEST_CASE("construction validates entries") {
    PrimeField f(7);
    CHECK_THROWS_AS(SparseMatrix(f, 2, 2, {{0, 0, 0}}), ValidationError);   // stored zero
    CHECK_THROWS_AS(SparseMatrix(f, 2, 2, {{0, 0, 9}}), ValidationError);   // not reduced
    CHECK_THROWS_AS(SparseMatrix(f, 2, 2, {{2, 0, 1}}), ValidationError);   // out of range
    CHECK_THROWS_AS(SparseMatrix(f, 2, 2, {{1, 1, 2}, {1, 1, 3}}), ValidationError);
}

TEST_CASE("rank is invariant under entry order and row permutation") {
    PrimeField f(1000003);
    Rng rng(11);
    for (int iter = 0; iter < 20; ++iter) {
        auto m = random_sparse(f, rng, 24, 17, 0.15);
        u64 r0 = rank_and_kernel(m).rank;

        std::vector<Entry> shuffled = m.entries();
        for (size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
        std::vector<u32> perm(m.rows());
        for (u32 i = 0; i < m.rows(); ++i) perm[i] = i;
        for (size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[rng.below(i)]);
        for (Entry& e : shuffled) e.row = perm[e.row];
        SparseMatrix permuted(f, m.rows(), m.cols(), std::move(shuffled));
        CHECK(rank_and_kernel(permuted).rank == r0);
    }
}

TEST_CASE("rank equals rank of the transpose") {
    PrimeField f(1000033);
    Rng rng(12);
    for (int iter = 0; iter < 20; ++iter) {
        auto m = random_sparse(f, rng, 15 + iter, 20, 0.2);
        CHECK(rank_and_kernel(m).rank == rank_and_kernel(m.transpose()).rank);
    }
}

TEST_CASE("rank is subadditive under horizontal concatenation") {
    PrimeField f(1000003);
    Rng rng(13);
    for (int iter = 0; iter < 20; ++iter) {
        auto a = random_sparse(f, rng, 12, 9, 0.25);
        auto b = random_sparse(f, rng, 12, 7, 0.25);
        std::vector<Entry> es = a.entries();
        for (Entry e : b.entries()) es.push_back({e.row, e.col + a.cols(), e.val});
        SparseMatrix ab(f, 12, a.cols() + b.cols(), std::move(es));
        CHECK(rank_and_kernel(ab).rank <= rank_and_kernel(a).rank + rank_and_kernel(b).rank);
    }
}

TEST_CASE("sparse elimination agrees with pure dense elimination") {
    PrimeField f(1000037);
    Rng rng(14);
    for (int iter = 0; iter < 15; ++iter) {
        auto m = random_sparse(f, rng, 40, 33, 0.05 + 0.05 * (iter % 5));
        auto dense = m.to_dense();
        u64 want = dense_rank(f, dense);
        CHECK(rank_and_kernel(m).rank == want);
        RankOptions always_dense{0.0};
        CHECK(rank_and_kernel(m, always_dense).rank == want);
    }
}

TEST_CASE("kernel basis vectors satisfy Mv = 0 and span the kernel") {
    PrimeField f(1000003);
    Rng rng(15);
    for (int iter = 0; iter < 10; ++iter) {
        auto m = random_sparse(f, rng, 14, 19, 0.2);
        auto basis = kernel_basis(m);
        CHECK(basis.size() == rank_and_kernel(m).kernel_dim);
        for (const auto& v : basis) {
            auto y = m.apply(v);
            for (u64 w : y) CHECK(w == 0);
        }
    }
}

TEST_CASE("coordinates_in_span basic cases") {
    PrimeField f(1000003);
    std::vector<std::vector<u64>> e12 = {{1, 0}, {0, 1}};
    auto c = coordinates_in_span(f, e12, {1, 1});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 1);
    CHECK((*c)[1] == 1);

    std::vector<std::vector<u64>> e1 = {{1, 0}};
    CHECK_FALSE(coordinates_in_span(f, e1, {0, 1}).has_value());
}

TEST_CASE("coordinates_in_span over F_5 example") {
    PrimeField f(5);
    std::vector<std::vector<u64>> basis = {{1, 2}, {0, 1}};
    auto c = coordinates_in_span(f, basis, {2, 0});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 2);
    CHECK((*c)[1] == 1);  // 2*(1,2) + 1*(0,1) = (2,5) = (2,0) mod 5
}

TEST_CASE("dependent basis is a caller error") {
    PrimeField f(7);
    std::vector<std::vector<u64>> dep = {{1, 2}, {2, 4}};
    CHECK_THROWS_AS(coordinates_in_span(f, dep, {1, 2}), ComputeError);
}

TEST_CASE("span solver reproduces targets exactly") {
    PrimeField f(1000033);
    Rng rng(16);
    for (int iter = 0; iter < 10; ++iter) {
        size_t len = 12, n = 5;
        std::vector<std::vector<u64>> basis;
        for (size_t i = 0; i < n; ++i) {
            std::vector<u64> v(len);
            for (auto& x : v) x = rng.below(f.modulus());
            basis.push_back(v);
        }
        SpanSolver solver(f, basis);
        std::vector<u64> coeff(n), target(len, 0);
        for (size_t i = 0; i < n; ++i) coeff[i] = rng.below(f.modulus());
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < len; ++j)
                target[j] = f.add(target[j], f.mul(coeff[i], basis[i][j]));
        auto got = solver.solve(target);
        REQUIRE(got.has_value());
        CHECK(*got == coeff);
    }
}
