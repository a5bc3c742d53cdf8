#pragma once

#include <optional>
#include <vector>

#include "syzygy/field.hpp"

namespace syz::fp {

struct Entry {
    u32 row;
    u32 col;
    u64 val;
};

// Immutable sparse matrix over a prime field. Entries are kept sorted by
// (col, row); construction rejects out-of-range indices, duplicate positions
// and stored zeros.
class SparseMatrix {
public:
    SparseMatrix(PrimeField f, u32 rows, u32 cols, std::vector<Entry> entries);

    static SparseMatrix zero(PrimeField f, u32 rows, u32 cols) {
        return SparseMatrix(f, rows, cols, {});
    }
    static SparseMatrix identity(PrimeField f, u32 n);
    static SparseMatrix from_rows(PrimeField f, const std::vector<std::vector<u64>>& rows);

    const PrimeField& field() const { return f_; }
    u32 rows() const { return rows_; }
    u32 cols() const { return cols_; }
    size_t nnz() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

    SparseMatrix transpose() const;
    std::vector<u64> apply(const std::vector<u64>& x) const;  // M * x
    std::vector<std::vector<u64>> to_dense() const;
    u64 content_hash() const;

private:
    PrimeField f_;
    u32 rows_, cols_;
    std::vector<Entry> entries_;
};

// Dense matrix, row major. Used for multiplication tables and for the dense
// elimination fallback; sizes stay small enough that simplicity wins.
class DenseMat {
public:
    DenseMat(PrimeField f, u32 rows, u32 cols)
        : f_(f), rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}

    const PrimeField& field() const { return f_; }
    u32 rows() const { return rows_; }
    u32 cols() const { return cols_; }

    u64& at(u32 r, u32 c) { return a_[size_t(r) * cols_ + c]; }
    u64 at(u32 r, u32 c) const { return a_[size_t(r) * cols_ + c]; }

    DenseMat mul(const DenseMat& o) const;
    bool is_zero() const;
    bool operator==(const DenseMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    std::vector<u64> apply(const std::vector<u64>& x) const;

private:
    PrimeField f_;
    u32 rows_, cols_;
    std::vector<u64> a_;
};

struct RankResult {
    u64 rank;
    u64 kernel_dim;
};

struct RankOptions {
    double dense_fallback_density = 0.20;
};

// rank + nullity of M; rank-only, never materializes a kernel basis
RankResult rank_and_kernel(const SparseMatrix& m, const RankOptions& opt = {});

// rank of a dense row set (consumed in place)
u64 dense_rank(const PrimeField& f, std::vector<std::vector<u64>>& rows);

// basis of { x : Mx = 0 }, materialized on demand only
std::vector<std::vector<u64>> kernel_basis(const SparseMatrix& m);

// Reduced row echelon form of `rows` (in place); returns pivot column list.
std::vector<u32> rref(const PrimeField& f, std::vector<std::vector<u64>>& rows);

// Repeated "coordinates of v in span(basis)" queries against a fixed basis.
// Construction fails on a dependent basis (caller bug by contract).
class SpanSolver {
public:
    SpanSolver(PrimeField f, const std::vector<std::vector<u64>>& basis);

    // coordinates c with sum c_i basis_i = target, or nullopt if not in span
    std::optional<std::vector<u64>> solve(const std::vector<u64>& target) const;

    size_t dim() const { return basis_size_; }

private:
    PrimeField f_;
    size_t basis_size_;
    size_t vec_len_;
    std::vector<std::vector<u64>> red_;  // rref of [basis^T | I]
    std::vector<u32> pivots_;
};

std::optional<std::vector<u64>> coordinates_in_span(const PrimeField& f,
                                                    const std::vector<std::vector<u64>>& basis,
                                                    const std::vector<u64>& target);

}  // namespace syz::fp
