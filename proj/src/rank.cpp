#include "syzygy/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace syz::fp {

SparseMatrix::SparseMatrix(PrimeField f, u32 rows, u32 cols, std::vector<Entry> entries)
    : f_(f), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    for (const Entry& e : entries_) {
        if (e.row >= rows_ || e.col >= cols_)
            throw ValidationError("sparse entry out of range");
        if (e.val == 0 || e.val >= f_.modulus())
            throw ValidationError("sparse entry not a reduced nonzero field element");
    }
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    for (size_t i = 1; i < entries_.size(); ++i) {
        if (entries_[i].col == entries_[i - 1].col && entries_[i].row == entries_[i - 1].row)
            throw ValidationError("duplicate sparse entry position");
    }
}

SparseMatrix SparseMatrix::identity(PrimeField f, u32 n) {
    std::vector<Entry> es;
    es.reserve(n);
    for (u32 i = 0; i < n; ++i) es.push_back({i, i, 1});
    return SparseMatrix(f, n, n, std::move(es));
}

SparseMatrix SparseMatrix::from_rows(PrimeField f, const std::vector<std::vector<u64>>& rows) {
    u32 r = u32(rows.size());
    u32 c = r ? u32(rows[0].size()) : 0;
    std::vector<Entry> es;
    for (u32 i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw ValidationError("ragged dense rows");
        for (u32 j = 0; j < c; ++j) {
            u64 v = rows[i][j] % f.modulus();
            if (v) es.push_back({i, j, v});
        }
    }
    return SparseMatrix(f, r, c, std::move(es));
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<Entry> es;
    es.reserve(entries_.size());
    for (const Entry& e : entries_) es.push_back({e.col, e.row, e.val});
    return SparseMatrix(f_, cols_, rows_, std::move(es));
}

std::vector<u64> SparseMatrix::apply(const std::vector<u64>& x) const {
    if (x.size() != cols_) throw ComputeError("apply: size mismatch");
    std::vector<u64> y(rows_, 0);
    for (const Entry& e : entries_)
        y[e.row] = f_.add(y[e.row], f_.mul(e.val, x[e.col]));
    return y;
}

std::vector<std::vector<u64>> SparseMatrix::to_dense() const {
    std::vector<std::vector<u64>> d(rows_, std::vector<u64>(cols_, 0));
    for (const Entry& e : entries_) d[e.row][e.col] = e.val;
    return d;
}

u64 SparseMatrix::content_hash() const {
    u64 h = 0xcbf29ce484222325ULL;
    h = fnv1a(h, rows_);
    h = fnv1a(h, cols_);
    h = fnv1a(h, f_.modulus());
    for (const Entry& e : entries_) {
        h = fnv1a(h, e.row);
        h = fnv1a(h, e.col);
        h = fnv1a(h, e.val);
    }
    return h;
}

DenseMat DenseMat::mul(const DenseMat& o) const {
    if (cols_ != o.rows_) throw ComputeError("matrix product shape mismatch");
    DenseMat r(f_, rows_, o.cols_);
    for (u32 i = 0; i < rows_; ++i) {
        for (u32 k = 0; k < cols_; ++k) {
            u64 v = at(i, k);
            if (!v) continue;
            for (u32 j = 0; j < o.cols_; ++j) {
                u64 w = o.at(k, j);
                if (w) r.at(i, j) = f_.add(r.at(i, j), f_.mul(v, w));
            }
        }
    }
    return r;
}

bool DenseMat::is_zero() const {
    for (u64 v : a_)
        if (v) return false;
    return true;
}

std::vector<u64> DenseMat::apply(const std::vector<u64>& x) const {
    if (x.size() != cols_) throw ComputeError("apply: size mismatch");
    std::vector<u64> y(rows_, 0);
    for (u32 i = 0; i < rows_; ++i)
        for (u32 j = 0; j < cols_; ++j)
            if (at(i, j) && x[j]) y[i] = f_.add(y[i], f_.mul(at(i, j), x[j]));
    return y;
}

u64 dense_rank(const PrimeField& f, std::vector<std::vector<u64>>& rows) {
    size_t nr = rows.size();
    if (nr == 0) return 0;
    size_t nc = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < nc && r < nr; ++c) {
        size_t piv = r;
        while (piv < nr && rows[piv][c] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(rows[piv], rows[r]);
        u64 pinv = f.inv(rows[r][c]);
        const std::vector<u64>& pr = rows[r];
        for (size_t i = r + 1; i < nr; ++i) {
            u64 v = rows[i][c];
            if (!v) continue;
            u64 m = f.mul(v, pinv);
            std::vector<u64>& ri = rows[i];
            for (size_t j = c; j < nc; ++j) {
                if (pr[j]) ri[j] = f.sub(ri[j], f.mul(m, pr[j]));
            }
        }
        ++r;
    }
    return r;
}

std::vector<u32> rref(const PrimeField& f, std::vector<std::vector<u64>>& rows) {
    std::vector<u32> pivots;
    size_t nr = rows.size();
    if (nr == 0) return pivots;
    size_t nc = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < nc && r < nr; ++c) {
        size_t piv = r;
        while (piv < nr && rows[piv][c] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(rows[piv], rows[r]);
        u64 pinv = f.inv(rows[r][c]);
        for (size_t j = c; j < nc; ++j) rows[r][j] = f.mul(rows[r][j], pinv);
        for (size_t i = 0; i < nr; ++i) {
            if (i == r) continue;
            u64 v = rows[i][c];
            if (!v) continue;
            for (size_t j = c; j < nc; ++j)
                if (rows[r][j]) rows[i][j] = f.sub(rows[i][j], f.mul(v, rows[r][j]));
        }
        pivots.push_back(u32(c));
        ++r;
    }
    rows.resize(r);
    return pivots;
}

namespace {

// Structured elimination on the sparse representation: pick the lightest
// column, pivot on its shortest row, merge the others. Falls back to dense
// elimination once the active block passes the fill threshold.
class SparseEliminator {
public:
    SparseEliminator(const SparseMatrix& m, double dense_threshold)
        : f_(m.field()),
          nrows_(m.rows()),
          ncols_(m.cols()),
          threshold_(dense_threshold),
          rows_(m.rows()),
          col_count_(m.cols(), 0),
          col_rows_(m.cols()),
          row_done_(m.rows(), false),
          col_done_(m.cols(), false) {
        // entries are sorted (col, row); bucket into row lists
        std::vector<u32> row_len(nrows_, 0);
        for (const Entry& e : m.entries()) ++row_len[e.row];
        for (u32 i = 0; i < nrows_; ++i) rows_[i].reserve(row_len[i]);
        for (const Entry& e : m.entries()) rows_[e.row].push_back({e.col, e.val});
        for (auto& r : rows_) std::sort(r.begin(), r.end());
        for (const Entry& e : m.entries()) {
            ++col_count_[e.col];
            col_rows_[e.col].push_back(e.row);
        }
        nnz_ = m.nnz();
        active_rows_ = nrows_;
        active_cols_ = ncols_;
    }

    u64 run() {
        u64 rank = 0;
        while (active_rows_ > 0 && active_cols_ > 0) {
            if (should_go_dense()) {
                rank += dense_remainder();
                return rank;
            }
            u32 c = pick_column();
            if (c == UINT32_MAX) break;  // every active column is zero
            u32 pr = pick_pivot_row(c);
            eliminate(pr, c);
            ++rank;
        }
        return rank;
    }

private:
    using Term = std::pair<u32, u64>;  // (col, val)

    bool should_go_dense() const {
        if (active_rows_ == 0 || active_cols_ == 0) return false;
        double cells = double(active_rows_) * double(active_cols_);
        if (cells < 64.0 * 64.0) return false;
        return double(nnz_) > threshold_ * cells;
    }

    u32 pick_column() const {
        u32 best = UINT32_MAX;
        u32 best_count = UINT32_MAX;
        for (u32 c = 0; c < ncols_; ++c) {
            if (col_done_[c] || col_count_[c] == 0) continue;
            if (col_count_[c] < best_count) {
                best_count = col_count_[c];
                best = c;
                if (best_count == 1) break;
            }
        }
        return best;
    }

    bool row_has(u32 r, u32 c) const {
        const auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), Term{c, 0});
        return it != row.end() && it->first == c;
    }

    u32 pick_pivot_row(u32 c) {
        // compact stale incidences while scanning
        auto& inc = col_rows_[c];
        u32 best = UINT32_MAX;
        size_t best_len = std::numeric_limits<size_t>::max();
        size_t w = 0;
        for (u32 r : inc) {
            if (row_done_[r] || !row_has(r, c)) continue;
            inc[w++] = r;
            if (rows_[r].size() < best_len) {
                best_len = rows_[r].size();
                best = r;
            }
        }
        inc.resize(w);
        if (best == UINT32_MAX) throw InternalError("sparse pivot bookkeeping out of sync");
        return best;
    }

    u64 value_at(u32 r, u32 c) const {
        const auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), Term{c, 0});
        return (it != row.end() && it->first == c) ? it->second : 0;
    }

    void eliminate(u32 pr, u32 c) {
        u64 pv = value_at(pr, c);
        u64 pinv = f_.inv(pv);
        std::vector<u32> victims = col_rows_[c];  // already compacted by pick_pivot_row
        for (u32 r : victims) {
            if (r == pr) continue;
            merge_row(r, pr, c, pinv);
        }
        // retire pivot row and column
        for (const Term& t : rows_[pr]) --col_count_[t.first];
        nnz_ -= rows_[pr].size();
        rows_[pr].clear();
        rows_[pr].shrink_to_fit();
        row_done_[pr] = true;
        col_done_[c] = true;
        --active_rows_;
        --active_cols_;
        col_rows_[c].clear();
    }

    // rows_[r] -= (rows_[r][c] / pivot) * rows_[pr]
    void merge_row(u32 r, u32 pr, u32 c, u64 pinv) {
        const auto& src = rows_[pr];
        const auto& dst = rows_[r];
        u64 factor = f_.mul(value_at(r, c), pinv);
        std::vector<Term> out;
        out.reserve(dst.size() + src.size());
        size_t i = 0, j = 0;
        i64 dn = 0;  // nnz delta
        while (i < dst.size() || j < src.size()) {
            if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
                out.push_back(dst[i++]);
            } else if (i == dst.size() || src[j].first < dst[i].first) {
                u64 nv = f_.neg(f_.mul(factor, src[j].second));
                if (nv) {
                    out.push_back({src[j].first, nv});
                    ++col_count_[src[j].first];
                    col_rows_[src[j].first].push_back(r);
                    ++dn;
                }
                ++j;
            } else {
                u64 nv = f_.sub(dst[i].second, f_.mul(factor, src[j].second));
                if (nv) {
                    out.push_back({dst[i].first, nv});
                } else {
                    --col_count_[dst[i].first];
                    --dn;
                }
                ++i;
                ++j;
            }
        }
        nnz_ += dn;
        rows_[r] = std::move(out);
    }

    u64 dense_remainder() {
        // compact the active block and finish densely
        std::vector<u32> col_map(ncols_, UINT32_MAX);
        u32 nc = 0;
        for (u32 c = 0; c < ncols_; ++c)
            if (!col_done_[c] && col_count_[c] > 0) col_map[c] = nc++;
        if (nc == 0) return 0;
        std::vector<std::vector<u64>> dense;
        dense.reserve(active_rows_);
        for (u32 r = 0; r < nrows_; ++r) {
            if (row_done_[r] || rows_[r].empty()) continue;
            std::vector<u64> v(nc, 0);
            for (const Term& t : rows_[r]) v[col_map[t.first]] = t.second;
            dense.push_back(std::move(v));
        }
        return dense_rank(f_, dense);
    }

    PrimeField f_;
    u32 nrows_, ncols_;
    double threshold_;
    std::vector<std::vector<Term>> rows_;
    std::vector<u32> col_count_;
    std::vector<std::vector<u32>> col_rows_;
    std::vector<bool> row_done_, col_done_;
    size_t nnz_ = 0;
    u32 active_rows_ = 0, active_cols_ = 0;
};

}  // namespace

RankResult rank_and_kernel(const SparseMatrix& m, const RankOptions& opt) {
    if (m.nnz() == 0) return {0, m.cols()};
    SparseEliminator e(m, opt.dense_fallback_density);
    u64 r = e.run();
    return {r, m.cols() - r};
}

std::vector<std::vector<u64>> kernel_basis(const SparseMatrix& m) {
    const PrimeField& f = m.field();
    auto rows = m.to_dense();
    std::vector<u32> pivots = rref(f, rows);
    std::vector<bool> is_pivot(m.cols(), false);
    for (u32 c : pivots) is_pivot[c] = true;
    std::vector<std::vector<u64>> basis;
    for (u32 c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<u64> v(m.cols(), 0);
        v[c] = 1;
        for (size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = f.neg(rows[k][c]);
        basis.push_back(std::move(v));
    }
    return basis;
}

SpanSolver::SpanSolver(PrimeField f, const std::vector<std::vector<u64>>& basis)
    : f_(f), basis_size_(basis.size()), vec_len_(basis.empty() ? 0 : basis[0].size()) {
    red_.reserve(basis_size_);
    for (size_t i = 0; i < basis_size_; ++i) {
        if (basis[i].size() != vec_len_) throw ComputeError("span basis: ragged vectors");
        std::vector<u64> row(vec_len_ + basis_size_, 0);
        std::copy(basis[i].begin(), basis[i].end(), row.begin());
        row[vec_len_ + i] = 1;
        red_.push_back(std::move(row));
    }
    pivots_ = rref(f_, red_);
    for (u32 c : pivots_) {
        if (c >= vec_len_)
            throw ComputeError("coordinates_in_span: basis is linearly dependent");
    }
}

std::optional<std::vector<u64>> SpanSolver::solve(const std::vector<u64>& target) const {
    if (target.size() != vec_len_) throw ComputeError("span solve: size mismatch");
    std::vector<u64> t = target;
    std::vector<u64> coords(basis_size_, 0);
    for (size_t k = 0; k < pivots_.size(); ++k) {
        u64 v = t[pivots_[k]];
        if (!v) continue;
        const std::vector<u64>& row = red_[k];
        for (size_t j = 0; j < vec_len_; ++j)
            if (row[j]) t[j] = f_.sub(t[j], f_.mul(v, row[j]));
        for (size_t j = 0; j < basis_size_; ++j)
            if (row[vec_len_ + j])
                coords[j] = f_.add(coords[j], f_.mul(v, row[vec_len_ + j]));
    }
    for (u64 v : t)
        if (v) return std::nullopt;
    return coords;
}

std::optional<std::vector<u64>> coordinates_in_span(const PrimeField& f,
                                                    const std::vector<std::vector<u64>>& basis,
                                                    const std::vector<u64>& target) {
    return SpanSolver(f, basis).solve(target);
}

}  // namespace syz::fp
