#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syzygy/matrix.hpp"
#include "syzygy/wedge.hpp"

namespace syz::koszul {

// A graded module over the symmetric algebra of V, presented by its graded
// dimensions and the action of a fixed basis of V in each degree. B_q lives at
// dims[q - q_min]; mult[q - q_min][i] sends B_q to B_{q+1}.
class GradedModule {
public:
    GradedModule(fp::PrimeField field, u32 n, int q_min, std::vector<u32> dims,
                 std::vector<std::vector<fp::DenseMat>> mult, bool zero_below_qmin);

    const fp::PrimeField& field() const { return field_; }
    u32 n() const { return n_; }
    int q_min() const { return q_min_; }
    int q_max() const { return q_min_ + int(dims_.size()) - 1; }

    bool degree_known(int q) const { return q >= q_min_ ? q <= q_max() : zero_below_; }
    u64 dim(int q) const;
    const fp::DenseMat& mu(int q, u32 i) const;

    // certified h^1 values attached by the curve backend (degree -> h^1)
    const std::map<int, u64>& h1_certificates() const { return h1_; }
    void certify_h1(int q, u64 v) { h1_[q] = v; }

    const std::string& description() const { return desc_; }
    void set_description(std::string d) { desc_ = std::move(d); }

private:
    fp::PrimeField field_;
    u32 n_;
    int q_min_;
    bool zero_below_;
    std::vector<u32> dims_;
    std::vector<std::vector<fp::DenseMat>> mult_;
    std::map<int, u64> h1_;
    std::string desc_;
};

struct ModuleViolation {
    int q;
    u32 i, j;
    std::string message;
};

// checks the S(V)-module law mu_{q+1,i} mu_{q,j} = mu_{q+1,j} mu_{q,i}
std::optional<ModuleViolation> verify_graded_module(const GradedModule& m);

// d_{p,q}: wedge^p V (x) B_q -> wedge^{p-1} V (x) B_{q+1}, built directly in
// sparse form, column block by column block. Indexing is wedge-major:
// index = wedge_rank * dim(B) + vector_index.
fp::SparseMatrix build_differential(const GradedModule& m, u32 p, int q);

u64 koszul_dimension(const GradedModule& m, u32 p, int q);

struct BettiCell {
    u64 dim = 0;
    u64 rank_out = 0, rank_in = 0;
    u64 rows_out = 0, cols_out = 0, rows_in = 0, cols_in = 0;
};

class BettiTable {
public:
    BettiTable() = default;
    BettiTable(u64 prime, int p_lo, int p_hi, int q_lo, int q_hi)
        : prime_(prime), p_lo_(p_lo), p_hi_(p_hi), q_lo_(q_lo), q_hi_(q_hi) {}

    u64 prime() const { return prime_; }
    int p_lo() const { return p_lo_; }
    int p_hi() const { return p_hi_; }
    int q_lo() const { return q_lo_; }
    int q_hi() const { return q_hi_; }

    void set(int p, int q, BettiCell cell) { cells_[{p, q}] = cell; }
    const BettiCell& cell(int p, int q) const;
    u64 dim(int p, int q) const { return cell(p, q).dim; }
    bool has(int p, int q) const { return cells_.count({p, q}) > 0; }
    const std::map<std::pair<int, int>, BettiCell>& cells() const { return cells_; }

    const std::map<int, u64>& h1() const { return h1_; }
    void set_h1(std::map<int, u64> h) { h1_ = std::move(h); }

    std::string diagram() const;  // aligned grid, rows q, columns p
    std::string csv() const;      // p,q,dim,rank_out,rank_in,prime

private:
    u64 prime_ = 0;
    int p_lo_ = 0, p_hi_ = -1, q_lo_ = 0, q_hi_ = -1;
    std::map<std::pair<int, int>, BettiCell> cells_;
    std::map<int, u64> h1_;
};

// Computes every cell in the rectangle; the rank of each differential is
// computed once and shared between the two cells that use it. `threads` > 1
// distributes independent differentials over a small worker pool; results do
// not depend on the schedule.
BettiTable betti_table(const GradedModule& m, int p_lo, int p_hi, int q_lo, int q_hi,
                       unsigned threads = 1);

// alternating sum C(n,p_top) dim B_0 - C(n,p_top-1) dim B_1 + ... as an exact
// integer; no reduction mod p is involved
i64 euler_strand(const GradedModule& m, u32 p_top);

// dim K_{p,q}(C,L) - dim K_{r-1-p,2-q}(C;K_C,L) where r = h^0(L) - 1.
// Refuses unless the untwisted table certifies h^1(L^{q-1}) = h^1(L^q) = 0.
i64 duality_gap(const BettiTable& untwisted, const BettiTable& twisted_canonical, u32 r,
                int p, int q);

}  // namespace syz::koszul
