#include "syzygy/koszul.hpp"

#include <algorithm>
#include <sstream>

namespace syz::koszul {

GradedModule::GradedModule(fp::PrimeField field, u32 n, int q_min, std::vector<u32> dims,
                           std::vector<std::vector<fp::DenseMat>> mult, bool zero_below_qmin)
    : field_(field),
      n_(n),
      q_min_(q_min),
      zero_below_(zero_below_qmin),
      dims_(std::move(dims)),
      mult_(std::move(mult)) {
    if (dims_.empty()) throw ValidationError("graded module needs at least one degree");
    if (mult_.size() + 1 != dims_.size())
        throw ValidationError("graded module: need one multiplication level per degree step");
    for (size_t qi = 0; qi < mult_.size(); ++qi) {
        if (mult_[qi].size() != n_)
            throw ValidationError("graded module: expected one matrix per basis vector of V");
        for (const fp::DenseMat& m : mult_[qi]) {
            if (m.rows() != dims_[qi + 1] || m.cols() != dims_[qi])
                throw ValidationError("graded module: multiplication matrix shape mismatch");
            if (m.field() != field_) throw ValidationError("graded module: field mismatch");
        }
    }
}

u64 GradedModule::dim(int q) const {
    if (q < q_min_) {
        if (zero_below_) return 0;
        throw ComputeError("module degree " + std::to_string(q) + " not available");
    }
    if (q > q_max()) throw ComputeError("module degree " + std::to_string(q) + " not available");
    return dims_[size_t(q - q_min_)];
}

const fp::DenseMat& GradedModule::mu(int q, u32 i) const {
    if (q < q_min_ || q >= q_max())
        throw ComputeError("no multiplication maps at degree " + std::to_string(q));
    if (i >= n_) throw ComputeError("basis index out of range");
    return mult_[size_t(q - q_min_)][i];
}

std::optional<ModuleViolation> verify_graded_module(const GradedModule& m) {
    for (int q = m.q_min(); q + 2 <= m.q_max(); ++q) {
        for (u32 i = 0; i < m.n(); ++i) {
            for (u32 j = i + 1; j < m.n(); ++j) {
                fp::DenseMat a = m.mu(q + 1, i).mul(m.mu(q, j));
                fp::DenseMat b = m.mu(q + 1, j).mul(m.mu(q, i));
                if (!(a == b)) {
                    std::ostringstream os;
                    os << "mu_{" << q + 1 << "," << i << "} mu_{" << q << "," << j
                       << "} != mu_{" << q + 1 << "," << j << "} mu_{" << q << "," << i << "}";
                    return ModuleViolation{q, i, j, os.str()};
                }
            }
        }
    }
    return std::nullopt;
}

fp::SparseMatrix build_differential(const GradedModule& m, u32 p, int q) {
    const fp::PrimeField& f = m.field();
    u64 bq = m.dim(q);
    u64 wp = binom(m.n(), p);
    u64 cols = wp * bq;
    if (p == 0 || cols == 0)
        return fp::SparseMatrix::zero(f, 0, u32(cols));
    u64 bq1 = m.dim(q + 1);
    u64 rows = binom(m.n(), i64(p) - 1) * bq1;
    if (rows == 0) return fp::SparseMatrix::zero(f, 0, u32(cols));

    WedgeBasis from(m.n(), p), to(m.n(), p - 1);
    std::vector<fp::Entry> entries;
    std::vector<u32> sub(p - 1);
    for (u64 w = 0; w < wp; ++w) {
        std::vector<u32> tuple = from.unrank(w);
        for (u32 j = 0; j < p; ++j) {
            // drop the j-th index; sign alternates starting at +
            sub.clear();
            for (u32 t = 0; t < p; ++t)
                if (t != j) sub.push_back(tuple[t]);
            u64 w2 = to.rank(sub);
            bool negate = (j % 2) == 1;
            const fp::DenseMat& mu = m.mu(q, tuple[j]);
            for (u32 b = 0; b < bq; ++b) {
                u64 col = w * bq + b;
                for (u32 r = 0; r < bq1; ++r) {
                    u64 v = mu.at(r, b);
                    if (!v) continue;
                    entries.push_back({u32(w2 * bq1 + r), u32(col), negate ? f.neg(v) : v});
                }
            }
        }
    }
    return fp::SparseMatrix(f, u32(rows), u32(cols), std::move(entries));
}

u64 koszul_dimension(const GradedModule& m, u32 p, int q) {
    u64 cols = binom(m.n(), p) * m.dim(q);
    u64 rank_out = fp::rank_and_kernel(build_differential(m, p, q)).rank;
    u64 rank_in = fp::rank_and_kernel(build_differential(m, p + 1, q - 1)).rank;
    if (rank_out + rank_in > cols)
        throw InternalError("negative Koszul dimension: input is not a module");
    return cols - rank_out - rank_in;
}

const BettiCell& BettiTable::cell(int p, int q) const {
    auto it = cells_.find({p, q});
    if (it == cells_.end())
        throw ComputeError("betti table has no cell (" + std::to_string(p) + "," +
                           std::to_string(q) + ")");
    return it->second;
}

std::string BettiTable::diagram() const {
    if (cells_.empty()) return "(empty betti table)\n";
    size_t width = 1;
    for (const auto& [key, c] : cells_)
        width = std::max(width, std::to_string(c.dim).size());
    width += 2;
    std::ostringstream os;
    os << "    p:";
    for (int p = p_lo_; p <= p_hi_; ++p) {
        std::string s = std::to_string(p);
        os << std::string(width - s.size(), ' ') << s;
    }
    os << "\n";
    for (int q = q_lo_; q <= q_hi_; ++q) {
        std::string label = "q=" + std::to_string(q) + ":";
        os << std::string(6 - std::min<size_t>(6, label.size()), ' ') << label;
        for (int p = p_lo_; p <= p_hi_; ++p) {
            std::string s = has(p, q) && dim(p, q) > 0 ? std::to_string(dim(p, q)) : ".";
            os << std::string(width - s.size(), ' ') << s;
        }
        os << "\n";
    }
    return os.str();
}

std::string BettiTable::csv() const {
    std::ostringstream os;
    os << "p,q,dim,rank_out,rank_in,prime\n";
    for (const auto& [key, c] : cells_) {
        os << key.first << "," << key.second << "," << c.dim << "," << c.rank_out << ","
           << c.rank_in << "," << prime_ << "\n";
    }
    return os.str();
}

BettiTable betti_table(const GradedModule& m, int p_lo, int p_hi, int q_lo, int q_hi,
                       unsigned threads) {
    BettiTable table(m.field().modulus(), p_lo, p_hi, q_lo, q_hi);
    table.set_h1(m.h1_certificates());
    if (p_lo > p_hi || q_lo > q_hi) return table;
    if (p_lo < 0) throw ComputeError("betti table: negative p");

    struct DiffInfo {
        u64 rank = 0, rows = 0, cols = 0;
    };
    // every differential shared by adjacent cells is computed exactly once
    std::map<std::pair<int, int>, DiffInfo> diffs;
    for (int q = q_lo; q <= q_hi; ++q) {
        for (int p = p_lo; p <= p_hi; ++p) {
            diffs[{p, q}];
            diffs[{p + 1, q - 1}];
        }
    }
    std::vector<std::pair<int, int>> keys;
    keys.reserve(diffs.size());
    for (const auto& [k, v] : diffs) keys.push_back(k);
    std::vector<DiffInfo> results(keys.size());
    parallel_for(keys.size(), threads, [&](size_t i) {
        auto [p, q] = keys[i];
        fp::SparseMatrix d = build_differential(m, u32(p), q);
        results[i] = {fp::rank_and_kernel(d).rank, d.rows(), d.cols()};
    });
    for (size_t i = 0; i < keys.size(); ++i) diffs[keys[i]] = results[i];

    for (int q = q_lo; q <= q_hi; ++q) {
        for (int p = p_lo; p <= p_hi; ++p) {
            const DiffInfo& out = diffs[{p, q}];
            const DiffInfo& in = diffs[{p + 1, q - 1}];
            if (out.rank + in.rank > out.cols)
                throw InternalError("negative Koszul dimension: input is not a module");
            BettiCell cell;
            cell.dim = out.cols - out.rank - in.rank;
            cell.rank_out = out.rank;
            cell.rank_in = in.rank;
            cell.rows_out = out.rows;
            cell.cols_out = out.cols;
            cell.rows_in = in.rows;
            cell.cols_in = in.cols;
            table.set(p, q, cell);
        }
    }
    return table;
}

i64 euler_strand(const GradedModule& m, u32 p_top) {
    i64 chi = 0;
    for (u32 j = 0; j <= p_top; ++j) {
        i64 term = i64(binom(m.n(), i64(p_top) - i64(j))) * i64(m.dim(int(j)));
        chi += (j % 2 == 0) ? term : -term;
    }
    return chi;
}

i64 duality_gap(const BettiTable& untwisted, const BettiTable& twisted_canonical, u32 r,
                int p, int q) {
    if (untwisted.prime() != twisted_canonical.prime())
        throw ComputeError("duality gap: tables computed over different primes");
    for (int j : {q - 1, q}) {
        auto it = untwisted.h1().find(j);
        if (it == untwisted.h1().end())
            throw ComputeError("duality gap: h^1(L^" + std::to_string(j) +
                               ") not certified by the curve backend");
        if (it->second != 0)
            throw ComputeError("duality gap: h^1(L^" + std::to_string(j) +
                               ") = " + std::to_string(it->second) + ", duality does not apply");
    }
    i64 a = i64(untwisted.dim(p, q));
    i64 b = i64(twisted_canonical.dim(int(r) - 1 - p, 2 - q));
    return a - b;
}

}  // namespace syz::koszul
