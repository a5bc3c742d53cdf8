#include "syzygy/poly.hpp"

#include <algorithm>

namespace syz::curve {

// ---------------------------------------------------------------------------
// Series

Series Series::add(const Series& o) const {
    u32 n = std::min(prec(), o.prec());
    Series r(f_, n);
    for (u32 i = 0; i < n; ++i) r.c_[i] = f_.add(c_[i], o.c_[i]);
    return r;
}

Series Series::sub(const Series& o) const {
    u32 n = std::min(prec(), o.prec());
    Series r(f_, n);
    for (u32 i = 0; i < n; ++i) r.c_[i] = f_.sub(c_[i], o.c_[i]);
    return r;
}

Series Series::mul(const Series& o) const {
    u32 n = std::min(prec(), o.prec());
    Series r(f_, n);
    const u64 p = f_.modulus();
    for (u32 i = 0; i < n; ++i) {
        if (!c_[i]) continue;
        for (u32 j = 0; i + j < n; ++j) {
            if (!o.c_[j]) continue;
            u64& slot = r.c_[i + j];
            slot = (slot + u64((u128(c_[i]) * o.c_[j]) % p)) % p;
        }
    }
    return r;
}

Series Series::scale(u64 v) const {
    Series r(f_, prec());
    for (u32 i = 0; i < prec(); ++i) r.c_[i] = f_.mul(c_[i], v);
    return r;
}

Series Series::shift(u32 k) const {
    Series r(f_, prec());
    for (u32 i = 0; i + k < prec(); ++i) r.c_[i + k] = c_[i];
    return r;
}

Series Series::truncate(u32 new_prec) const {
    Series r(f_, new_prec);
    for (u32 i = 0; i < std::min(new_prec, prec()); ++i) r.c_[i] = c_[i];
    return r;
}

Series Series::pow(u32 e) const {
    Series r = Series::constant(f_, 1, prec());
    Series base = *this;
    while (e) {
        if (e & 1) r = r.mul(base);
        base = base.mul(base);
        e >>= 1;
    }
    return r;
}

Series Series::divide(const Series& a, const Series& b) {
    const PrimeField& f = a.field();
    u32 vb = b.valuation();
    if (vb == b.prec()) throw ComputeError("series division by zero");
    if (a.valuation() < vb) throw ComputeError("series division: valuation mismatch");
    u32 n = std::min(a.prec(), b.prec()) - vb;
    // shift out t^vb, then invert the unit part by the usual recursion
    Series num(f, n), den(f, n);
    for (u32 i = 0; i < n; ++i) {
        num.coeff(i) = i + vb < a.prec() ? a[i + vb] : 0;
        den.coeff(i) = b[i + vb];
    }
    Series q(f, n);
    u64 lead_inv = f.inv(den[0]);
    for (u32 i = 0; i < n; ++i) {
        u64 acc = num[i];
        for (u32 j = 0; j < i; ++j)
            if (q[j] && den[i - j]) acc = f.sub(acc, f.mul(q[j], den[i - j]));
        q.coeff(i) = f.mul(acc, lead_inv);
    }
    return q;
}

// ---------------------------------------------------------------------------
// UniPoly

u64 UniPoly::eval(u64 x) const {
    u64 acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = f_.add(f_.mul(acc, x), c_[i]);
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly(f_);
    std::vector<u64> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = f_.mul(c_[i], f_.from_int(i64(i)));
    return UniPoly(f_, std::move(d));
}

UniPoly UniPoly::add(const UniPoly& o) const {
    std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f_.add(coeff(u32(i)), o.coeff(u32(i)));
    return UniPoly(f_, std::move(r));
}

UniPoly UniPoly::sub(const UniPoly& o) const {
    std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f_.sub(coeff(u32(i)), o.coeff(u32(i)));
    return UniPoly(f_, std::move(r));
}

UniPoly UniPoly::mul(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly(f_);
    std::vector<u64> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j]) r[i + j] = f_.add(r[i + j], f_.mul(c_[i], o.c_[j]));
    }
    return UniPoly(f_, std::move(r));
}

UniPoly UniPoly::scale(u64 v) const {
    std::vector<u64> r(c_);
    for (u64& x : r) x = f_.mul(x, v);
    return UniPoly(f_, std::move(r));
}

UniPoly UniPoly::mod(const UniPoly& m) const {
    if (m.is_zero()) throw ComputeError("polynomial modulus is zero");
    std::vector<u64> r(c_);
    u64 lead_inv = f_.inv(m.c_.back());
    int dm = m.degree();
    for (int i = int(r.size()) - 1; i >= dm; --i) {
        if (!r[size_t(i)]) continue;
        u64 q = f_.mul(r[size_t(i)], lead_inv);
        for (int j = 0; j <= dm; ++j)
            r[size_t(i - dm + j)] = f_.sub(r[size_t(i - dm + j)], f_.mul(q, m.c_[size_t(j)]));
    }
    r.resize(size_t(std::max(0, dm)));
    return UniPoly(f_, std::move(r));
}

UniPoly UniPoly::divide_exact(const UniPoly& d) const {
    if (d.is_zero()) throw ComputeError("division by zero polynomial");
    if (is_zero()) return UniPoly(f_);
    if (degree() < d.degree()) throw ComputeError("exact division: degree too small");
    std::vector<u64> r(c_);
    std::vector<u64> q(size_t(degree() - d.degree()) + 1, 0);
    u64 lead_inv = f_.inv(d.c_.back());
    int dd = d.degree();
    for (int i = int(r.size()) - 1; i >= dd; --i) {
        if (!r[size_t(i)]) continue;
        u64 qc = f_.mul(r[size_t(i)], lead_inv);
        q[size_t(i - dd)] = qc;
        for (int j = 0; j <= dd; ++j)
            r[size_t(i - dd + j)] = f_.sub(r[size_t(i - dd + j)], f_.mul(qc, d.c_[size_t(j)]));
    }
    for (u64 x : r)
        if (x) throw ComputeError("exact division: remainder is nonzero");
    return UniPoly(f_, std::move(q));
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return scale(f_.inv(c_.back()));
}

UniPoly UniPoly::pow_x_mod(u64 e) const {
    if (degree() < 1) throw ComputeError("pow_x_mod needs degree >= 1 modulus");
    UniPoly base(f_, {0, 1});
    base = base.mod(*this);
    UniPoly acc(f_, {1});
    while (e) {
        if (e & 1) acc = acc.mul(base).mod(*this);
        base = base.mul(base).mod(*this);
        e >>= 1;
    }
    return acc;
}

namespace {

// equal-degree splitting for a squarefree product of linear factors
void split_linear(const UniPoly& g, Rng& rng, std::vector<u64>& out) {
    const PrimeField& f = g.field();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        // root of c1 u + c0
        out.push_back(f.neg(f.mul(g.coeff(0), f.inv(g.coeff(1)))));
        return;
    }
    while (true) {
        u64 a = rng.below(f.modulus());
        // h = gcd((u+a)^((p-1)/2) - 1, g)
        UniPoly shifted(f, {a, 1});
        UniPoly acc(f, {1});
        UniPoly base = shifted.mod(g);
        u64 e = (f.modulus() - 1) / 2;
        while (e) {
            if (e & 1) acc = acc.mul(base).mod(g);
            base = base.mul(base).mod(g);
            e >>= 1;
        }
        acc = acc.sub(UniPoly(f, {1}));
        UniPoly h = UniPoly::gcd(acc, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            split_linear(h, rng, out);
            split_linear(g.divide_exact(h), rng, out);
            return;
        }
    }
}

}  // namespace

std::optional<std::vector<u64>> UniPoly::distinct_rational_roots(Rng& rng) const {
    if (degree() <= 0) return std::nullopt;
    UniPoly g = monic();
    // squarefree over F_p?
    UniPoly d = g.derivative();
    if (d.is_zero()) return std::nullopt;
    if (UniPoly::gcd(g, d).degree() != 0) return std::nullopt;
    // splits completely iff u^p = u mod g
    UniPoly xp = g.pow_x_mod(f_.modulus());
    if (!xp.sub(UniPoly(f_, {0, 1})).is_zero()) return std::nullopt;
    std::vector<u64> roots;
    split_linear(g, rng, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<u64> UniPoly::rational_roots(Rng& rng) const {
    if (degree() <= 0) return {};
    // gcd with u^p - u isolates the distinct rational roots
    UniPoly g = monic();
    UniPoly xp = g.pow_x_mod(f_.modulus()).sub(UniPoly(f_, {0, 1}));
    UniPoly h = UniPoly::gcd(xp, g);
    if (h.degree() <= 0) return {};
    std::vector<u64> roots;
    split_linear(h, rng, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------
// Form

u32 mono_index(u32 deg, u32 a, u32 b) {
    if (a + b > deg) throw InternalError("mono_index out of range");
    // a runs from deg down; block for a has deg-a+1 entries (b from deg-a down)
    u32 ia = deg - a;
    u32 base = ia * (ia + 1) / 2;
    u32 ib = (deg - a) - b;
    return base + ib;
}

std::array<u32, 3> mono_at(u32 deg, u32 idx) {
    for (u32 ia = 0; ia <= deg; ++ia) {
        u32 block = ia + 1;
        u32 base = ia * (ia + 1) / 2;
        if (idx < base + block) {
            u32 a = deg - ia;
            u32 ib = idx - base;
            u32 b = (deg - a) - ib;
            return {a, b, deg - a - b};
        }
    }
    throw InternalError("mono_at out of range");
}

bool Form::is_zero() const {
    for (u64 v : c_)
        if (v) return false;
    return true;
}

u64 Form::eval(u64 x, u64 y, u64 z) const {
    // precompute powers
    std::vector<u64> px(deg_ + 1, 1), py(deg_ + 1, 1), pz(deg_ + 1, 1);
    for (u32 i = 1; i <= deg_; ++i) {
        px[i] = f_.mul(px[i - 1], x);
        py[i] = f_.mul(py[i - 1], y);
        pz[i] = f_.mul(pz[i - 1], z);
    }
    u64 acc = 0;
    for (u32 idx = 0; idx < c_.size(); ++idx) {
        if (!c_[idx]) continue;
        auto [a, b, c] = mono_at(deg_, idx);
        acc = f_.add(acc, f_.mul(c_[idx], f_.mul(px[a], f_.mul(py[b], pz[c]))));
    }
    return acc;
}

Form Form::dx() const {
    if (deg_ == 0) throw ComputeError("derivative of a constant form");
    Form r(f_, deg_ - 1);
    for (u32 idx = 0; idx < c_.size(); ++idx) {
        if (!c_[idx]) continue;
        auto [a, b, c] = mono_at(deg_, idx);
        if (a > 0) r.add_coeff(a - 1, b, f_.mul(c_[idx], f_.from_int(i64(a))));
    }
    return r;
}

Form Form::dy() const {
    if (deg_ == 0) throw ComputeError("derivative of a constant form");
    Form r(f_, deg_ - 1);
    for (u32 idx = 0; idx < c_.size(); ++idx) {
        if (!c_[idx]) continue;
        auto [a, b, c] = mono_at(deg_, idx);
        if (b > 0) r.add_coeff(a, b - 1, f_.mul(c_[idx], f_.from_int(i64(b))));
    }
    return r;
}

Form Form::dz() const {
    if (deg_ == 0) throw ComputeError("derivative of a constant form");
    Form r(f_, deg_ - 1);
    for (u32 idx = 0; idx < c_.size(); ++idx) {
        if (!c_[idx]) continue;
        auto [a, b, c] = mono_at(deg_, idx);
        if (c > 0) r.add_coeff(a, b, f_.mul(c_[idx], f_.from_int(i64(c))));
    }
    return r;
}

Form Form::mul(const Form& o) const {
    Form r(f_, deg_ + o.deg_);
    for (u32 i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        auto [a1, b1, c1] = mono_at(deg_, i);
        for (u32 j = 0; j < o.c_.size(); ++j) {
            if (!o.c_[j]) continue;
            auto [a2, b2, c2] = mono_at(o.deg_, j);
            r.add_coeff(a1 + a2, b1 + b2, f_.mul(c_[i], o.c_[j]));
        }
    }
    return r;
}

Form Form::add(const Form& o) const {
    if (deg_ != o.deg_) throw ComputeError("adding forms of different degrees");
    Form r(f_, deg_);
    for (u32 i = 0; i < c_.size(); ++i) r.c_[i] = f_.add(c_[i], o.c_[i]);
    return r;
}

Form Form::scale(u64 v) const {
    Form r(f_, deg_);
    for (u32 i = 0; i < c_.size(); ++i) r.c_[i] = f_.mul(c_[i], v);
    return r;
}

Form Form::normal_form(const Form& F) const {
    u32 e = F.degree();
    if (deg_ < e) return *this;
    u64 lead = F.coeff(e, 0);
    if (!lead) throw ComputeError("normal form: divisor has no x^e term");
    u64 lead_inv = f_.inv(lead);
    Form r = *this;
    // kill monomials with a >= e, largest (a, b) first; every replacement has
    // a strictly smaller x-exponent, so one sweep in index order suffices
    for (u32 idx = 0; idx < r.c_.size(); ++idx) {
        auto [a, b, c] = mono_at(deg_, idx);
        if (a < e) continue;
        u64 v = r.c_[idx];
        if (!v) continue;
        u64 q = f_.mul(v, lead_inv);
        r.c_[idx] = 0;
        // subtract q * x^(a-e) y^b z^c * (F - lead x^e)
        for (u32 j = 0; j < F.coeffs().size(); ++j) {
            u64 fv = F.coeffs()[j];
            if (!fv) continue;
            auto [fa, fb, fc] = mono_at(e, j);
            if (fa == e) continue;
            r.add_coeff(a - e + fa, b + fb, f_.neg(f_.mul(q, fv)));
        }
    }
    return r;
}

std::vector<u64> Form::restrict_to_line(const std::array<u64, 3>& A,
                                        const std::array<u64, 3>& B) const {
    // binary powers of (A_i s + B_i u) up to deg, each as coefficient list in u
    auto powers = [&](u64 av, u64 bv) {
        std::vector<std::vector<u64>> p(deg_ + 1);
        p[0] = {1};
        for (u32 k = 1; k <= deg_; ++k) {
            p[k].assign(k + 1, 0);
            for (u32 j = 0; j < k; ++j) {
                if (!p[k - 1][j]) continue;
                p[k][j] = f_.add(p[k][j], f_.mul(p[k - 1][j], av));
                p[k][j + 1] = f_.add(p[k][j + 1], f_.mul(p[k - 1][j], bv));
            }
        }
        return p;
    };
    auto px = powers(A[0], B[0]);
    auto py = powers(A[1], B[1]);
    auto pz = powers(A[2], B[2]);
    std::vector<u64> out(deg_ + 1, 0);
    for (u32 idx = 0; idx < c_.size(); ++idx) {
        if (!c_[idx]) continue;
        auto [a, b, c] = mono_at(deg_, idx);
        // convolve the three binary powers
        std::vector<u64> t(a + b + 1, 0);
        for (u32 i = 0; i <= a; ++i)
            for (u32 j = 0; j <= b; ++j)
                if (px[a][i] && py[b][j]) t[i + j] = f_.add(t[i + j], f_.mul(px[a][i], py[b][j]));
        for (u32 i = 0; i <= a + b; ++i)
            for (u32 j = 0; j <= c; ++j)
                if (t[i] && pz[c][j])
                    out[i + j] = f_.add(out[i + j], f_.mul(c_[idx], f_.mul(t[i], pz[c][j])));
    }
    return out;
}

Series Form::eval_series(const Series& x, const Series& y, const Series& z) const {
    u32 prec = std::min({x.prec(), y.prec(), z.prec()});
    std::vector<Series> px, py, pz;
    px.reserve(deg_ + 1);
    py.reserve(deg_ + 1);
    pz.reserve(deg_ + 1);
    px.push_back(Series::constant(f_, 1, prec));
    py.push_back(Series::constant(f_, 1, prec));
    pz.push_back(Series::constant(f_, 1, prec));
    for (u32 i = 1; i <= deg_; ++i) {
        px.push_back(px.back().mul(x));
        py.push_back(py.back().mul(y));
        pz.push_back(pz.back().mul(z));
    }
    Series acc(f_, prec);
    for (u32 idx = 0; idx < c_.size(); ++idx) {
        if (!c_[idx]) continue;
        auto [a, b, c] = mono_at(deg_, idx);
        acc = acc.add(px[a].mul(py[b]).mul(pz[c]).scale(c_[idx]));
    }
    return acc;
}

}  // namespace syz::curve
