#pragma once

#include <array>
#include <vector>

#include "syzygy/field.hpp"

namespace syz::curve {

using fp::PrimeField;

// ---------------------------------------------------------------------------
// Truncated power series sum c_i t^i + O(t^prec) over a prime field.
class Series {
public:
    Series(PrimeField f, u32 prec) : f_(f), c_(prec, 0) {}
    static Series constant(PrimeField f, u64 v, u32 prec) {
        Series s(f, prec);
        s.c_[0] = v % f.modulus();
        return s;
    }

    const PrimeField& field() const { return f_; }
    u32 prec() const { return u32(c_.size()); }
    u64 operator[](u32 i) const { return c_[i]; }
    u64& coeff(u32 i) { return c_[i]; }

    // first index with a nonzero coefficient, or prec() if none (val >= prec)
    u32 valuation() const {
        for (u32 i = 0; i < prec(); ++i)
            if (c_[i]) return i;
        return prec();
    }

    Series add(const Series& o) const;
    Series sub(const Series& o) const;
    Series mul(const Series& o) const;
    Series scale(u64 v) const;
    Series shift(u32 k) const;              // multiply by t^k
    Series truncate(u32 new_prec) const;
    Series pow(u32 e) const;
    // quotient a/b where val(b) <= val(a); precision shrinks by val(b)
    static Series divide(const Series& a, const Series& b);

private:
    PrimeField f_;
    std::vector<u64> c_;
};

// ---------------------------------------------------------------------------
// Dense univariate polynomials, coefficient c[i] of u^i, no trailing zeros.
class UniPoly {
public:
    explicit UniPoly(PrimeField f) : f_(f) {}
    UniPoly(PrimeField f, std::vector<u64> coeffs) : f_(f), c_(std::move(coeffs)) { trim(); }

    const PrimeField& field() const { return f_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    u64 coeff(u32 i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<u64>& coeffs() const { return c_; }

    u64 eval(u64 x) const;
    UniPoly derivative() const;
    UniPoly add(const UniPoly& o) const;
    UniPoly sub(const UniPoly& o) const;
    UniPoly mul(const UniPoly& o) const;
    UniPoly scale(u64 v) const;
    UniPoly mod(const UniPoly& m) const;
    UniPoly divide_exact(const UniPoly& d) const;  // throws if not divisible
    static UniPoly gcd(UniPoly a, UniPoly b);      // monic gcd
    UniPoly monic() const;
    // x^e mod this, e up to field size
    UniPoly pow_x_mod(u64 e) const;

    // all roots if the polynomial splits into distinct linear factors over
    // F_p; nullopt when it has a repeated or irrational factor
    std::optional<std::vector<u64>> distinct_rational_roots(Rng& rng) const;

    // the rational roots (each listed once, any multiplicity), sorted
    std::vector<u64> rational_roots(Rng& rng) const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    PrimeField f_;
    std::vector<u64> c_;
};

// ---------------------------------------------------------------------------
// Homogeneous trivariate form of fixed degree, dense coefficients indexed by
// mono_index. Monomials x^a y^b z^c, a+b+c = deg, ordered by a desc, b desc;
// with this order the leading monomial of a form with nonzero x^deg
// coefficient is x^deg, which normal_form relies on.
inline u32 mono_count(u32 deg) { return (deg + 1) * (deg + 2) / 2; }
u32 mono_index(u32 deg, u32 a, u32 b);
std::array<u32, 3> mono_at(u32 deg, u32 idx);

class Form {
public:
    Form(PrimeField f, u32 deg) : f_(f), deg_(deg), c_(mono_count(deg), 0) {}

    const PrimeField& field() const { return f_; }
    u32 degree() const { return deg_; }
    u64 coeff(u32 a, u32 b) const { return c_[mono_index(deg_, a, b)]; }
    void set_coeff(u32 a, u32 b, u64 v) { c_[mono_index(deg_, a, b)] = v % f_.modulus(); }
    void add_coeff(u32 a, u32 b, u64 v) {
        u64& slot = c_[mono_index(deg_, a, b)];
        slot = f_.add(slot, v % f_.modulus());
    }
    const std::vector<u64>& coeffs() const { return c_; }
    std::vector<u64>& coeffs() { return c_; }
    bool is_zero() const;

    u64 eval(u64 x, u64 y, u64 z) const;
    Form dx() const;
    Form dy() const;
    Form dz() const;
    Form mul(const Form& o) const;
    Form add(const Form& o) const;
    Form scale(u64 v) const;

    // canonical remainder of division by F (deg F <= deg, F must have a
    // nonzero x^e coefficient); the result has no monomial with a >= e
    Form normal_form(const Form& F) const;

    // substitute the projective parametrization s*A + u*B of a line and
    // return coefficients of the binary form, index = exponent of u
    std::vector<u64> restrict_to_line(const std::array<u64, 3>& A,
                                      const std::array<u64, 3>& B) const;

    // evaluate on a series triple
    Series eval_series(const Series& x, const Series& y, const Series& z) const;

private:
    PrimeField f_;
    u32 deg_;
    std::vector<u64> c_;
};

}  // namespace syz::curve
