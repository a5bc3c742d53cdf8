#include "syzygy/plane_curve.hpp"

#include <algorithm>
#include <sstream>

namespace syz::curve {

Point Point::normalized(const PrimeField& f, u64 x, u64 y, u64 z) {
    x %= f.modulus();
    y %= f.modulus();
    z %= f.modulus();
    u64 lead = x ? x : (y ? y : z);
    if (!lead) throw ValidationError("(0:0:0) is not a projective point");
    u64 inv = f.inv(lead);
    return Point{f.mul(x, inv), f.mul(y, inv), f.mul(z, inv)};
}

std::string Point::str() const {
    std::ostringstream os;
    os << "(" << x << ":" << y << ":" << z << ")";
    return os.str();
}

std::string PlaceKey::str() const {
    return branch == 0 ? pt.str() : pt.str() + "#" + std::to_string(branch);
}

PlaneCurve::PlaneCurve(Form defining_form, std::vector<Point> nodes)
    : form_(std::move(defining_form)), nodes_(std::move(nodes)) {
    if (form_.degree() < 1 || form_.is_zero())
        throw ValidationError("defining form must be a nonzero form of positive degree");
}

i64 PlaneCurve::genus() const {
    i64 e = i64(degree());
    return (e - 1) * (e - 2) / 2 - i64(nodes_.size());
}

u32 PlaneCurve::gonality_hint() const {
    // projection from a node (or from a smooth point of the curve)
    return nodes_.empty() ? degree() - 1 : degree() - 2;
}

std::array<u64, 3> PlaneCurve::gradient(const Point& p) const {
    return {form_.dx().eval(p.x, p.y, p.z), form_.dy().eval(p.x, p.y, p.z),
            form_.dz().eval(p.x, p.y, p.z)};
}

bool PlaneCurve::is_declared_node(const Point& p) const {
    return std::find(nodes_.begin(), nodes_.end(), p) != nodes_.end();
}

bool PlaneCurve::is_smooth_point(const Point& p) const {
    if (!on_curve(p)) return false;
    auto g = gradient(p);
    return g[0] || g[1] || g[2];
}

namespace {

// Local model of the curve in an affine chart centered at a point:
// h(s, w) = sum_k A_k(s) w^k, where s and w are shifts of the two affine
// coordinates (possibly swapped so the sought branch is a graph w(s)).
struct LocalModel {
    int chart;  // coordinate fixed to 1
    int uvar, vvar;  // coordinate index parametrized by s resp. solved as w
    u64 u0, v0;
    std::vector<UniPoly> A;
};

int chart_of(const Point& p) {
    if (p.z) return 2;
    if (p.y) return 1;
    return 0;
}

LocalModel build_local(const PlaneCurve& curve, const Point& p, bool swap) {
    const PrimeField& f = curve.field();
    LocalModel lm{chart_of(p), 0, 0, 0, 0, {}};
    int a = (lm.chart == 0) ? 1 : 0;
    int b = (lm.chart == 2) ? 1 : 2;
    lm.uvar = swap ? b : a;
    lm.vvar = swap ? a : b;
    auto pc = p.coords();
    u64 inv_chart = f.inv(pc[size_t(lm.chart)]);
    lm.u0 = f.mul(pc[size_t(lm.uvar)], inv_chart);
    lm.v0 = f.mul(pc[size_t(lm.vvar)], inv_chart);

    u32 e = curve.degree();
    lm.A.assign(e + 1, UniPoly(f));
    std::vector<std::vector<u64>> acc(e + 1, std::vector<u64>(e + 1, 0));  // acc[k][s-exp]
    // binomial table
    std::vector<std::vector<u64>> ch(e + 1, std::vector<u64>(e + 1, 0));
    for (u32 i = 0; i <= e; ++i) {
        ch[i][0] = 1;
        for (u32 j = 1; j <= i; ++j)
            ch[i][j] = f.add(ch[i - 1][j - 1], j <= i - 1 ? ch[i - 1][j] : 0);
    }
    auto pow_tab = [&](u64 base) {
        std::vector<u64> t(e + 1, 1);
        for (u32 i = 1; i <= e; ++i) t[i] = f.mul(t[i - 1], base);
        return t;
    };
    auto pu = pow_tab(lm.u0), pv = pow_tab(lm.v0);
    const Form& F = curve.form();
    for (u32 idx = 0; idx < F.coeffs().size(); ++idx) {
        u64 cf = F.coeffs()[idx];
        if (!cf) continue;
        auto m = mono_at(e, idx);
        u32 alpha = m[size_t(lm.uvar)];
        u32 beta = m[size_t(lm.vvar)];
        // (u0+s)^alpha (v0+w)^beta: term w^k s^i gets
        // C(beta,k) v0^(beta-k) C(alpha,i) u0^(alpha-i)
        for (u32 k = 0; k <= beta; ++k) {
            u64 wk = f.mul(cf, f.mul(ch[beta][k], pv[beta - k]));
            if (!wk) continue;
            for (u32 i = 0; i <= alpha; ++i) {
                u64 v = f.mul(wk, f.mul(ch[alpha][i], pu[alpha - i]));
                if (v) acc[k][i] = f.add(acc[k][i], v);
            }
        }
    }
    for (u32 k = 0; k <= e; ++k) lm.A[k] = UniPoly(f, acc[k]);
    return lm;
}

struct Quadratic {
    u64 q20, q11, q02;
};

Quadratic quadratic_part(const LocalModel& lm) {
    return {lm.A[0].coeff(2), lm.A[1].coeff(1), lm.A.size() > 2 ? lm.A[2].coeff(0) : 0};
}

// Hensel lifting of w(t) with h(t, w(t)) = 0 mod t^prec from a start with
// val h(w0) > 2 val h_w(w0).
Series newton_solve(const PrimeField& f, const LocalModel& lm, const Series& start, u32 prec) {
    std::vector<Series> a;
    a.reserve(lm.A.size());
    for (const UniPoly& p : lm.A) {
        Series s(f, prec);
        for (u32 i = 0; i <= u32(std::max(0, p.degree())) && i < prec; ++i)
            s.coeff(i) = p.coeff(i);
        a.push_back(std::move(s));
    }
    auto eval_h = [&](const Series& w) {
        Series accs = a.back();
        for (size_t k = a.size() - 1; k-- > 0;) accs = accs.mul(w).add(a[k]);
        return accs;
    };
    auto eval_hw = [&](const Series& w) {
        Series accs(f, prec);
        for (size_t k = a.size() - 1; k >= 1; --k)
            accs = accs.mul(w).add(a[k].scale(f.from_int(i64(k))));
        return accs;
    };
    Series w = start;
    for (int iter = 0; iter < 128; ++iter) {
        Series r = eval_h(w);
        u32 m = r.valuation();
        if (m >= prec) return w;
        Series hw = eval_hw(w);
        u32 v = hw.valuation();
        if (v >= prec || m <= 2 * v)
            throw ComputeError("branch expansion does not converge (singularity worse than a node?)");
        w = w.sub(Series::divide(r, hw));
    }
    throw InternalError("branch expansion failed to converge");
}

Place assemble_place(const PlaneCurve& curve, const Point& p, int branch, u32 prec,
                     const LocalModel& lm, const Series& param, const Series& solved) {
    const PrimeField& f = curve.field();
    std::array<Series, 3> coords = {Series(f, prec), Series(f, prec), Series(f, prec)};
    coords[size_t(lm.chart)] = Series::constant(f, 1, prec);
    Series u = Series::constant(f, lm.u0, prec).add(param);
    Series v = Series::constant(f, lm.v0, prec).add(solved);
    coords[size_t(lm.uvar)] = u;
    coords[size_t(lm.vvar)] = v;
    Place place{PlaceKey{p, branch}, prec, coords[0], coords[1], coords[2]};
    // the defining invariant: F vanishes along the branch to full precision
    Series chk = curve.form().eval_series(place.X, place.Y, place.Z);
    if (chk.valuation() < prec) throw InternalError("branch expansion: residual is nonzero");
    return place;
}

}  // namespace

std::array<std::optional<u64>, 2> PlaneCurve::node_tangent_slopes(const Point& node) const {
    const PrimeField& f = field();
    if (!on_curve(node)) throw ValidationError("declared node " + node.str() + " is not on the curve");
    auto g = gradient(node);
    if (g[0] || g[1] || g[2])
        throw ValidationError("declared node " + node.str() + " is a smooth point");
    LocalModel lm = build_local(*this, node, false);
    auto [q20, q11, q02] = quadratic_part(lm);
    // tangent slopes solve q02 L^2 + q11 L + q20 = 0 (w = L s); q02 = 0 means
    // one branch is vertical
    u64 disc = f.sub(f.mul(q11, q11), f.mul(4, f.mul(q20, q02)));
    if (disc == 0)
        throw ValidationError("node " + node.str() + " is not ordinary (coincident tangents)");
    if (!f.is_square(disc))
        throw ValidationError("node " + node.str() +
                              " has irrational branch tangents over this prime; resample");
    u64 sq = f.sqrt(disc);
    if (q02 != 0) {
        u64 inv2a = f.inv(f.mul(2, q02));
        u64 l1 = f.mul(f.sub(sq, q11), inv2a);
        u64 l2 = f.mul(f.neg(f.add(q11, sq)), inv2a);
        if (l1 > l2) std::swap(l1, l2);
        return {l1, l2};
    }
    // q02 = 0: slopes are -q20/q11 and infinity
    u64 l = f.neg(f.mul(q20, f.inv(q11)));
    return {l, std::nullopt};
}

void PlaneCurve::validate() const {
    const PrimeField& f = field();
    u32 e = degree();
    if (form_.coeff(e, 0) == 0)
        throw ValidationError(
            "defining form has no x^degree term; apply a coordinate change so it does");
    if (genus() < 0) throw ValidationError("more nodes declared than the degree allows");
    for (size_t i = 0; i < nodes_.size(); ++i) {
        for (size_t j = i + 1; j < nodes_.size(); ++j)
            if (nodes_[i] == nodes_[j]) throw ValidationError("duplicate node declared");
        node_tangent_slopes(nodes_[i]);  // throws with a specific message
    }
    (void)f;
}

Place expand_branch(const PlaneCurve& curve, const Point& point, int branch_choice,
                    u32 precision) {
    if (precision < 1) throw ComputeError("branch expansion: precision must be >= 1");
    const PrimeField& f = curve.field();
    if (!curve.on_curve(point))
        throw ValidationError("point " + point.str() + " is not on the curve");

    if (curve.is_smooth_point(point)) {
        if (branch_choice != 0)
            throw ComputeError("smooth point has a single branch");
        LocalModel lm = build_local(curve, point, false);
        bool swap = lm.A[1].coeff(0) == 0;  // dh/dw = 0: parametrize the other way
        if (swap) lm = build_local(curve, point, true);
        if (lm.A[1].coeff(0) == 0) throw InternalError("smooth point without a graph direction");
        Series t(f, precision);
        if (precision > 1) t.coeff(1) = 1;
        Series w = newton_solve(f, lm, Series(f, precision), precision);
        return assemble_place(curve, point, 0, precision, lm, t, w);
    }

    if (!curve.is_declared_node(point))
        throw ValidationError("point " + point.str() + " is singular but not a declared node");
    auto slopes = curve.node_tangent_slopes(point);
    if (branch_choice != 0 && branch_choice != 1)
        throw ComputeError("node branch index must be 0 or 1");
    std::optional<u64> slope = slopes[size_t(branch_choice)];
    bool swap = !slope.has_value();
    LocalModel lm = build_local(curve, point, swap);
    u64 start_slope;
    if (swap) {
        start_slope = 0;  // the vertical branch is the slope-0 graph after swapping
    } else {
        start_slope = *slope;
    }
    Series t(f, precision);
    if (precision > 1) t.coeff(1) = 1;
    Series w0(f, precision);
    if (precision > 1) w0.coeff(1) = start_slope;
    Series w = newton_solve(f, lm, w0, precision);
    return assemble_place(curve, point, branch_choice, precision, lm, t, w);
}

u64 form_valuation(const PlaneCurve& curve, const Form& g, const Place& place,
                   const ValuationOptions& opt) {
    if (g.is_zero()) throw ComputeError("valuation of the zero form");
    Place cur = place;
    while (true) {
        Series s = g.eval_series(cur.X, cur.Y, cur.Z);
        u32 v = s.valuation();
        if (v < cur.precision) return v;
        if (cur.precision >= opt.precision_cap)
            throw ComputeError("valuation exceeds the precision cap at " + cur.key.str() +
                               "; the form may vanish on a whole component");
        u32 np = std::min(opt.precision_cap, cur.precision * 2);
        cur = expand_branch(curve, cur.key.pt, cur.key.branch, np);
    }
}

std::optional<Point> sample_smooth_point(const PlaneCurve& curve, Rng& rng,
                                         const std::set<Point>& avoid, int budget) {
    const PrimeField& f = curve.field();
    u32 e = curve.degree();
    for (int it = 0; it < budget; ++it) {
        u64 x0 = rng.below(f.modulus());
        // restrict to the line x = x0, z = 1 and solve for y
        std::vector<u64> coeffs(e + 1, 0);
        for (u32 idx = 0; idx < curve.form().coeffs().size(); ++idx) {
            u64 cf = curve.form().coeffs()[idx];
            if (!cf) continue;
            auto [a, b, c] = mono_at(e, idx);
            (void)c;
            coeffs[b] = f.add(coeffs[b], f.mul(cf, f.pow(x0, a)));
        }
        UniPoly fy(f, std::move(coeffs));
        if (fy.degree() < 1) continue;
        auto roots = fy.rational_roots(rng);
        if (roots.empty()) continue;
        u64 y0 = roots[rng.below(roots.size())];
        Point p = Point::normalized(f, x0, y0, 1);
        if (!curve.is_smooth_point(p)) continue;
        if (avoid.count(p)) continue;
        return p;
    }
    return std::nullopt;
}

}  // namespace syz::curve
