#include "syzygy/linsys.hpp"

#include <algorithm>

namespace syz::curve {

std::vector<u32> reduced_monomials(u32 M, u32 curve_degree) {
    std::vector<u32> idx;
    for (u32 i = 0; i < mono_count(M); ++i) {
        if (mono_at(M, i)[0] < curve_degree) idx.push_back(i);
    }
    return idx;
}

std::vector<u64> nf_coordinates(const Form& nf, u32 curve_degree) {
    std::vector<u64> out;
    for (u32 i = 0; i < mono_count(nf.degree()); ++i)
        if (mono_at(nf.degree(), i)[0] < curve_degree) out.push_back(nf.coeffs()[i]);
    return out;
}

namespace {

struct SchemeLine {
    std::array<u64, 3> base;       // parametrization origin (the excluded point, if any)
    std::array<u64, 3> dir;        // second parametrization point, off the curve
    std::array<u64, 3> line_form;  // for incidence checks
    UniPoly r;                     // conditions: r divides G(base + u dir)
};

std::array<u64, 3> cross(const PrimeField& f, const std::array<u64, 3>& a,
                         const std::array<u64, 3>& b) {
    return {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
            f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
            f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

u64 dot(const PrimeField& f, const std::array<u64, 3>& a, const std::array<u64, 3>& b) {
    return f.add(f.mul(a[0], b[0]), f.add(f.mul(a[1], b[1]), f.mul(a[2], b[2])));
}

// rows of the condition "the first `order` series coefficients of G along the
// place vanish", one row per t-power, columns indexed by degree-M monomials
void append_val_rows(PlaceStore& store, const PlaceKey& key, u64 order, u32 M,
                     std::vector<std::vector<u64>>& rows) {
    if (order == 0) return;
    const PrimeField& f = store.curve().field();
    u32 prec = u32(4 * order + 8);  // slack over the orders actually read
    const Place& pl = store.place(key, prec);
    u32 n = u32(order);
    std::vector<Series> px, py, pz;
    px.reserve(M + 1);
    py.reserve(M + 1);
    pz.reserve(M + 1);
    px.push_back(Series::constant(f, 1, n));
    py.push_back(Series::constant(f, 1, n));
    pz.push_back(Series::constant(f, 1, n));
    Series xt = pl.X.truncate(n), yt = pl.Y.truncate(n), zt = pl.Z.truncate(n);
    for (u32 i = 1; i <= M; ++i) {
        px.push_back(px.back().mul(xt));
        py.push_back(py.back().mul(yt));
        pz.push_back(pz.back().mul(zt));
    }
    size_t base = rows.size();
    for (u32 j = 0; j < n; ++j) rows.emplace_back(mono_count(M), 0);
    for (u32 idx = 0; idx < mono_count(M); ++idx) {
        auto [a, b, c] = mono_at(M, idx);
        Series s = px[a].mul(py[b]).mul(pz[c]);
        for (u32 j = 0; j < n; ++j) rows[base + j][idx] = s[j];
    }
}

// rows of the condition "r divides the restriction of G to the line"
void append_line_rows(const PrimeField& f, const SchemeLine& line, u32 M,
                      std::vector<std::vector<u64>>& rows) {
    int dr = line.r.degree();
    if (dr <= 0) return;
    size_t base = rows.size();
    for (int j = 0; j < dr; ++j) rows.emplace_back(mono_count(M), 0);
    // binary powers of each coordinate of base + u dir
    auto powers = [&](u64 av, u64 bv) {
        std::vector<std::vector<u64>> p(M + 1);
        p[0] = {1};
        for (u32 k = 1; k <= M; ++k) {
            p[k].assign(k + 1, 0);
            for (u32 j = 0; j < k; ++j) {
                if (!p[k - 1][j]) continue;
                p[k][j] = f.add(p[k][j], f.mul(p[k - 1][j], av));
                p[k][j + 1] = f.add(p[k][j + 1], f.mul(p[k - 1][j], bv));
            }
        }
        return p;
    };
    auto pxs = powers(line.base[0], line.dir[0]);
    auto pys = powers(line.base[1], line.dir[1]);
    auto pzs = powers(line.base[2], line.dir[2]);
    for (u32 idx = 0; idx < mono_count(M); ++idx) {
        auto [a, b, c] = mono_at(M, idx);
        std::vector<u64> t(a + b + 1, 0);
        for (u32 i = 0; i <= a; ++i)
            for (u32 j = 0; j <= b; ++j)
                if (pxs[a][i] && pys[b][j])
                    t[i + j] = f.add(t[i + j], f.mul(pxs[a][i], pys[b][j]));
        std::vector<u64> u(M + 1, 0);
        for (u32 i = 0; i <= a + b; ++i)
            for (u32 j = 0; j <= c; ++j)
                if (t[i] && pzs[c][j]) u[i + j] = f.add(u[i + j], f.mul(t[i], pzs[c][j]));
        UniPoly rem = UniPoly(f, std::move(u)).mod(line.r);
        for (int j = 0; j < dr; ++j) rows[base + j][idx] = rem.coeff(u32(j));
    }
}

struct PoleLinePlan {
    Point base;
    u32 excl;   // 1 at smooth points, 2 at nodes
    u32 count;  // how many independent lines through the base
};

// sample one auxiliary line subject to the incidence hygiene rules
SchemeLine sample_scheme_line(PlaceStore& store, const std::optional<Point>& base, u32 excl,
                              const std::set<Point>& forbidden,
                              const std::vector<SchemeLine>& existing, Rng& rng, int budget) {
    const PlaneCurve& curve = store.curve();
    const PrimeField& f = curve.field();
    for (int attempt = 0; attempt < budget; ++attempt) {
        Point a = base ? *base
                       : Point::normalized(f, rng.below(f.modulus()), rng.below(f.modulus()), 1);
        if (!base && curve.form().eval(a.x, a.y, a.z) == 0) continue;
        Point b = Point::normalized(f, rng.below(f.modulus()), rng.below(f.modulus()), 1);
        if (b == a) continue;
        if (curve.form().eval(b.x, b.y, b.z) == 0) continue;  // keep the direction off the curve
        std::vector<u64> bin = curve.form().restrict_to_line(a.coords(), b.coords());
        UniPoly rf(f, bin);
        if (rf.degree() != int(curve.degree())) continue;
        // divide out the excluded base point (parameter u = 0)
        UniPoly r = rf;
        bool ok = true;
        for (u32 k = 0; k < excl; ++k) {
            if (r.coeff(0) != 0) {
                ok = false;
                break;
            }
            std::vector<u64> shifted(r.coeffs().begin() + 1, r.coeffs().end());
            r = UniPoly(f, std::move(shifted));
        }
        if (!ok || r.is_zero()) continue;
        if (r.coeff(0) == 0) continue;  // residual scheme must avoid the base point
        std::array<u64, 3> lf = cross(f, a.coords(), b.coords());
        // the scheme may not pass through nodes (other than the base), other
        // condition places, or curve points shared with earlier lines
        bool clash = false;
        for (const Point& n : curve.nodes()) {
            if (base && n == *base) continue;
            if (dot(f, lf, n.coords()) == 0) {
                clash = true;
                break;
            }
        }
        if (!clash) {
            for (const Point& p : forbidden) {
                if (base && p == *base) continue;
                if (dot(f, lf, p.coords()) == 0 && curve.form().eval(p.x, p.y, p.z) == 0) {
                    clash = true;
                    break;
                }
            }
        }
        if (!clash) {
            for (const SchemeLine& other : existing) {
                std::array<u64, 3> q = cross(f, lf, other.line_form);
                if (q[0] == 0 && q[1] == 0 && q[2] == 0) {
                    clash = true;  // same line sampled twice
                    break;
                }
                Point inter = Point::normalized(f, q[0], q[1], q[2]);
                if (curve.form().eval(inter.x, inter.y, inter.z) != 0) continue;
                bool shared_base = base && inter == *base &&
                                   Point::normalized(f, other.base[0], other.base[1],
                                                     other.base[2]) == inter;
                if (!shared_base) {
                    clash = true;
                    break;
                }
            }
        }
        if (clash) continue;
        return SchemeLine{a.coords(), b.coords(), lf, r};
    }
    throw ComputeError("could not sample an auxiliary line in general position; "
                       "try another prime or configuration");
}

u64 fdim_of(u32 M, u32 e) { return M >= e ? mono_count(M - e) : 0; }

}  // namespace

u64 h0_of_divisor(PlaceStore& store, const Divisor& d, Rng& rng, const LinsysOptions& opt) {
    const PlaneCurve& curve = store.curve();
    const PrimeField& f = curve.field();
    u32 e = curve.degree();
    if (d.degree(e) < 0) return 0;
    if (d.is_zero()) return 1;  // structure sheaf of an integral curve

    // vanishing orders and pole-line plans per supporting point
    std::vector<std::pair<PlaceKey, u64>> vals;
    std::vector<PoleLinePlan> plans;
    std::set<Point> condition_points;
    std::set<Point> handled;
    for (const auto& [key, c] : d.coeffs) condition_points.insert(key.pt);

    for (const Point& n : curve.nodes()) {
        i64 t0 = 0, t1 = 0;
        auto it0 = d.coeffs.find(PlaceKey{n, 0});
        auto it1 = d.coeffs.find(PlaceKey{n, 1});
        if (it0 != d.coeffs.end()) t0 = it0->second;
        if (it1 != d.coeffs.end()) t1 = it1->second;
        if (t0 == 0 && t1 == 0 && !condition_points.count(n)) {
            // untouched node still needs one line pass so the adjoint
            // conditions can be charged against it
            plans.push_back({n, 2, 1});
            vals.push_back({PlaceKey{n, 0}, 1});
            vals.push_back({PlaceKey{n, 1}, 1});
            continue;
        }
        i64 k = std::max<i64>({0, t0 + 1, t1 + 1});
        if (k > 0) plans.push_back({n, 2, u32(k)});
        if (k - t0 > 0) vals.push_back({PlaceKey{n, 0}, u64(k - t0)});
        if (k - t1 > 0) vals.push_back({PlaceKey{n, 1}, u64(k - t1)});
        handled.insert(n);
    }
    for (const auto& [key, c] : d.coeffs) {
        if (curve.is_declared_node(key.pt)) continue;  // nodes done above
        if (key.branch != 0)
            throw ComputeError("place " + key.str() + " has a branch index off a node");
        if (!curve.is_smooth_point(key.pt))
            throw ComputeError("divisor point " + key.str() + " is not a smooth curve point");
        i64 k = std::max<i64>(0, c);
        if (k > 0) plans.push_back({key.pt, 1, u32(k)});
        if (k - c > 0) vals.push_back({key, u64(k - c)});
    }

    u32 pole_lines = 0;
    for (const PoleLinePlan& p : plans) pole_lines += p.count;
    i64 m_target = std::max<i64>({0, i64(e) - 3, i64(d.hyperplane) + i64(pole_lines)});
    u32 padding = u32(m_target - d.hyperplane - i64(pole_lines));
    u32 M = u32(m_target);

    std::vector<SchemeLine> lines;
    for (const PoleLinePlan& p : plans)
        for (u32 i = 0; i < p.count; ++i)
            lines.push_back(sample_scheme_line(store, p.base, p.excl, condition_points, lines,
                                               rng, opt.line_retry_budget));
    for (u32 i = 0; i < padding; ++i)
        lines.push_back(sample_scheme_line(store, std::nullopt, 0, condition_points, lines, rng,
                                           opt.line_retry_budget));

    std::vector<std::vector<u64>> rows;
    for (const auto& [key, order] : vals) append_val_rows(store, key, order, M, rows);
    for (const SchemeLine& l : lines) append_line_rows(f, l, M, rows);

    u64 rank = fp::dense_rank(f, rows);
    u64 monos = mono_count(M);
    u64 fdim = fdim_of(M, e);
    if (rank + fdim > monos) throw InternalError("h0: condition rank exceeds the monomial space");
    return monos - rank - fdim;
}

u64 h1_of_divisor(PlaceStore& store, const Divisor& d, Rng& rng, const LinsysOptions& opt) {
    const PlaneCurve& curve = store.curve();
    i64 deg_kd = 2 * curve.genus() - 2 - d.degree(curve.degree());
    if (deg_kd < 0) return 0;
    Divisor kd = canonical_divisor(curve).minus(d);
    return h0_of_divisor(store, kd, rng, opt);
}

LinearSystem riemann_roch_space(PlaceStore& store, const NormalizedDivisor& nd, Rng& rng,
                                const LinsysOptions& opt) {
    const PlaneCurve& curve = store.curve();
    const PrimeField& f = curve.field();
    u32 e = curve.degree();
    u32 M = nd.M;

    std::vector<std::vector<u64>> rows;
    for (const auto& [key, order] : nd.conditions) append_val_rows(store, key, order, M, rows);

    // nullspace of the condition matrix over the full monomial space
    u64 monos = mono_count(M);
    std::vector<u32> pivots = fp::rref(f, rows);
    std::vector<bool> is_pivot(monos, false);
    for (u32 c : pivots) is_pivot[c] = true;

    LinearSystem out;
    out.M = M;
    out.divisor = nd;
    out.degree = nd.degree(e);

    // reduce each nullspace vector mod F and keep an independent set
    std::vector<u32> red_idx = reduced_monomials(M, e);
    std::vector<std::vector<u64>> accepted;           // rref-reduced coordinates
    std::vector<u32> accepted_pivot;
    for (u32 c = 0; c < monos; ++c) {
        if (is_pivot[c]) continue;
        Form g(f, M);
        g.coeffs()[c] = 1;
        for (size_t k = 0; k < pivots.size(); ++k)
            g.coeffs()[pivots[k]] = f.neg(rows[k][c]);
        Form nf = g.normal_form(curve.form());
        std::vector<u64> v = nf_coordinates(nf, e);
        // forward-reduce against the accepted rows
        for (size_t k = 0; k < accepted.size(); ++k) {
            u64 x = v[accepted_pivot[k]];
            if (!x) continue;
            for (size_t j = 0; j < v.size(); ++j)
                if (accepted[k][j]) v[j] = f.sub(v[j], f.mul(x, accepted[k][j]));
        }
        u32 piv = u32(v.size());
        for (u32 j = 0; j < v.size(); ++j)
            if (v[j]) {
                piv = j;
                break;
            }
        if (piv == v.size()) continue;  // multiple of F
        u64 inv = f.inv(v[piv]);
        for (u64& x : v) x = f.mul(x, inv);
        accepted.push_back(v);
        accepted_pivot.push_back(piv);
        out.basis.push_back(nf);
    }
    out.h0 = out.basis.size();
    for (const Form& b : out.basis) out.nf_coords.push_back(nf_coordinates(b, e));

    out.h1 = h1_of_divisor(store, nd.as_divisor(), rng, opt);
    i64 expected = out.degree - curve.genus() + 1;
    if (i64(out.h0) - i64(out.h1) != expected)
        throw ComputeError(
            "Riemann-Roch self-check failed: h0 - h1 = " + std::to_string(i64(out.h0) - i64(out.h1)) +
            " but deg - g + 1 = " + std::to_string(expected) +
            " (non-ordinary singularity, incomplete cut-out system, or a valuation bug)");
    return out;
}

}  // namespace syz::curve
