#include "syzygy/divisor.hpp"

#include <algorithm>

namespace syz::curve {

const Place& PlaceStore::place(const PlaceKey& key, u32 min_precision) {
    auto it = places_.find(key);
    if (it != places_.end() && it->second.precision >= min_precision) return it->second;
    u32 prec = min_precision;
    if (it != places_.end()) prec = std::max(prec, it->second.precision * 2);
    Place p = expand_branch(*curve_, key.pt, key.branch, prec);
    points_.insert(key.pt);
    auto [pos, inserted] = places_.insert_or_assign(key, std::move(p));
    return pos->second;
}

Point PlaceStore::fresh_point(Rng& rng) {
    auto p = sample_smooth_point(*curve_, rng, points_);
    if (!p) throw ComputeError("could not sample a fresh smooth rational point");
    points_.insert(*p);
    return *p;
}

Divisor canonical_divisor(const PlaneCurve& curve) {
    if (curve.degree() < 3)
        throw ComputeError("canonical divisor needs curve degree >= 3");
    Divisor k;
    k.hyperplane = int(curve.degree()) - 3;
    for (const Point& n : curve.nodes()) {
        k.coeffs[PlaceKey{n, 0}] = -1;
        k.coeffs[PlaceKey{n, 1}] = -1;
    }
    return k;
}

namespace {

std::array<u64, 3> cross(const PrimeField& f, const std::array<u64, 3>& a,
                         const std::array<u64, 3>& b) {
    return {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
            f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
            f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

}  // namespace

std::optional<std::vector<Point>> split_line_through(const PlaneCurve& curve, const Point& a,
                                                     const Point& b, Rng& rng) {
    const PrimeField& f = curve.field();
    if (a == b) throw ComputeError("line through coincident points");
    std::vector<u64> bin = curve.form().restrict_to_line(a.coords(), b.coords());
    UniPoly r(f, bin);  // coefficient of u^k; parametrization a + u b plus u = infinity for b
    if (r.is_zero()) return std::nullopt;  // line is a component
    u32 e = curve.degree();
    int deg = r.degree();
    std::vector<Point> points;
    if (deg < int(e)) {
        // b is a root "at infinity" of the parametrization
        if (deg + 1 < int(e)) return std::nullopt;  // multiple root at b
        if (curve.form().eval(b.x, b.y, b.z) != 0) throw InternalError("degree drop off curve");
        points.push_back(b);
    }
    auto roots = r.distinct_rational_roots(rng);
    if (!roots) return std::nullopt;
    for (u64 u : *roots) {
        points.push_back(Point::normalized(f, f.add(a.x, f.mul(u, b.x)),
                                           f.add(a.y, f.mul(u, b.y)),
                                           f.add(a.z, f.mul(u, b.z))));
    }
    if (points.size() != e) return std::nullopt;
    return points;
}

namespace {

struct SplitLineResult {
    std::array<u64, 3> line_form;
    std::vector<Point> points;
};

// checks that the split consists of smooth points, with `through` appearing
// exactly once each and the rest fresh; returns residual points
std::optional<std::vector<Point>> classify_split(const PlaneCurve& curve, PlaceStore& store,
                                                 const std::vector<Point>& points,
                                                 const std::vector<Point>& through) {
    std::vector<Point> residual;
    std::vector<Point> seen;
    for (const Point& p : points) {
        if (std::find(seen.begin(), seen.end(), p) != seen.end()) return std::nullopt;
        seen.push_back(p);
        if (!curve.is_smooth_point(p)) return std::nullopt;
        if (std::find(through.begin(), through.end(), p) != through.end()) continue;
        if (store.point_known(p)) return std::nullopt;
        residual.push_back(p);
    }
    // every requested point must actually lie on the line section
    for (const Point& t : through)
        if (std::find(points.begin(), points.end(), t) == points.end()) return std::nullopt;
    return residual;
}

}  // namespace

Normalization normalize_divisor(PlaceStore& store, const Divisor& d, Rng& rng,
                                const NormalizeOptions& opt) {
    const PlaneCurve& curve = store.curve();
    const PrimeField& f = curve.field();
    u32 e = curve.degree();

    Normalization out;
    NormalizedDivisor& nd = out.divisor;
    if (d.hyperplane < 0)
        throw ComputeError("normalize: negative hyperplane part is not supported here");
    nd.M = u32(d.hyperplane);
    std::map<PlaceKey, i64> positive;
    for (const auto& [k, c] : d.coeffs) {
        if (c < 0) {
            nd.conditions[k] += u64(-c);
        } else if (c > 0) {
            if (k.branch != 0 || curve.is_declared_node(k.pt) || !curve.is_smooth_point(k.pt))
                throw ComputeError("normalize: positive part at " + k.str() +
                                   " is not a smooth rational point");
            positive[k] = c;
            store.reserve_point(k.pt);
        }
    }
    for (const auto& [k, c] : nd.conditions) store.reserve_point(k.pt);

    auto apply_line = [&](const Point& pa, const Point& pb, const std::vector<PlaceKey>& consumed,
                          const std::vector<Point>& residual, u32 times) {
        for (const Point& rp : residual) {
            store.reserve_point(rp);
            nd.conditions[PlaceKey{rp, 0}] += times;
        }
        nd.M += times;
        LineCertificate cert;
        cert.line = cross(f, pa.coords(), pb.coords());
        cert.times = times;
        cert.consumed = consumed;
        for (const Point& rp : residual) cert.residual.push_back(PlaceKey{rp, 0});
        out.certificate.push_back(cert);
    };

    // pair positive places on lines through two of them; fall back to a
    // random line through a single place
    while (!positive.empty()) {
        if (positive.size() >= 2) {
            auto it = positive.begin();
            PlaceKey ka = it->first;
            PlaceKey kb = std::next(it)->first;
            u32 times = u32(std::min(it->second, std::next(it)->second));
            auto points = split_line_through(curve, ka.pt, kb.pt, rng);
            std::optional<std::vector<Point>> residual;
            if (points) residual = classify_split(curve, store, *points, {ka.pt, kb.pt});
            if (residual) {
                apply_line(ka.pt, kb.pt, {ka, kb}, *residual, times);
                it->second -= times;
                std::next(it)->second -= times;
                if (std::next(it)->second == 0) positive.erase(std::next(it));
                if (it->second == 0) positive.erase(it);
                continue;
            }
            // the unique line through the pair does not split; handle ka alone
        }
        auto it = positive.begin();
        PlaceKey ka = it->first;
        u32 times = u32(it->second);
        bool done = false;
        for (int attempt = 0; attempt < opt.line_retry_budget && !done; ++attempt) {
            Point q{rng.below(f.modulus()), rng.below(f.modulus()), 1};
            q = Point::normalized(f, q.x, q.y, q.z);
            if (q == ka.pt) continue;
            auto points = split_line_through(curve, ka.pt, q, rng);
            if (!points) continue;
            auto residual = classify_split(curve, store, *points, {ka.pt});
            if (!residual) continue;
            apply_line(ka.pt, q, {ka}, *residual, times);
            positive.erase(it);
            done = true;
        }
        if (!done)
            throw ComputeError("normalize: no line through " + ka.str() +
                               " splits into distinct rational smooth points; "
                               "try another prime or configuration");
    }

    // ensure the cut-out degree is at least degree - 3
    while (int(nd.M) < int(e) - 3) {
        bool done = false;
        for (int attempt = 0; attempt < opt.line_retry_budget && !done; ++attempt) {
            Point a{rng.below(f.modulus()), rng.below(f.modulus()), 1};
            Point b{1, rng.below(f.modulus()), rng.below(f.modulus())};
            a = Point::normalized(f, a.x, a.y, a.z);
            b = Point::normalized(f, b.x, b.y, b.z);
            if (a == b) continue;
            auto points = split_line_through(curve, a, b, rng);
            if (!points) continue;
            auto residual = classify_split(curve, store, *points, {});
            if (!residual) continue;
            apply_line(a, b, {}, *residual, 1);
            done = true;
        }
        if (!done)
            throw ComputeError("normalize: could not raise the hyperplane degree with split lines");
    }
    return out;
}

}  // namespace syz::curve
