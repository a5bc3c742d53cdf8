#pragma once

#include "syzygy/plane_curve.hpp"

namespace syz::curve {

// Formal divisor m*H + sum of signed coefficients on places.
struct Divisor {
    int hyperplane = 0;
    std::map<PlaceKey, i64> coeffs;

    i64 degree(u32 curve_degree) const {
        i64 d = i64(hyperplane) * curve_degree;
        for (const auto& [k, c] : coeffs) d += c;
        return d;
    }
    bool is_zero() const { return hyperplane == 0 && coeffs.empty(); }

    Divisor& add_place(const PlaceKey& k, i64 c) {
        if (c == 0) return *this;
        auto it = coeffs.find(k);
        if (it == coeffs.end()) {
            coeffs[k] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
        return *this;
    }
    Divisor plus(const Divisor& o) const {
        Divisor r = *this;
        r.hyperplane += o.hyperplane;
        for (const auto& [k, c] : o.coeffs) r.add_place(k, c);
        return r;
    }
    Divisor scaled(i64 m) const {
        Divisor r;
        r.hyperplane = int(m * hyperplane);
        if (m != 0)
            for (const auto& [k, c] : coeffs) r.coeffs[k] = m * c;
        return r;
    }
    Divisor minus(const Divisor& o) const { return plus(o.scaled(-1)); }
};

// M*H - E with E effective: a form degree plus vanishing orders per place.
struct NormalizedDivisor {
    u32 M = 0;
    std::map<PlaceKey, u64> conditions;

    i64 degree(u32 curve_degree) const {
        i64 d = i64(M) * curve_degree;
        for (const auto& [k, c] : conditions) d -= i64(c);
        return d;
    }
    u64 max_order() const {
        u64 m = 0;
        for (const auto& [k, c] : conditions) m = std::max(m, c);
        return m;
    }
    Divisor as_divisor() const {
        Divisor d;
        d.hyperplane = int(M);
        for (const auto& [k, c] : conditions) d.coeffs[k] = -i64(c);
        return d;
    }
};

struct LineCertificate {
    std::array<u64, 3> line;           // coefficients of the auxiliary line form
    u32 times;                         // how often the relation was applied
    std::vector<PlaceKey> consumed;    // positive places cancelled by the line
    std::vector<PlaceKey> residual;    // places adjoined to the support
};

struct Normalization {
    NormalizedDivisor divisor;
    std::vector<LineCertificate> certificate;
};

// Shared registry of branch expansions and of every point in use; residual
// and sampled points must stay distinct from everything already here.
class PlaceStore {
public:
    explicit PlaceStore(const PlaneCurve& curve) : curve_(&curve) {
        for (const Point& n : curve.nodes()) points_.insert(n);
    }

    const PlaneCurve& curve() const { return *curve_; }

    // cached branch expansion, re-expanded when more precision is requested
    const Place& place(const PlaceKey& key, u32 min_precision);

    void reserve_point(const Point& p) { points_.insert(p); }
    bool point_known(const Point& p) const { return points_.count(p) > 0; }
    const std::set<Point>& known_points() const { return points_; }

    // smooth rational point distinct from everything seen so far
    Point fresh_point(Rng& rng);

private:
    const PlaneCurve* curve_;
    std::map<PlaceKey, Place> places_;
    std::set<Point> points_;
};

// the adjoint-corrected canonical divisor (e-3)H - (one per node branch)
Divisor canonical_divisor(const PlaneCurve& curve);

struct NormalizeOptions {
    int line_retry_budget = 32;
};

// Rewrites D as M*H - E with E effective by cancelling positive places
// against lines; every residual intersection must split into distinct,
// rational, smooth, previously unused points. Raises M to at least
// degree - 3 with fully split auxiliary lines when needed.
Normalization normalize_divisor(PlaceStore& store, const Divisor& d, Rng& rng,
                                const NormalizeOptions& opt = {});

// Intersection of the line through a and b with the curve when it consists of
// curve.degree() distinct rational points; nullopt otherwise.
std::optional<std::vector<Point>> split_line_through(const PlaneCurve& curve, const Point& a,
                                                     const Point& b, Rng& rng);

}  // namespace syz::curve
