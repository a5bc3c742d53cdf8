#pragma once

#include <map>
#include <optional>
#include <set>

#include "syzygy/poly.hpp"

namespace syz::curve {

// Projective point over F_p, scaled so the first nonzero coordinate is 1.
struct Point {
    u64 x = 0, y = 0, z = 0;

    static Point normalized(const PrimeField& f, u64 x, u64 y, u64 z);
    std::array<u64, 3> coords() const { return {x, y, z}; }
    bool operator<(const Point& o) const {
        return std::tie(x, y, z) < std::tie(o.x, o.y, o.z);
    }
    bool operator==(const Point& o) const { return x == o.x && y == o.y && z == o.z; }
    std::string str() const;
};

// A place of the curve: a rational point together with a branch index
// (0 for smooth points, 0/1 at a split node).
struct PlaceKey {
    Point pt;
    int branch = 0;
    bool operator<(const PlaceKey& o) const {
        return pt == o.pt ? branch < o.branch : pt < o.pt;
    }
    bool operator==(const PlaceKey& o) const { return pt == o.pt && branch == o.branch; }
    std::string str() const;
};

// Truncated parametrization of one branch: homogeneous coordinate series with
// the chart coordinate identically 1 and F(X,Y,Z) = 0 mod t^precision.
struct Place {
    PlaceKey key;
    u32 precision = 0;
    Series X, Y, Z;

    const Series& coord(int i) const { return i == 0 ? X : (i == 1 ? Y : Z); }
};

class PlaneCurve {
public:
    PlaneCurve(Form defining_form, std::vector<Point> nodes);

    const PrimeField& field() const { return form_.field(); }
    const Form& form() const { return form_; }
    u32 degree() const { return form_.degree(); }
    const std::vector<Point>& nodes() const { return nodes_; }

    i64 genus() const;
    u32 gonality_hint() const;  // upper bound via projection, not certified

    bool on_curve(const Point& p) const { return form_.eval(p.x, p.y, p.z) == 0; }
    // gradient; zero at singular points (and only there, for valid models)
    std::array<u64, 3> gradient(const Point& p) const;
    bool is_declared_node(const Point& p) const;
    bool is_smooth_point(const Point& p) const;

    // full geometric validation of the declared data; throws ValidationError
    void validate() const;

    // Branch tangent slopes at a node in its canonical chart, in the
    // deterministic branch order (finite slopes ascending, vertical last);
    // nullopt marks the vertical tangent. Validates ordinarity and tangent
    // rationality as a side effect.
    std::array<std::optional<u64>, 2> node_tangent_slopes(const Point& node) const;

private:
    Form form_;
    std::vector<Point> nodes_;
};

// Truncated parametrization of the branch of `curve` at `point`.
// branch_choice must be 0 at smooth points and 0/1 at declared nodes.
Place expand_branch(const PlaneCurve& curve, const Point& point, int branch_choice,
                    u32 precision);

struct ValuationOptions {
    u32 precision_cap = 1u << 14;
};

// order of vanishing of G along the branch; doubles the working precision on
// demand up to the cap and then reports failure (G likely vanishes on a
// whole component)
u64 form_valuation(const PlaneCurve& curve, const Form& g, const Place& place,
                   const ValuationOptions& opt = {});

// a random smooth rational point avoiding `avoid`; nullopt if the sampling
// budget runs out
std::optional<Point> sample_smooth_point(const PlaneCurve& curve, Rng& rng,
                                         const std::set<Point>& avoid, int budget = 4096);

}  // namespace syz::curve
