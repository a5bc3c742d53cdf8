#include "syzygy/curve_module.hpp"

#include <sstream>

namespace syz::curve {

CurveModuleResult build_graded_module(PlaceStore& store, const Divisor& d,
                                      const std::optional<Divisor>& twist, Rng& rng,
                                      const CurveModuleOptions& opt) {
    const PlaneCurve& curve = store.curve();
    const PrimeField& f = curve.field();
    u32 e = curve.degree();
    if (opt.q_max < 1) throw ComputeError("graded module needs q_max >= 1");

    Normalization base = normalize_divisor(store, d, rng);
    if (int(base.divisor.M) < int(e) - 3)
        throw ComputeError("module divisor normalizes below degree-3 forms");
    for (const Point& n : curve.nodes()) {
        for (int b = 0; b < 2; ++b) {
            auto it = base.divisor.conditions.find(PlaceKey{n, b});
            if (it == base.divisor.conditions.end() || it->second < 1)
                throw ComputeError(
                    "module divisor must dominate the adjoint divisor; include the canonical "
                    "base (node " + n.str() + ")");
        }
    }
    Normalization tw;
    if (twist) tw = normalize_divisor(store, *twist, rng);

    // level q lives in degree q*M_D + M_T with conditions q*E_D + E_T
    auto level_divisor = [&](int q) {
        NormalizedDivisor nd;
        nd.M = u32(q) * base.divisor.M + tw.divisor.M;
        for (const auto& [k, c] : base.divisor.conditions) {
            u64 v = u64(q) * c;
            if (v) nd.conditions[k] += v;
        }
        for (const auto& [k, c] : tw.divisor.conditions) nd.conditions[k] += c;
        return nd;
    };

    CurveModuleResult out{koszul::GradedModule(f, 1, 0, {1}, {}, true), base, tw, {}, {}};
    out.sections = riemann_roch_space(store, base.divisor, rng, opt.linsys);
    u32 n = u32(out.sections.h0);
    if (n < 2) throw ComputeError("dim L(D) < 2: not a useful embedding");

    for (int q = 0; q <= opt.q_max; ++q)
        out.levels.push_back(riemann_roch_space(store, level_divisor(q), rng, opt.linsys));

    std::vector<u32> dims;
    for (const LinearSystem& l : out.levels) dims.push_back(u32(l.h0));

    std::vector<std::vector<fp::DenseMat>> mult;
    for (int q = 0; q < opt.q_max; ++q) {
        const LinearSystem& src = out.levels[size_t(q)];
        const LinearSystem& dst = out.levels[size_t(q) + 1];
        fp::SpanSolver solver(f, dst.nf_coords);
        std::vector<fp::DenseMat> level;
        for (u32 i = 0; i < n; ++i) {
            fp::DenseMat m(f, u32(dst.h0), u32(src.h0));
            for (u32 j = 0; j < src.h0; ++j) {
                Form prod = out.sections.basis[i].mul(src.basis[j]).normal_form(curve.form());
                auto coords = solver.solve(nf_coordinates(prod, e));
                if (!coords) {
                    std::ostringstream os;
                    os << "product of section " << i << " with basis vector " << j
                       << " of level " << q << " is not in the computed span of level "
                       << q + 1 << " (cut-out system incomplete)";
                    throw ComputeError(os.str());
                }
                for (u32 r = 0; r < dst.h0; ++r) m.at(r, j) = (*coords)[r];
            }
            level.push_back(std::move(m));
        }
        mult.push_back(std::move(level));
    }

    // negative degrees vanish once deg(qD + T) < 0 for every q < 0
    i64 deg_d = base.divisor.degree(e);
    i64 deg_t = twist ? tw.divisor.degree(e) : 0;
    bool zero_below = deg_d > 0 && deg_t - deg_d < 0;

    koszul::GradedModule mod(f, n, 0, std::move(dims), std::move(mult), zero_below);
    for (int q = 0; q <= opt.q_max; ++q) mod.certify_h1(q, out.levels[size_t(q)].h1);
    std::ostringstream desc;
    desc << "curve degree " << e << ", genus " << curve.genus() << ", deg D = " << deg_d;
    if (twist) desc << ", twisted (deg " << deg_t << ")";
    mod.set_description(desc.str());

    if (auto v = koszul::verify_graded_module(mod))
        throw InternalError("curve module violates the module law: " + v->message);
    out.module = std::move(mod);
    return out;
}

}  // namespace syz::curve
