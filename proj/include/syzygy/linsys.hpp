#pragma once

#include "syzygy/divisor.hpp"
#include "syzygy/matrix.hpp"

namespace syz::curve {

// A computed complete linear system: basis forms of degree M (normal forms
// mod the defining equation) satisfying the vanishing orders of the
// normalized divisor, with certified h^0 and h^1.
struct LinearSystem {
    u32 M = 0;
    NormalizedDivisor divisor;
    std::vector<Form> basis;                   // normal forms mod F
    std::vector<std::vector<u64>> nf_coords;   // coordinates in the reduced monomial basis
    u64 h0 = 0;
    u64 h1 = 0;
    i64 degree = 0;
};

struct LinsysOptions {
    u32 precision_cap = 1u << 14;
    int line_retry_budget = 64;
};

// index maps between degree-M monomials and the reduced basis (x-exponent
// below the curve degree) used for normal-form coordinates
std::vector<u32> reduced_monomials(u32 M, u32 curve_degree);
std::vector<u64> nf_coordinates(const Form& nf, u32 curve_degree);

// dimension of L(D) for an arbitrary place-supported divisor; pole places are
// traded for vanishing along auxiliary line sections, so no splitting of
// residual intersections is required
u64 h0_of_divisor(PlaceStore& store, const Divisor& d, Rng& rng, const LinsysOptions& opt = {});

// h^1(D) = h^0(K - D) via the canonical divisor
u64 h1_of_divisor(PlaceStore& store, const Divisor& d, Rng& rng, const LinsysOptions& opt = {});

// Complete linear system of a normalized divisor (M >= degree-3; on nodal
// curves the conditions must dominate the adjoint divisor). Certifies
// h0 - h1 = deg - g + 1 and throws ComputeError when the check fails.
LinearSystem riemann_roch_space(PlaceStore& store, const NormalizedDivisor& nd, Rng& rng,
                                const LinsysOptions& opt = {});

}  // namespace syz::curve
