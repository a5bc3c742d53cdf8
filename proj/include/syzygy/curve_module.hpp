#pragma once

#include "syzygy/koszul.hpp"
#include "syzygy/linsys.hpp"

namespace syz::curve {

struct CurveModuleOptions {
    int q_max = 2;
    LinsysOptions linsys;
};

struct CurveModuleResult {
    koszul::GradedModule module;
    Normalization base;               // normalization of D (V = L(D))
    Normalization twist;              // normalization of the twist (if any)
    std::vector<LinearSystem> levels; // B_0 .. B_q_max
    LinearSystem sections;            // V = L(D)
};

// Graded module B_q = L(qD + twist) with V = L(D), multiplication realized by
// polynomial products of normal forms re-expressed in the chosen bases.
// D must normalize with the adjoint divisor dominated on nodal curves.
CurveModuleResult build_graded_module(PlaceStore& store, const Divisor& d,
                                      const std::optional<Divisor>& twist, Rng& rng,
                                      const CurveModuleOptions& opt = {});

}  // namespace syz::curve
