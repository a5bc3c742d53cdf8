#pragma once

#include "syzygy/koszul.hpp"

namespace syz::koszul {

// Section ring of the degree-d rational normal curve: V = binary forms of
// degree d, B_q = binary forms of degree d*q, basis indexed by the exponent
// of the second variable. d = 3 is the twisted cubic.
inline GradedModule rational_normal_curve_module(fp::PrimeField f, u32 d, int q_max) {
    if (d == 0 || q_max < 1) throw ValidationError("rational normal curve: need d >= 1, q_max >= 1");
    u32 n = d + 1;
    std::vector<u32> dims;
    for (int q = 0; q <= q_max; ++q) dims.push_back(u32(d) * u32(q) + 1);
    std::vector<std::vector<fp::DenseMat>> mult;
    for (int q = 0; q < q_max; ++q) {
        std::vector<fp::DenseMat> level;
        for (u32 i = 0; i < n; ++i) {
            fp::DenseMat m(f, dims[q + 1], dims[q]);
            for (u32 e = 0; e < dims[q]; ++e) m.at(e + i, e) = 1;
            level.push_back(std::move(m));
        }
        mult.push_back(std::move(level));
    }
    GradedModule mod(f, n, 0, std::move(dims), std::move(mult), true);
    mod.set_description("rational normal curve of degree " + std::to_string(d));
    return mod;
}

// Seeded module with the requested graded dimensions and random dense
// multiplication maps. The module law is not enforced; this exists to
// generate Koszul-shaped matrices for benchmarking the rank engine.
inline GradedModule random_bench_module(fp::PrimeField f, u32 n, std::vector<u32> dims, u64 seed) {
    if (dims.size() < 2) throw ValidationError("bench module: need at least two degrees");
    Rng rng(seed);
    std::vector<std::vector<fp::DenseMat>> mult;
    for (size_t q = 0; q + 1 < dims.size(); ++q) {
        std::vector<fp::DenseMat> level;
        for (u32 i = 0; i < n; ++i) {
            fp::DenseMat m(f, dims[q + 1], dims[q]);
            for (u32 r = 0; r < m.rows(); ++r)
                for (u32 c = 0; c < m.cols(); ++c) m.at(r, c) = rng.below(f.modulus());
            level.push_back(std::move(m));
        }
        mult.push_back(std::move(level));
    }
    GradedModule mod(f, n, 0, std::move(dims), std::move(mult), true);
    mod.set_description("seeded bench module");
    return mod;
}

}  // namespace syz::koszul
