#pragma once

#include <cstdint>
#include "qmf/field.hpp"

namespace qmf {

// SplitMix64. The exact update sequence is part of the reproducibility
// contract: seeded reports must be bit-identical across implementations.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform residue; mild modulo bias is acceptable and frozen by contract
    uint32_t field_elem(const Field& F) {
        return static_cast<uint32_t>(next() % F.p);
    }
};

} // namespace qmf
