#pragma once

#include <cstdint>
#include <vector>

#include "qmf/linalg.hpp"
#include "qmf/poly.hpp"

namespace qmf {

// Derivative of the pullback map at a linear section. For A in Hom(C^6, C^N)
// (stored N x 6) and a quartic P in N variables, the row indexed by the
// direction E_{ab} holds the coefficient vector of (d_a P)(A z) * z_b in the
// 126-dimensional space of quartics in z_1..z_6. 6N rows, 126 columns.
DenseMat pullback_jacobian(const SparsePoly& quartic, const DenseMat& A, const Field& F);
size_t pullback_span_rank(const SparsePoly& quartic, const DenseMat& A, const Field& F);

// the half-spin case: P the even 32-variable invariant quartic, A is 32 x 6,
// 192 rows
DenseMat pullback_jacobian(const DenseMat& A, const Field& F);

// rank of the jacobian; 126 certifies that the section family dominates the
// space of quartics at A (A = 0 gives 0, a rank-1 section stays <= 6)
size_t pullback_span_rank(const DenseMat& A, const Field& F);

struct DominanceTrial {
    uint32_t seed = 0;
    size_t rank = 0;
};

// Draw `trials` sections from seeds seed0, seed0+1, ... and record the rank
// of each jacobian. The verdict is dominant when at least one trial reaches
// the full rank 126 (mod-p degenerations can depress single draws, so one
// witness suffices). trials = 0 is rejected.
struct DominanceVerdict {
    std::vector<DominanceTrial> trials;
    bool dominant = false;
    size_t full_rank = 126;
};
DominanceVerdict dominance_verdict(uint32_t seed0, size_t trials, const Field& F);

} // namespace qmf
