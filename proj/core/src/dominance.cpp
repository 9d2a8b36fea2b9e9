#include "qmf/dominance.hpp"

#include "qmf/invariants.hpp"
#include "qmf/rng.hpp"

namespace qmf {

DenseMat pullback_jacobian(const SparsePoly& quartic, const DenseMat& A, const Field& F) {
    if (!quartic.ring) throw ApiError("quartic without a ring");
    const size_t N = quartic.ring->nvars();
    if (!(quartic.is_homogeneous() && quartic.degree() == 4))
        throw ApiError("pullback jacobian needs a homogeneous quartic");
    if (A.rows != N || A.cols != 6) throw ApiError("section must be N x 6");

    const WeightedRing zr = plain_ring("z", 6);
    std::vector<std::vector<uint32_t>> m(N, std::vector<uint32_t>(6));
    for (size_t r = 0; r < N; ++r)
        for (size_t c = 0; c < 6; ++c) m[r][c] = A.at(r, c);

    const size_t qcols = monomial_count(zr, 4); // 126
    DenseMat out(6 * N, qcols);
    const std::vector<SparsePoly> dP = partials(quartic, F);
    for (size_t a = 0; a < N; ++a) {
        SparsePoly cube = substitute_linear(dP[a], F, m, zr);
        for (size_t b = 0; b < 6; ++b) {
            SparsePoly row = poly_mul(cube, poly_var(zr, F, b), F);
            std::vector<uint32_t> coords = poly_coords(row, 4);
            for (size_t k = 0; k < qcols; ++k) out.at(a * 6 + b, k) = coords[k];
        }
    }
    return out;
}

size_t pullback_span_rank(const SparsePoly& quartic, const DenseMat& A, const Field& F) {
    return rank(pullback_jacobian(quartic, A, F), F);
}

DenseMat pullback_jacobian(const DenseMat& A, const Field& F) {
    return pullback_jacobian(igusa_quartic(F), A, F);
}

size_t pullback_span_rank(const DenseMat& A, const Field& F) {
    return rank(pullback_jacobian(A, F), F);
}

DominanceVerdict dominance_verdict(uint32_t seed0, size_t trials, const Field& F) {
    if (trials == 0) throw ApiError("dominance needs at least one trial");
    const SparsePoly P = igusa_quartic(F);
    DominanceVerdict v;
    for (size_t t = 0; t < trials; ++t) {
        const uint32_t seed = seed0 + static_cast<uint32_t>(t);
        Rng rng(seed);
        DenseMat A(32, 6);
        for (auto& cell : A.a) cell = rng.field_elem(F);
        DominanceTrial trial;
        trial.seed = seed;
        trial.rank = pullback_span_rank(P, A, F);
        if (trial.rank == v.full_rank) v.dominant = true;
        v.trials.push_back(trial);
    }
    return v;
}

} // namespace qmf
