#pragma once

#include <string>
#include <vector>

#include "qmf/linalg.hpp"
#include "qmf/poly.hpp"
#include "qmf/rng.hpp"

namespace qmf {

// Row-major matrix of polynomials over one shared ring.
struct PolyMatrix {
    size_t rows = 0, cols = 0;
    std::vector<SparsePoly> entries;
    SparsePoly& at(size_t r, size_t c) { return entries[r * cols + c]; }
    const SparsePoly& at(size_t r, size_t c) const { return entries[r * cols + c]; }
};

PolyMatrix poly_mat(size_t rows, size_t cols, const WeightedRing& R, const Field& F);
PolyMatrix poly_mat_mul(const PolyMatrix& A, const PolyMatrix& B, const Field& F);
PolyMatrix poly_mat_from(const std::vector<std::vector<SparsePoly>>& M);
bool poly_mat_equal(const PolyMatrix& A, const PolyMatrix& B);

// Is M = q * I for a single polynomial q? Fills q on success.
bool poly_mat_is_scalar(const PolyMatrix& M, SparsePoly& q);

// Matrix over F[t]/(t^2 + 1) written as re + t * im. When the base field has
// a square root of -1 the t-part collapses into it; otherwise this is the
// faithful representation.
struct CPolyMatrix {
    PolyMatrix re, im;
};
CPolyMatrix cpoly_mat_mul(const CPolyMatrix& A, const CPolyMatrix& B, const Field& F);

// Substitute source variables by linear forms in a target ring, entrywise.
// section has one row per source variable and one column per target variable.
// Requires full column rank; a degenerate section throws ApiError (callers
// drawing random sections should retry, see random_section).
PolyMatrix restrict_to_section(const PolyMatrix& M, const DenseMat& section,
                               const WeightedRing& target, const Field& F);
SparsePoly restrict_to_section(const SparsePoly& f, const DenseMat& section,
                               const WeightedRing& target, const Field& F);

// Draw a random src_dim x tgt_dim matrix of full column rank. Degenerate
// draws are discarded; each one is counted and reported on stderr so a run
// that needed retries is visible in the log.
struct SectionDraw {
    DenseMat A;
    int retries = 0;
};
SectionDraw random_section(size_t src_dim, size_t tgt_dim, const Field& F, Rng& rng);

// Append one cover variable (named "x", or "xx"... if taken) of the given
// weight to a ring.
WeightedRing extend_ring_by_x(const WeightedRing& R, uint32_t weight);

// Reinterpret f over a ring with one extra trailing variable (exponent 0);
// trailing zeros preserve both the degree and the monomial order.
SparsePoly lift_poly(const SparsePoly& f, const WeightedRing& R2);

// Matrix factorization of the double cover potential W = q + x^2 built from a
// square matrix S with S^2 = q * I over k[z]:
//   B = S + i x I,  C = S - i x I,  B C = C B = W I
// over the ring of S extended by x with weight deg(S). Entries are stored as
// re + t * im; collapse() maps t to the field's i (requires has_i).
// Rejects S that is not square, has non-homogeneous entries, is constant, or
// whose square is not scalar.
// The entries point at the ring member, so keep the returned object where it
// was constructed (guaranteed copy elision); moving it would dangle them.
struct MatrixFactorization {
    WeightedRing ring;         // z-variables plus x
    SparsePoly potential;      // W = q + x^2, over ring
    SparsePoly q;              // the scalar square of S, over ring (no x term)
    size_t n = 0;
    CPolyMatrix B, C;
};
MatrixFactorization double_cover_mf(const PolyMatrix& S, const Field& F);

// Collapse t -> i. Throws ApiError when the field has no i.
std::pair<PolyMatrix, PolyMatrix> mf_collapse(const MatrixFactorization& mf, const Field& F);

// The 2-periodic resolution of coker(B): term k is free of rank n with twist
// -deg(S) * k, and map k alternates B, C, B, ... Length must be >= 1.
struct PeriodicResolution {
    size_t length = 0;
    std::vector<int> twists;     // length + 1 entries: 0, -2, -4, ...
    std::vector<bool> map_is_b;  // length entries: true, false, true, ...
};
PeriodicResolution periodic_resolution(const MatrixFactorization& mf, size_t length);

// Directory layout: potential.txt, B/entry_r_c.txt, C/entry_r_c.txt,
// manifest.json (prime, i, n, variable names, file list). Entries are written
// in poly_write format after collapsing t -> i; a field without i cannot be
// exported this way and throws ApiError.
void export_mf(const MatrixFactorization& mf, const std::string& dir, const Field& F);
MatrixFactorization import_mf(const std::string& dir, const Field& F);

} // namespace qmf
