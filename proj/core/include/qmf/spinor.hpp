#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qmf/poly.hpp"

namespace qmf {

// Exterior algebra on 6 generators, elements indexed by bitmask 0..63.
// wedge_sign(a, b) is the sign of sorting the concatenation u_a ^ u_b into
// increasing order, or 0 when the masks intersect.
int wedge_sign(uint32_t a, uint32_t b);

// Clifford algebra of the split form on C^12 acting on Lambda^* C^6.
// Basis vectors, in this fixed order:
//   v_a     = e_a (a = 1..6), acting by wedge:  e_a . u = u_a ^ u
//   v_{6+a} = f_a (a = 1..6), acting by contraction against u_a^*
// so that e_a f_b + f_b e_a = delta_ab and e's (f's) pairwise anticommute:
// v_a v_b + v_b v_a = J_ab with J the split Gram matrix [[0, I6], [I6, 0]].
// clifford_apply(k, in, out, F): out += v_k . in on coefficient vectors of
// length 64 (mask-indexed), k in 0..11.
void clifford_apply(size_t k, const std::vector<uint32_t>& in,
                    std::vector<uint32_t>& out, const Field& F);

// same action on polynomial coefficient vectors
void clifford_apply(size_t k, const std::vector<SparsePoly>& in,
                    std::vector<SparsePoly>& out, const Field& F);

// The invariant pairing on spinors: beta(u, v) = coefficient of u_123456 in
// rev(u) ^ v, where rev multiplies a k-vector by (-1)^{k(k-1)/2}.
// Arguments are mask-indexed coefficient vectors of length 64.
uint32_t beta(const std::vector<uint32_t>& u, const std::vector<uint32_t>& v, const Field& F);
SparsePoly beta(const std::vector<SparsePoly>& u, const std::vector<SparsePoly>& v, const Field& F);

enum class SpinorParity { even, odd };

// A spinor with generic coordinates in one half-spin representation,
// expressed over the coordinate ring of that representation:
//
// even (32 coordinates, IgusaCoordinates order):
//   z = x0 * 1 - sum_{i<j} y_{ij} e_ij - sum_{i<j} x_{ij} s_ij e^c_ij + y0 * e_123456
// where e^c_ij is the complementary 4-vector and s_ij the sign making
// e_ij ^ (s_ij e^c_ij) = e_123456. This dressing of the displayed
// coordinates is the one that squares the moment matrix to a scalar.
//
// odd (32 coordinates w_1..w_6, y_1..y_20, v_1..v_6):
//   z = sum w_a e_a + sum y_k e_{abc} + sum v_a s_a e^c_a
// with Lambda^3 in Lambda3Coordinates order and e^c_a the 5-vector
// complement of e_a, signed so e_a ^ (s_a e^c_a) = e_123456.
std::vector<SparsePoly> generic_spinor(SpinorParity parity, const Field& F);

// ring of the 32 coordinates for the given parity (all weight 1)
WeightedRing spinor_ring(SpinorParity parity);

// The moment-map matrix mu(z) in so_12: with G[a][b] = beta(v_a z, v_b z)
// and J the split Gram matrix [[0, I6], [I6, 0]],
//   mu(z) = G(z) * J,
// a 12x12 matrix of quadrics satisfying mu J + J mu^T = 0. Entries are
// polynomials in the 32 spinor coordinates.
std::vector<std::vector<SparsePoly>> moment_map(SpinorParity parity, const Field& F);

// Result of checking mu(z)^2 against a scalar quartic.
struct MomentSquareResult {
    bool is_scalar = false;      // mu^2 is c * q * I for some constant c
    uint32_t constant = 0;       // the constant c (mod p)
    std::string detail;          // human-readable mismatch description
};

// Verify mu_even(z)^2 = c * P * I_12 symbolically, where P = igusa_quartic.
// Expected constant: c = -4 mod p.
MomentSquareResult verify_mf_even(const Field& F);

// Verify mu_odd(z)^2 is scalar and that the Lambda^3 slice of the scalar
// equals lambda * sl6_quartic with lambda = +1 (restrict w = v = 0).
MomentSquareResult verify_mf_odd(const Field& F);

// Structure of mu_odd restricted to the section w = v = 0: acting between the
// two 6-dimensional Clifford slices it takes the form diag(A, -A^T) with A a
// 6x6 matrix of quadrics in y_1..y_20 proportional to the classical S_y.
struct BlockStructureResult {
    bool ok = false;
    uint32_t scale = 0;          // A = scale * S_y entrywise (expected 1)
    std::string detail;
};
BlockStructureResult verify_block_structure(const Field& F);

// Dense evaluation of mu at a numeric spinor (length-32 coordinate vector),
// used by the randomized prechecks and the dominance module.
std::vector<std::vector<uint32_t>> moment_map_at(SpinorParity parity,
                                                 const std::vector<uint32_t>& coords,
                                                 const Field& F);

// Moment matrix with its conventions bundled for export.
struct MomentMatrix {
    SpinorParity parity;
    uint32_t prime;
    std::vector<std::vector<SparsePoly>> entries; // 12x12 quadrics
};
MomentMatrix build_moment_matrix(SpinorParity parity, const Field& F);

// Write entries as entry_r_c.txt files plus manifest.json recording the
// conventions and the verified constants (c_even, lambda, block scale).
void export_moment_matrix(const MomentMatrix& mm, const std::string& dir);

} // namespace qmf
