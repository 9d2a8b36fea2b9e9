#pragma once

#include <array>
#include <vector>

#include "qmf/poly.hpp"

namespace qmf {

// Coordinates on the 32-dimensional even spinor space, flattened as
//   x0, x_{12}, x_{13}, ..., x_{56}, y_{12}, ..., y_{56}, y0
// with pairs (i,j), i<j, in lexicographic order. Index helpers below.
struct IgusaCoordinates {
    static constexpr size_t count = 32;
    static size_t x0() { return 0; }
    static size_t x(size_t pair_idx) { return 1 + pair_idx; }       // 0..14
    static size_t y(size_t pair_idx) { return 16 + pair_idx; }      // 0..14
    static size_t y0() { return 31; }
    // lexicographic rank of the pair (i,j), 1 <= i < j <= 6
    static size_t pair_index(size_t i, size_t j);
    static WeightedRing ring(); // 32 variables, all weight 1
};

// Coordinates y_1..y_20 on wedge^3 C^6: y_k is attached to u_a ^ u_b ^ u_c
// where {a<b<c} is the k-th 3-subset of {1..6} in lexicographic order
// (y_1 = 123, y_2 = 124, ..., y_20 = 456).
struct Lambda3Coordinates {
    static constexpr size_t count = 20;
    static WeightedRing ring(); // 20 variables, all weight 1
    // the k-th subset (0-based) as three 1-based indices
    static std::array<int, 3> subset(size_t k);
};

// Pfaffian of an alternating polynomial matrix by first-row expansion,
// normalized so that Pf of the standard block diag([[0,1],[-1,0]],...) = +1.
// Throws on odd size or a non-alternating matrix.
SparsePoly pfaffian(const std::vector<std::vector<SparsePoly>>& M, const Field& F);

// brute-force perfect-matching Pfaffian, kept as an oracle for tests
SparsePoly pfaffian_matchings(const std::vector<std::vector<SparsePoly>>& M, const Field& F);

// The degree-4 invariant of the even half-spin representation:
//   P = x0 Pf(X) + y0 Pf(Y) + sum_{i<j} Pf(X_{i,j}) Pf(Y_{i,j})
//       - 1/4 (x0 y0 - sum x_{ij} y_{ij})^2
// where X, Y are the alternating 6x6 matrices of the x/y coordinates and
// the (i,j) minors cross out rows and columns i and j, remaining indices
// keeping their induced order. Rejects characteristic 2.
SparsePoly igusa_quartic(const Field& F);

// The degree-4 invariant on wedge^3 C^6:
//   lP = (y1 y20 - Tr(Ya Yb))^2 + 4 y1 det(Yb) + 4 y20 det(Ya)
//        - 4 sum_{i,j} det(Ya_{i,j}) det(Yb_{j,i})
// with Ya, Yb the displayed 3x3 coordinate matrices. The minor pairing
// crosses the second factor at transposed indices; this is the reading the
// identity S_y^2 = lP * I forces (the aligned pairing fails it).
SparsePoly sl6_quartic(const Field& F);

} // namespace qmf
