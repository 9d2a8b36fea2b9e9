#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qmf/field.hpp"

namespace qmf {

// Sparse column: row indices with values. Rows live in the codomain of the
// linear map, columns in the domain; rank is computed over the columns.
struct SparseCol {
    std::vector<uint32_t> idx;
    std::vector<uint16_t> val;
};

struct SparseRankResult {
    size_t rank = 0;
    size_t sketch_rows = 0;   // final sketch height used
    size_t grow_steps = 0;    // times the sketch had to be enlarged
    uint64_t nnz = 0;
    bool certified = false;   // kernel certificate checked exactly
};

// Exact rank of a huge sparse matrix given column-by-column, for p < 2^16.
//
// Method: draw a seeded sparse random projection G (fixed entries per
// codomain row), accumulate the dense sketch G*M column by column, run
// Gauss-Jordan on the sketch, and read off rank r and a kernel basis K of
// the sketch. Always rank(G*M) <= rank(M); checking M*K = 0 exactly shows
// nullity(M) >= dim K, hence rank(M) = r unconditionally. If the sketch
// saturates (r equals its height) or the certificate fails, the sketch is
// enlarged and the computation repeats, so the result never depends on the
// projection being lucky.
//
// rank_hint sizes the first sketch (clamped to the domain); pass 0 for the
// default, 90% of the domain. column_fn(c) is called once per column, in
// order; the matrix is cached in compressed column form (6 bytes per entry)
// for the certificate passes. The reference returned by column_fn only has
// to stay valid until the next call.
SparseRankResult sparse_rank_certified(
    const Field& F,
    size_t domain_dim,
    size_t codomain_dim,
    const std::function<const SparseCol&(size_t)>& column_fn,
    size_t rank_hint,
    uint64_t sketch_seed);

} // namespace qmf
