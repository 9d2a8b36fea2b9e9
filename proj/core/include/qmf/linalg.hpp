#pragma once

#include <cstdint>
#include <vector>

#include "qmf/field.hpp"

namespace qmf {

// Dense matrix over F_p, row-major.
struct DenseMat {
    size_t rows = 0, cols = 0;
    std::vector<uint32_t> a;

    DenseMat() = default;
    DenseMat(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
    uint32_t& at(size_t r, size_t c) { return a[r * cols + c]; }
    uint32_t at(size_t r, size_t c) const { return a[r * cols + c]; }
    uint32_t* row(size_t r) { return a.data() + r * cols; }
    const uint32_t* row(size_t r) const { return a.data() + r * cols; }
};

struct RankKernel {
    size_t rank = 0;
    // kernel basis, one column vector per row entry here (kernel_dim x cols)
    std::vector<std::vector<uint32_t>> kernel;
};

// In-place Gauss-Jordan to reduced row echelon form; returns pivot columns.
std::vector<size_t> rref(DenseMat& M, const Field& F);

size_t rank(DenseMat M, const Field& F);

// rank + explicit kernel basis; every kernel vector satisfies M v = 0
RankKernel rank_kernel(DenseMat M, const Field& F);

// Textbook single-pass elimination kept separate as a cross-check oracle.
size_t naive_gauss_rank(DenseMat M, const Field& F);

DenseMat mat_mul(const DenseMat& A, const DenseMat& B, const Field& F);

} // namespace qmf
