#include "qmf/linalg.hpp"

#include <algorithm>

namespace qmf {

namespace {

// Left-looking elimination with a u64 row accumulator: additions stay
// unreduced inside the buffer and are reduced once per pivot lookup. The
// renorm threshold keeps sums below 2^64 for any prime.
struct Eliminator {
    const Field& F;
    size_t cols;
    uint64_t renorm_after;

    Eliminator(const Field& f, size_t c) : F(f), cols(c) {
        uint64_t step = uint64_t(F.p - 1) * (F.p - 1);
        renorm_after = step ? (~uint64_t(0)) / step : ~uint64_t(0);
        if (renorm_after > 1) renorm_after -= 1;
    }

    void renorm(std::vector<uint64_t>& buf, size_t from) const {
        for (size_t j = from; j < cols; ++j) buf[j] %= F.p;
    }

    // buf[c..] += f * row[c..]
    static void axpy(std::vector<uint64_t>& buf, const uint32_t* row, size_t from,
                     size_t cols, uint64_t f) {
        for (size_t j = from; j < cols; ++j) buf[j] += f * row[j];
    }
};

} // namespace

std::vector<size_t> rref(DenseMat& M, const Field& F) {
    const size_t cols = M.cols;
    Eliminator el(F, cols);
    // pivots sorted by column: (column, row)
    std::vector<std::pair<size_t, size_t>> piv;
    std::vector<uint64_t> buf(cols);

    for (size_t i = 0; i < M.rows; ++i) {
        uint32_t* r = M.row(i);
        for (size_t j = 0; j < cols; ++j) buf[j] = r[j] % F.p;
        uint64_t since = 0;
        for (const auto& [pc, pr] : piv) {
            uint64_t f = buf[pc] % F.p;
            if (f == 0) continue;
            Eliminator::axpy(buf, M.row(pr), pc, cols, F.p - f);
            if (++since >= el.renorm_after) {
                el.renorm(buf, 0);
                since = 0;
            }
        }
        el.renorm(buf, 0);
        size_t lead = cols;
        for (size_t j = 0; j < cols; ++j)
            if (buf[j]) {
                lead = j;
                break;
            }
        if (lead == cols) {
            std::fill(r, r + cols, 0u);
            continue;
        }
        uint64_t inv = F.inv(static_cast<uint32_t>(buf[lead]));
        for (size_t j = 0; j < cols; ++j)
            r[j] = static_cast<uint32_t>(buf[j] * inv % F.p);
        auto pos = std::lower_bound(piv.begin(), piv.end(), std::make_pair(lead, size_t(0)));
        piv.insert(pos, {lead, i});
    }

    // clear entries above pivots, walking pivots from the right so every row
    // used for elimination is already fully reduced
    for (size_t k = piv.size(); k-- > 0;) {
        auto [c, rrow] = piv[k];
        uint32_t* r = M.row(rrow);
        for (size_t j = 0; j < cols; ++j) buf[j] = r[j];
        uint64_t since = 0;
        for (size_t m = k + 1; m < piv.size(); ++m) {
            auto [cm, rm] = piv[m];
            uint64_t f = buf[cm] % F.p;
            if (f == 0) continue;
            Eliminator::axpy(buf, M.row(rm), cm, cols, F.p - f);
            if (++since >= el.renorm_after) {
                el.renorm(buf, c);
                since = 0;
            }
        }
        for (size_t j = 0; j < cols; ++j) r[j] = static_cast<uint32_t>(buf[j] % F.p);
    }

    // move pivot rows to the top, in column order
    std::vector<size_t> pivot_cols;
    pivot_cols.reserve(piv.size());
    for (size_t k = 0; k < piv.size(); ++k) {
        pivot_cols.push_back(piv[k].first);
        size_t src = piv[k].second;
        if (src != k) {
            uint32_t* a = M.row(k);
            uint32_t* b = M.row(src);
            std::swap_ranges(a, a + cols, b);
            for (auto& pv : piv)
                if (pv.second == k) pv.second = src;
            piv[k].second = k;
        }
    }
    return pivot_cols;
}

size_t rank(DenseMat M, const Field& F) { return rref(M, F).size(); }

RankKernel rank_kernel(DenseMat M, const Field& F) {
    std::vector<size_t> piv = rref(M, F);
    RankKernel rk;
    rk.rank = piv.size();
    std::vector<bool> is_piv(M.cols, false);
    for (size_t c : piv) is_piv[c] = true;
    for (size_t f = 0; f < M.cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<uint32_t> v(M.cols, 0);
        v[f] = 1;
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = F.neg(M.at(k, f));
        rk.kernel.push_back(std::move(v));
    }
    return rk;
}

size_t naive_gauss_rank(DenseMat M, const Field& F) {
    // schoolbook row reduction with immediate reduction, as a cross-check
    size_t r = 0;
    for (size_t c = 0; c < M.cols && r < M.rows; ++c) {
        size_t sel = M.rows;
        for (size_t i = r; i < M.rows; ++i)
            if (M.at(i, c) % F.p != 0) {
                sel = i;
                break;
            }
        if (sel == M.rows) continue;
        for (size_t j = 0; j < M.cols; ++j) std::swap(M.at(r, j), M.at(sel, j));
        uint32_t inv = F.inv(M.at(r, c) % F.p);
        for (size_t j = 0; j < M.cols; ++j) M.at(r, j) = F.mul(M.at(r, j) % F.p, inv);
        for (size_t i = 0; i < M.rows; ++i) {
            if (i == r) continue;
            uint32_t f = M.at(i, c) % F.p;
            if (!f) continue;
            for (size_t j = 0; j < M.cols; ++j)
                M.at(i, j) = F.sub(M.at(i, j) % F.p, F.mul(f, M.at(r, j)));
        }
        ++r;
    }
    return r;
}

DenseMat mat_mul(const DenseMat& A, const DenseMat& B, const Field& F) {
    if (A.cols != B.rows) throw ApiError("matrix shape mismatch in mat_mul");
    DenseMat C(A.rows, B.cols);
    uint64_t step = uint64_t(F.p - 1) * (F.p - 1);
    uint64_t renorm_after = step ? (~uint64_t(0)) / step - 1 : ~uint64_t(0);
    std::vector<uint64_t> acc(B.cols);
    for (size_t i = 0; i < A.rows; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        uint64_t since = 0;
        for (size_t k = 0; k < A.cols; ++k) {
            uint64_t v = A.at(i, k) % F.p;
            if (!v) continue;
            const uint32_t* brow = B.row(k);
            for (size_t j = 0; j < B.cols; ++j) acc[j] += v * brow[j];
            if (++since >= renorm_after) {
                for (auto& x : acc) x %= F.p;
                since = 0;
            }
        }
        for (size_t j = 0; j < B.cols; ++j) C.at(i, j) = static_cast<uint32_t>(acc[j] % F.p);
    }
    return C;
}

} // namespace qmf
