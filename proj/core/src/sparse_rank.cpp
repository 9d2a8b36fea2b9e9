#include "qmf/sparse_rank.hpp"

#include <algorithm>
#include <cstring>

#include "qmf/rng.hpp"

namespace qmf {

namespace {

uint64_t mix64(uint64_t a, uint64_t b) {
    Rng r(a ^ (b * 0x9E3779B97F4A7C15ULL));
    return r.next();
}

struct Csc {
    std::vector<uint64_t> col_ptr;
    std::vector<uint32_t> row;
    std::vector<uint16_t> val;
};

constexpr size_t kSketchEntriesPerRow = 64;

} // namespace

SparseRankResult sparse_rank_certified(
    const Field& F,
    size_t domain_dim,
    size_t codomain_dim,
    const std::function<const SparseCol&(size_t)>& column_fn,
    size_t rank_hint,
    uint64_t sketch_seed) {
    if (F.p >= (1u << 16))
        throw ApiError("sparse rank engine requires p < 2^16");
    SparseRankResult res;
    if (domain_dim == 0) {
        res.certified = true;
        return res;
    }

    // cache the matrix in compressed column form; columns are requested once
    Csc M;
    M.col_ptr.assign(domain_dim + 1, 0);
    for (size_t c = 0; c < domain_dim; ++c) {
        const SparseCol& col = column_fn(c);
        if (col.idx.size() != col.val.size())
            throw ApiError("sparse column index/value length mismatch");
        for (size_t k = 0; k < col.idx.size(); ++k) {
            if (col.idx[k] >= codomain_dim) throw ApiError("sparse column row index out of range");
            uint16_t v = static_cast<uint16_t>(col.val[k] % F.p);
            if (!v) continue;
            M.row.push_back(col.idx[k]);
            M.val.push_back(v);
        }
        M.col_ptr[c + 1] = M.row.size();
    }
    res.nnz = M.row.size();

    const uint64_t pm1sq = uint64_t(F.p - 1) * (F.p - 1);
    const uint64_t axpy_limit = (uint64_t(~uint32_t(0)) / pm1sq > 2)
                                    ? uint64_t(~uint32_t(0)) / pm1sq - 2
                                    : 1;

    size_t s = rank_hint ? std::min(domain_dim, rank_hint + 192)
                         : std::min(domain_dim, (domain_dim * 9 + 9) / 10 + 64);
    s = std::max<size_t>(s, std::min<size_t>(domain_dim, 64));

    for (size_t attempt = 0; attempt < 6; ++attempt, ++res.grow_steps) {
        // seeded sparse projection: per codomain row, 64 (sketch row, value) pairs
        std::vector<uint32_t> g_idx(codomain_dim * kSketchEntriesPerRow);
        std::vector<uint16_t> g_val(codomain_dim * kSketchEntriesPerRow);
        for (size_t r = 0; r < codomain_dim; ++r) {
            Rng rg(mix64(sketch_seed + attempt, 0x5157C0DEULL + r));
            for (size_t k = 0; k < kSketchEntriesPerRow; ++k) {
                g_idx[r * kSketchEntriesPerRow + k] = static_cast<uint32_t>(rg.next() % s);
                g_val[r * kSketchEntriesPerRow + k] =
                    static_cast<uint16_t>(1 + rg.next() % (F.p - 1));
            }
        }

        // accumulate the sketch G*M column by column
        std::vector<uint16_t> GM(s * domain_dim, 0);
        {
            std::vector<uint64_t> tmp(s);
            for (size_t c = 0; c < domain_dim; ++c) {
                std::fill(tmp.begin(), tmp.end(), 0);
                for (uint64_t k = M.col_ptr[c]; k < M.col_ptr[c + 1]; ++k) {
                    const uint64_t v = M.val[k];
                    const size_t base = size_t(M.row[k]) * kSketchEntriesPerRow;
                    for (size_t t = 0; t < kSketchEntriesPerRow; ++t)
                        tmp[g_idx[base + t]] += v * g_val[base + t];
                }
                for (size_t i = 0; i < s; ++i)
                    GM[i * domain_dim + c] = static_cast<uint16_t>(tmp[i] % F.p);
            }
        }
        g_idx.clear();
        g_idx.shrink_to_fit();
        g_val.clear();
        g_val.shrink_to_fit();

        // Gauss-Jordan on the sketch, u16 rows with a u32 accumulator row
        std::vector<std::pair<uint32_t, uint32_t>> piv; // (column, row), column-sorted
        {
            std::vector<uint32_t> buf(domain_dim);
            for (size_t i = 0; i < s; ++i) {
                uint16_t* row = GM.data() + i * domain_dim;
                for (size_t j = 0; j < domain_dim; ++j) buf[j] = row[j];
                uint64_t since = 0;
                for (const auto& [pc, pr] : piv) {
                    uint32_t f = buf[pc] % F.p;
                    if (!f) continue;
                    const uint16_t* prow = GM.data() + size_t(pr) * domain_dim;
                    const uint32_t fs = F.p - f;
                    for (size_t j = pc; j < domain_dim; ++j) buf[j] += fs * prow[j];
                    if (++since >= axpy_limit) {
                        for (size_t j = 0; j < domain_dim; ++j) buf[j] %= F.p;
                        since = 0;
                    }
                }
                for (size_t j = 0; j < domain_dim; ++j) buf[j] %= F.p;
                size_t lead = domain_dim;
                for (size_t j = 0; j < domain_dim; ++j)
                    if (buf[j]) {
                        lead = j;
                        break;
                    }
                if (lead == domain_dim) {
                    std::memset(row, 0, domain_dim * sizeof(uint16_t));
                    continue;
                }
                const uint64_t inv = F.inv(buf[lead]);
                for (size_t j = 0; j < domain_dim; ++j)
                    row[j] = static_cast<uint16_t>(buf[j] * inv % F.p);
                piv.insert(std::lower_bound(piv.begin(), piv.end(),
                                            std::make_pair(uint32_t(lead), uint32_t(0))),
                           {uint32_t(lead), uint32_t(i)});
            }

            if (piv.size() == s && s < domain_dim) {
                s = std::min(domain_dim, s + domain_dim / 8 + 512);
                continue; // saturated: the sketch cannot see the whole rank
            }

            // clear above the pivots, right to left, so the kernel reads off
            for (size_t k = piv.size(); k-- > 0;) {
                auto [c, r] = piv[k];
                uint16_t* row = GM.data() + size_t(r) * domain_dim;
                for (size_t j = c; j < domain_dim; ++j) buf[j] = row[j];
                uint64_t since = 0;
                for (size_t m = k + 1; m < piv.size(); ++m) {
                    auto [cm, rm] = piv[m];
                    uint32_t f = buf[cm] % F.p;
                    if (!f) continue;
                    const uint16_t* prow = GM.data() + size_t(rm) * domain_dim;
                    const uint32_t fs = F.p - f;
                    for (size_t j = cm; j < domain_dim; ++j) buf[j] += fs * prow[j];
                    if (++since >= axpy_limit) {
                        for (size_t j = c; j < domain_dim; ++j) buf[j] %= F.p;
                        since = 0;
                    }
                }
                for (size_t j = c; j < domain_dim; ++j)
                    row[j] = static_cast<uint16_t>(buf[j] % F.p);
            }
        }

        const size_t npiv = piv.size();
        std::vector<uint8_t> is_piv(domain_dim, 0);
        for (const auto& pv : piv) is_piv[pv.first] = 1;
        std::vector<uint32_t> free_cols;
        free_cols.reserve(domain_dim - npiv);
        for (size_t c = 0; c < domain_dim; ++c)
            if (!is_piv[c]) free_cols.push_back(uint32_t(c));

        // certificate: every sketch-kernel vector lies in ker(M). Kernel
        // vectors are implicit in the reduced rows: k_f = e_f - sum_k R[k][f] e_{c_k}.
        bool ok = true;
        const size_t kdim = free_cols.size();
        if (kdim > 0) {
            size_t w = std::min<size_t>(kdim, 512);
            const size_t budget = size_t(256) << 20;
            if (codomain_dim > 0)
                w = std::max<size_t>(1, std::min(w, budget / (4 * codomain_dim)));
            std::vector<uint32_t> acc(codomain_dim * w);
            std::vector<uint32_t> nv(w);
            for (size_t f0 = 0; f0 < kdim && ok; f0 += w) {
                const size_t cw = std::min(w, kdim - f0);
                std::fill(acc.begin(), acc.begin() + codomain_dim * cw, 0);
                for (size_t t = 0; t < cw; ++t) {
                    const uint32_t fc = free_cols[f0 + t];
                    for (uint64_t k = M.col_ptr[fc]; k < M.col_ptr[fc + 1]; ++k)
                        acc[size_t(M.row[k]) * cw + t] += M.val[k];
                }
                uint64_t since = 1;
                for (size_t k = 0; k < npiv; ++k) {
                    const auto [c, r] = piv[k];
                    const uint16_t* row = GM.data() + size_t(r) * domain_dim;
                    bool any = false;
                    for (size_t t = 0; t < cw; ++t) {
                        const uint16_t rv = row[free_cols[f0 + t]];
                        nv[t] = rv ? F.p - rv : 0;
                        any |= rv != 0;
                    }
                    if (!any) continue;
                    for (uint64_t e = M.col_ptr[c]; e < M.col_ptr[c + 1]; ++e) {
                        uint32_t* a = acc.data() + size_t(M.row[e]) * cw;
                        const uint32_t v = M.val[e];
                        for (size_t t = 0; t < cw; ++t) a[t] += v * nv[t];
                    }
                    if (++since >= axpy_limit) {
                        for (size_t e = 0; e < codomain_dim * cw; ++e) acc[e] %= F.p;
                        since = 1;
                    }
                }
                for (size_t e = 0; e < codomain_dim * cw && ok; ++e)
                    if (acc[e] % F.p) ok = false;
            }
        }

        if (ok) {
            res.rank = npiv;
            res.sketch_rows = s;
            res.certified = true;
            return res;
        }
        // a kernel vector failed: the sketch lost rank; enlarge and redraw
        s = std::min(domain_dim, s + domain_dim / 8 + 512);
    }
    throw ApiError("sparse rank certificate failed to stabilize");
}

} // namespace qmf
