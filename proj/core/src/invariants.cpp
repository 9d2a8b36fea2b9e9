#include "qmf/invariants.hpp"

#include <array>

namespace qmf {

size_t IgusaCoordinates::pair_index(size_t i, size_t j) {
    if (!(1 <= i && i < j && j <= 6)) throw ApiError("pair_index needs 1 <= i < j <= 6");
    size_t idx = 0;
    for (size_t a = 1; a <= 6; ++a)
        for (size_t b = a + 1; b <= 6; ++b) {
            if (a == i && b == j) return idx;
            ++idx;
        }
    throw ApiError("unreachable");
}

WeightedRing IgusaCoordinates::ring() {
    std::vector<std::string> names;
    names.push_back("x0");
    for (size_t i = 1; i <= 6; ++i)
        for (size_t j = i + 1; j <= 6; ++j)
            names.push_back("x" + std::to_string(i) + std::to_string(j));
    for (size_t i = 1; i <= 6; ++i)
        for (size_t j = i + 1; j <= 6; ++j)
            names.push_back("y" + std::to_string(i) + std::to_string(j));
    names.push_back("y0");
    return make_ring(std::move(names), std::vector<uint32_t>(32, 1));
}

WeightedRing Lambda3Coordinates::ring() {
    std::vector<std::string> names;
    for (size_t k = 1; k <= 20; ++k) names.push_back("y" + std::to_string(k));
    return make_ring(std::move(names), std::vector<uint32_t>(20, 1));
}

std::array<int, 3> Lambda3Coordinates::subset(size_t k) {
    if (k >= 20) throw ApiError("3-subset index out of range");
    size_t idx = 0;
    for (int a = 1; a <= 6; ++a)
        for (int b = a + 1; b <= 6; ++b)
            for (int c = b + 1; c <= 6; ++c) {
                if (idx == k) return {a, b, c};
                ++idx;
            }
    throw ApiError("unreachable");
}

namespace {

void check_alternating(const std::vector<std::vector<SparsePoly>>& M, const Field& F) {
    const size_t n = M.size();
    if (n % 2) throw ApiError("pfaffian needs an even-sized matrix");
    for (size_t r = 0; r < n; ++r) {
        if (M[r].size() != n) throw ApiError("pfaffian needs a square matrix");
        if (!M[r][r].is_zero()) throw ApiError("pfaffian needs zero diagonal");
        for (size_t c = r + 1; c < n; ++c)
            if (!(M[r][c] == poly_neg(M[c][r], F)))
                throw ApiError("pfaffian needs an alternating matrix");
    }
}

SparsePoly pf_rec(const std::vector<std::vector<SparsePoly>>& M,
                  std::vector<size_t> idx, const WeightedRing& R, const Field& F) {
    if (idx.empty()) return poly_const(R, F, 1);
    if (idx.size() == 2) return M[idx[0]][idx[1]];
    SparsePoly acc = poly_zero(R);
    // expand along the first remaining row: sum_j (-1)^j m_{0j} Pf(rest)
    for (size_t j = 1; j < idx.size(); ++j) {
        std::vector<size_t> rest;
        rest.reserve(idx.size() - 2);
        for (size_t k = 1; k < idx.size(); ++k)
            if (k != j) rest.push_back(idx[k]);
        SparsePoly term = poly_mul(M[idx[0]][idx[j]], pf_rec(M, std::move(rest), R, F), F);
        if (j % 2 == 0) term = poly_neg(term, F);
        acc = poly_add(acc, term, F);
    }
    return acc;
}

} // namespace

SparsePoly pfaffian(const std::vector<std::vector<SparsePoly>>& M, const Field& F) {
    check_alternating(M, F);
    const WeightedRing& R = *M[0][0].ring;
    std::vector<size_t> idx(M.size());
    for (size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    return pf_rec(M, std::move(idx), R, F);
}

namespace {

void matchings(const std::vector<std::vector<SparsePoly>>& M, const Field& F,
               std::vector<size_t>& used, std::vector<size_t>& perm, SparsePoly& acc) {
    const size_t n = M.size();
    size_t a = 0;
    while (a < n && used[a]) ++a;
    if (a == n) {
        // sign of the permutation (i1 j1 i2 j2 ...) by inversion count
        int inv = 0;
        for (size_t s = 0; s < perm.size(); ++s)
            for (size_t t = s + 1; t < perm.size(); ++t)
                if (perm[s] > perm[t]) ++inv;
        SparsePoly prod = poly_const(*M[0][0].ring, F, 1);
        for (size_t s = 0; s + 1 < perm.size(); s += 2)
            prod = poly_mul(prod, M[perm[s]][perm[s + 1]], F);
        if (inv % 2) prod = poly_neg(prod, F);
        acc = poly_add(acc, prod, F);
        return;
    }
    used[a] = 1;
    for (size_t b = a + 1; b < n; ++b) {
        if (used[b]) continue;
        used[b] = 1;
        perm.push_back(a);
        perm.push_back(b);
        matchings(M, F, used, perm, acc);
        perm.pop_back();
        perm.pop_back();
        used[b] = 0;
    }
    used[a] = 0;
}

} // namespace

SparsePoly pfaffian_matchings(const std::vector<std::vector<SparsePoly>>& M, const Field& F) {
    check_alternating(M, F);
    SparsePoly acc = poly_zero(*M[0][0].ring);
    std::vector<size_t> used(M.size(), 0), perm;
    matchings(M, F, used, perm, acc);
    return acc;
}

namespace {

// alternating 6x6 coordinate matrix from 15 variable indices (lex pair order)
std::vector<std::vector<SparsePoly>> alt6(const WeightedRing& R, const Field& F,
                                          size_t first_var) {
    std::vector<std::vector<SparsePoly>> M(6, std::vector<SparsePoly>(6, poly_zero(R)));
    size_t k = 0;
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = i + 1; j < 6; ++j, ++k) {
            M[i][j] = poly_var(R, F, first_var + k);
            M[j][i] = poly_neg(M[i][j], F);
        }
    return M;
}

std::vector<std::vector<SparsePoly>> cross_out(const std::vector<std::vector<SparsePoly>>& M,
                                               size_t i, size_t j) {
    std::vector<std::vector<SparsePoly>> S;
    for (size_t r = 0; r < M.size(); ++r) {
        if (r == i || r == j) continue;
        std::vector<SparsePoly> row;
        for (size_t c = 0; c < M.size(); ++c)
            if (c != i && c != j) row.push_back(M[r][c]);
        S.push_back(std::move(row));
    }
    return S;
}

} // namespace

SparsePoly igusa_quartic(const Field& F) {
    static const WeightedRing R = IgusaCoordinates::ring();
    std::vector<std::vector<SparsePoly>> X = alt6(R, F, 1);
    std::vector<std::vector<SparsePoly>> Y = alt6(R, F, 16);
    SparsePoly x0 = poly_var(R, F, IgusaCoordinates::x0());
    SparsePoly y0 = poly_var(R, F, IgusaCoordinates::y0());

    SparsePoly P = poly_add(poly_mul(x0, pfaffian(X, F), F),
                            poly_mul(y0, pfaffian(Y, F), F), F);
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = i + 1; j < 6; ++j)
            P = poly_add(P, poly_mul(pfaffian(cross_out(X, i, j), F),
                                     pfaffian(cross_out(Y, i, j), F), F),
                         F);
    SparsePoly dot = poly_mul(x0, y0, F);
    for (size_t k = 0; k < 15; ++k)
        dot = poly_sub(dot, poly_mul(poly_var(R, F, IgusaCoordinates::x(k)),
                                     poly_var(R, F, IgusaCoordinates::y(k)), F),
                       F);
    uint32_t quarter = F.inv(4 % F.p);
    return poly_sub(P, poly_scale(poly_mul(dot, dot, F), quarter, F), F);
}

namespace {

SparsePoly det3(const std::vector<std::vector<SparsePoly>>& A, const Field& F) {
    SparsePoly d = poly_zero(*A[0][0].ring);
    const int sgn[6] = {1, -1, -1, 1, 1, -1};
    const size_t perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (size_t k = 0; k < 6; ++k) {
        SparsePoly t = poly_mul(poly_mul(A[0][perm[k][0]], A[1][perm[k][1]], F), A[2][perm[k][2]], F);
        d = poly_add(d, sgn[k] > 0 ? t : poly_neg(t, F), F);
    }
    return d;
}

SparsePoly det2_minor(const std::vector<std::vector<SparsePoly>>& A, size_t i, size_t j,
                      const Field& F) {
    size_t r[2], c[2], ri = 0, ci = 0;
    for (size_t k = 0; k < 3; ++k) {
        if (k != i) r[ri++] = k;
        if (k != j) c[ci++] = k;
    }
    return poly_sub(poly_mul(A[r[0]][c[0]], A[r[1]][c[1]], F),
                    poly_mul(A[r[0]][c[1]], A[r[1]][c[0]], F), F);
}

} // namespace

SparsePoly sl6_quartic(const Field& F) {
    static const WeightedRing R = Lambda3Coordinates::ring();
    auto y = [&](size_t k) { return poly_var(R, F, k - 1); }; // 1-based
    auto row = [&](size_t a, size_t b, size_t c) {
        return std::vector<SparsePoly>{y(a), poly_neg(y(b), F), y(c)};
    };
    std::vector<std::vector<SparsePoly>> Ya{row(11, 5, 2), row(12, 6, 3), row(13, 7, 4)};
    std::vector<std::vector<SparsePoly>> Yb{row(10, 9, 8), row(16, 15, 14), row(19, 18, 17)};

    SparsePoly tr = poly_zero(R);
    for (size_t i = 0; i < 3; ++i)
        for (size_t k = 0; k < 3; ++k)
            tr = poly_add(tr, poly_mul(Ya[i][k], Yb[k][i], F), F);
    SparsePoly head = poly_sub(poly_mul(y(1), y(20), F), tr, F);
    SparsePoly lP = poly_mul(head, head, F);
    lP = poly_add(lP, poly_scale(poly_mul(y(1), det3(Yb, F), F), 4, F), F);
    lP = poly_add(lP, poly_scale(poly_mul(y(20), det3(Ya, F), F), 4, F), F);
    // second factor crossed out at transposed indices; the aligned pairing
    // does not square the classical matrix to this invariant
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            SparsePoly m = poly_mul(det2_minor(Ya, i, j, F), det2_minor(Yb, j, i, F), F);
            lP = poly_sub(lP, poly_scale(m, 4, F), F);
        }
    return lP;
}

} // namespace qmf
