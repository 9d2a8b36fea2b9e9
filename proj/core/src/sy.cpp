#include "qmf/sy.hpp"

#include "qmf/invariants.hpp"
#include "qmf/spinor.hpp"

#include <array>
#include <map>

namespace qmf {

namespace {

struct SyTerm {
    int r, c, coeff, a, b; // entry (r,c) += coeff * y_a * y_b, 1-based y
};

#include "sy_table.inc"

} // namespace

std::vector<std::vector<SparsePoly>> build_sy(const Field& F) {
    static const WeightedRing R = Lambda3Coordinates::ring();
    std::vector<std::vector<SparsePoly>> M(6, std::vector<SparsePoly>(6, poly_zero(R)));
    for (const SyTerm& t : kSyTable) {
        SparsePoly m = poly_mul(poly_var(R, F, t.a - 1), poly_var(R, F, t.b - 1), F);
        uint32_t c = F.from_int(t.coeff);
        M[t.r][t.c] = poly_add(M[t.r][t.c], poly_scale(m, c, F), F);
    }
    return M;
}

std::vector<std::vector<SparsePoly>> kimura_sato_oracle(const Field& F) {
    static const WeightedRing R = Lambda3Coordinates::ring();
    constexpr uint32_t kFull = 0x3F;

    // generic 3-vector: mask of the k-th lex 3-subset -> variable y_{k+1}
    std::array<uint32_t, 20> mask3{};
    for (size_t k = 0; k < 20; ++k) {
        auto s = Lambda3Coordinates::subset(k);
        mask3[k] = (1u << (s[0] - 1)) | (1u << (s[1] - 1)) | (1u << (s[2] - 1));
    }

    // polarization of y: (2-form mask, vector index 0..5) -> linear form in y
    std::map<std::pair<uint32_t, int>, SparsePoly> d3;
    for (size_t k = 0; k < 20; ++k) {
        auto s = Lambda3Coordinates::subset(k);
        SparsePoly yk = poly_var(R, F, k);
        int a = s[0] - 1, b = s[1] - 1, c = s[2] - 1;
        auto add = [&](uint32_t m2, int r, bool pos) {
            auto key = std::make_pair(m2, r);
            auto it = d3.find(key);
            SparsePoly v = pos ? yk : poly_neg(yk, F);
            if (it == d3.end())
                d3.emplace(key, std::move(v));
            else
                it->second = poly_add(it->second, v, F);
        };
        add((1u << b) | (1u << c), a, true);
        add((1u << a) | (1u << c), b, false);
        add((1u << a) | (1u << b), c, true);
    }

    // O[i][j] = coeff of u_{i+1} in D(u_{j+1}); the result below is O^T, so
    // row r carries the coordinates of D(e_{r+1})
    std::vector<std::vector<SparsePoly>> O(6, std::vector<SparsePoly>(6, poly_zero(R)));
    for (int j = 0; j < 6; ++j) {
        uint32_t ej = 1u << j;
        // z = u_{j+1} ^ y in Lambda^4
        std::map<uint32_t, SparsePoly> z;
        for (size_t k = 0; k < 20; ++k) {
            int s = wedge_sign(ej, mask3[k]);
            if (!s) continue;
            SparsePoly v = poly_var(R, F, k);
            if (s < 0) v = poly_neg(v, F);
            uint32_t m4 = ej | mask3[k];
            auto it = z.find(m4);
            if (it == z.end())
                z.emplace(m4, std::move(v));
            else
                it->second = poly_add(it->second, v, F);
        }
        // pair z against the 2-form part via the volume coefficient
        for (const auto& [key, lin] : d3) {
            auto [m2, r] = key;
            for (const auto& [m4, v] : z) {
                if ((m4 & m2) || (m4 | m2) != kFull) continue;
                SparsePoly t = poly_mul(v, lin, F);
                if (wedge_sign(m4, m2) < 0) t = poly_neg(t, F);
                O[r][j] = poly_add(O[r][j], t, F);
            }
        }
    }
    std::vector<std::vector<SparsePoly>> ret(6, std::vector<SparsePoly>(6, poly_zero(R)));
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) ret[r][c] = O[c][r];
    return ret;
}

} // namespace qmf
