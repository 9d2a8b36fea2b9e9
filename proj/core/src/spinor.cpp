#include "qmf/spinor.hpp"
#include "qmf/invariants.hpp"
#include "qmf/sy.hpp"

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

namespace qmf {

int wedge_sign(uint32_t a, uint32_t b) {
    if (a & b) return 0;
    int swaps = 0;
    for (int i = 0; i < 6; ++i)
        if (b & (1u << i)) {
            uint32_t above = a >> (i + 1);
            swaps += __builtin_popcount(above);
        }
    return (swaps % 2) ? -1 : 1;
}

namespace {

// sign of contracting u_i^* into a monomial containing bit i: (-1)^{#bits below i}
int contract_sign(uint32_t m, int i) {
    uint32_t below = m & ((1u << i) - 1);
    return (__builtin_popcount(below) % 2) ? -1 : 1;
}

// reversal sign on Lambda^k: (-1)^{k(k-1)/2}
int rev_sign(int k) {
    return ((k * (k - 1) / 2) % 2) ? -1 : 1;
}

constexpr uint32_t kFull = 0x3F;

} // namespace

void clifford_apply(size_t k, const std::vector<uint32_t>& in, std::vector<uint32_t>& out,
                    const Field& F) {
    if (k >= 12) throw ApiError("clifford generator index out of range");
    if (in.size() != 64 || out.size() != 64) throw ApiError("spinor vectors have 64 components");
    if (k < 6) {
        uint32_t bit = 1u << k;
        for (uint32_t m = 0; m < 64; ++m) {
            if ((m & bit) || in[m] == 0) continue;
            int s = wedge_sign(bit, m);
            uint32_t v = in[m];
            out[m | bit] = s > 0 ? F.add(out[m | bit], v) : F.sub(out[m | bit], v);
        }
    } else {
        int i = static_cast<int>(k - 6);
        uint32_t bit = 1u << i;
        for (uint32_t m = 0; m < 64; ++m) {
            if (!(m & bit) || in[m] == 0) continue;
            int s = contract_sign(m, i);
            uint32_t v = in[m];
            out[m ^ bit] = s > 0 ? F.add(out[m ^ bit], v) : F.sub(out[m ^ bit], v);
        }
    }
}

void clifford_apply(size_t k, const std::vector<SparsePoly>& in, std::vector<SparsePoly>& out,
                    const Field& F) {
    if (k >= 12) throw ApiError("clifford generator index out of range");
    if (in.size() != 64 || out.size() != 64) throw ApiError("spinor vectors have 64 components");
    if (k < 6) {
        uint32_t bit = 1u << k;
        for (uint32_t m = 0; m < 64; ++m) {
            if ((m & bit) || in[m].is_zero()) continue;
            int s = wedge_sign(bit, m);
            out[m | bit] = poly_add(out[m | bit], s > 0 ? in[m] : poly_neg(in[m], F), F);
        }
    } else {
        int i = static_cast<int>(k - 6);
        uint32_t bit = 1u << i;
        for (uint32_t m = 0; m < 64; ++m) {
            if (!(m & bit) || in[m].is_zero()) continue;
            int s = contract_sign(m, i);
            out[m ^ bit] = poly_add(out[m ^ bit], s > 0 ? in[m] : poly_neg(in[m], F), F);
        }
    }
}

uint32_t beta(const std::vector<uint32_t>& u, const std::vector<uint32_t>& v, const Field& F) {
    if (u.size() != 64 || v.size() != 64) throw ApiError("spinor vectors have 64 components");
    uint32_t acc = 0;
    for (uint32_t m = 0; m < 64; ++m) {
        if (u[m] == 0 || v[kFull ^ m] == 0) continue;
        int s = rev_sign(__builtin_popcount(m)) * wedge_sign(m, kFull ^ m);
        uint32_t t = F.mul(u[m], v[kFull ^ m]);
        acc = s > 0 ? F.add(acc, t) : F.sub(acc, t);
    }
    return acc;
}

SparsePoly beta(const std::vector<SparsePoly>& u, const std::vector<SparsePoly>& v,
                const Field& F) {
    if (u.size() != 64 || v.size() != 64) throw ApiError("spinor vectors have 64 components");
    SparsePoly acc = poly_zero(*u[0].ring);
    for (uint32_t m = 0; m < 64; ++m) {
        if (u[m].is_zero() || v[kFull ^ m].is_zero()) continue;
        int s = rev_sign(__builtin_popcount(m)) * wedge_sign(m, kFull ^ m);
        SparsePoly t = poly_mul(u[m], v[kFull ^ m], F);
        acc = poly_add(acc, s > 0 ? t : poly_neg(t, F), F);
    }
    return acc;
}

WeightedRing spinor_ring(SpinorParity parity) {
    if (parity == SpinorParity::even) return IgusaCoordinates::ring();
    std::vector<std::string> names;
    for (size_t a = 1; a <= 6; ++a) names.push_back("w" + std::to_string(a));
    for (size_t k = 1; k <= 20; ++k) names.push_back("y" + std::to_string(k));
    for (size_t a = 1; a <= 6; ++a) names.push_back("v" + std::to_string(a));
    return make_ring(std::move(names), std::vector<uint32_t>(32, 1));
}

std::vector<SparsePoly> generic_spinor(SpinorParity parity, const Field& F) {
    static const WeightedRing Reven = spinor_ring(SpinorParity::even);
    static const WeightedRing Rodd = spinor_ring(SpinorParity::odd);
    const WeightedRing& R = (parity == SpinorParity::even) ? Reven : Rodd;
    std::vector<SparsePoly> st(64, poly_zero(R));
    if (parity == SpinorParity::even) {
        st[0] = poly_var(R, F, IgusaCoordinates::x0());
        size_t k = 0;
        for (size_t i = 0; i < 6; ++i)
            for (size_t j = i + 1; j < 6; ++j, ++k) {
                uint32_t m = (1u << i) | (1u << j);
                uint32_t mc = kFull ^ m;
                st[m] = poly_neg(poly_var(R, F, IgusaCoordinates::y(k)), F);
                SparsePoly xv = poly_var(R, F, IgusaCoordinates::x(k));
                st[mc] = wedge_sign(m, mc) > 0 ? poly_neg(xv, F) : xv;
            }
        st[kFull] = poly_var(R, F, IgusaCoordinates::y0());
    } else {
        for (size_t a = 0; a < 6; ++a)
            st[1u << a] = poly_var(R, F, a);
        size_t k = 0;
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                for (int c = b + 1; c < 6; ++c, ++k)
                    st[(1u << a) | (1u << b) | (1u << c)] = poly_var(R, F, 6 + k);
        for (size_t a = 0; a < 6; ++a) {
            uint32_t m = 1u << a;
            uint32_t mc = kFull ^ m;
            SparsePoly vv = poly_var(R, F, 26 + a);
            st[mc] = wedge_sign(m, mc) > 0 ? vv : poly_neg(vv, F);
        }
    }
    return st;
}

std::vector<std::vector<SparsePoly>> moment_map(SpinorParity parity, const Field& F) {
    std::vector<SparsePoly> z = generic_spinor(parity, F);
    const WeightedRing& R = *z[0].ring;
    std::vector<std::vector<SparsePoly>> img(12, std::vector<SparsePoly>(64, poly_zero(R)));
    for (size_t a = 0; a < 12; ++a) clifford_apply(a, z, img[a], F);
    std::vector<std::vector<SparsePoly>> mu(12, std::vector<SparsePoly>(12, poly_zero(R)));
    // mu = G J with G[a][b] = beta(v_a z, v_b z), so mu[a][b] = G[a][(b+6) mod 12]
    for (size_t a = 0; a < 12; ++a)
        for (size_t b = 0; b < 12; ++b)
            mu[a][b] = beta(img[a], img[(b + 6) % 12], F);
    return mu;
}

namespace {

// if mu^2 = q * Id for a single polynomial q, return it; otherwise explain
bool square_scalar_part(const std::vector<std::vector<SparsePoly>>& mu, const Field& F,
                        SparsePoly& q, std::string& detail) {
    const WeightedRing& R = *mu[0][0].ring;
    bool have_diag = false;
    for (size_t a = 0; a < 12; ++a)
        for (size_t b = 0; b < 12; ++b) {
            SparsePoly e = poly_zero(R);
            for (size_t k = 0; k < 12; ++k)
                e = poly_add(e, poly_mul(mu[a][k], mu[k][b], F), F);
            if (a == b) {
                if (!have_diag) {
                    q = std::move(e);
                    have_diag = true;
                } else if (!(e == q)) {
                    detail = "diagonal entries of the square differ";
                    return false;
                }
            } else if (!e.is_zero()) {
                detail = "off-diagonal entry of the square is nonzero";
                return false;
            }
        }
    return true;
}

// c with f = c * g, or no value when f is not a constant multiple of g
bool proportional(const SparsePoly& f, const SparsePoly& g, const Field& F, uint32_t& c) {
    if (g.is_zero()) {
        c = 0;
        return f.is_zero();
    }
    if (f.terms.size() != g.terms.size()) return false;
    c = F.mul(f.terms.front().c, F.inv(g.terms.front().c));
    for (size_t k = 0; k < f.terms.size(); ++k)
        if (f.terms[k].e != g.terms[k].e || f.terms[k].c != F.mul(c, g.terms[k].c))
            return false;
    return true;
}

} // namespace

MomentSquareResult verify_mf_even(const Field& F) {
    MomentSquareResult res;
    auto mu = moment_map(SpinorParity::even, F);
    SparsePoly q = poly_zero(*mu[0][0].ring);
    if (!square_scalar_part(mu, F, q, res.detail)) return res;
    SparsePoly P = igusa_quartic(F);
    uint32_t c = 0;
    if (!proportional(q, P, F, c)) {
        res.detail = "square is scalar but not a multiple of the pfaffian quartic";
        return res;
    }
    res.is_scalar = true;
    res.constant = c;
    res.detail = "square = c * quartic * Id";
    return res;
}

MomentSquareResult verify_mf_odd(const Field& F) {
    MomentSquareResult res;
    auto mu = moment_map(SpinorParity::odd, F);
    SparsePoly q = poly_zero(*mu[0][0].ring);
    if (!square_scalar_part(mu, F, q, res.detail)) return res;

    // restrict the scalar to w = v = 0 and compare with the degree-4 invariant
    static const WeightedRing Rl = Lambda3Coordinates::ring();
    std::vector<std::vector<uint32_t>> sect(32, std::vector<uint32_t>(20, 0));
    for (size_t k = 0; k < 20; ++k) sect[6 + k][k] = 1;
    SparsePoly restricted = substitute_linear(q, F, sect, Rl);
    SparsePoly lP = sl6_quartic(F);
    uint32_t lambda = 0;
    if (!proportional(restricted, lP, F, lambda)) {
        res.detail = "scalar restricted to the 3-form slice is not a multiple of the invariant";
        return res;
    }
    res.is_scalar = true;
    res.constant = lambda;
    res.detail = "square scalar; 3-form slice of the scalar = lambda * quartic invariant";
    return res;
}

std::vector<std::vector<uint32_t>> moment_map_at(SpinorParity parity,
                                                 const std::vector<uint32_t>& coords,
                                                 const Field& F) {
    if (coords.size() != 32) throw ApiError("spinor coordinate vector must have 32 entries");
    std::vector<uint32_t> st(64, 0);
    if (parity == SpinorParity::even) {
        st[0] = coords[IgusaCoordinates::x0()];
        size_t k = 0;
        for (size_t i = 0; i < 6; ++i)
            for (size_t j = i + 1; j < 6; ++j, ++k) {
                uint32_t m = (1u << i) | (1u << j);
                uint32_t mc = kFull ^ m;
                st[m] = F.neg(coords[IgusaCoordinates::y(k)]);
                uint32_t xv = coords[IgusaCoordinates::x(k)];
                st[mc] = wedge_sign(m, mc) > 0 ? F.neg(xv) : xv;
            }
        st[kFull] = coords[IgusaCoordinates::y0()];
    } else {
        for (size_t a = 0; a < 6; ++a) st[1u << a] = coords[a];
        size_t k = 0;
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                for (int c = b + 1; c < 6; ++c, ++k)
                    st[(1u << a) | (1u << b) | (1u << c)] = coords[6 + k];
        for (size_t a = 0; a < 6; ++a) {
            uint32_t m = 1u << a;
            uint32_t mc = kFull ^ m;
            st[mc] = wedge_sign(m, mc) > 0 ? coords[26 + a] : F.neg(coords[26 + a]);
        }
    }
    std::vector<std::vector<uint32_t>> img(12, std::vector<uint32_t>(64, 0));
    for (size_t a = 0; a < 12; ++a) clifford_apply(a, st, img[a], F);
    std::vector<std::vector<uint32_t>> mu(12, std::vector<uint32_t>(12, 0));
    for (size_t a = 0; a < 12; ++a)
        for (size_t b = 0; b < 12; ++b)
            mu[a][b] = beta(img[a], img[(b + 6) % 12], F);
    return mu;
}

BlockStructureResult verify_block_structure(const Field& F) {
    BlockStructureResult res;
    auto mu = moment_map(SpinorParity::odd, F);
    static const WeightedRing Rl = Lambda3Coordinates::ring();
    std::vector<std::vector<uint32_t>> sect(32, std::vector<uint32_t>(20, 0));
    for (size_t k = 0; k < 20; ++k) sect[6 + k][k] = 1;

    std::vector<std::vector<SparsePoly>> A(6, std::vector<SparsePoly>(6, poly_zero(Rl)));
    std::vector<std::vector<SparsePoly>> D(6, std::vector<SparsePoly>(6, poly_zero(Rl)));
    for (size_t r = 0; r < 12; ++r)
        for (size_t c = 0; c < 12; ++c) {
            SparsePoly e = substitute_linear(mu[r][c], F, sect, Rl);
            bool top = r < 6, left = c < 6;
            if (top && left)
                A[r][c] = std::move(e);
            else if (!top && !left)
                D[r - 6][c - 6] = std::move(e);
            else if (!e.is_zero()) {
                res.ok = false;
                res.detail = "off-diagonal block is nonzero on the 3-form slice";
                return res;
            }
        }

    auto Sy = build_sy(F);
    uint32_t scale = 0;
    bool found = false;
    for (size_t r = 0; r < 6 && !found; ++r)
        for (size_t c = 0; c < 6 && !found; ++c) {
            if (Sy[r][c].is_zero()) continue;
            if (!proportional(A[r][c], Sy[r][c], F, scale)) {
                res.detail = "upper block entry is not proportional to the classical matrix";
                return res;
            }
            found = true;
        }
    if (!found) {
        res.detail = "reference matrix is zero";
        return res;
    }
    res.scale = scale;
    for (size_t r = 0; r < 6; ++r)
        for (size_t c = 0; c < 6; ++c) {
            if (!(A[r][c] == poly_scale(Sy[r][c], scale, F))) {
                res.detail = "upper block is not proportional to the classical matrix";
                return res;
            }
            SparsePoly want = poly_neg(poly_scale(Sy[c][r], scale, F), F);
            if (!(D[r][c] == want)) {
                res.detail = "lower block is not minus the transpose of the upper block";
                return res;
            }
        }
    res.ok = true;
    res.detail = "blocks are diag(A, -A^T) with A proportional to the classical matrix";
    return res;
}

MomentMatrix build_moment_matrix(SpinorParity parity, const Field& F) {
    MomentMatrix mm;
    mm.parity = parity;
    mm.prime = F.p;
    mm.entries = moment_map(parity, F);
    return mm;
}

void export_moment_matrix(const MomentMatrix& mm, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (size_t r = 0; r < 12; ++r)
        for (size_t c = 0; c < 12; ++c) {
            std::ofstream out(fs::path(dir) /
                              ("entry_" + std::to_string(r) + "_" + std::to_string(c) + ".txt"));
            poly_write(out, mm.entries[r][c]);
        }
    nlohmann::json j;
    j["kind"] = "moment_matrix";
    j["parity"] = (mm.parity == SpinorParity::even) ? "even" : "odd";
    j["prime"] = mm.prime;
    j["rows"] = 12;
    j["cols"] = 12;
    j["conventions"] = {
        {"square_constant_even", -4},
        {"slice_constant_odd", 1},
        {"block_scale_odd", 1},
        {"gram", "split [[0,I6],[I6,0]]"},
    };
    j["schema"] = "1";
    std::ofstream mf(fs::path(dir) / "manifest.json");
    mf << j.dump(2) << "\n";
}

} // namespace qmf
