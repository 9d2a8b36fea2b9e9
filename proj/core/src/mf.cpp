#include "qmf/mf.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

namespace qmf {

PolyMatrix poly_mat(size_t rows, size_t cols, const WeightedRing& R, const Field&) {
    PolyMatrix M;
    M.rows = rows;
    M.cols = cols;
    M.entries.assign(rows * cols, poly_zero(R));
    return M;
}

PolyMatrix poly_mat_from(const std::vector<std::vector<SparsePoly>>& M) {
    if (M.empty()) throw ApiError("empty matrix");
    PolyMatrix out;
    out.rows = M.size();
    out.cols = M[0].size();
    out.entries.reserve(out.rows * out.cols);
    for (const auto& row : M) {
        if (row.size() != out.cols) throw ApiError("ragged matrix");
        for (const auto& e : row) out.entries.push_back(e);
    }
    return out;
}

PolyMatrix poly_mat_mul(const PolyMatrix& A, const PolyMatrix& B, const Field& F) {
    if (A.cols != B.rows) throw ApiError("matrix shape mismatch in product");
    const WeightedRing& R = *A.entries[0].ring;
    PolyMatrix C = poly_mat(A.rows, B.cols, R, F);
    for (size_t r = 0; r < A.rows; ++r)
        for (size_t k = 0; k < A.cols; ++k) {
            const SparsePoly& a = A.at(r, k);
            if (a.is_zero()) continue;
            for (size_t c = 0; c < B.cols; ++c) {
                const SparsePoly& b = B.at(k, c);
                if (b.is_zero()) continue;
                C.at(r, c) = poly_add(C.at(r, c), poly_mul(a, b, F), F);
            }
        }
    return C;
}

bool poly_mat_equal(const PolyMatrix& A, const PolyMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) return false;
    for (size_t k = 0; k < A.entries.size(); ++k)
        if (!(A.entries[k] == B.entries[k])) return false;
    return true;
}

bool poly_mat_is_scalar(const PolyMatrix& M, SparsePoly& q) {
    if (M.rows != M.cols || M.rows == 0) return false;
    for (size_t r = 0; r < M.rows; ++r)
        for (size_t c = 0; c < M.cols; ++c) {
            if (r == c) {
                if (!(M.at(r, c) == M.at(0, 0))) return false;
            } else if (!M.at(r, c).is_zero()) {
                return false;
            }
        }
    q = M.at(0, 0);
    return true;
}

CPolyMatrix cpoly_mat_mul(const CPolyMatrix& A, const CPolyMatrix& B, const Field& F) {
    // (a + t b)(c + t d) = (ac - bd) + t (ad + bc), with t^2 = -1
    CPolyMatrix out;
    PolyMatrix ac = poly_mat_mul(A.re, B.re, F);
    PolyMatrix bd = poly_mat_mul(A.im, B.im, F);
    PolyMatrix ad = poly_mat_mul(A.re, B.im, F);
    PolyMatrix bc = poly_mat_mul(A.im, B.re, F);
    out.re = ac;
    out.im = ad;
    for (size_t k = 0; k < out.re.entries.size(); ++k) {
        out.re.entries[k] = poly_sub(ac.entries[k], bd.entries[k], F);
        out.im.entries[k] = poly_add(ad.entries[k], bc.entries[k], F);
    }
    return out;
}

namespace {

std::vector<std::vector<uint32_t>> to_rows(const DenseMat& M) {
    std::vector<std::vector<uint32_t>> out(M.rows, std::vector<uint32_t>(M.cols));
    for (size_t r = 0; r < M.rows; ++r)
        for (size_t c = 0; c < M.cols; ++c) out[r][c] = M.at(r, c);
    return out;
}

} // namespace

SparsePoly restrict_to_section(const SparsePoly& f, const DenseMat& section,
                               const WeightedRing& target, const Field& F) {
    if (section.cols != target.nvars())
        throw ApiError("section target does not match the target ring");
    if (rank(section, F) != section.cols)
        throw ApiError("degenerate section: columns are dependent");
    return substitute_linear(f, F, to_rows(section), target);
}

PolyMatrix restrict_to_section(const PolyMatrix& M, const DenseMat& section,
                               const WeightedRing& target, const Field& F) {
    if (section.cols != target.nvars())
        throw ApiError("section target does not match the target ring");
    if (rank(section, F) != section.cols)
        throw ApiError("degenerate section: columns are dependent");
    auto rows = to_rows(section);
    PolyMatrix out = poly_mat(M.rows, M.cols, target, F);
    for (size_t k = 0; k < M.entries.size(); ++k)
        out.entries[k] = substitute_linear(M.entries[k], F, rows, target);
    return out;
}

SectionDraw random_section(size_t src_dim, size_t tgt_dim, const Field& F, Rng& rng) {
    SectionDraw draw;
    for (;;) {
        DenseMat A(src_dim, tgt_dim);
        for (size_t r = 0; r < src_dim; ++r)
            for (size_t c = 0; c < tgt_dim; ++c) A.at(r, c) = rng.field_elem(F);
        if (rank(A, F) == tgt_dim) {
            draw.A = std::move(A);
            return draw;
        }
        ++draw.retries;
        std::cerr << "random_section: degenerate draw discarded (retry " << draw.retries
                  << ")\n";
    }
}

WeightedRing extend_ring_by_x(const WeightedRing& R, uint32_t weight) {
    std::vector<std::string> names = R.var_names;
    std::string xname = "x";
    while (std::find(names.begin(), names.end(), xname) != names.end()) xname += "x";
    names.push_back(xname);
    std::vector<uint32_t> weights = R.weights;
    weights.push_back(weight);
    return make_ring(std::move(names), std::move(weights));
}

// reinterpret f over a ring with one extra trailing variable (exponent 0);
// trailing zeros preserve both the degree and the monomial order
SparsePoly lift_poly(const SparsePoly& f, const WeightedRing& R2) {
    SparsePoly out = poly_zero(R2);
    out.terms.reserve(f.terms.size());
    for (const Term& t : f.terms) {
        Term u;
        u.e = t.e;
        u.e.push_back(0);
        u.c = t.c;
        out.terms.push_back(std::move(u));
    }
    return out;
}

MatrixFactorization double_cover_mf(const PolyMatrix& S, const Field& F) {
    if (S.rows != S.cols || S.rows == 0) throw ApiError("factorization needs a square matrix");
    const WeightedRing& R = *S.entries[0].ring;
    uint32_t d = 0;
    for (const SparsePoly& e : S.entries) {
        if (!e.is_homogeneous()) throw ApiError("factorization needs homogeneous entries");
        if (!e.is_zero()) {
            if (d == 0)
                d = e.degree();
            else if (e.degree() != d)
                throw ApiError("factorization needs entries of one degree");
        }
    }
    if (d == 0) throw ApiError("factorization needs a nonconstant matrix");

    PolyMatrix S2 = poly_mat_mul(S, S, F);
    SparsePoly q;
    if (!poly_mat_is_scalar(S2, q))
        throw ApiError("factorization needs a matrix whose square is scalar");

    MatrixFactorization mf;
    mf.ring = extend_ring_by_x(R, d);
    mf.n = S.rows;
    mf.q = lift_poly(q, mf.ring);
    SparsePoly x = poly_var(mf.ring, F, mf.ring.nvars() - 1);
    SparsePoly x2 = poly_mul(x, x, F);
    mf.potential = poly_add(mf.q, x2, F);

    PolyMatrix lifted = poly_mat(mf.n, mf.n, mf.ring, F);
    for (size_t k = 0; k < S.entries.size(); ++k)
        lifted.entries[k] = lift_poly(S.entries[k], mf.ring);
    PolyMatrix xI = poly_mat(mf.n, mf.n, mf.ring, F);
    for (size_t k = 0; k < mf.n; ++k) xI.at(k, k) = x;
    PolyMatrix neg_xI = poly_mat(mf.n, mf.n, mf.ring, F);
    for (size_t k = 0; k < mf.n; ++k) neg_xI.at(k, k) = poly_neg(x, F);

    mf.B.re = lifted;
    mf.B.im = xI;
    mf.C.re = lifted;
    mf.C.im = neg_xI;
    return mf;
}

std::pair<PolyMatrix, PolyMatrix> mf_collapse(const MatrixFactorization& mf, const Field& F) {
    if (!F.has_i)
        throw ApiError("collapsing t needs a square root of -1 in the field");
    auto collapse = [&](const CPolyMatrix& M) {
        PolyMatrix out = M.re;
        for (size_t k = 0; k < out.entries.size(); ++k)
            out.entries[k] =
                poly_add(M.re.entries[k], poly_scale(M.im.entries[k], F.i, F), F);
        return out;
    };
    return {collapse(mf.B), collapse(mf.C)};
}

PeriodicResolution periodic_resolution(const MatrixFactorization& mf, size_t length) {
    if (length < 1) throw ApiError("resolution length must be at least 1");
    uint32_t d = mf.ring.weights.back();
    PeriodicResolution res;
    res.length = length;
    for (size_t k = 0; k <= length; ++k)
        res.twists.push_back(-static_cast<int>(d * k));
    for (size_t k = 0; k < length; ++k) res.map_is_b.push_back(k % 2 == 0);
    return res;
}

void export_mf(const MatrixFactorization& mf, const std::string& dir, const Field& F) {
    namespace fs = std::filesystem;
    auto [B, C] = mf_collapse(mf, F); // throws without i
    fs::create_directories(fs::path(dir) / "B");
    fs::create_directories(fs::path(dir) / "C");
    {
        std::ofstream out(fs::path(dir) / "potential.txt");
        poly_write(out, mf.potential);
    }
    std::vector<std::string> files{"potential.txt"};
    auto write_block = [&](const char* name, const PolyMatrix& M) {
        for (size_t r = 0; r < M.rows; ++r)
            for (size_t c = 0; c < M.cols; ++c) {
                std::string rel = std::string(name) + "/entry_" + std::to_string(r) + "_" +
                                  std::to_string(c) + ".txt";
                std::ofstream out(fs::path(dir) / rel);
                poly_write(out, M.at(r, c));
                files.push_back(rel);
            }
    };
    write_block("B", B);
    write_block("C", C);

    nlohmann::json j;
    j["kind"] = "matrix_factorization";
    j["prime"] = F.p;
    j["i"] = F.i;
    j["n"] = mf.n;
    j["variables"] = mf.ring.var_names;
    j["weights"] = mf.ring.weights;
    j["files"] = files;
    j["schema"] = "1";
    std::ofstream out(fs::path(dir) / "manifest.json");
    out << j.dump(2) << "\n";
}

MatrixFactorization import_mf(const std::string& dir, const Field& F) {
    namespace fs = std::filesystem;
    std::ifstream mfs(fs::path(dir) / "manifest.json");
    if (!mfs) throw ApiError("missing manifest.json");
    nlohmann::json j = nlohmann::json::parse(mfs);
    if (j.value("kind", "") != "matrix_factorization") throw ApiError("wrong manifest kind");
    if (j.at("prime").get<uint32_t>() != F.p) throw ApiError("manifest prime mismatch");
    if (!F.has_i) throw ApiError("importing needs a square root of -1 in the field");

    MatrixFactorization mf;
    mf.ring = make_ring(j.at("variables").get<std::vector<std::string>>(),
                        j.at("weights").get<std::vector<uint32_t>>());
    mf.n = j.at("n").get<size_t>();
    {
        std::ifstream in(fs::path(dir) / "potential.txt");
        if (!in) throw ApiError("missing potential.txt");
        mf.potential = poly_read(in, mf.ring, F);
    }
    auto read_block = [&](const char* name) {
        PolyMatrix M = poly_mat(mf.n, mf.n, mf.ring, F);
        for (size_t r = 0; r < mf.n; ++r)
            for (size_t c = 0; c < mf.n; ++c) {
                std::ifstream in(fs::path(dir) / (std::string(name) + "/entry_" +
                                                  std::to_string(r) + "_" +
                                                  std::to_string(c) + ".txt"));
                if (!in) throw ApiError("missing factorization entry file");
                M.at(r, c) = poly_read(in, mf.ring, F);
            }
        return M;
    };
    PolyMatrix B = read_block("B");
    PolyMatrix C = read_block("C");

    // split back into re + t im: re = (B + C)/2, im = (B - C)/(2i)
    uint32_t half = F.inv(2 % F.p);
    uint32_t half_over_i = F.mul(half, F.inv(F.i));
    mf.B.re = poly_mat(mf.n, mf.n, mf.ring, F);
    mf.B.im = poly_mat(mf.n, mf.n, mf.ring, F);
    for (size_t k = 0; k < B.entries.size(); ++k) {
        mf.B.re.entries[k] =
            poly_scale(poly_add(B.entries[k], C.entries[k], F), half, F);
        mf.B.im.entries[k] =
            poly_scale(poly_sub(B.entries[k], C.entries[k], F), half_over_i, F);
    }
    mf.C.re = mf.B.re;
    mf.C.im = mf.B.im;
    for (auto& e : mf.C.im.entries) e = poly_neg(e, F);

    SparsePoly x = poly_var(mf.ring, F, mf.ring.nvars() - 1);
    mf.q = poly_sub(mf.potential, poly_mul(x, x, F), F);

    // sanity: B C = W I over the collapsed field
    PolyMatrix prod = poly_mat_mul(B, C, F);
    SparsePoly q;
    if (!poly_mat_is_scalar(prod, q) || !(q == mf.potential))
        throw ApiError("imported factorization does not multiply to the potential");
    return mf;
}

} // namespace qmf
