#include <doctest.h>

#include "qmf/invariants.hpp"
#include "qmf/linalg.hpp"
#include "qmf/rng.hpp"

using namespace qmf;

namespace {

std::vector<std::vector<SparsePoly>> alt_from_vars(const WeightedRing& R, const Field& F,
                                                   size_t n, size_t first) {
    std::vector<std::vector<SparsePoly>> M(n, std::vector<SparsePoly>(n, poly_zero(R)));
    size_t k = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j, ++k) {
            M[i][j] = poly_var(R, F, first + k);
            M[j][i] = poly_neg(M[i][j], F);
        }
    return M;
}

uint32_t det_eval(const std::vector<std::vector<SparsePoly>>& M, const Field& F,
                  const std::vector<uint32_t>& pt) {
    size_t n = M.size();
    DenseMat A(n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) A.at(r, c) = poly_eval(M[r][c], F, pt);
    // fraction-free would be overkill; plain elimination tracking the determinant
    uint32_t det = 1;
    for (size_t col = 0, row = 0; col < n && row < n; ++col) {
        size_t piv = row;
        while (piv < n && A.at(piv, col) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != row) {
            for (size_t c = 0; c < n; ++c) std::swap(A.at(piv, c), A.at(row, c));
            det = F.neg(det);
        }
        det = F.mul(det, A.at(row, col));
        uint32_t inv = F.inv(A.at(row, col));
        for (size_t r = row + 1; r < n; ++r) {
            uint32_t f = F.mul(A.at(r, col), inv);
            if (!f) continue;
            for (size_t c = col; c < n; ++c)
                A.at(r, c) = F.sub(A.at(r, c), F.mul(f, A.at(row, c)));
        }
        ++row;
    }
    return det;
}

} // namespace

TEST_CASE("coordinate bookkeeping") {
    CHECK(IgusaCoordinates::pair_index(1, 2) == 0);
    CHECK(IgusaCoordinates::pair_index(1, 6) == 4);
    CHECK(IgusaCoordinates::pair_index(2, 3) == 5);
    CHECK(IgusaCoordinates::pair_index(5, 6) == 14);
    CHECK_THROWS_AS(IgusaCoordinates::pair_index(3, 3), ApiError);
    CHECK_THROWS_AS(IgusaCoordinates::pair_index(2, 1), ApiError);

    WeightedRing R = IgusaCoordinates::ring();
    CHECK(R.nvars() == 32);
    CHECK(R.var_names[0] == "x0");
    CHECK(R.var_names[1] == "x12");
    CHECK(R.var_names[16] == "y12");
    CHECK(R.var_names[31] == "y0");

    CHECK(Lambda3Coordinates::subset(0) == std::array<int, 3>{1, 2, 3});
    CHECK(Lambda3Coordinates::subset(1) == std::array<int, 3>{1, 2, 4});
    CHECK(Lambda3Coordinates::subset(19) == std::array<int, 3>{4, 5, 6});
    CHECK_THROWS_AS(Lambda3Coordinates::subset(20), ApiError);
}

TEST_CASE("pfaffian normalization and squares") {
    Field F = make_field(313);
    WeightedRing R = make_ring({"a", "b", "c", "d", "e", "f"}, {1, 1, 1, 1, 1, 1});

    SUBCASE("standard symplectic block has pfaffian one") {
        for (size_t n : {2u, 4u, 6u}) {
            std::vector<std::vector<SparsePoly>> M(n, std::vector<SparsePoly>(n, poly_zero(R)));
            for (size_t k = 0; k + 1 < n; k += 2) {
                M[k][k + 1] = poly_const(R, F, 1);
                M[k + 1][k] = poly_const(R, F, F.neg(1));
            }
            SparsePoly pf = pfaffian(M, F);
            CHECK(pf == poly_const(R, F, 1));
        }
    }

    SUBCASE("agrees with the matching-sum oracle, 4x4 and 6x6") {
        WeightedRing R6 = make_ring({"m1", "m2", "m3", "m4", "m5", "m6", "m7", "m8", "m9",
                                     "m10", "m11", "m12", "m13", "m14", "m15"},
                                    std::vector<uint32_t>(15, 1));
        auto M = alt_from_vars(R6, F, 6, 0);
        CHECK(pfaffian(M, F) == pfaffian_matchings(M, F));
        WeightedRing R4 = make_ring({"m1", "m2", "m3", "m4", "m5", "m6"},
                                    std::vector<uint32_t>(6, 1));
        auto M4 = alt_from_vars(R4, F, 4, 0);
        CHECK(pfaffian(M4, F) == pfaffian_matchings(M4, F));
    }

    SUBCASE("pfaffian squared equals the determinant on random evaluations") {
        WeightedRing R6 = make_ring({"m1", "m2", "m3", "m4", "m5", "m6", "m7", "m8", "m9",
                                     "m10", "m11", "m12", "m13", "m14", "m15"},
                                    std::vector<uint32_t>(15, 1));
        auto M = alt_from_vars(R6, F, 6, 0);
        SparsePoly pf = pfaffian(M, F);
        Rng rng(11);
        for (int t = 0; t < 20; ++t) {
            std::vector<uint32_t> pt(15);
            for (auto& v : pt) v = rng.field_elem(F);
            uint32_t lhs = F.mul(poly_eval(pf, F, pt), poly_eval(pf, F, pt));
            CHECK(lhs == det_eval(M, F, pt));
        }
    }

    SUBCASE("input validation") {
        std::vector<std::vector<SparsePoly>> odd(3, std::vector<SparsePoly>(3, poly_zero(R)));
        CHECK_THROWS_AS(pfaffian(odd, F), ApiError);
        std::vector<std::vector<SparsePoly>> bad(2, std::vector<SparsePoly>(2, poly_zero(R)));
        bad[0][1] = poly_var(R, F, 0);
        bad[1][0] = poly_var(R, F, 0); // not minus
        CHECK_THROWS_AS(pfaffian(bad, F), ApiError);
        bad[1][0] = poly_neg(poly_var(R, F, 0), F);
        bad[0][0] = poly_const(R, F, 1); // nonzero diagonal
        CHECK_THROWS_AS(pfaffian(bad, F), ApiError);
    }
}

TEST_CASE("even quartic invariant") {
    Field F = make_field(313);
    SparsePoly P4 = igusa_quartic(F);

    SUBCASE("homogeneous of degree 4") {
        CHECK(P4.is_homogeneous());
        CHECK(P4.degree() == 4);
        CHECK_FALSE(P4.is_zero());
    }

    SUBCASE("value at a decomposable point") {
        // x0 = y0 = 1, X = Y = 0: P = -1/4 mod p
        std::vector<uint32_t> pt(32, 0);
        pt[IgusaCoordinates::x0()] = 1;
        pt[IgusaCoordinates::y0()] = 1;
        uint32_t got = poly_eval(P4, F, pt);
        CHECK(got == F.neg(F.inv(4)));
    }

    SUBCASE("x0 Pf(X) survives when y coordinates vanish") {
        // with y = 0 and y0 = 0 the only term is -1/4 (x0 y0 - sum x y)^2 = 0,
        // plus x0 Pf(X); evaluate at X the standard symplectic form
        std::vector<uint32_t> pt(32, 0);
        pt[IgusaCoordinates::x0()] = 2;
        pt[IgusaCoordinates::x(IgusaCoordinates::pair_index(1, 2))] = 1;
        pt[IgusaCoordinates::x(IgusaCoordinates::pair_index(3, 4))] = 1;
        pt[IgusaCoordinates::x(IgusaCoordinates::pair_index(5, 6))] = 1;
        CHECK(poly_eval(P4, F, pt) == 2);
    }

    SUBCASE("swapping x and y coordinate blocks fixes the invariant") {
        // P is symmetric under (x0, X, Y, y0) -> (y0, Y, X, x0)
        static const WeightedRing R = IgusaCoordinates::ring();
        std::vector<std::vector<uint32_t>> swap(32, std::vector<uint32_t>(32, 0));
        swap[IgusaCoordinates::x0()][IgusaCoordinates::y0()] = 1;
        swap[IgusaCoordinates::y0()][IgusaCoordinates::x0()] = 1;
        for (size_t k = 0; k < 15; ++k) {
            swap[IgusaCoordinates::x(k)][IgusaCoordinates::y(k)] = 1;
            swap[IgusaCoordinates::y(k)][IgusaCoordinates::x(k)] = 1;
        }
        CHECK(substitute_linear(P4, F, swap, R) == P4);
    }

    SUBCASE("stable across primes on integer points") {
        // evaluate at a fixed small-integer point over two primes and compare
        // against the expected integer value reduced mod p
        Field F5 = make_field(1009);
        SparsePoly Q = igusa_quartic(F5);
        Rng rng(3);
        std::vector<int64_t> zi(32);
        for (auto& v : zi) v = static_cast<int64_t>(rng.next() % 7) - 3;
        auto reduce = [](int64_t v, const Field& Fp) {
            int64_t m = v % static_cast<int64_t>(Fp.p);
            if (m < 0) m += Fp.p;
            return static_cast<uint32_t>(m);
        };
        std::vector<uint32_t> p1(32), p2(32);
        for (size_t k = 0; k < 32; ++k) {
            p1[k] = reduce(zi[k], F);
            p2[k] = reduce(zi[k], F5);
        }
        // 4*P has integer coefficients; compare 4*P mod both primes via CRT
        uint32_t a = F.mul(4, poly_eval(P4, F, p1));
        uint32_t b = F5.mul(4, poly_eval(Q, F5, p2));
        // lift: find the unique integer in (-pq/2, pq/2) matching both residues
        int64_t p = F.p, q = F5.p;
        int64_t x = -1;
        for (int64_t t = 0; t < q; ++t) {
            int64_t cand = a + p * t;
            if (cand % q == b) {
                x = cand;
                break;
            }
        }
        REQUIRE(x >= 0);
        // the lifted value must be small compared to pq (true integer value)
        if (x > p * q / 2) x -= p * q;
        CHECK(std::abs(x) < 100000);
    }
}

TEST_CASE("three-form quartic invariant") {
    Field F = make_field(313);
    SparsePoly lP = sl6_quartic(F);

    SUBCASE("homogeneous of degree 4 in 20 variables") {
        CHECK(lP.is_homogeneous());
        CHECK(lP.degree() == 4);
    }

    SUBCASE("value on the split 3-form e123 + e456") {
        std::vector<uint32_t> pt(20, 0);
        pt[0] = 1;  // y1
        pt[19] = 1; // y20
        CHECK(poly_eval(lP, F, pt) == 1);
    }

    SUBCASE("vanishes on a decomposable 3-form") {
        std::vector<uint32_t> pt(20, 0);
        pt[0] = 7; // e123 alone
        CHECK(poly_eval(lP, F, pt) == 0);
        std::vector<uint32_t> pt2(20, 0);
        pt2[19] = 5;
        CHECK(poly_eval(lP, F, pt2) == 0);
    }
}
