#include <doctest.h>

#include <qmf/dominance.hpp>
#include <qmf/invariants.hpp>
#include <qmf/rng.hpp>

using namespace qmf;

namespace {

DenseMat random_section(size_t rows, uint32_t seed, const Field& F) {
    Rng rng(seed);
    DenseMat A(rows, 6);
    for (auto& cell : A.a) cell = rng.field_elem(F);
    return A;
}

} // namespace

TEST_CASE("degenerate sections have degenerate jacobians") {
    Field F = make_field(313);
    SUBCASE("zero section") {
        DenseMat A(32, 6);
        DenseMat J = pullback_jacobian(A, F);
        CHECK(J.rows == 192);
        CHECK(J.cols == 126);
        CHECK(pullback_span_rank(A, F) == 0);
    }
    SUBCASE("rank one section stays within six") {
        Rng rng(5);
        std::vector<uint32_t> u(32), v(6);
        for (auto& x : u) x = rng.field_elem(F);
        for (auto& x : v) x = rng.field_elem(F);
        DenseMat A(32, 6);
        for (size_t r = 0; r < 32; ++r)
            for (size_t c = 0; c < 6; ++c) A.at(r, c) = F.mul(u[r], v[c]);
        CHECK(pullback_span_rank(A, F) <= 6);
    }
}

TEST_CASE("a random section hits the full rank 126") {
    Field F = make_field(313);
    DenseMat A = random_section(32, 1, F);
    DenseMat J = pullback_jacobian(A, F);
    CHECK(J.rows == 192);
    CHECK(J.cols == 126);
    CHECK(rank(J, F) == 126);
    SUBCASE("also away from the default prime") {
        Field G = make_field(331);
        DenseMat B = random_section(32, 1, G);
        CHECK(pullback_span_rank(B, G) == 126);
    }
}

TEST_CASE("the rank is a property of the section image") {
    Field F = make_field(313);
    DenseMat A = random_section(32, 9, F);
    const size_t base = pullback_span_rank(A, F);
    SUBCASE("invariant under basis changes of the source") {
        for (uint32_t s = 100; s < 105; ++s) {
            DenseMat g(6, 6);
            Rng rng(s);
            do {
                for (auto& cell : g.a) cell = rng.field_elem(F);
            } while (rank(g, F) < 6);
            CHECK(pullback_span_rank(mat_mul(A, g, F), F) == base);
        }
    }
    SUBCASE("invariant under scaling the quartic") {
        SparsePoly P = igusa_quartic(F);
        CHECK(pullback_span_rank(P, A, F) == base);
        CHECK(pullback_span_rank(poly_scale(P, 7, F), A, F) == base);
    }
    SUBCASE("deterministic") {
        DenseMat J1 = pullback_jacobian(A, F);
        DenseMat J2 = pullback_jacobian(random_section(32, 9, F), F);
        CHECK(J1.a == J2.a);
    }
}

TEST_CASE("trial verdict") {
    Field F = make_field(313);
    SUBCASE("five trials from seed 42 dominate") {
        DominanceVerdict v = dominance_verdict(42, 5, F);
        CHECK(v.full_rank == 126);
        CHECK(v.dominant);
        REQUIRE(v.trials.size() == 5);
        size_t hits = 0;
        for (size_t t = 0; t < 5; ++t) {
            CHECK(v.trials[t].seed == 42 + t);
            CHECK(v.trials[t].rank <= 126);
            if (v.trials[t].rank == 126) ++hits;
        }
        CHECK(hits >= 1);
    }
    SUBCASE("verdicts are reproducible") {
        DominanceVerdict a = dominance_verdict(7, 3, F);
        DominanceVerdict b = dominance_verdict(7, 3, F);
        REQUIRE(a.trials.size() == b.trials.size());
        for (size_t t = 0; t < a.trials.size(); ++t) CHECK(a.trials[t].rank == b.trials[t].rank);
    }
    SUBCASE("zero trials is an error") {
        CHECK_THROWS_AS(dominance_verdict(1, 0, F), ApiError);
    }
}

TEST_CASE("a twenty dimensional family cannot dominate") {
    // negative control: with N = 20 the jacobian has only 120 rows, so the
    // rank is capped strictly below 126 no matter the section
    Field F = make_field(313);
    SparsePoly P = sl6_quartic(F);
    DenseMat A = random_section(20, 1, F);
    DenseMat J = pullback_jacobian(P, A, F);
    CHECK(J.rows == 120);
    CHECK(J.cols == 126);
    const size_t r = pullback_span_rank(P, A, F);
    CHECK(r <= 120);
    CHECK(r < 126);
    MESSAGE("wedge-cube control rank = ", r);
}

TEST_CASE("malformed inputs are rejected") {
    Field F = make_field(313);
    SUBCASE("section shape must match the quartic") {
        SparsePoly P = igusa_quartic(F);
        CHECK_THROWS_AS(pullback_jacobian(P, DenseMat(20, 6), F), ApiError);
        CHECK_THROWS_AS(pullback_jacobian(P, DenseMat(32, 5), F), ApiError);
    }
    SUBCASE("the form must be a homogeneous quartic") {
        const WeightedRing& R = IgusaCoordinates::ring();
        SparsePoly cubic = poly_mul(poly_var(R, F, 0), poly_mul(poly_var(R, F, 1), poly_var(R, F, 2), F), F);
        CHECK_THROWS_AS(pullback_jacobian(cubic, DenseMat(32, 6), F), ApiError);
        SparsePoly mixed = poly_add(igusa_quartic(F), poly_var(R, F, 3), F);
        CHECK_THROWS_AS(pullback_jacobian(mixed, DenseMat(32, 6), F), ApiError);
    }
}
