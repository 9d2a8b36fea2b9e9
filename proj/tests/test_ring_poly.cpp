#include <doctest.h>

#include <sstream>

#include "qmf/poly.hpp"
#include "qmf/ring.hpp"
#include "qmf/rng.hpp"

using namespace qmf;

namespace {

WeightedRing cover_ring() {
    // six weight-1 variables plus the double-cover coordinate of weight 2
    return make_ring({"z1", "z2", "z3", "z4", "z5", "z6", "x"},
                     {1, 1, 1, 1, 1, 1, 2});
}

SparsePoly random_poly(const WeightedRing& R, const Field& F, Rng& rng, uint32_t deg,
                       size_t nterms) {
    std::vector<Exps> basis = monomial_basis(R, deg);
    SparsePoly f = poly_zero(R);
    for (size_t k = 0; k < nterms; ++k) {
        const Exps& e = basis[rng.next() % basis.size()];
        f = poly_add(f, poly_monomial(R, F, e, rng.field_elem(F)), F);
    }
    return f;
}

} // namespace

TEST_CASE("monomial counts, weighted double-cover ring") {
    WeightedRing R = cover_ring();
    const size_t expect[] = {1, 6, 22, 62, 148, 314, 610, 1106, 1897};
    for (uint32_t d = 0; d <= 8; ++d) {
        CHECK(monomial_count(R, d) == expect[d]);
        CHECK(monomial_basis(R, d).size() == expect[d]);
    }
}

TEST_CASE("monomial counts, plain six variables") {
    WeightedRing R = plain_ring("z", 6);
    const size_t expect[] = {1, 6, 21, 56, 126, 252, 462, 792, 1287};
    for (uint32_t d = 0; d <= 8; ++d) {
        CHECK(monomial_count(R, d) == expect[d]);
        CHECK(monomial_basis(R, d).size() == expect[d]);
    }
}

TEST_CASE("monomial order: ascending degree, first variable dominant inside a degree") {
    WeightedRing R = plain_ring("z", 3);
    std::vector<Exps> b = monomial_basis(R, 2);
    // z1^2, z1 z2, z1 z3, z2^2, z2 z3, z3^2
    CHECK(b[0] == Exps{2, 0, 0});
    CHECK(b[1] == Exps{1, 1, 0});
    CHECK(b[2] == Exps{1, 0, 1});
    CHECK(b[3] == Exps{0, 2, 0});
    CHECK(b[4] == Exps{0, 1, 1});
    CHECK(b[5] == Exps{0, 0, 2});
    for (size_t k = 0; k + 1 < b.size(); ++k) {
        CHECK(mono_less(R, b[k], b[k + 1]));
        CHECK_FALSE(mono_less(R, b[k + 1], b[k]));
    }
}

TEST_CASE("ring construction rejects bad input") {
    CHECK_THROWS_AS(make_ring({}, {}), ApiError);
    CHECK_THROWS_AS(make_ring({"a", "a"}, {1, 1}), ApiError);
    CHECK_THROWS_AS(make_ring({"a", "b"}, {1, 0}), ApiError);
    CHECK_THROWS_AS(make_ring({"a"}, {1, 1}), ApiError);
}

TEST_CASE("power of the variable sum has full support with multinomial coefficients") {
    Field F = make_field(313);
    WeightedRing R = plain_ring("z", 6);
    SparsePoly s = poly_zero(R);
    for (size_t v = 0; v < 6; ++v) s = poly_add(s, poly_var(R, F, v), F);
    SparsePoly s4 = poly_mul(poly_mul(s, s, F), poly_mul(s, s, F), F);
    REQUIRE(s4.terms.size() == 126);
    for (const Term& t : s4.terms) {
        // 4! / prod e_v!
        uint32_t mult = 24;
        for (uint8_t e : t.e) {
            uint32_t f = 1;
            for (uint8_t k = 2; k <= e; ++k) f *= k;
            mult /= f;
        }
        CHECK(t.c == mult % F.p);
    }
}

TEST_CASE("arithmetic laws on random polynomials") {
    Field F = make_field(313);
    WeightedRing R = plain_ring("z", 4);
    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        SparsePoly f = random_poly(R, F, rng, 2, 5);
        SparsePoly g = random_poly(R, F, rng, 3, 5);
        SparsePoly h = random_poly(R, F, rng, 2, 4);
        CHECK(poly_mul(f, g, F) == poly_mul(g, f, F));
        CHECK(poly_mul(f, poly_add(h, h, F), F) ==
              poly_scale(poly_mul(f, h, F), 2, F));
        CHECK(poly_sub(f, f, F).is_zero());
        CHECK(poly_mul(poly_mul(f, g, F), h, F) == poly_mul(f, poly_mul(g, h, F), F));
        CHECK(f.is_homogeneous());
        CHECK(poly_mul(f, g, F).degree() == 5);
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    Field F = make_field(313);
    WeightedRing src = plain_ring("y", 5);
    WeightedRing tgt = plain_ring("z", 3);
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<uint32_t>> m(5, std::vector<uint32_t>(3));
        for (auto& row : m)
            for (auto& v : row) v = rng.field_elem(F);
        SparsePoly f = random_poly(src, F, rng, 2, 6);
        SparsePoly g = random_poly(src, F, rng, 2, 6);
        SparsePoly lhs = substitute_linear(poly_mul(f, g, F), F, m, tgt);
        SparsePoly rhs = poly_mul(substitute_linear(f, F, m, tgt),
                                  substitute_linear(g, F, m, tgt), F);
        CHECK(lhs == rhs);
        SparsePoly lin = substitute_linear(poly_add(f, g, F), F, m, tgt);
        CHECK(lin == poly_add(substitute_linear(f, F, m, tgt),
                              substitute_linear(g, F, m, tgt), F));
    }
}

TEST_CASE("substitution composes with evaluation") {
    Field F = make_field(313);
    WeightedRing src = plain_ring("y", 4);
    WeightedRing tgt = plain_ring("z", 4);
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<uint32_t>> m(4, std::vector<uint32_t>(4));
        for (auto& row : m)
            for (auto& v : row) v = rng.field_elem(F);
        SparsePoly f = random_poly(src, F, rng, 3, 8);
        std::vector<uint32_t> z(4);
        for (auto& v : z) v = rng.field_elem(F);
        std::vector<uint32_t> mz(4, 0);
        for (size_t r = 0; r < 4; ++r)
            for (size_t c = 0; c < 4; ++c) mz[r] = F.add(mz[r], F.mul(m[r][c], z[c]));
        CHECK(poly_eval(substitute_linear(f, F, m, tgt), F, z) == poly_eval(f, F, mz));
    }
}

TEST_CASE("euler identity for homogeneous polynomials") {
    Field F = make_field(313);
    Rng rng(17);
    // plain grading
    {
        WeightedRing R = plain_ring("z", 5);
        SparsePoly f = random_poly(R, F, rng, 4, 12);
        std::vector<SparsePoly> df = partials(f, F);
        SparsePoly acc = poly_zero(R);
        for (size_t v = 0; v < 5; ++v)
            acc = poly_add(acc, poly_mul(poly_var(R, F, v), df[v], F), F);
        CHECK(acc == poly_scale(f, 4, F));
    }
    // weighted grading: sum w_v z_v d_v f = (weighted degree) f
    {
        WeightedRing R = cover_ring();
        SparsePoly f = random_poly(R, F, rng, 6, 15);
        std::vector<SparsePoly> df = partials(f, F);
        SparsePoly acc = poly_zero(R);
        for (size_t v = 0; v < R.nvars(); ++v)
            acc = poly_add(
                acc, poly_scale(poly_mul(poly_var(R, F, v), df[v], F), R.weights[v], F), F);
        CHECK(acc == poly_scale(f, 6, F));
    }
}

TEST_CASE("text round trip") {
    Field F = make_field(313);
    WeightedRing R = cover_ring();
    Rng rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        SparsePoly f = random_poly(R, F, rng, 4, 20);
        std::stringstream ss;
        poly_write(ss, f);
        SparsePoly g = poly_read(ss, R, F);
        CHECK(f == g);
    }
    std::stringstream empty;
    CHECK(poly_read(empty, R, F).is_zero());
}

TEST_CASE("coordinates against the degree basis") {
    Field F = make_field(313);
    WeightedRing R = plain_ring("z", 6);
    Rng rng(29);
    SparsePoly f = random_poly(R, F, rng, 4, 30);
    std::vector<uint32_t> coords = poly_coords(f, 4);
    REQUIRE(coords.size() == 126);
    std::vector<Exps> basis = monomial_basis(R, 4);
    SparsePoly back = poly_zero(R);
    for (size_t k = 0; k < basis.size(); ++k)
        if (coords[k]) back = poly_add(back, poly_monomial(R, F, basis[k], coords[k]), F);
    CHECK(back == f);
    SparsePoly wrong = random_poly(R, F, rng, 3, 2);
    if (!wrong.is_zero()) CHECK_THROWS_AS(poly_coords(wrong, 4), ApiError);
}

TEST_CASE("derivative drops terms with exponent divisible by p") {
    Field F = make_field(5);
    WeightedRing R = plain_ring("z", 1);
    SparsePoly f = poly_monomial(R, F, Exps{5}, 1); // z^5, d/dz = 5 z^4 = 0
    CHECK(partials(f, F)[0].is_zero());
}
