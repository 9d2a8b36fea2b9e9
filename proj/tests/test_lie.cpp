#include <doctest.h>

#include <qmf/field.hpp>
#include <qmf/lie.hpp>

using namespace qmf;

namespace {

using Decomp = std::vector<std::pair<Weight, long long>>;

long long mass(const WeightMap& ch) {
    long long total = 0;
    for (const auto& [w, m] : ch) total += m;
    return total;
}

} // namespace

TEST_CASE("root system tables") {
    RootSystem a5 = make_root_system('A', 5);
    RootSystem d6 = make_root_system('D', 6);

    SUBCASE("cartan matrices") {
        CHECK(a5.cartan[0][0] == 2);
        CHECK(a5.cartan[0][1] == -1);
        CHECK(a5.cartan[1][0] == -1);
        CHECK(a5.cartan[0][2] == 0);
        // fork at the fourth node: edges 4-5 and 4-6, none between the tips
        CHECK(d6.cartan[3][4] == -1);
        CHECK(d6.cartan[3][5] == -1);
        CHECK(d6.cartan[4][5] == 0);
        CHECK(d6.cartan[2][3] == -1);
    }
    SUBCASE("scaled inverse cartan") {
        CHECK(a5.gram_scale == 6);
        CHECK(d6.gram_scale == 4);
        // A5: gram[i][j] = min(i+1, j+1) * (6 - max(i+1, j+1))
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                CHECK(a5.gram[i][j] == (std::min(i, j) + 1) * (5 - std::max(i, j)));
        CHECK(d6.gram[0][0] == 4);
        CHECK(d6.gram[3][3] == 16);
        CHECK(d6.gram[5][5] == 6);
        CHECK(d6.gram[4][5] == 4);
        CHECK(d6.gram[0][5] == 2);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) CHECK(d6.gram[i][j] == d6.gram[j][i]);
        // gram * cartan = det(C) * identity
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                long long acc = 0;
                for (int k = 0; k < 6; ++k) acc += (long long)d6.gram[i][k] * d6.cartan[k][j];
                CHECK(acc == (i == j ? d6.gram_scale : 0));
            }
    }
    SUBCASE("positive roots") {
        CHECK(a5.positive_roots.size() == 15);
        CHECK(d6.positive_roots.size() == 30);
        // simply laced: every root has squared length 2 (scaled by det C)
        for (const Weight& r : a5.positive_roots)
            CHECK(weight_pairing(a5, r, r) == 2 * a5.gram_scale);
        for (const Weight& r : d6.positive_roots)
            CHECK(weight_pairing(d6, r, r) == 2 * d6.gram_scale);
        auto contains = [](const RootSystem& rs, const Weight& w) {
            for (const Weight& r : rs.positive_roots)
                if (r == w) return true;
            return false;
        };
        CHECK(contains(a5, {1, 0, 0, 0, 1}));   // highest root of A5
        CHECK(contains(d6, {0, 1, 0, 0, 0, 0})); // highest root of D6
        for (int j = 0; j < 5; ++j) {
            Weight alpha(5);
            for (int i = 0; i < 5; ++i) alpha[i] = a5.cartan[i][j];
            CHECK(contains(a5, alpha));
        }
    }
    SUBCASE("pairing is symmetric") {
        Weight x{1, -2, 0, 3, 1}, y{0, 4, -1, 2, 2};
        CHECK(weight_pairing(a5, x, y) == weight_pairing(a5, y, x));
    }
    SUBCASE("bad types are rejected") {
        CHECK_THROWS_AS(make_root_system('E', 6), ApiError);
        CHECK_THROWS_AS(make_root_system('D', 3), ApiError);
        CHECK_THROWS_AS(make_root_system('A', 0), ApiError);
    }
}

TEST_CASE("dimension formula") {
    RootSystem a5 = make_root_system('A', 5);
    RootSystem d6 = make_root_system('D', 6);
    CHECK(weyl_dim(a5, {0, 0, 0, 0, 0}) == 1);
    CHECK(weyl_dim(a5, {1, 0, 0, 0, 0}) == 6);
    CHECK(weyl_dim(a5, {0, 0, 1, 0, 0}) == 20);
    CHECK(weyl_dim(a5, {1, 0, 0, 0, 1}) == 35);
    CHECK(weyl_dim(a5, {0, 0, 2, 0, 0}) == 175);
    CHECK(weyl_dim(a5, {0, 1, 0, 1, 0}) == 189);
    CHECK(weyl_dim(a5, {2, 0, 0, 0, 2}) == 405);
    CHECK(weyl_dim(a5, {1, 0, 2, 0, 1}) == 3969);
    CHECK(weyl_dim(a5, {0, 0, 4, 0, 0}) == 4116);
    CHECK(weyl_dim(d6, {1, 0, 0, 0, 0, 0}) == 12);
    CHECK(weyl_dim(d6, {0, 0, 0, 0, 0, 1}) == 32);
    CHECK(weyl_dim(d6, {0, 0, 0, 0, 1, 0}) == 32);
    CHECK(weyl_dim(d6, {0, 1, 0, 0, 0, 0}) == 66);
    CHECK(weyl_dim(d6, {2, 0, 0, 0, 0, 0}) == 77);
    CHECK(weyl_dim(d6, {0, 0, 0, 1, 0, 0}) == 495);
    CHECK(weyl_dim(d6, {0, 0, 0, 0, 0, 2}) == 462);
    CHECK_THROWS_AS(weyl_dim(a5, {1, 0, -1, 0, 0}), ApiError);
    CHECK_THROWS_AS(weyl_dim(a5, {1, 0, 0, 0}), ApiError);
}

TEST_CASE("weight systems") {
    RootSystem a5 = make_root_system('A', 5);
    RootSystem d6 = make_root_system('D', 6);
    SUBCASE("minuscule half-spin: 32 weights, all simple") {
        WeightMap ch = irrep_weights(d6, {0, 0, 0, 0, 0, 1});
        CHECK(ch.size() == 32);
        for (const auto& [w, m] : ch) CHECK(m == 1);
    }
    SUBCASE("adjoint of A5: zero weight carries the rank") {
        WeightMap ch = irrep_weights(a5, {1, 0, 0, 0, 1});
        CHECK(mass(ch) == 35);
        CHECK(ch.at(Weight{0, 0, 0, 0, 0}) == 5);
        CHECK(ch.at(Weight{1, 0, 0, 0, 1}) == 1);
    }
    SUBCASE("adjoint of D6") {
        WeightMap ch = irrep_weights(d6, {0, 1, 0, 0, 0, 0});
        CHECK(mass(ch) == 66);
        CHECK(ch.at(Weight{0, 0, 0, 0, 0, 0}) == 6);
    }
    SUBCASE("masses match the dimension formula") {
        CHECK(mass(irrep_weights(a5, {0, 0, 1, 0, 0})) == 20);
        CHECK(mass(irrep_weights(a5, {0, 1, 0, 1, 0})) == 189);
        CHECK(mass(irrep_weights(d6, {2, 0, 0, 0, 0, 0})) == 77);
        CHECK(mass(irrep_weights(d6, {0, 0, 0, 1, 0, 0})) == 495);
    }
    SUBCASE("non-dominant highest weights are rejected") {
        CHECK_THROWS_AS(irrep_weights(a5, {0, -1, 0, 0, 0}), ApiError);
    }
}

TEST_CASE("character arithmetic") {
    RootSystem a5 = make_root_system('A', 5);
    WeightMap v = irrep_weights(a5, {1, 0, 0, 0, 0});
    SUBCASE("product of characters multiplies masses") {
        WeightMap vv = char_mul(v, v);
        CHECK(mass(vv) == 36);
    }
    SUBCASE("fourth symmetric power of the vector rep is irreducible") {
        WeightMap s4 = sym4_character(v);
        CHECK(mass(s4) == 126);
        Decomp dec = decompose_character(a5, s4);
        REQUIRE(dec.size() == 1);
        CHECK(dec[0].first == Weight{4, 0, 0, 0, 0});
        CHECK(dec[0].second == 1);
    }
    SUBCASE("trivial character is fixed by the symmetric power") {
        WeightMap triv{{Weight{0, 0, 0, 0, 0}, 1}};
        WeightMap s4 = sym4_character(triv);
        REQUIRE(s4.size() == 1);
        CHECK(s4.at(Weight{0, 0, 0, 0, 0}) == 1);
    }
    SUBCASE("junk maps are rejected by the peel") {
        WeightMap bad{{Weight{1, -1, 0, 0, 0}, 1}};
        CHECK_THROWS_AS(decompose_character(a5, bad), ApiError);
        WeightMap negative{{Weight{0, 0, 0, 0, 0}, -2}};
        CHECK_THROWS_AS(decompose_character(a5, negative), ApiError);
        WeightMap torn = v;
        torn[Weight{1, 0, 0, 0, 0}] = 2; // over-weighted highest weight
        CHECK_THROWS_AS(decompose_character(a5, torn), ApiError);
    }
}

TEST_CASE("named decompositions") {
    SUBCASE("endomorphisms of the six dimensional rep") {
        PlethysmResult r = plethysm_case("end6");
        CHECK(r.type == 'A');
        CHECK(r.rank == 5);
        CHECK(r.total_dim == 36);
        REQUIRE(r.decomposition.size() == 2);
        CHECK(r.decomposition[0].first == Weight{1, 0, 0, 0, 1});
        CHECK(r.decomposition[0].second == 1);
        CHECK(r.decomposition[1].first == Weight{0, 0, 0, 0, 0});
        CHECK(r.decomposition[1].second == 1);
    }
    SUBCASE("square of the twelve dimensional rep") {
        PlethysmResult r = plethysm_case("end12");
        CHECK(r.type == 'D');
        CHECK(r.rank == 6);
        CHECK(r.total_dim == 144);
        REQUIRE(r.decomposition.size() == 3);
        CHECK(r.decomposition[0].first == Weight{2, 0, 0, 0, 0, 0});
        CHECK(r.decomposition[1].first == Weight{0, 1, 0, 0, 0, 0});
        CHECK(r.decomposition[2].first == Weight{0, 0, 0, 0, 0, 0});
        for (const auto& [w, m] : r.decomposition) CHECK(m == 1);
    }
    SUBCASE("quartics on the wedge-cube family") {
        PlethysmResult r = plethysm_case("s4-lambda3");
        CHECK(r.total_dim == 8855);
        const Decomp expect{
            {{0, 0, 4, 0, 0}, 1}, {{1, 0, 2, 0, 1}, 1}, {{2, 0, 0, 0, 2}, 1},
            {{0, 0, 2, 0, 0}, 1}, {{0, 1, 0, 1, 0}, 1}, {{0, 0, 0, 0, 0}, 1},
        };
        CHECK(r.decomposition == expect);
    }
    SUBCASE("quartics on the half-spin family") {
        PlethysmResult r = plethysm_case("s4-delta");
        CHECK(r.total_dim == 52360);
        const Decomp expect{
            {{0, 0, 0, 0, 0, 4}, 1}, {{0, 1, 0, 0, 0, 2}, 1}, {{0, 2, 0, 0, 0, 0}, 1},
            {{0, 0, 0, 0, 0, 2}, 1}, {{0, 0, 0, 1, 0, 0}, 1}, {{0, 0, 0, 0, 0, 0}, 1},
        };
        CHECK(r.decomposition == expect);
    }
    SUBCASE("unknown case names are rejected") {
        CHECK_THROWS_AS(plethysm_case("s5-lambda3"), ApiError);
    }
}
