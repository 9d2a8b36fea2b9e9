#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qmf {

// Simply laced root systems of types A and D, everything in the basis of
// fundamental weights (Dynkin labels). Simple roots are the columns of the
// Cartan matrix; the integer pairing gram = det(C) * C^{-1} represents the
// invariant form up to the positive scale det(C), which cancels everywhere
// it is used (Freudenthal's recursion and the Weyl dimension formula).
// D-type nodes follow Bourbaki: the fork attaches nodes rank-1 and rank to
// node rank-2 (for D6: edges 1-2, 2-3, 3-4, 4-5, 4-6).
struct RootSystem {
    char type = 'A';
    int rank = 0;
    std::vector<std::vector<int>> cartan;          // rank x rank
    std::vector<std::vector<int>> gram;            // det(C) * C^{-1}
    long long gram_scale = 0;                      // det(C)
    std::vector<std::vector<int>> positive_roots;  // in weight basis
    std::vector<int> rho;                          // all ones
};
RootSystem make_root_system(char type, int rank);

using Weight = std::vector<int>;
using WeightMap = std::map<Weight, long long>;  // weight -> multiplicity

// <x, y> in the scaled form (gram applied to weight-basis coordinates)
long long weight_pairing(const RootSystem& rs, const Weight& x, const Weight& y);

// dimension of the irreducible with highest weight lam (exact, via prime
// factorization of the Weyl products)
long long weyl_dim(const RootSystem& rs, const Weight& lam);

// full weight system of the irreducible with highest weight lam:
// multiplicities of dominant weights by Freudenthal's recursion, spread over
// Weyl orbits by reflection closure
WeightMap irrep_weights(const RootSystem& rs, const Weight& lam);

// pointwise sum/product of characters
WeightMap char_mul(const WeightMap& a, const WeightMap& b);

// character of the fourth symmetric power:
// 24 S^4 = p1^4 + 6 p1^2 p2 + 3 p2^2 + 8 p1 p3 + 6 p4, p_k(ch) = ch at k-fold
// stretched weights
WeightMap sym4_character(const WeightMap& ch);

// peel a character into irreducibles: repeatedly take the maximal-height
// weight (ties broken lexicographically largest), which is necessarily a
// highest weight, and subtract its irreducible character
std::vector<std::pair<Weight, long long>> decompose_character(const RootSystem& rs, WeightMap ch);

// Named computations:
//   s4-lambda3: A5, S^4 of the 20-dimensional wedge-cube  [0,0,1,0,0]
//   end6:       A5, V (x) V* for the 6-dimensional vector rep
//   s4-delta:   D6, S^4 of the 32-dimensional half-spin   [0,0,0,0,0,1]
//   end12:      D6, V (x) V for the 12-dimensional vector rep (self-dual)
struct PlethysmResult {
    std::string case_name;
    char type;
    int rank;
    long long total_dim = 0;
    std::vector<std::pair<Weight, long long>> decomposition;
};
PlethysmResult plethysm_case(const std::string& case_name);

} // namespace qmf
