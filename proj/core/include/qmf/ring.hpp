#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qmf {

using Exps = std::vector<uint8_t>;

// Polynomial ring presentation: named variables with positive integer weights.
// Monomial order (used everywhere: term storage, bases, serialization):
// ascending weighted degree, then lexicographically descending exponent
// vectors, so within one degree the power of the first variable dominates.
struct WeightedRing {
    std::vector<std::string> var_names;
    std::vector<uint32_t> weights;

    size_t nvars() const { return var_names.size(); }
    uint32_t degree(const Exps& e) const {
        uint32_t d = 0;
        for (size_t v = 0; v < e.size(); ++v) d += weights[v] * e[v];
        return d;
    }
    bool same_as(const WeightedRing& o) const {
        return var_names == o.var_names && weights == o.weights;
    }
};

// true if a precedes b in the ring's monomial order
inline bool mono_less(const WeightedRing& R, const Exps& a, const Exps& b) {
    uint32_t da = R.degree(a), db = R.degree(b);
    if (da != db) return da < db;
    return a > b; // lex-larger exponent vector comes first within a degree
}

WeightedRing make_ring(std::vector<std::string> names, std::vector<uint32_t> weights);
WeightedRing plain_ring(const std::string& stem, size_t n); // weights all 1

// All monomials of weighted degree exactly d, in the ring's monomial order.
// Degree 0 yields the constant monomial.
std::vector<Exps> monomial_basis(const WeightedRing& R, uint32_t d);

// number of monomials of weighted degree d
size_t monomial_count(const WeightedRing& R, uint32_t d);

} // namespace qmf
