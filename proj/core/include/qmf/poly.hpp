#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qmf/field.hpp"
#include "qmf/ring.hpp"

namespace qmf {

struct Term {
    Exps e;
    uint32_t c; // nonzero, in [1, p)
};

// Exact sparse polynomial over F_p. Terms are kept sorted in the ring's
// monomial order with no zero coefficients; every operation restores that
// normal form, so equality is term-vector equality.
struct SparsePoly {
    const WeightedRing* ring = nullptr;
    std::vector<Term> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const SparsePoly& o) const;

    // weighted degree of the leading (last) term; 0 for the zero polynomial
    uint32_t degree() const;
    bool is_homogeneous() const;
};

SparsePoly poly_zero(const WeightedRing& R);
SparsePoly poly_const(const WeightedRing& R, const Field& F, uint32_t c);
SparsePoly poly_var(const WeightedRing& R, const Field& F, size_t v);
SparsePoly poly_monomial(const WeightedRing& R, const Field& F, Exps e, uint32_t c);

// sorts, merges duplicates, drops zeros
void poly_normalize(SparsePoly& f, const Field& F);

SparsePoly poly_add(const SparsePoly& a, const SparsePoly& b, const Field& F);
SparsePoly poly_sub(const SparsePoly& a, const SparsePoly& b, const Field& F);
SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b, const Field& F);
SparsePoly poly_scale(const SparsePoly& a, uint32_t c, const Field& F);
SparsePoly poly_neg(const SparsePoly& a, const Field& F);

// f(m * z): substitutes each source variable by a linear form in the target
// ring; m has one row per source variable, one column per target variable.
// Weighted degrees are preserved when all weights agree across the rings.
SparsePoly substitute_linear(const SparsePoly& f, const Field& F,
                             const std::vector<std::vector<uint32_t>>& m,
                             const WeightedRing& target);

// one derivative per ring variable, in ring order
std::vector<SparsePoly> partials(const SparsePoly& f, const Field& F);

uint32_t poly_eval(const SparsePoly& f, const Field& F, const std::vector<uint32_t>& point);

// plain-text exchange format: one term per line, "coeff e_1 ... e_n",
// in the ring's monomial order
void poly_write(std::ostream& os, const SparsePoly& f);
SparsePoly poly_read(std::istream& is, const WeightedRing& R, const Field& F);

// coefficient vector of a homogeneous f against monomial_basis(R, d)
std::vector<uint32_t> poly_coords(const SparsePoly& f, uint32_t d);

} // namespace qmf
