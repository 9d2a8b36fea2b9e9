#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qmf/linalg.hpp"
#include "qmf/mf.hpp"
#include "qmf/poly.hpp"

namespace qmf {

// ---------------------------------------------------------------------------
// Graded pieces of finitely presented modules.
// ---------------------------------------------------------------------------

// A subspace of F_p^ambient in reduced row echelon form, together with the
// coordinates functional onto a chosen complement basis (the non-pivot
// columns). Used to present one graded piece M_d = ambient / relations.
struct QuotientSpace {
    size_t ambient = 0;
    size_t dim = 0;                 // ambient - #pivots
    DenseMat rel_rref;              // echelonized relation span
    std::vector<size_t> pivots;     // pivot columns of rel_rref
    std::vector<size_t> basis;      // non-pivot columns, the quotient basis
    // reduce v modulo the relations and read off quotient coordinates
    std::vector<uint32_t> project(const std::vector<uint32_t>& v, const Field& F) const;
};

// Degree-d piece of coker( sum_j R(-d_j)  -->  R^ngens ), generators in
// degree 0, relation columns homogeneous. The relation subspace in degree d
// is spanned by m * col over monomials m of the complementary degree.
QuotientSpace module_piece(const WeightedRing& R, size_t ngens,
                           const std::vector<std::vector<SparsePoly>>& rel_cols,
                           size_t d, const Field& F);

// A maximal Cohen-Macaulay module E = coker(S) over A = R/(modulus), S a
// square homogeneous matrix (degree deg_s entries), generators in degree 0.
struct McmModule {
    const WeightedRing* ring = nullptr;
    SparsePoly modulus;
    size_t n = 0;
    std::vector<std::vector<SparsePoly>> S;
    size_t deg_s = 2;
};

// dim Hom_A(E, F)_0 = ker( (F_0)^nE -> (F_degS)^nE ), the map precomposing a
// degree-0 homomorphism with the presentation matrix of E.
size_t hom_sheaf(const McmModule& E, const McmModule& Fm, const Field& F);

// ---------------------------------------------------------------------------
// Degree-0 Ext via the 2-periodic resolution.
// ---------------------------------------------------------------------------

struct ExtComputation {
    size_t level = 0;        // the i of Ext^i
    size_t dim_domain = 0;   // dim of the degree-0 piece at position i
    size_t rank_out = 0;     // rank of the outgoing differential
    size_t rank_in = 0;      // rank of the incoming differential (0 at i = 0)
    bool certified = true;   // sparse ranks carried an exact certificate
    uint64_t elapsed_ms = 0;
    size_t dim_kernel() const { return dim_domain - rank_out; }
    size_t dim_ext() const { return dim_kernel() - rank_in; }
};

// Composition path: Ext^i(E, F)_0 as cohomology of
//   (F_0)^n -> (F_degS)^n -> (F_2degS)^n -> ...
// with maps precomposing by S (the factorization is symmetric, B = C = S).
ExtComputation ext_composition(const McmModule& E, const McmModule& Fm,
                               size_t i, const Field& F);

// Sylvester path for hypersurface double covers x^2 = -q. The matrix x-hat
// of multiplication by x on coker(S + i x I) is i S, and the degree-0 Ext
// complex between coker(S_E + ixI) and coker(S_F + ixI) becomes, after
// stripping units,
//   N_0 -> N_2 -> N_4 -> N_6 -> N_8,  N_d = Hom(F_p^nE, F_p^nF) (x) k[z]_d,
// with differentials alternating ad(V) = S_F V - V S_E (even positions) and
// ac(V) = S_F V + V S_E (odd positions); ad o ac = ac o ad = (q_F - q_E) = 0.
// Ext^i is the middle cohomology at N_{2i}, so only the pieces at degrees
// 2(i-1), 2i, 2(i+1) enter. Requires i in F_p (else ApiError: the x-hat
// construction needs a square root of -1 in the coefficient field).
struct SylvesterPair {
    const WeightedRing* ring = nullptr;  // k[z], plain weights
    size_t nE = 0, nF = 0;
    std::vector<std::vector<SparsePoly>> SE, SF;  // squares equal q * I, same q
    bool tau_split = false;  // both matrices satisfy S = -J S^T J, see below
};

// Options steering the rank computations inside ext_sylvester.
struct ExtOptions {
    bool allow_tau = true;          // use the involution splitting when available
    size_t dense_col_limit = 3300;  // widest block handled by dense elimination
    uint64_t sketch_seed = 0x5EEDBA5Eu;
    std::function<void(const std::string&)> log;  // progress lines, may be null
};

// The involution tau(V) = J V^T J on N_d (J the split Gram matrix) commutes
// with ad and anticommutes with ac whenever S_E = -J S_E^T J and likewise for
// S_F; each differential then splits across the +/- eigenspaces (dimensions
// 78/66 per monomial for n = 12), which roughly halves the elimination sizes.
ExtComputation ext_sylvester(const SylvesterPair& pair, size_t i,
                             const ExtOptions& opts, const Field& F);

// ---------------------------------------------------------------------------
// Named families.
// ---------------------------------------------------------------------------

// sl6-x5       double cover of P^5 branched in {sl6_quartic|_L = 0}: the
//              classical matrix S_y restricted to a seeded random section
//              L in Hom(C^6, C^20); Sylvester path, n = 6.
// spin12-x5    double cover for the even half-spin quartic: the moment matrix
//              mu restricted to a seeded random section in Hom(C^6, C^32);
//              Sylvester path, n = 12, tau split available.
// sl6-q4       the quartic fourfold {sl6_quartic|_L = 0} itself: composition
//              path on E = coker(S_y|_L) over k[z]/(q), n = 6.
// spin12-special  the distinguished section with w = v = 0 wedge-cubic part
//              restricted so the moment matrix becomes diag(A, -A^T); the
//              default object is E~ = coker of that 12x12 block matrix
//              (Sylvester path, tau split). Cross pairs below.
struct Family {
    std::string name;
    uint32_t seed = 0;
    enum class Path { sylvester, composition } path = Path::sylvester;
    SylvesterPair syl;
    McmModule E, Fm;
    // owned polynomial/ring storage backing the views above
    std::shared_ptr<void> storage;
    DenseMat section;     // source-vars x 6
    int section_retries = 0;
};

Family make_family(const std::string& name, uint32_t seed, const Field& F);

// The four cross computations for the special section: E = coker(A + ixI),
// G = coker(A^T + ixI) (signs of unit multiples do not change the module).
// The distinguished L0 is any full-rank section of the 3-form slice; the
// seed fixes the draw so reports are reproducible.
enum class SpecialPair { EE_tilde, EE, GG, EG, GE };
Family make_spin12_special(SpecialPair which, uint32_t seed, const Field& F);

ExtComputation ext_sheaf(const Family& fam, size_t i, const ExtOptions& opts, const Field& F);

// h^0..h^3 in one sweep (shares differential ranks between adjacent levels).
struct SphericalProfile {
    std::array<size_t, 4> h{};
    bool certified = true;
    uint64_t elapsed_ms = 0;
};
SphericalProfile spherical_profile(const Family& fam, const ExtOptions& opts, const Field& F);

} // namespace qmf
