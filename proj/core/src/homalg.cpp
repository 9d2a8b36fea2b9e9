#include "qmf/homalg.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <utility>

#include "qmf/sparse_rank.hpp"
#include "qmf/spinor.hpp"
#include "qmf/sy.hpp"

namespace qmf {

namespace {

using Clock = std::chrono::steady_clock;

uint64_t ms_since(Clock::time_point t0) {
    return (uint64_t)std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
        .count();
}

Exps exps_add(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = (uint8_t)(a[i] + b[i]);
    return r;
}

// Sorted monomial list of one degree with binary-search lookup.
struct MonoIndex {
    const WeightedRing* R = nullptr;
    std::vector<Exps> list;
    MonoIndex() = default;
    MonoIndex(const WeightedRing& ring, uint32_t d) : R(&ring), list(monomial_basis(ring, d)) {}
    size_t size() const { return list.size(); }
    size_t find(const Exps& e) const {
        auto it = std::lower_bound(list.begin(), list.end(), e,
                                   [this](const Exps& x, const Exps& y) { return mono_less(*R, x, y); });
        if (it == list.end() || *it != e) throw ApiError("monomial lookup outside the degree basis");
        return (size_t)(it - list.begin());
    }
};

// Scratch for accumulating one sparse column of a large map.
struct ColumnAccum {
    std::vector<uint32_t> acc;
    std::vector<uint32_t> touched;
    const Field* F = nullptr;
    void reset(size_t n, const Field& field) {
        F = &field;
        acc.assign(n, 0);
        touched.clear();
    }
    void clear() {
        for (uint32_t r : touched) acc[r] = 0;
        touched.clear();
    }
    void add(size_t row, uint32_t v) {
        if (!v) return;
        if (acc[row] == 0) touched.push_back((uint32_t)row);
        acc[row] = F->add(acc[row], v);
    }
    void compress(SparseCol& out) {
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        out.idx.clear();
        out.val.clear();
        for (uint32_t r : touched) {
            uint32_t v = acc[r];
            if (v) {
                out.idx.push_back(r);
                out.val.push_back((uint16_t)v);
            }
        }
    }
};

struct BlockRank {
    size_t rank = 0;
    bool cert = true;
};

void log_line(const ExtOptions& opts, const char* what, const char* mode, size_t dom, size_t cod,
              size_t rank, uint64_t ms) {
    if (!opts.log) return;
    char line[192];
    std::snprintf(line, sizeof(line), "%s %s %zux%zu rank=%zu (%llu ms)", what, mode, dom, cod,
                  rank, (unsigned long long)ms);
    opts.log(line);
}

// Exact rank of a map given by a column generator, dense below the column
// limit, sketch-and-certify above it.
template <class ColumnEmit>
BlockRank generic_rank(size_t domain, size_t codomain, const ColumnEmit& emit,
                       const ExtOptions& opts, size_t hint, const Field& F, const char* what) {
    auto t0 = Clock::now();
    BlockRank out;
    if (domain == 0 || codomain == 0) {
        log_line(opts, what, "empty", domain, codomain, 0, ms_since(t0));
        return out;
    }
    if (domain <= opts.dense_col_limit) {
        DenseMat M(domain, codomain);
        for (size_t u = 0; u < domain; ++u) {
            uint32_t* row = M.row(u);
            emit(u, [&](size_t r, uint32_t v) { row[r] = F.add(row[r], v); });
        }
        out.rank = rref(M, F).size();
        out.cert = true;
        log_line(opts, what, "dense", domain, codomain, out.rank, ms_since(t0));
        return out;
    }
    ColumnAccum ca;
    ca.reset(codomain, F);
    SparseCol buf;
    std::function<const SparseCol&(size_t)> column_fn = [&](size_t c) -> const SparseCol& {
        ca.clear();
        emit(c, [&](size_t r, uint32_t v) { ca.add(r, v); });
        ca.compress(buf);
        return buf;
    };
    size_t capped = std::min(hint, std::min(domain, codomain));
    SparseRankResult r = sparse_rank_certified(F, domain, codomain, column_fn, capped, opts.sketch_seed);
    out.rank = r.rank;
    out.cert = r.certified;
    log_line(opts, what, "sparse", domain, codomain, out.rank, ms_since(t0));
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Graded pieces.
// ---------------------------------------------------------------------------

std::vector<uint32_t> QuotientSpace::project(const std::vector<uint32_t>& v, const Field& F) const {
    if (v.size() != ambient) throw ApiError("projection: wrong ambient dimension");
    std::vector<uint32_t> out(dim);
    for (size_t f = 0; f < dim; ++f) out[f] = v[basis[f]];
    for (size_t k = 0; k < pivots.size(); ++k) {
        uint32_t c = v[pivots[k]];
        if (!c) continue;
        const uint32_t* row = rel_rref.row(k);
        for (size_t f = 0; f < dim; ++f) {
            uint32_t w = row[basis[f]];
            if (w) out[f] = F.sub(out[f], F.mul(c, w));
        }
    }
    return out;
}

QuotientSpace module_piece(const WeightedRing& R, size_t ngens,
                           const std::vector<std::vector<SparsePoly>>& rel_cols, size_t d,
                           const Field& F) {
    if (ngens == 0) throw ApiError("module needs at least one generator");
    MonoIndex tgt(R, (uint32_t)d);
    size_t nm = tgt.size();
    size_t ambient = ngens * nm;

    struct RelCol {
        const std::vector<SparsePoly>* col;
        uint32_t deg;
    };
    std::vector<RelCol> cols;
    for (const auto& col : rel_cols) {
        if (col.size() != ngens) throw ApiError("relation column height mismatch");
        uint32_t dj = 0;
        bool nz = false;
        for (const SparsePoly& f : col) {
            if (f.is_zero()) continue;
            if (!f.is_homogeneous()) throw ApiError("relation entries must be homogeneous");
            if (!nz) {
                dj = f.degree();
                nz = true;
            } else if (f.degree() != dj) {
                throw ApiError("relation column mixes degrees");
            }
        }
        if (nz) cols.push_back({&col, dj});
    }

    size_t nrows = 0;
    for (const RelCol& rc : cols)
        if (d >= rc.deg) nrows += monomial_count(R, (uint32_t)d - rc.deg);

    DenseMat M(nrows, ambient);
    size_t r = 0;
    for (const RelCol& rc : cols) {
        if (d < rc.deg) continue;
        std::vector<Exps> mons = monomial_basis(R, (uint32_t)d - rc.deg);
        for (const Exps& m : mons) {
            uint32_t* row = M.row(r);
            for (size_t g = 0; g < ngens; ++g) {
                for (const Term& t : (*rc.col)[g].terms) {
                    size_t idx = g * nm + tgt.find(exps_add(t.e, m));
                    row[idx] = F.add(row[idx], t.c);
                }
            }
            ++r;
        }
    }

    std::vector<size_t> pivots = rref(M, F);
    QuotientSpace qs;
    qs.ambient = ambient;
    qs.pivots = pivots;
    qs.dim = ambient - pivots.size();
    qs.basis.reserve(qs.dim);
    size_t k = 0;
    for (size_t c = 0; c < ambient; ++c) {
        if (k < pivots.size() && pivots[k] == c) {
            ++k;
            continue;
        }
        qs.basis.push_back(c);
    }
    qs.rel_rref = DenseMat(pivots.size(), ambient);
    std::copy(M.a.begin(), M.a.begin() + (ptrdiff_t)(pivots.size() * ambient), qs.rel_rref.a.begin());
    return qs;
}

// ---------------------------------------------------------------------------
// Composition path.
// ---------------------------------------------------------------------------

namespace {

// relation columns of coker(S) over R/(modulus): the S columns plus
// modulus * e_g
std::vector<std::vector<SparsePoly>> mcm_relations(const McmModule& M) {
    std::vector<std::vector<SparsePoly>> rel;
    rel.reserve(M.n * 2);
    for (size_t j = 0; j < M.n; ++j) {
        std::vector<SparsePoly> col;
        col.reserve(M.n);
        for (size_t g = 0; g < M.n; ++g) col.push_back(M.S[g][j]);
        rel.push_back(std::move(col));
    }
    if (!M.modulus.is_zero()) {
        for (size_t g = 0; g < M.n; ++g) {
            std::vector<SparsePoly> col(M.n, poly_zero(*M.ring));
            col[g] = M.modulus;
            rel.push_back(std::move(col));
        }
    }
    return rel;
}

// The second map of the 2-periodic resolution: S with the cover variable
// negated (the deck involution). A matrix without the cover variable is its
// own partner, which is the symmetric factorization case.
std::vector<std::vector<SparsePoly>> partner_matrix(const McmModule& M, const Field& F) {
    const WeightedRing& R = *M.ring;
    size_t cover = SIZE_MAX;
    if (R.nvars() > 0 && M.deg_s > 1 && R.weights.back() == M.deg_s) cover = R.nvars() - 1;
    std::vector<std::vector<SparsePoly>> out = M.S;
    if (cover == SIZE_MAX) return out;
    for (auto& row : out)
        for (SparsePoly& f : row)
            for (Term& t : f.terms)
                if (t.e[cover] % 2 == 1) t.c = F.neg(t.c);
    return out;
}

struct CompCtx {
    const McmModule* E;
    const McmModule* Fm;
    const Field* F;
    ExtOptions opts;
    std::vector<std::vector<SparsePoly>> rel;  // codomain module relations
    std::vector<std::vector<SparsePoly>> D_even, D_odd;
    std::map<uint32_t, QuotientSpace> pieces;
    std::map<uint32_t, MonoIndex> monos;

    CompCtx(const McmModule& e, const McmModule& fm, const ExtOptions& o, const Field& f)
        : E(&e), Fm(&fm), F(&f), opts(o) {
        if (!e.ring || !fm.ring) throw ApiError("module without a ring");
        if (!e.ring->same_as(*fm.ring)) throw ApiError("modules live over different rings");
        if (!(e.modulus == fm.modulus)) throw ApiError("modules live over different hypersurfaces");
        if (e.deg_s == 0 || e.deg_s != fm.deg_s) throw ApiError("presentation degrees disagree");
        if (e.n == 0 || e.S.size() != e.n || fm.n == 0 || fm.S.size() != fm.n)
            throw ApiError("presentation size mismatch");
        for (const auto& row : e.S)
            if (row.size() != e.n) throw ApiError("presentation size mismatch");
        for (const auto& row : fm.S)
            if (row.size() != fm.n) throw ApiError("presentation size mismatch");
        rel = mcm_relations(fm);
        D_even = e.S;
        D_odd = partner_matrix(e, f);
    }

    const MonoIndex& mono_at(uint32_t d) {
        auto it = monos.find(d);
        if (it == monos.end()) it = monos.emplace(d, MonoIndex(*Fm->ring, d)).first;
        return it->second;
    }
    const QuotientSpace& piece_at(uint32_t d) {
        auto it = pieces.find(d);
        if (it == pieces.end())
            it = pieces.emplace(d, module_piece(*Fm->ring, Fm->n, rel, d, *F)).first;
        return it->second;
    }
    size_t dimC(size_t k) { return E->n * piece_at((uint32_t)(k * E->deg_s)).dim; }

    // rank of position-k differential on degree-0 homomorphisms, computed in
    // the quotient via rank([images | relations]) - rank(relations)
    BlockRank delta_rank(size_t k) {
        const auto& D = (k % 2 == 0) ? D_even : D_odd;
        uint32_t degS = (uint32_t)E->deg_s;
        uint32_t dsrc = (uint32_t)k * degS;
        uint32_t dtgt = dsrc + degS;
        const QuotientSpace& src = piece_at(dsrc);
        const QuotientSpace& tgt = piece_at(dtgt);
        const MonoIndex& msrc = mono_at(dsrc);
        const MonoIndex& mtgt = mono_at(dtgt);
        size_t nE = E->n, nF = Fm->n;
        size_t nmS = msrc.size(), nmT = mtgt.size();
        size_t ambT = nF * nmT;
        size_t codomain = nE * ambT;
        size_t rel_rank = nE * tgt.pivots.size();
        size_t dimCk = nE * src.dim;

        // plan for the relation columns at the target degree
        struct RelPlan {
            uint32_t rc, deg, mono;
        };
        std::vector<RelPlan> plan;
        for (size_t rc = 0; rc < rel.size(); ++rc) {
            uint32_t dj = 0;
            bool nz = false;
            for (const SparsePoly& f : rel[rc])
                if (!f.is_zero()) {
                    dj = f.degree();
                    nz = true;
                    break;
                }
            if (!nz || dtgt < dj) continue;
            size_t cnt = mono_at(dtgt - dj).size();
            for (size_t mi = 0; mi < cnt; ++mi)
                plan.push_back({(uint32_t)rc, dj, (uint32_t)mi});
        }
        size_t domain = dimCk + nE * plan.size();

        auto emit = [&](size_t u, auto&& sink) {
            if (u < dimCk) {
                size_t g = u / src.dim, fi = u % src.dim;
                size_t amb = src.basis[fi];
                size_t h = amb / nmS, mi = amb % nmS;
                const Exps& m = msrc.list[mi];
                for (size_t j = 0; j < nE; ++j) {
                    for (const Term& t : D[g][j].terms)
                        sink(j * ambT + h * nmT + mtgt.find(exps_add(m, t.e)), t.c);
                }
            } else {
                size_t v = u - dimCk;
                size_t j2 = v / plan.size(), pi = v % plan.size();
                const RelPlan& rp = plan[pi];
                const Exps& m2 = mono_at(dtgt - rp.deg).list[rp.mono];
                const std::vector<SparsePoly>& col = rel[rp.rc];
                for (size_t g2 = 0; g2 < nF; ++g2)
                    for (const Term& t : col[g2].terms)
                        sink(j2 * ambT + g2 * nmT + mtgt.find(exps_add(m2, t.e)), t.c);
            }
        };

        char what[64];
        std::snprintf(what, sizeof(what), "[comp] delta_%zu", k);
        size_t hint = rel_rank + (dimCk * 9) / 10 + 64;
        BlockRank aug = generic_rank(domain, codomain, emit, opts, hint, *F, what);
        if (aug.rank < rel_rank)
            throw ApiError("relation span lost rank inside the augmented elimination");
        return {aug.rank - rel_rank, aug.cert};
    }
};

ExtComputation ext_composition_opt(const McmModule& E, const McmModule& Fm, size_t i,
                                   const ExtOptions& opts, const Field& F) {
    auto t0 = Clock::now();
    CompCtx ctx(E, Fm, opts, F);
    ExtComputation out;
    out.level = i;
    if (i > 0) {
        BlockRank rin = ctx.delta_rank(i - 1);
        out.rank_in = rin.rank;
        out.certified = out.certified && rin.cert;
    }
    BlockRank rout = ctx.delta_rank(i);
    out.rank_out = rout.rank;
    out.certified = out.certified && rout.cert;
    out.dim_domain = ctx.dimC(i);
    if (out.dim_domain < out.rank_out + out.rank_in)
        throw ApiError("rank bookkeeping violated the complex property");
    out.elapsed_ms = ms_since(t0);
    return out;
}

} // namespace

size_t hom_sheaf(const McmModule& E, const McmModule& Fm, const Field& F) {
    ExtOptions opts;
    CompCtx ctx(E, Fm, opts, F);
    BlockRank d0 = ctx.delta_rank(0);
    return ctx.dimC(0) - d0.rank;
}

ExtComputation ext_composition(const McmModule& E, const McmModule& Fm, size_t i, const Field& F) {
    ExtOptions opts;
    return ext_composition_opt(E, Fm, i, opts, F);
}

// ---------------------------------------------------------------------------
// Sylvester path.
// ---------------------------------------------------------------------------

namespace {

// Basis of matrix patterns spanning one piece of Hom(k^nE, k^nF), either the
// whole space or a tau eigensector. Each pattern has one or two entries; the
// first is the leading entry, whose value recovers the coordinate.
struct Pattern {
    int cnt = 0;
    int r[2] = {0, 0}, c[2] = {0, 0};
    int s[2] = {1, 1};
};

struct SectorBasis {
    size_t nF = 0, nE = 0;
    std::vector<Pattern> pats;
    std::vector<int32_t> rep;  // nF*nE entries: pattern index when leading, else -1
    const char* label = "full";
    size_t dim() const { return pats.size(); }
};

SectorBasis full_sector(size_t nF, size_t nE) {
    SectorBasis sb;
    sb.nF = nF;
    sb.nE = nE;
    sb.rep.assign(nF * nE, -1);
    sb.pats.reserve(nF * nE);
    for (size_t r = 0; r < nF; ++r)
        for (size_t c = 0; c < nE; ++c) {
            sb.rep[r * nE + c] = (int32_t)sb.pats.size();
            Pattern p;
            p.cnt = 1;
            p.r[0] = (int)r;
            p.c[0] = (int)c;
            sb.pats.push_back(p);
        }
    return sb;
}

// Eigensector of tau(V) = J V^T J, J the split form in blocks of n/2.
SectorBasis tau_sector(size_t n, bool plus) {
    size_t h = n / 2;
    SectorBasis sb;
    sb.nF = n;
    sb.nE = n;
    sb.label = plus ? "+" : "-";
    sb.rep.assign(n * n, -1);
    int sg = plus ? 1 : -1;
    auto push = [&](int r0, int c0, int r1, int c1, bool two) {
        Pattern p;
        p.cnt = two ? 2 : 1;
        p.r[0] = r0;
        p.c[0] = c0;
        p.s[0] = 1;
        p.r[1] = r1;
        p.c[1] = c1;
        p.s[1] = sg;
        sb.rep[(size_t)r0 * n + (size_t)c0] = (int32_t)sb.pats.size();
        sb.pats.push_back(p);
    };
    // top-left paired with the transposed bottom-right
    for (size_t a = 0; a < h; ++a)
        for (size_t b = 0; b < h; ++b)
            push((int)a, (int)b, (int)(h + b), (int)(h + a), true);
    // top-right: symmetric (+) or antisymmetric (-)
    for (size_t a = 0; a < h; ++a)
        for (size_t b = plus ? a : a + 1; b < h; ++b)
            push((int)a, (int)(h + b), (int)b, (int)(h + a), a != b);
    // bottom-left likewise
    for (size_t a = 0; a < h; ++a)
        for (size_t b = plus ? a : a + 1; b < h; ++b)
            push((int)(h + a), (int)b, (int)(h + b), (int)a, a != b);
    return sb;
}

void validate_pair(const SylvesterPair& p, const Field& F) {
    if (!p.ring) throw ApiError("pair without a ring");
    if (p.nE == 0 || p.nF == 0 || p.SE.size() != p.nE || p.SF.size() != p.nF)
        throw ApiError("pair matrices have the wrong size");
    for (const auto& row : p.SE)
        if (row.size() != p.nE) throw ApiError("pair matrices have the wrong size");
    for (const auto& row : p.SF)
        if (row.size() != p.nF) throw ApiError("pair matrices have the wrong size");
    PolyMatrix SE = poly_mat_from(p.SE), SF = poly_mat_from(p.SF);
    // the grading below steps the z-degree by 2 per position, which is only
    // the Ext complex of the double cover when every entry is a quadric
    for (const PolyMatrix* M : {&SE, &SF})
        for (const SparsePoly& e : M->entries)
            if (!e.is_zero() && !(e.is_homogeneous() && e.degree() == 2))
                throw ApiError("pair entries must be homogeneous quadrics");
    SparsePoly qe, qf;
    if (!poly_mat_is_scalar(poly_mat_mul(SE, SE, F), qe))
        throw ApiError("left matrix square is not scalar");
    if (!poly_mat_is_scalar(poly_mat_mul(SF, SF, F), qf))
        throw ApiError("right matrix square is not scalar");
    if (!(qe == qf)) throw ApiError("the two matrix squares disagree");
}

void verify_tau_compat(const std::vector<std::vector<SparsePoly>>& S, size_t n, const Field& F) {
    size_t h = n / 2;
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c)
            if (!(S[r][c] == poly_neg(S[(c + h) % n][(r + h) % n], F)))
                throw ApiError("tau split requested for an incompatible matrix");
}

struct SylEngine {
    const SylvesterPair* pair;
    const ExtOptions* opts;
    const Field* F;
    bool tau = false;
    std::vector<SectorBasis> secs;
    std::map<uint32_t, MonoIndex> monos;
    std::map<uint64_t, BlockRank> cache;

    SylEngine(const SylvesterPair& p, const ExtOptions& o, const Field& f)
        : pair(&p), opts(&o), F(&f) {
        validate_pair(p, f);
        tau = p.tau_split && o.allow_tau && p.nE == p.nF && p.nE % 2 == 0;
        if (tau) {
            verify_tau_compat(p.SE, p.nE, f);
            verify_tau_compat(p.SF, p.nF, f);
            secs.push_back(tau_sector(p.nE, true));
            secs.push_back(tau_sector(p.nE, false));
        } else {
            secs.push_back(full_sector(p.nF, p.nE));
        }
    }

    const MonoIndex& mono_at(uint32_t d) {
        auto it = monos.find(d);
        if (it == monos.end()) it = monos.emplace(d, MonoIndex(*pair->ring, d)).first;
        return it->second;
    }

    size_t dimN(size_t pos) {
        size_t per = 0;
        for (const SectorBasis& s : secs) per += s.dim();
        return per * mono_at(2 * (uint32_t)pos).size();
    }

    // Differentials alternate ad (even positions, sector-preserving) and
    // ac (odd positions, sector-swapping).
    BlockRank block(size_t pos, size_t s) {
        uint64_t key = pos * 2 + s;
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        bool is_ac = (pos % 2) == 1;
        size_t t = (tau && is_ac) ? 1 - s : s;
        const SectorBasis& src = secs[s];
        const SectorBasis& tgt = secs[t];
        const MonoIndex& msrc = mono_at(2 * (uint32_t)pos);
        const MonoIndex& mtgt = mono_at(2 * (uint32_t)pos + 2);
        size_t nmS = msrc.size(), nmT = mtgt.size();
        size_t domain = src.dim() * nmS;
        size_t codomain = tgt.dim() * nmT;
        size_t nE = pair->nE, nF = pair->nF;

        size_t hint = 0;
        if (pos > 0) {
            bool prev_ac = ((pos - 1) % 2) == 1;
            size_t sin = (tau && prev_ac) ? 1 - s : s;
            BlockRank prev = block(pos - 1, sin);
            hint = domain > prev.rank ? domain - prev.rank : 1;
        }

        auto emit = [&](size_t u, auto&& sink) {
            size_t pat = u / nmS, mi = u % nmS;
            const Exps& m = msrc.list[mi];
            const Pattern& P = src.pats[pat];
            for (int e = 0; e < P.cnt; ++e) {
                size_t a = (size_t)P.r[e], b = (size_t)P.c[e];
                bool neg0 = P.s[e] < 0;
                // S_F V places the column a of S_F at matrix column b
                for (size_t r = 0; r < nF; ++r) {
                    int32_t pk = tgt.rep[r * nE + b];
                    if (pk < 0) continue;
                    for (const Term& t2 : pair->SF[r][a].terms) {
                        size_t row = (size_t)pk * nmT + mtgt.find(exps_add(m, t2.e));
                        sink(row, neg0 ? F->neg(t2.c) : t2.c);
                    }
                }
                // -/+ V S_E places the row b of S_E at matrix row a
                bool neg1 = is_ac ? neg0 : !neg0;
                for (size_t c2 = 0; c2 < nE; ++c2) {
                    int32_t pk = tgt.rep[a * nE + c2];
                    if (pk < 0) continue;
                    for (const Term& t2 : pair->SE[b][c2].terms) {
                        size_t row = (size_t)pk * nmT + mtgt.find(exps_add(m, t2.e));
                        sink(row, neg1 ? F->neg(t2.c) : t2.c);
                    }
                }
            }
        };

        char what[64];
        std::snprintf(what, sizeof(what), "[syl] %s pos=%zu sec=%s", is_ac ? "ac" : "ad", pos,
                      src.label);
        BlockRank out = generic_rank(domain, codomain, emit, *opts, hint, *F, what);
        cache.emplace(key, out);
        return out;
    }

    BlockRank total(size_t pos) {
        BlockRank t;
        for (size_t s = 0; s < secs.size(); ++s) {
            BlockRank b = block(pos, s);
            t.rank += b.rank;
            t.cert = t.cert && b.cert;
        }
        return t;
    }
};

} // namespace

ExtComputation ext_sylvester(const SylvesterPair& pair, size_t i, const ExtOptions& opts,
                             const Field& F) {
    if (!F.has_i)
        throw ApiError("the x-hat construction needs a square root of -1 in F_p");
    auto t0 = Clock::now();
    SylEngine eng(pair, opts, F);
    ExtComputation out;
    out.level = i;
    if (i > 0) {
        BlockRank rin = eng.total(i - 1);
        out.rank_in = rin.rank;
        out.certified = out.certified && rin.cert;
    }
    BlockRank rout = eng.total(i);
    out.rank_out = rout.rank;
    out.certified = out.certified && rout.cert;
    out.dim_domain = eng.dimN(i);
    if (out.dim_domain < out.rank_out + out.rank_in)
        throw ApiError("rank bookkeeping violated the complex property");
    out.elapsed_ms = ms_since(t0);
    return out;
}

// ---------------------------------------------------------------------------
// Named families.
// ---------------------------------------------------------------------------

namespace {

struct FamilyStore {
    WeightedRing zring;
    WeightedRing xring;
};

std::vector<std::vector<SparsePoly>> mat_rows(const PolyMatrix& M) {
    std::vector<std::vector<SparsePoly>> rows(M.rows);
    for (size_t r = 0; r < M.rows; ++r) {
        rows[r].reserve(M.cols);
        for (size_t c = 0; c < M.cols; ++c) rows[r].push_back(M.at(r, c));
    }
    return rows;
}

PolyMatrix mat_transpose(const PolyMatrix& M, const WeightedRing& R, const Field& F) {
    PolyMatrix T = poly_mat(M.cols, M.rows, R, F);
    for (size_t r = 0; r < M.rows; ++r)
        for (size_t c = 0; c < M.cols; ++c) T.at(c, r) = M.at(r, c);
    return T;
}

// coker(S + i x I) over the ring extended by the cover variable
McmModule cover_module(const PolyMatrix& S, const SparsePoly& q, FamilyStore& store,
                       const Field& F) {
    McmModule M;
    M.ring = &store.xring;
    M.n = S.rows;
    M.deg_s = 2;
    SparsePoly x = poly_var(store.xring, F, store.xring.nvars() - 1);
    M.modulus = poly_add(lift_poly(q, store.xring), poly_mul(x, x, F), F);
    SparsePoly ix = poly_scale(x, F.i, F);
    M.S.assign(M.n, std::vector<SparsePoly>(M.n, poly_zero(store.xring)));
    for (size_t r = 0; r < M.n; ++r)
        for (size_t c = 0; c < M.n; ++c) {
            M.S[r][c] = lift_poly(S.at(r, c), store.xring);
            if (r == c) M.S[r][c] = poly_add(M.S[r][c], ix, F);
        }
    return M;
}

// Draw sections until the restricted matrix has a nonzero scalar square;
// a vanishing restricted potential moves on to the next seed.
struct RestrictedDraw {
    PolyMatrix S;
    SparsePoly q;
    DenseMat section;
    int retries = 0;
};

RestrictedDraw draw_restricted(const PolyMatrix& big, size_t src_dim, uint32_t seed,
                               const WeightedRing& target, const Field& F) {
    RestrictedDraw out;
    uint32_t attempt = seed;
    for (;;) {
        Rng rng(attempt);
        SectionDraw sd = random_section(src_dim, 6, F, rng);
        out.retries += sd.retries;
        PolyMatrix cand = restrict_to_section(big, sd.A, target, F);
        PolyMatrix sq = poly_mat_mul(cand, cand, F);
        SparsePoly qq;
        if (!poly_mat_is_scalar(sq, qq))
            throw ApiError("restricted matrix square is not scalar");
        if (!qq.is_zero()) {
            out.S = std::move(cand);
            out.q = std::move(qq);
            out.section = std::move(sd.A);
            return out;
        }
        ++out.retries;
        std::cerr << "[family] restricted potential vanished for seed " << attempt
                  << "; trying seed " << (attempt + 1) << "\n";
        ++attempt;
    }
}

} // namespace

Family make_family(const std::string& name, uint32_t seed, const Field& F) {
    if (name == "spin12-special") return make_spin12_special(SpecialPair::EE_tilde, seed, F);
    const bool sl6x5 = name == "sl6-x5";
    const bool spin = name == "spin12-x5";
    const bool q4 = name == "sl6-q4";
    if (!sl6x5 && !spin && !q4) throw ApiError("unknown family: " + name);
    if (!q4 && !F.has_i)
        throw ApiError("double cover families need a square root of -1 in F_p");

    auto store = std::make_shared<FamilyStore>();
    store->zring = plain_ring("z", 6);
    store->xring = extend_ring_by_x(store->zring, 2);

    PolyMatrix big = poly_mat_from(spin ? moment_map(SpinorParity::even, F) : build_sy(F));
    size_t src_dim = spin ? 32 : 20;
    RestrictedDraw rd = draw_restricted(big, src_dim, seed, store->zring, F);

    Family fam;
    fam.name = name;
    fam.seed = seed;
    fam.storage = store;
    fam.section = rd.section;
    fam.section_retries = rd.retries;

    if (q4) {
        fam.path = Family::Path::composition;
        McmModule M;
        M.ring = &store->zring;
        M.n = rd.S.rows;
        M.deg_s = 2;
        M.modulus = rd.q;
        M.S = mat_rows(rd.S);
        fam.E = M;
        fam.Fm = std::move(M);
        return fam;
    }

    fam.path = Family::Path::sylvester;
    fam.syl.ring = &store->zring;
    fam.syl.nE = fam.syl.nF = rd.S.rows;
    fam.syl.SE = mat_rows(rd.S);
    fam.syl.SF = fam.syl.SE;
    fam.syl.tau_split = spin;
    fam.E = cover_module(rd.S, rd.q, *store, F);
    fam.Fm = fam.E;
    return fam;
}

Family make_spin12_special(SpecialPair which, uint32_t seed, const Field& F) {
    if (!F.has_i)
        throw ApiError("double cover families need a square root of -1 in F_p");
    auto store = std::make_shared<FamilyStore>();
    store->zring = plain_ring("z", 6);
    store->xring = extend_ring_by_x(store->zring, 2);

    PolyMatrix sy = poly_mat_from(build_sy(F));
    RestrictedDraw rd = draw_restricted(sy, 20, seed, store->zring, F);
    PolyMatrix A = rd.S;
    PolyMatrix At = mat_transpose(A, store->zring, F);

    Family fam;
    fam.seed = seed;
    fam.storage = store;
    fam.section = rd.section;
    fam.section_retries = rd.retries;
    fam.path = Family::Path::sylvester;
    fam.syl.ring = &store->zring;

    auto set_pair = [&](const PolyMatrix& SE, const PolyMatrix& SF) {
        fam.syl.nE = SE.rows;
        fam.syl.nF = SF.rows;
        fam.syl.SE = mat_rows(SE);
        fam.syl.SF = mat_rows(SF);
        fam.syl.tau_split = false;
        fam.E = cover_module(SE, rd.q, *store, F);
        fam.Fm = cover_module(SF, rd.q, *store, F);
    };

    switch (which) {
        case SpecialPair::EE_tilde: {
            fam.name = "spin12-special";
            PolyMatrix Stil = poly_mat(12, 12, store->zring, F);
            for (size_t r = 0; r < 6; ++r)
                for (size_t c = 0; c < 6; ++c) {
                    Stil.at(r, c) = A.at(r, c);
                    Stil.at(6 + r, 6 + c) = poly_neg(At.at(r, c), F);
                }
            set_pair(Stil, Stil);
            fam.syl.tau_split = true;
            break;
        }
        case SpecialPair::EE:
            fam.name = "spin12-special:EE";
            set_pair(A, A);
            break;
        case SpecialPair::GG:
            fam.name = "spin12-special:GG";
            set_pair(At, At);
            break;
        case SpecialPair::EG:
            fam.name = "spin12-special:EG";
            set_pair(A, At);
            break;
        case SpecialPair::GE:
            fam.name = "spin12-special:GE";
            set_pair(At, A);
            break;
    }
    return fam;
}

ExtComputation ext_sheaf(const Family& fam, size_t i, const ExtOptions& opts, const Field& F) {
    if (fam.path == Family::Path::sylvester) return ext_sylvester(fam.syl, i, opts, F);
    return ext_composition_opt(fam.E, fam.Fm, i, opts, F);
}

SphericalProfile spherical_profile(const Family& fam, const ExtOptions& opts, const Field& F) {
    auto t0 = Clock::now();
    SphericalProfile sp;
    size_t prev = 0;
    if (fam.path == Family::Path::sylvester) {
        if (!F.has_i)
            throw ApiError("the x-hat construction needs a square root of -1 in F_p");
        SylEngine eng(fam.syl, opts, F);
        for (size_t pos = 0; pos < 4; ++pos) {
            BlockRank r = eng.total(pos);
            size_t dim = eng.dimN(pos);
            if (dim < r.rank + prev)
                throw ApiError("rank bookkeeping violated the complex property");
            sp.h[pos] = dim - r.rank - prev;
            sp.certified = sp.certified && r.cert;
            prev = r.rank;
        }
    } else {
        CompCtx ctx(fam.E, fam.Fm, opts, F);
        for (size_t pos = 0; pos < 4; ++pos) {
            BlockRank r = ctx.delta_rank(pos);
            size_t dim = ctx.dimC(pos);
            if (dim < r.rank + prev)
                throw ApiError("rank bookkeeping violated the complex property");
            sp.h[pos] = dim - r.rank - prev;
            sp.certified = sp.certified && r.cert;
            prev = r.rank;
        }
    }
    sp.elapsed_ms = ms_since(t0);
    return sp;
}

} // namespace qmf
