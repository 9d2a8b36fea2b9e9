#include "qmf/poly.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace qmf {

bool SparsePoly::operator==(const SparsePoly& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (size_t k = 0; k < terms.size(); ++k)
        if (terms[k].c != o.terms[k].c || terms[k].e != o.terms[k].e) return false;
    return true;
}

uint32_t SparsePoly::degree() const {
    if (terms.empty()) return 0;
    return ring->degree(terms.back().e);
}

bool SparsePoly::is_homogeneous() const {
    if (terms.empty()) return true;
    uint32_t d = ring->degree(terms.front().e);
    for (const Term& t : terms)
        if (ring->degree(t.e) != d) return false;
    return true;
}

SparsePoly poly_zero(const WeightedRing& R) {
    SparsePoly f;
    f.ring = &R;
    return f;
}

SparsePoly poly_const(const WeightedRing& R, const Field& F, uint32_t c) {
    SparsePoly f = poly_zero(R);
    c %= F.p;
    if (c) f.terms.push_back({Exps(R.nvars(), 0), c});
    return f;
}

SparsePoly poly_var(const WeightedRing& R, const Field& F, size_t v) {
    if (v >= R.nvars()) throw ApiError("variable index out of range");
    Exps e(R.nvars(), 0);
    e[v] = 1;
    return poly_monomial(R, F, std::move(e), 1);
}

SparsePoly poly_monomial(const WeightedRing& R, const Field& F, Exps e, uint32_t c) {
    if (e.size() != R.nvars()) throw ApiError("exponent vector has wrong length");
    SparsePoly f = poly_zero(R);
    c %= F.p;
    if (c) f.terms.push_back({std::move(e), c});
    return f;
}

void poly_normalize(SparsePoly& f, const Field& F) {
    std::sort(f.terms.begin(), f.terms.end(),
              [&](const Term& a, const Term& b) { return mono_less(*f.ring, a.e, b.e); });
    size_t out = 0;
    for (size_t k = 0; k < f.terms.size();) {
        size_t j = k + 1;
        uint32_t c = f.terms[k].c % F.p;
        while (j < f.terms.size() && f.terms[j].e == f.terms[k].e) {
            c = F.add(c, f.terms[j].c % F.p);
            ++j;
        }
        if (c) {
            if (out != k) f.terms[out].e = std::move(f.terms[k].e);
            f.terms[out].c = c;
            ++out;
        }
        k = j;
    }
    f.terms.resize(out);
}

static void check_same_ring(const SparsePoly& a, const SparsePoly& b) {
    if (!a.ring->same_as(*b.ring)) throw ApiError("polynomials live in different rings");
}

SparsePoly poly_add(const SparsePoly& a, const SparsePoly& b, const Field& F) {
    check_same_ring(a, b);
    SparsePoly r = poly_zero(*a.ring);
    r.terms.reserve(a.terms.size() + b.terms.size());
    size_t i = 0, j = 0;
    while (i < a.terms.size() && j < b.terms.size()) {
        if (a.terms[i].e == b.terms[j].e) {
            uint32_t c = F.add(a.terms[i].c, b.terms[j].c);
            if (c) r.terms.push_back({a.terms[i].e, c});
            ++i, ++j;
        } else if (mono_less(*a.ring, a.terms[i].e, b.terms[j].e)) {
            r.terms.push_back(a.terms[i++]);
        } else {
            r.terms.push_back(b.terms[j++]);
        }
    }
    while (i < a.terms.size()) r.terms.push_back(a.terms[i++]);
    while (j < b.terms.size()) r.terms.push_back(b.terms[j++]);
    return r;
}

SparsePoly poly_neg(const SparsePoly& a, const Field& F) {
    SparsePoly r = a;
    for (Term& t : r.terms) t.c = F.neg(t.c);
    return r;
}

SparsePoly poly_sub(const SparsePoly& a, const SparsePoly& b, const Field& F) {
    return poly_add(a, poly_neg(b, F), F);
}

SparsePoly poly_scale(const SparsePoly& a, uint32_t c, const Field& F) {
    c %= F.p;
    SparsePoly r = poly_zero(*a.ring);
    if (c == 0) return r;
    r.terms.reserve(a.terms.size());
    for (const Term& t : a.terms) r.terms.push_back({t.e, F.mul(t.c, c)});
    return r;
}

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b, const Field& F) {
    check_same_ring(a, b);
    SparsePoly r = poly_zero(*a.ring);
    r.terms.reserve(a.terms.size() * b.terms.size());
    const size_t nv = a.ring->nvars();
    for (const Term& ta : a.terms) {
        for (const Term& tb : b.terms) {
            Term t;
            t.e.resize(nv);
            for (size_t v = 0; v < nv; ++v) {
                unsigned s = unsigned(ta.e[v]) + unsigned(tb.e[v]);
                if (s > 255) throw ApiError("exponent overflow in poly_mul");
                t.e[v] = static_cast<uint8_t>(s);
            }
            t.c = F.mul(ta.c, tb.c);
            r.terms.push_back(std::move(t));
        }
    }
    poly_normalize(r, F);
    return r;
}

SparsePoly substitute_linear(const SparsePoly& f, const Field& F,
                             const std::vector<std::vector<uint32_t>>& m,
                             const WeightedRing& target) {
    const size_t ns = f.ring->nvars();
    if (m.size() != ns) throw ApiError("substitution matrix needs one row per source variable");
    for (const auto& row : m)
        if (row.size() != target.nvars())
            throw ApiError("substitution matrix needs one column per target variable");
    std::vector<SparsePoly> forms;
    forms.reserve(ns);
    for (size_t v = 0; v < ns; ++v) {
        SparsePoly L = poly_zero(target);
        for (size_t w = 0; w < target.nvars(); ++w)
            if (m[v][w] % F.p)
                L = poly_add(L, poly_scale(poly_var(target, F, w), m[v][w], F), F);
        forms.push_back(std::move(L));
    }
    SparsePoly r = poly_zero(target);
    for (const Term& t : f.terms) {
        SparsePoly prod = poly_const(target, F, t.c);
        for (size_t v = 0; v < ns && !prod.is_zero(); ++v)
            for (uint8_t k = 0; k < t.e[v]; ++k) prod = poly_mul(prod, forms[v], F);
        r = poly_add(r, prod, F);
    }
    return r;
}

std::vector<SparsePoly> partials(const SparsePoly& f, const Field& F) {
    const size_t nv = f.ring->nvars();
    std::vector<SparsePoly> out;
    out.reserve(nv);
    for (size_t v = 0; v < nv; ++v) {
        SparsePoly d = poly_zero(*f.ring);
        for (const Term& t : f.terms) {
            if (t.e[v] == 0) continue;
            Term s = t;
            s.c = F.mul(t.c, t.e[v] % F.p);
            if (s.c == 0) continue;
            s.e[v] -= 1;
            d.terms.push_back(std::move(s));
        }
        poly_normalize(d, F);
        out.push_back(std::move(d));
    }
    return out;
}

uint32_t poly_eval(const SparsePoly& f, const Field& F, const std::vector<uint32_t>& point) {
    if (point.size() != f.ring->nvars()) throw ApiError("evaluation point has wrong length");
    uint32_t acc = 0;
    for (const Term& t : f.terms) {
        uint32_t v = t.c;
        for (size_t k = 0; k < point.size(); ++k)
            if (t.e[k]) v = F.mul(v, F.pow(point[k], t.e[k]));
        acc = F.add(acc, v);
    }
    return acc;
}

void poly_write(std::ostream& os, const SparsePoly& f) {
    for (const Term& t : f.terms) {
        os << t.c;
        for (uint8_t e : t.e) os << ' ' << unsigned(e);
        os << '\n';
    }
}

SparsePoly poly_read(std::istream& is, const WeightedRing& R, const Field& F) {
    SparsePoly f = poly_zero(R);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Term t;
        uint64_t c;
        if (!(ls >> c)) throw ApiError("malformed polynomial line: " + line);
        t.c = static_cast<uint32_t>(c % F.p);
        t.e.resize(R.nvars());
        for (size_t v = 0; v < R.nvars(); ++v) {
            unsigned e;
            if (!(ls >> e) || e > 255) throw ApiError("malformed exponent in line: " + line);
            t.e[v] = static_cast<uint8_t>(e);
        }
        if (t.c) f.terms.push_back(std::move(t));
    }
    poly_normalize(f, F);
    return f;
}

std::vector<uint32_t> poly_coords(const SparsePoly& f, uint32_t d) {
    const WeightedRing& R = *f.ring;
    std::vector<Exps> basis = monomial_basis(R, d);
    std::vector<uint32_t> out(basis.size(), 0);
    for (const Term& t : f.terms) {
        if (R.degree(t.e) != d) throw ApiError("poly_coords needs a homogeneous input of the stated degree");
        auto it = std::lower_bound(basis.begin(), basis.end(), t.e,
                                   [&](const Exps& a, const Exps& b) { return mono_less(R, a, b); });
        out[size_t(it - basis.begin())] = t.c;
    }
    return out;
}

} // namespace qmf
