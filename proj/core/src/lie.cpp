#include "qmf/lie.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "qmf/field.hpp" // ApiError

namespace qmf {

namespace {

using std::vector;
using ll = long long;

// exact determinant of a small integer matrix (Bareiss fraction-free scheme)
ll int_det(vector<vector<ll>> m) {
    const size_t n = m.size();
    ll sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[r], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return n == 0 ? sign : sign * m[n - 1][n - 1];
}

vector<vector<ll>> adjugate(const vector<vector<int>>& c) {
    const size_t n = c.size();
    vector<vector<ll>> adj(n, vector<ll>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            vector<vector<ll>> minor;
            for (size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                vector<ll> row;
                for (size_t cc = 0; cc < n; ++cc)
                    if (cc != j) row.push_back(c[r][cc]);
                minor.push_back(std::move(row));
            }
            ll d = int_det(std::move(minor));
            adj[j][i] = ((i + j) % 2 == 0) ? d : -d;
        }
    return adj;
}

Weight wadd(const Weight& a, const Weight& b) {
    Weight out(a.size());
    for (size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
    return out;
}

Weight wsub(const Weight& a, const Weight& b) {
    Weight out(a.size());
    for (size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
    return out;
}

Weight wscale(const Weight& a, int s) {
    Weight out(a.size());
    for (size_t k = 0; k < a.size(); ++k) out[k] = a[k] * s;
    return out;
}

bool dominant(const Weight& w) {
    return std::all_of(w.begin(), w.end(), [](int v) { return v >= 0; });
}

// column j of the Cartan matrix: the simple root alpha_j in the weight basis
Weight simple_root(const RootSystem& rs, size_t j) {
    Weight a(rs.rank);
    for (int i = 0; i < rs.rank; ++i) a[i] = rs.cartan[i][j];
    return a;
}

// s_i(w) = w - w_i * alpha_i (simply laced)
Weight reflect(const RootSystem& rs, const Weight& w, size_t i) {
    return wsub(w, wscale(simple_root(rs, i), w[i]));
}

// coordinates of a root-lattice element in the simple-root basis:
// c = C^{-1} * w = gram * w / det(C); throws if w is not in the lattice
vector<ll> root_coords(const RootSystem& rs, const Weight& w) {
    vector<ll> c(rs.rank);
    for (int k = 0; k < rs.rank; ++k) {
        ll num = 0;
        for (int j = 0; j < rs.rank; ++j) num += ll(rs.gram[k][j]) * w[j];
        if (num % rs.gram_scale != 0) throw ApiError("weight is not in the root lattice");
        c[k] = num / rs.gram_scale;
    }
    return c;
}

Weight dominantize(const RootSystem& rs, Weight w) {
    for (;;) {
        int i = -1;
        for (int k = 0; k < rs.rank; ++k)
            if (w[k] < 0) {
                i = k;
                break;
            }
        if (i < 0) return w;
        w = reflect(rs, w, size_t(i));
    }
}

void add_factored(std::map<ll, ll>& fac, ll v, ll e) {
    if (v < 0) throw ApiError("weyl factor must be positive");
    for (ll p = 2; p * p <= v; ++p)
        while (v % p == 0) {
            fac[p] += e;
            v /= p;
        }
    if (v > 1) fac[v] += e;
}

} // namespace

RootSystem make_root_system(char type, int rank) {
    RootSystem rs;
    rs.type = type;
    rs.rank = rank;
    if (type == 'A') {
        if (rank < 1) throw ApiError("type A needs rank >= 1");
    } else if (type == 'D') {
        if (rank < 4) throw ApiError("type D needs rank >= 4");
    } else {
        throw ApiError("only simply laced types A and D are built");
    }

    rs.cartan.assign(rank, vector<int>(rank, 0));
    for (int i = 0; i < rank; ++i) rs.cartan[i][i] = 2;
    auto join = [&](int i, int j) { rs.cartan[i][j] = rs.cartan[j][i] = -1; };
    if (type == 'A') {
        for (int i = 0; i + 1 < rank; ++i) join(i, i + 1);
    } else {
        for (int i = 0; i + 2 < rank - 1; ++i) join(i, i + 1); // chain 1..rank-2
        join(rank - 3, rank - 2);                              // first fork arm
        join(rank - 3, rank - 1);                              // second fork arm
    }

    vector<vector<ll>> cl(rank, vector<ll>(rank));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) cl[i][j] = rs.cartan[i][j];
    rs.gram_scale = int_det(cl);
    vector<vector<ll>> adj = adjugate(rs.cartan);
    rs.gram.assign(rank, vector<int>(rank));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) rs.gram[i][j] = int(adj[i][j]);

    // closure of the simple roots under the simple reflections, then keep the
    // half with nonnegative simple-root coordinates
    std::set<Weight> all;
    std::queue<Weight> todo;
    for (int j = 0; j < rank; ++j) {
        Weight a = simple_root(rs, j);
        if (all.insert(a).second) todo.push(a);
    }
    while (!todo.empty()) {
        Weight r = todo.front();
        todo.pop();
        for (int i = 0; i < rank; ++i) {
            Weight s = reflect(rs, r, size_t(i));
            if (all.insert(s).second) todo.push(s);
        }
    }
    for (const Weight& r : all) {
        vector<ll> c = root_coords(rs, r);
        if (std::all_of(c.begin(), c.end(), [](ll v) { return v >= 0; }))
            rs.positive_roots.push_back(r);
    }
    rs.rho.assign(rank, 1);
    return rs;
}

long long weight_pairing(const RootSystem& rs, const Weight& x, const Weight& y) {
    ll acc = 0;
    for (int i = 0; i < rs.rank; ++i)
        for (int j = 0; j < rs.rank; ++j) acc += ll(rs.gram[i][j]) * x[i] * y[j];
    return acc;
}

long long weyl_dim(const RootSystem& rs, const Weight& lam) {
    if (int(lam.size()) != rs.rank || !dominant(lam))
        throw ApiError("weyl dimension needs a dominant weight of the right rank");
    Weight lr = wadd(lam, rs.rho);
    std::map<ll, ll> fac;
    for (const Weight& b : rs.positive_roots) {
        add_factored(fac, weight_pairing(rs, lr, b), +1);
        add_factored(fac, weight_pairing(rs, rs.rho, b), -1);
    }
    ll dim = 1;
    for (const auto& [p, e] : fac) {
        if (e < 0) throw ApiError("weyl product failed to divide");
        for (ll k = 0; k < e; ++k) dim *= p;
    }
    return dim;
}

WeightMap irrep_weights(const RootSystem& rs, const Weight& lam) {
    if (int(lam.size()) != rs.rank || !dominant(lam))
        throw ApiError("irreducible character needs a dominant weight of the right rank");

    // candidates: lam minus nonnegative combinations of simple roots, within
    // the invariant ball |nu| <= |lam| that contains every weight
    const ll bound = weight_pairing(rs, lam, lam);
    std::set<Weight> seen{lam};
    std::queue<Weight> todo;
    todo.push(lam);
    while (!todo.empty()) {
        Weight v = todo.front();
        todo.pop();
        for (int i = 0; i < rs.rank; ++i) {
            Weight nxt = wsub(v, simple_root(rs, size_t(i)));
            if (weight_pairing(rs, nxt, nxt) > bound) continue;
            if (seen.insert(nxt).second) todo.push(nxt);
        }
    }

    // dominant candidates ordered by distance below lam
    struct Dom {
        Weight w;
        vector<ll> drop; // simple-root coordinates of lam - w
        ll height = 0;
    };
    vector<Dom> doms;
    for (const Weight& w : seen) {
        if (!dominant(w)) continue;
        Dom d;
        d.w = w;
        d.drop = root_coords(rs, wsub(lam, w));
        for (ll c : d.drop) d.height += c;
        doms.push_back(std::move(d));
    }
    std::sort(doms.begin(), doms.end(), [](const Dom& a, const Dom& b) {
        if (a.height != b.height) return a.height < b.height;
        return a.w < b.w;
    });

    // Freudenthal, top down: only dominant multiplicities are stored, the
    // terms mu + k*beta are folded into the dominant chamber first
    std::map<Weight, ll> dom_mult;
    const Weight lr = wadd(lam, rs.rho);
    const ll top = weight_pairing(rs, lr, lr);
    vector<vector<ll>> beta_coords;
    for (const Weight& b : rs.positive_roots) beta_coords.push_back(root_coords(rs, b));

    for (const Dom& d : doms) {
        if (d.height == 0) {
            dom_mult[d.w] = 1;
            continue;
        }
        Weight mr = wadd(d.w, rs.rho);
        ll denom = top - weight_pairing(rs, mr, mr);
        if (denom <= 0) continue; // outside the weight system
        ll total = 0;
        for (size_t bi = 0; bi < rs.positive_roots.size(); ++bi) {
            const Weight& b = rs.positive_roots[bi];
            ll kmax = -1; // largest k with lam - w - k*beta still effective
            for (int t = 0; t < rs.rank; ++t) {
                if (beta_coords[bi][t] == 0) continue;
                ll cap = d.drop[t] / beta_coords[bi][t];
                kmax = kmax < 0 ? cap : std::min(kmax, cap);
            }
            if (kmax <= 0) continue;
            const ll wb = weight_pairing(rs, d.w, b);
            const ll bb = weight_pairing(rs, b, b);
            Weight shifted = d.w;
            for (ll k = 1; k <= kmax; ++k) {
                shifted = wadd(shifted, b);
                auto it = dom_mult.find(dominantize(rs, shifted));
                if (it == dom_mult.end() || it->second == 0) continue;
                total += it->second * (wb + k * bb);
            }
        }
        if ((2 * total) % denom != 0) throw ApiError("freudenthal recursion failed to divide");
        ll m = 2 * total / denom;
        if (m < 0) throw ApiError("freudenthal produced a negative multiplicity");
        if (m > 0) dom_mult[d.w] = m;
    }

    // spread each dominant multiplicity over its reflection orbit
    WeightMap out;
    for (const auto& [w, m] : dom_mult) {
        std::set<Weight> orbit{w};
        std::queue<Weight> q;
        q.push(w);
        while (!q.empty()) {
            Weight v = q.front();
            q.pop();
            for (int i = 0; i < rs.rank; ++i) {
                Weight s = reflect(rs, v, size_t(i));
                if (orbit.insert(s).second) q.push(s);
            }
        }
        for (const Weight& v : orbit) out[v] = m;
    }
    return out;
}

WeightMap char_mul(const WeightMap& a, const WeightMap& b) {
    WeightMap out;
    for (const auto& [wa, ma] : a)
        for (const auto& [wb, mb] : b) out[wadd(wa, wb)] += ma * mb;
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

WeightMap sym4_character(const WeightMap& ch) {
    auto stretch = [&](int k) {
        WeightMap out;
        for (const auto& [w, m] : ch) out[wscale(w, k)] = m;
        return out;
    };
    const WeightMap p2 = stretch(2), p3 = stretch(3), p4 = stretch(4);
    const WeightMap p11 = char_mul(ch, ch);

    WeightMap acc;
    auto fold = [&](const WeightMap& part, ll coeff) {
        for (const auto& [w, m] : part) acc[w] += coeff * m;
    };
    fold(char_mul(p11, p11), 1);
    fold(char_mul(p11, p2), 6);
    fold(char_mul(p2, p2), 3);
    fold(char_mul(ch, p3), 8);
    fold(p4, 6);

    WeightMap out;
    for (const auto& [w, m] : acc) {
        if (m % 24 != 0) throw ApiError("symmetric power character is not integral");
        if (m != 0) out[w] = m / 24;
    }
    return out;
}

std::vector<std::pair<Weight, long long>> decompose_character(const RootSystem& rs,
                                                              WeightMap ch) {
    for (auto it = ch.begin(); it != ch.end();)
        it = it->second == 0 ? ch.erase(it) : std::next(it);

    std::vector<std::pair<Weight, ll>> out;
    while (!ch.empty()) {
        auto best = ch.begin();
        ll best_h = weight_pairing(rs, best->first, rs.rho);
        for (auto it = std::next(ch.begin()); it != ch.end(); ++it) {
            ll h = weight_pairing(rs, it->first, rs.rho);
            if (h > best_h || (h == best_h && it->first > best->first)) {
                best = it;
                best_h = h;
            }
        }
        Weight top = best->first;
        ll mult = best->second;
        if (!dominant(top) || mult < 0)
            throw ApiError("not a nonnegative sum of irreducible characters");
        out.push_back({top, mult});
        for (const auto& [w, m] : irrep_weights(rs, top)) {
            auto it = ch.find(w);
            ll next = (it == ch.end() ? 0 : it->second) - mult * m;
            if (next == 0) {
                if (it != ch.end()) ch.erase(it);
            } else {
                ch[w] = next;
            }
        }
    }
    return out;
}

PlethysmResult plethysm_case(const std::string& case_name) {
    PlethysmResult res;
    res.case_name = case_name;
    RootSystem rs;
    WeightMap ch;
    if (case_name == "s4-lambda3") {
        rs = make_root_system('A', 5);
        ch = sym4_character(irrep_weights(rs, {0, 0, 1, 0, 0}));
    } else if (case_name == "s4-delta") {
        rs = make_root_system('D', 6);
        ch = sym4_character(irrep_weights(rs, {0, 0, 0, 0, 0, 1}));
    } else if (case_name == "end6") {
        rs = make_root_system('A', 5);
        ch = char_mul(irrep_weights(rs, {1, 0, 0, 0, 0}), irrep_weights(rs, {0, 0, 0, 0, 1}));
    } else if (case_name == "end12") {
        rs = make_root_system('D', 6);
        WeightMap v = irrep_weights(rs, {1, 0, 0, 0, 0, 0});
        ch = char_mul(v, v);
    } else {
        throw ApiError("unknown plethysm case: " + case_name);
    }
    res.type = rs.type;
    res.rank = rs.rank;
    res.decomposition = decompose_character(rs, ch);
    for (const auto& [w, m] : res.decomposition) res.total_dim += m * weyl_dim(rs, w);
    return res;
}

} // namespace qmf
