#include "qmf/ring.hpp"

#include <algorithm>
#include <set>

#include "qmf/field.hpp"

namespace qmf {

WeightedRing make_ring(std::vector<std::string> names, std::vector<uint32_t> weights) {
    if (names.empty() || names.size() != weights.size())
        throw ApiError("ring needs matching nonempty name and weight lists");
    std::set<std::string> uniq(names.begin(), names.end());
    if (uniq.size() != names.size()) throw ApiError("duplicate variable name");
    for (uint32_t w : weights)
        if (w == 0) throw ApiError("variable weights must be positive");
    WeightedRing R;
    R.var_names = std::move(names);
    R.weights = std::move(weights);
    return R;
}

WeightedRing plain_ring(const std::string& stem, size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (size_t k = 1; k <= n; ++k) names.push_back(stem + std::to_string(k));
    return make_ring(std::move(names), std::vector<uint32_t>(n, 1));
}

static void enumerate(const WeightedRing& R, size_t v, uint32_t left, Exps& cur,
                      std::vector<Exps>& out) {
    if (v == R.nvars()) {
        if (left == 0) out.push_back(cur);
        return;
    }
    uint32_t w = R.weights[v];
    for (uint32_t k = 0; k * w <= left; ++k) {
        cur[v] = static_cast<uint8_t>(k);
        enumerate(R, v + 1, left - k * w, cur, out);
    }
    cur[v] = 0;
}

std::vector<Exps> monomial_basis(const WeightedRing& R, uint32_t d) {
    std::vector<Exps> out;
    Exps cur(R.nvars(), 0);
    enumerate(R, 0, d, cur, out);
    std::sort(out.begin(), out.end(),
              [&](const Exps& a, const Exps& b) { return mono_less(R, a, b); });
    return out;
}

size_t monomial_count(const WeightedRing& R, uint32_t d) {
    // ways[t] = #monomials of weighted degree t using variables seen so far
    std::vector<size_t> ways(d + 1, 0);
    ways[0] = 1;
    for (size_t v = 0; v < R.nvars(); ++v) {
        uint32_t w = R.weights[v];
        for (uint32_t t = w; t <= d; ++t) ways[t] += ways[t - w];
    }
    return ways[d];
}

} // namespace qmf
