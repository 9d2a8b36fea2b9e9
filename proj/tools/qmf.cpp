// Command line driver: every computation the library certifies, wrapped in
// seeded, reproducible JSON reports.
//
// Exit codes: 0 all asserted expectations met (values without an attached
// expectation are "recorded" and do not fail), 1 a computation finished with
// a discrepancy or an internal assertion threw, 2 the requested task does not
// exist or the usage is malformed.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qmf/dominance.hpp>
#include <qmf/homalg.hpp>
#include <qmf/invariants.hpp>
#include <qmf/lie.hpp>
#include <qmf/mf.hpp>
#include <qmf/report.hpp>
#include <qmf/rng.hpp>
#include <qmf/spinor.hpp>
#include <qmf/sy.hpp>

using namespace qmf;
using nlohmann::json;

namespace {

uint64_t now_ms() {
    using namespace std::chrono;
    return uint64_t(duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count());
}

struct Ctx {
    RunConfig cfg;
    Field F;
    std::vector<ReportRow> rows;
    bool discrepancy = false;
};

ReportRow start_row(const Ctx& ctx, const std::string& task, const std::string& family,
                    uint32_t seed, int level) {
    ReportRow r;
    r.task = task;
    r.family = family;
    r.prime = ctx.cfg.prime;
    r.seed = seed;
    r.level = level;
    return r;
}

// Close a row: status from the expectation, elapsed from the start stamp,
// one human line on stderr. `expected` empty means the value is recorded
// without an assertion.
void finish_row(Ctx& ctx, ReportRow r, uint64_t t0, std::optional<long long> expected,
                long long computed) {
    r.elapsed_ms = now_ms() - t0;
    r.extra["computed"] = computed;
    if (expected) {
        r.extra["expected"] = *expected;
        r.status = (computed == *expected) ? "ok" : "discrepancy";
    } else {
        r.status = "recorded";
    }
    if (ctx.cfg.timeout_s && r.elapsed_ms > uint64_t(ctx.cfg.timeout_s) * 1000)
        r.extra["soft_timeout_exceeded"] = true;
    if (r.status == "discrepancy") ctx.discrepancy = true;
    std::fprintf(stderr, "[%s] %s %s seed=%u i=%d computed=%lld%s%s (%llu ms)\n",
                 r.status.c_str(), r.task.c_str(), r.family.c_str(), r.seed, r.level, computed,
                 expected ? " expected=" : "",
                 expected ? std::to_string(*expected).c_str() : "",
                 (unsigned long long)r.elapsed_ms);
    ctx.rows.push_back(std::move(r));
}

void fill_ext_dims(ReportRow& r, const ExtComputation& e) {
    r.dim_kernel = (long long)e.dim_kernel();
    r.dim_image = (long long)e.rank_in;
    r.dim_ext = (long long)e.dim_ext();
    r.extra["dim_domain"] = e.dim_domain;
    r.extra["certified"] = e.certified;
}

// ---------------------------------------------------------------------------
// verify tasks
// ---------------------------------------------------------------------------

void run_verify_sy(Ctx& ctx) {
    uint64_t t0 = now_ms();
    PolyMatrix S = poly_mat_from(build_sy(ctx.F));
    PolyMatrix S2 = poly_mat_mul(S, S, ctx.F);
    SparsePoly q;
    bool scalar = poly_mat_is_scalar(S2, q);
    bool identity = scalar && q == sl6_quartic(ctx.F);
    ReportRow r = start_row(ctx, "verify-sy", "sy-square", ctx.cfg.seed, -1);
    r.extra["S_y^2 == lP*I6"] = identity;
    finish_row(ctx, std::move(r), t0, 1, identity ? 1 : 0);

    uint64_t t1 = now_ms();
    PolyMatrix O = poly_mat_from(kimura_sato_oracle(ctx.F));
    bool oracle = poly_mat_equal(O, S);
    ReportRow r2 = start_row(ctx, "verify-sy", "sy-oracle", ctx.cfg.seed, -1);
    r2.extra["oracle matches"] = oracle;
    r2.extra["global_scale"] = 1;
    finish_row(ctx, std::move(r2), t1, 1, oracle ? 1 : 0);
}

void run_verify_moment_even(Ctx& ctx) {
    // randomized precheck: square the numeric moment matrix at seeded points
    uint64_t t0 = now_ms();
    const SparsePoly P = igusa_quartic(ctx.F);
    const uint32_t c_even = ctx.F.neg(4 % ctx.F.p);
    Rng rng(ctx.cfg.seed);
    uint32_t passed = 0;
    const uint32_t n_pre = 100;
    for (uint32_t s = 0; s < n_pre; ++s) {
        std::vector<uint32_t> z(32);
        for (auto& c : z) c = rng.field_elem(ctx.F);
        auto M = moment_map_at(SpinorParity::even, z, ctx.F);
        const uint32_t target = ctx.F.mul(c_even, poly_eval(P, ctx.F, z));
        bool good = true;
        for (size_t r = 0; r < 12 && good; ++r)
            for (size_t c = 0; c < 12 && good; ++c) {
                uint32_t acc = 0;
                for (size_t k = 0; k < 12; ++k)
                    acc = ctx.F.add(acc, ctx.F.mul(M[r][k], M[k][c]));
                good = (acc == (r == c ? target : 0));
            }
        if (good) ++passed;
    }
    ReportRow pre = start_row(ctx, "verify-moment-even", "precheck", ctx.cfg.seed, -1);
    pre.extra["seeds"] = n_pre;
    finish_row(ctx, std::move(pre), t0, n_pre, passed);

    uint64_t t1 = now_ms();
    MomentSquareResult res = verify_mf_even(ctx.F);
    bool met = res.is_scalar && res.constant != 0;
    ReportRow r = start_row(ctx, "verify-moment-even", "symbolic", ctx.cfg.seed, -1);
    r.extra["is_scalar"] = res.is_scalar;
    r.extra["c_even_mod_p"] = res.constant;
    r.extra["c_even_matches_minus_four"] = (res.constant == c_even);
    if (!met) r.extra["detail"] = res.detail;
    finish_row(ctx, std::move(r), t1, 1, met ? 1 : 0);
}

void run_verify_moment_odd(Ctx& ctx) {
    uint64_t t0 = now_ms();
    MomentSquareResult res = verify_mf_odd(ctx.F);
    bool met = res.is_scalar && res.constant != 0;
    ReportRow r = start_row(ctx, "verify-moment-odd", "symbolic", ctx.cfg.seed, -1);
    r.extra["is_scalar"] = res.is_scalar;
    r.extra["lambda_mod_p"] = res.constant;
    if (!met) r.extra["detail"] = res.detail;
    finish_row(ctx, std::move(r), t0, 1, met ? 1 : 0);
}

void run_verify_blocks(Ctx& ctx) {
    uint64_t t0 = now_ms();
    BlockStructureResult res = verify_block_structure(ctx.F);
    bool met = res.ok && res.scale != 0;
    ReportRow r = start_row(ctx, "verify-blocks", "block-structure", ctx.cfg.seed, -1);
    r.extra["scale_mod_p"] = res.scale;
    if (!met) r.extra["detail"] = res.detail;
    finish_row(ctx, std::move(r), t0, 1, met ? 1 : 0);
}

// ---------------------------------------------------------------------------
// dominance
// ---------------------------------------------------------------------------

void run_dominance(Ctx& ctx) {
    uint64_t t0 = now_ms();
    DominanceVerdict v = dominance_verdict(ctx.cfg.seed, ctx.cfg.trials, ctx.F);
    ReportRow r = start_row(ctx, "dominance", "spin12", ctx.cfg.seed, -1);
    json ranks = json::array();
    for (const DominanceTrial& t : v.trials) ranks.push_back(t.rank);
    r.extra["trials"] = v.trials.size();
    r.extra["ranks"] = ranks;
    r.extra["full_rank"] = v.full_rank;
    r.extra["verdict"] = v.dominant ? "dominant-evidence" : "deficient";
    r.extra["evidence"] =
        "full rank mod p at one seeded point implies full generic rank in characteristic 0";
    finish_row(ctx, std::move(r), t0, 1, v.dominant ? 1 : 0);
}

// ---------------------------------------------------------------------------
// ext
// ---------------------------------------------------------------------------

std::optional<long long> expected_ext(const std::string& family, int i) {
    if (family == "sl6-x5") {
        if (i == 0) return 1;
        if (i == 1) return 0;
    } else if (family == "spin12-x5") {
        // spherical profile (1, 0, 0, 1)
        if (i == 0) return 1;
        if (i == 1) return 0;
        if (i == 2) return 0;
        if (i == 3) return 1;
    } else if (family == "sl6-q4") {
        if (i == 0) return 1;
        if (i == 1) return 21;
    } else if (family == "spin12-special") {
        if (i == 0) return 2;
        // i = 1 carries no assertion: the distinguished section splits off a
        // deck-twisted partner whose pairing contributes the branch quartic's
        // deformations, so the value is recorded, not asserted
    }
    return std::nullopt;
}

void run_ext(Ctx& ctx, const std::string& family, int i, uint32_t seed) {
    uint64_t t0 = now_ms();
    Family fam = make_family(family, seed, ctx.F);
    ExtOptions opts;
    ExtComputation e = ext_sheaf(fam, size_t(i), opts, ctx.F);
    ReportRow r = start_row(ctx, "ext", family, seed, i);
    fill_ext_dims(r, e);
    if (fam.section_retries) r.extra["section_retries"] = fam.section_retries;
    finish_row(ctx, std::move(r), t0, expected_ext(family, i), (long long)e.dim_ext());
}

// the four cross pairings at the distinguished section
void run_special_cross(Ctx& ctx, uint32_t seed) {
    struct Case {
        SpecialPair pair;
        const char* name;
        long long expect_hom;
        long long expect_ext1;
    };
    const Case cases[] = {
        {SpecialPair::EE, "spin12-special-ee", 1, 0},
        {SpecialPair::GG, "spin12-special-gg", 1, 0},
        {SpecialPair::EG, "spin12-special-eg", 0, 0},
        {SpecialPair::GE, "spin12-special-ge", 0, 0},
    };
    ExtOptions opts;
    for (const Case& c : cases) {
        Family fam = make_spin12_special(c.pair, seed, ctx.F);
        uint64_t t0 = now_ms();
        size_t hom = hom_sheaf(fam.E, fam.Fm, ctx.F);
        ReportRow rh = start_row(ctx, "hom", c.name, seed, -1);
        rh.dim_ext = (long long)hom;
        finish_row(ctx, std::move(rh), t0, c.expect_hom, (long long)hom);

        uint64_t t1 = now_ms();
        ExtComputation e1 = ext_sheaf(fam, 1, opts, ctx.F);
        ReportRow re = start_row(ctx, "ext", c.name, seed, 1);
        fill_ext_dims(re, e1);
        finish_row(ctx, std::move(re), t1, c.expect_ext1, (long long)e1.dim_ext());
    }
}

// ---------------------------------------------------------------------------
// plethysm
// ---------------------------------------------------------------------------

const std::vector<std::pair<Weight, long long>>* expected_plethysm(const std::string& name) {
    using D = std::vector<std::pair<Weight, long long>>;
    static const D s4l3{{{0, 0, 4, 0, 0}, 1}, {{1, 0, 2, 0, 1}, 1}, {{2, 0, 0, 0, 2}, 1},
                        {{0, 0, 2, 0, 0}, 1}, {{0, 1, 0, 1, 0}, 1}, {{0, 0, 0, 0, 0}, 1}};
    static const D s4d{{{0, 0, 0, 0, 0, 4}, 1}, {{0, 1, 0, 0, 0, 2}, 1},
                       {{0, 2, 0, 0, 0, 0}, 1}, {{0, 0, 0, 0, 0, 2}, 1},
                       {{0, 0, 0, 1, 0, 0}, 1}, {{0, 0, 0, 0, 0, 0}, 1}};
    static const D e6{{{1, 0, 0, 0, 1}, 1}, {{0, 0, 0, 0, 0}, 1}};
    static const D e12{{{2, 0, 0, 0, 0, 0}, 1}, {{0, 1, 0, 0, 0, 0}, 1},
                       {{0, 0, 0, 0, 0, 0}, 1}};
    if (name == "s4-lambda3") return &s4l3;
    if (name == "s4-delta") return &s4d;
    if (name == "end6") return &e6;
    if (name == "end12") return &e12;
    return nullptr;
}

void run_plethysm(Ctx& ctx, const std::string& case_name) {
    uint64_t t0 = now_ms();
    PlethysmResult res = plethysm_case(case_name);
    const auto* expect = expected_plethysm(case_name);
    bool met = expect && res.decomposition == *expect;
    ReportRow r = start_row(ctx, "plethysm", case_name, ctx.cfg.seed, -1);
    json dec = json::array();
    for (const auto& [w, m] : res.decomposition) dec.push_back(json{{"weight", w}, {"mult", m}});
    r.extra["decomposition"] = dec;
    r.extra["total_dim"] = res.total_dim;
    r.extra["type"] = std::string(1, res.type) + std::to_string(res.rank);
    finish_row(ctx, std::move(r), t0, 1, met ? 1 : 0);
}

// ---------------------------------------------------------------------------
// property rows (exact spot checks of the algebraic substrate)
// ---------------------------------------------------------------------------

uint32_t det_mod_p(DenseMat M, const Field& F) {
    uint32_t det = 1;
    for (size_t k = 0; k < M.rows; ++k) {
        size_t piv = k;
        while (piv < M.rows && M.at(piv, k) == 0) ++piv;
        if (piv == M.rows) return 0;
        if (piv != k) {
            for (size_t c = 0; c < M.cols; ++c) std::swap(M.at(piv, c), M.at(k, c));
            det = F.neg(det);
        }
        det = F.mul(det, M.at(k, k));
        const uint32_t inv = F.inv(M.at(k, k));
        for (size_t r = k + 1; r < M.rows; ++r) {
            const uint32_t f = F.mul(M.at(r, k), inv);
            if (!f) continue;
            for (size_t c = k; c < M.cols; ++c)
                M.at(r, c) = F.sub(M.at(r, c), F.mul(f, M.at(k, c)));
        }
    }
    return det;
}

void run_properties(Ctx& ctx) {
    // Clifford relations: v_a v_b + v_b v_a = J_ab on all 64 basis vectors
    {
        uint64_t t0 = now_ms();
        bool all = true;
        for (size_t a = 0; a < 12 && all; ++a)
            for (size_t b = 0; b < 12 && all; ++b)
                for (uint32_t m = 0; m < 64 && all; ++m) {
                    std::vector<uint32_t> in(64, 0), t1(64, 0), t2(64, 0), ab(64, 0), ba(64, 0);
                    in[m] = 1;
                    clifford_apply(b, in, t1, ctx.F);
                    clifford_apply(a, t1, ab, ctx.F);
                    clifford_apply(a, in, t2, ctx.F);
                    clifford_apply(b, t2, ba, ctx.F);
                    const uint32_t expect = ((a + 6) % 12 == b) ? 1u : 0u;
                    for (uint32_t k = 0; k < 64 && all; ++k)
                        all = (ctx.F.add(ab[k], ba[k]) == (k == m ? expect : 0));
                }
        ReportRow r = start_row(ctx, "property", "clifford-relations", ctx.cfg.seed, -1);
        r.extra["pairs"] = 144;
        r.extra["basis_vectors"] = 64;
        finish_row(ctx, std::move(r), t0, 1, all ? 1 : 0);
    }
    // Pfaffian squared equals the determinant on random alternating matrices
    {
        uint64_t t0 = now_ms();
        Rng rng(ctx.cfg.seed + 17);
        WeightedRing R = plain_ring("t", 1);
        bool all = true;
        for (size_t n : {2u, 4u, 6u}) {
            for (int rep = 0; rep < 4 && all; ++rep) {
                std::vector<std::vector<SparsePoly>> M(n,
                    std::vector<SparsePoly>(n, poly_zero(R)));
                DenseMat num((size_t)n, (size_t)n);
                for (size_t r = 0; r < n; ++r)
                    for (size_t c = r + 1; c < n; ++c) {
                        const uint32_t v = rng.field_elem(ctx.F);
                        num.at(r, c) = v;
                        num.at(c, r) = ctx.F.neg(v);
                        if (v) {
                            M[r][c] = poly_const(R, ctx.F, v);
                            M[c][r] = poly_const(R, ctx.F, ctx.F.neg(v));
                        }
                    }
                SparsePoly pf = pfaffian(M, ctx.F);
                const uint32_t pv = pf.is_zero() ? 0 : pf.terms[0].c;
                all = (ctx.F.mul(pv, pv) == det_mod_p(num, ctx.F));
            }
        }
        ReportRow r = start_row(ctx, "property", "pfaffian-squared", ctx.cfg.seed, -1);
        finish_row(ctx, std::move(r), t0, 1, all ? 1 : 0);
    }
    // substitution along linear maps is a ring homomorphism
    {
        uint64_t t0 = now_ms();
        Rng rng(ctx.cfg.seed + 23);
        WeightedRing src = plain_ring("s", 3);
        WeightedRing tgt = plain_ring("u", 4);
        bool all = true;
        for (int rep = 0; rep < 10 && all; ++rep) {
            auto rand_poly = [&](uint32_t deg) {
                SparsePoly f = poly_zero(src);
                for (const Exps& e : monomial_basis(src, deg)) {
                    const uint32_t c = rng.field_elem(ctx.F);
                    if (c) f = poly_add(f, poly_monomial(src, ctx.F, e, c), ctx.F);
                }
                return f;
            };
            SparsePoly f = rand_poly(2), g = rand_poly(1);
            std::vector<std::vector<uint32_t>> m(3, std::vector<uint32_t>(4));
            for (auto& row : m)
                for (auto& v : row) v = rng.field_elem(ctx.F);
            SparsePoly lhs = substitute_linear(poly_mul(f, g, ctx.F), ctx.F, m, tgt);
            SparsePoly rhs = poly_mul(substitute_linear(f, ctx.F, m, tgt),
                                      substitute_linear(g, ctx.F, m, tgt), ctx.F);
            all = (lhs == rhs);
        }
        ReportRow r = start_row(ctx, "property", "substitution-multiplicative", ctx.cfg.seed, -1);
        finish_row(ctx, std::move(r), t0, 1, all ? 1 : 0);
    }
    // the seeded generator is the reference implementation bit for bit
    {
        uint64_t t0 = now_ms();
        const uint64_t expect[10] = {0xE220A8397B1DCDAFull, 0x6E789E6AA1B965F4ull,
                                     0x06C45D188009454Full, 0xF88BB8A8724C81ECull,
                                     0x1B39896A51A8749Bull, 0x53CB9F0C747EA2EAull,
                                     0x2C829ABE1F4532E1ull, 0xC584133AC916AB3Cull,
                                     0x3EE5789041C98AC3ull, 0xF3B8488C368CB0A6ull};
        Rng r0(0);
        bool all = true;
        for (uint64_t v : expect) all = all && (r0.next() == v);
        ReportRow r = start_row(ctx, "property", "rng-reference-vector", ctx.cfg.seed, -1);
        finish_row(ctx, std::move(r), t0, 1, all ? 1 : 0);
    }
}

// ---------------------------------------------------------------------------
// suite
// ---------------------------------------------------------------------------

void run_suite(Ctx& ctx) {
    run_verify_sy(ctx);
    run_verify_moment_even(ctx);
    run_verify_moment_odd(ctx);
    run_verify_blocks(ctx);
    run_dominance(ctx);
    for (uint32_t seed : {42u, 43u, 44u}) {
        run_ext(ctx, "sl6-x5", 0, seed);
        run_ext(ctx, "sl6-x5", 1, seed);
    }
    run_ext(ctx, "sl6-q4", 0, ctx.cfg.seed);
    run_ext(ctx, "sl6-q4", 1, ctx.cfg.seed);
    run_ext(ctx, "spin12-special", 0, ctx.cfg.seed);
    run_special_cross(ctx, ctx.cfg.seed);
    for (uint32_t seed : {ctx.cfg.seed, ctx.cfg.seed + 1}) {
        run_ext(ctx, "spin12-x5", 0, seed);
        run_ext(ctx, "spin12-x5", 1, seed);
    }
    for (const char* c : {"s4-lambda3", "s4-delta", "end6", "end12"}) run_plethysm(ctx, c);
    run_properties(ctx);
}

// ---------------------------------------------------------------------------
// report-merge
// ---------------------------------------------------------------------------

std::string cell(const json& row, const char* key) {
    if (!row.is_object() || !row.contains(key)) return "-";
    const json& v = row.at(key);
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

int run_merge(const std::vector<std::string>& paths, bool expect_full_suite,
              const std::string& out_path) {
    std::vector<json> reports;
    for (const std::string& p : paths) reports.push_back(report_read(p));
    MergeResult m = report_merge(reports, expect_full_suite);
    if (!m.ok) {
        std::fprintf(stderr, "merge failed: %s\n", m.error.c_str());
        json fail{{"schema", "1"}, {"error", m.error}};
        std::printf("%s\n", fail.dump(2).c_str());
        return 1;
    }
    // human summary: one line per row
    std::fprintf(stderr, "%-12s %-22s %5s %6s %4s %10s %10s %-11s\n", "task", "family", "prime",
                 "seed", "i", "expected", "computed", "status");
    bool any_disc = false;
    for (const json& row : m.merged.at("rows")) {
        std::string expected = "-";
        std::string computed = cell(row, "dim_ext");
        if (row.is_object() && row.contains("extra")) {
            const json& ex = row.at("extra");
            if (ex.contains("expected")) expected = ex.at("expected").dump();
            if (ex.contains("computed")) computed = ex.at("computed").dump();
        }
        const std::string status = cell(row, "status");
        if (status == "discrepancy") any_disc = true;
        std::fprintf(stderr, "%-12s %-22s %5s %6s %4s %10s %10s %-11s\n",
                     cell(row, "task").c_str(), cell(row, "family").c_str(),
                     cell(row, "prime").c_str(), cell(row, "seed").c_str(),
                     cell(row, "i").c_str(), expected.c_str(), computed.c_str(), status.c_str());
    }
    std::fprintf(stderr, "%zu rows, hash %016llx\n", m.merged.at("rows").size(),
                 (unsigned long long)report_hash(m.merged));
    if (!out_path.empty()) {
        report_write(m.merged, out_path);
        std::fprintf(stderr, "merged report written to %s\n", out_path.c_str());
    } else {
        std::printf("%s\n", m.merged.dump(2).c_str());
    }
    return any_disc ? 1 : 0;
}

int emit_and_exit(Ctx& ctx, const std::string& out_path) {
    json rep = report_json(ctx.cfg, ctx.rows);
    if (!out_path.empty()) {
        report_write(rep, out_path);
        std::fprintf(stderr, "report written to %s (hash %016llx)\n", out_path.c_str(),
                     (unsigned long long)report_hash(rep));
    } else {
        std::printf("%s\n", rep.dump(2).c_str());
    }
    return ctx.discrepancy ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact mod-p verifications for a pair of quartic double fivefolds"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name

    uint32_t prime = 313, seed = 1, trials = 5, threads = 0, timeout_s = 14400;
    std::string family, case_name, out_path, verify_mode;
    int level = -1;
    std::vector<std::string> merge_paths;
    bool expect_full_suite = false;

    app.add_option("--prime", prime, "coefficient field F_p (default 313)");
    app.add_option("--seed", seed, "base seed for all random draws");
    app.add_option("--threads", threads, "worker bound (QMF_THREADS as fallback)");
    app.add_option("--out", out_path, "write the JSON report to this path");
    app.add_option("--timeout-s", timeout_s, "soft per-task timeout, recorded when exceeded");

    CLI::App* verify = app.add_subcommand("verify", "symbolic matrix identities");
    verify->add_option("mode", verify_mode, "sy | moment-even | moment-odd | blocks")
        ->required();

    CLI::App* dominance = app.add_subcommand("dominance", "pullback jacobian rank trials");
    dominance->add_option("--trials", trials, "number of seeded sections (default 5)");

    CLI::App* ext = app.add_subcommand("ext", "graded sheaf Ext dimensions");
    ext->add_option("--family", family, "sl6-x5 | spin12-x5 | sl6-q4 | spin12-special")
        ->required();
    ext->add_option("--i", level, "cohomological degree 0..3")->required();

    CLI::App* plethysm = app.add_subcommand("plethysm", "symmetric power decompositions");
    plethysm->add_option("--case", case_name, "s4-lambda3 | s4-delta | end6 | end12")
        ->required();

    app.add_subcommand("suite", "every acceptance computation in one run");

    CLI::App* merge = app.add_subcommand("report-merge", "combine report files");
    merge->add_option("paths", merge_paths, "report JSON files");
    merge->add_flag("--expect-full-suite", expect_full_suite,
                    "require at least 12 merged rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // unknown task or malformed usage
    }

    if (threads == 0) {
        if (const char* env = std::getenv("QMF_THREADS")) threads = uint32_t(std::atoi(env));
        if (threads == 0) threads = 1;
    }

    Ctx ctx;
    ctx.cfg.prime = prime;
    ctx.cfg.seed = seed;
    ctx.cfg.level = level;
    ctx.cfg.trials = 0;
    ctx.cfg.threads = threads;
    ctx.cfg.timeout_s = timeout_s;
    ctx.cfg.family = family;
    ctx.cfg.case_name = case_name;

    try {
        ctx.F = make_field(prime);

        if (app.got_subcommand("verify")) {
            ctx.cfg.task = "verify " + verify_mode;
            if (verify_mode == "sy")
                run_verify_sy(ctx);
            else if (verify_mode == "moment-even")
                run_verify_moment_even(ctx);
            else if (verify_mode == "moment-odd")
                run_verify_moment_odd(ctx);
            else if (verify_mode == "blocks")
                run_verify_blocks(ctx);
            else {
                std::fprintf(stderr, "unknown verify mode: %s\n", verify_mode.c_str());
                return 2;
            }
        } else if (app.got_subcommand("dominance")) {
            ctx.cfg.task = "dominance";
            ctx.cfg.trials = trials;
            run_dominance(ctx);
        } else if (app.got_subcommand("ext")) {
            ctx.cfg.task = "ext";
            static const std::set<std::string> known{"sl6-x5", "spin12-x5", "sl6-q4",
                                                     "spin12-special"};
            if (!known.count(family)) {
                std::fprintf(stderr, "unknown family: %s\n", family.c_str());
                return 2;
            }
            if (level < 0 || level > 3) {
                std::fprintf(stderr, "--i must be between 0 and 3\n");
                return 2;
            }
            run_ext(ctx, family, level, seed);
        } else if (app.got_subcommand("plethysm")) {
            ctx.cfg.task = "plethysm";
            if (!expected_plethysm(case_name)) {
                std::fprintf(stderr, "unknown case: %s\n", case_name.c_str());
                return 2;
            }
            run_plethysm(ctx, case_name);
        } else if (app.got_subcommand("suite")) {
            ctx.cfg.task = "suite";
            ctx.cfg.trials = trials;
            run_suite(ctx);
        } else if (app.got_subcommand("report-merge")) {
            return run_merge(merge_paths, expect_full_suite, out_path);
        }
    } catch (const ApiError& e) {
        // a computation failed an internal exactness certificate
        json fail = report_json(ctx.cfg, ctx.rows);
        fail["error"] = e.what();
        std::fprintf(stderr, "error: %s\n", e.what());
        std::printf("%s\n", fail.dump(2).c_str());
        return 1;
    }

    return emit_and_exit(ctx, out_path);
}
