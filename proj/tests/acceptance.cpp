// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "cftower/cft.hpp"
#include "cftower/config.hpp"
#include "cftower/cover.hpp"
#include "cftower/curve.hpp"
#include "cftower/error.hpp"
#include "cftower/report.hpp"
#include "cftower/search.hpp"
#include "support.hpp"

using namespace cftower;

namespace {

using a_vec = std::vector<int64_t>;

struct tally {
    std::vector<std::string> failures;
    unsigned checks = 0;

    void expect(bool ok, std::string const & what)
    {
        ++checks;
        if (!ok) failures.push_back(what);
    }
};

std::string show(a_vec const & v)
{
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

void expect_spectrum(tally & t, std::string const & name, a_vec const & got, a_vec const & want)
{
    t.expect(got == want, name + " = " + show(got) + ", expected " + show(want));
}

void expect_equal(tally & t, std::string const & what, auto const & got, auto const & want)
{
    std::ostringstream os;
    os << what << ": got " << got << ", expected " << want;
    t.expect(got == want, os.str());
}

struct named_plan {
    char const * config;
    char const * plan;
};
constexpr named_plan plans[] = { { "f2_tower1", "tower1" },
                                 { "f2_tower2", "tower2" },
                                 { "f3_tower", "f3_deg8" },
                                 { "f3_tower", "f3_mixed" } };

struct named_cover {
    char const * config;
    char const * name;
};
constexpr named_cover covers[] = { { "f2_tower1", "k1" }, { "f2_tower2", "k2" }, { "f3_tower", "k3" } };

cover_spec load_cover(named_cover c) { return oracle::shipped(c.config).covers.at(c.name); }

resolved_plan load_plan(named_plan p) { return resolve_plan(oracle::shipped(p.config), p.plan); }

void spectra(tally & t)
{
    auto f1 = oracle::shipped("f2_tower1");
    auto f2 = oracle::shipped("f2_tower2");
    auto f3 = oracle::shipped("f3_tower");
    expect_spectrum(t, "a(E)", spectrum_from_counts(f1.curves.at("E"), 8).a, { 5, 0, 0, 5, 4, 10, 20, 25 });
    expect_spectrum(t, "a(C)", assemble_spectrum(f1.covers.at("C"), 5).a, { 10, 0, 0, 0, 3 });
    expect_spectrum(t, "a(H)", spectrum_from_counts(f2.curves.at("H"), 5).a, { 6, 0, 1, 1, 6 });
    expect_spectrum(t, "a(E3)", spectrum_from_counts(f3.curves.at("E3"), 5).a, { 7, 0, 7, 21, 42 });
    /* positions 2, 3 and 4 of the first cover are not pinned */
    auto k1 = assemble_spectrum(f1.covers.at("k1"), 10).a;
    a_vec k1_pinned = { k1[0], k1[4], k1[5], k1[6], k1[7], k1[8], k1[9] };
    expect_spectrum(t, "a(k1) at 1,5..10", k1_pinned, { 160, 1, 0, 0, 65, 0, 48 });
    expect_spectrum(t, "a(k2)", assemble_spectrum(f2.covers.at("k2"), 10).a, { 192, 0, 0, 0, 2, 16, 0, 16, 0, 64 });
    expect_spectrum(t, "a(k3)", assemble_spectrum(f3.covers.at("k3"), 9).a, { 567, 0, 0, 0, 1, 0, 0, 162, 1809 });
}

void genera_and_zeta(tally & t)
{
    int64_t const want[] = { 276, 343, 601 };
    for (size_t i = 0; i < 3; ++i) {
        auto cover = load_cover(covers[i]);
        std::string name = covers[i].name;
        expect_equal(t, "genus(" + name + ") from conductors",
                     genus_from_conductors(int64_t(cover.base.declared_genus), *cover.profile), want[i]);
        expect_equal(t, "cover_genus(" + name + ")", cover_genus(cover), want[i]);
    }
    struct row {
        char const * config;
        char const * curve;
        unsigned genus;
    };
    for (auto [cfg, name, genus] : { row { "f2_tower1", "E", 1 }, row { "f2_tower2", "H", 2 },
                                     row { "f3_tower", "E3", 1 } }) {
        auto m = oracle::shipped(cfg).curves.at(name);
        expect_equal(t, std::string("declared genus of ") + name, m.declared_genus, genus);
        auto s = spectrum_from_counts(m, 4);
        auto z = zeta_analyse(s);
        t.expect(z.pass, std::string("zeta check fails for ") + name + ": " + z.discrepancy);
        t.expect(z.roots_on_circle.value_or(false), std::string("roots off the circle for ") + name);
        /* N_1..N_g determine L(T); the rest are predictions */
        for (unsigned n = 1; n <= 4; ++n) {
            auto F = make_ext_field(m.params, n);
            int64_t direct = int64_t(oracle::affine_points(m, F).size()) + oracle::infinity_points(m, n);
            expect_equal(t, fmt::format("{} N_{}", name, n), s.points(n), direct);
            bool found = n <= genus;
            for (auto const & pr : z.predictions)
                if (pr.n == n) {
                    found = true;
                    expect_equal(t, fmt::format("{} predicted N_{}", name, n), pr.predicted, direct);
                }
            t.expect(found, fmt::format("{} has no prediction for N_{}", name, n));
        }
    }
}

void certification(tally & t)
{
    int const want[] = { 92, 57, 932, 308 };
    for (size_t i = 0; i < 4; ++i) {
        auto rp = load_plan(plans[i]);
        std::string name = plans[i].plan;
        auto gs = check_gs_inequality(rp.plan);
        expect_equal(t, "margin(" + name + ")", gs.margin, bigint(want[i]));
        expect_equal(t, "oracle margin(" + name + ")", oracle::margin(rp.plan.params, rp.plan.entries, rp.plan.t),
                     mpz_class(want[i]));
        t.expect(gs.consistent, name + ": margin disagrees with the raw inequality");
        auto c = certify_tower(rp.genus, rp.plan);
        t.expect(c.infinite, name + " is not certified infinite");
        t.expect(c.side_condition && side_condition_holds(rp.plan), name + ": t exceeds the unit rank sum");
    }
}

void bounds(tally & t)
{
    auto r1 = load_plan(plans[0]), r2 = load_plan(plans[1]), r3 = load_plan(plans[2]), r4 = load_plan(plans[3]);
    expect_equal(t, "plain bound tower1", bound_plain(r1.genus, r1.plan), rational(80, 253));
    expect_equal(t, "plain bound tower2", bound_plain(r2.genus, r2.plan), rational(6, 19));
    expect_equal(t, "plain bound f3_deg8", bound_plain(r3.genus, r3.plan), rational(63, 128));
    expect_equal(t, "refined bound tower1", bound_refined(r1.genus, r1.plan), rational(16384, 51711));
    expect_equal(t, "refined decimal tower2", truncated_decimal(bound_refined(r2.genus, r2.plan), 6),
                 std::string("0.316999"));
    expect_equal(t, "refined decimal f3_mixed", truncated_decimal(bound_refined(r4.genus, r4.plan), 6),
                 std::string("0.492876"));
    for (auto const * rp : { &r1, &r2, &r3, &r4 }) {
        auto const & pl = rp->plan;
        t.expect(bound_plain(rp->genus, pl) == oracle::plain_bound(rp->genus, pl.entries, pl.t),
                 "plain bound disagrees with the oracle");
        t.expect(bound_refined(rp->genus, pl) == oracle::refined_bound(rp->genus, pl.params.q(), pl.entries, pl.t),
                 "refined bound disagrees with the oracle");
    }
}

void comparisons(tally & t)
{
    auto doc = oracle::shipped("remark_comparisons");
    struct row {
        char const * name;
        bool ours;
        int64_t d, rd;
    };
    for (auto [name, ours, d, rd] : { row { "usual_t20", false, 20, 80 }, row { "ours_t21", true, 21, 82 },
                                      row { "usual_t24", false, 22, 96 }, row { "ours_t24", true, 22, 92 } }) {
        auto c = compare_methods(doc.comparisons.at(name).input);
        auto const & side = ours ? c.ours : c.usual;
        t.expect(side.d_lower == d && side.rd_upper == rd,
                 fmt::format("{}: ({}, {}), expected ({}, {})", name, side.d_lower, side.rd_upper, d, rd));
    }
}

void synthetic_spectra(tally & t)
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        uint64_t q = std::vector<uint64_t> { 2, 3, 4, 5, 7, 8, 9 }[rng() % 7];
        unsigned g = unsigned(rng() % 4);
        /* N_n = q^n + 1 - sum of power sums of reciprocal root pairs */
        int64_t amax = int64_t(std::floor(2 * std::sqrt(double(q))));
        std::vector<int64_t> a(g), prev(g, 2), cur(g, 0), N(8);
        for (auto & ai : a) ai = int64_t(rng() % uint64_t(2 * amax + 1)) - amax;
        int64_t qn = 1;
        for (unsigned n = 1; n <= 8; ++n) {
            qn *= int64_t(q);
            int64_t sum = 0;
            for (unsigned i = 0; i < g; ++i) {
                int64_t sn = n == 1 ? a[i] : a[i] * cur[i] - int64_t(q) * prev[i];
                prev[i] = n == 1 ? 2 : cur[i];
                cur[i] = sn;
                sum += sn;
            }
            N[n - 1] = qn + 1 - sum;
            t.expect(weil_bound_holds(q, g, n, N[n - 1]), "synthetic count outside the Weil bound");
        }
        std::vector<int64_t> places(8);
        for (auto & v : places) v = int64_t(rng() % 50);
        auto back = places_from_counts(counts_from_places(places));
        t.expect(back && *back == places, "Moebius round trip failed");
        if (auto r = places_from_counts(N)) t.expect(counts_from_places(*r) == N, "count round trip failed");
    }
}

bool is_declared(std::vector<resolved_declared> const & res, place const & p)
{
    for (auto const & r : res)
        for (auto const & q : r.places)
            if (q == p) return true;
    return false;
}

void decomposition_balance(tally & t)
{
    for (auto nc : covers) {
        auto cover = load_cover(nc);
        auto res = resolve_declared(cover, 6);
        uint64_t index = cover.degree();
        for (unsigned m = 1; m <= 6; ++m) {
            for (auto const & pl : enumerate_places(cover.base, m)) {
                if (pl.at_infinity || is_declared(res, pl)) continue;
                auto rec = decompose_place(cover, pl);
                uint64_t total = 0;
                for (auto const & pc : rec.places_above) total += pc.degree * pc.count;
                t.expect(total == m * index, fmt::format("{}: degree {} place is unbalanced", nc.name, m));
                for (auto const & c : conjugates(cover.base.params, pl)) {
                    auto other = decompose_place(cover, c);
                    t.expect(other.frobenius_vector == rec.frobenius_vector && other.places_above == rec.places_above,
                             fmt::format("{}: degree {} decomposition depends on the representative", nc.name, m));
                }
            }
        }
    }
}

void random_plans(tally & t)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10000; ++trial) {
        uint32_t p = std::vector<uint32_t> { 2, 3, 5 }[rng() % 3];
        ramification_plan pl;
        pl.params = field_params::make(p, 1 + unsigned(rng() % 2));
        unsigned k = 1 + unsigned(rng() % 4);
        for (unsigned i = 0; i < k; ++i)
            pl.entries.push_back({ 1 + unsigned(rng() % 12), 1 + rng() % 60, 2 + unsigned(rng() % 4) });
        pl.t = 1 + rng() % uint64_t(unit_rank_sum(pl));
        auto gs = check_gs_inequality(pl);
        t.expect(gs.margin == oracle::margin(pl.params, pl.entries, pl.t), "margin disagrees with the oracle");
        t.expect(gs.margin == 4 * (rational(bigint(gs.d_lower) * gs.d_lower, 4) - gs.d_lower - gs.rd_upper),
                 "margin is not d^2 - 4d - 4(r - d)");
        t.expect(gs.infinite == gs_margin_raw(gs.d_lower, gs.rd_upper), "margin sign disagrees with the raw test");
        int64_t g = 2 + int64_t(rng() % 400);
        auto c = certify_tower(g, pl);
        if (c.infinite) t.expect(*c.bound_refined > *c.bound, "refined bound does not exceed the plain bound");
    }
}

void properties(tally & t)
{
    synthetic_spectra(t);
    decomposition_balance(t);
    random_plans(t);
}

void residuals(tally & t)
{
    for (auto nc : covers) {
        auto cover = load_cover(nc);
        auto s = assemble_spectrum(cover, 2);
        for (unsigned n = 1; n <= 2; ++n) {
            auto r = brute_force_compositum_count(cover, n, s);
            t.expect(r.residual == 0, fmt::format("{} n={}: residual {}", nc.name, n, r.residual));
        }
    }
}

bool same(search_result const & a, search_result const & b)
{
    if (a.ranked.size() != b.ranked.size() || a.candidates != b.candidates || a.certified != b.certified)
        return false;
    for (size_t i = 0; i < a.ranked.size(); ++i)
        if (a.ranked[i].multiplicities != b.ranked[i].multiplicities || a.ranked[i].plan.t != b.ranked[i].plan.t ||
            *a.ranked[i].certificate.bound_refined != *b.ranked[i].certificate.bound_refined)
            return false;
    return true;
}

void optimizer(tally & t)
{
    for (auto const * cfg : { "f2_tower1", "f2_tower2", "f3_tower" }) {
        auto doc = oracle::shipped(cfg);
        auto space = resolve_search(doc);
        auto first = optimize(space, 1), second = optimize(space, 1), parallel = optimize(space, 4);
        t.expect(same(first, second), std::string(cfg) + ": two runs differ");
        t.expect(same(first, parallel), std::string(cfg) + ": worker count changes the result");
        auto injected = check_injected(doc, space, first);
        t.expect(!injected.empty(), std::string(cfg) + ": no plan injected");
        auto const & top = *first.ranked.front().certificate.bound_refined;
        for (auto const & ip : injected) {
            t.expect(ip.location.has_value(), ip.name + " lies outside the search space");
            auto rp = resolve_plan(doc, ip.name);
            t.expect(ip.dominated && top >= bound_refined(rp.genus, rp.plan),
                     ip.name + " beats the top ranked plan");
        }
    }
}

} // namespace

int main()
{
    struct criterion {
        char const * title;
        std::function<void(tally &)> run;
    };
    criterion const all[] = {
        { "place spectra of curves and covers", spectra },
        { "genera from conductors and zeta checks", genera_and_zeta },
        { "tower inequality margins and certification", certification },
        { "exact bounds", bounds },
        { "method comparison pairs", comparisons },
        { "property suites", properties },
        { "direct count residuals", residuals },
        { "optimizer dominance and determinism", optimizer },
    };
    int failed = 0;
    for (size_t i = 0; i < std::size(all); ++i) {
        tally t;
        try {
            all[i].run(t);
        } catch (std::exception const & e) {
            t.failures.push_back(std::string("exception: ") + e.what());
        }
        bool ok = t.failures.empty();
        fmt::print("criterion {}: {} {} ({} checks)\n", i + 1, ok ? "PASS" : "FAIL", all[i].title, t.checks);
        for (size_t j = 0; j < t.failures.size() && j < 10; ++j) fmt::print("    {}\n", t.failures[j]);
        failed += !ok;
    }
    return failed ? 1 : 0;
}
