#include <doctest.h>

#include <random>
#include <set>

#include "cftower/error.hpp"
#include "cftower/ff.hpp"
#include "support.hpp"

using namespace cftower;

namespace {

/* every field with at most 2^12 elements over a small prime */
std::vector<std::pair<field_params, unsigned>> small_fields()
{
    std::vector<std::pair<field_params, unsigned>> out;
    for (uint32_t p : { 2u, 3u, 5u, 7u }) {
        for (unsigned n = 1;; ++n) {
            uint64_t size = 1;
            for (unsigned i = 0; i < n; ++i) size *= p;
            if (size > 4096) break;
            out.push_back({ field_params::make(p), n });
        }
    }
    out.push_back({ field_params::make(2, 2), 3 });
    out.push_back({ field_params::make(3, 2), 2 });
    return out;
}

} // namespace

TEST_CASE("field sizes")
{
    CHECK(make_ext_field(field_params::make(2), 1).size() == 2);
    CHECK(make_ext_field(field_params::make(2), 10).size() == 1024);
    CHECK(make_ext_field(field_params::make(3), 9).size() == 19683);
    CHECK(make_ext_field(field_params::make(2, 2), 3).size() == 64);
    CHECK(make_ext_field(field_params::make(2, 2), 3).q() == 4);
}

TEST_CASE("construction errors")
{
    auto code_of = [](auto && fn) {
        try {
            fn();
        } catch (error const & e) {
            return e.code();
        }
        FAIL("no error raised");
        return errc::config_error;
    };
    CHECK(code_of([] { field_params::make(4); }) == errc::not_prime);
    CHECK(code_of([] { field_params::make(1); }) == errc::not_prime);
    CHECK(code_of([] { make_ext_field(field_params::make(2), 21); }) == errc::unsupported_size);
    CHECK(code_of([] { make_ext_field(field_params::make(2, 4), 6); }) == errc::unsupported_size);
}

TEST_CASE("trace in F_4")
{
    auto F = make_ext_field(field_params::make(2), 2);
    auto g = F.generator();
    CHECK(F.mul(g, g) == F.add(g, F.one()));
    CHECK(F.absolute_trace(F.zero()) == 0);
    CHECK(F.absolute_trace(F.one()) == 0);
    CHECK(F.absolute_trace(g) == 1);
}

TEST_CASE("element enumeration")
{
    auto count = [](unsigned p, unsigned n) {
        auto F = make_ext_field(field_params::make(p), n);
        std::set<uint64_t> seen;
        for (auto x : F.elements()) seen.insert(x);
        return std::pair(seen.size(), F.size());
    };
    CHECK(count(2, 1) == std::pair<size_t, uint64_t>(2, 2));
    CHECK(count(2, 3) == std::pair<size_t, uint64_t>(8, 8));
    CHECK(count(3, 5) == std::pair<size_t, uint64_t>(243, 243));
}

TEST_CASE("moduli are the smallest irreducibles")
{
    for (auto [params, n] : small_fields()) {
        auto F = make_ext_field(params, n);
        uint32_t p = params.p;
        unsigned N = F.abs_degree();
        CAPTURE(p);
        CAPTURE(N);
        auto const & m = F.modulus();
        REQUIRE(m.size() == N + 1);
        CHECK(m.back() == 1);
        CHECK(oracle::irreducible_by_trial_division(m, p));
        /* every monic polynomial with a smaller code is reducible */
        uint64_t mcode = oracle::code(std::vector<uint32_t>(m.begin(), m.end() - 1), p);
        for (uint64_t c = 0; c < mcode; ++c) {
            auto f = oracle::digits(uint32_t(c), p, N);
            f.push_back(1);
            CHECK_FALSE(oracle::irreducible_by_trial_division(f, p));
        }
    }
}

TEST_CASE("irreducibility test against trial division")
{
    for (uint32_t p : { 2u, 3u }) {
        unsigned maxdeg = p == 2 ? 9 : 6;
        for (unsigned d = 1; d <= maxdeg; ++d) {
            uint64_t count = 1;
            for (unsigned i = 0; i < d; ++i) count *= p;
            for (uint64_t c = 0; c < count; ++c) {
                auto f = oracle::digits(uint32_t(c), p, d);
                f.push_back(1);
                CHECK(fp_poly::is_irreducible(f, p) == oracle::irreducible_by_trial_division(f, p));
            }
        }
    }
}

TEST_CASE("field axioms and Frobenius, exhaustively")
{
    std::mt19937_64 rng(7);
    for (auto [params, n] : small_fields()) {
        auto F = make_ext_field(params, n);
        uint32_t p = params.p;
        unsigned N = F.abs_degree();
        uint64_t size = F.size();
        CAPTURE(p);
        CAPTURE(N);

        std::map<uint32_t, uint64_t> trace_hist;
        bool frob_ok = true, inv_ok = true, trace_ok = true;
        for (uint64_t a = 0; a < size; ++a) {
            uint32_t x = uint32_t(a);
            uint32_t y = x;
            for (unsigned i = 0; i < N; ++i) y = F.frobenius(y);
            frob_ok &= y == x;
            frob_ok &= F.frobenius(x) == oracle::power(F, x, p);
            if (x) inv_ok &= oracle::multiply(F, x, F.inv(x)) == 1;
            uint32_t tr = F.absolute_trace(x);
            trace_ok &= tr == oracle::trace(F, x) && tr == F.trace_by_frobenius(x) && tr < p;
            ++trace_hist[tr];
        }
        CHECK(frob_ok);
        CHECK(inv_ok);
        CHECK(trace_ok);
        /* each value of F_p is taken p^(N-1) times */
        CHECK(trace_hist.size() == p);
        for (auto [v, c] : trace_hist) CHECK(c == size / p);

        std::uniform_int_distribution<uint32_t> pick(0, uint32_t(size - 1));
        unsigned trials = size <= 64 ? 0 : 3000;
        auto check_pair = [&](uint32_t a, uint32_t b) {
            bool ok = F.mul(a, b) == oracle::multiply(F, a, b);
            ok &= F.absolute_trace(F.add(a, b)) == (F.absolute_trace(a) + F.absolute_trace(b)) % p;
            ok &= F.sub(F.add(a, b), b) == a;
            ok &= F.add(a, F.neg(a)) == 0;
            return ok;
        };
        bool pairs_ok = true;
        if (trials == 0) {
            for (uint32_t a = 0; a < size; ++a)
                for (uint32_t b = 0; b < size; ++b) pairs_ok &= check_pair(a, b);
        } else {
            for (unsigned i = 0; i < trials; ++i) pairs_ok &= check_pair(pick(rng), pick(rng));
        }
        CHECK(pairs_ok);

        /* the fixed points of x -> x^(q^m) form a subfield of q^m elements */
        for (unsigned m = 1; m <= n; ++m) {
            if (n % m) continue;
            std::vector<uint32_t> sub;
            for (uint64_t a = 0; a < size; ++a)
                if (F.in_subfield(uint32_t(a), m)) sub.push_back(uint32_t(a));
            uint64_t expect = 1;
            for (unsigned i = 0; i < m; ++i) expect *= F.q();
            CHECK(sub.size() == expect);
            std::set<uint32_t> s(sub.begin(), sub.end());
            bool closed = true;
            for (unsigned i = 0; i < 200; ++i) {
                uint32_t a = sub[rng() % sub.size()], b = sub[rng() % sub.size()];
                closed &= s.count(F.add(a, b)) && s.count(F.mul(a, b));
            }
            CHECK(closed);
        }
    }
}

TEST_CASE("pow, digits and generator order")
{
    auto F = make_ext_field(field_params::make(3), 4);
    auto g = F.generator();
    CHECK(F.pow(g, 0) == 1);
    CHECK(F.pow(g, 80) == 1);
    for (uint32_t a : { 0u, 1u, 5u, 42u, 80u })
        CHECK(F.from_digits(F.digits(a)) == a);
    CHECK(F.from_int(-1) == 2);
    CHECK(F.from_int(7) == 1);
}

TEST_CASE("quadratic roots match a scan")
{
    std::mt19937_64 rng(11);
    for (auto [p, n] : { std::pair { 2u, 4u }, std::pair { 3u, 3u }, std::pair { 2u, 7u }, std::pair { 5u, 2u } }) {
        auto F = make_ext_field(field_params::make(p), n);
        for (int trial = 0; trial < 60; ++trial) {
            uint32_t c2 = uint32_t(rng() % F.size()), c1 = uint32_t(rng() % F.size()),
                     c0 = uint32_t(rng() % F.size());
            if (trial % 3 == 0) c1 = 0;
            std::set<uint32_t> want;
            for (uint32_t z = 0; z < F.size(); ++z)
                if (F.add(F.add(F.mul(c2, F.mul(z, z)), F.mul(c1, z)), c0) == 0) want.insert(z);
            if (c2 == 0 && c1 == 0 && c0 == 0) continue;
            auto got = F.quadratic_roots(c2, c1, c0);
            CHECK(std::set<uint32_t>(got.begin(), got.end()) == want);
            CHECK(got.size() == want.size());
        }
    }
}

TEST_CASE("field embeddings are injective ring maps")
{
    for (auto [p, m, n] : { std::tuple { 2u, 2u, 4u }, std::tuple { 2u, 3u, 6u }, std::tuple { 3u, 1u, 3u },
                            std::tuple { 3u, 2u, 4u } }) {
        auto S = make_ext_field(field_params::make(p), m);
        auto L = make_ext_field(field_params::make(p), n);
        field_embedding phi(S, L);
        std::set<uint32_t> image;
        bool hom = true;
        for (uint32_t a = 0; a < S.size(); ++a) {
            image.insert(phi(a));
            hom &= L.in_subfield(phi(a), m);
            for (uint32_t b = 0; b < S.size(); ++b) {
                hom &= phi(S.add(a, b)) == L.add(phi(a), phi(b));
                hom &= phi(S.mul(a, b)) == L.mul(phi(a), phi(b));
            }
        }
        CHECK(hom);
        CHECK(image.size() == S.size());
        CHECK(phi(1) == 1);
    }
}
