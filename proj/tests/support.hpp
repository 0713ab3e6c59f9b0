// Independent oracles shared by the unit tests and the acceptance binary.
// None of them call the library routine they are used to check.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cftower/cft.hpp"
#include "cftower/config.hpp"
#include "cftower/curve.hpp"
#include "cftower/ff.hpp"
#include "cftower/poly.hpp"

namespace oracle {

using cftower::ext_field;
using elem = ext_field::elem;
using poly = std::vector<uint32_t>;

inline std::filesystem::path config_dir() { return CFTOWER_CONFIG_DIR; }

inline cftower::config_document shipped(std::string const & name)
{
    return cftower::load_config(config_dir() / (name + ".cfg"));
}

/* f mod g over F_p by schoolbook long division; g monic */
inline poly remainder(poly f, poly const & g, uint32_t p)
{
    size_t dg = g.size() - 1;
    while (f.size() > dg) {
        uint32_t lead = f.back();
        size_t shift = f.size() - 1 - dg;
        for (size_t i = 0; i <= dg; ++i) f[shift + i] = (f[shift + i] + (p - lead) * g[i]) % p;
        while (!f.empty() && f.back() == 0) f.pop_back();
        if (f.size() - 1 < dg) break;
    }
    return f;
}

/* monic f is irreducible iff no monic polynomial of degree 1..deg/2 divides it */
inline bool irreducible_by_trial_division(poly const & f, uint32_t p)
{
    size_t n = f.size() - 1;
    for (size_t d = 1; d <= n / 2; ++d) {
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (uint64_t code = 0; code < count; ++code) {
            poly g(d + 1, 0);
            uint64_t c = code;
            for (size_t i = 0; i < d; ++i, c /= p) g[i] = uint32_t(c % p);
            g[d] = 1;
            if (remainder(f, g, p).empty()) return false;
        }
    }
    return true;
}

inline std::vector<uint32_t> digits(elem a, uint32_t p, unsigned N)
{
    std::vector<uint32_t> d(N);
    for (unsigned i = 0; i < N; ++i, a /= p) d[i] = a % p;
    return d;
}

inline elem code(std::vector<uint32_t> const & d, uint32_t p)
{
    elem r = 0;
    for (size_t i = d.size(); i-- > 0;) r = r * p + d[i];
    return r;
}

/* product through the modulus by schoolbook multiplication */
inline elem multiply(ext_field const & F, elem a, elem b)
{
    uint32_t p = F.characteristic();
    unsigned N = F.abs_degree();
    auto da = digits(a, p, N), db = digits(b, p, N);
    poly r(2 * N, 0);
    for (unsigned i = 0; i < N; ++i)
        for (unsigned j = 0; j < N; ++j) r[i + j] = (r[i + j] + da[i] * db[j]) % p;
    while (!r.empty() && r.back() == 0) r.pop_back();
    r = remainder(r, F.modulus(), p);
    r.resize(N, 0);
    return code(r, p);
}

inline elem power(ext_field const & F, elem a, uint64_t k)
{
    elem r = 1;
    for (uint64_t i = 0; i < k; ++i) r = multiply(F, r, a);
    return r;
}

/* sum of the e*n Frobenius conjugates, read off as a prime field value */
inline uint32_t trace(ext_field const & F, elem a)
{
    elem s = 0, c = a;
    for (unsigned i = 0; i < F.abs_degree(); ++i) {
        s = F.add(s, c);
        c = F.pow(c, F.characteristic());
    }
    return s;
}

/* polynomial value by summing terms, each built from repeated products */
inline elem evaluate(ext_field const & F, cftower::mpoly const & f, std::map<std::string, elem> const & at)
{
    elem s = 0;
    for (auto const & [mono, c] : f.terms()) {
        elem t = F.from_int(c);
        for (auto const & [var, k] : mono)
            for (unsigned i = 0; i < k; ++i) t = F.mul(t, at.at(var));
        s = F.add(s, t);
    }
    return s;
}

/* every affine point over F, enumerated directly; y^2 = f(x) curves use a
 * table of square roots so that F_{3^9} stays cheap */
inline std::vector<std::pair<elem, elem>> affine_points(cftower::curve_model const & m, ext_field const & F)
{
    std::vector<std::pair<elem, elem>> pts;
    auto cy = m.equation.coefficients_in("y");
    bool pure_square = cy.size() == 3 && cy[1].is_zero() && cy[2].variables().empty();
    if (pure_square) {
        std::vector<std::vector<elem>> roots(F.size());
        for (elem y = 0; y < F.size(); ++y) roots[F.mul(y, y)].push_back(y);
        elem lead = F.from_int(cy[2].terms().begin()->second);
        for (elem x = 0; x < F.size(); ++x) {
            /* lead y^2 + c0(x) = 0 */
            elem c0 = evaluate(F, cy[0], { { "x", x } });
            elem target = F.mul(F.neg(c0), F.inv(lead));
            for (elem y : roots[target]) pts.push_back({ x, y });
        }
        return pts;
    }
    for (elem x = 0; x < F.size(); ++x)
        for (elem y = 0; y < F.size(); ++y)
            if (evaluate(F, m.equation, { { "x", x }, { "y", y } }) == 0) pts.push_back({ x, y });
    return pts;
}

/* smallest d | n with x and y both fixed by x -> x^(q^d) */
inline unsigned field_of_definition(ext_field const & F, elem x, elem y)
{
    unsigned n = F.degree();
    uint64_t q = F.q();
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d) continue;
        uint64_t qd = 1;
        for (unsigned i = 0; i < d; ++i) qd *= q;
        if (F.pow(x, qd) == x && F.pow(y, qd) == y) return d;
    }
    return n;
}

inline int64_t infinity_points(cftower::curve_model const & m, unsigned n)
{
    int64_t s = 0;
    for (auto const & pc : m.infinity)
        if (n % pc.degree == 0) s += int64_t(pc.degree * pc.count);
    return s;
}

/* The tower inequality in its (d, r - d) form, evaluated with plain
 * integers from per-place data: 4 (d^2/4 - d - (r - d)). */
inline mpz_class margin(cftower::field_params params, std::vector<cftower::plan_entry> const & S, uint64_t t)
{
    mpz_class rank = 0, rd = 0;
    for (auto const & e : S) {
        mpz_class ef = mpz_class(params.e) * e.degree;
        mpz_class nu1 = e.nu - 1;
        rank += mpz_class(e.count) * ef * (nu1 - nu1 / params.p);
        mpz_class k = ef * nu1;
        rd += mpz_class(e.count) * (k * (k + 1) / 2);
    }
    mpz_class d = 1 + rank - mpz_class(t);
    rd += mpz_class(t) - 1;
    return d * d - 4 * d - 4 * rd;
}

inline mpq_class plain_bound(int64_t g, std::vector<cftower::plan_entry> const & S, uint64_t t)
{
    mpq_class den = g - 1;
    for (auto const & e : S) den += mpq_class(mpz_class(e.count) * e.degree * e.nu, 2);
    mpq_class r = mpq_class(mpz_class(t)) / den;
    r.canonicalize();
    return r;
}

inline mpq_class refined_bound(int64_t g, uint64_t q, std::vector<cftower::plan_entry> const & S, uint64_t t)
{
    mpq_class den = g - 1;
    for (auto const & e : S) {
        mpz_class qf;
        mpz_ui_pow_ui(qf.get_mpz_t(), q, e.degree);
        den += mpq_class(mpz_class(e.count) * e.degree * e.nu, 2) * (1 - mpq_class(1, 1) / qf);
    }
    mpq_class r = mpq_class(mpz_class(t)) / den;
    r.canonicalize();
    return r;
}

} // namespace oracle
