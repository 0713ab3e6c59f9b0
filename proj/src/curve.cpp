#include "cftower/curve.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

#include <fmt/format.h>

#include "cftower/error.hpp"

namespace cftower {

std::vector<std::string> curve_model::assumptions() const
{
    std::vector<std::string> out;
    out.push_back(fmt::format("curve {}: equation assumed absolutely irreducible", name));
    std::string inf;
    for (auto const & pc : infinity)
        inf += fmt::format("{}{}@{}", inf.empty() ? "" : ", ", pc.count, pc.degree);
    out.push_back(fmt::format("curve {}: places at infinity declared as [{}]", name, inf));
    if (declared_genus > 2)
        out.push_back(fmt::format("curve {}: genus {} declared, not verified by zeta check",
                                  name, declared_genus));
    return out;
}

curve_model make_curve_model(std::string name, field_params params, std::string const & equation,
                             std::vector<place_count> infinity, unsigned genus)
{
    curve_model m;
    m.name = std::move(name);
    m.params = params;
    m.equation = parse_equation(equation, params.p);
    for (auto const & v : m.equation.variables())
        if (v != "x" && v != "y")
            throw error(errc::config_error,
                        fmt::format("curve {}: equation may only use x and y, found '{}'", m.name, v));
    m.infinity = std::move(infinity);
    m.declared_genus = genus;
    return m;
}

std::string place::to_string() const
{
    if (at_infinity) return fmt::format("deg {} inf#{}", degree, infinity_index);
    return fmt::format("deg {} x={} y={}", degree, x, y);
}

int moebius(unsigned n)
{
    int mu = 1;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        n /= d;
        if (n % d == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

std::vector<int64_t> counts_from_places(std::span<int64_t const> a)
{
    std::vector<int64_t> N(a.size(), 0);
    for (size_t n = 1; n <= a.size(); ++n)
        for (size_t d = 1; d <= n; ++d)
            if (n % d == 0) N[n - 1] += int64_t(d) * a[d - 1];
    return N;
}

std::optional<std::vector<int64_t>> places_from_counts(std::span<int64_t const> N)
{
    std::vector<int64_t> a(N.size(), 0);
    for (size_t d = 1; d <= N.size(); ++d) {
        int64_t s = 0;
        for (size_t m = 1; m <= d; ++m)
            if (d % m == 0) s += moebius(unsigned(d / m)) * N[m - 1];
        if (s < 0 || s % int64_t(d)) return std::nullopt;
        a[d - 1] = s / int64_t(d);
    }
    return a;
}

bool weil_bound_holds(uint64_t q, unsigned genus, unsigned n, int64_t N_n)
{
    __int128 qn = 1;
    for (unsigned i = 0; i < n; ++i) qn *= q;
    __int128 dev = __int128(N_n) - qn - 1;
    return dev * dev <= __int128(4) * genus * genus * qn;
}

place_spectrum make_spectrum(field_params params, unsigned genus, std::vector<int64_t> a)
{
    place_spectrum s;
    s.params = params;
    s.genus = genus;
    s.N = counts_from_places(a);
    s.a = std::move(a);
    return s;
}

void for_each_affine_point(curve_model const & model, ext_field const & F,
                           std::function<void(ext_field::elem, ext_field::elem)> const & fn)
{
    auto cs = model.equation.coefficients_in("y");
    std::vector<poly_evaluator> ev;
    for (auto const & c : cs) ev.emplace_back(c, std::vector<std::string> { "x" });

    if (cs.size() <= 3) {
        for (uint64_t xi : F.elements()) {
            ext_field::elem x = ext_field::elem(xi);
            std::array<ext_field::elem, 3> c {};
            for (size_t j = 0; j < cs.size(); ++j) c[j] = ev[j](F, std::span(&x, 1));
            if (cs.size() == 1 && c[0] == 0)
                throw error(errc::inconsistent_model,
                            fmt::format("curve {}: equation vanishes on a vertical line", model.name));
            if (cs.size() == 1) continue;
            for (auto y : F.quadratic_roots(c[2], c[1], c[0])) fn(x, y);
        }
        return;
    }
    poly_evaluator full(model.equation, { "x", "y" });
    for (uint64_t xi : F.elements())
        for (uint64_t yi : F.elements()) {
            std::array<ext_field::elem, 2> pt { ext_field::elem(xi), ext_field::elem(yi) };
            if (full(F, pt) == 0) fn(pt[0], pt[1]);
        }
}

uint64_t count_points(curve_model const & model, unsigned n)
{
    ext_field F = make_ext_field(model.params, n);
    uint64_t count = 0;
    for_each_affine_point(model, F, [&](auto, auto) { ++count; });
    for (auto const & pc : model.infinity)
        if (n % pc.degree == 0) count += pc.degree * pc.count;
    return count;
}

place_spectrum spectrum_from_counts(curve_model const & model, unsigned dmax)
{
    std::vector<int64_t> N;
    for (unsigned n = 1; n <= dmax; ++n) N.push_back(int64_t(count_points(model, n)));
    auto a = places_from_counts(N);
    if (!a)
        throw error(errc::inconsistent_model,
                    fmt::format("curve {}: point counts do not invert to a place spectrum", model.name));
    place_spectrum s;
    s.params = model.params;
    s.genus = model.declared_genus;
    s.a = std::move(*a);
    s.N = std::move(N);
    uint64_t q = model.params.q();
    for (unsigned n = 1; n <= dmax; ++n)
        if (!weil_bound_holds(q, s.genus, n, s.N[n - 1]))
            throw error(errc::inconsistent_model,
                        fmt::format("curve {}: N_{} = {} violates the Weil bound for genus {}",
                                    model.name, n, s.N[n - 1], s.genus));
    return s;
}

std::vector<place> conjugates(field_params params, place const & p)
{
    if (p.at_infinity) return { p };
    ext_field F = make_ext_field(params, p.degree);
    std::vector<place> out { p };
    place c = p;
    for (;;) {
        c.x = F.frobenius_q(c.x);
        c.y = F.frobenius_q(c.y);
        if (c.x == p.x && c.y == p.y) break;
        out.push_back(c);
    }
    return out;
}

std::vector<place> enumerate_places(curve_model const & model, unsigned d)
{
    ext_field F = make_ext_field(model.params, d);
    std::vector<place> out;
    for_each_affine_point(model, F, [&](ext_field::elem x, ext_field::elem y) {
        ext_field::elem cx = x, cy = y;
        for (unsigned k = 1; k <= d; ++k) {
            cx = F.frobenius_q(cx);
            cy = F.frobenius_q(cy);
            if (cx == x && cy == y) {
                if (k < d) return;      /* defined over a smaller field */
                break;
            }
            if (std::pair(cx, cy) < std::pair(x, y)) return;   /* not the orbit minimum */
        }
        out.push_back(place { d, false, 0, x, y });
    });
    std::sort(out.begin(), out.end(), [](place const & a, place const & b) {
        return std::pair(a.x, a.y) < std::pair(b.x, b.y);
    });
    unsigned idx = 0;
    for (auto const & pc : model.infinity) {
        if (pc.degree != d) continue;
        for (uint64_t i = 0; i < pc.count; ++i) out.push_back(place { d, true, idx++, 0, 0 });
    }
    return out;
}

/* {{{ zeta */
static bool nonneg_plus_sqrt(__int128 a, __int128 b, uint64_t q)
{
    /* a + b sqrt(q) >= 0 */
    if (a >= 0 && b >= 0) return true;
    if (a <= 0 && b <= 0) return a == 0 && b == 0;
    if (a >= 0) return a * a >= b * b * q;
    return b * b * q >= a * a;
}

zeta_report zeta_analyse(place_spectrum const & s)
{
    zeta_report r;
    unsigned g = s.genus;
    uint64_t q = s.params.q();
    r.genus = g;
    r.q = q;
    if (s.N.size() < g) {
        r.discrepancy = fmt::format("need N_1..N_{} but only {} counts are available", g, s.N.size());
        return r;
    }
    size_t nmax = std::max<size_t>(s.N.size(), 2 * g);
    std::vector<__int128> qpow(nmax + 1, 1);
    for (size_t i = 1; i <= nmax; ++i) qpow[i] = qpow[i - 1] * q;

    /* power sums of the reciprocal roots: S_n = q^n + 1 - N_n */
    std::vector<__int128> S(nmax + 1, 0);
    for (unsigned n = 1; n <= g; ++n) S[n] = qpow[n] + 1 - s.N[n - 1];

    std::vector<__int128> b(2 * g + 1, 0);
    b[0] = 1;
    for (unsigned k = 1; k <= g; ++k) {
        __int128 acc = 0;
        for (unsigned i = 1; i <= k; ++i) acc += S[i] * b[k - i];
        if (acc % k) {
            r.discrepancy = fmt::format("Newton identity gives a non-integral coefficient b_{}", k);
            return r;
        }
        b[k] = -acc / k;
    }
    for (unsigned i = 0; i < g; ++i) b[2 * g - i] = qpow[g - i] * b[i];
    for (auto v : b) r.L.push_back(int64_t(v));

    /* S_n for n > g from L */
    for (size_t n = g + 1; n <= nmax; ++n) {
        __int128 acc = 0;
        if (n <= 2 * g) acc += __int128(n) * b[n];
        for (size_t i = 1; i < n && i <= 2 * g; ++i) acc += b[i] * S[n - i];
        S[n] = -acc;
    }
    r.pass = true;
    for (size_t n = g + 1; n <= s.N.size(); ++n) {
        int64_t pred = int64_t(qpow[n] + 1 - S[n]);
        r.predictions.push_back({ unsigned(n), pred, s.N[n - 1] });
        if (pred != s.N[n - 1] && r.pass) {
            r.pass = false;
            r.discrepancy = fmt::format("predicted N_{} = {}, counted {}", n, pred, s.N[n - 1]);
        }
    }
    for (size_t n = 1; n <= s.N.size(); ++n)
        if (!weil_bound_holds(q, g, unsigned(n), s.N[n - 1]) && r.pass) {
            r.pass = false;
            r.discrepancy = fmt::format("N_{} violates the Weil bound", n);
        }

    if (g == 0) {
        r.roots_on_circle = true;
    } else if (g == 1) {
        r.roots_on_circle = b[1] * b[1] <= 4 * __int128(q);
    } else if (g == 2) {
        /* L = prod (1 - beta_i T + q T^2), beta_i roots of z^2 + b1 z + (b2 - 2q) */
        __int128 b1 = b[1], c = b[2] - 2 * __int128(q);
        bool real = b1 * b1 - 4 * c >= 0;
        bool inside = b1 * b1 <= 16 * __int128(q)
                   && nonneg_plus_sqrt(4 * __int128(q) + c, 2 * b1, q)
                   && nonneg_plus_sqrt(4 * __int128(q) + c, -2 * b1, q);
        r.roots_on_circle = real && inside;
    }
    if (r.roots_on_circle && !*r.roots_on_circle && r.pass) {
        r.pass = false;
        r.discrepancy = "a reciprocal root of L(T) does not have absolute value sqrt(q)";
    }
    return r;
}

zeta_report zeta_check(place_spectrum const & spectrum)
{
    auto r = zeta_analyse(spectrum);
    if (!r.pass)
        throw error(errc::functional_equation_violation,
                    fmt::format("zeta check failed (genus {}): {}", spectrum.genus, r.discrepancy));
    return r;
}
/* }}} */

} // namespace cftower
