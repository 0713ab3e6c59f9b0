#include "cftower/ff.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

#include "cftower/error.hpp"

namespace cftower {

bool is_prime(uint64_t n)
{
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

static constexpr uint64_t code_limit = uint64_t(1) << 32;

static uint64_t checked_power(uint64_t base, unsigned exp)
{
    uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        r *= base;
        if (r >= code_limit)
            throw error(errc::unsupported_size,
                        fmt::format("{}^{} does not fit the element encoding", base, exp));
    }
    return r;
}

uint64_t field_params::q() const
{
    return checked_power(p, e);
}

field_params field_params::make(uint32_t p, uint32_t e)
{
    if (!is_prime(p))
        throw error(errc::not_prime, fmt::format("characteristic {} is not prime", p));
    if (e == 0)
        throw error(errc::unsupported_size, "extension degree e must be positive");
    field_params fp { p, e };
    (void) fp.q();
    return fp;
}

/* {{{ polynomials over F_p */
namespace fp_poly {

static uint32_t inv_mod(uint32_t a, uint32_t p)
{
    uint64_t r = 1, b = a % p;
    for (uint32_t k = p - 2; k; k >>= 1) {
        if (k & 1) r = r * b % p;
        b = b * b % p;
    }
    return uint32_t(r);
}

void trim(poly & a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

poly rem(poly a, poly const & m, uint32_t p)
{
    trim(a);
    poly mm = m;
    trim(mm);
    if (mm.empty()) throw std::domain_error("polynomial division by zero");
    size_t dm = mm.size() - 1;
    uint32_t lead_inv = inv_mod(mm.back(), p);
    while (a.size() > dm) {
        uint64_t c = uint64_t(a.back()) * lead_inv % p;
        size_t shift = a.size() - 1 - dm;
        for (size_t j = 0; j <= dm; ++j)
            a[shift + j] = uint32_t((a[shift + j] + (p - c) * mm[j]) % p);
        trim(a);
    }
    return a;
}

poly mul_mod(poly const & a, poly const & b, poly const & m, uint32_t p)
{
    if (a.empty() || b.empty()) return {};
    poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = uint32_t((r[i + j] + uint64_t(a[i]) * b[j]) % p);
    }
    return rem(std::move(r), m, p);
}

poly gcd(poly a, poly b, uint32_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint32_t li = inv_mod(a.back(), p);
        for (auto & c : a) c = uint32_t(uint64_t(c) * li % p);
    }
    return a;
}

bool is_irreducible(poly const & f0, uint32_t p)
{
    poly f = f0;
    trim(f);
    if (f.size() < 2) return false;
    size_t deg = f.size() - 1;
    if (deg == 1) return true;
    poly const x { 0, 1 };
    poly h = x;
    for (size_t i = 1; i <= deg / 2; ++i) {
        /* h <- h^p mod f */
        poly acc { 1 };
        for (uint32_t k = 0; k < p; ++k) acc = mul_mod(acc, h, f, p);
        h = acc;
        poly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = (hx[1] + p - 1) % p;
        trim(hx);
        poly g = gcd(hx, f, p);
        if (g.size() > 1) return false;
    }
    return true;
}

poly smallest_irreducible(unsigned degree, uint32_t p)
{
    uint64_t count = checked_power(p, degree);
    for (uint64_t code = 0; code < count; ++code) {
        poly f(degree + 1, 0);
        uint64_t c = code;
        for (unsigned i = 0; i < degree; ++i, c /= p) f[i] = uint32_t(c % p);
        f[degree] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

} // namespace fp_poly
/* }}} */

namespace detail {

struct field_data {
    field_params params;
    unsigned n = 1;
    unsigned N = 1;
    uint32_t p = 2;
    uint64_t size = 2;
    std::vector<uint32_t> modulus;
    std::vector<uint64_t> pw;           /* p^i, i <= N */
    std::vector<uint32_t> trace_form;   /* Tr(X^i) */

    bool tabled = false;
    std::vector<uint32_t> exp_table;    /* length 2*(size-1) */
    std::vector<uint32_t> log_table;

    mutable std::once_flag preimage_once;
    /* z -> z^2+z (p = 2) or z -> z^2 (p odd), inverted; absent = ~0 */
    mutable std::vector<uint32_t> preimage;

    void digits_of(uint32_t a, uint32_t * out) const
    {
        for (unsigned i = 0; i < N; ++i, a /= p) out[i] = a % p;
    }
    uint32_t code_of(uint32_t const * dg) const
    {
        uint64_t r = 0;
        for (unsigned i = N; i-- > 0;) r = r * p + dg[i];
        return uint32_t(r);
    }

    uint32_t add(uint32_t a, uint32_t b) const
    {
        if (p == 2) return a ^ b;
        uint64_t r = 0, w = 1;
        while (a || b) {
            r += w * ((a % p + b % p) % p);
            w *= p;
            a /= p;
            b /= p;
        }
        return uint32_t(r);
    }
    uint32_t neg(uint32_t a) const
    {
        if (p == 2) return a;
        uint64_t r = 0, w = 1;
        for (; a; a /= p, w *= p) r += w * ((p - a % p) % p);
        return uint32_t(r);
    }

    uint32_t mul_generic(uint32_t a, uint32_t b) const
    {
        if (p == 2) {
            uint64_t r = 0;
            for (unsigned i = 0; i < N; ++i)
                if (b >> i & 1) r ^= uint64_t(a) << i;
            uint64_t m = 0;
            for (unsigned i = 0; i <= N; ++i) m |= uint64_t(modulus[i]) << i;
            for (unsigned k = 2 * N; k-- > N;)
                if (r >> k & 1) r ^= m << (k - N);
            return uint32_t(r);
        }
        uint32_t da[max_digits], db[max_digits];
        uint64_t r[2 * max_digits] = {};
        digits_of(a, da);
        digits_of(b, db);
        for (unsigned i = 0; i < N; ++i) {
            if (!da[i]) continue;
            for (unsigned j = 0; j < N; ++j) r[i + j] += uint64_t(da[i]) * db[j];
        }
        for (unsigned k = 2 * N - 1; k-- > N;) {
            uint64_t c = r[k] % p;
            if (!c) continue;
            for (unsigned j = 0; j < N; ++j)
                r[k - N + j] += (p - c) * modulus[j];
        }
        uint32_t out[max_digits];
        for (unsigned i = 0; i < N; ++i) out[i] = uint32_t(r[i] % p);
        return code_of(out);
    }

    uint32_t mul(uint32_t a, uint32_t b) const
    {
        if (!a || !b) return 0;
        if (tabled) return exp_table[log_table[a] + log_table[b]];
        return mul_generic(a, b);
    }

    uint32_t pow(uint32_t a, uint64_t k) const
    {
        uint32_t r = 1;
        while (k) {
            if (k & 1) r = mul(r, a);
            a = mul(a, a);
            k >>= 1;
        }
        return r;
    }

    static constexpr unsigned max_digits = ext_field::max_abs_degree;
};

} // namespace detail

static std::vector<uint64_t> prime_factors(uint64_t n)
{
    std::vector<uint64_t> f;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        f.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) f.push_back(n);
    return f;
}

ext_field::ext_field(field_params params, unsigned n)
{
    if (!is_prime(params.p))
        throw error(errc::not_prime, fmt::format("characteristic {} is not prime", params.p));
    if (n == 0 || params.e == 0)
        throw error(errc::unsupported_size, "extension degree must be positive");
    unsigned N = params.e * n;
    if (N > max_abs_degree)
        throw error(errc::unsupported_size,
                    fmt::format("F_{{{}^{}}} exceeds the degree cap {}", params.p, N, max_abs_degree));

    auto data = std::make_shared<detail::field_data>();
    data->params = params;
    data->n = n;
    data->N = N;
    data->p = params.p;
    data->size = checked_power(params.p, N);
    data->pw.resize(N + 1);
    data->pw[0] = 1;
    for (unsigned i = 1; i <= N; ++i) data->pw[i] = data->pw[i - 1] * params.p;
    data->modulus = fp_poly::smallest_irreducible(N, params.p);

    if (data->size <= max_enumerable) {
        uint64_t order = data->size - 1;
        auto factors = prime_factors(order);
        uint32_t g = 0;
        for (uint64_t c = 1; c < data->size; ++c) {
            bool primitive = std::all_of(factors.begin(), factors.end(), [&](uint64_t l) {
                return data->pow(uint32_t(c), order / l) != 1;
            });
            if (primitive) { g = uint32_t(c); break; }
        }
        assert(g != 0);
        data->exp_table.resize(2 * order);
        data->log_table.assign(data->size, 0);
        uint32_t x = 1;
        for (uint64_t i = 0; i < order; ++i) {
            data->exp_table[i] = data->exp_table[i + order] = x;
            data->log_table[x] = uint32_t(i);
            x = data->mul_generic(x, g);
        }
        data->tabled = true;
    }

    data_ = data;
    data->trace_form.resize(N);
    uint32_t xi = 1;
    for (unsigned i = 0; i < N; ++i) {
        data->trace_form[i] = trace_by_frobenius(xi);
        xi = data->mul(xi, generator());
    }
}

field_params const & ext_field::params() const { return d().params; }
uint32_t ext_field::characteristic() const { return d().p; }
unsigned ext_field::degree() const { return d().n; }
unsigned ext_field::abs_degree() const { return d().N; }
uint64_t ext_field::size() const { return d().size; }
std::vector<uint32_t> const & ext_field::modulus() const { return d().modulus; }

ext_field::elem ext_field::from_int(int64_t c) const
{
    int64_t p = d().p;
    return elem(((c % p) + p) % p);
}

ext_field::elem ext_field::generator() const
{
    if (d().N > 1) return d().p;
    return neg(d().modulus[0]);
}

ext_field::elem ext_field::add(elem a, elem b) const { return d().add(a, b); }
ext_field::elem ext_field::sub(elem a, elem b) const { return d().add(a, d().neg(b)); }
ext_field::elem ext_field::neg(elem a) const { return d().neg(a); }
ext_field::elem ext_field::mul(elem a, elem b) const { return d().mul(a, b); }

ext_field::elem ext_field::inv(elem a) const
{
    if (!a) throw std::domain_error("inverse of zero");
    if (d().tabled) {
        uint64_t order = d().size - 1;
        return d().exp_table[(order - d().log_table[a]) % order];
    }
    return d().pow(a, d().size - 2);
}

ext_field::elem ext_field::pow(elem a, uint64_t k) const { return d().pow(a, k); }

ext_field::elem ext_field::frobenius(elem a) const { return d().pow(a, d().p); }

ext_field::elem ext_field::frobenius_q(elem a, unsigned times) const
{
    uint64_t q = params().q();
    for (unsigned i = 0; i < times; ++i) a = d().pow(a, q);
    return a;
}

uint32_t ext_field::trace_by_frobenius(elem a) const
{
    elem acc = a, s = a;
    for (unsigned i = 1; i < d().N; ++i) {
        s = frobenius(s);
        acc = add(acc, s);
    }
    assert(acc < d().p);
    return acc;
}

uint32_t ext_field::absolute_trace(elem a) const
{
    uint64_t acc = 0;
    uint32_t const p = d().p;
    for (unsigned i = 0; i < d().N && a; ++i, a /= p)
        acc += uint64_t(a % p) * d().trace_form[i];
    return uint32_t(acc % p);
}

bool ext_field::in_subfield(elem a, unsigned m) const
{
    return frobenius_q(a, m) == a;
}

std::vector<uint32_t> ext_field::digits(elem a) const
{
    std::vector<uint32_t> out(d().N);
    d().digits_of(a, out.data());
    return out;
}

ext_field::elem ext_field::from_digits(std::span<uint32_t const> dg) const
{
    uint32_t buf[detail::field_data::max_digits] = {};
    for (size_t i = 0; i < dg.size(); ++i) {
        if (i >= d().N) {
            if (dg[i] % d().p)
                throw std::invalid_argument("digit vector longer than the field degree");
            continue;
        }
        buf[i] = dg[i] % d().p;
    }
    return d().code_of(buf);
}

std::ranges::iota_view<uint64_t, uint64_t> ext_field::elements() const
{
    if (size() > max_enumerable)
        throw error(errc::unsupported_size,
                    fmt::format("field of size {} is too large to enumerate", size()));
    return std::views::iota(uint64_t(0), size());
}

std::vector<ext_field::elem> ext_field::quadratic_roots(elem c2, elem c1, elem c0) const
{
    if (!c2) {
        if (!c1) {
            if (!c0)
                throw error(errc::inconsistent_model,
                            "equation vanishes identically on a vertical line");
            return {};
        }
        return { mul(neg(c0), inv(c1)) };
    }
    if (size() > max_enumerable)
        throw error(errc::unsupported_size, "quadratic solving needs an enumerable field");
    auto const & D = d();
    std::call_once(D.preimage_once, [&D] {
        D.preimage.assign(D.size, ~uint32_t(0));
        for (uint64_t z = D.size; z-- > 0;) {
            uint32_t zz = D.mul(uint32_t(z), uint32_t(z));
            uint32_t v = D.p == 2 ? (zz ^ uint32_t(z)) : zz;
            D.preimage[v] = uint32_t(z);
        }
    });
    elem ic2 = inv(c2);
    std::vector<elem> roots;
    if (D.p == 2) {
        elem b = mul(c1, ic2), c = mul(c0, ic2);
        if (!b) return { pow(c, D.size / 2) };
        elem w = mul(c, inv(mul(b, b)));
        elem z = D.preimage[w];
        if (z == ~uint32_t(0)) return {};
        roots = { mul(b, z), mul(b, z ^ 1) };
    } else {
        elem disc = sub(mul(c1, c1), mul(from_int(4), mul(c2, c0)));
        elem s = D.preimage[disc];
        if (s == ~uint32_t(0)) return {};
        elem den = inv(mul(from_int(2), c2));
        roots.push_back(mul(sub(s, c1), den));
        if (s) roots.push_back(mul(sub(neg(s), c1), den));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::string ext_field::to_string(elem a) const
{
    if (!a) return "0";
    auto dg = digits(a);
    std::string s;
    for (unsigned i = d().N; i-- > 0;) {
        if (!dg[i]) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || dg[i] != 1) s += std::to_string(dg[i]);
        if (i >= 1) s += "X";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

field_embedding::field_embedding(ext_field small, ext_field large)
    : small_(std::move(small)), large_(std::move(large))
{
    if (!(small_.params() == large_.params()) || large_.degree() % small_.degree())
        throw std::invalid_argument("no embedding between these fields");
    auto const & m = small_.modulus();
    ext_field::elem root = 0;
    bool found = false;
    for (uint64_t c : large_.elements()) {
        ext_field::elem acc = 0;
        for (size_t i = m.size(); i-- > 0;)
            acc = large_.add(large_.mul(acc, ext_field::elem(c)), large_.from_int(m[i]));
        if (acc == 0) { root = ext_field::elem(c); found = true; break; }
    }
    if (!found) throw std::logic_error("modulus has no root in the larger field");
    ext_field::elem pw = large_.one();
    for (unsigned i = 0; i < small_.abs_degree(); ++i) {
        basis_images_.push_back(pw);
        pw = large_.mul(pw, root);
    }
}

ext_field::elem field_embedding::operator()(ext_field::elem a) const
{
    auto dg = small_.digits(a);
    ext_field::elem r = 0;
    for (size_t i = 0; i < dg.size(); ++i)
        if (dg[i]) r = large_.add(r, large_.mul(large_.from_int(dg[i]), basis_images_[i]));
    return r;
}

ext_field make_ext_field(field_params params, unsigned n)
{
    static std::mutex mutex;
    static std::map<std::tuple<uint32_t, uint32_t, unsigned>, ext_field> cache;
    auto key = std::make_tuple(params.p, params.e, n);
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    ext_field f(params, n);
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(f)).first->second;
}

} // namespace cftower
