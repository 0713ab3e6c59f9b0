#include "cftower/poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <fmt/format.h>

#include "cftower/error.hpp"

namespace cftower {

mpoly mpoly::constant(uint32_t p, int64_t c)
{
    mpoly r(p);
    int64_t v = ((c % int64_t(p)) + p) % p;
    r.add_term({}, uint64_t(v));
    return r;
}

mpoly mpoly::variable(uint32_t p, std::string const & name)
{
    mpoly r(p);
    r.add_term({ { name, 1 } }, 1);
    return r;
}

void mpoly::add_term(monomial const & m, uint64_t c)
{
    c %= p_;
    if (!c) return;
    auto [it, inserted] = terms_.emplace(m, uint32_t(c));
    if (inserted) return;
    it->second = uint32_t((it->second + c) % p_);
    if (!it->second) terms_.erase(it);
}

std::vector<std::string> mpoly::variables() const
{
    std::set<std::string> s;
    for (auto const & [m, c] : terms_)
        for (auto const & [v, e] : m) s.insert(v);
    return { s.begin(), s.end() };
}

unsigned mpoly::degree_in(std::string const & var) const
{
    unsigned d = 0;
    for (auto const & [m, c] : terms_) {
        auto it = m.find(var);
        if (it != m.end()) d = std::max(d, it->second);
    }
    return d;
}

std::vector<mpoly> mpoly::coefficients_in(std::string const & var) const
{
    std::vector<mpoly> out(degree_in(var) + 1, mpoly(p_));
    for (auto const & [m, c] : terms_) {
        monomial rest = m;
        unsigned e = 0;
        if (auto it = rest.find(var); it != rest.end()) {
            e = it->second;
            rest.erase(it);
        }
        out[e].add_term(rest, c);
    }
    return out;
}

mpoly mpoly::substitute(std::string const & var, mpoly const & value) const
{
    auto cs = coefficients_in(var);
    mpoly r(p_), pw = constant(p_, 1);
    for (auto const & c : cs) {
        r = r + c * pw;
        pw = pw * value;
    }
    return r;
}

mpoly mpoly::operator+(mpoly const & o) const
{
    mpoly r = *this;
    for (auto const & [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

mpoly mpoly::operator-() const
{
    mpoly r(p_);
    for (auto const & [m, c] : terms_) r.add_term(m, p_ - c);
    return r;
}

mpoly mpoly::operator-(mpoly const & o) const
{
    return *this + (-o);
}

mpoly mpoly::operator*(mpoly const & o) const
{
    mpoly r(p_);
    for (auto const & [ma, ca] : terms_)
        for (auto const & [mb, cb] : o.terms_) {
            monomial m = ma;
            for (auto const & [v, e] : mb) m[v] += e;
            r.add_term(m, uint64_t(ca) * cb);
        }
    return r;
}

mpoly mpoly::pow(unsigned k) const
{
    mpoly r = constant(p_, 1), b = *this;
    for (; k; k >>= 1) {
        if (k & 1) r = r * b;
        if (k > 1) b = b * b;
    }
    return r;
}

std::string mpoly::to_string() const
{
    if (terms_.empty()) return "0";
    std::string s;
    /* highest total degree first */
    std::vector<std::pair<monomial, uint32_t>> ts(terms_.begin(), terms_.end());
    auto total = [](monomial const & m) {
        unsigned t = 0;
        for (auto const & [v, e] : m) t += e;
        return t;
    };
    std::stable_sort(ts.begin(), ts.end(), [&](auto const & a, auto const & b) {
        return total(a.first) > total(b.first);
    });
    for (auto const & [m, c] : ts) {
        if (!s.empty()) s += " + ";
        std::string mono;
        for (auto const & [v, e] : m) {
            if (!mono.empty()) mono += "*";
            mono += v;
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            s += std::to_string(c);
        else if (c == 1)
            s += mono;
        else
            s += std::to_string(c) + "*" + mono;
    }
    return s;
}

/* {{{ parser */
namespace {

class parser {
    std::string_view s_;
    size_t pos_ = 0;
    uint32_t p_;

    [[noreturn]] void fail(std::string const & msg) const
    {
        throw error(errc::parse_error,
                    fmt::format("{} at offset {} in \"{}\"", msg, pos_, s_));
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    uint64_t number()
    {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected a number");
        uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + uint64_t(s_[pos_++] - '0');
            if (v > (uint64_t(1) << 40)) fail("number too large");
        }
        return v;
    }

    mpoly atom()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            mpoly r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return mpoly::constant(p_, int64_t(number() % p_));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t b = pos_;
            while (pos_ < s_.size()
                   && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return mpoly::variable(p_, std::string(s_.substr(b, pos_ - b)));
        }
        fail(fmt::format("unexpected character '{}'", c));
    }
    mpoly power()
    {
        mpoly a = atom();
        if (eat('^')) {
            uint64_t k = number();
            if (k > 4096) fail("exponent too large");
            a = a.pow(unsigned(k));
        }
        return a;
    }
    mpoly unary()
    {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    mpoly term()
    {
        mpoly a = unary();
        while (eat('*')) a = a * unary();
        return a;
    }

  public:
    parser(std::string_view s, uint32_t p) : s_(s), p_(p) {}

    mpoly expr()
    {
        mpoly a = term();
        for (;;) {
            if (eat('+')) a = a + term();
            else if (eat('-')) a = a - term();
            else return a;
        }
    }
    bool at_end()
    {
        skip();
        return pos_ == s_.size();
    }
    size_t pos() const { return pos_; }
    void expect_end()
    {
        if (!at_end()) fail("trailing input");
    }
};

} // namespace

mpoly parse_polynomial(std::string_view text, uint32_t p)
{
    parser ps(text, p);
    mpoly r = ps.expr();
    ps.expect_end();
    return r;
}

mpoly parse_equation(std::string_view text, uint32_t p)
{
    auto eq = text.find('=');
    if (eq == std::string_view::npos) return parse_polynomial(text, p);
    if (text.find('=', eq + 1) != std::string_view::npos)
        throw error(errc::parse_error, fmt::format("more than one '=' in \"{}\"", text));
    return parse_polynomial(text.substr(0, eq), p) - parse_polynomial(text.substr(eq + 1), p);
}
/* }}} */

poly_evaluator::poly_evaluator(mpoly const & f, std::vector<std::string> const & order)
    : max_exp_(order.size(), 0), arity_(order.size())
{
    for (auto const & [m, c] : f.terms()) {
        term t { c, std::vector<unsigned>(order.size(), 0) };
        for (auto const & [v, e] : m) {
            auto it = std::find(order.begin(), order.end(), v);
            if (it == order.end())
                throw error(errc::config_error,
                            fmt::format("unexpected variable '{}' in {}", v, f.to_string()));
            size_t i = size_t(it - order.begin());
            t.exps[i] = e;
            max_exp_[i] = std::max(max_exp_[i], e);
        }
        terms_.push_back(std::move(t));
    }
}

ext_field::elem poly_evaluator::operator()(ext_field const & F,
                                           std::span<ext_field::elem const> values) const
{
    /* power tables per variable, then one pass over the terms */
    std::vector<std::vector<ext_field::elem>> pw(arity_);
    for (size_t i = 0; i < arity_; ++i) {
        pw[i].resize(max_exp_[i] + 1);
        pw[i][0] = F.one();
        for (unsigned e = 1; e <= max_exp_[i]; ++e) pw[i][e] = F.mul(pw[i][e - 1], values[i]);
    }
    ext_field::elem acc = F.zero();
    for (auto const & t : terms_) {
        ext_field::elem v = F.from_int(t.coeff);
        for (size_t i = 0; i < arity_ && v; ++i)
            if (t.exps[i]) v = F.mul(v, pw[i][t.exps[i]]);
        acc = F.add(acc, v);
    }
    return acc;
}

} // namespace cftower
