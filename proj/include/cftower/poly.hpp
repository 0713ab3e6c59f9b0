#ifndef CFTOWER_POLY_HPP_
#define CFTOWER_POLY_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cftower/ff.hpp"

namespace cftower {

/* Multivariate polynomial with coefficients in F_p and named variables.
 * Used for curve equations and cover data; evaluation goes through
 * poly_evaluator. */
class mpoly {
  public:
    using monomial = std::map<std::string, unsigned>;

    mpoly() = default;
    explicit mpoly(uint32_t p) : p_(p) {}
    static mpoly constant(uint32_t p, int64_t c);
    static mpoly variable(uint32_t p, std::string const & name);

    uint32_t characteristic() const { return p_; }
    std::map<monomial, uint32_t> const & terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::vector<std::string> variables() const;
    unsigned degree_in(std::string const & var) const;
    /* c_0, ..., c_d with *this = sum_j c_j var^j */
    std::vector<mpoly> coefficients_in(std::string const & var) const;
    mpoly substitute(std::string const & var, mpoly const & value) const;

    mpoly operator+(mpoly const & o) const;
    mpoly operator-(mpoly const & o) const;
    mpoly operator*(mpoly const & o) const;
    mpoly operator-() const;
    mpoly pow(unsigned k) const;

    bool operator==(mpoly const & o) const = default;

    std::string to_string() const;

  private:
    uint32_t p_ = 2;
    std::map<monomial, uint32_t> terms_;
    void add_term(monomial const & m, uint64_t c);
};

/* Grammar: integers, identifiers, + - * ^ and parentheses; an optional
 * single '=' turns "lhs = rhs" into lhs - rhs. Coefficients reduce mod p.
 * Throws errc::parse_error. */
mpoly parse_polynomial(std::string_view text, uint32_t p);
mpoly parse_equation(std::string_view text, uint32_t p);

/* A polynomial compiled against a fixed variable order. */
class poly_evaluator {
  public:
    poly_evaluator() = default;
    poly_evaluator(mpoly const & f, std::vector<std::string> const & order);

    ext_field::elem operator()(ext_field const & F, std::span<ext_field::elem const> values) const;
    std::size_t arity() const { return arity_; }

  private:
    struct term {
        uint32_t coeff;
        std::vector<unsigned> exps;
    };
    std::vector<term> terms_;
    std::vector<unsigned> max_exp_;
    std::size_t arity_ = 0;
};

} // namespace cftower

#endif /* CFTOWER_POLY_HPP_ */
