#ifndef CFTOWER_FF_HPP_
#define CFTOWER_FF_HPP_

#include <cstdint>
#include <memory>
#include <ranges>
#include <span>
#include <string>
#include <vector>

namespace cftower {

/* The constant field F_q, q = p^e. */
struct field_params {
    uint32_t p = 2;
    uint32_t e = 1;

    uint64_t q() const;

    /* Throws errc::not_prime for composite p, errc::unsupported_size if
     * e is zero or q does not fit the element encoding. */
    static field_params make(uint32_t p, uint32_t e = 1);

    bool operator==(field_params const &) const = default;
};

bool is_prime(uint64_t n);

namespace detail { struct field_data; }

/* The extension F_{q^n} of F_q, realized as F_p[X]/(m(X)) with m the
 * lexicographically smallest monic irreducible polynomial of degree e*n.
 *
 * Elements are value types: an element is its base-p code
 * sum_i c_i p^i, where c_i is the coefficient of X^i. Arithmetic goes
 * through log/antilog tables when the field has at most 2^20 elements,
 * and through polynomial arithmetic otherwise.
 *
 * Objects are cheap to copy and immutable; share them freely between
 * threads.
 */
class ext_field {
  public:
    using elem = uint32_t;

    static constexpr unsigned max_abs_degree = 20;
    static constexpr uint64_t max_enumerable = uint64_t(1) << 20;

    ext_field(field_params params, unsigned n);

    field_params const & params() const;
    uint32_t characteristic() const;
    unsigned degree() const;        /* n, over F_q */
    unsigned abs_degree() const;    /* e*n, over F_p */
    uint64_t size() const;
    uint64_t q() const { return params().q(); }

    /* coefficients of the modulus, constant term first; monic */
    std::vector<uint32_t> const & modulus() const;

    elem zero() const { return 0; }
    elem one() const { return 1; }
    elem from_int(int64_t c) const;
    /* the class of X; equals from_int(p) as a code when e*n > 1 */
    elem generator() const;

    elem add(elem a, elem b) const;
    elem sub(elem a, elem b) const;
    elem neg(elem a) const;
    elem mul(elem a, elem b) const;
    elem inv(elem a) const;
    elem pow(elem a, uint64_t k) const;

    /* x -> x^p */
    elem frobenius(elem a) const;
    /* x -> x^(q^times) */
    elem frobenius_q(elem a, unsigned times = 1) const;

    /* Tr_{F_{q^n}/F_p}, via the trace form on the power basis */
    uint32_t absolute_trace(elem a) const;
    /* the same map, as sum_{i<e*n} a^(p^i); kept as a cross-check */
    uint32_t trace_by_frobenius(elem a) const;

    /* a^(q^m) == a */
    bool in_subfield(elem a, unsigned m) const;

    std::vector<uint32_t> digits(elem a) const;
    elem from_digits(std::span<uint32_t const> d) const;

    /* Every element exactly once, in code order. Throws
     * errc::unsupported_size above max_enumerable. */
    std::ranges::iota_view<uint64_t, uint64_t> elements() const;

    /* All roots of c2*y^2 + c1*y + c0 in this field. Throws
     * errc::inconsistent_model when the polynomial is identically 0. */
    std::vector<elem> quadratic_roots(elem c2, elem c1, elem c0) const;

    std::string to_string(elem a) const;

    bool operator==(ext_field const & o) const { return data_ == o.data_; }

  private:
    std::shared_ptr<detail::field_data const> data_;
    detail::field_data const & d() const { return *data_; }
};

/* An embedding F_{q^m} -> F_{q^n} for m | n: the class of X goes to the
 * smallest root of the small field's modulus in the large field. */
class field_embedding {
  public:
    field_embedding(ext_field small, ext_field large);
    ext_field::elem operator()(ext_field::elem a) const;
    ext_field const & small() const { return small_; }
    ext_field const & large() const { return large_; }

  private:
    ext_field small_, large_;
    std::vector<ext_field::elem> basis_images_;
};

/* Cached construction; the same (p, e, n) always yields the same object. */
ext_field make_ext_field(field_params params, unsigned n);

/* Polynomials over F_p, constant term first. Exposed for tests. */
namespace fp_poly {
    using poly = std::vector<uint32_t>;
    void trim(poly & a);
    poly mul_mod(poly const & a, poly const & b, poly const & m, uint32_t p);
    poly rem(poly a, poly const & m, uint32_t p);
    poly gcd(poly a, poly b, uint32_t p);
    /* Ben-Or test: no factor of degree <= deg/2 */
    bool is_irreducible(poly const & f, uint32_t p);
    /* lexicographically smallest monic irreducible of the given degree */
    poly smallest_irreducible(unsigned degree, uint32_t p);
}

} // namespace cftower

#endif /* CFTOWER_FF_HPP_ */
