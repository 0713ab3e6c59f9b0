#ifndef CFTOWER_CURVE_HPP_
#define CFTOWER_CURVE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cftower/ff.hpp"
#include "cftower/poly.hpp"

namespace cftower {

/* "count places of the given degree", written count@degree in configs */
struct place_count {
    unsigned degree = 1;
    uint64_t count = 0;
    bool operator==(place_count const &) const = default;
};

/* An affine plane model F(x, y) = 0 over F_q. The places at infinity are
 * part of the model data; they are never computed. */
struct curve_model {
    std::string name;
    field_params params;
    mpoly equation;
    std::vector<place_count> infinity;
    unsigned declared_genus = 0;

    /* the unverified statements attached to this model */
    std::vector<std::string> assumptions() const;
};

curve_model make_curve_model(std::string name, field_params params, std::string const & equation,
                             std::vector<place_count> infinity, unsigned genus);

/* A place of degree d: one representative point over F_{q^d} per Galois
 * orbit of exact size d (the smallest (x, y) in the orbit), or a tagged
 * place at infinity. */
struct place {
    unsigned degree = 1;
    bool at_infinity = false;
    unsigned infinity_index = 0;
    ext_field::elem x = 0, y = 0;

    std::string to_string() const;
    bool operator==(place const &) const = default;
};

struct place_spectrum {
    field_params params;
    unsigned genus = 0;
    std::vector<int64_t> a;     /* a[d-1] = number of places of degree d */
    std::vector<int64_t> N;     /* N[n-1] = number of points over F_{q^n} */

    unsigned max_degree() const { return unsigned(a.size()); }
    int64_t places(unsigned d) const { return d >= 1 && d <= a.size() ? a[d - 1] : 0; }
    int64_t points(unsigned n) const { return n >= 1 && n <= N.size() ? N[n - 1] : 0; }
};

int moebius(unsigned n);

/* N_n = sum_{d | n} d a_d */
std::vector<int64_t> counts_from_places(std::span<int64_t const> a);

/* a_d = (1/d) sum_{m | d} mu(d/m) N_m; std::nullopt when some a_d is not a
 * nonnegative integer */
std::optional<std::vector<int64_t>> places_from_counts(std::span<int64_t const> N);

/* |N_n - (q^n + 1)| <= 2 g q^(n/2), exactly */
bool weil_bound_holds(uint64_t q, unsigned genus, unsigned n, int64_t N_n);

place_spectrum make_spectrum(field_params params, unsigned genus, std::vector<int64_t> a);

void for_each_affine_point(curve_model const & model, ext_field const & F,
                           std::function<void(ext_field::elem, ext_field::elem)> const & fn);

uint64_t count_points(curve_model const & model, unsigned n);

/* Throws errc::inconsistent_model on a negative or fractional a_d, or when
 * the counts violate the Weil bound for the declared genus. */
place_spectrum spectrum_from_counts(curve_model const & model, unsigned dmax);

std::vector<place> enumerate_places(curve_model const & model, unsigned d);

/* the orbit of p under x -> x^q, starting at p itself */
std::vector<place> conjugates(field_params params, place const & p);

struct zeta_report {
    unsigned genus = 0;
    uint64_t q = 0;
    std::vector<int64_t> L;             /* numerator coefficients b_0..b_{2g} */
    struct prediction {
        unsigned n;
        int64_t predicted;
        int64_t actual;
    };
    std::vector<prediction> predictions;
    std::optional<bool> roots_on_circle;    /* decided exactly for g <= 2 */
    bool pass = false;
    std::string discrepancy;
};

/* Rebuilds L(T) from N_1..N_g and the functional equation, compares the
 * predicted N_n with every stored count, and for genus <= 2 checks that
 * all reciprocal roots have absolute value sqrt(q). Throws
 * errc::functional_equation_violation with the discrepancy on failure. */
zeta_report zeta_check(place_spectrum const & spectrum);
/* the same, without throwing */
zeta_report zeta_analyse(place_spectrum const & spectrum);

} // namespace cftower

#endif /* CFTOWER_CURVE_HPP_ */
