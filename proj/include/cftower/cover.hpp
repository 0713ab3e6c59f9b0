#ifndef CFTOWER_COVER_HPP_
#define CFTOWER_COVER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cftower/cft.hpp"
#include "cftower/curve.hpp"
#include "cftower/poly.hpp"

namespace cftower {

/* One Artin-Schreier piece v^p - A^(p-1) v = B of an elementary abelian
 * p-cover. With w = v/A it reads w^p - w = u, u = B/A^p. */
struct as_component {
    std::string label;
    mpoly A;
    mpoly B;
};

/* A base place whose behaviour in the cover is declared rather than
 * computed: the conductor support, and any place where A vanishes.
 * The place is located either as the zeros of a polynomial among the
 * places of the given degree (optionally the index-th one in
 * representative order), or by a representative point over F_{q^degree}. */
struct declared_place {
    std::string name;
    unsigned degree = 1;
    std::optional<mpoly> zero_of;
    std::optional<unsigned> index;
    std::optional<std::pair<ext_field::elem, ext_field::elem>> point;
    uint64_t count = 1;                     /* how many base places this entry names */
    std::optional<unsigned> conductor_exponent;
    std::vector<place_count> above;         /* places of the cover above each of them */
};

struct cover_spec {
    std::string name;
    curve_model base;
    std::vector<as_component> components;
    std::vector<std::string> h_basis;
    std::vector<declared_place> declared;
    std::vector<place_count> infinity_above;   /* above all base places at infinity */
    std::optional<conductor_profile> profile;
    std::optional<unsigned> declared_genus;

    unsigned rank() const { return unsigned(components.size()); }
    uint64_t degree() const;                    /* p^rank */
    std::vector<std::string> assumptions() const;
};

/* Components v^p - A^(p-1) v = B[h := b] for b in h_basis. */
std::vector<as_component> components_from_basis(field_params params, std::string const & A,
                                                std::string const & B_template,
                                                std::vector<std::string> const & h_basis);

struct decomposition_record {
    place base_place;
    std::vector<uint32_t> frobenius_vector;
    std::vector<place_count> places_above;
};

/* Frobenius vector (absolute traces of the u_i at the representative)
 * and the resulting splitting. Throws errc::ramified_place for declared
 * places and places at infinity, errc::pole_at_place where A vanishes at
 * an undeclared place. Requires e = 1. */
decomposition_record decompose_place(cover_spec const & cover, place const & p);

/* a declared place resolved to concrete base places */
struct resolved_declared {
    declared_place const * decl;
    std::vector<place> places;
};
std::vector<resolved_declared> resolve_declared(cover_spec const & cover, unsigned max_degree);

int64_t cover_genus(cover_spec const & cover);

place_spectrum assemble_spectrum(cover_spec const & cover, unsigned dmax, unsigned jobs = 1);

struct compositum_count {
    unsigned n = 1;
    uint64_t affine_total = 0;          /* solutions (x, y, v_1..v_r) over F_{q^n} */
    uint64_t affine_over_declared = 0;  /* of those, with (x, y) on a declared place */
    int64_t spectrum_points = 0;        /* sum_{d | n} d a_d of the assembled spectrum */
    int64_t declared_points = 0;        /* points of the cover over declared places and infinity */
    int64_t residual = 0;               /* (affine_total - affine_over_declared)
                                           - (spectrum_points - declared_points) */
};

/* Direct count of the full system by enumerating every v_i, compared
 * with the assembled spectrum. */
compositum_count brute_force_compositum_count(cover_spec const & cover, unsigned n);
compositum_count brute_force_compositum_count(cover_spec const & cover, unsigned n,
                                              place_spectrum const & assembled);

} // namespace cftower

#endif /* CFTOWER_COVER_HPP_ */
