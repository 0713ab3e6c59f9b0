#ifndef CFTOWER_CONFIG_HPP_
#define CFTOWER_CONFIG_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cftower/cft.hpp"
#include "cftower/cover.hpp"
#include "cftower/curve.hpp"
#include "cftower/search.hpp"

namespace cftower {

/* A plan either names a curve or cover (its spectrum then validates the
 * plan and supplies the genus) or states the genus directly. */
struct plan_spec {
    std::string name;
    std::optional<std::string> source;
    std::optional<int64_t> genus;
    ramification_plan plan;
};

struct search_spec {
    std::string source;
    std::optional<int64_t> genus;
    std::vector<unsigned> nus;
    std::vector<uint64_t> t_values;     /* empty: a_1 of the source */
    unsigned min_degree = 5;
    unsigned max_degree = 10;
    uint64_t multiplicity_cap = 200;
    size_t top_n = 10;
    uint64_t max_candidates = 50'000'000;
    std::vector<std::string> inject;    /* plans that must lie in the space */
};

struct compare_spec {
    std::string name;
    method_comparison_input input;
};

struct config_document {
    field_params field;
    std::map<std::string, curve_model> curves;
    std::map<std::string, cover_spec> covers;
    std::map<std::string, conductor_profile> profiles;
    std::map<std::string, plan_spec> plans;
    std::map<std::string, compare_spec> comparisons;
    std::optional<search_spec> search;
    /* section names in file order, for listings */
    std::vector<std::string> plan_order, compare_order;
};

/* Strict line-oriented format:
 *
 *   # comment
 *   [field]            p, e
 *   [curve NAME]       equation, infinity, genus
 *   [cover NAME]       base, A, B, basis, infinity_above, profile, genus
 *   [place NAME]       cover, degree, zero_of | point, index, count,
 *                      exponent, above
 *   [profile NAME]     order, conductors
 *   [plan NAME]        source | genus, t, S
 *   [search]           source, genus, nu, t, degrees, cap, top,
 *                      max_candidates, inject
 *   [compare NAME]     s, l, t, s_prime, T, p
 *
 * Place counts are written count@degree, plan entries count:degree:nu,
 * conductor degrees degree:characters. Unknown sections or keys, missing
 * required keys and dangling names raise errc::config_error with the line
 * number. */
config_document parse_config(std::string_view text);
config_document load_config(std::filesystem::path const & path);

/* "a..b" ranges and comma lists, e.g. "150..155, 160" */
std::vector<uint64_t> parse_uint_list(std::string const & text);

std::vector<place_count> parse_place_counts(std::string const & text);
std::string format_place_counts(std::vector<place_count> const & v);

/* genus of a named curve or cover */
int64_t source_genus(config_document const & doc, std::string const & name);
/* spectrum of a named curve or cover up to dmax */
place_spectrum source_spectrum(config_document const & doc, std::string const & name,
                               unsigned dmax, unsigned jobs = 1);

/* a plan ready for certify_tower, with the spectrum attached when the
 * plan names a source */
struct resolved_plan {
    int64_t genus = 0;
    ramification_plan plan;
};
resolved_plan resolve_plan(config_document const & doc, std::string const & name,
                           unsigned jobs = 1);

search_space resolve_search(config_document const & doc, unsigned jobs = 1);

} // namespace cftower

#endif /* CFTOWER_CONFIG_HPP_ */
