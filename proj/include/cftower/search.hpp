#ifndef CFTOWER_SEARCH_HPP_
#define CFTOWER_SEARCH_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "cftower/cft.hpp"
#include "cftower/curve.hpp"

namespace cftower {

/* Plans are multiplicity vectors over the slots (degree f, exponent nu);
 * places of equal degree are interchangeable. */
struct search_space {
    place_spectrum spectrum;
    int64_t base_genus = 0;
    std::vector<unsigned> nus;          /* default {p} */
    std::vector<uint64_t> t_values;     /* default {a_1} */
    unsigned min_degree = 5;
    unsigned max_degree = 10;
    uint64_t multiplicity_cap = 200;    /* per degree, on top of a_f */
    size_t top_n = 10;
    uint64_t max_candidates = 50'000'000;
};

search_space default_search_space(place_spectrum spectrum, int64_t base_genus);

struct search_slot {
    unsigned degree;
    unsigned nu;
    bool operator==(search_slot const &) const = default;
};

std::vector<search_slot> search_slots(search_space const & space);
uint64_t count_candidates(search_space const & space);

/* the multiplicity vector of a plan over the slots of the space, or
 * nothing when the plan lies outside the space */
std::optional<std::vector<uint64_t>> locate_in_space(search_space const & space,
                                                     ramification_plan const & plan);

struct ranked_plan {
    ramification_plan plan;
    std::vector<uint64_t> multiplicities;
    tower_certificate certificate;
};

struct search_result {
    std::vector<search_slot> slots;
    std::vector<ranked_plan> ranked;    /* best first */
    uint64_t candidates = 0;            /* enumerated */
    uint64_t certified = 0;             /* of those, certified infinite */
};

/* Every candidate is evaluated; ranking is by refined bound, descending,
 * ties to the lexicographically smaller multiplicity vector, then the
 * smaller t. The result does not depend on `jobs`. Throws
 * errc::empty_space when nothing certifies and errc::config_error when the
 * space exceeds max_candidates. */
search_result optimize(search_space const & space, unsigned jobs = 1);

struct method_comparison_input {
    int64_t s = 0;          /* completely ramified rational places */
    int64_t l = 0;          /* rank of Gal(K/k) */
    int64_t t = 0;          /* split rational places */
    int64_t s_prime = 0;    /* ramified places included in T_k */
    int64_t T_size = 0;     /* |T| in K */
    uint32_t p = 2;
};

struct inequality_pair {
    int64_t d_lower = 0;
    int64_t rd_upper = 0;
    bool infinite = false;
};

struct method_comparison {
    inequality_pair usual;
    inequality_pair ours;
};

method_comparison compare_methods(method_comparison_input const & in);

} // namespace cftower

#endif /* CFTOWER_SEARCH_HPP_ */
