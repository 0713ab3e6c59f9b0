#ifndef CFTOWER_CFT_HPP_
#define CFTOWER_CFT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cftower/curve.hpp"
#include "cftower/ff.hpp"

namespace cftower {

using bigint = mpz_class;
using rational = mpq_class;

/* count places of degree `degree` in S, each with conductor exponent nu */
struct plan_entry {
    unsigned degree = 1;
    uint64_t count = 1;
    unsigned nu = 2;
    bool operator==(plan_entry const &) const = default;
};

/* The ramification set S with its conductor exponents, and the number t
 * of rational places required to split completely. */
struct ramification_plan {
    field_params params;
    std::vector<plan_entry> entries;
    uint64_t t = 0;
    std::optional<place_spectrum> available;
};

/* Throws errc::invalid_plan: nu < 2, zero degree or count, t = 0, or more
 * places requested than the available spectrum has. */
void validate_plan(ramification_plan const & plan);

/* f e (nu - 1 - floor((nu - 1)/p)) */
int64_t local_unit_rank(field_params params, unsigned f, unsigned nu);

/* sum of local_unit_rank over S, with multiplicity */
int64_t unit_rank_sum(ramification_plan const & plan);

/* t <= sum of the local unit ranks */
bool side_condition_holds(ramification_plan const & plan);

/* 1 + sum local_unit_rank - t */
int64_t generator_rank_lower(ramification_plan const & plan);

/* e f (nu-1) (e f (nu-1) + 1) / 2, bounding r - d of a decomposition group */
int64_t local_rd_bound(field_params params, unsigned f, unsigned nu);

struct gs_result {
    int64_t d_lower = 0;
    int64_t rd_upper = 0;       /* sum local_rd_bound + t - 1 */
    bigint margin;              /* left side of the tower inequality */
    bool infinite = false;      /* margin >= 0 */
    bool consistent = false;    /* margin >= 0 agrees with gs_margin_raw(d, rd) */
};

/* Throws errc::side_condition_violated when t exceeds the unit rank sum. */
gs_result check_gs_inequality(ramification_plan const & plan);

/* rd <= d^2/4 - d, i.e. the Golod-Shafarevich bound is contradicted.
 * Always false for d <= 0. */
bool gs_margin_raw(int64_t d, int64_t rd);

struct conductor_profile {
    /* (degree of the conductor, number of nontrivial characters) */
    std::vector<std::pair<uint64_t, uint64_t>> degrees;
    uint64_t group_order = 1;
};

/* ([K:F](2 g_F - 2) + sum deg f_chi)/2 + 1. Throws errc::parity_violation
 * for an odd right-hand side and errc::invalid_profile when the
 * multiplicities do not add up to [K:F] - 1. */
int64_t genus_from_conductors(int64_t base_genus, conductor_profile const & profile);

struct tower_certificate {
    int64_t base_genus = 0;
    uint64_t t = 0;
    int64_t d_lower = 0;
    int64_t rd_upper = 0;
    bigint gs_margin;
    bool side_condition = false;
    bool infinite = false;
    std::optional<rational> bound;
    std::optional<rational> bound_refined;
    std::vector<std::string> warnings;
};

/* Never throws for an invalid tower; the certificate records why. Throws
 * errc::invalid_plan for malformed plans. */
tower_certificate certify_tower(int64_t base_genus, ramification_plan const & plan);

/* t / (g - 1 + sum f nu / 2); errc::not_certified unless the plan is
 * certified infinite */
rational bound_plain(int64_t base_genus, ramification_plan const & plan);

/* t / (g - 1 + sum f nu (1 - q^-f) / 2) */
rational bound_refined(int64_t base_genus, ramification_plan const & plan);

/* t / (g - 1); errc::degenerate_genus for g <= 1 */
rational asymptotic_ratio(bigint const & t_split, bigint const & genus);

/* Decimal expansion of a nonnegative rational cut (not rounded) after
 * `digits` places. */
std::string truncated_decimal(rational const & r, unsigned digits = 12);

std::string format_entries(std::vector<plan_entry> const & entries);
/* inverse of format_entries: "count:degree:nu, ..." */
std::vector<plan_entry> parse_entries(std::string const & text);

} // namespace cftower

#endif /* CFTOWER_CFT_HPP_ */
