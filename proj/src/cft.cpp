#include "cftower/cft.hpp"

#include <map>
#include <sstream>

#include <fmt/format.h>

#include "cftower/error.hpp"

namespace cftower {

char const * errc_name(errc c)
{
    switch (c) {
    case errc::unsupported_size: return "UnsupportedSize";
    case errc::not_prime: return "NotPrime";
    case errc::inconsistent_model: return "InconsistentModel";
    case errc::functional_equation_violation: return "FunctionalEquationViolation";
    case errc::ramified_place: return "RamifiedPlace";
    case errc::pole_at_place: return "PoleAtPlace";
    case errc::invalid_plan: return "InvalidPlan";
    case errc::side_condition_violated: return "SideConditionViolated";
    case errc::not_certified: return "NotCertified";
    case errc::degenerate_genus: return "DegenerateGenus";
    case errc::parity_violation: return "ParityViolation";
    case errc::invalid_profile: return "InvalidProfile";
    case errc::empty_space: return "EmptySpace";
    case errc::parse_error: return "ParseError";
    case errc::config_error: return "ConfigError";
    }
    return "Unknown";
}

void validate_plan(ramification_plan const & plan)
{
    if (plan.t == 0) throw error(errc::invalid_plan, "t must be positive");
    std::map<unsigned, uint64_t> per_degree;
    for (auto const & e : plan.entries) {
        if (e.degree == 0 || e.count == 0)
            throw error(errc::invalid_plan, "plan entries need positive degree and count");
        if (e.nu < 2)
            throw error(errc::invalid_plan,
                        fmt::format("conductor exponent {} < 2 contributes no rank", e.nu));
        per_degree[e.degree] += e.count;
    }
    if (!plan.available) return;
    auto const & s = *plan.available;
    for (auto const & [f, c] : per_degree) {
        if (f > s.max_degree())
            throw error(errc::invalid_plan,
                        fmt::format("spectrum only known up to degree {}, plan uses degree {}",
                                    s.max_degree(), f));
        if (int64_t(c) > s.places(f))
            throw error(errc::invalid_plan,
                        fmt::format("plan uses {} places of degree {} but only {} exist", c, f,
                                    s.places(f)));
    }
    uint64_t rational_in_s = per_degree.count(1) ? per_degree[1] : 0;
    if (int64_t(plan.t + rational_in_s) > s.places(1))
        throw error(errc::invalid_plan,
                    fmt::format("t = {} plus {} rational places in S exceeds a_1 = {}", plan.t,
                                rational_in_s, s.places(1)));
}

int64_t local_unit_rank(field_params params, unsigned f, unsigned nu)
{
    if (nu == 0) return 0;
    int64_t m = nu - 1;
    return int64_t(f) * params.e * (m - m / params.p);
}

int64_t unit_rank_sum(ramification_plan const & plan)
{
    int64_t s = 0;
    for (auto const & e : plan.entries)
        s += int64_t(e.count) * local_unit_rank(plan.params, e.degree, e.nu);
    return s;
}

bool side_condition_holds(ramification_plan const & plan)
{
    return int64_t(plan.t) <= unit_rank_sum(plan);
}

int64_t generator_rank_lower(ramification_plan const & plan)
{
    return 1 + unit_rank_sum(plan) - int64_t(plan.t);
}

int64_t local_rd_bound(field_params params, unsigned f, unsigned nu)
{
    int64_t k = int64_t(params.e) * f * (int64_t(nu) - 1);
    return k * (k + 1) / 2;
}

bool gs_margin_raw(int64_t d, int64_t rd)
{
    if (d <= 0) return false;
    /* rd <= d^2/4 - d  <=>  4 rd <= d^2 - 4 d */
    return bigint(4) * rd <= bigint(d) * d - bigint(4) * d;
}

gs_result check_gs_inequality(ramification_plan const & plan)
{
    int64_t rank = unit_rank_sum(plan);
    if (int64_t(plan.t) > rank)
        throw error(errc::side_condition_violated,
                    fmt::format("t = {} exceeds the local unit rank sum {}", plan.t, rank));
    bigint wild = 0;    /* sum e f (nu-1) (e f (nu-1) + 1) */
    int64_t rd_local = 0;
    for (auto const & e : plan.entries) {
        bigint k = bigint(plan.params.e) * e.degree * (e.nu - 1);
        wild += bigint(e.count) * k * (k + 1);
        rd_local += int64_t(e.count) * local_rd_bound(plan.params, e.degree, e.nu);
    }
    gs_result r;
    r.d_lower = 1 + rank - int64_t(plan.t);
    r.rd_upper = rd_local + int64_t(plan.t) - 1;
    bigint d = r.d_lower;
    r.margin = d * d - 2 * wild - 4 * bigint(rank);
    r.infinite = r.margin >= 0;
    r.consistent = r.infinite == gs_margin_raw(r.d_lower, r.rd_upper);
    return r;
}

int64_t genus_from_conductors(int64_t base_genus, conductor_profile const & profile)
{
    uint64_t chars = 0;
    bigint conductor_sum = 0;
    for (auto const & [deg, mult] : profile.degrees) {
        chars += mult;
        conductor_sum += bigint(deg) * mult;
    }
    if (profile.group_order == 0 || chars != profile.group_order - 1)
        throw error(errc::invalid_profile,
                    fmt::format("profile lists {} nontrivial characters for a group of order {}",
                                chars, profile.group_order));
    bigint rhs = bigint(profile.group_order) * (2 * base_genus - 2) + conductor_sum;
    if (rhs % 2 != 0)
        throw error(errc::parity_violation,
                    fmt::format("2g - 2 = {} is odd", rhs.get_str()));
    bigint g = rhs / 2 + 1;
    return g.get_si();
}

static void require_certified(int64_t base_genus, ramification_plan const & plan)
{
    validate_plan(plan);
    auto gs = check_gs_inequality(plan);
    if (!gs.infinite || gs.d_lower < 2)
        throw error(errc::not_certified,
                    fmt::format("tower inequality fails: margin {} (d >= {}, r - d <= {})",
                                gs.margin.get_str(), gs.d_lower, gs.rd_upper));
    (void) base_genus;
}

static rational checked_ratio(uint64_t t, rational const & den)
{
    if (sgn(den) <= 0)
        throw error(errc::degenerate_genus, "nonpositive denominator in the A(q) bound");
    rational r = rational(bigint(t)) / den;
    r.canonicalize();
    return r;
}

rational bound_plain(int64_t base_genus, ramification_plan const & plan)
{
    require_certified(base_genus, plan);
    bigint deg_m = 0;
    for (auto const & e : plan.entries) deg_m += bigint(e.count) * e.degree * e.nu;
    rational den = rational(bigint(base_genus - 1)) + rational(deg_m, 2);
    return checked_ratio(plan.t, den);
}

rational bound_refined(int64_t base_genus, ramification_plan const & plan)
{
    require_certified(base_genus, plan);
    bigint q = plan.params.q();
    rational half_sum = 0;
    for (auto const & e : plan.entries) {
        bigint qf;
        mpz_pow_ui(qf.get_mpz_t(), q.get_mpz_t(), e.degree);
        rational damp = rational(qf - 1, qf);
        damp.canonicalize();
        half_sum += rational(bigint(e.count) * e.degree * e.nu) * damp;
    }
    rational den = rational(bigint(base_genus - 1)) + half_sum / 2;
    return checked_ratio(plan.t, den);
}

rational asymptotic_ratio(bigint const & t_split, bigint const & genus)
{
    if (genus <= 1)
        throw error(errc::degenerate_genus,
                    fmt::format("genus {} leaves no positive g - 1", genus.get_str()));
    rational r(t_split, genus - 1);
    r.canonicalize();
    return r;
}

tower_certificate certify_tower(int64_t base_genus, ramification_plan const & plan)
{
    validate_plan(plan);
    tower_certificate c;
    c.base_genus = base_genus;
    c.t = plan.t;
    c.side_condition = side_condition_holds(plan);
    c.d_lower = generator_rank_lower(plan);
    int64_t rd_local = 0;
    for (auto const & e : plan.entries)
        rd_local += int64_t(e.count) * local_rd_bound(plan.params, e.degree, e.nu);
    c.rd_upper = rd_local + int64_t(plan.t) - 1;
    if (c.side_condition) {
        auto gs = check_gs_inequality(plan);
        c.gs_margin = gs.margin;
    } else {
        bigint d = c.d_lower;
        bigint wild = 0;
        for (auto const & e : plan.entries) {
            bigint k = bigint(plan.params.e) * e.degree * (e.nu - 1);
            wild += bigint(e.count) * k * (k + 1);
        }
        c.gs_margin = d * d - 2 * wild - 4 * bigint(unit_rank_sum(plan));
        c.warnings.push_back(fmt::format("side condition violated: t = {} > unit rank sum {}",
                                         plan.t, unit_rank_sum(plan)));
    }
    c.infinite = c.side_condition && c.gs_margin >= 0 && c.d_lower >= 2;
    if (c.infinite) {
        c.bound = bound_plain(base_genus, plan);
        c.bound_refined = bound_refined(base_genus, plan);
    }
    for (auto const & e : plan.entries) {
        int64_t rank = local_unit_rank(plan.params, e.degree, e.nu);
        if (rank != int64_t(plan.params.e) * e.degree)
            c.warnings.push_back(fmt::format(
                "refinement factor 1 - q^-{} used for degree {} places although their local "
                "unit rank is {}", e.degree, e.degree, rank));
    }
    return c;
}

std::string truncated_decimal(rational const & r0, unsigned digits)
{
    rational r = r0;
    r.canonicalize();
    bool negative = sgn(r) < 0;
    if (negative) r = -r;
    bigint num = r.get_num(), den = r.get_den();
    bigint ip = num / den;
    bigint scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    bigint frac = (num % den) * scale / den;
    std::string fs = frac.get_str();
    if (fs.size() < digits) fs.insert(0, digits - fs.size(), '0');
    std::string out = (negative ? "-" : "") + ip.get_str();
    if (digits) out += "." + fs;
    return out;
}

std::string format_entries(std::vector<plan_entry> const & entries)
{
    std::string s;
    for (auto const & e : entries)
        s += fmt::format("{}{}:{}:{}", s.empty() ? "" : ", ", e.count, e.degree, e.nu);
    return s;
}

std::vector<plan_entry> parse_entries(std::string const & text)
{
    std::vector<plan_entry> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
        unsigned long long count = 0, degree = 0, nu = 0;
        char trailing = 0;
        bool plain = item.find_first_not_of("0123456789:") == std::string::npos;
        if (!plain || std::sscanf(item.c_str(), "%llu:%llu:%llu%c", &count, &degree, &nu, &trailing) != 3)
            throw error(errc::parse_error,
                        fmt::format("plan entry \"{}\" is not count:degree:nu", item));
        out.push_back({ unsigned(degree), count, unsigned(nu) });
    }
    return out;
}

} // namespace cftower
