#include "cftower/report.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "cftower/error.hpp"

namespace cftower {

std::string rational_text(rational const & r)
{
    rational c = r;
    c.canonicalize();
    return c.get_str();
}

static json integer(bigint const & v)
{
    if (v.fits_slong_p()) return json(int64_t(v.get_si()));
    return json(v.get_str());
}

static json rational_field(std::optional<rational> const & r)
{
    return r ? json(rational_text(*r)) : json(nullptr);
}

static json decimal_field(std::optional<rational> const & r)
{
    return r ? json(truncated_decimal(*r, 12)) : json(nullptr);
}

static std::string source_label(field_params const & f)
{
    return f.e == 1 ? fmt::format("F_{}", f.p) : fmt::format("F_{}^{}", f.p, f.e);
}

/* {{{ spectra */
spectrum_report build_spectrum_report(config_document const & doc, std::string const & name,
                                      unsigned dmax, unsigned jobs)
{
    if (dmax == 0) throw error(errc::config_error, "dmax must be positive");
    spectrum_report r;
    r.name = name;
    if (auto it = doc.curves.find(name); it != doc.curves.end()) {
        auto const & model = it->second;
        r.spectrum = spectrum_from_counts(model, dmax);
        r.assumptions = model.assumptions();
        if (model.declared_genus <= 2) {
            unsigned reach = std::max(dmax, 4u);
            r.zeta = zeta_analyse(reach == dmax ? r.spectrum : spectrum_from_counts(model, reach));
        }
        return r;
    }
    if (auto it = doc.covers.find(name); it != doc.covers.end()) {
        auto const & cover = it->second;
        r.is_cover = true;
        r.spectrum = assemble_spectrum(cover, dmax, jobs);
        r.assumptions = cover.assumptions();
        for (unsigned n = 1; n <= std::min(dmax, 2u); ++n)
            r.oracle.push_back(brute_force_compositum_count(cover, n, r.spectrum));
        return r;
    }
    throw error(errc::config_error, fmt::format("no curve or cover named '{}'", name));
}

std::vector<json> spectrum_records(spectrum_report const & r)
{
    std::vector<json> out;
    auto const & s = r.spectrum;
    for (unsigned d = 1; d <= s.max_degree(); ++d)
        out.push_back({ { "record", "spectrum" }, { "name", r.name }, { "p", s.params.p },
                        { "e", s.params.e }, { "genus", s.genus }, { "degree", d },
                        { "a", s.places(d) }, { "N", s.points(d) } });
    if (r.zeta) {
        std::string L;
        for (auto b : r.zeta->L) L += fmt::format("{}{}", L.empty() ? "" : " ", b);
        out.push_back({ { "record", "zeta" }, { "name", r.name }, { "genus", r.zeta->genus },
                        { "L", L }, { "pass", r.zeta->pass },
                        { "roots_on_circle", r.zeta->roots_on_circle ? json(*r.zeta->roots_on_circle) : json(nullptr) },
                        { "discrepancy", r.zeta->discrepancy } });
    }
    for (auto const & o : r.oracle)
        out.push_back({ { "record", "oracle" }, { "name", r.name }, { "n", o.n },
                        { "affine_total", o.affine_total }, { "affine_over_declared", o.affine_over_declared },
                        { "spectrum_points", o.spectrum_points }, { "declared_points", o.declared_points },
                        { "residual", o.residual } });
    for (auto const & a : r.assumptions)
        out.push_back({ { "record", "assumption" }, { "name", r.name }, { "text", a } });
    return out;
}

void print_spectrum(std::ostream & out, spectrum_report const & r)
{
    auto const & s = r.spectrum;
    fmt::print(out, "{} {} over {}, genus {}\n", r.is_cover ? "cover" : "curve", r.name,
               source_label(s.params), s.genus);
    fmt::print(out, "  {:>3}  {:>10}  {:>12}\n", "d", "a_d", "N_d");
    for (unsigned d = 1; d <= s.max_degree(); ++d)
        fmt::print(out, "  {:>3}  {:>10}  {:>12}\n", d, s.places(d), s.points(d));
    std::string a;
    for (auto v : s.a) a += fmt::format("{}{}", a.empty() ? "" : ",", v);
    fmt::print(out, "  a = ({})\n", a);
    if (r.zeta) {
        std::string L;
        for (auto b : r.zeta->L) L += fmt::format("{}{}", L.empty() ? "" : " ", b);
        fmt::print(out, "zeta check: {}  (L coefficients {})\n", r.zeta->pass ? "pass" : "FAIL", L);
        for (auto const & p : r.zeta->predictions)
            fmt::print(out, "  N_{} predicted {} counted {}\n", p.n, p.predicted, p.actual);
        if (!r.zeta->pass) fmt::print(out, "  {}\n", r.zeta->discrepancy);
    }
    for (auto const & o : r.oracle)
        fmt::print(out,
                   "oracle n={}: {} affine solutions, {} over declared places; spectrum gives {} "
                   "points, {} declared; residual {}\n",
                   o.n, o.affine_total, o.affine_over_declared, o.spectrum_points, o.declared_points,
                   o.residual);
    if (!r.assumptions.empty()) {
        fmt::print(out, "assumptions:\n");
        for (auto const & a : r.assumptions) fmt::print(out, "  - {}\n", a);
    }
}
/* }}} */

/* {{{ certificates */
json certificate_record(std::string const & name, int64_t genus, ramification_plan const & plan,
                        tower_certificate const & c)
{
    return { { "record", "certificate" },
             { "name", name },
             { "p", plan.params.p },
             { "e", plan.params.e },
             { "genus", genus },
             { "t", plan.t },
             { "S", format_entries(plan.entries) },
             { "unit_rank_sum", unit_rank_sum(plan) },
             { "d_lower", c.d_lower },
             { "rd_upper", c.rd_upper },
             { "gs_margin", integer(c.gs_margin) },
             { "side_condition", c.side_condition },
             { "infinite", c.infinite },
             { "bound", rational_field(c.bound) },
             { "bound_decimal", decimal_field(c.bound) },
             { "bound_refined", rational_field(c.bound_refined) },
             { "bound_refined_decimal", decimal_field(c.bound_refined) } };
}

std::vector<json> certificate_records(std::string const & name, int64_t genus,
                                      ramification_plan const & plan, tower_certificate const & c)
{
    std::vector<json> out { certificate_record(name, genus, plan, c) };
    for (auto const & w : c.warnings) out.push_back({ { "record", "warning" }, { "name", name }, { "text", w } });
    return out;
}

resolved_plan plan_from_record(json const & rec)
{
    try {
        if (rec.at("record") != "certificate")
            throw error(errc::config_error, "not a certificate record");
        resolved_plan r;
        r.genus = rec.at("genus").get<int64_t>();
        r.plan.params = field_params::make(rec.at("p").get<uint32_t>(), rec.at("e").get<unsigned>());
        r.plan.t = rec.at("t").get<uint64_t>();
        r.plan.entries = parse_entries(rec.at("S").get<std::string>());
        return r;
    } catch (json::exception const & e) {
        throw error(errc::config_error, fmt::format("malformed certificate record: {}", e.what()));
    }
}

static std::string failure_reason(ramification_plan const & plan, tower_certificate const & c)
{
    if (!c.side_condition)
        return fmt::format("side condition fails: t = {} exceeds the unit rank sum {}", plan.t,
                           unit_rank_sum(plan));
    if (c.d_lower < 2) return fmt::format("generator rank bound d = {} is below 2", c.d_lower);
    rational cap = rational(bigint(c.d_lower) * c.d_lower, 4) - c.d_lower;
    return fmt::format("r - d <= {} exceeds d^2/4 - d = {} (margin {})", c.rd_upper, rational_text(cap),
                       c.gs_margin.get_str());
}

void print_certificate(std::ostream & out, std::string const & name, int64_t genus,
                       ramification_plan const & plan, tower_certificate const & c)
{
    fmt::print(out, "plan {} over {}, genus {}, t = {}\n", name, source_label(plan.params), genus, plan.t);
    fmt::print(out, "  S               {}\n", format_entries(plan.entries));
    fmt::print(out, "  unit rank sum   {}  (side condition t <= {}: {})\n", unit_rank_sum(plan),
               unit_rank_sum(plan), c.side_condition ? "holds" : "fails");
    fmt::print(out, "  d lower         {}\n", c.d_lower);
    fmt::print(out, "  r-d upper       {}\n", c.rd_upper);
    fmt::print(out, "  GS margin       {}\n", c.gs_margin.get_str());
    if (c.infinite) {
        fmt::print(out, "  verdict         infinite tower\n");
        fmt::print(out, "  bound           {} = {}\n", rational_text(*c.bound), truncated_decimal(*c.bound));
        fmt::print(out, "  refined bound   {} = {}\n", rational_text(*c.bound_refined),
                   truncated_decimal(*c.bound_refined));
    } else {
        fmt::print(out, "  verdict         not certified\n");
        fmt::print(out, "  reason          {}\n", failure_reason(plan, c));
    }
    for (auto const & w : c.warnings) fmt::print(out, "  warning: {}\n", w);
}
/* }}} */

/* {{{ search */
std::vector<injected_plan> check_injected(config_document const & doc, search_space const & space,
                                          search_result const & res, unsigned jobs)
{
    std::vector<injected_plan> out;
    if (!doc.search) return out;
    for (auto const & n : doc.search->inject) {
        injected_plan ip;
        ip.name = n;
        auto rp = resolve_plan(doc, n, jobs);
        ip.certificate = certify_tower(rp.genus, rp.plan);
        if (rp.genus == space.base_genus) ip.location = locate_in_space(space, rp.plan);
        ip.dominated = !res.ranked.empty() && ip.certificate.bound_refined &&
                       *res.ranked.front().certificate.bound_refined >= *ip.certificate.bound_refined;
        out.push_back(std::move(ip));
    }
    return out;
}

std::vector<json> search_records(search_space const & space, search_result const & res,
                                 std::vector<injected_plan> const & injected)
{
    std::vector<json> out;
    std::string slots;
    for (auto const & s : res.slots) slots += fmt::format("{}{}:{}", slots.empty() ? "" : ", ", s.degree, s.nu);
    out.push_back({ { "record", "search" }, { "name", "search" }, { "p", space.spectrum.params.p },
                    { "genus", space.base_genus }, { "slots", slots }, { "candidates", res.candidates },
                    { "certified", res.certified }, { "returned", res.ranked.size() } });
    for (size_t i = 0; i < res.ranked.size(); ++i) {
        auto const & r = res.ranked[i];
        auto rec = certificate_record(fmt::format("rank{}", i + 1), space.base_genus, r.plan, r.certificate);
        rec["rank"] = i + 1;
        out.push_back(std::move(rec));
    }
    for (auto const & ip : injected)
        out.push_back({ { "record", "injected" }, { "name", ip.name }, { "in_space", ip.location.has_value() },
                        { "bound_refined", rational_field(ip.certificate.bound_refined) },
                        { "bound_refined_decimal", decimal_field(ip.certificate.bound_refined) },
                        { "dominated", ip.dominated } });
    return out;
}

void print_search(std::ostream & out, search_space const & space, search_result const & res,
                  std::vector<injected_plan> const & injected)
{
    fmt::print(out, "search over {} places of degree {}..{}, genus {}, {} candidates, {} certified\n",
               source_label(space.spectrum.params), space.min_degree, space.max_degree, space.base_genus,
               res.candidates, res.certified);
    for (size_t i = 0; i < res.ranked.size(); ++i) {
        auto const & r = res.ranked[i];
        auto const & c = r.certificate;
        fmt::print(out, "{} {:>2}. refined {} = {}  plain {}  margin {}  t = {}  S = {}\n", i == 0 ? "*" : " ",
                   i + 1, rational_text(*c.bound_refined), truncated_decimal(*c.bound_refined),
                   rational_text(*c.bound), c.gs_margin.get_str(), r.plan.t, format_entries(r.plan.entries));
    }
    for (auto const & ip : injected) {
        fmt::print(out, "injected plan {}: {} the space", ip.name, ip.location ? "inside" : "outside");
        if (ip.certificate.bound_refined)
            fmt::print(out, ", refined {} = {}, {}", rational_text(*ip.certificate.bound_refined),
                       truncated_decimal(*ip.certificate.bound_refined),
                       ip.dominated ? "dominated by the top plan" : "NOT dominated");
        fmt::print(out, "\n");
    }
}
/* }}} */

json comparison_record(std::string const & name, method_comparison_input const & in,
                       method_comparison const & c)
{
    return { { "record", "comparison" }, { "name", name },
             { "s", in.s }, { "l", in.l }, { "t", in.t }, { "s_prime", in.s_prime }, { "T", in.T_size },
             { "p", in.p },
             { "usual_d_lower", c.usual.d_lower }, { "usual_rd_upper", c.usual.rd_upper },
             { "usual_infinite", c.usual.infinite },
             { "ours_d_lower", c.ours.d_lower }, { "ours_rd_upper", c.ours.rd_upper },
             { "ours_infinite", c.ours.infinite } };
}

void print_comparison(std::ostream & out, std::string const & name, method_comparison_input const & in,
                      method_comparison const & c)
{
    fmt::print(out, "comparison {}: s = {}, l = {}, t = {}, s' = {}, |T| = {}\n", name, in.s, in.l, in.t,
               in.s_prime, in.T_size);
    fmt::print(out, "  usual method   d >= {:>4}   r-d <= {:>5}   {}\n", c.usual.d_lower, c.usual.rd_upper,
               c.usual.infinite ? "infinite" : "inconclusive");
    fmt::print(out, "  our method     d >= {:>4}   r-d <= {:>5}   {}\n", c.ours.d_lower, c.ours.rd_upper,
               c.ours.infinite ? "infinite" : "inconclusive");
}

} // namespace cftower
