#include "cftower/cover.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "cftower/error.hpp"

namespace cftower {

uint64_t cover_spec::degree() const
{
    uint64_t d = 1;
    for (unsigned i = 0; i < rank(); ++i) d *= base.params.p;
    return d;
}

std::vector<std::string> cover_spec::assumptions() const
{
    std::vector<std::string> out = base.assumptions();
    out.push_back(fmt::format("cover {}: the {} components are assumed independent "
                              "(no F_p-combination of the u_i is of the form z^p - z)",
                              name, rank()));
    for (auto const & d : declared) {
        std::string above;
        for (auto const & pc : d.above)
            above += fmt::format("{}{}@{}", above.empty() ? "" : ", ", pc.count, pc.degree);
        out.push_back(fmt::format("cover {}: places above {} (degree {}) declared as [{}]", name,
                                  d.name, d.degree, above));
    }
    std::string inf;
    for (auto const & pc : infinity_above)
        inf += fmt::format("{}{}@{}", inf.empty() ? "" : ", ", pc.count, pc.degree);
    out.push_back(fmt::format("cover {}: places above infinity declared as [{}]", name, inf));
    if (profile)
        out.push_back(fmt::format("cover {}: character conductor profile declared", name));
    return out;
}

std::vector<as_component> components_from_basis(field_params params, std::string const & A,
                                                std::string const & B_template,
                                                std::vector<std::string> const & h_basis)
{
    mpoly a = parse_polynomial(A, params.p);
    mpoly bt = parse_polynomial(B_template, params.p);
    for (auto const & v : a.variables())
        if (v != "x" && v != "y")
            throw error(errc::config_error, fmt::format("A may only use x and y, found '{}'", v));
    for (auto const & v : bt.variables())
        if (v != "x" && v != "y" && v != "h")
            throw error(errc::config_error, fmt::format("B may only use x, y and h, found '{}'", v));
    std::vector<as_component> out;
    for (auto const & hb : h_basis) {
        mpoly h = parse_polynomial(hb, params.p);
        out.push_back({ "h=" + hb, a, bt.substitute("h", h) });
    }
    return out;
}

/* {{{ declared places */
static place canonical(field_params params, place const & p)
{
    auto cs = conjugates(params, p);
    return *std::min_element(cs.begin(), cs.end(), [](place const & a, place const & b) {
        return std::pair(a.x, a.y) < std::pair(b.x, b.y);
    });
}

static resolved_declared resolve_one(cover_spec const & cover, declared_place const & d,
                                     std::vector<place> const & candidates)
{
    resolved_declared r { &d, {} };
    auto const & params = cover.base.params;
    if (d.point) {
        place want = canonical(params, place { d.degree, false, 0, d.point->first, d.point->second });
        for (auto const & c : candidates)
            if (!c.at_infinity && c == want) r.places.push_back(c);
    } else if (d.zero_of) {
        ext_field F = make_ext_field(params, d.degree);
        poly_evaluator ev(*d.zero_of, { "x", "y" });
        std::vector<place> matches;
        for (auto const & c : candidates) {
            if (c.at_infinity) continue;
            std::array<ext_field::elem, 2> pt { c.x, c.y };
            if (ev(F, pt) == 0) matches.push_back(c);
        }
        if (d.index) {
            if (*d.index >= matches.size())
                throw error(errc::inconsistent_model,
                            fmt::format("declared place {}: index {} but only {} zeros of degree {}",
                                        d.name, *d.index, matches.size(), d.degree));
            r.places.push_back(matches[*d.index]);
        } else {
            r.places = std::move(matches);
        }
    } else {
        throw error(errc::config_error,
                    fmt::format("declared place {} has neither zero_of nor a point", d.name));
    }
    if (r.places.size() != d.count)
        throw error(errc::inconsistent_model,
                    fmt::format("declared place {}: expected {} place(s) of degree {}, found {}",
                                d.name, d.count, d.degree, r.places.size()));
    return r;
}

std::vector<resolved_declared> resolve_declared(cover_spec const & cover, unsigned max_degree)
{
    std::vector<resolved_declared> out;
    std::map<unsigned, std::vector<place>> by_degree;
    for (auto const & d : cover.declared) {
        if (d.degree > max_degree) continue;
        auto it = by_degree.find(d.degree);
        if (it == by_degree.end())
            it = by_degree.emplace(d.degree, enumerate_places(cover.base, d.degree)).first;
        out.push_back(resolve_one(cover, d, it->second));
    }
    return out;
}

static bool is_declared(std::vector<resolved_declared> const & res, place const & canon)
{
    for (auto const & r : res)
        for (auto const & p : r.places)
            if (p == canon) return true;
    return false;
}
/* }}} */

static void require_prime_field(cover_spec const & cover)
{
    if (cover.base.params.e != 1)
        throw error(errc::unsupported_size,
                    fmt::format("cover {}: trace-based decomposition requires q = p", cover.name));
}

namespace {

struct component_evaluators {
    poly_evaluator A;
    std::vector<poly_evaluator> B;

    explicit component_evaluators(cover_spec const & cover)
    {
        std::vector<std::string> const xy { "x", "y" };
        if (!cover.components.empty()) A = poly_evaluator(cover.components.front().A, xy);
        for (auto const & c : cover.components) {
            if (!(c.A == cover.components.front().A))
                throw error(errc::config_error,
                            fmt::format("cover {}: components must share A", cover.name));
            B.emplace_back(c.B, xy);
        }
    }
};

decomposition_record decompose_unchecked(cover_spec const & cover, component_evaluators const & ev,
                                         place const & p)
{
    decomposition_record rec;
    rec.base_place = p;
    uint32_t const prime = cover.base.params.p;
    unsigned const r = cover.rank();
    if (r == 0) {
        rec.places_above = { { p.degree, 1 } };
        return rec;
    }
    ext_field F = make_ext_field(cover.base.params, p.degree);
    std::array<ext_field::elem, 2> pt { p.x, p.y };
    ext_field::elem a = ev.A(F, pt);
    if (a == 0)
        throw error(errc::pole_at_place,
                    fmt::format("cover {}: A vanishes at undeclared place {}", cover.name, p.to_string()));
    ext_field::elem inv_ap = F.inv(F.pow(a, prime));
    bool zero = true;
    for (auto const & b : ev.B) {
        uint32_t tau = F.absolute_trace(F.mul(b(F, pt), inv_ap));
        rec.frobenius_vector.push_back(tau);
        zero = zero && tau == 0;
    }
    uint64_t pr = cover.degree();
    if (zero)
        rec.places_above = { { p.degree, pr } };
    else
        rec.places_above = { { p.degree * prime, pr / prime } };
    return rec;
}

} // namespace

decomposition_record decompose_place(cover_spec const & cover, place const & p)
{
    require_prime_field(cover);
    if (p.at_infinity)
        throw error(errc::ramified_place,
                    fmt::format("cover {}: places at infinity are declared, not decomposed", cover.name));
    auto res = resolve_declared(cover, p.degree);
    if (is_declared(res, canonical(cover.base.params, p)))
        throw error(errc::ramified_place,
                    fmt::format("cover {}: {} is a declared place", cover.name, p.to_string()));
    component_evaluators ev(cover);
    return decompose_unchecked(cover, ev, p);
}

int64_t cover_genus(cover_spec const & cover)
{
    if (cover.profile) {
        if (cover.profile->group_order != cover.degree())
            throw error(errc::invalid_profile,
                        fmt::format("cover {}: profile group order {} but the cover has degree {}",
                                    cover.name, cover.profile->group_order, cover.degree()));
        int64_t g = genus_from_conductors(cover.base.declared_genus, *cover.profile);
        if (cover.declared_genus && int64_t(*cover.declared_genus) != g)
            throw error(errc::inconsistent_model,
                        fmt::format("cover {}: declared genus {} but the conductors give {}",
                                    cover.name, *cover.declared_genus, g));
        return g;
    }
    if (cover.declared_genus) return *cover.declared_genus;
    if (cover.rank() == 0) return cover.base.declared_genus;
    throw error(errc::config_error,
                fmt::format("cover {}: needs a conductor profile or a declared genus", cover.name));
}

place_spectrum assemble_spectrum(cover_spec const & cover, unsigned dmax, unsigned jobs)
{
    require_prime_field(cover);
    auto const & params = cover.base.params;
    std::vector<int64_t> a(dmax, 0);
    auto add = [&](std::vector<place_count> const & pcs) {
        for (auto const & pc : pcs)
            if (pc.degree >= 1 && pc.degree <= dmax) a[pc.degree - 1] += int64_t(pc.count);
    };

    auto res = resolve_declared(cover, dmax);
    component_evaluators ev(cover);
    jobs = std::max(1u, jobs);

    for (unsigned m = 1; m <= dmax; ++m) {
        auto places = enumerate_places(cover.base, m);
        std::vector<place> todo;
        for (auto const & p : places)
            if (!p.at_infinity && !is_declared(res, p)) todo.push_back(p);

        std::vector<std::vector<place_count>> above(todo.size());
        auto work = [&](size_t begin, size_t end) {
            for (size_t i = begin; i < end; ++i)
                above[i] = decompose_unchecked(cover, ev, todo[i]).places_above;
        };
        if (jobs == 1 || todo.size() < 64) {
            work(0, todo.size());
        } else {
            std::vector<std::jthread> pool;
            size_t chunk = (todo.size() + jobs - 1) / jobs;
            for (size_t b = 0; b < todo.size(); b += chunk)
                pool.emplace_back(work, b, std::min(todo.size(), b + chunk));
        }
        for (auto const & pcs : above) add(pcs);
    }
    for (auto const & r : res)
        for (size_t i = 0; i < r.places.size(); ++i) add(r.decl->above);
    add(cover.infinity_above);

    auto s = make_spectrum(params, unsigned(cover_genus(cover)), std::move(a));
    for (unsigned n = 1; n <= dmax; ++n)
        if (!weil_bound_holds(params.q(), s.genus, n, s.N[n - 1]))
            throw error(errc::inconsistent_model,
                        fmt::format("cover {}: N_{} = {} violates the Weil bound for genus {}",
                                    cover.name, n, s.N[n - 1], s.genus));
    return s;
}

compositum_count brute_force_compositum_count(cover_spec const & cover, unsigned n)
{
    return brute_force_compositum_count(cover, n, assemble_spectrum(cover, n));
}

compositum_count brute_force_compositum_count(cover_spec const & cover, unsigned n,
                                              place_spectrum const & assembled)
{
    if (assembled.max_degree() < n)
        throw std::invalid_argument("assembled spectrum does not reach degree n");
    auto const & params = cover.base.params;
    ext_field F = make_ext_field(params, n);
    uint32_t const prime = params.p;

    compositum_count out;
    out.n = n;

    /* the points over F_{q^n} that lie on declared places */
    std::set<std::pair<ext_field::elem, ext_field::elem>> declared_points;
    auto res = resolve_declared(cover, n);
    auto add_declared = [&](std::vector<place_count> const & pcs) {
        for (auto const & pc : pcs)
            if (n % pc.degree == 0) out.declared_points += int64_t(pc.degree * pc.count);
    };
    for (auto const & r : res) {
        if (n % r.decl->degree) continue;
        field_embedding emb(make_ext_field(params, r.decl->degree), F);
        for (auto const & p : r.places) {
            for (auto const & c : conjugates(params, p)) declared_points.insert({ emb(c.x), emb(c.y) });
            add_declared(r.decl->above);
        }
    }
    add_declared(cover.infinity_above);

    std::vector<std::string> const xy { "x", "y" };
    std::vector<std::pair<poly_evaluator, poly_evaluator>> comps;
    for (auto const & c : cover.components)
        comps.emplace_back(poly_evaluator(c.A, xy), poly_evaluator(c.B, xy));

    for_each_affine_point(cover.base, F, [&](ext_field::elem x, ext_field::elem y) {
        std::array<ext_field::elem, 2> pt { x, y };
        uint64_t fiber = 1;
        for (auto const & [A, B] : comps) {
            ext_field::elem c = F.pow(A(F, pt), prime - 1), b = B(F, pt);
            uint64_t sols = 0;
            for (uint64_t vi : F.elements()) {
                auto v = ext_field::elem(vi);
                if (F.sub(F.sub(F.pow(v, prime), F.mul(c, v)), b) == 0) ++sols;
            }
            fiber *= sols;
            if (!fiber) break;
        }
        out.affine_total += fiber;
        if (declared_points.count({ x, y })) out.affine_over_declared += fiber;
    });

    for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) out.spectrum_points += int64_t(d) * assembled.places(d);
    out.residual = (int64_t(out.affine_total) - int64_t(out.affine_over_declared))
                 - (out.spectrum_points - out.declared_points);
    return out;
}

} // namespace cftower
