#include "cftower/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "cftower/error.hpp"

namespace cftower {

namespace {

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string const & s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        auto t = trim(cur);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

[[noreturn]] void fail(size_t line, std::string const & msg)
{
    throw error(errc::config_error, line ? fmt::format("line {}: {}", line, msg) : msg);
}

template <class T>
T to_int(std::string const & s, size_t line, std::string const & what)
{
    T v {};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(line, fmt::format("{}: expected an integer, got '{}'", what, s));
    return v;
}

/* "a..b" or a comma list */
template <class T>
std::vector<T> int_list(std::string const & s, size_t line, std::string const & what)
{
    std::vector<T> out;
    for (auto const & part : split(s, ',')) {
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int<T>(part, line, what));
            continue;
        }
        T a = to_int<T>(trim(part.substr(0, dots)), line, what);
        T b = to_int<T>(trim(part.substr(dots + 2)), line, what);
        if (b < a) fail(line, fmt::format("{}: empty range '{}'", what, part));
        for (T v = a; v <= b; ++v) out.push_back(v);
    }
    if (out.empty()) fail(line, fmt::format("{}: empty list", what));
    return out;
}

struct section {
    std::string kind, name;
    size_t line = 0;
    std::vector<std::pair<std::string, std::pair<std::string, size_t>>> keys;

    std::map<std::string, std::pair<std::string, size_t>> take(std::set<std::string> const & allowed) const
    {
        std::map<std::string, std::pair<std::string, size_t>> out;
        for (auto const & [k, v] : keys) {
            if (!allowed.count(k))
                fail(v.second, fmt::format("unknown key '{}' in [{}{}{}]", k, kind,
                                           name.empty() ? "" : " ", name));
            if (!out.emplace(k, v).second) fail(v.second, fmt::format("duplicate key '{}'", k));
        }
        return out;
    }
};

using keymap = std::map<std::string, std::pair<std::string, size_t>>;

std::string const & need(keymap const & m, section const & s, std::string const & key)
{
    auto it = m.find(key);
    if (it == m.end()) fail(s.line, fmt::format("[{} {}] needs '{}'", s.kind, s.name, key));
    return it->second.first;
}

std::optional<std::pair<std::string, size_t>> opt(keymap const & m, std::string const & key)
{
    auto it = m.find(key);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

template <class T>
T int_or(keymap const & m, std::string const & key, T dflt)
{
    auto v = opt(m, key);
    return v ? to_int<T>(v->first, v->second, key) : dflt;
}

std::vector<std::pair<uint64_t, uint64_t>> pairs(std::string const & s, size_t line)
{
    std::vector<std::pair<uint64_t, uint64_t>> out;
    for (auto const & part : split(s, ',')) {
        auto c = part.find(':');
        if (c == std::string::npos) fail(line, fmt::format("expected degree:count, got '{}'", part));
        out.push_back({ to_int<uint64_t>(trim(part.substr(0, c)), line, "degree"),
                        to_int<uint64_t>(trim(part.substr(c + 1)), line, "count") });
    }
    return out;
}

std::vector<section> sections_of(std::string_view text)
{
    std::vector<section> out;
    size_t lineno = 0;
    std::istringstream in { std::string(text) };
    std::string raw;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        auto line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "unterminated section header");
            auto words = split(line.substr(1, line.size() - 2), ' ');
            if (words.empty() || words.size() > 2) fail(lineno, "section header is [kind] or [kind NAME]");
            out.push_back({ words[0], words.size() == 2 ? words[1] : "", lineno, {} });
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        if (out.empty()) fail(lineno, "key outside any section");
        auto key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail(lineno, "empty key or value");
        out.back().keys.push_back({ key, { value, lineno } });
    }
    return out;
}

} // namespace

std::vector<uint64_t> parse_uint_list(std::string const & text)
{
    return int_list<uint64_t>(text, 0, "list");
}

std::vector<place_count> parse_place_counts(std::string const & text)
{
    std::vector<place_count> out;
    for (auto const & part : split(text, ',')) {
        auto at = part.find('@');
        if (at == std::string::npos)
            throw error(errc::config_error, fmt::format("expected count@degree, got '{}'", part));
        place_count pc;
        pc.count = to_int<uint64_t>(trim(part.substr(0, at)), 0, "count");
        pc.degree = to_int<unsigned>(trim(part.substr(at + 1)), 0, "degree");
        if (pc.degree == 0) throw error(errc::config_error, "place degree must be positive");
        out.push_back(pc);
    }
    return out;
}

std::string format_place_counts(std::vector<place_count> const & v)
{
    std::string s;
    for (auto const & pc : v) s += fmt::format("{}{}@{}", s.empty() ? "" : ", ", pc.count, pc.degree);
    return s;
}

config_document parse_config(std::string_view text)
{
    auto secs = sections_of(text);
    config_document doc;

    auto field_it = std::find_if(secs.begin(), secs.end(), [](auto const & s) { return s.kind == "field"; });
    if (field_it == secs.end()) fail(0, "missing [field] section");
    {
        auto m = field_it->take({ "p", "e" });
        auto p = to_int<uint32_t>(need(m, *field_it, "p"), field_it->line, "p");
        auto e = int_or<unsigned>(m, "e", 1);
        doc.field = field_params::make(p, e);
    }
    uint32_t p = doc.field.p;

    auto with_line = [](size_t line, auto && fn) {
        try {
            return fn();
        } catch (error const & e) {
            if (e.code() == errc::config_error && std::string_view(e.what()).starts_with("line "))
                throw;
            throw error(e.code() == errc::parse_error ? errc::config_error : e.code(),
                        fmt::format("line {}: {}", line, e.what()));
        }
    };

    std::set<std::string> names;
    auto claim = [&](section const & s) {
        if (s.name.empty()) fail(s.line, fmt::format("[{}] needs a name", s.kind));
        if (!names.insert(s.kind + " " + s.name).second)
            fail(s.line, fmt::format("duplicate section [{} {}]", s.kind, s.name));
    };

    struct pending_cover {
        section const * sec;
        keymap keys;
    };
    std::vector<pending_cover> covers;
    std::vector<std::pair<section const *, keymap>> places;

    for (auto const & s : secs) {
        if (s.kind == "field") {
            if (&s != &*field_it) fail(s.line, "duplicate [field] section");
        } else if (s.kind == "curve") {
            claim(s);
            auto m = s.take({ "equation", "infinity", "genus" });
            with_line(s.line, [&] {
                doc.curves.emplace(s.name, make_curve_model(s.name, doc.field, need(m, s, "equation"),
                                                            parse_place_counts(need(m, s, "infinity")),
                                                            int_or<unsigned>(m, "genus", 0)));
                return 0;
            });
            if (!m.count("genus")) fail(s.line, fmt::format("[curve {}] needs 'genus'", s.name));
        } else if (s.kind == "cover") {
            claim(s);
            covers.push_back({ &s, s.take({ "base", "A", "B", "basis", "infinity_above", "profile", "genus" }) });
        } else if (s.kind == "place") {
            if (s.name.empty()) fail(s.line, "[place] needs a name");
            places.push_back({ &s, s.take({ "cover", "degree", "zero_of", "point", "index", "count",
                                            "exponent", "above" }) });
        } else if (s.kind == "profile") {
            claim(s);
            auto m = s.take({ "order", "conductors" });
            conductor_profile prof;
            prof.group_order = to_int<uint64_t>(need(m, s, "order"), s.line, "order");
            prof.degrees = pairs(need(m, s, "conductors"), m.at("conductors").second);
            doc.profiles.emplace(s.name, prof);
        } else if (s.kind == "plan") {
            claim(s);
            auto m = s.take({ "source", "genus", "t", "S" });
            plan_spec ps;
            ps.name = s.name;
            if (auto v = opt(m, "source")) ps.source = v->first;
            if (auto v = opt(m, "genus")) ps.genus = to_int<int64_t>(v->first, v->second, "genus");
            if (!ps.source && !ps.genus) fail(s.line, fmt::format("[plan {}] needs 'source' or 'genus'", s.name));
            ps.plan.params = doc.field;
            ps.plan.t = to_int<uint64_t>(need(m, s, "t"), s.line, "t");
            ps.plan.entries = with_line(m.count("S") ? m.at("S").second : s.line,
                                        [&] { return parse_entries(need(m, s, "S")); });
            doc.plans.emplace(s.name, std::move(ps));
            doc.plan_order.push_back(s.name);
        } else if (s.kind == "search") {
            if (doc.search) fail(s.line, "duplicate [search] section");
            if (!s.name.empty()) fail(s.line, "[search] takes no name");
            auto m = s.take({ "source", "genus", "nu", "t", "degrees", "cap", "top", "max_candidates", "inject" });
            search_spec sp;
            sp.source = need(m, s, "source");
            if (auto v = opt(m, "genus")) sp.genus = to_int<int64_t>(v->first, v->second, "genus");
            sp.nus = opt(m, "nu") ? int_list<unsigned>(m.at("nu").first, m.at("nu").second, "nu")
                                  : std::vector<unsigned> { p };
            if (auto v = opt(m, "t")) sp.t_values = int_list<uint64_t>(v->first, v->second, "t");
            if (auto v = opt(m, "degrees")) {
                auto d = int_list<unsigned>(v->first, v->second, "degrees");
                sp.min_degree = *std::min_element(d.begin(), d.end());
                sp.max_degree = *std::max_element(d.begin(), d.end());
                if (d.size() != sp.max_degree - sp.min_degree + 1 || sp.min_degree == 0)
                    fail(v->second, "degrees must be a range lo..hi with lo >= 1");
            }
            sp.multiplicity_cap = int_or<uint64_t>(m, "cap", sp.multiplicity_cap);
            sp.top_n = int_or<size_t>(m, "top", sp.top_n);
            sp.max_candidates = int_or<uint64_t>(m, "max_candidates", sp.max_candidates);
            if (auto v = opt(m, "inject")) sp.inject = split(v->first, ',');
            for (unsigned nu : sp.nus)
                if (nu < 2) fail(s.line, "nu must be at least 2");
            doc.search = sp;
        } else if (s.kind == "compare") {
            claim(s);
            auto m = s.take({ "s", "l", "t", "s_prime", "T", "p" });
            compare_spec c;
            c.name = s.name;
            c.input.s = to_int<int64_t>(need(m, s, "s"), s.line, "s");
            c.input.l = to_int<int64_t>(need(m, s, "l"), s.line, "l");
            c.input.t = to_int<int64_t>(need(m, s, "t"), s.line, "t");
            c.input.s_prime = to_int<int64_t>(need(m, s, "s_prime"), s.line, "s_prime");
            c.input.T_size = to_int<int64_t>(need(m, s, "T"), s.line, "T");
            c.input.p = int_or<uint32_t>(m, "p", p);
            if (c.input.s < 0 || c.input.l < 0 || c.input.t < 0 || c.input.s_prime < 0 || c.input.T_size < 0)
                fail(s.line, "comparison inputs must be nonnegative");
            doc.comparisons.emplace(s.name, c);
            doc.compare_order.push_back(s.name);
        } else {
            fail(s.line, fmt::format("unknown section [{}]", s.kind));
        }
    }

    for (auto & [sec, m] : covers) {
        auto const & s = *sec;
        with_line(s.line, [&] {
            auto base = doc.curves.find(need(m, s, "base"));
            if (base == doc.curves.end())
                fail(m.at("base").second, fmt::format("unknown curve '{}'", m.at("base").first));
            cover_spec c;
            c.name = s.name;
            c.base = base->second;
            c.h_basis = split(need(m, s, "basis"), ',');
            c.components = components_from_basis(doc.field, need(m, s, "A"), need(m, s, "B"), c.h_basis);
            c.infinity_above = parse_place_counts(need(m, s, "infinity_above"));
            if (auto v = opt(m, "profile")) {
                auto it = doc.profiles.find(v->first);
                if (it == doc.profiles.end()) fail(v->second, fmt::format("unknown profile '{}'", v->first));
                c.profile = it->second;
            }
            if (auto v = opt(m, "genus")) c.declared_genus = to_int<unsigned>(v->first, v->second, "genus");
            doc.covers.emplace(s.name, std::move(c));
            return 0;
        });
    }

    std::set<std::pair<std::string, std::string>> place_names;
    for (auto & [sec, m] : places) {
        auto const & s = *sec;
        auto cov = doc.covers.find(need(m, s, "cover"));
        if (cov == doc.covers.end())
            fail(m.at("cover").second, fmt::format("unknown cover '{}'", m.at("cover").first));
        if (!place_names.insert({ cov->first, s.name }).second)
            fail(s.line, fmt::format("place {} declared twice for cover {}", s.name, cov->first));
        with_line(s.line, [&] {
            declared_place d;
            d.name = s.name;
            d.degree = to_int<unsigned>(need(m, s, "degree"), s.line, "degree");
            if (d.degree == 0) fail(s.line, "degree must be positive");
            if (m.count("zero_of") == m.count("point"))
                fail(s.line, fmt::format("[place {}] needs exactly one of 'zero_of' and 'point'", s.name));
            if (auto v = opt(m, "zero_of")) d.zero_of = parse_polynomial(v->first, p);
            if (auto v = opt(m, "point")) {
                auto xy = split(v->first, ',');
                if (xy.size() != 2) fail(v->second, "point is 'x, y' as element codes");
                d.point = std::pair { to_int<ext_field::elem>(xy[0], v->second, "x"),
                                      to_int<ext_field::elem>(xy[1], v->second, "y") };
            }
            if (auto v = opt(m, "index")) d.index = to_int<unsigned>(v->first, v->second, "index");
            d.count = int_or<uint64_t>(m, "count", 1);
            if (auto v = opt(m, "exponent")) d.conductor_exponent = to_int<unsigned>(v->first, v->second, "exponent");
            d.above = parse_place_counts(need(m, s, "above"));
            cov->second.declared.push_back(std::move(d));
            return 0;
        });
    }

    auto known_source = [&](std::string const & n) { return doc.curves.count(n) || doc.covers.count(n); };
    for (auto const & [n, ps] : doc.plans)
        if (ps.source && !known_source(*ps.source))
            fail(0, fmt::format("plan {}: unknown source '{}'", n, *ps.source));
    if (doc.search) {
        if (!known_source(doc.search->source))
            fail(0, fmt::format("search: unknown source '{}'", doc.search->source));
        for (auto const & n : doc.search->inject)
            if (!doc.plans.count(n)) fail(0, fmt::format("search: unknown plan '{}'", n));
    }
    return doc;
}

config_document load_config(std::filesystem::path const & path)
{
    std::ifstream in(path);
    if (!in) throw error(errc::config_error, fmt::format("cannot read {}", path.string()));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

int64_t source_genus(config_document const & doc, std::string const & name)
{
    if (auto it = doc.curves.find(name); it != doc.curves.end()) return it->second.declared_genus;
    if (auto it = doc.covers.find(name); it != doc.covers.end()) return cover_genus(it->second);
    throw error(errc::config_error, fmt::format("no curve or cover named '{}'", name));
}

place_spectrum source_spectrum(config_document const & doc, std::string const & name, unsigned dmax,
                               unsigned jobs)
{
    if (auto it = doc.curves.find(name); it != doc.curves.end())
        return spectrum_from_counts(it->second, dmax);
    if (auto it = doc.covers.find(name); it != doc.covers.end())
        return assemble_spectrum(it->second, dmax, jobs);
    throw error(errc::config_error, fmt::format("no curve or cover named '{}'", name));
}

resolved_plan resolve_plan(config_document const & doc, std::string const & name, unsigned jobs)
{
    auto it = doc.plans.find(name);
    if (it == doc.plans.end()) throw error(errc::config_error, fmt::format("no plan named '{}'", name));
    auto const & ps = it->second;
    resolved_plan r;
    r.plan = ps.plan;
    if (ps.source) {
        unsigned dmax = 1;
        for (auto const & e : ps.plan.entries) dmax = std::max(dmax, e.degree);
        r.plan.available = source_spectrum(doc, *ps.source, dmax, jobs);
        r.genus = ps.genus ? *ps.genus : source_genus(doc, *ps.source);
    } else {
        r.genus = *ps.genus;
    }
    return r;
}

search_space resolve_search(config_document const & doc, unsigned jobs)
{
    if (!doc.search) throw error(errc::config_error, "no [search] section");
    auto const & sp = *doc.search;
    int64_t g = sp.genus ? *sp.genus : source_genus(doc, sp.source);
    search_space s = default_search_space(source_spectrum(doc, sp.source, sp.max_degree, jobs), g);
    s.nus = sp.nus;
    if (!sp.t_values.empty()) s.t_values = sp.t_values;
    s.min_degree = sp.min_degree;
    s.max_degree = sp.max_degree;
    s.multiplicity_cap = sp.multiplicity_cap;
    s.top_n = sp.top_n;
    s.max_candidates = sp.max_candidates;
    return s;
}

} // namespace cftower
