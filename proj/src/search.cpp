#include "cftower/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "cftower/error.hpp"

namespace cftower {

search_space default_search_space(place_spectrum spectrum, int64_t base_genus)
{
    search_space s;
    s.nus = { spectrum.params.p };
    s.t_values = { uint64_t(std::max<int64_t>(0, spectrum.places(1))) };
    s.base_genus = base_genus;
    s.spectrum = std::move(spectrum);
    return s;
}

std::vector<search_slot> search_slots(search_space const & space)
{
    std::vector<unsigned> nus = space.nus;
    std::sort(nus.begin(), nus.end());
    nus.erase(std::unique(nus.begin(), nus.end()), nus.end());
    std::vector<search_slot> out;
    for (unsigned f = std::max(1u, space.min_degree); f <= space.max_degree; ++f) {
        if (space.spectrum.places(f) <= 0) continue;
        for (unsigned nu : nus) out.push_back({ f, nu });
    }
    return out;
}

static uint64_t availability(search_space const & space, unsigned f, uint64_t t)
{
    int64_t a = space.spectrum.places(f);
    if (f == 1) a -= int64_t(t);
    if (a <= 0) return 0;
    return std::min<uint64_t>(uint64_t(a), space.multiplicity_cap);
}

static __int128 binomial(uint64_t n, uint64_t k)
{
    __int128 r = 1;
    for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

uint64_t count_candidates(search_space const & space)
{
    auto slots = search_slots(space);
    std::map<unsigned, uint64_t> per_degree;
    for (auto const & s : slots) ++per_degree[s.degree];
    __int128 total = 0;
    for (uint64_t t : space.t_values) {
        if (int64_t(t) > space.spectrum.places(1)) continue;
        __int128 c = 1;
        for (auto const & [f, k] : per_degree) {
            c *= binomial(availability(space, f, t) + k, k);
            if (c > (__int128(1) << 62)) return UINT64_MAX;
        }
        total += c;
        if (total > (__int128(1) << 62)) return UINT64_MAX;
    }
    return uint64_t(total);
}

std::optional<std::vector<uint64_t>> locate_in_space(search_space const & space,
                                                     ramification_plan const & plan)
{
    if (std::find(space.t_values.begin(), space.t_values.end(), plan.t) == space.t_values.end())
        return std::nullopt;
    auto slots = search_slots(space);
    std::vector<uint64_t> m(slots.size(), 0);
    for (auto const & e : plan.entries) {
        auto it = std::find(slots.begin(), slots.end(), search_slot { e.degree, e.nu });
        if (it == slots.end()) return std::nullopt;
        m[size_t(it - slots.begin())] += e.count;
    }
    std::map<unsigned, uint64_t> used;
    for (size_t i = 0; i < slots.size(); ++i) used[slots[i].degree] += m[i];
    for (auto const & [f, c] : used)
        if (c > availability(space, f, plan.t)) return std::nullopt;
    return m;
}

namespace {

struct candidate {
    __int128 num = 0, den = 1;     /* refined bound */
    std::vector<uint64_t> m;
    uint64_t t = 0;
};

bool better(candidate const & a, candidate const & b)
{
    __int128 l = a.num * b.den, r = b.num * a.den;
    if (l != r) return l > r;
    if (a.m != b.m) return a.m < b.m;
    return a.t < b.t;
}

struct top_list {
    size_t cap;
    std::vector<candidate> items;

    void offer(candidate const & c)
    {
        if (items.size() == cap && !better(c, items.back())) return;
        auto it = std::upper_bound(items.begin(), items.end(), c, better);
        items.insert(it, c);
        if (items.size() > cap) items.pop_back();
    }
};

struct enumerator {
    search_space const & space;
    std::vector<search_slot> const & slots;
    uint64_t t;
    __int128 Q;                         /* q^max_degree */
    std::vector<__int128> slot_rank, slot_wild, slot_refined;
    std::vector<uint64_t> avail;        /* per slot's degree */
    top_list top;
    uint64_t candidates = 0, certified = 0;
    std::vector<uint64_t> m;
    std::map<unsigned, uint64_t> used;

    enumerator(search_space const & sp, std::vector<search_slot> const & sl, uint64_t t_, size_t cap)
        : space(sp), slots(sl), t(t_), top { cap, {} }, m(sl.size(), 0)
    {
        auto const & params = space.spectrum.params;
        __int128 q = params.q();
        Q = 1;
        for (unsigned i = 0; i < space.max_degree; ++i) Q *= q;
        for (auto const & s : slots) {
            __int128 k = __int128(params.e) * s.degree * (s.nu - 1);
            slot_rank.push_back(local_unit_rank(params, s.degree, s.nu));
            slot_wild.push_back(k * (k + 1));
            __int128 qf = 1;
            for (unsigned i = 0; i < s.degree; ++i) qf *= q;
            slot_refined.push_back(__int128(s.degree) * s.nu * (Q - Q / qf));
            avail.push_back(availability(space, s.degree, t));
        }
    }

    void evaluate(__int128 rank, __int128 wild, __int128 refined)
    {
        ++candidates;
        if (__int128(t) > rank) return;
        __int128 d = 1 + rank - __int128(t);
        if (d < 2) return;
        if (d * d - 2 * wild - 4 * rank < 0) return;
        ++certified;
        candidate c;
        c.num = 2 * Q * __int128(t);
        c.den = 2 * Q * (space.base_genus - 1) + refined;
        if (c.den <= 0) return;
        c.m = m;
        c.t = t;
        top.offer(c);
    }

    void run(size_t i, __int128 rank, __int128 wild, __int128 refined)
    {
        if (i == slots.size()) {
            evaluate(rank, wild, refined);
            return;
        }
        uint64_t left = avail[i] - used[slots[i].degree];
        for (uint64_t c = 0; c <= left; ++c) {
            m[i] = c;
            used[slots[i].degree] += c;
            run(i + 1, rank + c * slot_rank[i], wild + c * slot_wild[i], refined + c * slot_refined[i]);
            used[slots[i].degree] -= c;
        }
        m[i] = 0;
    }

    /* the first slot restricted to values v with v % stride == offset */
    void run_strided(unsigned offset, unsigned stride)
    {
        if (slots.empty()) {
            if (offset == 0) evaluate(0, 0, 0);
            return;
        }
        for (uint64_t c = offset; c <= avail[0]; c += stride) {
            m[0] = c;
            used[slots[0].degree] = c;
            run(1, c * slot_rank[0], c * slot_wild[0], c * slot_refined[0]);
        }
        used[slots[0].degree] = 0;
        m[0] = 0;
    }
};

} // namespace

search_result optimize(search_space const & space, unsigned jobs)
{
    search_result res;
    res.slots = search_slots(space);
    uint64_t total = count_candidates(space);
    if (total > space.max_candidates)
        throw error(errc::config_error,
                    fmt::format("search space has {} candidates, above the limit {}",
                                total == UINT64_MAX ? std::string("> 2^62") : std::to_string(total),
                                space.max_candidates));
    if (space.max_degree * std::log2(double(space.spectrum.params.q())) > 40)
        throw error(errc::config_error, "search degrees too large for exact ranking");
    jobs = std::max(1u, jobs);

    top_list merged { std::max<size_t>(1, space.top_n), {} };
    for (uint64_t t : space.t_values) {
        if (t == 0 || int64_t(t) > space.spectrum.places(1)) continue;
        std::vector<enumerator> parts;
        for (unsigned j = 0; j < jobs; ++j) parts.emplace_back(space, res.slots, t, merged.cap);
        if (jobs == 1) {
            parts[0].run_strided(0, 1);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned j = 0; j < jobs; ++j)
                pool.emplace_back([&parts, j, jobs] { parts[j].run_strided(j, jobs); });
        }
        for (auto const & p : parts) {
            res.candidates += p.candidates;
            res.certified += p.certified;
            for (auto const & c : p.top.items) merged.offer(c);
        }
    }
    if (merged.items.empty())
        throw error(errc::empty_space,
                    fmt::format("none of the {} candidate plans certifies an infinite tower",
                                res.candidates));

    for (auto const & c : merged.items) {
        ranked_plan rp;
        rp.plan.params = space.spectrum.params;
        rp.plan.t = c.t;
        rp.plan.available = space.spectrum;
        for (size_t i = 0; i < res.slots.size(); ++i)
            if (c.m[i]) rp.plan.entries.push_back({ res.slots[i].degree, c.m[i], res.slots[i].nu });
        rp.multiplicities = c.m;
        rp.certificate = certify_tower(space.base_genus, rp.plan);
        /* the integer ranking key and the exact certificate must agree */
        rational key(bigint(int64_t(c.num)), bigint(int64_t(c.den)));
        key.canonicalize();
        if (!rp.certificate.infinite || *rp.certificate.bound_refined != key)
            throw std::logic_error("search ranking disagrees with the certificate");
        res.ranked.push_back(std::move(rp));
    }
    return res;
}

method_comparison compare_methods(method_comparison_input const & in)
{
    method_comparison r;
    int64_t Tk = in.t + in.s_prime;
    r.usual.d_lower = in.s * in.l - (Tk - 1) - in.l;
    r.usual.rd_upper = in.T_size - 1;
    r.ours.d_lower = in.s * in.l - (Tk - 1);
    r.ours.rd_upper = in.s * (in.l + 1) * in.l / 2 - in.s_prime * in.l + Tk - 1;
    r.usual.infinite = gs_margin_raw(r.usual.d_lower, r.usual.rd_upper);
    r.ours.infinite = gs_margin_raw(r.ours.d_lower, r.ours.rd_upper);
    return r;
}

} // namespace cftower
