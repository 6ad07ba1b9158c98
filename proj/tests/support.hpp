#pragma once

// Fixture access, the --seed flag, and brute-force oracles that share no code with
// the library's search routines.

#include "typesimp/io.hpp"
#include "typesimp/lifting.hpp"
#include "typesimp/structure.hpp"
#include "typesimp/type_space.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#ifndef TYPESIMP_FIXTURE_DIR
#error "TYPESIMP_FIXTURE_DIR must be defined"
#endif

namespace oracle
{

inline std::uint64_t& seed_storage()
{
    static std::uint64_t s = 20240917;
    return s;
}

inline std::uint64_t seed() { return seed_storage(); }

/// Strip "--seed N" / "--seed=N" from argv.
inline void consume_seed_flag(int& argc, char** argv)
{
    int w = 1;
    for (int r = 1; r < argc; ++r)
    {
        const std::string a = argv[r];
        if (a == "--seed" && r + 1 < argc)
            seed_storage() = std::stoull(argv[++r]);
        else if (a.rfind("--seed=", 0) == 0)
            seed_storage() = std::stoull(a.substr(7));
        else
            argv[w++] = argv[r];
    }
    argc = w;
}

inline std::string fixture_path(const std::string& name) { return std::string{ TYPESIMP_FIXTURE_DIR } + "/" + name + ".json"; }

inline typesimp::finite_structure fixture(const std::string& name) { return typesimp::load_structure(fixture_path(name)); }

inline const std::vector<std::string>& fixture_names()
{
    static const std::vector<std::string> names{ "pure3", "pure4", "pure4b", "lin3", "lin4", "cyc4" };
    return names;
}

inline typesimp::finite_structure singleton()
{
    typesimp::finite_structure::spec s;
    s.universe = { "m1" };
    return typesimp::finite_structure::make(s);
}

/// Every permutation, kept when it maps each relation onto itself and fixes the
/// parameters and constants.
inline std::set<std::vector<int>> automorphisms(const typesimp::finite_structure& m)
{
    std::vector<int> p(m.size());
    std::iota(p.begin(), p.end(), 0);
    std::set<std::vector<int>> out;
    do
    {
        bool ok = true;
        for (auto b : m.parameters())
            ok = ok && p[static_cast<std::size_t>(b)] == b;
        for (const auto& [name, c] : m.constants())
            ok = ok && p[static_cast<std::size_t>(c)] == c;
        for (const auto& [name, r] : m.relations())
        {
            std::set<std::vector<int>> image;
            for (const auto& t : r.tuples)
            {
                std::vector<int> u;
                for (auto e : t)
                    u.push_back(p[static_cast<std::size_t>(e)]);
                image.insert(u);
            }
            ok = ok && image == r.tuples;
        }
        if (ok)
            out.insert(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline std::vector<std::vector<int>> all_tuples(std::size_t universe, int n)
{
    std::vector<std::vector<int>> out{ {} };
    for (int i = 0; i < n; ++i)
    {
        std::vector<std::vector<int>> next;
        for (const auto& t : out)
            for (std::size_t v = 0; v < universe; ++v)
            {
                auto u = t;
                u.push_back(static_cast<int>(v));
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

/// Orbits of n-tuples as explicit sets, ordered by their least element.
inline std::vector<std::set<std::vector<int>>> orbits(const std::set<std::vector<int>>& group, std::size_t universe,
                                                      int n)
{
    std::set<std::set<std::vector<int>>> found;
    for (const auto& t : all_tuples(universe, n))
    {
        std::set<std::vector<int>> orbit;
        for (const auto& g : group)
        {
            std::vector<int> u;
            for (auto e : t)
                u.push_back(g[static_cast<std::size_t>(e)]);
            orbit.insert(u);
        }
        found.insert(orbit);
    }
    std::vector<std::set<std::vector<int>>> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
    return out;
}

/// (1/|G|) sum over g of fix(g)^n.
inline std::uint64_t burnside(const std::set<std::vector<int>>& group, int n)
{
    std::uint64_t sum = 0;
    for (const auto& g : group)
    {
        std::uint64_t fixed = 0;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] == static_cast<int>(i))
                ++fixed;
        std::uint64_t p = 1;
        for (int i = 0; i < n; ++i)
            p *= fixed;
        sum += p;
    }
    return sum / group.size();
}

/// Count sections by enumerating every level-wise assignment into the fibers and
/// checking the full naturality squares; nullopt when over `limit` assignments.
inline std::optional<std::uint64_t> brute_force_sections(const typesimp::lifting_problem& p,
                                                         std::uint64_t limit = 1'000'000)
{
    using namespace typesimp;
    struct var
    {
        int level;
        std::size_t x;
        std::vector<std::size_t> fiber;
    };
    std::vector<var> vars;
    std::uint64_t raw = 1;
    for (int n = 1; n <= p.depth(); ++n)
        for (std::size_t x = 0; x < p.source().level_size(n); ++x)
        {
            var v{ n, x, {} };
            for (std::size_t e = 0; e < p.total().level_size(n); ++e)
                if (p.over()(n, e) == p.along()(n, x))
                    v.fiber.push_back(e);
            if (v.fiber.empty())
                return 0;
            raw *= v.fiber.size();
            if (raw > limit)
                return std::nullopt;
            vars.push_back(std::move(v));
        }
    std::vector<std::size_t> choice(vars.size(), 0);
    std::uint64_t count = 0;
    while (true)
    {
        std::vector<natural_transformation::table> tabs;
        for (int n = 1; n <= p.depth(); ++n)
            tabs.emplace_back(p.source().level_size(n));
        for (std::size_t i = 0; i < vars.size(); ++i)
            tabs[static_cast<std::size_t>(vars[i].level - 1)][vars[i].x] = vars[i].fiber[choice[i]];
        if (verify_naturality(natural_transformation{ p.source(), p.total(), std::move(tabs) }).ok())
            ++count;
        std::size_t i = vars.size();
        while (i > 0)
        {
            --i;
            if (++choice[i] < vars[i].fiber.size())
                break;
            choice[i] = 0;
            if (i == 0)
                return count;
        }
        if (vars.empty())
            return count;
    }
}

} // namespace oracle
