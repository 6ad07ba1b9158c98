#pragma once

// Square-filling (lifting) problems between truncated functors and an exhaustive
// backtracking solver for them.
//
// Given u: E -> X and v: P -> X, a section is a natural transformation w: P -> E
// with u o w = v. Each (level, element) of P is a variable whose domain is the
// fiber of u over v(element). Naturality along the generating maps of the index
// category (cofaces, codegeneracies and, for symmetric functors, adjacent
// transpositions) forces values across levels; these are propagated eagerly on
// every assignment. Full naturality is re-verified on every returned section.

#include "typesimp/error.hpp"
#include "typesimp/functor.hpp"
#include "typesimp/natural_transformation.hpp"
#include "typesimp/union_find.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace typesimp
{

class lifting_problem
{
public:
    /// over: u: E -> X, along: v: P -> X.
    lifting_problem(natural_transformation over, natural_transformation along)
        : over_{ std::move(over) }, along_{ std::move(along) }
    {
        if (!over_.target().equivalent(along_.target()))
            throw invalid_argument("lifting_problem: " + over_.target().name() + " and " + along_.target().name() +
                                   " are not the same base");
        const auto& p = along_.source();
        const auto& e = over_.source();
        const auto& x = over_.target();
        if (p.depth() != e.depth() || e.depth() != x.depth())
            throw invalid_argument("lifting_problem: functors must share depth");
        if (p.cls() != e.cls() || e.cls() != x.cls())
            throw invalid_argument("lifting_problem: functors must share index class");
    }

    [[nodiscard]] const natural_transformation& over() const { return over_; }
    [[nodiscard]] const natural_transformation& along() const { return along_; }
    [[nodiscard]] const truncated_functor& base() const { return over_.target(); }
    [[nodiscard]] const truncated_functor& total() const { return over_.source(); }
    [[nodiscard]] const truncated_functor& source() const { return along_.source(); }
    [[nodiscard]] int depth() const { return base().depth(); }
    [[nodiscard]] index_class cls() const { return base().cls(); }

private:
    natural_transformation over_;
    natural_transformation along_;
};

/// A verified solution of a lifting problem.
class section
{
public:
    section(const lifting_problem& problem, natural_transformation map) : map_{ std::move(map) }
    {
        if (!map_.source().equivalent(problem.source()) || !map_.target().equivalent(problem.total()))
            throw invalid_argument("section: map has the wrong source or target");
        for (int n = 1; n <= map_.depth(); ++n)
            for (std::size_t x = 0; x < problem.source().level_size(n); ++x)
                if (problem.over()(n, map_(n, x)) != problem.along()(n, x))
                    throw invalid_argument("section: fiber condition fails at level " + std::to_string(n) + " on " +
                                           problem.source().label(n, x));
        require_natural(map_, "section");
    }

    [[nodiscard]] const natural_transformation& map() const { return map_; }
    [[nodiscard]] std::size_t operator()(int n, std::size_t x) const { return map_(n, x); }

    friend bool operator==(const section& a, const section& b) { return a.map_ == b.map_; }

private:
    natural_transformation map_;
};

enum class solve_mode
{
    find_one,
    count,
    enumerate
};

struct lifting_result
{
    solve_mode mode = solve_mode::find_one;
    std::uint64_t count = 0;
    std::vector<section> sections;
    /// When no section exists: the deepest level at which the search assigned a value.
    int deepest_level = 0;

    [[nodiscard]] bool exists() const { return count > 0; }
};

struct solver_options
{
    /// ENUMERATE refuses to materialise more sections than this.
    std::uint64_t enumerate_limit = 1'000'000;
};

namespace detail
{

class lifting_search
{
public:
    explicit lifting_search(const lifting_problem& p) : problem_{ p }
    {
        const auto& src = p.source();
        const auto& tot = p.total();
        const int depth = p.depth();
        const bool symmetric = p.cls() == index_class::all;

        offsets_.push_back(0);
        for (int n = 1; n <= depth; ++n)
            offsets_.push_back(offsets_.back() + src.level_size(n));
        const std::size_t nvars = offsets_.back();
        level_.resize(nvars);
        element_.resize(nvars);
        for (int n = 1; n <= depth; ++n)
            for (std::size_t x = 0; x < src.level_size(n); ++x)
            {
                level_[var(n, x)] = n;
                element_[var(n, x)] = x;
            }

        // Fibers of u, bucketed by base element.
        fibers_.resize(static_cast<std::size_t>(depth) + 1);
        for (int n = 1; n <= depth; ++n)
        {
            auto& buckets = fibers_[static_cast<std::size_t>(n)];
            buckets.resize(p.base().level_size(n));
            for (std::size_t e = 0; e < tot.level_size(n); ++e)
                buckets[p.over()(n, e)].push_back(e);
        }

        // Generating maps s: m -> n, grouped by n.
        by_level_.resize(static_cast<std::size_t>(depth) + 1);
        auto add = [&](int n, index_map s) {
            generator g{ std::move(s), {} };
            g.total_action.resize(tot.level_size(n));
            for (std::size_t e = 0; e < g.total_action.size(); ++e)
                g.total_action[e] = tot.act(g.map, e);
            by_level_[static_cast<std::size_t>(n)].push_back(generators_.size());
            generators_.push_back(std::move(g));
        };
        for (int n = 1; n <= depth; ++n)
        {
            if (n >= 2)
                for (int i = 0; i < n; ++i)
                    add(n, index_map::coface(n, i));
            if (n + 1 <= depth)
                for (int i = 0; i < n; ++i)
                    add(n, index_map::codegeneracy(n, i));
            if (symmetric)
                for (int i = 0; i + 1 < n; ++i)
                    add(n, index_map::transposition(n, i, i + 1));
        }

        edges_.resize(nvars);
        for (std::size_t a = 0; a < nvars; ++a)
        {
            const int n = level_[a];
            for (auto gi : by_level_[static_cast<std::size_t>(n)])
            {
                const auto& s = generators_[gi].map;
                edges_[a].push_back({ gi, var(s.source_size(), src.act(s, element_[a])) });
            }
        }

        value_.assign(nvars, unassigned);
    }

    [[nodiscard]] std::size_t variable_count() const { return level_.size(); }

    /// Partition of the variables into independent groups, each sorted, groups ordered by first variable.
    [[nodiscard]] std::vector<std::vector<std::size_t>> components() const
    {
        union_find uf(variable_count());
        for (std::size_t a = 0; a < variable_count(); ++a)
            for (const auto& e : edges_[a])
                uf.unite(a, e.neighbor);
        std::vector<std::vector<std::size_t>> groups;
        std::vector<std::size_t> index(variable_count(), npos);
        for (std::size_t a = 0; a < variable_count(); ++a)
        {
            const auto r = uf.find(a);
            if (index[r] == npos)
            {
                index[r] = groups.size();
                groups.emplace_back();
            }
            groups[index[r]].push_back(a);
        }
        return groups;
    }

    /// Depth-first search over one group. `on_solution` receives the group's values
    /// and returns false to stop.
    template <typename OnSolution>
    void search(const std::vector<std::size_t>& group, OnSolution&& on_solution)
    {
        deepest_ = 0;
        stopped_ = false;
        dfs(group, 0, on_solution);
    }

    [[nodiscard]] int deepest() const { return deepest_; }
    [[nodiscard]] std::size_t value(std::size_t a) const { return value_[a]; }
    [[nodiscard]] int level(std::size_t a) const { return level_[a]; }
    [[nodiscard]] std::size_t element(std::size_t a) const { return element_[a]; }

private:
    static constexpr std::size_t unassigned = std::numeric_limits<std::size_t>::max();
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    struct generator
    {
        index_map map;
        std::vector<std::size_t> total_action;
    };
    struct edge
    {
        std::size_t gen;
        std::size_t neighbor;
    };

    [[nodiscard]] std::size_t var(int n, std::size_t x) const { return offsets_[static_cast<std::size_t>(n - 1)] + x; }

    [[nodiscard]] const std::vector<std::size_t>& domain(std::size_t a) const
    {
        const auto n = level_[a];
        return fibers_[static_cast<std::size_t>(n)][problem_.along()(n, element_[a])];
    }

    bool assign(std::size_t a, std::size_t e)
    {
        pending_.clear();
        pending_.emplace_back(a, e);
        while (!pending_.empty())
        {
            const auto [b, v] = pending_.back();
            pending_.pop_back();
            if (value_[b] != unassigned)
            {
                if (value_[b] != v)
                    return false;
                continue;
            }
            const int n = level_[b];
            if (problem_.over()(n, v) != problem_.along()(n, element_[b]))
                return false;
            value_[b] = v;
            trail_.push_back(b);
            deepest_ = std::max(deepest_, n);
            for (const auto& ed : edges_[b])
                pending_.emplace_back(ed.neighbor, generators_[ed.gen].total_action[v]);
        }
        return true;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark)
        {
            value_[trail_.back()] = unassigned;
            trail_.pop_back();
        }
    }

    template <typename OnSolution>
    void dfs(const std::vector<std::size_t>& group, std::size_t from, OnSolution& on_solution)
    {
        while (from < group.size() && value_[group[from]] != unassigned)
            ++from;
        if (from == group.size())
        {
            std::vector<std::size_t> values;
            values.reserve(group.size());
            for (auto a : group)
                values.push_back(value_[a]);
            if (!on_solution(values))
                stopped_ = true;
            return;
        }
        const auto a = group[from];
        for (auto e : domain(a))
        {
            const auto mark = trail_.size();
            if (assign(a, e))
                dfs(group, from + 1, on_solution);
            undo(mark);
            if (stopped_)
                return;
        }
    }

    const lifting_problem& problem_;
    std::vector<std::size_t> offsets_;
    std::vector<int> level_;
    std::vector<std::size_t> element_;
    std::vector<std::vector<std::vector<std::size_t>>> fibers_;
    std::vector<generator> generators_;
    std::vector<std::vector<std::size_t>> by_level_;
    std::vector<std::vector<edge>> edges_;
    std::vector<std::size_t> value_;
    std::vector<std::size_t> trail_;
    std::vector<std::pair<std::size_t, std::size_t>> pending_;
    int deepest_ = 0;
    bool stopped_ = false;
};

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw budget_exceeded("section count overflows 64 bits");
    return r;
}

} // namespace detail

/// Solve a lifting problem exhaustively.
///
/// Independent groups of variables are searched separately; the result is the
/// same as a single depth-first search over all variables in (level, element)
/// order with candidates in ascending identifier order: ENUMERATE returns the
/// sections in lexicographic order of their value tables.
inline lifting_result solve_lifting(const lifting_problem& problem, solve_mode mode, const solver_options& opts = {})
{
    detail::lifting_search search(problem);
    const auto groups = search.components();

    lifting_result result;
    result.mode = mode;

    std::vector<std::vector<std::vector<std::size_t>>> per_group(groups.size());
    std::vector<std::uint64_t> counts(groups.size(), 0);
    for (std::size_t g = 0; g < groups.size(); ++g)
    {
        search.search(groups[g], [&](const std::vector<std::size_t>& values) {
            ++counts[g];
            if (mode != solve_mode::count)
            {
                if (per_group[g].size() >= opts.enumerate_limit)
                    throw budget_exceeded("more than " + std::to_string(opts.enumerate_limit) + " partial sections");
                per_group[g].push_back(values);
            }
            return mode != solve_mode::find_one;
        });
        if (counts[g] == 0)
        {
            result.count = 0;
            result.deepest_level = search.deepest();
            return result;
        }
    }

    std::uint64_t total = 1;
    for (auto c : counts)
        total = detail::checked_mul(total, c);
    result.count = mode == solve_mode::find_one ? 1 : total;
    if (mode == solve_mode::count)
        return result;
    if (mode == solve_mode::enumerate && total > opts.enumerate_limit)
        throw budget_exceeded(std::to_string(total) + " sections exceed the enumeration limit of " +
                              std::to_string(opts.enumerate_limit));

    // Cartesian product of the per-group solutions, then canonical order.
    const std::size_t nvars = search.variable_count();
    std::vector<std::vector<std::size_t>> full;
    std::vector<std::size_t> choice(groups.size(), 0);
    for (bool more = true; more;)
    {
        std::vector<std::size_t> values(nvars);
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (std::size_t i = 0; i < groups[g].size(); ++i)
                values[groups[g][i]] = per_group[g][choice[g]][i];
        full.push_back(std::move(values));
        more = false;
        for (std::size_t g = groups.size(); g-- > 0;)
        {
            if (++choice[g] < per_group[g].size())
            {
                more = true;
                break;
            }
            choice[g] = 0;
        }
    }
    std::sort(full.begin(), full.end());

    for (const auto& values : full)
    {
        std::vector<natural_transformation::table> tables;
        for (int n = 1; n <= problem.depth(); ++n)
            tables.emplace_back(problem.source().level_size(n));
        for (std::size_t a = 0; a < nvars; ++a)
            tables[static_cast<std::size_t>(search.level(a) - 1)][search.element(a)] = values[a];
        result.sections.emplace_back(problem, natural_transformation{ problem.source(), problem.total(), std::move(tables) });
    }
    return result;
}

} // namespace typesimp
