#pragma once

// Orbit spaces S_n(B) = M^n / Aut(M/B) of a finite structure, as a symmetric
// truncated functor.
//
// For a finite structure two tuples have the same type over B exactly when an
// automorphism fixing B maps one to the other, so types are computed as orbits.
// Orbit identifiers at each level follow the lexicographic order of the canonical
// representatives (the least tuple of each orbit).

#include "typesimp/error.hpp"
#include "typesimp/functor.hpp"
#include "typesimp/natural_transformation.hpp"
#include "typesimp/structure.hpp"
#include "typesimp/union_find.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace typesimp
{

struct type_space_options
{
    std::size_t tuple_budget = 1'000'000;
    std::size_t max_universe = default_max_universe;
};

namespace detail
{

class type_space_data final : public functor_data
{
public:
    struct level
    {
        std::vector<std::uint32_t> lookup; ///< encoded tuple -> orbit id
        std::vector<tuple> representatives;
        std::vector<std::size_t> sizes;
    };

    type_space_data(std::string name, finite_structure m, automorphism_group g, int depth,
                    const type_space_options& opts)
        : name_{ std::move(name) }, structure_{ std::move(m) }, group_{ std::move(g) }, depth_{ depth }
    {
        if (depth_ < 1)
            throw invalid_argument("type space depth must be positive");
        const auto u = structure_.size();
        std::size_t count = 1;
        for (int n = 1; n <= depth_; ++n)
        {
            if (count > opts.tuple_budget / u)
                throw budget_exceeded("type space level " + std::to_string(n) + " needs " + std::to_string(u) + "^" +
                                      std::to_string(n) + " tuples, over the budget of " +
                                      std::to_string(opts.tuple_budget));
            count *= u;
        }
        const auto gens = generating_set(group_);
        for (int n = 1; n <= depth_; ++n)
            levels_.push_back(build_level(n, gens));
    }

    int max_depth() const override { return depth_; }
    std::size_t level_size(int n) const override { return lvl(n).representatives.size(); }

    std::size_t act(const index_map& s, std::size_t x) const override
    {
        const auto& rep = lvl(s.target_size()).representatives.at(x);
        std::size_t code = 0;
        for (int v : s.values())
            code = code * structure_.size() + static_cast<std::size_t>(rep[static_cast<std::size_t>(v)]);
        return lvl(s.source_size()).lookup[code];
    }

    std::string label(int n, std::size_t x) const override { return tuple_label(lvl(n).representatives.at(x)); }
    std::string name() const override { return "S(" + name_ + ")"; }

    [[nodiscard]] std::string tuple_label(const tuple& t) const
    {
        std::string r = "(";
        for (std::size_t i = 0; i < t.size(); ++i)
            r += (i ? "," : "") + structure_.name_of(t[i]);
        return r + ")";
    }

    [[nodiscard]] const level& lvl(int n) const
    {
        if (n < 1 || n > depth_)
            throw invalid_argument("type space level " + std::to_string(n) + " outside depth " +
                                   std::to_string(depth_));
        return levels_[static_cast<std::size_t>(n - 1)];
    }

    [[nodiscard]] std::size_t encode(const tuple& t) const
    {
        std::size_t code = 0;
        for (auto e : t)
            code = code * structure_.size() + static_cast<std::size_t>(e);
        return code;
    }

    [[nodiscard]] tuple decode(int n, std::size_t code) const
    {
        tuple t(static_cast<std::size_t>(n));
        for (int i = n - 1; i >= 0; --i)
        {
            t[static_cast<std::size_t>(i)] = static_cast<element>(code % structure_.size());
            code /= structure_.size();
        }
        return t;
    }

    std::string name_;
    finite_structure structure_;
    automorphism_group group_;
    int depth_;
    std::vector<level> levels_;

private:
    level build_level(int n, const std::vector<permutation>& gens) const
    {
        std::size_t total = 1;
        for (int i = 0; i < n; ++i)
            total *= structure_.size();
        union_find uf(total);
        for (const auto& g : gens)
            for (std::size_t code = 0; code < total; ++code)
                uf.unite(code, encode(act_on(g, decode(n, code))));

        level out;
        out.lookup.assign(total, 0);
        std::vector<std::uint32_t> id_of_root(total, UINT32_MAX);
        for (std::size_t code = 0; code < total; ++code)
        {
            auto& id = id_of_root[uf.find(code)];
            if (id == UINT32_MAX)
            {
                id = static_cast<std::uint32_t>(out.representatives.size());
                out.representatives.push_back(decode(n, code));
                out.sizes.push_back(0);
            }
            out.lookup[code] = id;
            ++out.sizes[id];
        }
        return out;
    }
};

} // namespace detail

/// Immutable handle on an orbit space of a finite structure, levels 1..depth.
class type_space
{
public:
    static type_space build(finite_structure m, int depth, const type_space_options& opts = {},
                            std::string name = "M")
    {
        auto g = automorphisms(m, opts.max_universe);
        return type_space{ std::make_shared<const detail::type_space_data>(std::move(name), std::move(m), std::move(g),
                                                                           depth, opts) };
    }

    static type_space build_with_group(finite_structure m, automorphism_group g, int depth,
                                       const type_space_options& opts = {}, std::string name = "M")
    {
        return type_space{ std::make_shared<const detail::type_space_data>(std::move(name), std::move(m), std::move(g),
                                                                           depth, opts) };
    }

    [[nodiscard]] const std::string& name() const { return d_->name_; }
    [[nodiscard]] const finite_structure& structure() const { return d_->structure_; }
    [[nodiscard]] const automorphism_group& group() const { return d_->group_; }
    [[nodiscard]] int depth() const { return d_->depth_; }
    [[nodiscard]] std::size_t universe_size() const { return d_->structure_.size(); }

    [[nodiscard]] std::size_t orbit_count(int n) const { return d_->lvl(n).representatives.size(); }
    [[nodiscard]] const tuple& representative(int n, std::size_t orbit) const
    {
        return d_->lvl(n).representatives.at(orbit);
    }
    [[nodiscard]] std::size_t orbit_size(int n, std::size_t orbit) const { return d_->lvl(n).sizes.at(orbit); }
    [[nodiscard]] std::string label(int n, std::size_t orbit) const { return d_->label(n, orbit); }
    [[nodiscard]] std::string tuple_label(const tuple& t) const { return d_->tuple_label(t); }

    [[nodiscard]] std::size_t orbit_of(const tuple& t) const
    {
        if (t.empty() || static_cast<int>(t.size()) > depth())
            throw invalid_argument("orbit_of: tuple length " + std::to_string(t.size()) + " outside 1.." +
                                   std::to_string(depth()));
        for (auto e : t)
            if (e < 0 || static_cast<std::size_t>(e) >= universe_size())
                throw invalid_argument("orbit_of: entry outside the universe");
        return d_->lvl(static_cast<int>(t.size())).lookup[d_->encode(t)];
    }

    [[nodiscard]] std::size_t orbit_of(const std::vector<std::string>& names) const
    {
        tuple t;
        for (const auto& s : names)
            t.push_back(structure().index_of(s));
        return orbit_of(t);
    }

    /// The functor n -> S_n(B) on all maps of finite sets, truncated at depth().
    [[nodiscard]] truncated_functor functor_view(index_class cls = index_class::all) const
    {
        return truncated_functor{ d_, cls };
    }

    [[nodiscard]] bool same_as(const type_space& other) const { return d_ == other.d_; }

private:
    explicit type_space(std::shared_ptr<const detail::type_space_data> d) : d_{ std::move(d) } {}

    std::shared_ptr<const detail::type_space_data> d_;
};

/// Number of orbits on n-tuples by Burnside's lemma: the mean over G of fix(g)^n.
inline std::uint64_t burnside_count(const automorphism_group& g, int n)
{
    std::uint64_t total = 0;
    for (const auto& p : g.elements())
    {
        std::uint64_t fixed = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            fixed += p[i] == static_cast<element>(i) ? 1 : 0;
        std::uint64_t power = 1;
        for (int i = 0; i < n; ++i)
            power *= fixed;
        total += power;
    }
    if (total % g.order() != 0)
        throw error("burnside_count: sum not divisible by the group order");
    return total / g.order();
}

/// The forgetful morphism S^T(B) -> S^{T0}(B0) of a reduct.
struct reduct_result
{
    finite_structure reduced;
    type_space reduced_space;
    natural_transformation rho;
};

inline reduct_result reduct(const type_space& t, const std::set<std::string>& keep_relations,
                            const std::set<std::string>& keep_constants, const std::set<std::string>& kept_parameters,
                            const type_space_options& opts = {})
{
    const auto& m = t.structure();
    auto s = m.to_spec();
    for (const auto& r : keep_relations)
        if (!s.relations.contains(r))
            throw invalid_argument("reduct: no relation named '" + r + "'");
    for (const auto& c : keep_constants)
        if (!s.constants.contains(c))
            throw invalid_argument("reduct: no constant named '" + c + "'");
    for (const auto& b : kept_parameters)
        if (!m.is_parameter(m.index_of(b)))
            throw invalid_argument("reduct: '" + b + "' is not a parameter of the structure");

    std::erase_if(s.relations, [&](const auto& kv) { return !keep_relations.contains(kv.first); });
    std::erase_if(s.constants, [&](const auto& kv) { return !keep_constants.contains(kv.first); });
    std::erase_if(s.parameters, [&](const auto& b) { return !kept_parameters.contains(b); });

    auto reduced = finite_structure::make(s);
    auto space = type_space::build(reduced, t.depth(), opts, t.name() + "|reduct");

    std::vector<natural_transformation::table> c;
    for (int n = 1; n <= t.depth(); ++n)
    {
        natural_transformation::table tab(t.orbit_count(n));
        for (std::size_t r = 0; r < tab.size(); ++r)
            tab[r] = space.orbit_of(t.representative(n, r));
        c.push_back(std::move(tab));
    }
    natural_transformation rho{ t.functor_view(), space.functor_view(), std::move(c) };
    require_natural(rho, "reduct morphism");
    return { std::move(reduced), std::move(space), std::move(rho) };
}

} // namespace typesimp
