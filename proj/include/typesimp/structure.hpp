#pragma once

#include "typesimp/error.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace typesimp
{

using element = int;
using tuple = std::vector<element>;

struct relation
{
    int arity = 1;
    std::set<tuple> tuples;
};

/// A finite relational structure with named constants and a distinguished parameter set.
///
/// Elements are referred to by their position in the universe. Construct through
/// finite_structure::make(), which validates the invariants.
class finite_structure
{
public:
    struct spec
    {
        std::vector<std::string> universe;
        std::map<std::string, std::pair<int, std::vector<std::vector<std::string>>>> relations;
        std::map<std::string, std::string> constants;
        std::vector<std::string> parameters;
    };

    static finite_structure make(const spec& s)
    {
        finite_structure m;
        m.universe_ = s.universe;
        if (m.universe_.empty())
            throw invalid_argument("structure: empty universe");
        {
            auto sorted = m.universe_;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw invalid_argument("structure: duplicate universe element");
        }
        for (const auto& [name, rel] : s.relations)
        {
            const auto& [arity, rows] = rel;
            if (arity < 1)
                throw invalid_argument("structure: relation " + name + " must have positive arity");
            relation r{ arity, {} };
            for (const auto& row : rows)
            {
                if (static_cast<int>(row.size()) != arity)
                    throw invalid_argument("structure: tuple of relation " + name + " has the wrong arity");
                tuple t;
                for (const auto& e : row)
                    t.push_back(m.index_of(e));
                r.tuples.insert(std::move(t));
            }
            m.relations_.emplace(name, std::move(r));
        }
        for (const auto& [name, e] : s.constants)
            m.constants_.emplace(name, m.index_of(e));
        for (const auto& e : s.parameters)
            m.parameters_.push_back(m.index_of(e));
        std::sort(m.parameters_.begin(), m.parameters_.end());
        m.parameters_.erase(std::unique(m.parameters_.begin(), m.parameters_.end()), m.parameters_.end());
        return m;
    }

    [[nodiscard]] std::size_t size() const { return universe_.size(); }
    [[nodiscard]] const std::vector<std::string>& universe() const { return universe_; }
    [[nodiscard]] const std::string& name_of(element e) const { return universe_.at(static_cast<std::size_t>(e)); }
    [[nodiscard]] const std::map<std::string, relation>& relations() const { return relations_; }
    [[nodiscard]] const std::map<std::string, element>& constants() const { return constants_; }
    /// Sorted by universe position.
    [[nodiscard]] const std::vector<element>& parameters() const { return parameters_; }

    [[nodiscard]] bool is_parameter(element e) const
    {
        return std::binary_search(parameters_.begin(), parameters_.end(), e);
    }

    [[nodiscard]] element index_of(const std::string& name) const
    {
        const auto it = std::find(universe_.begin(), universe_.end(), name);
        if (it == universe_.end())
            throw invalid_argument("structure: '" + name + "' is not a universe element");
        return static_cast<element>(it - universe_.begin());
    }

    [[nodiscard]] spec to_spec() const
    {
        spec s;
        s.universe = universe_;
        for (const auto& [name, r] : relations_)
        {
            std::vector<std::vector<std::string>> rows;
            for (const auto& t : r.tuples)
            {
                std::vector<std::string> row;
                for (auto e : t)
                    row.push_back(name_of(e));
                rows.push_back(std::move(row));
            }
            s.relations.emplace(name, std::make_pair(r.arity, std::move(rows)));
        }
        for (const auto& [name, e] : constants_)
            s.constants.emplace(name, name_of(e));
        for (auto e : parameters_)
            s.parameters.push_back(name_of(e));
        return s;
    }

private:
    finite_structure() = default;

    std::vector<std::string> universe_;
    std::map<std::string, relation> relations_;
    std::map<std::string, element> constants_;
    std::vector<element> parameters_;
};

/// p[i] is the image of element i.
using permutation = std::vector<element>;

inline permutation identity_permutation(std::size_t n)
{
    permutation p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = static_cast<element>(i);
    return p;
}

/// (a o b)(x) = a(b(x)).
inline permutation compose(const permutation& a, const permutation& b)
{
    permutation r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] = a[static_cast<std::size_t>(b[i])];
    return r;
}

inline permutation inverse(const permutation& p)
{
    permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[static_cast<std::size_t>(p[i])] = static_cast<element>(i);
    return r;
}

inline tuple act_on(const permutation& g, const tuple& t)
{
    tuple r;
    r.reserve(t.size());
    for (auto e : t)
        r.push_back(g[static_cast<std::size_t>(e)]);
    return r;
}

/// Cycle notation with element names, "id" for the identity: "(m2 m3)(m1 m4)".
inline std::string cycle_notation(const finite_structure& m, const permutation& g)
{
    std::string out;
    std::vector<bool> seen(g.size(), false);
    for (std::size_t i = 0; i < g.size(); ++i)
    {
        if (seen[i] || g[i] == static_cast<element>(i))
            continue;
        out += "(";
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(g[j]))
        {
            seen[j] = true;
            out += (j == i ? "" : " ") + m.name_of(static_cast<element>(j));
        }
        out += ")";
    }
    return out.empty() ? "id" : out;
}

/// Whether g fixes B and every constant, and maps each relation onto itself.
inline bool is_automorphism(const finite_structure& m, const permutation& g)
{
    for (auto b : m.parameters())
        if (g[static_cast<std::size_t>(b)] != b)
            return false;
    for (const auto& [name, c] : m.constants())
        if (g[static_cast<std::size_t>(c)] != c)
            return false;
    for (const auto& [name, r] : m.relations())
        for (const auto& t : r.tuples)
            if (!r.tuples.contains(act_on(g, t)))
                return false;
    return true;
}

/// The full group Aut(M/B) as an explicit, lexicographically sorted list.
class automorphism_group
{
public:
    automorphism_group(std::size_t degree, std::vector<permutation> elements)
        : degree_{ degree }, elements_{ std::move(elements) }
    {
        std::sort(elements_.begin(), elements_.end());
    }

    [[nodiscard]] std::size_t order() const { return elements_.size(); }
    [[nodiscard]] std::size_t degree() const { return degree_; }
    [[nodiscard]] const std::vector<permutation>& elements() const { return elements_; }
    [[nodiscard]] const permutation& operator[](std::size_t i) const { return elements_[i]; }
    [[nodiscard]] bool contains(const permutation& p) const
    {
        return std::binary_search(elements_.begin(), elements_.end(), p);
    }
    [[nodiscard]] bool trivial() const { return elements_.size() == 1; }

private:
    std::size_t degree_;
    std::vector<permutation> elements_;
};

/// A generating set picked greedily in list order; each new generator at least doubles
/// the generated subgroup, so there are at most log2(|G|) of them.
inline std::vector<permutation> generating_set(const automorphism_group& g)
{
    std::vector<permutation> gens;
    std::set<permutation> generated{ identity_permutation(g.degree()) };
    for (const auto& p : g.elements())
    {
        if (generated.contains(p))
            continue;
        gens.push_back(p);
        std::vector<permutation> frontier(generated.begin(), generated.end());
        while (!frontier.empty())
        {
            std::vector<permutation> next;
            for (const auto& h : frontier)
                for (const auto& s : gens)
                {
                    auto q = compose(s, h);
                    if (generated.insert(q).second)
                        next.push_back(std::move(q));
                }
            frontier = std::move(next);
        }
    }
    return gens;
}

constexpr std::size_t default_max_universe = 8;

/// Backtracking over partial bijections. Elements are assigned in universe order;
/// a relation tuple is checked as soon as all its entries have images.
inline automorphism_group automorphisms(const finite_structure& m, std::size_t max_universe = default_max_universe)
{
    const std::size_t n = m.size();
    if (n > max_universe)
        throw budget_exceeded("universe of size " + std::to_string(n) + " exceeds the bound of " +
                              std::to_string(max_universe) + " (raise it with --max-universe)");

    std::vector<bool> pinned(n, false);
    for (auto b : m.parameters())
        pinned[static_cast<std::size_t>(b)] = true;
    for (const auto& [name, c] : m.constants())
        pinned[static_cast<std::size_t>(c)] = true;

    // Tuples that become fully assigned once element i has an image.
    struct check
    {
        const relation* rel;
        const tuple* t;
    };
    std::vector<std::vector<check>> ready(n);
    for (const auto& [name, r] : m.relations())
        for (const auto& t : r.tuples)
            ready[static_cast<std::size_t>(*std::max_element(t.begin(), t.end()))].push_back({ &r, &t });

    std::vector<permutation> found;
    permutation image(n, -1);
    std::vector<bool> used(n, false);

    auto consistent = [&](std::size_t i) {
        for (const auto& c : ready[i])
            if (!c.rel->tuples.contains(act_on(image, *c.t)))
                return false;
        return true;
    };

    auto extend = [&](auto& self, std::size_t i) -> void {
        if (i == n)
        {
            found.push_back(image);
            return;
        }
        for (std::size_t v = 0; v < n; ++v)
        {
            if (used[v] || (pinned[i] && v != i) || (pinned[v] && v != i))
                continue;
            image[i] = static_cast<element>(v);
            used[v] = true;
            if (consistent(i))
                self(self, i + 1);
            used[v] = false;
            image[i] = -1;
        }
    };
    extend(extend, 0);
    return { n, std::move(found) };
}

} // namespace typesimp
