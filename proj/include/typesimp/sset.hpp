#pragma once

// Finite truncated simplicial sets given by face and degeneracy tables, a few
// presets built from vertex sequences, and the extra-degeneracy probe.

#include "typesimp/error.hpp"
#include "typesimp/functor.hpp"
#include "typesimp/index_map.hpp"
#include "typesimp/lifting.hpp"
#include "typesimp/natural_transformation.hpp"
#include "typesimp/union_find.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace typesimp
{

/// Levels 0..K in simplicial indexing. face(k, i, x) = d_i x for x in X_k, k >= 1;
/// degeneracy(k, i, x) = s_i x for x in X_k, k < K.
class simplicial_set
{
public:
    struct level
    {
        std::vector<std::string> labels;
        std::vector<std::vector<std::size_t>> faces;        ///< faces[i][x], i = 0..k (empty at k = 0)
        std::vector<std::vector<std::size_t>> degeneracies; ///< degeneracies[i][x], i = 0..k (empty at k = K)
    };

    simplicial_set(std::string name, std::vector<level> levels) : name_{ std::move(name) }, levels_{ std::move(levels) }
    {
        if (levels_.empty())
            throw invalid_argument("simplicial set needs at least level 0");
        const int top = this->top();
        for (int k = 0; k <= top; ++k)
        {
            const auto& l = levels_[static_cast<std::size_t>(k)];
            const auto nfaces = k == 0 ? 0U : static_cast<std::size_t>(k) + 1;
            const auto ndeg = k == top ? 0U : static_cast<std::size_t>(k) + 1;
            if (l.faces.size() != nfaces || l.degeneracies.size() != ndeg)
                throw invalid_argument("simplicial set: wrong number of operators at level " + std::to_string(k));
            for (const auto& f : l.faces)
                check_table(f, l.labels.size(), size(k - 1), k);
            for (const auto& s : l.degeneracies)
                check_table(s, l.labels.size(), size(k + 1), k);
        }
    }

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] int top() const { return static_cast<int>(levels_.size()) - 1; }
    [[nodiscard]] std::size_t size(int k) const { return lvl(k).labels.size(); }
    [[nodiscard]] std::size_t face(int k, int i, std::size_t x) const
    {
        return lvl(k).faces.at(static_cast<std::size_t>(i)).at(x);
    }
    [[nodiscard]] std::size_t degeneracy(int k, int i, std::size_t x) const
    {
        return lvl(k).degeneracies.at(static_cast<std::size_t>(i)).at(x);
    }
    [[nodiscard]] const std::string& label(int k, std::size_t x) const { return lvl(k).labels.at(x); }
    [[nodiscard]] const std::vector<level>& levels() const { return levels_; }

    [[nodiscard]] std::optional<std::size_t> find(int k, const std::string& label) const
    {
        const auto& ls = lvl(k).labels;
        const auto it = std::find(ls.begin(), ls.end(), label);
        if (it == ls.end())
            return std::nullopt;
        return static_cast<std::size_t>(it - ls.begin());
    }

    /// A vertex of x (its last one).
    [[nodiscard]] std::size_t vertex_of(int k, std::size_t x) const
    {
        for (; k > 0; --k)
            x = face(k, 0, x);
        return x;
    }

    /// x acted on by a monotone map s: [m-1] -> [n-1] given in functor indexing (x in X_{n-1}).
    /// The map factors as a surjection followed by an injection; the injection acts by
    /// faces at the missing indices (largest first), the surjection by degeneracies s_p
    /// wherever s(p) = s(p+1) (smallest first).
    [[nodiscard]] std::size_t act(const index_map& s, std::size_t x) const
    {
        if (!s.monotone())
            throw invalid_argument("simplicial sets admit only monotone index maps");
        int k = s.target_size() - 1;
        std::vector<bool> hit(static_cast<std::size_t>(s.target_size()), false);
        for (int v : s.values())
            hit[static_cast<std::size_t>(v)] = true;
        for (int i = s.target_size() - 1; i >= 0; --i)
            if (!hit[static_cast<std::size_t>(i)])
                x = face(k--, i, x);
        const auto& v = s.values();
        for (std::size_t p = 0; p + 1 < v.size(); ++p)
            if (v[p] == v[p + 1])
                x = degeneracy(k++, static_cast<int>(p), x);
        return x;
    }

private:
    [[nodiscard]] const level& lvl(int k) const
    {
        if (k < 0 || k > top())
            throw invalid_argument("simplicial level " + std::to_string(k) + " outside 0.." + std::to_string(top()));
        return levels_[static_cast<std::size_t>(k)];
    }

    static void check_table(const std::vector<std::size_t>& t, std::size_t from, std::size_t to, int k)
    {
        if (t.size() != from)
            throw invalid_argument("simplicial set: operator table at level " + std::to_string(k) +
                                   " has the wrong size");
        for (auto v : t)
            if (v >= to)
                throw invalid_argument("simplicial set: operator at level " + std::to_string(k) +
                                       " leaves its target");
    }

    std::string name_;
    std::vector<level> levels_;
};

/// First failing simplicial identity, or an empty string.
inline std::string check_simplicial_identities(const simplicial_set& s)
{
    const int top = s.top();
    auto fail = [](const std::string& what, int k, std::size_t x) {
        return what + " fails on simplex " + std::to_string(x) + " of level " + std::to_string(k);
    };
    for (int k = 0; k <= top; ++k)
        for (std::size_t x = 0; x < s.size(k); ++x)
        {
            // d_i d_j = d_{j-1} d_i for i < j
            if (k >= 2)
                for (int j = 0; j <= k; ++j)
                    for (int i = 0; i < j; ++i)
                        if (s.face(k - 1, i, s.face(k, j, x)) != s.face(k - 1, j - 1, s.face(k, i, x)))
                            return fail("d_i d_j = d_{j-1} d_i", k, x);
            if (k + 1 <= top)
                for (int j = 0; j <= k; ++j)
                {
                    const auto sj = s.degeneracy(k, j, x);
                    for (int i = 0; i <= k + 1; ++i)
                    {
                        const auto lhs = s.face(k + 1, i, sj);
                        if (i == j || i == j + 1)
                        {
                            if (lhs != x)
                                return fail("d_j s_j = d_{j+1} s_j = id", k, x);
                        }
                        else if (k >= 1 && i < j)
                        {
                            if (lhs != s.degeneracy(k - 1, j - 1, s.face(k, i, x)))
                                return fail("d_i s_j = s_{j-1} d_i", k, x);
                        }
                        else if (k >= 1 && i > j + 1)
                        {
                            if (lhs != s.degeneracy(k - 1, j, s.face(k, i - 1, x)))
                                return fail("d_i s_j = s_j d_{i-1}", k, x);
                        }
                    }
                    // s_i s_j = s_{j+1} s_i for i <= j
                    if (k + 2 <= top)
                        for (int i = 0; i <= j; ++i)
                            if (s.degeneracy(k + 1, i, sj) != s.degeneracy(k + 1, j + 1, s.degeneracy(k, i, x)))
                                return fail("s_i s_j = s_{j+1} s_i", k, x);
                }
        }
    return {};
}

namespace detail
{

class sset_functor_data final : public functor_data
{
public:
    explicit sset_functor_data(std::shared_ptr<const simplicial_set> s) : s_{ std::move(s) } {}

    int max_depth() const override { return s_->top() + 1; }
    std::size_t level_size(int n) const override { return s_->size(n - 1); }
    std::size_t act(const index_map& s, std::size_t x) const override { return s_->act(s, x); }
    std::string label(int n, std::size_t x) const override { return s_->label(n - 1, x); }
    std::string name() const override { return s_->name(); }
    bool symmetric() const override { return false; }

private:
    std::shared_ptr<const simplicial_set> s_;
};

} // namespace detail

/// Level n of the functor is X_{n-1}; index class MONOTONE.
inline truncated_functor to_functor(const simplicial_set& s)
{
    return { std::make_shared<const detail::sset_functor_data>(std::make_shared<const simplicial_set>(s)),
             index_class::monotone };
}

/// Vertex sequences (v_0..v_k) allowed level by level; faces delete and degeneracies
/// repeat an entry, followed by canonicalization.
struct sequence_model
{
    std::string name;
    std::vector<std::string> vertices;
    /// Whether b may follow a.
    std::function<bool(int, int)> step;
    /// Extra condition on complete sequences (after canonicalization).
    std::function<bool(const std::vector<int>&)> keep = [](const std::vector<int>&) { return true; };
    std::function<std::vector<int>(std::vector<int>)> canonical = [](std::vector<int> v) { return v; };
};

constexpr std::size_t default_simplex_budget = 1'000'000;

inline simplicial_set build_from_sequences(const sequence_model& m, int top, std::size_t budget = default_simplex_budget)
{
    if (top < 0)
        throw invalid_argument("truncation depth must be nonnegative");
    std::vector<std::vector<std::vector<int>>> seqs(static_cast<std::size_t>(top) + 1);
    std::size_t total = 0;
    for (int k = 0; k <= top; ++k)
    {
        auto& out = seqs[static_cast<std::size_t>(k)];
        std::vector<int> cur;
        auto rec = [&](auto& self) -> void {
            if (static_cast<int>(cur.size()) == k + 1)
            {
                if (m.canonical(cur) == cur && m.keep(cur))
                {
                    if (++total > budget)
                        throw budget_exceeded("preset " + m.name + " exceeds the budget of " + std::to_string(budget) +
                                              " simplices");
                    out.push_back(cur);
                }
                return;
            }
            for (int v = 0; v < static_cast<int>(m.vertices.size()); ++v)
                if (cur.empty() || m.step(cur.back(), v))
                {
                    cur.push_back(v);
                    self(self);
                    cur.pop_back();
                }
        };
        rec(rec);
    }

    auto lookup = [&](int k, const std::vector<int>& v) {
        const auto& l = seqs[static_cast<std::size_t>(k)];
        const auto c = m.canonical(v);
        const auto it = std::lower_bound(l.begin(), l.end(), c);
        if (it == l.end() || *it != c)
            throw error("preset " + m.name + " is not closed under faces and degeneracies");
        return static_cast<std::size_t>(it - l.begin());
    };

    std::vector<simplicial_set::level> levels(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k)
    {
        auto& l = levels[static_cast<std::size_t>(k)];
        const auto& cur = seqs[static_cast<std::size_t>(k)];
        for (const auto& v : cur)
        {
            std::string s = "(";
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? "," : "") + m.vertices[static_cast<std::size_t>(v[i])];
            l.labels.push_back(s + ")");
        }
        if (k > 0)
            for (int i = 0; i <= k; ++i)
            {
                std::vector<std::size_t> tab;
                for (auto v : cur)
                {
                    v.erase(v.begin() + i);
                    tab.push_back(lookup(k - 1, v));
                }
                l.faces.push_back(std::move(tab));
            }
        if (k < top)
            for (int i = 0; i <= k; ++i)
            {
                std::vector<std::size_t> tab;
                for (auto v : cur)
                {
                    v.insert(v.begin() + i, v[static_cast<std::size_t>(i)]);
                    tab.push_back(lookup(k + 1, v));
                }
                l.degeneracies.push_back(std::move(tab));
            }
    }
    return { m.name, std::move(levels) };
}

/// A finite poset: element names and the strict relation as pairs (a, b) meaning a < b.
struct poset_spec
{
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> less;
};

/// "a<b,b<c" (isolated elements may be listed alone: "a<b,c").
inline poset_spec parse_poset(const std::string& text)
{
    poset_spec p;
    std::set<std::string> names;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (item.empty())
            throw invalid_argument("poset: empty item in '" + text + "'");
        const auto lt = item.find('<');
        if (lt == std::string::npos)
        {
            names.insert(item);
            continue;
        }
        const auto a = item.substr(0, lt);
        const auto b = item.substr(lt + 1);
        if (a.empty() || b.empty() || b.find('<') != std::string::npos)
            throw invalid_argument("poset: malformed relation '" + item + "'");
        names.insert(a);
        names.insert(b);
        p.less.emplace_back(a, b);
    }
    p.elements.assign(names.begin(), names.end());
    if (p.elements.empty())
        throw invalid_argument("poset: no elements");
    return p;
}

inline sequence_model nerve_model(const poset_spec& p)
{
    auto elems = p.elements;
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
        throw invalid_argument("poset: duplicate element");
    const auto n = elems.size();
    auto index = [&](const std::string& s) {
        const auto it = std::lower_bound(elems.begin(), elems.end(), s);
        if (it == elems.end() || *it != s)
            throw invalid_argument("poset: unknown element '" + s + "'");
        return static_cast<std::size_t>(it - elems.begin());
    };
    auto le = std::make_shared<std::vector<std::vector<bool>>>(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        (*le)[i][i] = true;
    for (const auto& [a, b] : p.less)
    {
        const auto i = index(a);
        const auto j = index(b);
        if (i == j)
            throw invalid_argument("poset: " + a + " < " + a + " is not strict");
        (*le)[i][j] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if ((*le)[i][k] && (*le)[k][j])
                    (*le)[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if ((*le)[i][j] && (*le)[j][i])
                throw invalid_argument("poset: cycle through " + elems[i] + " and " + elems[j]);
    sequence_model m;
    m.name = "nerve-poset";
    m.vertices = elems;
    m.step = [le](int a, int b) { return (*le)[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
    return m;
}

inline simplicial_set nerve_of(const poset_spec& p, int top, std::size_t budget = default_simplex_budget)
{
    return build_from_sequences(nerve_model(p), top, budget);
}

namespace detail
{

inline int preset_parameter(const std::string& name, const std::string& prefix)
{
    const auto arg = name.substr(prefix.size());
    if (arg.empty() || !std::all_of(arg.begin(), arg.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        arg.size() > 4)
        throw invalid_argument("preset " + name + ": expected a small nonnegative integer after '" + prefix + "'");
    return std::stoi(arg);
}

inline std::vector<std::string> numbered(int count)
{
    std::vector<std::string> v;
    for (int i = 0; i < count; ++i)
        v.push_back(std::to_string(i));
    return v;
}

} // namespace detail

/// simplex:k, boundary:k, circle, discrete:k, nerve-poset:<a<b,...>, truncated at level `top`.
inline simplicial_set build_preset(const std::string& name, int top, std::size_t budget = default_simplex_budget)
{
    auto starts = [&](const std::string& p) { return name.rfind(p, 0) == 0; };
    sequence_model m;
    m.name = name;
    auto monotone = [](int a, int b) { return a <= b; };
    if (starts("simplex:"))
    {
        const int k = detail::preset_parameter(name, "simplex:");
        m.vertices = detail::numbered(k + 1);
        m.step = monotone;
    }
    else if (starts("boundary:"))
    {
        const int k = detail::preset_parameter(name, "boundary:");
        if (k < 1)
            throw invalid_argument("preset boundary:k needs k >= 1");
        m.vertices = detail::numbered(k + 1);
        m.step = monotone;
        m.keep = [k](const std::vector<int>& v) {
            std::set<int> seen(v.begin(), v.end());
            return static_cast<int>(seen.size()) < k + 1;
        };
    }
    else if (starts("discrete:"))
    {
        const int k = detail::preset_parameter(name, "discrete:");
        if (k < 1)
            throw invalid_argument("preset discrete:k needs k >= 1");
        m.vertices = detail::numbered(k);
        m.step = [](int a, int b) { return a == b; };
    }
    else if (name == "circle")
    {
        m.vertices = { "0", "1" };
        m.step = monotone;
        m.canonical = [](std::vector<int> v) {
            if (std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>{}) == v.end())
                std::fill(v.begin(), v.end(), 0);
            return v;
        };
    }
    else if (starts("nerve-poset:"))
    {
        m = nerve_model(parse_poset(name.substr(std::string{ "nerve-poset:" }.size())));
        m.name = name;
    }
    else
        throw invalid_argument("unknown preset '" + name + "'");
    return build_from_sequences(m, top, budget);
}

/// Connected components of the vertex set under the endpoints of edges, each sorted,
/// ordered by least vertex.
inline std::vector<std::vector<std::size_t>> components(const simplicial_set& s)
{
    union_find uf(s.size(0));
    if (s.top() >= 1)
        for (std::size_t e = 0; e < s.size(1); ++e)
            uf.unite(s.face(1, 0, e), s.face(1, 1, e));
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t v = 0; v < s.size(0); ++v)
        by_root[uf.find(v)].push_back(v);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, vs] : by_root)
        out.push_back(std::move(vs));
    std::sort(out.begin(), out.end());
    return out;
}

/// The simplices whose vertices lie in `vertices` (a union of components).
inline simplicial_set restrict_to(const simplicial_set& s, const std::vector<std::size_t>& vertices)
{
    const std::set<std::size_t> keep_v(vertices.begin(), vertices.end());
    const int top = s.top();
    std::vector<std::vector<std::size_t>> kept(static_cast<std::size_t>(top) + 1);
    std::vector<std::vector<std::size_t>> new_index(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k)
    {
        auto& ni = new_index[static_cast<std::size_t>(k)];
        ni.assign(s.size(k), SIZE_MAX);
        for (std::size_t x = 0; x < s.size(k); ++x)
            if (keep_v.contains(s.vertex_of(k, x)))
            {
                ni[x] = kept[static_cast<std::size_t>(k)].size();
                kept[static_cast<std::size_t>(k)].push_back(x);
            }
    }
    auto remap = [&](int k, std::size_t y) {
        const auto r = new_index[static_cast<std::size_t>(k)][y];
        if (r == SIZE_MAX)
            throw invalid_argument("restrict_to: vertex set is not a union of components");
        return r;
    };
    std::vector<simplicial_set::level> levels(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k)
    {
        auto& l = levels[static_cast<std::size_t>(k)];
        const auto& ks = kept[static_cast<std::size_t>(k)];
        for (auto x : ks)
            l.labels.push_back(s.label(k, x));
        if (k > 0)
            for (int i = 0; i <= k; ++i)
            {
                std::vector<std::size_t> tab;
                for (auto x : ks)
                    tab.push_back(remap(k - 1, s.face(k, i, x)));
                l.faces.push_back(std::move(tab));
            }
        if (k < top)
            for (int i = 0; i <= k; ++i)
            {
                std::vector<std::size_t> tab;
                for (auto x : ks)
                    tab.push_back(remap(k + 1, s.degeneracy(k, i, x)));
                l.degeneracies.push_back(std::move(tab));
            }
    }
    return { s.name(), std::move(levels) };
}

/// a + b at the smaller common truncation; labels are prefixed "a:" and "b:".
inline simplicial_set disjoint_union(const simplicial_set& a, const simplicial_set& b)
{
    const int top = std::min(a.top(), b.top());
    std::vector<simplicial_set::level> levels(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k)
    {
        auto& l = levels[static_cast<std::size_t>(k)];
        for (std::size_t x = 0; x < a.size(k); ++x)
            l.labels.push_back("a:" + a.label(k, x));
        for (std::size_t x = 0; x < b.size(k); ++x)
            l.labels.push_back("b:" + b.label(k, x));
        auto glue = [&](auto op, int to) {
            std::vector<std::size_t> tab;
            for (std::size_t x = 0; x < a.size(k); ++x)
                tab.push_back(op(a, x));
            for (std::size_t x = 0; x < b.size(k); ++x)
                tab.push_back(a.size(to) + op(b, x));
            return tab;
        };
        if (k > 0)
            for (int i = 0; i <= k; ++i)
                l.faces.push_back(glue([&](const simplicial_set& s, std::size_t x) { return s.face(k, i, x); }, k - 1));
        if (k < top)
            for (int i = 0; i <= k; ++i)
                l.degeneracies.push_back(
                    glue([&](const simplicial_set& s, std::size_t x) { return s.degeneracy(k, i, x); }, k + 1));
    }
    return { a.name() + "+" + b.name(), std::move(levels) };
}

/// The lifting problem whose sections are extra degeneracies up to level d.
inline lifting_problem extra_degeneracy_problem(const simplicial_set& s, int d)
{
    if (d < 1 || d > s.top() - 1)
        throw invalid_argument("probe depth " + std::to_string(d) + " needs a truncation of at least " +
                               std::to_string(d + 1) + ", have " + std::to_string(s.top()));
    const auto f = to_functor(s).truncated(d + 1);
    return { tail_projection(f), identity_transformation(f.truncated(d)) };
}

struct component_probe
{
    std::vector<std::size_t> vertices;
    bool section_exists = false;
    /// Simplicial level at which the search died, when no section exists.
    int failure_level = -1;
};

struct probe_report
{
    int depth = 0;
    bool section_exists = false;
    int failure_level = -1;
    std::optional<section> witness;
    std::vector<component_probe> per_component;
};

inline probe_report contractibility_probe(const simplicial_set& s, int d, bool per_component = true)
{
    probe_report rep;
    rep.depth = d;
    const auto r = solve_lifting(extra_degeneracy_problem(s, d), solve_mode::find_one);
    rep.section_exists = r.exists();
    if (r.exists())
        rep.witness = r.sections.front();
    else
        rep.failure_level = r.deepest_level - 1;
    if (per_component)
        for (const auto& comp : components(s))
        {
            const auto sub = contractibility_probe(restrict_to(s, comp), d, false);
            rep.per_component.push_back({ comp, sub.section_exists, sub.failure_level });
        }
    return rep;
}

} // namespace typesimp
