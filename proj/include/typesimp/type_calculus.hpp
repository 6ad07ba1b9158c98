#pragma once

// Section families of the decalage projection of a type space, read as invariant
// types; parameter diagrams; stability and relative stability as lifting problems;
// the Borel comparison map.
//
// At finite scale "invariant" and "definable" coincide: every map between finite
// discrete spaces is continuous.

#include "typesimp/error.hpp"
#include "typesimp/functor.hpp"
#include "typesimp/lifting.hpp"
#include "typesimp/natural_transformation.hpp"
#include "typesimp/structure.hpp"
#include "typesimp/type_space.hpp"
#include "typesimp/union_find.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace typesimp
{

/// pi(n): S_n -> S_{n+1} for 1 <= n <= depth, natural into the decalage and a section
/// of the tail projection.
class section_family
{
public:
    /// Verifies the fiber condition, coherence and the constant head.
    section_family(type_space space, natural_transformation pi) : space_{ std::move(space) }, pi_{ std::move(pi) }
    {
        const auto view = space_.functor_view(pi_.source().cls());
        if (pi_.source().shift() != 0 || !pi_.source().same_shape(view) ||
            !pi_.target().same_shape(view.decalage()) || pi_.depth() + 1 > space_.depth())
            throw invalid_argument("section_family: map must go from the type space into its decalage");
        const auto& data = view.data();
        for (int n = 1; n <= depth(); ++n)
        {
            const auto drop = index_map::tail_inclusion(n, n + 1);
            for (std::size_t r = 0; r < pi_.source().level_size(n); ++r)
                if (data.act(drop, pi_(n, r)) != r)
                    throw invalid_argument("section_family: dropping the first coordinate of pi(" + std::to_string(n) +
                                           ")" + space_.label(n, r) + " does not return it");
        }
        require_natural(pi_, "section family");
        head_ = data.act(index_map::head_inclusion(1, 2), pi_(1, 0));
        for (int n = 1; n <= depth(); ++n)
            for (std::size_t r = 0; r < pi_.source().level_size(n); ++r)
                if (data.act(index_map::head_inclusion(1, n + 1), pi_(n, r)) != head_)
                    throw invalid_argument("section_family: head is not constant");
    }

    [[nodiscard]] const type_space& space() const { return space_; }
    [[nodiscard]] const natural_transformation& pi() const { return pi_; }
    [[nodiscard]] int depth() const { return pi_.depth(); }
    [[nodiscard]] index_class cls() const { return pi_.cls(); }
    [[nodiscard]] std::size_t operator()(int n, std::size_t r) const { return pi_(n, r); }
    /// The 1-orbit of the first coordinate, common to all values.
    [[nodiscard]] std::size_t head() const { return head_; }

    friend bool operator==(const section_family& a, const section_family& b)
    {
        return a.space_.same_as(b.space_) && a.pi_.components() == b.pi_.components();
    }

private:
    type_space space_;
    natural_transformation pi_;
    std::size_t head_ = 0;
};

/// First failure of the invariance condition for a candidate witness.
struct invariance_failure
{
    int level;
    tuple representative;
    permutation g;
};

/// Check orbit(a c) = orbit(a g(c)) for every representative c at levels 1..through.
inline std::optional<invariance_failure> invariance_failure_of(const type_space& t, element a, int through)
{
    for (int n = 1; n <= through; ++n)
        for (std::size_t r = 0; r < t.orbit_count(n); ++r)
        {
            const auto& c = t.representative(n, r);
            tuple ac{ a };
            ac.insert(ac.end(), c.begin(), c.end());
            const auto base = t.orbit_of(ac);
            for (const auto& g : t.group().elements())
            {
                tuple agc{ a };
                const auto gc = act_on(g, c);
                agc.insert(agc.end(), gc.begin(), gc.end());
                if (t.orbit_of(agc) != base)
                    return invariance_failure{ n, c, g };
            }
        }
    return std::nullopt;
}

/// The family r(c) -> orbit(a, c) of a witness a.
inline section_family section_from_witness(const type_space& t, element a, int d,
                                           index_class cls = index_class::all)
{
    if (a < 0 || static_cast<std::size_t>(a) >= t.universe_size())
        throw invalid_argument("witness outside the universe");
    if (d < 1 || d + 1 > t.depth())
        throw invalid_argument("a family of depth " + std::to_string(d) + " needs type-space depth " +
                               std::to_string(d + 1) + ", have " + std::to_string(t.depth()));
    if (const auto f = invariance_failure_of(t, a, d))
        throw error("invariance of " + t.structure().name_of(a) + " fails at n = " + std::to_string(f->level) +
                    ": " + t.tuple_label(f->representative) + " and its image under g = " +
                    cycle_notation(t.structure(), f->g) + " give different orbits");
    const auto view = t.functor_view(cls).truncated(d + 1);
    std::vector<natural_transformation::table> c;
    for (int n = 1; n <= d; ++n)
    {
        natural_transformation::table tab(t.orbit_count(n));
        for (std::size_t r = 0; r < tab.size(); ++r)
        {
            tuple ac{ a };
            const auto& rep = t.representative(n, r);
            ac.insert(ac.end(), rep.begin(), rep.end());
            tab[r] = t.orbit_of(ac);
        }
        c.push_back(std::move(tab));
    }
    return { t, natural_transformation{ view.truncated(d), view.decalage(), std::move(c) } };
}

/// Elements passing the invariance condition at every level up to depth - 1, in universe order.
inline std::vector<element> invariant_witnesses(const type_space& t)
{
    std::vector<element> out;
    for (std::size_t a = 0; a < t.universe_size(); ++a)
        if (!invariance_failure_of(t, static_cast<element>(a), t.depth() - 1))
            out.push_back(static_cast<element>(a));
    return out;
}

/// The lifting problem whose sections are depth-d families.
inline lifting_problem family_problem(const type_space& t, int d, index_class cls = index_class::all)
{
    // At depth 1 naturality is vacuous and the head need not be constant.
    if (d < 2)
        throw invalid_argument("coherent families need depth at least 2, got " + std::to_string(d));
    if (d + 1 > t.depth())
        throw invalid_argument("families of depth " + std::to_string(d) + " need type-space depth " +
                               std::to_string(d + 1) + ", have " + std::to_string(t.depth()));
    const auto view = t.functor_view(cls).truncated(d + 1);
    return { tail_projection(view), identity_transformation(view.truncated(d)) };
}

struct family_enumeration
{
    solve_mode mode = solve_mode::enumerate;
    std::uint64_t count = 0;
    std::vector<section_family> families;
    /// Deepest level reached by the search when no family exists.
    int deepest_level = 0;
};

inline family_enumeration enumerate_coherent_families(const type_space& t, int d, solve_mode mode,
                                                      index_class cls = index_class::all,
                                                      const solver_options& opts = {})
{
    const auto problem = family_problem(t, d, cls);
    auto r = solve_lifting(problem, mode, opts);
    family_enumeration out{ mode, r.count, {}, r.deepest_level };
    for (const auto& s : r.sections)
        out.families.emplace_back(t, s.map());
    return out;
}

struct bijection_report
{
    int depth = 0;
    std::vector<element> witnesses;
    std::vector<section_family> families;
    /// pairing[i]: index in `families` of the family of witnesses[i], if found.
    std::vector<std::optional<std::size_t>> pairing;
    bool matched = false;
};

/// Compare invariant witnesses with coherent families at full depth |universe|.
inline bijection_report witness_family_bijection(const type_space& t, index_class cls = index_class::all)
{
    const int d = static_cast<int>(t.universe_size());
    if (t.depth() < d + 1)
        throw invalid_argument("full depth " + std::to_string(d) + " needs type-space depth " + std::to_string(d + 1) +
                               ", have " + std::to_string(t.depth()));
    bijection_report rep;
    rep.depth = d;
    for (std::size_t a = 0; a < t.universe_size(); ++a)
        if (!invariance_failure_of(t, static_cast<element>(a), d))
            rep.witnesses.push_back(static_cast<element>(a));
    rep.families = enumerate_coherent_families(t, d, solve_mode::enumerate, cls).families;

    std::vector<bool> hit(rep.families.size(), false);
    bool injective = true;
    for (auto a : rep.witnesses)
    {
        const auto f = section_from_witness(t, a, d, cls);
        const auto it = std::find(rep.families.begin(), rep.families.end(), f);
        if (it == rep.families.end())
        {
            rep.pairing.emplace_back();
            continue;
        }
        const auto i = static_cast<std::size_t>(it - rep.families.begin());
        injective = injective && !hit[i];
        hit[i] = true;
        rep.pairing.emplace_back(i);
    }
    rep.matched = injective && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }) &&
                  std::all_of(rep.pairing.begin(), rep.pairing.end(), [](const auto& p) { return p.has_value(); });
    return rep;
}

/// Preimages of subsets of S_{n+1} under pi(n); subsets are indicator vectors.
class definition_scheme
{
public:
    explicit definition_scheme(section_family f) : family_{ std::move(f) } {}

    [[nodiscard]] const section_family& family() const { return family_; }

    [[nodiscard]] std::vector<bool> pullback(int n, const std::vector<bool>& u) const
    {
        if (n < 1 || n > family_.depth())
            throw invalid_argument("pullback level " + std::to_string(n) + " outside 1.." +
                                   std::to_string(family_.depth()));
        const auto& sp = family_.space();
        if (u.size() != sp.orbit_count(n + 1))
            throw invalid_argument("pullback: subset has the wrong size for level " + std::to_string(n + 1));
        std::vector<bool> out(sp.orbit_count(n));
        for (std::size_t r = 0; r < out.size(); ++r)
            out[r] = u[family_(n, r)];
        return out;
    }

    /// Pullback commutes with union, intersection and complement on (u, v).
    [[nodiscard]] bool boolean_homomorphism_on(int n, const std::vector<bool>& u, const std::vector<bool>& v) const
    {
        const auto pu = pullback(n, u);
        const auto pv = pullback(n, v);
        std::vector<bool> uni(u.size()), inter(u.size()), comp(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
        {
            uni[i] = u[i] || v[i];
            inter[i] = u[i] && v[i];
            comp[i] = !u[i];
        }
        const auto puni = pullback(n, uni);
        const auto pinter = pullback(n, inter);
        const auto pcomp = pullback(n, comp);
        for (std::size_t r = 0; r < pu.size(); ++r)
            if (puni[r] != (pu[r] || pv[r]) || pinter[r] != (pu[r] && pv[r]) || pcomp[r] == pu[r])
                return false;
        return true;
    }

private:
    section_family family_;
};

inline definition_scheme make_definition_scheme(const section_family& f) { return definition_scheme{ f }; }

/// |A| as a functor of the given depth; element i of A is the universe element subset[i].
inline truncated_functor subset_functor(const type_space& t, const std::vector<element>& subset, int depth)
{
    if (subset.empty())
        throw invalid_argument("parameter set must be nonempty");
    std::vector<std::string> names;
    for (auto e : subset)
    {
        if (e < 0 || static_cast<std::size_t>(e) >= t.universe_size())
            throw invalid_argument("parameter outside the universe");
        names.push_back(t.structure().name_of(e));
    }
    return { std::make_shared<const representable_data>("|" + std::to_string(subset.size()) + "|", names, depth),
             index_class::all };
}

namespace detail
{

inline std::vector<element> normalized_subset(std::vector<element> a)
{
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

inline tuple subset_tuple(const truncated_functor& f, const std::vector<element>& subset, int n, std::size_t x)
{
    const auto& rd = static_cast<const representable_data&>(f.data());
    tuple t;
    for (auto i : rd.decode(n, x))
        t.push_back(subset[i]);
    return t;
}

} // namespace detail

/// The complete diagram |A| -> S(B): c in A^n goes to its orbit.
inline natural_transformation diagram_of(const type_space& t, std::vector<element> subset)
{
    subset = detail::normalized_subset(std::move(subset));
    const auto src = subset_functor(t, subset, t.depth());
    std::vector<natural_transformation::table> c;
    for (int n = 1; n <= t.depth(); ++n)
    {
        natural_transformation::table tab(src.level_size(n));
        for (std::size_t x = 0; x < tab.size(); ++x)
            tab[x] = t.orbit_of(detail::subset_tuple(src, subset, n, x));
        c.push_back(std::move(tab));
    }
    natural_transformation r{ src, t.functor_view(), std::move(c) };
    require_natural(r, "parameter diagram");
    return r;
}

/// The lifting |A| -> Dec S(B), c -> orbit(a, c), of the diagram of A (depth one less).
inline natural_transformation type_as_lifting(const type_space& t, element a, std::vector<element> subset)
{
    if (a < 0 || static_cast<std::size_t>(a) >= t.universe_size())
        throw invalid_argument("element outside the universe");
    if (t.depth() < 2)
        throw invalid_argument("lifting a diagram needs type-space depth at least 2");
    subset = detail::normalized_subset(std::move(subset));
    const int d = t.depth() - 1;
    const auto src = subset_functor(t, subset, d);
    const auto dec = t.functor_view().decalage();
    std::vector<natural_transformation::table> c;
    for (int n = 1; n <= d; ++n)
    {
        natural_transformation::table tab(src.level_size(n));
        for (std::size_t x = 0; x < tab.size(); ++x)
        {
            tuple ac{ a };
            const auto cs = detail::subset_tuple(src, subset, n, x);
            ac.insert(ac.end(), cs.begin(), cs.end());
            tab[x] = t.orbit_of(ac);
        }
        c.push_back(std::move(tab));
    }
    natural_transformation r{ src, dec, std::move(c) };
    require_natural(r, "type lifting");
    const auto back = compose(tail_projection(t.functor_view()), r);
    if (back.components() != diagram_of(t, subset).truncated(d).components())
        throw error("type lifting does not project to the parameter diagram");
    return r;
}

/// The lifting over A' given by a family: pi(n) applied to the orbit of each A'-tuple.
/// Restricting it to A-tuples gives the lifting over A (verified).
inline natural_transformation extend_type(const section_family& f, std::vector<element> subset,
                                          std::vector<element> superset)
{
    subset = detail::normalized_subset(std::move(subset));
    superset = detail::normalized_subset(std::move(superset));
    if (!std::includes(superset.begin(), superset.end(), subset.begin(), subset.end()))
        throw invalid_argument("extend_type: A is not contained in A'");
    const auto& t = f.space();
    const int d = f.depth();

    auto lift = [&](const std::vector<element>& a) {
        const auto src = subset_functor(t, a, d);
        std::vector<natural_transformation::table> c;
        for (int n = 1; n <= d; ++n)
        {
            natural_transformation::table tab(src.level_size(n));
            for (std::size_t x = 0; x < tab.size(); ++x)
                tab[x] = f(n, t.orbit_of(detail::subset_tuple(src, a, n, x)));
            c.push_back(std::move(tab));
        }
        return natural_transformation{ src, f.pi().target(), std::move(c) };
    };

    auto wide = lift(superset);
    require_natural(wide, "extended type");
    if (!subset.empty())
    {
        const auto narrow = lift(subset);
        const auto& wide_src = static_cast<const representable_data&>(wide.source().data());
        for (int n = 1; n <= d; ++n)
            for (std::size_t x = 0; x < narrow.source().level_size(n); ++x)
            {
                const auto t_small = detail::subset_tuple(narrow.source(), subset, n, x);
                std::vector<std::size_t> idx;
                for (auto e : t_small)
                    idx.push_back(static_cast<std::size_t>(std::lower_bound(superset.begin(), superset.end(), e) -
                                                           superset.begin()));
                if (wide(n, wide_src.encode(idx)) != narrow(n, x))
                    throw error("extend_type: restriction to A does not recover the lifting over A");
            }
    }
    return wide;
}

struct stable_report
{
    int depth = 0;
    bool stable = false;
    /// Verdict of the product lifting problem.
    bool by_lifting = false;
    /// Verdict of head surjectivity over enumerated families.
    bool by_heads = false;
    bool formulations_agree = false;
    std::vector<std::size_t> heads_covered;
    std::size_t heads_total = 0;
    /// For each covered head, the first family (in enumeration order) with that head.
    std::vector<section_family> witness_liftings;
};

/// The lifting problem const(S_1) x S -> <pr_head, pr_tail> of Dec S.
inline lifting_problem stable_problem(const type_space& t, int d, index_class cls = index_class::all)
{
    if (d < 2)
        throw invalid_argument("stable_check needs depth at least 2, got " + std::to_string(d));
    if (d + 1 > t.depth())
        throw invalid_argument("stable_check at depth " + std::to_string(d) + " needs type-space depth " +
                               std::to_string(d + 1) + ", have " + std::to_string(t.depth()));
    const auto view = t.functor_view(cls).truncated(d + 1);
    const auto base = view.truncated(d);
    const auto prod = product_functor(constant_at_level_one(view, d), base);
    const auto u = pairing(head_projection(view), tail_projection(view), prod);
    return { u, identity_transformation(prod) };
}

inline stable_report stable_check(const type_space& t, int d, index_class cls = index_class::all,
                                  const solver_options& opts = {})
{
    stable_report rep;
    rep.depth = d;
    rep.by_lifting = solve_lifting(stable_problem(t, d, cls), solve_mode::find_one, opts).exists();

    const auto fams = enumerate_coherent_families(t, d, solve_mode::enumerate, cls, opts);
    rep.heads_total = t.orbit_count(1);
    std::vector<bool> seen(rep.heads_total, false);
    for (const auto& f : fams.families)
        if (!seen[f.head()])
        {
            seen[f.head()] = true;
            rep.witness_liftings.push_back(f);
        }
    std::sort(rep.witness_liftings.begin(), rep.witness_liftings.end(),
              [](const section_family& a, const section_family& b) { return a.head() < b.head(); });
    for (std::size_t h = 0; h < seen.size(); ++h)
        if (seen[h])
            rep.heads_covered.push_back(h);
    rep.by_heads = rep.heads_covered.size() == rep.heads_total;
    rep.formulations_agree = rep.by_lifting == rep.by_heads;
    rep.stable = rep.by_lifting && rep.by_heads;
    return rep;
}

struct relative_stable_report
{
    int depth = 0;
    bool exists = false;
    std::optional<section> witness;
    int deepest_level = 0;
};

/// Lift const(S^T_1) x S^T along const(rho_1) x rho through <pr_head, pr_tail> of Dec S^{T0}.
inline lifting_problem relative_stable_problem(const type_space& t, const reduct_result& red, int d)
{
    const auto& t0 = red.reduced_space;
    if (d < 1 || d + 1 > t0.depth() || d > t.depth())
        throw invalid_argument("relative stability at depth " + std::to_string(d) + " needs depth " +
                               std::to_string(d + 1) + " on the reduct");
    if (!red.rho.source().same_shape(t.functor_view()))
        throw invalid_argument("relative stability: morphism does not start at the given type space");
    const auto view0 = t0.functor_view().truncated(d + 1);
    const auto base0 = view0.truncated(d);
    const auto x = product_functor(constant_at_level_one(view0, d), base0);
    const auto u = pairing(head_projection(view0), tail_projection(view0), x);

    const auto view = t.functor_view().truncated(d);
    const auto const_t = constant_at_level_one(view, d);
    const auto p = product_functor(const_t, view);
    const auto const_t0 = constant_at_level_one(view0, d);
    std::vector<natural_transformation::table> c;
    for (int n = 1; n <= d; ++n)
        c.push_back(red.rho.component(1));
    const natural_transformation rho1{ const_t, const_t0, std::move(c) };
    const auto v = product_map(rho1, red.rho.truncated(d), p, x);
    return { u, v };
}

inline relative_stable_report relative_stable_check(const type_space& t, const reduct_result& red, int d,
                                                    const solver_options& opts = {})
{
    const auto r = solve_lifting(relative_stable_problem(t, red, d), solve_mode::find_one, opts);
    relative_stable_report rep;
    rep.depth = d;
    rep.exists = r.exists();
    if (rep.exists)
        rep.witness = r.sections.front();
    rep.deepest_level = r.deepest_level;
    return rep;
}

/// Conventions for the Borel comparison map (x, g_1..g_n) -> (x, x.h_1, ..., x.h_n).
struct borel_convention
{
    /// x.g = g^{-1}(x) when true, g(x) otherwise.
    bool right_action_by_inverse = true;
    /// g_i.g = g_i o g when true, g o g_i otherwise.
    bool translate_on_right = true;
    /// h_i = g_i^{-1} when true, g_i otherwise.
    bool invert_coordinates = true;

    [[nodiscard]] std::string describe() const
    {
        return std::string{ "x.g=" } + (right_action_by_inverse ? "g^-1(x)" : "g(x)") +
               "; g_i.g=" + (translate_on_right ? "g_i*g" : "g*g_i") + "; map x.g_i" +
               (invert_coordinates ? "^-1" : "");
    }
};

/// The eight conventions in the order they are tried; the first is the literal reading.
inline std::vector<borel_convention> borel_conventions()
{
    std::vector<borel_convention> out;
    for (int mask = 0; mask < 8; ++mask)
        out.push_back({ (mask & 4) == 0, (mask & 2) == 0, (mask & 1) == 0 });
    return out;
}

struct borel_report
{
    int level = 0;
    std::size_t configurations = 0;
    std::size_t class_count = 0;
    /// Class index of every configuration; configurations are (x, g_1..g_n) with group
    /// elements indexed in the sorted group order, x most significant.
    std::vector<std::size_t> class_of;
    /// Orbit in S_{n+1} per class (the value on the class's first configuration).
    std::vector<std::size_t> comparison;
    borel_convention convention;
    /// Per-convention class-invariance, in borel_conventions() order.
    std::vector<bool> invariant_by_convention;
    bool well_defined = false;
    bool image_property = false;
};

namespace detail
{

struct borel_space
{
    const type_space& t;
    int n;
    std::size_t gsize;
    std::size_t count;

    [[nodiscard]] std::vector<std::size_t> decode(std::size_t code) const
    {
        std::vector<std::size_t> v(static_cast<std::size_t>(n) + 1);
        for (int i = n; i >= 1; --i)
        {
            v[static_cast<std::size_t>(i)] = code % gsize;
            code /= gsize;
        }
        v[0] = code;
        return v;
    }

    [[nodiscard]] std::size_t encode(const std::vector<std::size_t>& v) const
    {
        std::size_t code = v[0];
        for (int i = 1; i <= n; ++i)
            code = code * gsize + v[static_cast<std::size_t>(i)];
        return code;
    }

    [[nodiscard]] std::size_t index_of(const permutation& p) const
    {
        const auto& el = t.group().elements();
        return static_cast<std::size_t>(std::lower_bound(el.begin(), el.end(), p) - el.begin());
    }
};

inline element act_point(const permutation& g, element x, bool by_inverse)
{
    return by_inverse ? static_cast<element>(std::find(g.begin(), g.end(), x) - g.begin())
                      : g[static_cast<std::size_t>(x)];
}

} // namespace detail

/// Classes of X x G^n under translation, and the comparison map into S_{n+1}.
///
/// Every convention is tried; the first one whose map is constant on its classes is
/// selected. If none is, the literal convention is used and well_defined is false.
inline borel_report borel(const type_space& t, int n, std::size_t budget = 1'000'000)
{
    if (n < 0 || n + 1 > t.depth())
        throw invalid_argument("borel level " + std::to_string(n) + " needs type-space depth " +
                               std::to_string(n + 1) + ", have " + std::to_string(t.depth()));
    const auto& grp = t.group();
    std::size_t count = t.universe_size();
    for (int i = 0; i < n; ++i)
    {
        if (count > budget / grp.order())
            throw budget_exceeded("borel level " + std::to_string(n) + " exceeds the budget of " +
                                  std::to_string(budget) + " configurations");
        count *= grp.order();
    }
    const detail::borel_space sp{ t, n, grp.order(), count };

    struct outcome
    {
        std::vector<std::size_t> class_of;
        std::size_t classes = 0;
        std::vector<std::size_t> value;
        bool invariant = true;
    };

    auto run = [&](const borel_convention& cv) {
        outcome o;
        union_find uf(count);
        for (std::size_t code = 0; code < count; ++code)
        {
            const auto v = sp.decode(code);
            for (const auto& g : grp.elements())
            {
                auto w = v;
                w[0] = static_cast<std::size_t>(
                    detail::act_point(g, static_cast<element>(v[0]), cv.right_action_by_inverse));
                for (int i = 1; i <= n; ++i)
                {
                    const auto& gi = grp[v[static_cast<std::size_t>(i)]];
                    w[static_cast<std::size_t>(i)] = sp.index_of(cv.translate_on_right ? compose(gi, g) : compose(g, gi));
                }
                uf.unite(code, sp.encode(w));
            }
        }
        o.value.resize(count);
        for (std::size_t code = 0; code < count; ++code)
        {
            const auto v = sp.decode(code);
            const auto x = static_cast<element>(v[0]);
            tuple img{ x };
            for (int i = 1; i <= n; ++i)
            {
                const auto& gi = grp[v[static_cast<std::size_t>(i)]];
                const auto h = cv.invert_coordinates ? inverse(gi) : gi;
                img.push_back(detail::act_point(h, x, cv.right_action_by_inverse));
            }
            o.value[code] = t.orbit_of(img);
        }
        std::vector<std::size_t> id_of_root(count, SIZE_MAX), first_value;
        o.class_of.resize(count);
        for (std::size_t code = 0; code < count; ++code)
        {
            auto& id = id_of_root[uf.find(code)];
            if (id == SIZE_MAX)
            {
                id = o.classes++;
                first_value.push_back(o.value[code]);
            }
            o.class_of[code] = id;
            if (o.value[code] != first_value[id])
                o.invariant = false;
        }
        return o;
    };

    const auto conventions = borel_conventions();
    borel_report rep;
    rep.level = n;
    rep.configurations = count;
    std::optional<std::pair<borel_convention, outcome>> chosen;
    for (const auto& cv : conventions)
    {
        auto o = run(cv);
        rep.invariant_by_convention.push_back(o.invariant);
        if (o.invariant && !chosen)
            chosen.emplace(cv, std::move(o));
    }
    rep.well_defined = chosen.has_value();
    if (!chosen)
        chosen.emplace(conventions.front(), run(conventions.front()));
    rep.convention = chosen->first;
    auto& o = chosen->second;
    rep.class_count = o.classes;
    rep.class_of = o.class_of;
    rep.comparison.assign(o.classes, SIZE_MAX);
    for (std::size_t code = 0; code < count; ++code)
        if (rep.comparison[o.class_of[code]] == SIZE_MAX)
            rep.comparison[o.class_of[code]] = o.value[code];

    // Every coordinate of every image tuple lies in the 1-orbit of x.
    rep.image_property = true;
    for (std::size_t code = 0; code < count && rep.image_property; ++code)
    {
        const auto& rep_tuple = t.representative(n + 1, o.value[code]);
        const auto first = t.orbit_of(tuple{ rep_tuple[0] });
        for (auto e : rep_tuple)
            rep.image_property = rep.image_property && t.orbit_of(tuple{ e }) == first;
    }
    return rep;
}

} // namespace typesimp
