#pragma once

#include "typesimp/error.hpp"
#include "typesimp/functor.hpp"
#include "typesimp/index_map.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace typesimp
{

/// A levelwise map between two truncated functors of equal depth.
///
/// Naturality is not enforced on construction (search code builds candidates);
/// use verify_naturality() to check it.
class natural_transformation
{
public:
    using table = std::vector<std::size_t>;

    natural_transformation(truncated_functor source, truncated_functor target, std::vector<table> components)
        : source_{ std::move(source) }, target_{ std::move(target) }, components_{ std::move(components) }
    {
        if (source_.depth() != target_.depth())
            throw invalid_argument("natural_transformation: depth mismatch between " + source_.name() + " and " +
                                   target_.name());
        if (components_.size() != static_cast<std::size_t>(source_.depth()))
            throw invalid_argument("natural_transformation: wrong number of components");
        for (int n = 1; n <= depth(); ++n)
        {
            const auto& c = components_[static_cast<std::size_t>(n - 1)];
            if (c.size() != source_.level_size(n))
                throw invalid_argument("natural_transformation: component " + std::to_string(n) +
                                       " has the wrong size");
            const auto bound = target_.level_size(n);
            for (auto v : c)
                if (v >= bound)
                    throw invalid_argument("natural_transformation: component " + std::to_string(n) +
                                           " leaves the target level");
        }
    }

    [[nodiscard]] const truncated_functor& source() const { return source_; }
    [[nodiscard]] const truncated_functor& target() const { return target_; }
    [[nodiscard]] int depth() const { return source_.depth(); }
    /// Naturality is checked over monotone maps if either side is monotone.
    [[nodiscard]] index_class cls() const
    {
        return source_.cls() == index_class::all && target_.cls() == index_class::all ? index_class::all
                                                                                      : index_class::monotone;
    }

    [[nodiscard]] std::size_t operator()(int n, std::size_t x) const
    {
        return components_.at(static_cast<std::size_t>(n - 1)).at(x);
    }
    [[nodiscard]] const table& component(int n) const { return components_.at(static_cast<std::size_t>(n - 1)); }
    [[nodiscard]] const std::vector<table>& components() const { return components_; }

    [[nodiscard]] natural_transformation truncated(int d) const
    {
        std::vector<table> c(components_.begin(), components_.begin() + d);
        return { source_.truncated(d), target_.truncated(d), std::move(c) };
    }

    /// Same components, viewed between the same functors with another index class.
    [[nodiscard]] natural_transformation with_class(index_class c) const
    {
        return { source_.with_class(c), target_.with_class(c), components_ };
    }

    /// Equal components between equivalent functors.
    friend bool operator==(const natural_transformation& a, const natural_transformation& b)
    {
        return a.source_.equivalent(b.source_) && a.target_.equivalent(b.target_) && a.components_ == b.components_;
    }

private:
    truncated_functor source_;
    truncated_functor target_;
    std::vector<table> components_;
};

struct naturality_violation
{
    index_map map;      ///< s: m -> n
    std::size_t element; ///< x in source level n
    int level;          ///< n
};

struct naturality_report
{
    std::optional<naturality_violation> violation;

    [[nodiscard]] bool ok() const { return !violation.has_value(); }
};

/// Check target.action(s) o component(n) = component(m) o source.action(s) for every
/// in-class map s: m -> n within depth. The first failure in the order (n, m, s
/// lexicographic, x) is reported.
inline naturality_report verify_naturality(const natural_transformation& t)
{
    const bool mono = t.cls() == index_class::monotone;
    const int depth = t.depth();
    naturality_report report;
    for (int n = 1; n <= depth && report.ok(); ++n)
        for (int m = 1; m <= depth && report.ok(); ++m)
            for_each_index_map(m, n, mono, [&](const index_map& s) {
                const auto& comp_n = t.component(n);
                const auto& comp_m = t.component(m);
                for (std::size_t x = 0; x < comp_n.size(); ++x)
                    if (t.target().act(s, comp_n[x]) != comp_m[t.source().act(s, x)])
                    {
                        report.violation = naturality_violation{ s, x, n };
                        return false;
                    }
                return true;
            });
    return report;
}

inline std::string describe(const natural_transformation& t, const naturality_violation& v)
{
    return "naturality fails at level " + std::to_string(v.level) + " for map " + v.map.to_string() + " on " +
           t.source().label(v.level, v.element);
}

inline void require_natural(const natural_transformation& t, const std::string& what)
{
    const auto report = verify_naturality(t);
    if (!report.ok())
        throw invalid_argument(what + ": " + describe(t, *report.violation));
}

inline natural_transformation identity_transformation(const truncated_functor& f)
{
    std::vector<natural_transformation::table> c;
    for (int n = 1; n <= f.depth(); ++n)
    {
        natural_transformation::table tab(f.level_size(n));
        for (std::size_t x = 0; x < tab.size(); ++x)
            tab[x] = x;
        c.push_back(std::move(tab));
    }
    return { f, f, std::move(c) };
}

/// The levelwise map induced by a fixed family of index maps; `map_for(n)` must be a map
/// into level n of `f` whose source is the corresponding level of `target`.
template <typename MapFor>
natural_transformation induced_transformation(const truncated_functor& source, const truncated_functor& f,
                                              const truncated_functor& target, MapFor&& map_for)
{
    std::vector<natural_transformation::table> c;
    for (int n = 1; n <= source.depth(); ++n)
    {
        const index_map s = map_for(n);
        natural_transformation::table tab(source.level_size(n));
        for (std::size_t x = 0; x < tab.size(); ++x)
            tab[x] = f.act(s, x);
        c.push_back(std::move(tab));
    }
    return { source, target, std::move(c) };
}

struct decalage_result
{
    truncated_functor dec;        ///< n -> F(n+1), depth F.depth - 1
    natural_transformation tail;  ///< pr_{2,3,..}: Dec -> F truncated
    natural_transformation head;  ///< pr_1: Dec -> const F(1)
};

/// The constant functor at level 1 of `f`, labelled like f's 1-elements.
inline truncated_functor constant_at_level_one(const truncated_functor& f, int depth)
{
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < f.level_size(1); ++x)
        labels.push_back(f.label(1, x));
    return constant_functor("const(" + f.name() + ")_1", std::move(labels), depth, f.cls());
}

/// pr_tail component n: F acting by the inclusion {1..n} in {0..n} (drop the new least index).
inline natural_transformation tail_projection(const truncated_functor& f, int drop = 1)
{
    truncated_functor dec = f;
    for (int i = 0; i < drop; ++i)
        dec = dec.decalage();
    return induced_transformation(dec, f, f.truncated(dec.depth()),
                                  [drop](int n) { return index_map::tail_inclusion(n, n + drop); });
}

/// pr_head component n: F acting by {0} in {0..n}.
inline natural_transformation head_projection(const truncated_functor& f)
{
    const auto dec = f.decalage();
    return induced_transformation(dec, f, constant_at_level_one(f, dec.depth()),
                                  [](int n) { return index_map::head_inclusion(1, n + 1); });
}

inline decalage_result decalage(const truncated_functor& f)
{
    if (f.depth() < 2)
        throw invalid_argument("cannot decalage at depth 1");
    decalage_result r{ f.decalage(), tail_projection(f), head_projection(f) };
    require_natural(r.tail, "decalage tail projection");
    require_natural(r.head, "decalage head projection");
    return r;
}

/// outer o inner, levelwise. inner's target and outer's source must have the same
/// shape; the result is truncated to the smaller depth.
inline natural_transformation compose(const natural_transformation& outer, const natural_transformation& inner)
{
    if (!inner.target().same_shape(outer.source()))
        throw invalid_argument("compose: " + inner.target().name() + " is not " + outer.source().name());
    const int d = std::min(inner.depth(), outer.depth());
    std::vector<natural_transformation::table> c;
    for (int n = 1; n <= d; ++n)
    {
        const auto& in = inner.component(n);
        const auto& out = outer.component(n);
        natural_transformation::table tab(in.size());
        for (std::size_t x = 0; x < in.size(); ++x)
            tab[x] = out[in[x]];
        c.push_back(std::move(tab));
    }
    return { inner.source().truncated(d), outer.target().truncated(d), std::move(c) };
}

/// w[+k]: Dec^k(source) -> Dec^k(target), with component n equal to w's component n+k.
inline natural_transformation shift_nat(const natural_transformation& w, int k)
{
    if (k < 0)
        throw invalid_argument("shift_nat: negative shift");
    if (k >= w.depth())
        throw invalid_argument("shift_nat: shifting by " + std::to_string(k) + " needs level " +
                               std::to_string(w.depth() + 1) + ", which is missing (depth " +
                               std::to_string(w.depth()) + ")");
    auto src = w.source();
    auto tgt = w.target();
    for (int i = 0; i < k; ++i)
    {
        src = src.decalage();
        tgt = tgt.decalage();
    }
    std::vector<natural_transformation::table> c(w.components().begin() + k, w.components().end());
    natural_transformation r{ src, tgt, std::move(c) };
    require_natural(r, "shift_nat");
    return r;
}

/// Whether `w` maps a truncation of F into Dec^k(F) for some k, with F of the given shape.
inline bool is_section_like(const natural_transformation& w, int k)
{
    return w.target().shift() == w.source().shift() + k && w.target().data().same_as(w.source().data()) &&
           w.target().cls() == w.source().cls();
}

/// shift_nat(w_outer, 1) o w_inner, for sections F -> F o [+1] over the same F.
inline natural_transformation compose_sections(const natural_transformation& w_outer,
                                               const natural_transformation& w_inner)
{
    if (!is_section_like(w_outer, 1) || !is_section_like(w_inner, 1))
        throw invalid_argument("compose_sections: arguments must map F into F[+1]");
    if (!w_outer.source().same_shape(w_inner.source()))
        throw invalid_argument("compose_sections: mismatched source functors " + w_outer.source().name() + " and " +
                               w_inner.source().name());
    if (w_outer.depth() < 2)
        throw invalid_argument("compose_sections: depth too small for [+2]");
    auto r = compose(shift_nat(w_outer, 1), w_inner);
    // Dropping the two new indices must give back the argument.
    const auto& base = r.source();
    for (int n = 1; n <= r.depth(); ++n)
    {
        const auto drop2 = index_map::tail_inclusion(n, n + 2);
        for (std::size_t x = 0; x < base.level_size(n); ++x)
        {
            const auto back = r.target().data().act(drop2.shifted(base.shift()), r(n, x));
            if (back != x)
                throw invalid_argument("compose_sections: arguments are not sections of the tail projection");
        }
    }
    return r;
}

/// Exchange the first two indices of an element of level `level` >= 2 of a symmetric functor.
inline std::size_t apply_transposition(const truncated_functor& f, int level, std::size_t x)
{
    if (f.cls() != index_class::all)
        throw invalid_argument("swap requires symmetric functor");
    if (level < 2)
        throw invalid_argument("swap needs two leading indices");
    return f.act(index_map::transposition(level, 0, 1), x);
}

/// <a, b>: S -> A x B for transformations with a common source, landing in `product`
/// (which must be the product of functors with the shapes of a.target() and b.target()).
inline natural_transformation pairing(const natural_transformation& a, const natural_transformation& b,
                                      const truncated_functor& product)
{
    const auto* pd = dynamic_cast<const product_data*>(&product.data());
    if (!pd || product.shift() != 0)
        throw invalid_argument("pairing: target is not a product functor");
    if (!a.source().equivalent(b.source()))
        throw invalid_argument("pairing: sources differ");
    if (!pd->first().truncated(a.depth()).same_shape(a.target().with_class(pd->first().cls())) ||
        !pd->second().truncated(b.depth()).same_shape(b.target().with_class(pd->second().cls())))
        throw invalid_argument("pairing: factors of " + product.name() + " do not match");
    const auto target = product.truncated(a.depth());
    std::vector<natural_transformation::table> c;
    for (int n = 1; n <= a.depth(); ++n)
    {
        natural_transformation::table tab(a.source().level_size(n));
        for (std::size_t x = 0; x < tab.size(); ++x)
            tab[x] = pd->pair(n, a(n, x), b(n, x));
        c.push_back(std::move(tab));
    }
    return { a.source(), target, std::move(c) };
}

/// f x g: A x B -> C x D, levelwise.
inline natural_transformation product_map(const natural_transformation& f, const natural_transformation& g,
                                          const truncated_functor& source, const truncated_functor& target)
{
    const auto* sd = dynamic_cast<const product_data*>(&source.data());
    const auto* td = dynamic_cast<const product_data*>(&target.data());
    if (!sd || !td)
        throw invalid_argument("product_map: source and target must be product functors");
    const int d = std::min({ f.depth(), g.depth(), source.depth(), target.depth() });
    std::vector<natural_transformation::table> c;
    for (int n = 1; n <= d; ++n)
    {
        natural_transformation::table tab(source.level_size(n));
        for (std::size_t x = 0; x < tab.size(); ++x)
        {
            const auto [a, b] = sd->split(n, x);
            tab[x] = td->pair(n, f(n, a), g(n, b));
        }
        c.push_back(std::move(tab));
    }
    return { source.truncated(d), target.truncated(d), std::move(c) };
}

} // namespace typesimp
