#pragma once

// Products of invariant types as composites of sections, Morley sequences,
// indiscernibility, generic stability and commutation.
//
// The product p (x) q is pi^p[+1] o pi^q: the outer factor supplies the new least
// index. For realized types with witnesses a and b it sends c to (a, b, c).

#include "typesimp/error.hpp"
#include "typesimp/index_map.hpp"
#include "typesimp/natural_transformation.hpp"
#include "typesimp/type_calculus.hpp"
#include "typesimp/type_space.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace typesimp
{

/// The fold pi^{p_1}[+k-1] o ... o pi^{p_{k-1}}[+1] o pi^{p_k}, from a truncation of S
/// into its k-fold decalage.
class composed_family
{
public:
    explicit composed_family(std::vector<section_family> factors) : factors_{ std::move(factors) }
    {
        if (factors_.empty())
            throw invalid_argument("composed_family: no factors");
        const auto& sp = factors_.front().space();
        int d = factors_.front().depth();
        for (const auto& f : factors_)
        {
            if (!f.space().same_as(sp))
                throw invalid_argument("composed_family: factors live on different type spaces");
            if (f.cls() != factors_.front().cls())
                throw invalid_argument("composed_family: factors use different index classes");
            d = std::min(d, f.depth());
        }
        const int k = static_cast<int>(factors_.size());
        if (d - (k - 1) < 1)
            throw invalid_argument("composing " + std::to_string(k) + " factors needs family depth " +
                                   std::to_string(k) + ", have " + std::to_string(d));
        std::optional<natural_transformation> w;
        for (int i = k - 1; i >= 0; --i)
        {
            const auto pi = factors_[static_cast<std::size_t>(i)].pi().truncated(d);
            w = w ? compose(shift_nat(pi, k - 1 - i), *w) : pi;
        }
        composite_.emplace(std::move(*w));

        const auto& data = composite_->source().data();
        for (int n = 1; n <= composite_->depth(); ++n)
        {
            const auto drop = index_map::tail_inclusion(n, n + k);
            for (std::size_t x = 0; x < composite_->source().level_size(n); ++x)
                if (data.act(drop, (*composite_)(n, x)) != x)
                    throw error("composed_family: tail projection is not the identity");
        }
    }

    [[nodiscard]] const type_space& space() const { return factors_.front().space(); }
    [[nodiscard]] const std::vector<section_family>& factors() const { return factors_; }
    [[nodiscard]] const natural_transformation& composite() const { return *composite_; }
    [[nodiscard]] int length() const { return static_cast<int>(factors_.size()); }

private:
    std::vector<section_family> factors_;
    std::optional<natural_transformation> composite_;
};

/// The level-k orbit obtained by keeping the first k indices of any composite value;
/// throws if the choice of value matters.
inline std::size_t extract_leading_type(const type_space& t, const natural_transformation& composite, int k)
{
    const auto& data = composite.source().data();
    std::optional<std::size_t> found;
    for (int n = 1; n <= composite.depth(); ++n)
    {
        const auto keep = index_map::head_inclusion(k, n + k);
        for (std::size_t x = 0; x < composite.source().level_size(n); ++x)
        {
            const auto v = data.act(keep, composite(n, x));
            if (found && *found != v)
                throw error("leading " + std::to_string(k) + "-type depends on the evaluation point: " +
                            t.label(k, *found) + " vs " + t.label(k, v));
            found = v;
        }
    }
    return *found;
}

struct product_result
{
    composed_family family;
    std::size_t two_type;
};

inline product_result product_type(const section_family& p, const section_family& q)
{
    if (!p.space().same_as(q.space()))
        throw invalid_argument("product_type: families live on different type spaces");
    if (std::min(p.depth(), q.depth()) < 2)
        throw invalid_argument("product_type needs families of depth at least 2 (type-space depth 3)");
    composed_family cf{ { p, q } };
    const auto two = extract_leading_type(p.space(), cf.composite(), 2);
    return { std::move(cf), two };
}

/// (p (x) q) (x) s against p (x) (q (x) s), levelwise on the common depth.
inline bool check_associativity(const section_family& p, const section_family& q, const section_family& s)
{
    if (std::min({ p.depth(), q.depth(), s.depth() }) < 3)
        throw invalid_argument("check_associativity needs families of depth at least 3 (type-space depth 4)");
    const auto left = compose(shift_nat(compose_sections(p.pi(), q.pi()), 1), s.pi());
    const auto right = compose(shift_nat(p.pi(), 2), compose_sections(q.pi(), s.pi()));
    const int d = std::min(left.depth(), right.depth());
    for (int n = 1; n <= d; ++n)
        if (left.component(n) != right.component(n))
            return false;
    return composed_family{ { p, q, s } }.composite().components() == right.truncated(d).components();
}

/// The k-fold self-product of p, as an orbit at level k.
inline std::size_t morley(const section_family& p, int k)
{
    if (k < 1 || k > p.depth())
        throw invalid_argument("morley: " + std::to_string(k) + " steps need family depth " + std::to_string(k) +
                               ", have " + std::to_string(p.depth()));
    if (k == 1)
        return p.head();
    composed_family cf{ std::vector<section_family>(static_cast<std::size_t>(k), p) };
    return extract_leading_type(p.space(), cf.composite(), k);
}

/// Whether every monotone injection m -> n reindexes orbit `t` at level n to the same orbit.
inline bool check_indiscernible(const type_space& sp, int n, std::size_t t)
{
    if (n < 1 || n > sp.depth())
        throw invalid_argument("check_indiscernible: level outside the type space");
    const auto view = sp.functor_view();
    for (int m = 1; m <= n; ++m)
    {
        std::optional<std::size_t> seen;
        bool same = true;
        for_each_index_map(m, n, true, [&](const index_map& j) {
            std::vector<int> v = j.values();
            for (std::size_t i = 1; i < v.size(); ++i)
                if (v[i] == v[i - 1])
                    return true;
            const auto r = view.act(j, t);
            if (seen && *seen != r)
                same = false;
            seen = r;
            return same;
        });
        if (!same)
            return false;
    }
    return true;
}

/// Whether swapping the first two indices fixes every value of a composite S -> S[+2].
inline bool swap_invariant(const type_space& sp, const natural_transformation& composite)
{
    const auto base = composite.source();
    if (base.cls() != index_class::all)
        throw invalid_argument("swap requires symmetric functor");
    const auto view = sp.functor_view();
    for (int n = 1; n <= composite.depth(); ++n)
        for (std::size_t x = 0; x < base.level_size(n); ++x)
            if (apply_transposition(view, n + 2, composite(n, x)) != composite(n, x))
                return false;
    return true;
}

/// Whether swap o pq = qp levelwise and both composites drop back to the identity.
inline bool composites_commute(const type_space& sp, const natural_transformation& pq,
                               const natural_transformation& qp)
{
    if (pq.source().cls() != index_class::all || qp.source().cls() != index_class::all)
        throw invalid_argument("swap requires symmetric functor");
    const auto view = sp.functor_view();
    const int d = std::min(pq.depth(), qp.depth());
    for (int n = 1; n <= d; ++n)
    {
        const auto drop = index_map::tail_inclusion(n, n + 2);
        for (std::size_t x = 0; x < pq.source().level_size(n); ++x)
        {
            if (apply_transposition(view, n + 2, pq(n, x)) != qp(n, x))
                return false;
            if (view.act(drop, pq(n, x)) != x || view.act(drop, qp(n, x)) != x)
                return false;
        }
    }
    return true;
}

/// p (x) p is fixed by the swap of its two variables.
inline bool check_generically_stable(const section_family& p)
{
    if (p.cls() != index_class::all)
        throw invalid_argument("swap requires symmetric functor");
    if (p.depth() < 2)
        throw invalid_argument("check_generically_stable needs family depth at least 2 (type-space depth 3)");
    return swap_invariant(p.space(), compose_sections(p.pi(), p.pi()));
}

/// swap o (p (x) q) = q (x) p.
inline bool check_stable_commutation(const section_family& p, const section_family& q)
{
    if (p.cls() != index_class::all || q.cls() != index_class::all)
        throw invalid_argument("swap requires symmetric functor");
    if (!p.space().same_as(q.space()))
        throw invalid_argument("check_stable_commutation: families live on different type spaces");
    if (std::min(p.depth(), q.depth()) < 2)
        throw invalid_argument("check_stable_commutation needs family depth at least 2 (type-space depth 3)");
    const int d = std::min(p.depth(), q.depth());
    const auto pp = p.pi().truncated(d);
    const auto qq = q.pi().truncated(d);
    return composites_commute(p.space(), compose_sections(pp, qq), compose_sections(qq, pp));
}

} // namespace typesimp
