#pragma once

// Truncated contravariant functors on finite index sets with finite value sets.
//
// Level n (1 <= n <= depth) is a finite set {0, .., level_size(n)-1}. An index
// map s: m -> n acts as a function level(n) -> level(m). When the index class
// is `monotone` only non-decreasing maps are part of the structure, which
// makes the functor a truncated simplicial set in the n >= 1 convention.

#include "typesimp/error.hpp"
#include "typesimp/index_map.hpp"

#include <cstddef>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace typesimp
{

enum class index_class
{
    monotone,
    all
};

inline const char* to_string(index_class c)
{
    return c == index_class::monotone ? "monotone" : "all";
}

/// Backing data of a functor, defined on levels 1..max_depth().
class functor_data
{
public:
    virtual ~functor_data() = default;

    [[nodiscard]] virtual int max_depth() const = 0;
    [[nodiscard]] virtual std::size_t level_size(int n) const = 0;
    /// x lies in level s.target_size(); the result lies in level s.source_size().
    [[nodiscard]] virtual std::size_t act(const index_map& s, std::size_t x) const = 0;
    [[nodiscard]] virtual std::string label(int n, std::size_t x) const
    {
        std::ostringstream os;
        os << '#' << x << '@' << n;
        return os.str();
    }
    [[nodiscard]] virtual std::string name() const = 0;
    /// Whether non-monotone index maps are meaningful for this data.
    [[nodiscard]] virtual bool symmetric() const { return true; }
    /// Structural equality; defaults to identity of the backing object.
    [[nodiscard]] virtual bool same_as(const functor_data& other) const { return this == &other; }
};

/// A handle on functor data, shifted `shift` times by decalage and truncated to `depth`.
///
/// Level n of the handle is level n + shift of the data, and an index map s acts
/// through s[+shift]. Handles are cheap to copy and immutable.
class truncated_functor
{
public:
    truncated_functor(std::shared_ptr<const functor_data> data, index_class cls)
        : truncated_functor(std::move(data), cls, 0, -1)
    {
    }

    [[nodiscard]] int depth() const { return depth_; }
    [[nodiscard]] index_class cls() const { return cls_; }
    [[nodiscard]] int shift() const { return shift_; }
    [[nodiscard]] const functor_data& data() const { return *data_; }
    [[nodiscard]] const std::shared_ptr<const functor_data>& data_ptr() const { return data_; }

    [[nodiscard]] std::size_t level_size(int n) const
    {
        check_level(n);
        return data_->level_size(n + shift_);
    }

    [[nodiscard]] std::size_t act(const index_map& s, std::size_t x) const
    {
        if (cls_ == index_class::monotone && !s.monotone())
            throw invalid_argument("functor " + name() + " admits only monotone index maps");
        check_level(s.source_size());
        check_level(s.target_size());
        return data_->act(s.shifted(shift_), x);
    }

    [[nodiscard]] std::string label(int n, std::size_t x) const { return data_->label(n + shift_, x); }

    [[nodiscard]] std::string name() const
    {
        std::ostringstream os;
        os << data_->name();
        if (shift_ > 0)
            os << "[+" << shift_ << ']';
        os << "<=" << depth_;
        if (cls_ == index_class::monotone)
            os << "(mono)";
        return os.str();
    }

    [[nodiscard]] truncated_functor truncated(int d) const
    {
        if (d < 1 || d > depth_)
            throw invalid_argument("cannot truncate " + name() + " to depth " + std::to_string(d));
        return { data_, cls_, shift_, d };
    }

    [[nodiscard]] truncated_functor with_class(index_class c) const
    {
        if (c == index_class::all && !data_->symmetric())
            throw invalid_argument("functor " + data_->name() + " is not symmetric");
        return { data_, c, shift_, depth_ };
    }

    /// The functor n -> F(n+1) acting through s[+1].
    [[nodiscard]] truncated_functor decalage() const
    {
        if (depth_ < 2)
            throw invalid_argument("cannot decalage at depth 1");
        return { data_, cls_, shift_ + 1, depth_ - 1 };
    }

    /// Same data, shift, and index class; depths may differ.
    [[nodiscard]] bool same_shape(const truncated_functor& other) const
    {
        return shift_ == other.shift_ && cls_ == other.cls_ && data_->same_as(*other.data_);
    }

    /// same_shape() and equal depth.
    [[nodiscard]] bool equivalent(const truncated_functor& other) const
    {
        return same_shape(other) && depth_ == other.depth_;
    }

private:
    truncated_functor(std::shared_ptr<const functor_data> data, index_class cls, int shift, int depth)
        : data_{ std::move(data) }, cls_{ cls }, shift_{ shift }
    {
        if (!data_)
            throw invalid_argument("truncated_functor: null data");
        if (cls_ == index_class::all && !data_->symmetric())
            throw invalid_argument("functor " + data_->name() + " is not symmetric");
        depth_ = depth < 0 ? data_->max_depth() - shift_ : depth;
        if (depth_ < 1 || depth_ + shift_ > data_->max_depth())
            throw invalid_argument("truncated_functor: depth out of range for " + data_->name());
    }

    void check_level(int n) const
    {
        if (n < 1 || n > depth_)
            throw invalid_argument("level " + std::to_string(n) + " outside depth " + std::to_string(depth_) +
                                   " of " + name());
    }

    std::shared_ptr<const functor_data> data_;
    index_class cls_;
    int shift_;
    int depth_ = 0;
};

/// The constant functor at a finite labelled set; every map acts as the identity.
class constant_data final : public functor_data
{
public:
    constant_data(std::string name, std::vector<std::string> labels, int depth)
        : name_{ std::move(name) }, labels_{ std::move(labels) }, depth_{ depth }
    {
    }

    int max_depth() const override { return depth_; }
    std::size_t level_size(int) const override { return labels_.size(); }
    std::size_t act(const index_map&, std::size_t x) const override { return x; }
    std::string label(int, std::size_t x) const override { return labels_.at(x); }
    std::string name() const override { return name_; }
    bool same_as(const functor_data& other) const override
    {
        const auto* o = dynamic_cast<const constant_data*>(&other);
        return o && o->labels_ == labels_;
    }

private:
    std::string name_;
    std::vector<std::string> labels_;
    int depth_;
};

inline truncated_functor constant_functor(std::string name, std::vector<std::string> labels, int depth,
                                          index_class cls = index_class::all)
{
    return { std::make_shared<const constant_data>(std::move(name), std::move(labels), depth), cls };
}

/// Levelwise cartesian product F x G; the pair (a, b) has identifier a * |G_n| + b.
class product_data final : public functor_data
{
public:
    product_data(truncated_functor first, truncated_functor second)
        : first_{ std::move(first) }, second_{ std::move(second) }
    {
        if (first_.depth() != second_.depth())
            throw invalid_argument("product of functors of different depths");
    }

    int max_depth() const override { return first_.depth(); }
    std::size_t level_size(int n) const override { return first_.level_size(n) * second_.level_size(n); }
    std::size_t act(const index_map& s, std::size_t x) const override
    {
        const auto [a, b] = split(s.target_size(), x);
        return first_.act(s, a) * second_.level_size(s.source_size()) + second_.act(s, b);
    }
    std::string label(int n, std::size_t x) const override
    {
        const auto [a, b] = split(n, x);
        return "<" + first_.label(n, a) + "," + second_.label(n, b) + ">";
    }
    std::string name() const override { return "(" + first_.name() + " x " + second_.name() + ")"; }
    bool symmetric() const override { return first_.cls() == index_class::all && second_.cls() == index_class::all; }
    bool same_as(const functor_data& other) const override
    {
        const auto* o = dynamic_cast<const product_data*>(&other);
        return o && o->first_.equivalent(first_) && o->second_.equivalent(second_);
    }

    [[nodiscard]] std::pair<std::size_t, std::size_t> split(int n, std::size_t x) const
    {
        const auto width = second_.level_size(n);
        return { x / width, x % width };
    }
    [[nodiscard]] std::size_t pair(int n, std::size_t a, std::size_t b) const
    {
        return a * second_.level_size(n) + b;
    }
    [[nodiscard]] const truncated_functor& first() const { return first_; }
    [[nodiscard]] const truncated_functor& second() const { return second_; }

private:
    truncated_functor first_;
    truncated_functor second_;
};

inline truncated_functor product_functor(const truncated_functor& first, const truncated_functor& second)
{
    const auto cls = (first.cls() == index_class::all && second.cls() == index_class::all) ? index_class::all
                                                                                          : index_class::monotone;
    return { std::make_shared<const product_data>(first.with_class(cls), second.with_class(cls)), cls };
}

/// The representable functor |A|: level n is the set of n-tuples over A, acting by reindexing.
/// Tuple (a_1..a_n) is encoded base |A| with a_1 most significant, so identifiers follow
/// lexicographic order.
class representable_data final : public functor_data
{
public:
    representable_data(std::string name, std::vector<std::string> elements, int depth)
        : name_{ std::move(name) }, elements_{ std::move(elements) }, depth_{ depth }
    {
        if (elements_.empty())
            throw invalid_argument("representable functor on an empty set");
    }

    int max_depth() const override { return depth_; }
    std::size_t level_size(int n) const override
    {
        std::size_t r = 1;
        for (int i = 0; i < n; ++i)
            r *= elements_.size();
        return r;
    }
    std::size_t act(const index_map& s, std::size_t x) const override
    {
        const auto t = decode(s.target_size(), x);
        std::vector<std::size_t> out;
        out.reserve(static_cast<std::size_t>(s.source_size()));
        for (int v : s.values())
            out.push_back(t[static_cast<std::size_t>(v)]);
        return encode(out);
    }
    std::string label(int n, std::size_t x) const override
    {
        const auto t = decode(n, x);
        std::string r = "(";
        for (std::size_t i = 0; i < t.size(); ++i)
            r += (i ? "," : "") + elements_[t[i]];
        return r + ")";
    }
    std::string name() const override { return name_; }

    [[nodiscard]] std::vector<std::size_t> decode(int n, std::size_t x) const
    {
        std::vector<std::size_t> t(static_cast<std::size_t>(n));
        for (int i = n - 1; i >= 0; --i)
        {
            t[static_cast<std::size_t>(i)] = x % elements_.size();
            x /= elements_.size();
        }
        return t;
    }
    [[nodiscard]] std::size_t encode(const std::vector<std::size_t>& t) const
    {
        std::size_t x = 0;
        for (auto v : t)
            x = x * elements_.size() + v;
        return x;
    }
    [[nodiscard]] const std::vector<std::string>& elements() const { return elements_; }

private:
    std::string name_;
    std::vector<std::string> elements_;
    int depth_;
};

/// Check action(s o t) = action(t) o action(s) for every composable pair within depth,
/// over every element. Returns an empty string on success, otherwise a description of
/// the first failure. Exhaustive; intended for small functors and for tests.
inline std::string check_functoriality(const truncated_functor& f, int max_level = -1)
{
    const int depth = max_level < 0 ? f.depth() : std::min(max_level, f.depth());
    const bool mono = f.cls() == index_class::monotone;
    std::string failure;
    for (int n = 1; n <= depth && failure.empty(); ++n)
    {
        const auto id = index_map::identity(n);
        for (std::size_t x = 0; x < f.level_size(n); ++x)
            if (f.act(id, x) != x)
                return "identity on level " + std::to_string(n) + " moves " + f.label(n, x);
        for (int m = 1; m <= depth && failure.empty(); ++m)
            for_each_index_map(m, n, mono, [&](const index_map& s) {
                for (int k = 1; k <= depth; ++k)
                {
                    const bool ok = for_each_index_map(k, m, mono, [&](const index_map& t) {
                        const auto st = s.after(t);
                        for (std::size_t x = 0; x < f.level_size(n); ++x)
                            if (f.act(st, x) != f.act(t, f.act(s, x)))
                            {
                                failure = "action(s o t) != action(t) o action(s) for s=" + s.to_string() +
                                          " t=" + t.to_string() + " at " + f.label(n, x);
                                return false;
                            }
                        return true;
                    });
                    if (!ok)
                        return false;
                }
                return true;
            });
    }
    return failure;
}

} // namespace typesimp
