#pragma once

#include "typesimp/error.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace typesimp
{

/// A map {1..m} -> {1..n} between finite (linearly ordered) index sets.
///
/// Stored zero-based: value(i) in [0, n) for i in [0, m). The printed form
/// uses the one-based convention, e.g. "[1,1,3]:3" for a map into {1,2,3}.
class index_map
{
public:
    index_map(int target_size, std::vector<int> values)
        : target_{ target_size }, values_{ std::move(values) }
    {
        if (values_.empty() || target_ < 1)
            throw invalid_argument("index_map: source and target must be non-empty");
        for (int v : values_)
            if (v < 0 || v >= target_)
                throw invalid_argument("index_map: value out of range");
        monotone_ = std::is_sorted(values_.begin(), values_.end());
    }

    static index_map identity(int n)
    {
        std::vector<int> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            v[static_cast<std::size_t>(i)] = i;
        return { n, std::move(v) };
    }

    /// Inclusion of {1..m} into {1..n} as the last m indices.
    static index_map tail_inclusion(int m, int n)
    {
        std::vector<int> v(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            v[static_cast<std::size_t>(i)] = n - m + i;
        return { n, std::move(v) };
    }

    /// Inclusion of {1..m} into {1..n} as the first m indices.
    static index_map head_inclusion(int m, int n)
    {
        std::vector<int> v(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            v[static_cast<std::size_t>(i)] = i;
        return { n, std::move(v) };
    }

    /// Coface: the monotone injection (n-1) -> n skipping index `skip`.
    static index_map coface(int n, int skip)
    {
        std::vector<int> v;
        for (int i = 0; i < n; ++i)
            if (i != skip)
                v.push_back(i);
        return { n, std::move(v) };
    }

    /// Codegeneracy: the monotone surjection (n+1) -> n hitting `repeat` twice.
    static index_map codegeneracy(int n, int repeat)
    {
        std::vector<int> v;
        for (int i = 0; i < n; ++i)
        {
            v.push_back(i);
            if (i == repeat)
                v.push_back(i);
        }
        return { n, std::move(v) };
    }

    /// Permutation of n exchanging positions i and j.
    static index_map transposition(int n, int i, int j)
    {
        auto v = identity(n).values_;
        std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
        return { n, std::move(v) };
    }

    [[nodiscard]] int source_size() const { return static_cast<int>(values_.size()); }
    [[nodiscard]] int target_size() const { return target_; }
    [[nodiscard]] bool monotone() const { return monotone_; }
    [[nodiscard]] const std::vector<int>& values() const { return values_; }
    [[nodiscard]] int operator()(int i) const { return values_[static_cast<std::size_t>(i)]; }

    /// (*this) after `inner`: first apply inner: k -> m, then this: m -> n.
    [[nodiscard]] index_map after(const index_map& inner) const
    {
        if (inner.target_size() != source_size())
            throw invalid_argument("index_map: composition of non-composable maps");
        std::vector<int> v;
        v.reserve(inner.values_.size());
        for (int x : inner.values_)
            v.push_back((*this)(x));
        return { target_, std::move(v) };
    }

    /// The decalage shift s[+k]: k new least indices, fixed, with s acting on the rest.
    [[nodiscard]] index_map shifted(int k) const
    {
        if (k == 0)
            return *this;
        std::vector<int> v;
        v.reserve(values_.size() + static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            v.push_back(i);
        for (int x : values_)
            v.push_back(x + k);
        return { target_ + k, std::move(v) };
    }

    [[nodiscard]] std::string to_string() const
    {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < values_.size(); ++i)
            os << (i ? "," : "") << values_[i] + 1;
        os << "]:" << target_;
        return os.str();
    }

    friend bool operator==(const index_map& a, const index_map& b)
    {
        return a.target_ == b.target_ && a.values_ == b.values_;
    }

private:
    int target_;
    std::vector<int> values_;
    bool monotone_ = false;
};

/// Visit every map m -> n in lexicographic order of the value sequence.
/// When `monotone_only`, only non-decreasing maps are visited.
/// The visitor returns false to stop early; the function returns false iff stopped.
template <typename Visitor>
bool for_each_index_map(int m, int n, bool monotone_only, Visitor&& visit)
{
    std::vector<int> v(static_cast<std::size_t>(m), 0);
    while (true)
    {
        if (!visit(index_map{ n, v }))
            return false;
        int pos = m - 1;
        while (pos >= 0 && v[static_cast<std::size_t>(pos)] == n - 1)
            --pos;
        if (pos < 0)
            return true;
        ++v[static_cast<std::size_t>(pos)];
        const int reset = monotone_only ? v[static_cast<std::size_t>(pos)] : 0;
        for (int i = pos + 1; i < m; ++i)
            v[static_cast<std::size_t>(i)] = reset;
    }
}

} // namespace typesimp
