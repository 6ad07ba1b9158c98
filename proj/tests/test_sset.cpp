#include "support.hpp"

#include "typesimp/sset.hpp"

#include <gtest/gtest.h>

using namespace typesimp;

namespace
{

std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

/// Sends every simplex (v0,...,vk) to (0,v0,...,vk), looked up by label.
section prepend_least_vertex(const simplicial_set& s, int d)
{
    const auto problem = extra_degeneracy_problem(s, d);
    std::vector<natural_transformation::table> tabs;
    for (int n = 1; n <= d; ++n)
    {
        natural_transformation::table tab;
        for (std::size_t x = 0; x < s.size(n - 1); ++x)
        {
            const auto& l = s.label(n - 1, x);
            const auto target = s.find(n, "(" + s.label(0, 0).substr(1, s.label(0, 0).size() - 2) + "," + l.substr(1));
            if (!target)
                throw std::runtime_error("no simplex for prepending to " + l);
            tab.push_back(*target);
        }
        tabs.push_back(std::move(tab));
    }
    return { problem, natural_transformation{ problem.source(), problem.total(), std::move(tabs) } };
}

} // namespace

TEST(Sset, PresetSizes)
{
    for (int k = 0; k <= 3; ++k)
    {
        const auto s = build_preset("simplex:" + std::to_string(k), 4);
        for (int j = 0; j <= 4; ++j)
            EXPECT_EQ(s.size(j), binomial(static_cast<std::size_t>(k + 1 + j), static_cast<std::size_t>(j + 1)));
    }
    const auto b = build_preset("boundary:2", 4);
    for (int j = 0; j <= 4; ++j)
        EXPECT_EQ(b.size(j), binomial(static_cast<std::size_t>(3 + j), static_cast<std::size_t>(j + 1)) -
                                 binomial(static_cast<std::size_t>(j), 2));
    const auto c = build_preset("circle", 4);
    for (int j = 0; j <= 4; ++j)
        EXPECT_EQ(c.size(j), static_cast<std::size_t>(j + 1));
    const auto d = build_preset("discrete:3", 3);
    for (int j = 0; j <= 3; ++j)
        EXPECT_EQ(d.size(j), 3U);
}

TEST(Sset, SimplicialIdentitiesHold)
{
    for (const auto& name : { "simplex:0", "simplex:2", "simplex:3", "boundary:1", "boundary:2", "boundary:3", "circle",
                              "discrete:2", "nerve-poset:a<b,a<c,b<d,c<d" })
        EXPECT_EQ(check_simplicial_identities(build_preset(name, 4)), "") << name;
}

TEST(Sset, FunctorViewIsFunctorial)
{
    for (const auto& name : { "simplex:2", "boundary:2", "circle" })
    {
        const auto f = to_functor(build_preset(name, 4));
        EXPECT_TRUE(check_functoriality(f, 4).empty()) << name;
    }
}

TEST(Sset, ActionMatchesFaceAndDegeneracy)
{
    const auto s = build_preset("simplex:2", 3);
    for (int k = 1; k <= 3; ++k)
        for (int i = 0; i <= k; ++i)
            for (std::size_t x = 0; x < s.size(k); ++x)
                EXPECT_EQ(s.act(index_map::coface(k + 1, i), x), s.face(k, i, x));
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i <= k; ++i)
            for (std::size_t x = 0; x < s.size(k); ++x)
                EXPECT_EQ(s.act(index_map::codegeneracy(k + 1, i), x), s.degeneracy(k, i, x));
    EXPECT_THROW((void)s.act(index_map{ 2, { 1, 0 } }, 0), invalid_argument);
}

TEST(Sset, Components)
{
    EXPECT_EQ(components(build_preset("discrete:3", 2)).size(), 3U);
    EXPECT_EQ(components(build_preset("boundary:2", 2)).size(), 1U);
    EXPECT_EQ(components(build_preset("nerve-poset:a<b,c<d,e", 2)).size(), 3U);
    const auto u = disjoint_union(build_preset("simplex:1", 3), build_preset("circle", 3));
    EXPECT_EQ(check_simplicial_identities(u), "");
    const auto comps = components(u);
    ASSERT_EQ(comps.size(), 2U);
    EXPECT_EQ(restrict_to(u, comps[0]).size(1), 3U);
    EXPECT_EQ(restrict_to(u, comps[1]).size(1), 2U);
}

TEST(Sset, PosetParsing)
{
    const auto p = parse_poset("a<b,b<c,d");
    EXPECT_EQ(p.elements, (std::vector<std::string>{ "a", "b", "c", "d" }));
    EXPECT_EQ(p.less.size(), 2U);
    EXPECT_THROW(parse_poset("a<"), invalid_argument);
    EXPECT_THROW(parse_poset(""), invalid_argument);
    EXPECT_THROW(nerve_of(parse_poset("a<b,b<a"), 2), invalid_argument);
    const auto chain = nerve_of(parse_poset("a<b,b<c"), 3);
    const auto simplex = build_preset("simplex:2", 3);
    for (int k = 0; k <= 3; ++k)
        EXPECT_EQ(chain.size(k), simplex.size(k));
}

TEST(Sset, SimplexHasTheLeastVertexWitness)
{
    for (int k = 0; k <= 3; ++k)
        for (int d = 1; d <= 4; ++d)
        {
            const auto s = build_preset("simplex:" + std::to_string(k), d + 1);
            EXPECT_NO_THROW(prepend_least_vertex(s, d)) << "simplex:" << k << " d=" << d;
            const auto r = contractibility_probe(s, d);
            EXPECT_TRUE(r.section_exists);
        }
}

TEST(Sset, LeastVertexWitnessFailsOnBoundary)
{
    const auto s = build_preset("boundary:2", 3);
    EXPECT_ANY_THROW(prepend_least_vertex(s, 2));
}

TEST(Sset, ProbeVerdicts)
{
    const auto circle = contractibility_probe(build_preset("circle", 3), 2);
    EXPECT_FALSE(circle.section_exists);
    EXPECT_EQ(circle.failure_level, 1);
    for (int d = 2; d <= 4; ++d)
    {
        const auto r = contractibility_probe(build_preset("boundary:2", d + 1), d);
        EXPECT_FALSE(r.section_exists) << d;
        EXPECT_EQ(r.failure_level, d - 1) << d;
    }
    EXPECT_TRUE(contractibility_probe(build_preset("boundary:2", 2), 1).section_exists);
    const auto disc = contractibility_probe(build_preset("discrete:2", 3), 2);
    EXPECT_TRUE(disc.section_exists);
    ASSERT_EQ(disc.per_component.size(), 2U);
    EXPECT_TRUE(disc.per_component[0].section_exists && disc.per_component[1].section_exists);
    EXPECT_THROW(contractibility_probe(build_preset("simplex:1", 2), 2), invalid_argument);
}

TEST(Sset, UnionStability)
{
    const std::vector<std::string> names{ "simplex:1", "simplex:2", "circle", "boundary:2", "discrete:2" };
    for (const auto& a : names)
        for (const auto& b : names)
        {
            const auto sa = build_preset(a, 3);
            const auto sb = build_preset(b, 3);
            const auto u = contractibility_probe(disjoint_union(sa, sb), 2);
            const bool parts = contractibility_probe(sa, 2).section_exists && contractibility_probe(sb, 2).section_exists;
            EXPECT_EQ(u.section_exists, parts) << a << " + " << b;
            bool comps = true;
            for (const auto& c : u.per_component)
                comps = comps && c.section_exists;
            EXPECT_EQ(u.section_exists, comps) << a << " + " << b;
        }
}

TEST(Sset, BudgetIsEnforced)
{
    EXPECT_THROW(build_preset("simplex:3", 6, 100), budget_exceeded);
    EXPECT_THROW(build_preset("torus", 2), invalid_argument);
    EXPECT_THROW(build_preset("simplex:x", 2), invalid_argument);
}
