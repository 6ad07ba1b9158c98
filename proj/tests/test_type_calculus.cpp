#include "support.hpp"

#include "typesimp/type_calculus.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace typesimp;

namespace
{

type_space full(const std::string& name)
{
    const auto m = oracle::fixture(name);
    return type_space::build(m, static_cast<int>(m.size()) + 1);
}

} // namespace

TEST(SectionFromWitness, LinearOrder)
{
    const auto t = full("lin3");
    const auto f = section_from_witness(t, 1, 3);
    for (element c = 0; c < 3; ++c)
        EXPECT_EQ(f(1, t.orbit_of(tuple{ c })), t.orbit_of(tuple{ 1, c }));
}

TEST(SectionFromWitness, ParameterWitness)
{
    const auto t = full("pure4b");
    const auto f = section_from_witness(t, 0, 4);
    const auto b = t.orbit_of(tuple{ 0 });
    const auto star = t.orbit_of(tuple{ 1 });
    EXPECT_EQ(f(1, b), t.orbit_of(tuple{ 0, 0 }));
    EXPECT_EQ(f(1, star), t.orbit_of(tuple{ 0, 1 }));
}

TEST(SectionFromWitness, NonInvariantWitnessNamesTheFailure)
{
    const auto t = full("pure4b");
    try
    {
        (void)section_from_witness(t, 1, 4);
        FAIL();
    }
    catch (const error& e)
    {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("n = 1"), std::string::npos) << msg;
        EXPECT_NE(msg.find("(m2)"), std::string::npos) << msg;
        EXPECT_NE(msg.find("(m2 m3)"), std::string::npos) << msg;
    }
}

TEST(InvariantWitnesses, Examples)
{
    EXPECT_EQ(invariant_witnesses(full("pure4b")), (std::vector<element>{ 0 }));
    EXPECT_EQ(invariant_witnesses(full("lin3")), (std::vector<element>{ 0, 1, 2 }));
    EXPECT_TRUE(invariant_witnesses(full("pure4")).empty());
}

TEST(InvariantWitnesses, AtFullDepthExactlyTheGroupFixedPoints)
{
    for (const auto& name : oracle::fixture_names())
    {
        const auto t = full(name);
        std::vector<element> fixed;
        for (std::size_t a = 0; a < t.universe_size(); ++a)
        {
            bool all = true;
            for (const auto& g : oracle::automorphisms(t.structure()))
                all = all && g[a] == static_cast<int>(a);
            if (all)
                fixed.push_back(static_cast<element>(a));
        }
        EXPECT_EQ(invariant_witnesses(t), fixed) << name;
    }
}

TEST(CoherentFamilies, Examples)
{
    EXPECT_EQ(enumerate_coherent_families(full("lin3"), 3, solve_mode::count).count, 3U);
    EXPECT_EQ(enumerate_coherent_families(full("pure4b"), 4, solve_mode::count).count, 1U);
    EXPECT_EQ(enumerate_coherent_families(full("pure4"), 4, solve_mode::count).count, 0U);
    EXPECT_EQ(enumerate_coherent_families(full("pure4"), 3, solve_mode::count).count, 1U);
}

TEST(CoherentFamilies, ConstantHeadAndFiberCondition)
{
    for (const auto& name : oracle::fixture_names())
    {
        const auto t = full(name);
        for (int d = 2; d + 1 <= t.depth(); ++d)
            for (const auto& f : enumerate_coherent_families(t, d, solve_mode::enumerate).families)
            {
                const auto& data = t.functor_view().data();
                for (int n = 1; n <= d; ++n)
                    for (std::size_t r = 0; r < t.orbit_count(n); ++r)
                    {
                        EXPECT_EQ(data.act(index_map::head_inclusion(1, n + 1), f(n, r)), f.head());
                        EXPECT_EQ(data.act(index_map::tail_inclusion(n, n + 1), f(n, r)), r);
                    }
            }
    }
}

TEST(CoherentFamilies, FullDepthFamiliesExtendUniquely)
{
    for (const auto& name : oracle::fixture_names())
    {
        const auto m = oracle::fixture(name);
        const int u = static_cast<int>(m.size());
        const auto deeper = type_space::build(m, u + 2);
        const auto at_full = enumerate_coherent_families(deeper, u, solve_mode::enumerate).families;
        const auto one_more = enumerate_coherent_families(deeper, u + 1, solve_mode::enumerate).families;
        ASSERT_EQ(at_full.size(), one_more.size()) << name;
        for (std::size_t i = 0; i < at_full.size(); ++i)
            EXPECT_EQ(one_more[i].pi().truncated(u).components(), at_full[i].pi().components());
    }
}

TEST(Bijection, FixtureCorpus)
{
    const std::map<std::string, std::size_t> expected{ { "pure3", 0 }, { "pure4", 0 }, { "pure4b", 1 },
                                                       { "lin3", 3 },  { "lin4", 4 },  { "cyc4", 0 } };
    for (const auto& [name, count] : expected)
    {
        const auto r = witness_family_bijection(full(name));
        EXPECT_EQ(r.witnesses.size(), count) << name;
        EXPECT_EQ(r.families.size(), count) << name;
        EXPECT_TRUE(r.matched) << name;
    }
    EXPECT_THROW(witness_family_bijection(type_space::build(oracle::fixture("lin3"), 3)), invalid_argument);
}

TEST(DefinitionScheme, PullbackExamples)
{
    const auto t = full("pure4b");
    const auto s = make_definition_scheme(section_from_witness(t, 0, 4));
    const std::vector<bool> all(t.orbit_count(2), true);
    EXPECT_EQ(s.pullback(1, all), std::vector<bool>(t.orbit_count(1), true));
    std::vector<bool> diag(t.orbit_count(2), false);
    diag[t.orbit_of(tuple{ 0, 0 })] = true;
    std::vector<bool> expect(t.orbit_count(1), false);
    expect[t.orbit_of(tuple{ 0 })] = true;
    EXPECT_EQ(s.pullback(1, diag), expect);
    EXPECT_THROW((void)s.pullback(5, all), invalid_argument);
}

TEST(DefinitionScheme, BooleanHomomorphismOnRandomSubsets)
{
    std::mt19937_64 rng(oracle::seed());
    std::bernoulli_distribution coin(0.5);
    for (const auto& name : oracle::fixture_names())
    {
        const auto t = full(name);
        for (const auto& f : enumerate_coherent_families(t, t.depth() - 1, solve_mode::enumerate).families)
        {
            const auto s = make_definition_scheme(f);
            for (int n = 1; n <= f.depth(); ++n)
                for (int trial = 0; trial < 20; ++trial)
                {
                    std::vector<bool> u(t.orbit_count(n + 1)), v(u.size());
                    for (std::size_t i = 0; i < u.size(); ++i)
                    {
                        u[i] = coin(rng);
                        v[i] = coin(rng);
                    }
                    EXPECT_TRUE(s.boolean_homomorphism_on(n, u, v)) << name;
                }
        }
    }
}

TEST(StableCheck, Verdicts)
{
    const auto lin = stable_check(full("lin3"), 3);
    EXPECT_TRUE(lin.stable);
    EXPECT_EQ(lin.heads_covered.size(), 3U);
    const auto pb = stable_check(full("pure4b"), 4);
    EXPECT_FALSE(pb.stable);
    EXPECT_EQ(pb.heads_covered, (std::vector<std::size_t>{ 0 }));
    EXPECT_EQ(pb.heads_total, 2U);
    for (int d = 2; d <= 3; ++d)
        EXPECT_TRUE(stable_check(type_space::build(oracle::singleton(), 4), d).stable);
}

TEST(StableCheck, FormulationsAgreeEverywhere)
{
    for (const auto& name : oracle::fixture_names())
    {
        const auto t = full(name);
        for (int d = 2; d + 1 <= t.depth(); ++d)
        {
            const auto r = stable_check(t, d);
            EXPECT_TRUE(r.formulations_agree) << name << " d=" << d;
        }
    }
}

TEST(Diagram, Examples)
{
    const auto lin = type_space::build(oracle::fixture("lin3"), 3);
    const auto w = diagram_of(lin, { 0, 1 });
    const auto& src = static_cast<const representable_data&>(w.source().data());
    EXPECT_EQ(w(2, src.encode({ 0, 1 })), lin.orbit_of(tuple{ 0, 1 }));

    const auto pb = type_space::build(oracle::fixture("pure4b"), 3);
    const auto wb = diagram_of(pb, { 1, 2 });
    const auto& sb = static_cast<const representable_data&>(wb.source().data());
    EXPECT_EQ(wb(2, sb.encode({ 0, 1 })), wb(2, sb.encode({ 1, 0 })));

    const auto whole = diagram_of(pb, { 0, 1, 2, 3 });
    const auto& sw = static_cast<const representable_data&>(whole.source().data());
    for (const auto& t : oracle::all_tuples(4, 2))
        EXPECT_EQ(whole(2, sw.encode({ std::size_t(t[0]), std::size_t(t[1]) })), pb.orbit_of(t));
    EXPECT_THROW(diagram_of(pb, {}), invalid_argument);
}

TEST(TypeAsLifting, Examples)
{
    const auto lin = type_space::build(oracle::fixture("lin3"), 3);
    const auto w = type_as_lifting(lin, 2, { 0 });
    EXPECT_EQ(w(1, 0), lin.orbit_of(tuple{ 2, 0 }));
    const auto diag = type_as_lifting(lin, 1, { 1 });
    EXPECT_EQ(diag(1, 0), lin.orbit_of(tuple{ 1, 1 }));

    const auto pb = type_space::build(oracle::fixture("pure4b"), 3);
    const auto wb = type_as_lifting(pb, 0, { 1 });
    EXPECT_EQ(wb(1, 0), pb.orbit_of(tuple{ 0, 1 }));
}

TEST(ExtendType, Examples)
{
    const auto pb = full("pure4b");
    const auto f = section_from_witness(pb, 0, 4);
    const auto w = extend_type(f, { 1 }, { 1, 2 });
    const auto& src = static_cast<const representable_data&>(w.source().data());
    EXPECT_EQ(w(2, src.encode({ 0, 1 })), pb.orbit_of(tuple{ 0, 1, 2 }));

    const auto same = extend_type(f, { 1 }, { 1 });
    EXPECT_EQ(same.components(), extend_type(f, { 1 }, { 1 }).components());

    const auto lin = full("lin3");
    const auto g = section_from_witness(lin, 1, 3);
    const auto wl = extend_type(g, { 0 }, { 0, 1, 2 });
    const auto& sl = static_cast<const representable_data&>(wl.source().data());
    for (const auto& t : oracle::all_tuples(3, 2))
    {
        tuple with{ 1 };
        with.insert(with.end(), t.begin(), t.end());
        EXPECT_EQ(wl(2, sl.encode({ std::size_t(t[0]), std::size_t(t[1]) })), lin.orbit_of(with));
    }
    EXPECT_THROW(extend_type(f, { 1, 3 }, { 1 }), invalid_argument);
}

TEST(RelativeStable, LinearOrderOverPureSet)
{
    const auto lin = type_space::build(oracle::fixture("lin3"), 4);
    const auto red = reduct(lin, {}, {}, {});
    EXPECT_TRUE(relative_stable_check(lin, red, 2).exists);
    const auto pure3 = type_space::build(oracle::fixture("pure3"), 4);
    EXPECT_EQ(enumerate_coherent_families(pure3, 3, solve_mode::count).count, 0U);
}

TEST(RelativeStable, IdentityReductFollowsStableCheck)
{
    for (const auto& name : { "lin3", "lin4" })
    {
        const auto t = full(name);
        const auto red = reduct(t, { "lt" }, {}, {});
        for (int d = 2; d + 1 <= t.depth(); ++d)
            EXPECT_EQ(relative_stable_check(t, red, d).exists, stable_check(t, d).stable) << name << " d=" << d;
    }
}

TEST(Borel, ClassCountsAndImageProperty)
{
    const auto pb = type_space::build(oracle::fixture("pure4b"), 3);
    const auto g = pb.group().order();
    for (int n = 0; n <= 2; ++n)
    {
        const auto r = borel(pb, n);
        std::size_t expected = 4;
        for (int i = 0; i < n; ++i)
            expected *= g;
        if (n > 0)
            expected /= g;
        else
            expected = oracle::orbits(oracle::automorphisms(pb.structure()), 4, 1).size();
        EXPECT_EQ(r.class_count, expected) << "n=" << n;
        EXPECT_TRUE(r.image_property);
    }
    const auto lin = type_space::build(oracle::fixture("lin3"), 2);
    const auto r0 = borel(lin, 0);
    EXPECT_EQ(r0.class_count, 3U);
    EXPECT_TRUE(r0.well_defined);
    for (std::size_t c = 0; c < 3; ++c)
        EXPECT_EQ(r0.comparison[c], lin.orbit_of(tuple{ static_cast<element>(c) }));
}

TEST(Borel, ImagePropertyOnAllFixtures)
{
    for (const auto& name : oracle::fixture_names())
    {
        const auto t = type_space::build(oracle::fixture(name), 3);
        for (int n = 0; n <= 2; ++n)
            EXPECT_TRUE(borel(t, n).image_property) << name << " n=" << n;
    }
}

TEST(Borel, BudgetIsEnforced)
{
    const auto t = type_space::build(oracle::fixture("pure4"), 3);
    EXPECT_THROW(borel(t, 2, 1000), budget_exceeded);
}
