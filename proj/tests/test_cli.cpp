#include "support.hpp"

#include "typesimp/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace typesimp;

namespace
{

struct run_result
{
    int code;
    std::string out;
    std::string err;
    nlohmann::json report() const { return nlohmann::json::parse(out); }
};

run_result invoke(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return { code, out.str(), err.str() };
}

std::string temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / ("typesimp_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

void expect_single_line_error(const run_result& r)
{
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.empty());
    ASSERT_FALSE(r.err.empty());
    EXPECT_EQ(r.err.rfind("typesimp: error: ", 0), 0U) << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
}

} // namespace

TEST(Io, FixturesRoundTripByteForByte)
{
    for (const auto& name : oracle::fixture_names())
    {
        const auto text = read_file(oracle::fixture_path(name));
        EXPECT_EQ(serialize(structure_to_json(oracle::fixture(name))), text) << name;
    }
}

TEST(Io, UnknownKeysAndBadShapesRejected)
{
    EXPECT_THROW(structure_from_json(nlohmann::json::parse(R"({"universe":["a"],"colour":1})")), invalid_argument);
    EXPECT_THROW(structure_from_json(nlohmann::json::parse(R"({"universe":"a"})")), invalid_argument);
    EXPECT_THROW(structure_from_json(nlohmann::json::parse(R"([1,2])")), invalid_argument);
    EXPECT_THROW(parse_json("{", "x"), invalid_argument);
}

TEST(Io, DigestIsSha256)
{
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cli, BijectionOnParameterFixture)
{
    const auto r = invoke({ "bijection-check", "--structure", oracle::fixture_path("pure4b") });
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.report();
    EXPECT_EQ(j["command"], "bijection-check");
    EXPECT_EQ(j["result"]["witnesses"], 1);
    EXPECT_EQ(j["result"]["families"], 1);
    EXPECT_EQ(j["result"]["matched"], true);
    EXPECT_EQ(j["version"], version_string);
    EXPECT_EQ(j["input_digest"], sha256_hex(read_file(oracle::fixture_path("pure4b"))));
}

TEST(Cli, StableCheckFailsWithCoverage)
{
    const auto r = invoke({ "stable-check", "--structure", oracle::fixture_path("pure4b"), "--depth", "4" });
    ASSERT_EQ(r.code, 1) << r.err;
    const auto j = r.report();
    EXPECT_EQ(j["result"]["stable"], false);
    EXPECT_EQ(j["result"]["heads_covered"], 1);
    EXPECT_EQ(j["result"]["heads_total"], 2);
    const auto lin = invoke({ "stable-check", "--structure", oracle::fixture_path("lin3") });
    EXPECT_EQ(lin.code, 0);
}

TEST(Cli, SsetCircle)
{
    const auto r = invoke({ "sset", "--preset", "circle", "--depth", "2" });
    ASSERT_EQ(r.code, 1) << r.err;
    const auto j = r.report();
    EXPECT_EQ(j["result"]["section_exists"], false);
    EXPECT_EQ(j["result"]["failure_level"], 1);
    EXPECT_EQ(invoke({ "sset", "--preset", "simplex:2", "--depth", "3" }).code, 0);
}

TEST(Cli, SsetPosetFile)
{
    const auto path = temp_file("poset.json", R"({"elements":["a","b","c"],"less":[["a","b"],["b","c"]]})");
    const auto r = invoke({ "sset", "--preset", "nerve-poset", "--poset", path, "--depth", "2" });
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.report()["result"]["sizes"], nlohmann::json::parse("[3,6,10,15]"));
}

TEST(Cli, OrbitsReport)
{
    const auto r = invoke({ "orbits", "--structure", oracle::fixture_path("lin3") });
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.report()["result"]["counts"], nlohmann::json::parse("[3,9,27]"));
}

TEST(Cli, SectionsModes)
{
    const auto count = invoke({ "sections", "--structure", oracle::fixture_path("pure4"), "--depth", "3" });
    ASSERT_EQ(count.code, 0);
    EXPECT_EQ(count.report()["result"]["count"], 1);
    const auto none = invoke({ "sections", "--structure", oracle::fixture_path("pure4"), "--mode", "one" });
    EXPECT_EQ(none.code, 1);
    EXPECT_TRUE(none.report()["result"].contains("deepest_level"));
    const auto all = invoke({ "sections", "--structure", oracle::fixture_path("lin3"), "--mode", "enumerate" });
    ASSERT_EQ(all.code, 0);
    EXPECT_EQ(all.report()["result"]["families"].size(), 3U);
}

TEST(Cli, AlgebraCommands)
{
    const auto lin = oracle::fixture_path("lin3");
    EXPECT_EQ(invoke({ "product", "--structure", lin, "--witness", "m1", "--witness", "m3" }).code, 0);
    EXPECT_EQ(
        invoke({ "product", "--structure", lin, "--witness", "m1", "--witness", "m2", "--witness", "m3" }).code, 0);
    EXPECT_EQ(invoke({ "morley", "--structure", lin, "--witness", "m2", "--steps", "3" }).code, 0);
    EXPECT_EQ(invoke({ "genstable", "--structure", lin }).code, 0);
    expect_single_line_error(invoke({ "morley", "--structure", oracle::fixture_path("pure4b"), "--witness", "m2" }));
}

TEST(Cli, OtherCommandsRun)
{
    const auto pb = oracle::fixture_path("pure4b");
    EXPECT_EQ(invoke({ "automorphisms", "--structure", pb }).code, 0);
    EXPECT_EQ(invoke({ "invariant-witnesses", "--structure", pb }).code, 0);
    EXPECT_EQ(invoke({ "reduct", "--structure", oracle::fixture_path("lin3"), "--drop-relation", "lt" }).code, 0);
    EXPECT_EQ(invoke({ "diagram", "--structure", pb, "--subset", "m1,m2" }).code, 0);
    EXPECT_EQ(invoke({ "lift-type", "--structure", pb, "--witness", "m3", "--subset", "m1" }).code, 0);
    EXPECT_EQ(invoke({ "relative-stable-check", "--structure", oracle::fixture_path("lin3"), "--drop-relation", "lt",
                       "--depth", "2" })
                  .code,
              0);
}

TEST(Cli, InputErrors)
{
    expect_single_line_error(invoke({ "orbits", "--structure", temp_file("bad.json", "{\"universe\": [") }));
    expect_single_line_error(
        invoke({ "orbits", "--structure", temp_file("unknown.json", R"({"universe":["a"],"extra":[]})") }));
    expect_single_line_error(invoke({ "orbits", "--structure", "/nonexistent/typesimp.json" }));
    expect_single_line_error(
        invoke({ "orbits", "--structure", oracle::fixture_path("pure4"), "--depth", "4", "--budget", "10" }));
    expect_single_line_error(invoke({ "sections", "--structure", oracle::fixture_path("lin3"), "--mode", "many" }));
    expect_single_line_error(invoke({ "frobnicate" }));
    expect_single_line_error(invoke({ "sset", "--preset", "torus" }));
}

TEST(Cli, Deterministic)
{
    for (const auto& name : oracle::fixture_names())
    {
        const std::vector<std::string> args{ "stable-check", "--structure", oracle::fixture_path(name) };
        const auto a = invoke(args);
        const auto b = invoke(args);
        EXPECT_EQ(a.out, b.out) << name;
        EXPECT_EQ(a.code, b.code);
    }
}
