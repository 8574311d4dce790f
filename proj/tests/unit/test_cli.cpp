#include "spinwalls/cli.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

using nlohmann::ordered_json;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = spinwalls::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string manifest(const std::string& name)
{
    return std::string(SPINWALLS_MANIFEST_DIR) + "/" + name;
}

std::string temp_manifest(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / ("spinwalls_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

} // namespace

TEST(Cli, DemoBarlowEndsWithGammaValues)
{
    const Result r = run({"demo", "barlow"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = ordered_json::parse(r.out);
    ASSERT_GE(j.size(), 2u);
    auto it = j.end();
    --it;
    EXPECT_EQ(it.key(), "spin_gamma0");
    EXPECT_EQ(it.value(), 16);
    --it;
    EXPECT_EQ(it.key(), "gamma0");
    EXPECT_EQ(it.value(), 8);
    EXPECT_EQ(j["surface"]["c2"], 11);
    EXPECT_EQ(j["surface"]["I"], -7);
    EXPECT_EQ(j["base_points"], 4);
    EXPECT_EQ(j["multiplicity"], 2);
}

TEST(Cli, DemoCp2)
{
    const Result r = run({"demo", "cp2"});
    ASSERT_EQ(r.code, 0);
    const auto j = ordered_json::parse(r.out);
    EXPECT_EQ(j["c2"], 2);
    EXPECT_EQ(j["p1"], -8);
    EXPECT_EQ(j["vdim"], 10);
    EXPECT_EQ(j["degree"], 5);
}

TEST(Cli, DemoEmptinessSweep)
{
    const Result r = run({"demo", "emptiness-sweep"});
    ASSERT_EQ(r.code, 0);
    const auto j = ordered_json::parse(r.out);
    EXPECT_TRUE(j["all_valid"].get<bool>());
    EXPECT_GE(j["cases"].size(), 8u);
}

TEST(Cli, CertifyVeryImportantCase)
{
    const Result r = run({"certify", manifest("barlow.manifest")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = ordered_json::parse(r.out);
    EXPECT_EQ(j["certificate"], "valid");
    EXPECT_EQ(j["box_search"], "empty");
}

TEST(Cli, WallsOutputIsDeterministicAcrossWorkers)
{
    const Result one = run({"walls", "enumerate", manifest("walls_small.manifest"), "--workers", "1"});
    ASSERT_EQ(one.code, 0) << one.err;
    for (const char* w : {"2", "8"}) {
        const Result many = run({"walls", "enumerate", manifest("walls_small.manifest"), "--workers", w});
        EXPECT_EQ(many.out, one.out);
    }
    EXPECT_EQ(run({"walls", "enumerate", manifest("walls_small.manifest"), "--workers", "1"}).out, one.out);
}

TEST(Cli, PrettyKeepsFieldOrder)
{
    const Result plain = run({"walls", "enumerate", manifest("walls_small.manifest"), "--bound", "2"});
    const Result pretty = run({"walls", "enumerate", manifest("walls_small.manifest"), "--bound", "2", "--pretty"});
    ASSERT_EQ(plain.code, 0);
    ASSERT_EQ(pretty.code, 0);
    EXPECT_NE(plain.out, pretty.out);
    EXPECT_EQ(ordered_json::parse(pretty.out).dump() + "\n", plain.out);
}

TEST(Cli, BoundFlagOverridesManifest)
{
    const Result r = run({"walls", "enumerate", manifest("walls_small.manifest"), "--bound", "1"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(ordered_json::parse(r.out)["certification"]["box_bound"], 1);
}

TEST(Cli, MaxBoxFlagBeatsEnvironment)
{
    ::setenv("SPINWALLS_MAX_BOX", "10", 1);
    const Result capped = run({"walls", "enumerate", manifest("walls_small.manifest")});
    EXPECT_EQ(capped.code, 2);
    EXPECT_NE(capped.err.find("cap of 10 nodes"), std::string::npos);
    const Result flag = run({"walls", "enumerate", manifest("walls_small.manifest"), "--max-box", "100000"});
    EXPECT_EQ(flag.code, 0);
    ::setenv("SPINWALLS_MAX_BOX", "junk", 1);
    EXPECT_EQ(run({"walls", "enumerate", manifest("walls_small.manifest")}).code, 2);
    ::unsetenv("SPINWALLS_MAX_BOX");
    EXPECT_EQ(run({"walls", "enumerate", manifest("walls_small.manifest")}).code, 0);
    EXPECT_EQ(run({"walls", "enumerate", manifest("walls_small.manifest"), "--max-box", "0"}).code, 2);
}

TEST(Cli, ErrorsAreJsonWithExitTwo)
{
    const Result missing = run({"lattice", "info", "/nonexistent.manifest"});
    EXPECT_EQ(missing.code, 2);
    EXPECT_EQ(ordered_json::parse(missing.out)["error"]["kind"], "validation");
    EXPECT_FALSE(missing.err.empty());

    const auto bad = temp_manifest("bad", "[lattice]\nspec = 1\n[bundle]\nc9 = 3\n");
    const Result parse = run({"lattice", "info", bad});
    EXPECT_EQ(parse.code, 2);
    EXPECT_NE(parse.err.find(":4:"), std::string::npos);

    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"walls"}).code, 2);
    EXPECT_EQ(run({"walls", "enumerate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, InconsistentSurfaceReportsAndFails)
{
    const auto path = temp_manifest("surf", "[surface]\nK2 = 1\npg = 0\nq = 0\nc2 = 10\n");
    const Result r = run({"surface", "check", path});
    EXPECT_EQ(r.code, 2);
    const auto j = ordered_json::parse(r.out);
    EXPECT_FALSE(j["consistent"].get<bool>());
    EXPECT_FALSE(j["violations"].empty());
    EXPECT_EQ(run({"surface", "threshold", path, "--r", "1"}).code, 2);
}

TEST(Cli, SurfaceAndPairsCommands)
{
    const Result s = run({"surface", "check", manifest("surface.manifest")});
    ASSERT_EQ(s.code, 0);
    EXPECT_EQ(ordered_json::parse(s.out)["I"], -7);
    const Result t = run({"surface", "threshold", manifest("surface.manifest")});
    ASSERT_EQ(t.code, 0);
    EXPECT_TRUE(ordered_json::parse(t.out)["threshold"].get<bool>());

    const Result chain = run({"pairs", "chain", manifest("pairs.manifest")});
    ASSERT_EQ(chain.code, 0);
    const auto c = ordered_json::parse(chain.out);
    EXPECT_EQ(c["chambers"].size(), 4u);
    EXPECT_EQ(c["critical"].size(), 3u);
    EXPECT_EQ(c["chambers"][0], ordered_json::parse("[[5,2],[7,2]]"));

    const Result stable = run({"pairs", "stable", manifest("pairs.manifest")});
    ASSERT_EQ(stable.code, 0);
    EXPECT_TRUE(ordered_json::parse(stable.out)["stable"].get<bool>());

    const auto bad = temp_manifest("pairs", "[pairs]\ndegE = 7\nsigma = 1\ncandidates = 0:maybe\n");
    EXPECT_EQ(run({"pairs", "stable", bad}).code, 2);
}

TEST(Cli, IndexCommands)
{
    const Result v = run({"index", "vdim", manifest("cp2.manifest")});
    ASSERT_EQ(v.code, 0) << v.err;
    EXPECT_EQ(ordered_json::parse(v.out)["instanton"]["degree"], 5);

    const Result chi = run({"index", "chi-rank2", manifest("barlow.manifest")});
    ASSERT_EQ(chi.code, 0) << chi.err;
    EXPECT_EQ(ordered_json::parse(chi.out)["chi"]["value"], 1);

    const auto line = temp_manifest("line", "[lattice]\nspec = 1,-1x8\n[spin]\nC = 3 -1 -1 -1 -1 -1 -1 -1 -1\n"
                                            "[bundle]\ndelta = 0 0 0 0 0 0 0 0 0\n[query]\nr = 1\n");
    const Result l = run({"index", "chi-line", line});
    ASSERT_EQ(l.code, 0) << l.err;
    EXPECT_EQ(ordered_json::parse(l.out)["chi"]["value"], 1);
    EXPECT_EQ(ordered_json::parse(l.out)["vcodim_jumping"], 0);

    const auto wrong = temp_manifest("wrong", "[lattice]\nspec = 1,-1\n[spin]\nC = 1 0\n[bundle]\ndelta = 0 0\n");
    EXPECT_EQ(run({"index", "chi-line", wrong}).code, 2);
}
