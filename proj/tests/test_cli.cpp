#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coxpoly/cli.hpp"

using namespace coxpoly;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    nlohmann::json report;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    args.insert(args.begin(), "--json");
    const int code = run_cli(args, out, err);
    nlohmann::json j;
    if (!out.str().empty()) j = nlohmann::json::parse(out.str(), nullptr, false);
    return {code, j, err.str()};
}

std::string write_tmp(const std::string& name, const std::string& text)
{
    const fs::path dir = fs::temp_directory_path() / "coxtool_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST_CASE("classify")
{
    auto r = run({"classify", write_tmp("w17.cox", "nodes 1..6; 1-2; 2-3; 1-3; 3-4; 4-5; 5-6:7")});
    CHECK(r.code == 0);
    CHECK(r.report["command"] == "classify");
    CHECK(r.report.dump().find("Large (irreducible)") != std::string::npos);
    auto a = run({"classify", write_tmp("a2.cox", "nodes 1..3; 1-2; 2-3; 1-3")});
    CHECK(a.report.dump().find("Affine tilde_A_2") != std::string::npos);
    CHECK(run({"classify", write_tmp("empty.cox", "")}).code == 2);
    CHECK(run({"classify", "/nonexistent/file.cox"}).code == 2);
}

TEST_CASE("deform")
{
    auto r = run({"deform", "--family", "G1", "--m", "3..9"});
    CHECK(r.code == 0);
    CHECK(r.report["checks"]["failed"] == 0);
    auto u = run({"deform", "--family", "U"});
    CHECK(u.code == 0);
    CHECK(u.report.dump().find("circle") != std::string::npos);
    auto g3 = run({"deform", "--family", "G3", "--m", "7", "--mu", "2"});
    CHECK(g3.code == 0);
    CHECK(run({"deform", "--family", "nope"}).code == 4);
    CHECK(run({"deform", "--family", "G1", "--m", "x"}).code == 2);
    auto bad = run({"deform", write_tmp("k4.cox", "nodes 1..4; 1-2; 2-3; 3-4; 4-1; 1-3")});
    CHECK(bad.code == 3);
}

TEST_CASE("limit, realize, orbit, truncate")
{
    CHECK(run({"limit", "--family", "G1"}).code == 0);
    CHECK(run({"limit", "--family", "G3", "--mu", "1"}).code == 0);
    auto r = run({"realize", "--family", "G2", "--m", "7"});
    REQUIRE(r.code == 0);
    const auto cartan = write_tmp("g2.json", r.report["findings"]["cartan"].dump());
    CHECK(run({"realize", cartan}).code == 0);
    const auto ply = (fs::temp_directory_path() / "coxtool_tests" / "orbit.ply").string();
    auto o = run({"--out", ply, "orbit", "--family", "G1", "--m", "7", "--samples", "200"});
    CHECK(o.code == 0);
    CHECK(fs::exists(ply));
    CHECK(run({"truncate", "--family", "G2", "--m", "7"}).code == 0);
}

TEST_CASE("relhyp")
{
    const auto path = write_tmp("w17b.cox", "nodes 1..6; 1-2; 2-3; 1-3; 3-4; 4-5; 5-6:7");
    CHECK(run({"relhyp", path}).code == 0);
    auto bad = run({"relhyp", path, "--peripheral", "1,2,3"});
    CHECK(bad.code == 1);
    CHECK(bad.report.dump().find("\"condition\":4") != std::string::npos);
    CHECK(run({"relhyp", path, "--peripheral", "1,2,3,5,6"}).code == 0);
}

TEST_CASE("reproduce")
{
    for (const auto& id : {"cox_gp", "appendixB", "circle", "mix"}) {
        auto r = run({"reproduce", id});
        CHECK_MESSAGE(r.code == 0, id);
        CHECK(r.report["checks"]["failed"] == 0);
    }
    CHECK(run({"reproduce", "nope"}).code == 4);
    CHECK(reproduce("ex1C").passed());
}

TEST_CASE("output is deterministic")
{
    auto a = run({"--seed", "4", "orbit", "--family", "G1", "--m", "7", "--samples", "100"});
    auto b = run({"--seed", "4", "orbit", "--family", "G1", "--m", "7", "--samples", "100"});
    CHECK(a.report == b.report);
}

TEST_CASE("unknown subcommand")
{
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
}
