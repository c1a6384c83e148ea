#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "coxpoly/families.hpp"
#include "coxpoly/relhyp.hpp"

using namespace coxpoly;

namespace {

const Subset kLoop{"1", "2", "3"};
const Subset kCusp{"1", "2", "3", "5", "6"};

}  // namespace

TEST_CASE("affine subsystems")
{
    auto w7 = family_system(family("G1"), 7);
    CHECK(affine_subsystems(w7, 3) == std::vector<Subset>{kLoop});
    auto winf = family_system(family("G1"));
    auto all = affine_subsystems(winf, 3);
    CHECK(std::find(all.begin(), all.end(), kCusp) != all.end());
    CHECK(std::find(all.begin(), all.end(), kLoop) != all.end());
    CHECK(affine_subsystems(parse_system("nodes 1..4; 1-2; 2-3; 3-4"), 1).empty());
}

TEST_CASE("perp")
{
    auto w7 = family_system(family("G1"), 7);
    CHECK(perp(w7, kLoop) == Subset{"5", "6"});
    CHECK(perp(w7, {}) == w7.generators());
    CHECK(perp(family_system(family("G3"), 7), kLoop) == Subset{"5", "6"});
}

TEST_CASE("Caprace conditions")
{
    CHECK(caprace_check(family_system(family("U")), {}).holds);
    auto w7 = family_system(family("G1"), 7);
    auto bad = caprace_check(w7, {{kLoop}});
    CHECK_FALSE(bad.holds);
    bool found = false;
    for (const auto& v : bad.violations)
        if (v.condition == 4) {
            found = true;
            CHECK(v.witnesses[1] == kLoop);
            CHECK(v.witnesses[2] == Subset{"5", "6"});
        }
    CHECK(found);
    CHECK(caprace_check(w7, {{kCusp}}).holds);
    auto none = caprace_check(w7, {});
    CHECK_FALSE(none.holds);
    CHECK(none.violations.front().condition == 1);
}

TEST_CASE("bad peripheral collections")
{
    auto w7 = family_system(family("G1"), 7);
    CHECK_THROWS_AS(caprace_check(w7, {{Subset{}}}), std::invalid_argument);
    CHECK_THROWS_AS(caprace_check(w7, {{kLoop, kLoop}}), std::invalid_argument);
    CHECK_THROWS_AS(caprace_check(w7, {{Subset{"9"}}}), std::invalid_argument);
}

TEST_CASE("default peripherals")
{
    CHECK(default_peripherals(family_system(family("G1"), 7)).subsets == std::vector<Subset>{kCusp});
    CHECK(default_peripherals(family_system(family("G1"))).subsets == std::vector<Subset>{kCusp});
    CHECK(default_peripherals(parse_system("nodes 1..3; 1-2; 2-3:5")).subsets.empty());
}

TEST_CASE("peripheral summaries")
{
    auto w7 = family_system(family("G1"), 7);
    auto s = summarize_peripheral(w7, kCusp);
    CHECK(s.affine_components == std::vector<std::string>{"tilde_A_2"});
    CHECK(s.virtual_abelian_rank == 2);
    auto si = summarize_peripheral(family_system(family("G1")), kCusp);
    CHECK(si.virtual_abelian_rank == 3);
}

TEST_CASE("json")
{
    auto j = to_json(caprace_check(family_system(family("G1"), 7), {{kLoop}}));
    CHECK(j["holds"] == false);
    CHECK(j["violations"].size() >= 1);
}
