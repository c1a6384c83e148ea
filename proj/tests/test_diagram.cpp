#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "coxpoly/diagram.hpp"

using namespace coxpoly;

namespace {

const char* kW17 = "nodes 1..6; 1-2; 2-3; 1-3; 3-4; 4-5; 5-6:7";

CoxeterSystem relabel(const CoxeterSystem& w, const std::vector<std::size_t>& perm)
{
    std::vector<std::string> g(w.rank());
    for (std::size_t i = 0; i < w.rank(); ++i) g[perm[i]] = "x" + std::to_string(i);
    CoxeterSystem out(g);
    for (std::size_t i = 0; i < w.rank(); ++i)
        for (std::size_t j = i + 1; j < w.rank(); ++j) out.set_order(perm[i], perm[j], w.order(i, j));
    return out;
}

}  // namespace

TEST_CASE("parse the W1 graph at m = 7")
{
    auto w = parse_system(kW17);
    REQUIRE(w.rank() == 6);
    CHECK(w.order("1", "2") == 3);
    CHECK(w.order("5", "6") == 7);
    CHECK(w.order("1", "4") == 2);
    CHECK(w.order("6", "5") == 7);
    CHECK(w.edge_count() == 6);
}

TEST_CASE("parse infinity, labels, comments and lets")
{
    auto a1 = parse_system("nodes 1..2; 1-2:inf");
    CHECK(is_inf(a1.order(0, 1)));
    auto t = parse_system("nodes 1..3; 1-2:4; 2-3:4; 1-3:4  # triangle");
    CHECK(t.order(0, 2) == 4);
    auto named = parse_system("nodes a, b, c; a-b:m; b-c\nlet m = 5");
    CHECK(named.order("a", "b") == 5);
    auto d = parse_diagram("nodes 1..3; 1-2:m; 2-3");
    CHECK(d.free_parameters() == std::vector<std::string>{"m"});
    CHECK(d.bind({{"m", 9}}).order(0, 1) == 9);
    CHECK_THROWS_AS(d.bind(), ParseError);
}

TEST_CASE("parse errors")
{
    CHECK_THROWS_AS(parse_system(""), ParseError);
    CHECK_THROWS_AS(parse_system("nodes 1..2; 1-1"), ParseError);
    CHECK_THROWS_AS(parse_system("nodes 1..2; 1-2; 2-1:4"), ParseError);
    CHECK_THROWS_AS(parse_system("nodes 1..2; 1-3"), ParseError);
    CHECK_THROWS_AS(parse_system("nodes 1..2; 1-2:1"), ParseError);
    try {
        parse_system("nodes 1..2;\n1-2:?");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("serialize round trip")
{
    for (const char* src : {kW17, "nodes 1..2; 1-2:inf", "nodes 1..3", "nodes a, b; a-b:12"}) {
        auto w = parse_system(src);
        CHECK(parse_system(serialize(w)) == w);
    }
}

TEST_CASE("gram matrix")
{
    auto i4 = parse_system("nodes 1..2; 1-2:4");
    auto g = gram_matrix(i4);
    CHECK(g(0, 0) == doctest::Approx(2));
    CHECK(g(0, 1) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(gram_matrix(parse_system("nodes 1..1"))(0, 0) == 2);
    auto ga = gram_matrix(parse_system("nodes 1..2; 1-2:inf"));
    CHECK(ga(0, 1) == -2);
    CHECK(cos_pi_over(kInf) == 1.0);
    CHECK(sin2_pi_over(3) == doctest::Approx(0.75));
}

TEST_CASE("components and subsystems")
{
    auto w = parse_system(kW17);
    CHECK(split_components(w).size() == 1);
    CHECK(split_components(parse_system("nodes 1..3")).size() == 3);
    auto link = parse_system("nodes 1..6; 1-2; 2-3; 1-3; 5-6:inf");
    CHECK(split_components(subsystem(link, std::vector<std::string>{"1", "2", "3", "5", "6"})).size() == 2);
    auto tri = subsystem(w, std::vector<std::string>{"1", "2", "3"});
    CHECK(classify_irreducible(tri).catalog_name == std::optional<std::string>("tilde_A_2"));
    auto i7 = subsystem(w, std::vector<std::string>{"5", "6"});
    CHECK(i7.order(0, 1) == 7);
    CHECK(subsystem(w, std::vector<std::string>{}).rank() == 0);
    CHECK_THROWS(subsystem(w, std::vector<std::string>{"9"}));
}

TEST_CASE("classification examples")
{
    auto h3 = classify_irreducible(parse_system("nodes 1..3; 1-2:5; 2-3"));
    CHECK(h3.kind == Kind::Spherical);
    CHECK(h3.catalog_name == std::optional<std::string>("H_3"));
    CHECK(classify_irreducible(parse_system("nodes 1..3; 1-2; 2-3; 1-3")).kind == Kind::Affine);
    CHECK(classify_irreducible(parse_system("nodes 1..4; 1-2:5; 2-3; 3-4:5")).kind == Kind::Lanner);
    CHECK(catalog_match(parse_system("nodes 1..5; 1-2; 2-3; 3-4; 4-5; 1-5")) == std::optional<std::string>("tilde_A_4"));
    CHECK(classify_irreducible(parse_system("nodes 1..5; 1-2:5; 2-3; 3-4; 4-5")).kind == Kind::Lanner);
    CHECK(classify_irreducible(parse_system("nodes 1..3; 1-2; 2-3; 1-3:7")).kind == Kind::Lanner);
    CHECK(classify_irreducible(parse_system(kW17)).kind == Kind::Large);
    CHECK_THROWS(classify_irreducible(parse_system("nodes 1..2")));
}

TEST_CASE("whole-system summaries")
{
    CHECK(is_spherical(parse_system("nodes 1..3; 1-2")));
    CHECK(is_affine(parse_system("nodes 1..5; 1-2; 2-3; 1-3; 4-5:inf")));
    CHECK_FALSE(is_affine(parse_system("nodes 1..3; 1-2; 2-3; 1-3:4")));
}

TEST_CASE("classification is invariant under relabeling")
{
    std::mt19937 rng(7);
    for (std::size_t rank = 3; rank <= 6; ++rank)
        for (const auto& e : catalog(rank, 6)) {
            std::vector<std::size_t> perm(rank);
            for (std::size_t i = 0; i < rank; ++i) perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), rng);
            auto r = relabel(e.system, perm);
            CHECK(isomorphic(r, e.system));
            CHECK(classify_irreducible(r).kind == e.kind);
            CHECK(classify_irreducible(r).catalog_name == std::optional<std::string>(e.name));
        }
}

TEST_CASE("determinant signs of spherical and affine catalog entries")
{
    for (std::size_t rank = 2; rank <= 9; ++rank)
        for (const auto& e : catalog(rank, 8)) {
            const double det = gram_matrix(e.system).determinant() / std::pow(2.0, static_cast<double>(rank));
            if (e.kind == Kind::Spherical) CHECK(det > 1e-9);
            if (e.kind == Kind::Affine) CHECK(std::abs(det) < 1e-9);
        }
}
