#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coxpoly/families.hpp"
#include "coxpoly/polytope.hpp"

using namespace coxpoly;

TEST_CASE("products of simplices")
{
    auto l = simplex_product(2, 2);
    CHECK(l.facet_count() == 6);
    CHECK(l.count(2) == 15);
    CHECK(l.count(0) == 9);
    CHECK(l.validate().empty());
    auto prism = simplex_product(1, 2);
    CHECK(prism.facet_count() == 5);
    CHECK(prism.count(1) == 9);
    CHECK(prism.count(0) == 6);
    auto sq = simplex_product(1, 1);
    CHECK(sq.facet_count() == 4);
    CHECK(sq.count(0) == 4);
    for (int e = 1; e <= 3; ++e)
        for (int f = e; f <= 4; ++f) {
            auto p = simplex_product(e, f);
            CHECK(p.count(0) == static_cast<std::size_t>((e + 1) * (f + 1)));
            CHECK(p.facet_count() == static_cast<std::size_t>(e + f + 2));
            CHECK(p.validate().empty());
        }
}

TEST_CASE("pyramids")
{
    auto p = pyramid(simplex_product(1, 2));
    CHECK(p.facet_count() == 6);
    CHECK(p.count(2) == 14);
    CHECK(p.count(0) == 7);
    CHECK(p.validate().empty());
    CHECK(lattice_isomorphism(pyramid(simplex(3)), simplex(4)).has_value());
    auto q = pyramid(pyramid(simplex_product(1, 1)));
    CHECK(q.dim() == 4);
    int non_adjacent = 0;
    for (std::size_t i = 0; i < q.facet_count(); ++i)
        for (std::size_t j = i + 1; j < q.facet_count(); ++j)
            if (!q.adjacent(i, j)) ++non_adjacent;
    CHECK(non_adjacent == 2);
}

TEST_CASE("labeled family polytopes")
{
    const auto& g1 = family("G1");
    auto p7 = family_polytope(g1, 7);
    CHECK(p7.lattice.count(0) == 9);
    CHECK(p7.coxeter_system() == family_system(g1, 7));
    auto pinf = family_polytope(g1);
    CHECK(pinf.lattice.count(0) == 7);
    CHECK(pinf.coxeter_system() == family_system(g1));
}

TEST_CASE("vertex links")
{
    auto p1 = family_polytope(family("G1"), 7);
    const FacetMask v = p1.lattice.find_vertex("v1345");
    auto link = vertex_link(p1, v);
    CHECK(is_simplex(link.lattice));
    CHECK(classify_irreducible(link.coxeter_system()).catalog_name == std::optional<std::string>("A_4"));
    auto p2 = family_polytope(family("G2"), 7);
    CHECK(classify_vertex(p2, p2.lattice.find_vertex("v1345")) == VertexLabel::Lanner);
    auto pinf = family_polytope(family("G1"));
    auto apex = vertex_link(pinf, cusp_vertex(family("G1")));
    CHECK(apex.lattice.facet_count() == 5);
    CHECK(describe(apex.coxeter_system()).find("tilde_A_2") != std::string::npos);
    CHECK(classify_vertex(pinf, cusp_vertex(family("G1"))) == VertexLabel::Affine);
}

TEST_CASE("perfectness")
{
    CHECK(perfectness_report(family_polytope(family("G1"), 7)).perfect);
    auto r2 = perfectness_report(family_polytope(family("G2"), 7));
    CHECK_FALSE(r2.perfect);
    CHECK(r2.two_perfect);
    CHECK(r2.count(VertexLabel::Lanner) == 2);
    auto ri = perfectness_report(family_polytope(family("G2")));
    CHECK(ri.two_perfect);
    CHECK(ri.vertices.size() - ri.count(VertexLabel::Spherical) == 3);
}

TEST_CASE("Dehn filling")
{
    const auto& f = family("G1");
    auto filled = dehn_fill(family_polytope(f), cusp_vertex(f), 7);
    CHECK(filled == family_polytope(f, 7));
    auto link = prism_link(family_polytope(f), cusp_vertex(f));
    CHECK(link.cycle.size() == 3);
    const std::size_t s = link.s, t = link.t;
    CHECK(collapse_ridge(filled, std::min(s, t), std::max(s, t)) == family_polytope(f));
    auto gv = family_polytope(family("V"));
    try {
        dehn_fill(gv, gv.lattice.find_vertex("v2345"), 7);
        FAIL("expected a Dehn filling error");
    } catch (const DehnFillError& e) {
        CHECK(e.link_group == "tilde_C_3");
    }
}

TEST_CASE("truncation")
{
    auto p2 = family_polytope(family("G2"), 7);
    const std::vector<FacetMask> vs{p2.lattice.find_vertex("v1345"), p2.lattice.find_vertex("v2345")};
    auto t = truncate_labeled(p2, vs);
    CHECK(t.lattice.facet_count() == 8);
    CHECK(perfectness_report(t).perfect);
    CHECK(t.lattice.validate().empty());
    CHECK(truncate_labeled(p2, {}) == p2);
    // the new facet meets the facets of the old vertex at right angles
    const std::size_t n = t.lattice.facet_index(truncation_facet_id(p2.lattice, vs[0]));
    for (auto i : mask_indices(vs[0])) {
        const std::size_t j = t.lattice.facet_index(p2.lattice.facets()[i]);
        CHECK(t.label(std::min(n, j), std::max(n, j)) == 2);
    }
}

TEST_CASE("gluing and cutting")
{
    auto p2 = family_polytope(family("G2"), 7);
    const FacetMask v = p2.lattice.find_vertex("v1345");
    auto isos = link_isomorphisms(p2, v, p2, v);
    REQUIRE_FALSE(isos.empty());
    auto g = glue_labeled(p2, v, p2, v, isos.front());
    CHECK(g.polytope.lattice.validate().empty());
    auto [left, right] = cut_glued(g, p2);
    CHECK(left == truncate_labeled(p2, {v}));
    CHECK(right == truncate_labeled(p2, {v}));
}

TEST_CASE("faces predicted from a Cartan matrix")
{
    const auto& f = family("G1");
    auto limit_faces = faces_from_cartan(build_special_form(family_system(f), std::vector<double>{1.0}), 4);
    const IndexSet apex{0, 1, 2, 4, 5};
    bool found = false;
    for (const auto& p : limit_faces)
        if (p.facets == apex && p.dim == 0) found = true;
    CHECK(found);
}

TEST_CASE("prismatic subsets")
{
    auto l = simplex_product(2, 3);
    // facets of the Delta_3 factor are the last four
    FacetMask four = 0;
    for (std::size_t i = 3; i < 7; ++i) four |= bit(i);
    CHECK(is_prismatic(l, four));
    CHECK_FALSE(is_prismatic(l, bit(0) | bit(3)));
    for (FacetMask m = 1; m < (FacetMask{1} << 7); ++m)
        if (popcount(m) == 5) CHECK_FALSE(is_prismatic(l, m));
}

TEST_CASE("json round trip")
{
    auto p = family_polytope(family("G2"), 7);
    CHECK(labeled_from_json(nlohmann::json::parse(to_json(p).dump())) == p);
}
