#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "coxpoly/deform.hpp"
#include "coxpoly/realize.hpp"

using namespace coxpoly;

namespace {

Realization at_m7(const char* id)
{
    const auto& f = family(id);
    auto s = deformation_space(f, 7);
    return realize_cartan(family_cartan(f, 7, s.witnesses.front()));
}

CartanMatrix dihedral(int k)
{
    CoxeterSystem w({"a", "b"});
    w.set_order(0, 1, k);
    Eigen::MatrixXd a = gram_matrix(w);
    if (k == 2) a(0, 1) = a(1, 0) = 0;
    return CartanMatrix(w, a);
}

}  // namespace

TEST_CASE("realization of the first family")
{
    auto r = at_m7("G1");
    CHECK(r.dim == 4);
    CHECK(r.lattice == family_lattice(family("G1"), 7));
    CHECK(r.vertices.size() == 9);
    for (Eigen::Index s = 0; s < 6; ++s) CHECK(r.alpha.row(s).dot(r.b.row(s)) == doctest::Approx(2.0));
    CHECK((r.pairing() - r.cartan.entries()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((r.alpha * r.interior).maxCoeff() < 0);
    CHECK(are_equivalent(cartan_of(r), r.cartan));
}

TEST_CASE("reflections")
{
    auto r = at_m7("G1");
    auto refl = reflections_of(r);
    CHECK(refl.involution_error < 1e-9);
    CHECK(refl.det_error < 1e-9);
    CHECK(refl.relation_error < 1e-7);
    // (sigma_5 sigma_6)^7 directly
    Eigen::MatrixXd p = refl.matrices[4] * refl.matrices[5], q = Eigen::MatrixXd::Identity(5, 5);
    for (int i = 0; i < 7; ++i) q = q * p;
    CHECK((q - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-7);
    auto lim = realize_cartan(limit_family(family("G1")).limit);
    CHECK(reflections_of(lim).parabolic_trace_error < 1e-9);
}

TEST_CASE("limit realization is the pyramid")
{
    auto r = realize_cartan(limit_family(family("G1")).limit);
    CHECK(r.vertices.size() == 7);
    CHECK(r.lattice.has_face(r.lattice.mask_of({"1", "2", "3", "5", "6"})));
}

TEST_CASE("realization from explicit forms")
{
    auto r = realization_from(appendix_system(), appendix_alpha(2.0), appendix_b(2.0));
    CHECK(r.dim == 3);
    CHECK(r.lattice == appendix_polytope().lattice);
    CHECK(are_equivalent(r.cartan, appendix_cartan(2.0)));
    CHECK_THROWS_AS(realization_from(appendix_system(), appendix_alpha(2.0), appendix_b(2.0).topRows(4)), std::invalid_argument);
}

TEST_CASE("Tits simplex")
{
    auto t = tits_simplex(parse_system("nodes 1..2; 1-2"));
    CHECK(t.realization.dim == 1);
    CHECK(t.bilinear(0, 1) == doctest::Approx(-1.0));
    auto at = tits_simplex(parse_system("nodes 1..3; 1-2; 2-3; 1-3"));
    CHECK(at.realization.vertices.size() == 3);
    auto a1 = tits_simplex(parse_system("nodes 1..2; 1-2:inf"));
    CHECK(a1.realization.vertices.size() == 2);
}

TEST_CASE("vertex classes")
{
    auto g1 = classify_vertices(at_m7("G1"));
    CHECK(g1.perfect);
    CHECK(g1.count(VertexClass::Elliptic) == 9);
    auto r2 = at_m7("G2");
    auto g2 = classify_vertices(r2);
    CHECK(g2.count(VertexClass::Loxodromic) == 2);
    for (const auto& v : g2.vertices)
        if (v.cls == VertexClass::Loxodromic) {
            const auto name = r2.lattice.vertex_name(v.facets);
            CHECK((name == "v1345" || name == "v2345"));
        }
    auto gi = classify_vertices(realize_cartan(limit_family(family("G1")).limit));
    CHECK(gi.count(VertexClass::Parabolic) == 1);
    CHECK(gi.quasi_perfect);
}

TEST_CASE("truncation of the Lanner vertices")
{
    auto r = at_m7("G2");
    const FacetMask a = r.lattice.find_vertex("v1345");
    auto cert = truncatable(r, a);
    CHECK(cert.truncatable);
    CHECK(cert.span_dim == 4);
    auto t1 = truncate_geometric(r, a);
    CHECK(t1.facets().size() == 7);
    // couplings between old facets are kept
    CHECK((t1.cartan.entries().topLeftCorner(6, 6) - r.cartan.entries()).cwiseAbs().maxCoeff() < 1e-9);
    auto t2 = truncate_geometric(t1, t1.lattice.find_vertex("v2345"));
    CHECK(t2.facets().size() == 8);
    CHECK(t2.vertices.size() == 15);
    CHECK(classify_vertices(t2).perfect);
}

TEST_CASE("the non-truncatable apex")
{
    auto r = realization_from(appendix_system(), appendix_alpha(2.0), appendix_b(2.0));
    auto c = truncatable(r, r.lattice.mask_of({"2", "3", "4", "5"}));
    CHECK_FALSE(c.truncatable);
    CHECK(c.span_dim == 4);
    CHECK_THROWS_AS(truncate_geometric(r, r.lattice.mask_of({"2", "3", "4", "5"})), RealizationError);
}

TEST_CASE("orbits of finite dihedral groups")
{
    for (int k = 2; k <= 8; ++k) {
        auto o = orbit_explore(realize_cartan(dihedral(k)), k + 1, 20, 3);
        CHECK(o.elements.size() == static_cast<std::size_t>(2 * k));
        CHECK(o.overlap_violations == 0);
    }
    auto zero = orbit_explore(realize_cartan(dihedral(3)), 0, 10, 1);
    CHECK(zero.elements.size() == 1);
    CHECK(zero.elements[0].word.empty());
}

TEST_CASE("orbit of the first family")
{
    auto r = at_m7("G1");
    auto o = orbit_explore(r, 4, 10000, 9);
    CHECK(o.overlap_violations == 0);
    CHECK(o.pair_checks >= 10000);
    // never more than the free-product bound 1 + 6 * sum 5^k
    CHECK(o.elements.size() <= 1 + 6 * (1 + 5 + 25 + 125));
    for (std::size_t i = 1; i < o.elements.size(); ++i) CHECK(o.elements[i - 1].word.size() <= o.elements[i].word.size());
    std::ostringstream ply;
    write_ply(ply, r, o);
    CHECK(ply.str().rfind("ply\n", 0) == 0);
}

TEST_CASE("hyperbolicity")
{
    CHECK(is_hyperbolic(limit_family(family("G1")).limit));
    CHECK(is_hyperbolic(limit_family(family("G3"), 1.0).limit));
    CHECK_FALSE(is_hyperbolic(limit_family(family("G3"), 2.0).limit));
    // lambda != 1 on beta(G1_7): not symmetrizable
    CHECK_FALSE(is_hyperbolic(at_m7("G1")));
}

TEST_CASE("Hilbert distance")
{
    Membership interval = [](const Eigen::VectorXd& p) { return std::abs(p(0)) < 1; };
    Eigen::VectorXd x(1), y(1);
    x << 0;
    y << 0.5;
    CHECK(hilbert_distance(interval, x, x) == doctest::Approx(0.0));
    CHECK(hilbert_distance(interval, x, y) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-9));
    Membership disk = [](const Eigen::VectorXd& p) { return p.squaredNorm() < 1; };
    Eigen::VectorXd a(2), b(2);
    a << 0.1, -0.3;
    b << -0.4, 0.2;
    CHECK(hilbert_distance(disk, a, b) == doctest::Approx(hilbert_distance(disk, b, a)).epsilon(1e-9));
}
