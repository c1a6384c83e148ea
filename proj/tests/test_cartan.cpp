#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "coxpoly/cartan.hpp"
#include "coxpoly/families.hpp"

using namespace coxpoly;

namespace {

const char* kW17 = "nodes 1..6; 1-2; 2-3; 1-3; 3-4; 4-5; 5-6:7";

// lambda > 1 on beta(G1_7), mpmath oracle
constexpr double kLambdaG1 = 6.417553386585805790;

}  // namespace

TEST_CASE("validation of Cartan matrices")
{
    auto w = parse_system("nodes 1..2; 1-2:4");
    Eigen::MatrixXd a(2, 2);
    a << 2, -1, -2, 2;
    CHECK_NOTHROW(CartanMatrix(w, a));
    a << 2, -1, -1, 2;
    CHECK_THROWS_AS(CartanMatrix(w, a), std::invalid_argument);
    a << 2, 0, -2, 2;
    CHECK_THROWS_AS(CartanMatrix(w, a), std::invalid_argument);
    auto inf = parse_system("nodes 1..2; 1-2:inf");
    a << 2, -3, -3, 2;
    CHECK_NOTHROW(CartanMatrix(inf, a));
    a << 2, -1, -1, 2;
    CHECK_THROWS_AS(CartanMatrix(inf, a), std::invalid_argument);
}

TEST_CASE("special form of W1")
{
    auto w = parse_system(kW17);
    auto basis = cycle_basis(w);
    REQUIRE(basis.cycles.size() == 1);
    CHECK(basis.cycles[0].closing == std::make_pair<std::size_t, std::size_t>(0, 2));
    auto a = build_special_form(w, std::vector<double>{2.5});
    CHECK(a(0, 2) == doctest::Approx(-1 / 2.5));
    CHECK(a(2, 0) == doctest::Approx(-2.5));
    CHECK(a(4, 5) == doctest::Approx(-2 * std::cos(M_PI / 7)));
    CHECK(a(0, 1) == a(1, 0));
    auto prod = cyclic_products(a);
    REQUIRE(prod.size() == 1);
    const double p = prod.begin()->second, q = reversed_cyclic_products(a).begin()->second;
    CHECK(p * q == doctest::Approx(1.0));
    CHECK((std::abs(p + 2.5) < 1e-12 || std::abs(p + 1 / 2.5) < 1e-12));
}

TEST_CASE("symmetric special form is the Gram matrix")
{
    auto w = parse_system("nodes 1..6; 1-2; 2-3; 1-3; 3-4; 4-5; 5-6:7; 4-6:4");
    CHECK(cycle_rank(w) == 2);
    auto a = build_special_form(w, std::vector<double>{1.0, 1.0});
    CHECK((a.entries() - gram_matrix(w)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("the circle example has entries -sqrt2 and -2c5")
{
    const auto& f = family("U");
    auto a = build_special_form(family_system(f), std::vector<double>{1.3, 0.7});
    bool root2 = false, c5 = false;
    for (Eigen::Index i = 0; i < 6; ++i)
        for (Eigen::Index j = 0; j < 6; ++j) {
            root2 = root2 || std::abs(a.entries()(i, j) + std::sqrt(2.0)) < 1e-12;
            c5 = c5 || std::abs(a.entries()(i, j) + 2 * std::cos(M_PI / 5)) < 1e-12;
        }
    CHECK(root2);
    CHECK(c5);
}

TEST_CASE("equivalence under diagonal conjugation")
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.2, 5.0);
    auto w = parse_system(kW17);
    auto a = build_special_form(w, std::vector<double>{1.7});
    for (int k = 0; k < 20; ++k) {
        Eigen::VectorXd d(6);
        for (int i = 0; i < 6; ++i) d(i) = u(rng);
        auto b = a.conjugate(d);
        CHECK(are_equivalent(a, b));
        auto sf = special_form_of(b);
        CHECK(sf.cycle_params.size() == 1);
        CHECK(sf.cycle_params[0].second == doctest::Approx(1.7).epsilon(1e-12));
        CHECK(sf.base(1, 2) == doctest::Approx(sf.base(2, 1)));
    }
    CHECK(are_equivalent(a, a));
    CHECK_FALSE(are_equivalent(a, build_special_form(w, std::vector<double>{1.8})));
}

TEST_CASE("type decomposition and rank")
{
    auto a2 = CartanMatrix(parse_system("nodes 1..2; 1-2"), gram_matrix(parse_system("nodes 1..2; 1-2")));
    auto t = type_decompose(a2);
    REQUIRE(t.components.size() == 1);
    CHECK(t.components[0].type == MatrixType::Positive);
    CHECK(t.components[0].smallest_eigenvalue == doctest::Approx(1.0));
    auto at = parse_system("nodes 1..3; 1-2; 2-3; 1-3");
    CHECK(type_decompose(CartanMatrix(at, gram_matrix(at))).all(MatrixType::Zero));
    auto w = parse_system(kW17);
    auto on = build_special_form(w, std::vector<double>{kLambdaG1});
    CHECK(type_decompose(on).all(MatrixType::Negative));
    CHECK(matrix_rank(on) == 5);
    CHECK(matrix_rank(build_special_form(w, std::vector<double>{3.0})) == 6);
    auto a1 = parse_system("nodes 1..2; 1-2:inf");
    CHECK(matrix_rank(CartanMatrix(a1, gram_matrix(a1))) == 1);
    auto split = type_decompose(CartanMatrix(parse_system("nodes 1..4; 1-2; 3-4:inf"), gram_matrix(parse_system("nodes 1..4; 1-2; 3-4:inf"))));
    CHECK(split.components.size() == 2);
    CHECK(split.any(MatrixType::Positive));
    CHECK(split.any(MatrixType::Zero));
}

TEST_CASE("symmetrize")
{
    auto sym = symmetrize(appendix_cartan(std::sqrt(1.5)));
    CHECK(sym.has_value());
    CHECK_FALSE(symmetrize(appendix_cartan(2.0)).has_value());
    auto w = parse_system(kW17);
    auto g = CartanMatrix(w, gram_matrix(w));
    auto d = symmetrize(g);
    REQUIRE(d.has_value());
    CHECK((*d - Eigen::VectorXd::Ones(6)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("loop reduction")
{
    auto r = loop_det_reduce({0.5, 0.5, 0.5});
    CHECK(r.d1 == doctest::Approx(0.0));
    CHECK(r.coefficient == doctest::Approx(0.125));
    auto z = loop_det_reduce({0.5, 0.5, 0.0});
    CHECK(z.d1 == doctest::Approx(0.5));
    CHECK(z.coefficient == 0.0);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0), l(0.1, 8.0);
    for (int n = 3; n <= 8; ++n)
        for (int k = 0; k < 20; ++k) {
            std::vector<double> c(static_cast<std::size_t>(n));
            for (auto& x : c) x = u(rng);
            const double lam = l(rng);
            auto red = loop_det_reduce(c);
            CHECK(loop_matrix(c, lam).determinant() == doctest::Approx(red.d1 - red.coefficient * (lam + 1 / lam - 2)).epsilon(1e-10));
        }
}

TEST_CASE("psi")
{
    CHECK(std::abs(psi_triple(M_PI / 3, M_PI / 3, M_PI / 3)) < 1e-15);
    CHECK(psi_triple(M_PI / 2, M_PI / 2, M_PI / 2) == doctest::Approx(1.0));
    CHECK(psi_triple(M_PI / 3, M_PI / 7, M_PI / 2) < 0);
    CHECK(psi_product_form(M_PI / 3, M_PI / 7, M_PI / 2) == doctest::Approx(psi_triple(M_PI / 3, M_PI / 7, M_PI / 2)));
}

TEST_CASE("json round trip is exact")
{
    auto a = build_special_form(parse_system(kW17), std::vector<double>{std::sqrt(2.0)});
    auto j = to_json(a);
    auto b = cartan_from_json(nlohmann::json::parse(j.dump()));
    CHECK(b.entries() == a.entries());
    CHECK(b.system() == a.system());
}
