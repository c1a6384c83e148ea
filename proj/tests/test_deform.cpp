#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "coxpoly/deform.hpp"

using namespace coxpoly;

namespace {

// branch lambda > 1, computed with mpmath at 40 digits
constexpr double kG1m7 = 6.417553386585805790;
constexpr double kG1m8 = 3.862414967405364383;
constexpr double kG1m12 = 2.064708154286780520;
constexpr double kG2m7 = 13.90131821163576306;
constexpr double kG3m7mu2 = 1.752002879084197154;
constexpr double kBp3m7 = 7.972401967029386932;
constexpr double kCchainm7 = 9.517220656249948570;
constexpr double kDchainm7 = 11.05630589583648627;
constexpr double kEx2d5b = 3.248995448076237091;
constexpr double k8c5sq = 5.236067977499789696;

double upper(const DeformationSpace& s)
{
    double best = 0;
    for (const auto& w : s.witnesses) best = std::max(best, w[0]);
    return best;
}

}  // namespace

TEST_CASE("empty for small m, two dual points from m = 7")
{
    for (const char* id : {"G1", "G2"}) {
        const auto& f = family(id);
        for (int m = 3; m <= 6; ++m) CHECK(deformation_space(f, m).kind == SpaceKind::Empty);
        for (int m = 7; m <= 12; ++m) {
            auto s = deformation_space(f, m);
            REQUIRE(s.kind == SpaceKind::FinitePoints);
            REQUIRE(s.witnesses.size() == 2);
            CHECK(s.witnesses[0][0] * s.witnesses[1][0] == doctest::Approx(1.0).epsilon(1e-12));
            for (double d : s.witness_dets) CHECK(std::abs(d) < 1e-9);
        }
    }
}

TEST_CASE("frozen lambda values")
{
    CHECK(upper(deformation_space(family("G1"), 7)) == doctest::Approx(kG1m7).epsilon(1e-12));
    CHECK(upper(deformation_space(family("G1"), 8)) == doctest::Approx(kG1m8).epsilon(1e-12));
    CHECK(upper(deformation_space(family("G1"), 12)) == doctest::Approx(kG1m12).epsilon(1e-12));
    CHECK(upper(deformation_space(family("G2"), 7)) == doctest::Approx(kG2m7).epsilon(1e-12));
    CHECK(upper(deformation_space(family("B-p3"), 7)) == doctest::Approx(kBp3m7).epsilon(1e-12));
    CHECK(upper(deformation_space(family("C-chain"), 7)) == doctest::Approx(kCchainm7).epsilon(1e-12));
    CHECK(upper(deformation_space(family("D-chain"), 7)) == doctest::Approx(kDchainm7).epsilon(1e-12));
    CHECK(upper(deformation_space(family("ex2-d5b"))) == doctest::Approx(kEx2d5b).epsilon(1e-12));
    auto g3 = deformation_space(family("G3"), 7);
    auto ls = witnesses_at(g3.reduced, 2.0);
    REQUIRE(ls.size() == 2);
    CHECK(*std::max_element(ls.begin(), ls.end()) == doctest::Approx(kG3m7mu2).epsilon(1e-12));
}

TEST_CASE("the mixed family has curve branches")
{
    const auto& f = family("G3");
    auto s3 = deformation_space(f, 3);
    CHECK(s3.kind == SpaceKind::Curves);
    CHECK(s3.components == 4);
    for (int m = 4; m <= 12; ++m) {
        auto s = deformation_space(f, m);
        CHECK(s.kind == SpaceKind::Curves);
        CHECK(s.components == 2);
        for (double d : s.witness_dets) CHECK(std::abs(d) < 1e-9);
    }
}

TEST_CASE("the circle")
{
    auto s = circle_space(family("U"));
    CHECK(s.kind == SpaceKind::Circle);
    CHECK(s.reduced.b == doctest::Approx(k8c5sq).epsilon(1e-14));
    CHECK(std::abs((2 - s.reduced.ax) * (2 - s.reduced.ay) - s.reduced.b) >= 1.2);
    REQUIRE(s.x_range.has_value());
    CHECK(s.x_range->second == doctest::Approx(k8c5sq / 2));
    CHECK(s.witnesses.size() >= 64);
    // lambda = 1 gives mu + 1/mu = 8 c5^2 / 2
    const double y = k8c5sq / 2;
    const double mu = (y + std::sqrt(y * y - 4)) / 2;
    auto a = family_cartan(family("U"), kInf, {1.0, mu});
    CHECK(std::abs(a.entries().determinant()) < 1e-9);
    CHECK_THROWS_AS(circle_space(family("G1")), std::invalid_argument);
}

TEST_CASE("mu invariant")
{
    const auto& f = family("G3");
    auto a = family_cartan(f, 7, {1.3, 2.0});
    CHECK(mu_invariant(a) == doctest::Approx(2.0));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.3, 3.0);
    Eigen::VectorXd d(6);
    for (int i = 0; i < 6; ++i) d(i) = u(rng);
    CHECK(mu_invariant(a.conjugate(d)) == doctest::Approx(2.0));
    CHECK(mu_invariant(a.transpose()) == doctest::Approx(0.5));
}

TEST_CASE("limits")
{
    auto l1 = limit_family(family("G1"));
    CHECK(l1.decreasing);
    CHECK(l1.lambda_limit == doctest::Approx(1.0));
    CHECK(l1.limit(2, 3) == doctest::Approx(-1.0));
    CHECK(l1.limit(4, 5) == doctest::Approx(-2.0));
    CHECK(l1.extrapolation_error < 1e-7);
    auto l2 = limit_family(family("G2"));
    CHECK(l2.limit(2, 3) == doctest::Approx(-2 * std::cos(M_PI / 5)));
    auto l3 = limit_family(family("G3"), 1.0);
    CHECK((l3.limit.entries() - l3.limit.entries().transpose()).cwiseAbs().maxCoeff() < 1e-9);
    auto l3b = limit_family(family("G3"), 2.0);
    CHECK(l3b.limit(3, 5) == doctest::Approx(-0.5));
    CHECK(l3b.limit(5, 3) == doctest::Approx(-2.0));
    CHECK_THROWS(limit_family(family("G3")));
}

TEST_CASE("unsupported systems")
{
    auto w = parse_system("nodes 1..4; 1-2; 2-3; 3-4; 4-1; 1-3");
    CHECK_THROWS_AS(deformation_space(w, {"1", "2"}, {"3", "4"}), UnsupportedFamily);
}
