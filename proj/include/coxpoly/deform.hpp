#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coxpoly/cartan.hpp"
#include "coxpoly/families.hpp"
#include "coxpoly/polytope.hpp"

namespace coxpoly {

enum class SpaceKind { Empty, FinitePoints, Curves, Circle };
std::string space_kind_name(SpaceKind k);

struct UnsupportedFamily : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// det(A/2) = u * v - C with u = D1 - P1 (x - 2), v = E1 - P2 (y - 2),
// x = lambda + 1/lambda, y = mu + 1/mu, C = c^2 K1 K2 (c the bridge cosine,
// K the bridge-end cofactors). A side without a cycle has P = 0.
// Normal form when both P are nonzero: (x - Ax)(y - Ay) = B.
struct ReducedEquation {
    std::size_t cycles = 0;
    std::string bridge_left, bridge_right;
    double bridge_cos = 0;
    double d1 = 0, p1 = 0, e1 = 0, p2 = 0;
    double k1 = 0, k2 = 0, c = 0;
    double ax = 0, ay = 0, b = 0;
    std::vector<std::string> cycle_ids;  // first = lambda, second = mu
    bool left_has_cycle = false, right_has_cycle = false;
};

// one connected piece of {x, y >= 2 : u v = C}; see deformation_space
struct Branch {
    std::string shape;  // point, circle, line, lines
    std::size_t components = 0;  // connected components in (lambda, mu)
    double y_min = 2, y_max = 2;
    bool y_min_closed = true, y_max_closed = true;
    std::optional<double> fixed_x;  // vertical line u = 0
};

struct DeformationSpace {
    SpaceKind kind = SpaceKind::Empty;
    std::size_t components = 0;
    ReducedEquation reduced;
    std::vector<Branch> branches;
    std::vector<std::vector<double>> witnesses;  // (lambda) or (lambda, mu)
    std::vector<double> witness_dets;
    // closed-form bounds when the space is compact
    std::optional<std::pair<double, double>> x_range, y_range;
    std::map<std::string, double> checks;
    CoxeterSystem system;
};

// Reduction for a system split into two blocks joined by exactly one edge,
// each block with at most one cycle running through its bridge end.
ReducedEquation reduce(const CoxeterSystem& w, const std::vector<std::string>& left,
                       const std::vector<std::string>& right);

DeformationSpace deformation_space(const CoxeterSystem& w, const std::vector<std::string>& left,
                                   const std::vector<std::string>& right, int samples = 64);
DeformationSpace deformation_space(const Family& f, int m = kInf, int samples = 64);
// the circle example; throws std::invalid_argument when the space is not a circle
DeformationSpace circle_space(const Family& f);

// special-form parameters on the two-cycle space with the given mu (two lambdas, or one at lambda = 1)
std::vector<double> witnesses_at(const ReducedEquation& r, double mu);

// the special-form matrix of the family at the given parameters
CartanMatrix family_cartan(const Family& f, int m, const std::vector<double>& params);

double mu_invariant(const CartanMatrix& a);

struct LimitResult {
    std::vector<int> ms;
    std::vector<double> lambdas;  // branch lambda > 1
    bool decreasing = false;
    double x_limit = 2, lambda_limit = 1;
    double extrapolation_error = 0;  // |A_extrapolated - A(inf, lambda_limit)|
    CartanMatrix limit;
    std::vector<PredictedFace> predicted;
};

// mu is required for two-cycle families
LimitResult limit_family(const Family& f, std::optional<double> mu = std::nullopt, int big_m = 1000000);

nlohmann::json to_json(const DeformationSpace& s);

}  // namespace coxpoly
