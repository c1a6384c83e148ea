#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "coxpoly/cartan.hpp"
#include "coxpoly/polytope.hpp"

namespace coxpoly {

struct RealizedVertex {
    FacetMask facets = 0;
    Eigen::VectorXd position;  // unit vector with alpha_s(position) <= 0
};

// Forms alpha_s (rows of alpha) and poles b_s (rows of b) in R^{d+1};
// the polytope is the cone {alpha_s <= 0} seen in the sphere S^d.
struct Realization {
    int dim = 0;
    Eigen::MatrixXd alpha, b;
    CartanMatrix cartan;
    Eigen::VectorXd interior;
    std::vector<RealizedVertex> vertices;
    FaceLattice lattice;

    const std::vector<std::string>& facets() const { return cartan.system().generators(); }
    // alpha_s(b_t)
    Eigen::MatrixXd pairing() const { return alpha * b.transpose(); }
};

struct RealizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rank factorization A = alpha * b^T with alpha_s = e_i on the first independent rows.
Realization realize_cartan(const CartanMatrix& a);
// explicit forms and poles (rows); the Cartan matrix is their pairing
Realization realization_from(const CoxeterSystem& w, const Eigen::MatrixXd& alpha, const Eigen::MatrixXd& b);

struct TitsSimplex {
    Realization realization;
    Eigen::MatrixXd bilinear;  // B_W(b_s, b_t)
};
// the pairing alpha_s(b_t) as a Cartan matrix (rounding on commuting pairs cleared)
CartanMatrix cartan_of(const Realization& r);

TitsSimplex tits_simplex(const CoxeterSystem& w);

struct ReflectionSet {
    std::vector<Eigen::MatrixXd> matrices;
    double involution_error = 0;  // max |sigma^2 - Id|
    double det_error = 0;         // max |det sigma + 1|
    double relation_error = 0;    // max |(sigma_s sigma_t)^m - Id| over finite m
    double parabolic_trace_error = 0;  // order-infinity pairs: trace against n - 4 + a_st a_ts
};
ReflectionSet reflections_of(const Realization& r);

enum class VertexClass { Elliptic, Parabolic, Loxodromic };
std::string vertex_class_name(VertexClass c);

struct VertexInfo {
    FacetMask facets;
    Eigen::VectorXd position;
    CartanMatrix link;
    VertexClass cls;
};

struct VertexGeometry {
    std::vector<VertexInfo> vertices;
    bool perfect = false;
    bool quasi_perfect = false;
    std::size_t count(VertexClass c) const;
};
VertexGeometry classify_vertices(const Realization& r);

struct TruncationCertificate {
    bool truncatable = false;
    int span_dim = 0;  // linear dimension of span{b_s : s in S_v}
    std::vector<double> edge_parameters;
    Eigen::VectorXd support;  // covector of Pi_v when span_dim == d
};
TruncationCertificate truncatable(const Realization& r, FacetMask v);
// new facet id as in truncate_labeled
Realization truncate_geometric(const Realization& r, FacetMask v);

struct OrbitElement {
    std::vector<std::size_t> word;
    Eigen::MatrixXd matrix;
};

struct OrbitApproximation {
    std::vector<OrbitElement> elements;  // ShortLex order
    std::size_t pair_checks = 0;
    std::size_t overlap_violations = 0;
    std::vector<Eigen::VectorXd> hull_samples;  // chart coordinates of tile vertices
};
OrbitApproximation orbit_explore(const Realization& r, int max_length, int samples, std::uint64_t seed = 0);
// tiles as a triangle soup in an affine chart (d = 3, or the first three chart coordinates when d = 4)
void write_ply(std::ostream& out, const Realization& r, const OrbitApproximation& orbit);

bool is_hyperbolic(const Realization& r);
bool is_hyperbolic(const CartanMatrix& a);

using Membership = std::function<bool(const Eigen::VectorXd&)>;
// 1/2 log of the cross-ratio; throws RealizationError when the boundary cannot be located
double hilbert_distance(const Membership& inside, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

nlohmann::json to_json(const Realization& r);

}  // namespace coxpoly
