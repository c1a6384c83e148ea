#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "coxpoly/diagram.hpp"

namespace coxpoly {

inline constexpr double kTol = 1e-9;

using IndexSet = std::vector<std::size_t>;

/// Square real matrix realizing a Coxeter system.
class CartanMatrix {
public:
    CartanMatrix() = default;
    // Validates the realization constraints; throws std::invalid_argument.
    CartanMatrix(CoxeterSystem system, Eigen::MatrixXd entries, std::map<std::string, double> params = {});

    const CoxeterSystem& system() const { return system_; }
    const Eigen::MatrixXd& entries() const { return a_; }
    double operator()(std::size_t i, std::size_t j) const { return a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
    std::size_t size() const { return system_.rank(); }
    const std::map<std::string, double>& params() const { return params_; }

    CartanMatrix restrict_to(const IndexSet& idx) const;
    CartanMatrix transpose() const;
    // D * A * D^{-1} for a positive diagonal D
    CartanMatrix conjugate(const Eigen::VectorXd& d) const;

private:
    CoxeterSystem system_;
    Eigen::MatrixXd a_;
    std::map<std::string, double> params_;
};

struct Cycle {
    std::string id;                       // generator names joined by '-' in canonical orientation
    IndexSet nodes;                       // canonical orientation: smallest node first, then its smaller cycle neighbour
    std::pair<std::size_t, std::size_t> closing;  // the non-tree edge (u < v)
};

struct CycleBasis {
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;  // (parent, child)
    std::vector<std::size_t> root_of;                            // component root per node
    std::vector<Cycle> cycles;                                   // ordered by closing edge
};

// Depth-first spanning forest from the smallest node of each component,
// neighbours visited in increasing order; one fundamental cycle per non-tree edge.
CycleBasis cycle_basis(const CoxeterSystem& w);
std::size_t cycle_rank(const CoxeterSystem& w);

// Special form: symmetric -2cos(pi/m) on tree edges; on the closing edge (u<v)
// of cycle i, A_uv = -2cos(pi/m)/lambda_i and A_vu = -2cos(pi/m)*lambda_i.
// Order-infinity edges use the value 2 (product 4).
CartanMatrix build_special_form(const CoxeterSystem& w, const std::map<std::string, double>& params);
CartanMatrix build_special_form(const CoxeterSystem& w, const std::vector<double>& params);

struct SpecialForm {
    CartanMatrix base;
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
    std::vector<std::pair<std::string, double>> cycle_params;
    Eigen::VectorXd conjugator;  // base = D * A * D^{-1}
};

// Conjugate A by the unique positive diagonal making tree edges symmetric.
SpecialForm special_form_of(const CartanMatrix& a);

std::map<std::string, double> cyclic_products(const CartanMatrix& a);
std::map<std::string, double> reversed_cyclic_products(const CartanMatrix& a);
bool are_equivalent(const CartanMatrix& a, const CartanMatrix& b, double tol = kTol);

enum class MatrixType { Positive, Zero, Negative };
std::string type_name(MatrixType t);

struct TypeComponent {
    IndexSet indices;
    MatrixType type;
    double smallest_eigenvalue;
    bool catalog_checked = false;
};

struct TypeDecomposition {
    std::vector<TypeComponent> components;
    bool all(MatrixType t) const;
    bool any(MatrixType t) const;
    IndexSet indices_of(MatrixType t) const;
};

// components of the nonzero pattern of a (sub)matrix, indices relative to it
std::vector<IndexSet> matrix_components(const Eigen::MatrixXd& m);
TypeDecomposition type_decompose(const CartanMatrix& a, double tol = kTol);
TypeDecomposition type_decompose(const Eigen::MatrixXd& m, double tol = kTol);

int matrix_rank(const Eigen::MatrixXd& m, double rel_cutoff = kTol);
int matrix_rank(const CartanMatrix& a);

std::optional<Eigen::VectorXd> symmetrize(const CartanMatrix& a, double tol = kTol);

struct LoopReduction {
    double d1;           // det at lambda = 1
    double coefficient;  // product of the c_i
};

// det(M_lambda) = d1 - coefficient * (lambda + 1/lambda - 2)
LoopReduction loop_det_reduce(const std::vector<double>& c);
// cyclic matrix: 1 on the diagonal, -c_i on edge (i,i+1), corner (1,n) = -c_n/lambda, (n,1) = -c_n*lambda
Eigen::MatrixXd loop_matrix(const std::vector<double>& c, double lambda);

double psi_triple(double alpha, double beta, double gamma);
double psi_product_form(double alpha, double beta, double gamma);

nlohmann::json to_json(const CartanMatrix& a);
CartanMatrix cartan_from_json(const nlohmann::json& j);

Eigen::MatrixXd principal(const Eigen::MatrixXd& m, const IndexSet& idx);

}  // namespace coxpoly
