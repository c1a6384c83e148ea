#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coxpoly/cartan.hpp"
#include "coxpoly/diagram.hpp"
#include "coxpoly/polytope.hpp"

namespace coxpoly {

// A labeled d-polytope with d+2 facets built from two diagram blocks joined by
// one bridge edge. Finite m: Delta_{|L|-1} x Delta_{|R|-1}. When the family has
// a parameter m, m = inf gives Pyr(Delta_1 x Delta_{d-2}) with the m-edge as the
// segment ends, the left block as the simplex factor and `hub` as the base.
struct Family {
    std::string id;
    std::string table;
    std::string title;
    std::string dsl;  // may use the symbol m
    int dim = 0;
    bool has_m = false;
    std::vector<std::string> left, right;
    std::pair<std::string, std::string> m_edge;
    std::string hub;
};

const std::vector<Family>& all_families();
std::vector<Family> families_in(const std::string& table);
std::vector<std::string> table_ids();
// throws std::out_of_range for unknown ids
const Family& family(const std::string& id);

CoxeterSystem family_system(const Family& f, int m = kInf);
FaceLattice family_lattice(const Family& f, int m = kInf);
LabeledPolytope family_polytope(const Family& f, int m = kInf);

// vertex of the m = inf polytope where the filling happens
FacetMask cusp_vertex(const Family& f);

// The 3-dimensional pyramid over a quadrilateral with a loxodromic apex.
CoxeterSystem appendix_system();
Eigen::MatrixXd appendix_alpha(double lambda);
Eigen::MatrixXd appendix_b(double lambda);
CartanMatrix appendix_cartan(double lambda);
LabeledPolytope appendix_polytope();

}  // namespace coxpoly
