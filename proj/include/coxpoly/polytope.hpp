#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "coxpoly/cartan.hpp"
#include "coxpoly/diagram.hpp"

namespace coxpoly {

// A face is recorded by the set of facets containing it (bit i = facet i).
using FacetMask = std::uint64_t;

struct Face {
    FacetMask facets;
    int dim;
    bool operator<(const Face& o) const { return dim != o.dim ? dim > o.dim : facets < o.facets; }
    bool operator==(const Face& o) const { return facets == o.facets && dim == o.dim; }
};

int popcount(FacetMask m);
FacetMask bit(std::size_t i);
std::vector<std::size_t> mask_indices(FacetMask m);

/// Proper nonempty faces of a convex polytope, keyed by facet sets.
class FaceLattice {
public:
    FaceLattice() = default;
    FaceLattice(int dim, std::vector<std::string> facet_ids, std::vector<Face> faces);

    int dim() const { return dim_; }
    const std::vector<std::string>& facets() const { return ids_; }
    std::size_t facet_count() const { return ids_.size(); }
    const std::vector<Face>& faces() const { return faces_; }

    std::size_t facet_index(const std::string& id) const;
    FacetMask mask_of(const std::vector<std::string>& ids) const;
    std::vector<std::string> names(FacetMask m) const;

    std::optional<int> dim_of(FacetMask m) const;
    bool has_face(FacetMask m) const { return dim_of(m).has_value(); }
    std::vector<Face> faces_of_dim(int k) const;
    std::vector<FacetMask> vertices() const;
    std::size_t count(int k) const { return faces_of_dim(k).size(); }
    std::vector<std::size_t> f_vector() const;
    long euler_characteristic() const;

    bool adjacent(std::size_t i, std::size_t j) const;
    // intersection of the facets in m, as the face with the largest dimension containing them
    std::optional<Face> intersection(FacetMask m) const;
    // faces containing the vertex v (facet sets inside S_v)
    std::vector<Face> faces_containing(FacetMask v) const;

    // vertex name "v" + ids (ids joined by ',' when some id is longer than one character)
    std::string vertex_name(FacetMask v) const;
    FacetMask find_vertex(const std::string& name_or_ids) const;

    // structural checks: closure under intersection and the Euler relation
    std::vector<std::string> validate() const;

    bool operator==(const FaceLattice& o) const { return dim_ == o.dim_ && ids_ == o.ids_ && faces_ == o.faces_; }

private:
    int dim_ = 0;
    std::vector<std::string> ids_;
    std::vector<Face> faces_;  // sorted
    std::map<FacetMask, int> index_;
};

FaceLattice simplex(int n, const std::string& prefix = "a");
FaceLattice simplex_product(int e, int f);
FaceLattice pyramid(const FaceLattice& q, const std::string& base_id = "base");
FaceLattice rename_facets(const FaceLattice& l, const std::map<std::string, std::string>& ren);
// the same lattice with facets listed in a new order
FaceLattice reorder_facets(const FaceLattice& l, const std::vector<std::string>& order);
// facet bijection l1 -> l2 (facet indices) if the lattices are combinatorially equal
std::optional<std::vector<std::size_t>> lattice_isomorphism(const FaceLattice& a, const FaceLattice& b);

using RidgeKey = std::pair<std::size_t, std::size_t>;

struct LabeledPolytope {
    FaceLattice lattice;
    std::map<RidgeKey, int> labels;  // keys (i, j) with i < j, ridges only

    int label(std::size_t i, std::size_t j) const;
    // generators = facets, ridge labels, order infinity between non-adjacent facets
    CoxeterSystem coxeter_system() const;
    bool operator==(const LabeledPolytope& o) const { return lattice == o.lattice && labels == o.labels; }
};

struct LabelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Facets are renamed to the generators they are assigned to.
LabeledPolytope label_polytope(const FaceLattice& l, const CoxeterSystem& w,
                               const std::map<std::string, std::string>& assignment);
// identity assignment when facet ids already are generator names
LabeledPolytope label_polytope(const FaceLattice& l, const CoxeterSystem& w);

LabeledPolytope vertex_link(const LabeledPolytope& g, FacetMask v);
bool is_simplex(const FaceLattice& l);

enum class VertexLabel { Spherical, Affine, Lanner, LargeOther };
std::string vertex_label_name(VertexLabel v);

struct PerfectnessReport {
    std::vector<std::pair<FacetMask, VertexLabel>> vertices;
    bool perfect = false;
    bool two_perfect = false;
    std::size_t count(VertexLabel v) const;
};

VertexLabel classify_vertex(const LabeledPolytope& g, FacetMask v);
PerfectnessReport perfectness_report(const LabeledPolytope& g);

struct DehnFillError : std::runtime_error {
    std::string link_group;
    DehnFillError(const std::string& msg, std::string group) : std::runtime_error(msg), link_group(std::move(group)) {}
};

struct PrismLink {
    std::size_t s, t;          // the order-infinity pair (prism ends)
    std::vector<std::size_t> cycle;  // the tilde-A_{d-2} facets
};

// Checks the Dehn-filling precondition at v; throws DehnFillError otherwise.
PrismLink prism_link(const LabeledPolytope& g, FacetMask v);
LabeledPolytope dehn_fill(const LabeledPolytope& g, FacetMask v, int m);
// inverse: collapse the ridge between facets s and t to a vertex
LabeledPolytope collapse_ridge(const LabeledPolytope& g, std::size_t s, std::size_t t);

LabeledPolytope truncate_labeled(const LabeledPolytope& g, const std::vector<FacetMask>& vs);
std::string truncation_facet_id(const FaceLattice& l, FacetMask v);

struct GlueResult {
    LabeledPolytope polytope;
    std::vector<std::string> left_facets;            // ids of the glued polytope coming from G1
    std::map<std::string, std::string> right_rename;  // G2 id -> glued id
    std::string left_cut, right_cut;                 // truncation facets that were identified
    FacetMask left_vertex = 0, right_vertex = 0;
};

// iso maps the facets of G1 at v1 to the facets of G2 at v2 (by id).
// Facets s and iso(s) meet the gluing facet at right angles on both sides
// and merge into one facet of the result.
GlueResult glue_labeled(const LabeledPolytope& g1, FacetMask v1, const LabeledPolytope& g2, FacetMask v2,
                        const std::map<std::string, std::string>& iso);
// all label-preserving isomorphisms between two simple vertex links
std::vector<std::map<std::string, std::string>> link_isomorphisms(const LabeledPolytope& g1, FacetMask v1,
                                                                   const LabeledPolytope& g2, FacetMask v2);
// recover both truncated pieces (G2's piece with its original ids)
std::pair<LabeledPolytope, LabeledPolytope> cut_glued(const GlueResult& r, const LabeledPolytope& g2);

struct PredictedFace {
    IndexSet facets;
    int dim;        // -1 when not determined
    std::string tag;  // spherical, zero-type, parabolic-vertex, closure
};

std::vector<PredictedFace> faces_from_cartan(const CartanMatrix& a, int d);

bool is_prismatic(const FaceLattice& l, FacetMask a);

nlohmann::json to_json(const FaceLattice& l);
nlohmann::json to_json(const LabeledPolytope& g);
LabeledPolytope labeled_from_json(const nlohmann::json& j);

}  // namespace coxpoly
