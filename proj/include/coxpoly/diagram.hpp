#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace coxpoly {

// Coxeter order m_st. Infinity is a distinguished value, never a float.
inline constexpr int kInf = std::numeric_limits<int>::max();

inline bool is_inf(int m) { return m == kInf; }

// cos(pi/m) with cos(pi/inf) = 1 exactly.
double cos_pi_over(int m);
// sin(pi/m)^2 computed without cancellation; 0 for m = inf.
double sin2_pi_over(int m);

std::string order_to_string(int m);

class CoxeterSystem {
public:
    CoxeterSystem() = default;
    explicit CoxeterSystem(std::vector<std::string> generators);

    std::size_t rank() const { return gens_.size(); }
    const std::vector<std::string>& generators() const { return gens_; }
    const std::string& name(std::size_t i) const { return gens_.at(i); }

    int order(std::size_t i, std::size_t j) const { return orders_[i * gens_.size() + j]; }
    int order(const std::string& s, const std::string& t) const;
    void set_order(std::size_t i, std::size_t j, int m);

    std::size_t index_of(const std::string& s) const;
    std::optional<std::size_t> find(const std::string& s) const;

    // edge of the Coxeter graph iff m_st != 2
    bool adjacent(std::size_t i, std::size_t j) const { return i != j && order(i, j) != 2; }
    std::vector<std::size_t> neighbors(std::size_t i) const;
    std::size_t edge_count() const;

    bool operator==(const CoxeterSystem& o) const { return gens_ == o.gens_ && orders_ == o.orders_; }
    bool operator!=(const CoxeterSystem& o) const { return !(*this == o); }

private:
    std::vector<std::string> gens_;
    std::vector<int> orders_;
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int l, int c);
};

// Parsed DSL source; symbolic orders stay unresolved until bind().
class Diagram {
public:
    using OrderExpr = std::variant<int, std::string>;
    struct Edge {
        std::string a, b;
        OrderExpr order;
        int line = 0, column = 0;
    };

    std::vector<std::string> nodes;
    std::vector<Edge> edges;
    std::map<std::string, int> lets;

    // parameter names referenced by edges and not fixed by a let
    std::vector<std::string> free_parameters() const;
    CoxeterSystem bind(const std::map<std::string, int>& params = {}) const;
};

Diagram parse_diagram(std::string_view text);
CoxeterSystem parse_system(std::string_view text, const std::map<std::string, int>& params = {});
std::string serialize(const CoxeterSystem& w);

Eigen::MatrixXd gram_matrix(const CoxeterSystem& w);

CoxeterSystem subsystem(const CoxeterSystem& w, const std::vector<std::string>& names);
CoxeterSystem subsystem(const CoxeterSystem& w, const std::vector<std::size_t>& idx);

// connected components of the Coxeter graph as index lists, input order kept
std::vector<std::vector<std::size_t>> component_indices(const CoxeterSystem& w);
std::vector<CoxeterSystem> split_components(const CoxeterSystem& w);
bool is_irreducible(const CoxeterSystem& w);

enum class Kind { Spherical, Affine, Lanner, Large };
std::string kind_name(Kind k);

struct ClassificationLabel {
    Kind kind = Kind::Large;
    std::optional<std::string> catalog_name;
};

struct CatalogEntry {
    std::string name;
    Kind kind;
    CoxeterSystem system;
};

// All catalog diagrams of the given rank (parametric families are handled
// directly in catalog_match and are listed here only for ranks 2 and 3 at
// labels up to max_label).
std::vector<CatalogEntry> catalog(std::size_t rank, int max_label = 12);

std::optional<std::string> catalog_match(const CoxeterSystem& w);
std::optional<CatalogEntry> catalog_lookup(const CoxeterSystem& w);
ClassificationLabel classify_irreducible(const CoxeterSystem& w);

// Whole-system summaries built from the components.
bool is_spherical(const CoxeterSystem& w);
// every component irreducible affine (catalog)
bool is_affine(const CoxeterSystem& w);
std::string describe(const CoxeterSystem& w);

// Label-preserving bijections a -> b (index maps), up to `limit` of them.
std::vector<std::vector<std::size_t>> isomorphisms(const CoxeterSystem& a, const CoxeterSystem& b,
                                                   std::size_t limit = std::numeric_limits<std::size_t>::max());
bool isomorphic(const CoxeterSystem& a, const CoxeterSystem& b);

}  // namespace coxpoly
