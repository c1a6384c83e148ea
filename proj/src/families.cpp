#include "coxpoly/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace coxpoly {

namespace {

std::string n(int i) { return std::to_string(i); }

std::vector<std::string> range(int a, int b)
{
    std::vector<std::string> out;
    for (int i = a; i <= b; ++i) out.push_back(n(i));
    return out;
}

std::string edge(int a, int b, const std::string& label = "3")
{
    return n(a) + "-" + n(b) + (label == "3" ? "" : ":" + label);
}

std::string join(const std::vector<std::string>& stmts)
{
    std::string out;
    for (const auto& s : stmts) out += (out.empty() ? "" : "; ") + s;
    return out;
}

// loop 1..len with the given label on edge (i, i+1), index 0 = edge 1-2, last = closing edge
std::vector<std::string> loop_edges(int len, const std::vector<std::string>& labels = {})
{
    std::vector<std::string> out;
    for (int i = 1; i <= len; ++i) {
        const std::string l = static_cast<std::size_t>(i - 1) < labels.size() ? labels[static_cast<std::size_t>(i - 1)] : "3";
        out.push_back(edge(i, i == len ? 1 : i + 1, l));
    }
    return out;
}

// loop 1..d-1, hub d, then d+1, d+2 with the m-edge between them
Family dehn_family(std::string id, std::string table, std::string title, int d, int j, int k, int l)
{
    const int len = d - 1, hub = d, p = d + 1, q = d + 2;
    std::vector<std::string> st{"nodes 1.." + n(q)};
    for (auto& e : loop_edges(len)) st.push_back(e);
    st.push_back(edge(len, hub, n(j)));
    st.push_back(edge(hub, p, n(k)));
    st.push_back(edge(p, q, "m"));
    if (l) st.push_back(edge(hub, q, n(l)));
    Family f;
    f.id = std::move(id);
    f.table = std::move(table);
    f.title = std::move(title);
    f.dsl = join(st);
    f.dim = d;
    f.has_m = true;
    f.left = range(1, len);
    f.right = range(hub, q);
    f.m_edge = {n(p), n(q)};
    f.hub = n(hub);
    return f;
}

Family fixed_family(std::string id, std::string table, std::string title, int d, std::vector<std::string> edges, int left_size)
{
    Family f;
    f.id = std::move(id);
    f.table = std::move(table);
    f.title = std::move(title);
    edges.insert(edges.begin(), "nodes 1.." + n(d + 2));
    f.dsl = join(edges);
    f.dim = d;
    f.left = range(1, left_size);
    f.right = range(left_size + 1, d + 2);
    return f;
}

std::vector<std::string> triangle_after(int first)
{
    return {edge(first, first + 1), edge(first + 1, first + 2), edge(first, first + 2)};
}

std::vector<Family> build()
{
    std::vector<Family> out;
    out.push_back(dehn_family("G1", "cox_gp", "W1_m", 4, 3, 3, 0));
    out.push_back(dehn_family("G2", "cox_gp", "W2_m", 4, 5, 3, 0));
    out.push_back(dehn_family("G3", "cox_gp", "W3_m", 4, 3, 3, 3));

    for (int k : {3, 4, 5}) out.push_back(dehn_family("A-k" + n(k), "ex1A", "triangle, k = " + n(k), 4, 3, k, 0));
    for (int k : {3, 4, 5})
        for (int l = 3; l <= k; ++l)
            out.push_back(dehn_family("A-k" + n(k) + "-l" + n(l), "ex1A", "two triangles, k = " + n(k) + ", l = " + n(l), 4, 3, k, l));
    for (int j : {4, 5}) out.push_back(dehn_family("A-j" + n(j), "ex1A", "triangle, j = " + n(j), 4, j, 3, 0));
    for (int j : {4, 5}) out.push_back(dehn_family("A-j" + n(j) + "-tri", "ex1A", "two triangles, j = " + n(j), 4, j, 3, 3));

    for (int p : {3, 4, 5}) out.push_back(dehn_family("B-p" + n(p), "ex1B", "square, p = " + n(p), 5, 3, p, 0));
    for (int p : {3, 4, 5})
        for (int q = 3; q <= p; ++q)
            out.push_back(dehn_family("B-p" + n(p) + "-q" + n(q), "ex1B", "square and triangle, p = " + n(p) + ", q = " + n(q), 5, 3, p, q));

    out.push_back(dehn_family("C-chain", "ex1C", "pentagon", 6, 3, 3, 0));
    out.push_back(dehn_family("C-tri", "ex1C", "pentagon and triangle", 6, 3, 3, 3));
    out.push_back(dehn_family("D-chain", "ex1D", "hexagon", 7, 3, 3, 0));
    out.push_back(dehn_family("D-tri", "ex1D", "hexagon and triangle", 7, 3, 3, 3));

    auto with_triangle = [](std::vector<std::string> e, int bridge_from) {
        e.push_back(edge(bridge_from, bridge_from + 1));
        for (auto& t : triangle_after(bridge_from + 1)) e.push_back(t);
        return e;
    };
    for (int k : {4, 5})
        out.push_back(fixed_family("ex2-d5a-k" + n(k), "ex2", "square with one " + n(k) + " and a triangle", 5,
                                   with_triangle(loop_edges(4, {n(k)}), 4), 4));
    out.push_back(fixed_family("ex2-d5b", "ex2", "chain 3,5,3 and a triangle", 5,
                               with_triangle({edge(1, 2), edge(2, 3, "5"), edge(3, 4)}, 4), 4));
    out.push_back(fixed_family("ex2-d5c", "ex2", "fork with a 5 and a triangle", 5,
                               with_triangle({edge(1, 3), edge(2, 3, "5"), edge(3, 4)}, 4), 4));
    out.push_back(fixed_family("ex2-d6a", "ex2", "pentagon with one 4 and a triangle", 6,
                               with_triangle(loop_edges(5, {"3", "4"}), 5), 5));
    out.push_back(fixed_family("ex2-d6b", "ex2", "chain 5,3,3,3 and a triangle", 6,
                               with_triangle({edge(1, 2, "5"), edge(2, 3), edge(3, 4), edge(4, 5)}, 5), 5));
    {
        auto e = loop_edges(4);
        for (auto s : {edge(4, 5), edge(5, 6), edge(6, 7), edge(7, 8), edge(8, 9, "5")}) e.push_back(s);
        out.push_back(fixed_family("ex2-d7", "ex2", "square and chain 3,3,3,5", 7, e, 4));
    }
    {
        auto e = loop_edges(5);
        for (auto s : {edge(5, 6), edge(6, 7), edge(7, 8), edge(8, 9), edge(9, 10, "5")}) e.push_back(s);
        out.push_back(fixed_family("ex2-d8", "ex2", "pentagon and chain 3,3,3,5", 8, e, 5));
    }
    out.push_back(fixed_family("mix-d5", "mix", "square and triangle", 5, with_triangle(loop_edges(4), 4), 4));
    out.push_back(fixed_family("mix-d6", "mix", "pentagon and triangle", 6, with_triangle(loop_edges(5), 5), 5));

    out.push_back(fixed_family("U", "uv", "circle example", 4,
                               {edge(1, 2, "4"), edge(2, 3), edge(1, 3), edge(3, 4, "5"), edge(4, 5), edge(5, 6, "4"), edge(4, 6)}, 3));
    out.push_back(fixed_family("V", "uv", "companion with a tilde C_3 link", 4,
                               {edge(1, 2), edge(2, 3, "4"), edge(1, 3), edge(3, 4), edge(4, 5, "4"), edge(5, 6), edge(4, 6)}, 3));
    return out;
}

}  // namespace

const std::vector<Family>& all_families()
{
    static const std::vector<Family> fams = build();
    return fams;
}

std::vector<Family> families_in(const std::string& table)
{
    std::vector<Family> out;
    for (const auto& f : all_families())
        if (f.table == table) out.push_back(f);
    return out;
}

std::vector<std::string> table_ids() { return {"cox_gp", "ex1A", "ex1B", "ex1C", "ex1D", "ex2", "mix", "uv"}; }

const Family& family(const std::string& id)
{
    for (const auto& f : all_families())
        if (f.id == id) return f;
    throw std::out_of_range("unknown family '" + id + "'");
}

CoxeterSystem family_system(const Family& f, int m)
{
    if (!f.has_m) return parse_system(f.dsl);
    return parse_system(f.dsl, {{"m", m}});
}

FaceLattice family_lattice(const Family& f, int m)
{
    const int e = static_cast<int>(f.left.size()) - 1, g = static_cast<int>(f.right.size()) - 1;
    CoxeterSystem w = family_system(f, m);
    if (!f.has_m || !is_inf(m)) {
        std::map<std::string, std::string> ren;
        for (int i = 0; i <= e; ++i) ren["a" + n(i + 1)] = f.left[static_cast<std::size_t>(i)];
        for (int i = 0; i <= g; ++i) ren["b" + n(i + 1)] = f.right[static_cast<std::size_t>(i)];
        return reorder_facets(rename_facets(simplex_product(e, g), ren), w.generators());
    }
    std::map<std::string, std::string> ren{{"a1", f.m_edge.first}, {"a2", f.m_edge.second}};
    for (int i = 0; i <= e; ++i) ren["b" + n(i + 1)] = f.left[static_cast<std::size_t>(i)];
    FaceLattice prism = rename_facets(simplex_product(1, e), ren);
    return reorder_facets(pyramid(prism, f.hub), w.generators());
}

LabeledPolytope family_polytope(const Family& f, int m) { return label_polytope(family_lattice(f, m), family_system(f, m)); }

FacetMask cusp_vertex(const Family& f)
{
    if (!f.has_m) throw std::invalid_argument("family " + f.id + " has no cusp");
    FaceLattice l = family_lattice(f, kInf);
    std::vector<std::string> apex = f.left;
    apex.push_back(f.m_edge.first);
    apex.push_back(f.m_edge.second);
    return l.mask_of(apex);
}

CoxeterSystem appendix_system() { return parse_system("nodes 1..5; 1-2; 2-3:inf; 3-4; 4-5:inf; 1-5"); }

Eigen::MatrixXd appendix_alpha(double l)
{
    Eigen::MatrixXd a(5, 4);
    a << 1, 0, 0, 0,
         0, 1, 0, 0,
         0, 0, 1, 0,
         0, 0, 0, 1,
         0, 1, 1 / l, -2 * (l * l - 1) / l;
    return a;
}

Eigen::MatrixXd appendix_b(double l)
{
    Eigen::MatrixXd b(5, 4);
    b << 2, -1, 0, 0,
         -1, 2, -2 * l, 0,
         0, -2 * l, 2, -1,
         0, 0, -1, 2,
         -1, 0, 0, -l / (l * l - 1);
    return b;
}

CartanMatrix appendix_cartan(double lambda)
{
    if (!(lambda > 1)) throw std::invalid_argument("the pyramid needs lambda > 1");
    const CoxeterSystem w = appendix_system();
    Eigen::MatrixXd a = appendix_alpha(lambda) * appendix_b(lambda).transpose();
    // alpha_5(b_3) cancels only up to rounding
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (i != j && w.order(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) == 2 && std::abs(a(i, j)) < 1e-12) a(i, j) = 0;
    return CartanMatrix(w, a, {{"lambda", lambda}});
}

LabeledPolytope appendix_polytope()
{
    // lateral facets 2,3,4,5 around the apex; 2|3 and 4|5 are opposite
    FaceLattice sq = rename_facets(simplex_product(1, 1), {{"a1", "2"}, {"a2", "3"}, {"b1", "4"}, {"b2", "5"}});
    CoxeterSystem w = appendix_system();
    return label_polytope(reorder_facets(pyramid(sq, "1"), w.generators()), w);
}

}  // namespace coxpoly
