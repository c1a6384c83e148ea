#include "coxpoly/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace coxpoly {

namespace {

using Idx = Eigen::Index;

Idx ix(std::size_t i) { return static_cast<Idx>(i); }

double expected_product(int m) { return 4.0 * cos_pi_over(m) * cos_pi_over(m); }

}  // namespace

Eigen::MatrixXd principal(const Eigen::MatrixXd& m, const IndexSet& idx)
{
    Eigen::MatrixXd out(ix(idx.size()), ix(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) out(ix(a), ix(b)) = m(ix(idx[a]), ix(idx[b]));
    return out;
}

CartanMatrix::CartanMatrix(CoxeterSystem system, Eigen::MatrixXd entries, std::map<std::string, double> params)
    : system_(std::move(system)), a_(std::move(entries)), params_(std::move(params))
{
    const std::size_t n = system_.rank();
    if (a_.rows() != ix(n) || a_.cols() != ix(n)) throw std::invalid_argument("Cartan matrix size does not match system");
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(a_(ix(i), ix(i)) - 2.0) > kTol) throw std::invalid_argument("Cartan diagonal entry is not 2");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double x = a_(ix(i), ix(j)), y = a_(ix(j), ix(i));
            if (x > kTol) throw std::invalid_argument("positive off-diagonal Cartan entry");
            if ((x == 0.0) != (y == 0.0)) throw std::invalid_argument("Cartan zero pattern is not symmetric");
            const int m = system_.order(i, j);
            const double p = x * y, scale = std::max(1.0, std::abs(p));
            if (is_inf(m)) {
                if (p < 4.0 - kTol * scale)
                    throw std::invalid_argument("product below 4 on an order-infinity pair " + system_.name(i) + "," +
                                                system_.name(j));
            } else if (std::abs(p - expected_product(m)) > kTol * scale) {
                throw std::invalid_argument("product a_st*a_ts does not realize m=" + std::to_string(m) + " on " +
                                            system_.name(i) + "," + system_.name(j));
            }
        }
    }
}

CartanMatrix CartanMatrix::restrict_to(const IndexSet& idx) const
{
    return CartanMatrix(subsystem(system_, idx), principal(a_, idx), params_);
}

CartanMatrix CartanMatrix::transpose() const { return CartanMatrix(system_, a_.transpose(), params_); }

CartanMatrix CartanMatrix::conjugate(const Eigen::VectorXd& d) const
{
    Eigen::MatrixXd b = a_;
    for (Idx i = 0; i < b.rows(); ++i)
        for (Idx j = 0; j < b.cols(); ++j) b(i, j) = d(i) * a_(i, j) / d(j);
    for (Idx i = 0; i < b.rows(); ++i) b(i, i) = 2.0;
    return CartanMatrix(system_, b, params_);
}

// ---------------------------------------------------------------- cycles

CycleBasis cycle_basis(const CoxeterSystem& w)
{
    const std::size_t n = w.rank();
    CycleBasis out;
    out.root_of.assign(n, n);
    std::vector<std::size_t> parent(n, n), depth(n, 0);
    std::vector<bool> tree_edge(n * n, false);

    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t root) {
        out.root_of[v] = root;
        for (auto u : w.neighbors(v)) {
            if (out.root_of[u] != n) continue;
            parent[u] = v;
            depth[u] = depth[v] + 1;
            tree_edge[v * n + u] = tree_edge[u * n + v] = true;
            out.tree_edges.emplace_back(v, u);
            dfs(u, root);
        }
    };
    for (std::size_t s = 0; s < n; ++s)
        if (out.root_of[s] == n) dfs(s, s);

    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            if (!w.adjacent(u, v) || tree_edge[u * n + v]) continue;
            // tree path u .. lca .. v, closed by the edge v-u
            std::vector<std::size_t> left{u}, right{v};
            std::size_t a = u, b = v;
            while (depth[a] > depth[b]) left.push_back(a = parent[a]);
            while (depth[b] > depth[a]) right.push_back(b = parent[b]);
            while (a != b) {
                left.push_back(a = parent[a]);
                right.push_back(b = parent[b]);
            }
            right.pop_back();
            std::vector<std::size_t> ring = left;
            ring.insert(ring.end(), right.rbegin(), right.rend());
            // canonical orientation
            auto mpos = static_cast<std::size_t>(std::min_element(ring.begin(), ring.end()) - ring.begin());
            std::rotate(ring.begin(), ring.begin() + static_cast<long>(mpos), ring.end());
            if (ring.size() > 2 && ring.back() < ring[1]) std::reverse(ring.begin() + 1, ring.end());
            Cycle c;
            c.nodes = ring;
            c.closing = {u, v};
            for (std::size_t k = 0; k < ring.size(); ++k) c.id += (k ? "-" : "") + w.name(ring[k]);
            out.cycles.push_back(std::move(c));
        }
    return out;
}

std::size_t cycle_rank(const CoxeterSystem& w) { return cycle_basis(w).cycles.size(); }

CartanMatrix build_special_form(const CoxeterSystem& w, const std::vector<double>& params)
{
    auto basis = cycle_basis(w);
    if (params.size() != basis.cycles.size())
        throw std::invalid_argument("special form needs " + std::to_string(basis.cycles.size()) + " cycle parameters");
    Eigen::MatrixXd a = gram_matrix(w);
    std::map<std::string, double> named;
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double lam = params[k];
        if (!(lam > 0.0) || !std::isfinite(lam)) throw std::invalid_argument("cycle parameters must be positive");
        auto [u, v] = basis.cycles[k].closing;
        const double c2 = 2.0 * cos_pi_over(w.order(u, v));
        a(ix(u), ix(v)) = -c2 / lam;
        a(ix(v), ix(u)) = -c2 * lam;
        named[basis.cycles[k].id] = lam;
    }
    return CartanMatrix(w, a, named);
}

CartanMatrix build_special_form(const CoxeterSystem& w, const std::map<std::string, double>& params)
{
    auto basis = cycle_basis(w);
    std::vector<double> v;
    for (const auto& c : basis.cycles) {
        auto it = params.find(c.id);
        if (it == params.end()) throw std::invalid_argument("missing parameter for cycle " + c.id);
        v.push_back(it->second);
    }
    for (const auto& [k, _] : params)
        if (std::none_of(basis.cycles.begin(), basis.cycles.end(), [&](const Cycle& c) { return c.id == k; }))
            throw std::invalid_argument("no cycle named " + k);
    return build_special_form(w, v);
}

namespace {

Eigen::VectorXd tree_conjugator(const CartanMatrix& a, const CycleBasis& basis)
{
    Eigen::VectorXd d = Eigen::VectorXd::Ones(ix(a.size()));
    // tree edges are listed in DFS order, so parents are set before children
    for (auto [p, c] : basis.tree_edges) d(ix(c)) = d(ix(p)) * std::sqrt(a(p, c) / a(c, p));
    return d;
}

double cycle_product(const CartanMatrix& a, const IndexSet& ring, bool reversed)
{
    double prod = 1.0;
    const std::size_t k = ring.size();
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t s = ring[i], t = ring[(i + 1) % k];
        prod *= reversed ? a(t, s) : a(s, t);
    }
    return prod;
}

bool close(double x, double y, double tol) { return std::abs(x - y) <= tol * std::max(1.0, std::max(std::abs(x), std::abs(y))); }

}  // namespace

SpecialForm special_form_of(const CartanMatrix& a)
{
    auto basis = cycle_basis(a.system());
    SpecialForm sf;
    sf.conjugator = tree_conjugator(a, basis);
    sf.base = a.conjugate(sf.conjugator);
    sf.tree_edges = basis.tree_edges;
    for (const auto& c : basis.cycles) {
        auto [u, v] = c.closing;
        sf.cycle_params.emplace_back(c.id, std::sqrt(sf.base(v, u) / sf.base(u, v)));
    }
    return sf;
}

std::map<std::string, double> cyclic_products(const CartanMatrix& a)
{
    std::map<std::string, double> out;
    for (const auto& c : cycle_basis(a.system()).cycles) out[c.id] = cycle_product(a, c.nodes, false);
    return out;
}

std::map<std::string, double> reversed_cyclic_products(const CartanMatrix& a)
{
    std::map<std::string, double> out;
    for (const auto& c : cycle_basis(a.system()).cycles) out[c.id] = cycle_product(a, c.nodes, true);
    return out;
}

bool are_equivalent(const CartanMatrix& a, const CartanMatrix& b, double tol)
{
    if (a.system() != b.system()) throw std::invalid_argument("are_equivalent needs matrices over the same system");
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if ((a(i, j) == 0.0) != (b(i, j) == 0.0)) return false;
            // length-2 cycles carry the order-infinity freedom
            if (i < j && !close(a(i, j) * a(j, i), b(i, j) * b(j, i), tol)) return false;
        }
    auto basis = cycle_basis(a.system());
    for (const auto& c : basis.cycles)
        for (bool rev : {false, true})
            if (!close(cycle_product(a, c.nodes, rev), cycle_product(b, c.nodes, rev), tol)) return false;
    return true;
}

// ---------------------------------------------------------------- types

std::string type_name(MatrixType t)
{
    switch (t) {
    case MatrixType::Positive: return "Positive";
    case MatrixType::Zero: return "Zero";
    case MatrixType::Negative: return "Negative";
    }
    return "?";
}

bool TypeDecomposition::all(MatrixType t) const
{
    return std::all_of(components.begin(), components.end(), [&](const TypeComponent& c) { return c.type == t; });
}

bool TypeDecomposition::any(MatrixType t) const
{
    return std::any_of(components.begin(), components.end(), [&](const TypeComponent& c) { return c.type == t; });
}

IndexSet TypeDecomposition::indices_of(MatrixType t) const
{
    IndexSet out;
    for (const auto& c : components)
        if (c.type == t) out.insert(out.end(), c.indices.begin(), c.indices.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IndexSet> matrix_components(const Eigen::MatrixXd& m)
{
    const std::size_t n = static_cast<std::size_t>(m.rows());
    std::vector<int> comp(n, -1);
    std::vector<IndexSet> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        IndexSet members, stack{s};
        comp[s] = static_cast<int>(out.size());
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (std::size_t u = 0; u < n; ++u)
                if (u != v && comp[u] < 0 && (m(ix(v), ix(u)) != 0.0 || m(ix(u), ix(v)) != 0.0)) {
                    comp[u] = comp[s];
                    stack.push_back(u);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(members);
    }
    return out;
}

namespace {

// 2 - (Perron root of 2I - A): the smallest real eigenvalue of an irreducible block
double smallest_real_eigenvalue(const Eigen::MatrixXd& block)
{
    if (block.rows() == 1) return block(0, 0);
    Eigen::MatrixXd nmat = 2.0 * Eigen::MatrixXd::Identity(block.rows(), block.cols()) - block;
    Eigen::EigenSolver<Eigen::MatrixXd> es(nmat, false);
    double rho = 0.0;
    for (Idx k = 0; k < es.eigenvalues().size(); ++k) rho = std::max(rho, std::abs(es.eigenvalues()(k)));
    return 2.0 - rho;
}

MatrixType sign_type(double ev, double tol)
{
    if (ev > tol) return MatrixType::Positive;
    if (ev < -tol) return MatrixType::Negative;
    return MatrixType::Zero;
}

}  // namespace

TypeDecomposition type_decompose(const Eigen::MatrixXd& m, double tol)
{
    TypeDecomposition out;
    for (auto& c : matrix_components(m)) {
        double ev = smallest_real_eigenvalue(principal(m, c));
        out.components.push_back({c, sign_type(ev, tol), ev, false});
    }
    return out;
}

TypeDecomposition type_decompose(const CartanMatrix& a, double tol)
{
    TypeDecomposition out = type_decompose(a.entries(), tol);
    for (auto& c : out.components) {
        if (c.type != MatrixType::Zero) continue;
        CartanMatrix sub = a.restrict_to(c.indices);
        if (!symmetrize(sub, tol)) continue;
        bool gram_like = true;
        for (std::size_t i = 0; i < sub.size(); ++i)
            for (std::size_t j = i + 1; j < sub.size(); ++j)
                if (is_inf(sub.system().order(i, j)) && std::abs(sub(i, j) * sub(j, i) - 4.0) > tol) gram_like = false;
        if (!gram_like) continue;
        // the symmetrized block is Cos(W_T): its type is decided by the catalog
        auto label = classify_irreducible(sub.system());
        c.catalog_checked = true;
        if (label.kind == Kind::Spherical) c.type = MatrixType::Positive;
        else if (label.kind != Kind::Affine) c.type = MatrixType::Negative;
    }
    return out;
}

int matrix_rank(const Eigen::MatrixXd& m, double rel_cutoff)
{
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (Idx k = 0; k < s.size(); ++k)
        if (s(k) > rel_cutoff * s(0)) ++r;
    return r;
}

int matrix_rank(const CartanMatrix& a) { return matrix_rank(a.entries()); }

std::optional<Eigen::VectorXd> symmetrize(const CartanMatrix& a, double tol)
{
    auto basis = cycle_basis(a.system());
    for (const auto& c : basis.cycles)
        if (!close(cycle_product(a, c.nodes, false), cycle_product(a, c.nodes, true), tol)) return std::nullopt;
    Eigen::VectorXd d = tree_conjugator(a, basis);
    CartanMatrix s = a.conjugate(d);
    const double asym = (s.entries() - s.entries().transpose()).cwiseAbs().maxCoeff();
    if (asym > tol * std::max(1.0, s.entries().cwiseAbs().maxCoeff())) return std::nullopt;
    return d;
}

// ---------------------------------------------------------------- loop reduction

Eigen::MatrixXd loop_matrix(const std::vector<double>& c, double lambda)
{
    const Idx n = static_cast<Idx>(c.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (Idx i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = -c[static_cast<std::size_t>(i)];
    m(0, n - 1) = -c.back() / lambda;
    m(n - 1, 0) = -c.back() * lambda;
    return m;
}

LoopReduction loop_det_reduce(const std::vector<double>& c)
{
    if (c.size() < 3) throw std::invalid_argument("loop reduction needs at least 3 couplings");
    double prod = 1.0;
    for (double x : c) prod *= x;
    return {loop_matrix(c, 1.0).determinant(), prod};
}

double psi_triple(double a, double b, double g)
{
    const double ca = std::cos(a), cb = std::cos(b), cg = std::cos(g);
    return 1.0 - ca * ca - cb * cb - cg * cg - 2.0 * ca * cb * cg;
}

double psi_product_form(double a, double b, double g)
{
    return -4.0 * std::cos((a + b + g) / 2) * std::cos((-a + b + g) / 2) * std::cos((a - b + g) / 2) *
           std::cos((a + b - g) / 2);
}

// ---------------------------------------------------------------- json

nlohmann::json to_json(const CartanMatrix& a)
{
    nlohmann::json rows = nlohmann::json::array();
    for (Idx i = 0; i < a.entries().rows(); ++i) {
        nlohmann::json r = nlohmann::json::array();
        for (Idx j = 0; j < a.entries().cols(); ++j) r.push_back(a.entries()(i, j));
        rows.push_back(r);
    }
    return {{"system", serialize(a.system())}, {"entries", rows}, {"params", a.params()}};
}

CartanMatrix cartan_from_json(const nlohmann::json& j)
{
    CoxeterSystem w = parse_system(j.at("system").get<std::string>());
    const auto& rows = j.at("entries");
    const Idx n = static_cast<Idx>(w.rank());
    if (static_cast<Idx>(rows.size()) != n) throw std::invalid_argument("entries size mismatch");
    Eigen::MatrixXd m(n, n);
    for (Idx i = 0; i < n; ++i)
        for (Idx k = 0; k < n; ++k) m(i, k) = rows.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>();
    std::map<std::string, double> params;
    if (j.contains("params")) params = j.at("params").get<std::map<std::string, double>>();
    return CartanMatrix(w, m, params);
}

}  // namespace coxpoly
