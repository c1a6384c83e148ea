#include "coxpoly/realize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

namespace coxpoly {

namespace {

using Idx = Eigen::Index;
constexpr double kZero = 1e-8;

Idx ix(std::size_t i) { return static_cast<Idx>(i); }

Eigen::MatrixXd rows_of(const Eigen::MatrixXd& m, const IndexSet& idx)
{
    Eigen::MatrixXd out(ix(idx.size()), m.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) out.row(ix(i)) = m.row(ix(idx[i]));
    return out;
}

// one-dimensional kernel of a (rank cols-1) matrix, unit length
Eigen::VectorXd kernel_vector(const Eigen::MatrixXd& m)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    Eigen::VectorXd v = svd.matrixV().col(m.cols() - 1);
    return v.normalized();
}

// Perron vector of 2I - A (A irreducible with nonpositive off-diagonal entries)
std::optional<std::pair<Eigen::VectorXd, double>> perron(const Eigen::MatrixXd& a)
{
    const Idx n = a.rows();
    Eigen::MatrixXd m = 2.0 * Eigen::MatrixXd::Identity(n, n) - a;
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) return std::nullopt;
    Idx best = 0;
    for (Idx i = 1; i < n; ++i)
        if (es.eigenvalues()(i).real() > es.eigenvalues()(best).real()) best = i;
    Eigen::VectorXd w = es.eigenvectors().col(best).real();
    if (w.sum() < 0) w = -w;
    if (w.minCoeff() <= 0) return std::nullopt;
    return std::make_pair(w, es.eigenvalues()(best).real());
}

Eigen::VectorXd interior_witness(const Eigen::MatrixXd& alpha, const Eigen::MatrixXd& b, const Eigen::MatrixXd& a)
{
    auto ok = [&](const Eigen::VectorXd& v) { return (alpha * v).maxCoeff() < -kZero * v.norm(); };
    if (auto p = perron(a)) {
        Eigen::VectorXd v = b.transpose() * p->first;
        if (p->second < 2.0) v = -v;
        if (ok(v)) return v.normalized();
    }
    Eigen::VectorXd v = alpha.completeOrthogonalDecomposition().solve(-Eigen::VectorXd::Ones(alpha.rows()));
    if (ok(v)) return v.normalized();
    throw RealizationError("no interior point found for the cone alpha <= 0");
}

std::vector<RealizedVertex> enumerate_vertices(const Eigen::MatrixXd& alpha, int d)
{
    const std::size_t n = static_cast<std::size_t>(alpha.rows());
    Eigen::MatrixXd an = alpha;
    for (Idx i = 0; i < an.rows(); ++i) an.row(i).normalize();
    std::map<FacetMask, RealizedVertex> found;
    std::vector<std::size_t> pick(static_cast<std::size_t>(d));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        Eigen::MatrixXd m = rows_of(an, pick);
        if (matrix_rank(m) == d) {
            Eigen::VectorXd p = kernel_vector(m);
            Eigen::VectorXd vals = an * p;
            if (vals.maxCoeff() > kZero) {
                p = -p;
                vals = -vals;
            }
            if (vals.maxCoeff() <= kZero) {
                FacetMask mask = 0;
                for (std::size_t s = 0; s < n; ++s)
                    if (std::abs(vals(ix(s))) <= kZero) mask |= bit(s);
                found.emplace(mask, RealizedVertex{mask, p});
            }
        }
        int k = d - 1;
        while (k >= 0 && pick[static_cast<std::size_t>(k)] == n - static_cast<std::size_t>(d - k)) --k;
        if (k < 0) break;
        ++pick[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < d; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    std::vector<RealizedVertex> out;
    for (auto& [m, v] : found) out.push_back(v);
    return out;
}

FaceLattice lattice_from_vertices(const std::vector<RealizedVertex>& vs, const std::vector<std::string>& ids, int d)
{
    if (vs.size() > 64) throw RealizationError("too many vertices");
    const std::size_t n = ids.size();
    std::vector<std::uint64_t> facet_sets(n, 0);
    for (std::size_t v = 0; v < vs.size(); ++v)
        for (std::size_t s = 0; s < n; ++s)
            if (vs[v].facets & bit(s)) facet_sets[s] |= std::uint64_t{1} << v;
    std::set<std::uint64_t> seen;
    std::vector<std::uint64_t> queue;
    for (auto f : facet_sets)
        if (f && seen.insert(f).second) queue.push_back(f);
    for (std::size_t q = 0; q < queue.size(); ++q)
        for (auto f : facet_sets) {
            const std::uint64_t x = queue[q] & f;
            if (x && seen.insert(x).second) queue.push_back(x);
        }
    std::vector<Face> faces;
    for (auto set : seen) {
        FacetMask mask = ~FacetMask{0};
        std::vector<Eigen::VectorXd> pts;
        for (std::size_t v = 0; v < vs.size(); ++v)
            if (set & (std::uint64_t{1} << v)) {
                mask &= vs[v].facets;
                pts.push_back(vs[v].position);
            }
        Eigen::MatrixXd m(ix(pts.size()), pts.front().size());
        for (std::size_t i = 0; i < pts.size(); ++i) m.row(ix(i)) = pts[i].transpose();
        faces.push_back({mask, matrix_rank(m) - 1});
    }
    (void)d;
    return FaceLattice(d, ids, faces);
}

int order_from_product(double p)
{
    if (p >= 4.0 - 1e-9) return kInf;
    const double c = std::sqrt(std::max(0.0, p)) / 2.0;
    const double m = M_PI / std::acos(std::min(1.0, c));
    const long r = std::lround(m);
    if (r >= 2 && std::abs(m - static_cast<double>(r)) < 1e-6) return static_cast<int>(r);
    throw RealizationError("pairing does not realize a Coxeter order (product " + std::to_string(p) + ")");
}

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& m, int k)
{
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

struct Chart {
    Eigen::VectorXd center;
    Eigen::MatrixXd basis;  // D x d, orthonormal complement of center

    std::optional<Eigen::VectorXd> coords(const Eigen::VectorXd& p) const
    {
        const double h = center.dot(p);
        if (h <= 1e-12 * p.norm()) return std::nullopt;
        return Eigen::VectorXd(basis.transpose() * (p / h));
    }
};

Chart chart_of(const Realization& r)
{
    const Idx dd = r.interior.size();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(r.interior);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dd, dd);
    return {r.interior, q.rightCols(dd - 1)};
}

std::string matrix_key(const Eigen::MatrixXd& m)
{
    std::string key;
    key.reserve(static_cast<std::size_t>(m.size()) * 8);
    for (Idx i = 0; i < m.size(); ++i) {
        const long long v = std::llround(m.data()[i] * 1e6);
        key.append(reinterpret_cast<const char*>(&v), sizeof v);
    }
    return key;
}

Eigen::MatrixXd clean_pairing(const CoxeterSystem& w, const Eigen::MatrixXd& alpha, const Eigen::MatrixXd& b)
{
    Eigen::MatrixXd a = alpha * b.transpose();
    for (Idx i = 0; i < a.rows(); ++i)
        for (Idx j = 0; j < a.cols(); ++j) {
            if (i == j) {
                if (std::abs(a(i, j) - 2.0) < 1e-9) a(i, j) = 2.0;
            } else if (w.order(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) == 2 && std::abs(a(i, j)) < 1e-9) {
                a(i, j) = 0.0;
            }
        }
    return a;
}

}  // namespace

CartanMatrix cartan_of(const Realization& r) { return CartanMatrix(r.cartan.system(), clean_pairing(r.cartan.system(), r.alpha, r.b)); }

Realization realization_from(const CoxeterSystem& w, const Eigen::MatrixXd& alpha, const Eigen::MatrixXd& b)
{
    if (alpha.rows() != ix(w.rank()) || b.rows() != alpha.rows() || b.cols() != alpha.cols())
        throw std::invalid_argument("forms and poles do not match the system");
    const Idx dd = alpha.cols();
    if (matrix_rank(alpha) != dd) throw RealizationError("forms do not span the dual space");
    const Eigen::MatrixXd a = clean_pairing(w, alpha, b);
    Realization r;
    r.dim = static_cast<int>(dd) - 1;
    r.alpha = alpha;
    r.b = b;
    r.cartan = CartanMatrix(w, a);
    r.interior = interior_witness(alpha, b, a);
    r.vertices = enumerate_vertices(alpha, r.dim);
    if (r.vertices.empty()) throw RealizationError("the cone has no vertices");
    r.lattice = lattice_from_vertices(r.vertices, w.generators(), r.dim);
    return r;
}

Realization realize_cartan(const CartanMatrix& a)
{
    const Eigen::MatrixXd& m = a.entries();
    const auto td = type_decompose(a);
    const int rank = matrix_rank(m);
    const bool simplex_case = rank == static_cast<int>(a.size());
    if (td.components.size() != 1 && !simplex_case) throw std::invalid_argument("Cartan matrix is reducible and singular");
    if (!td.all(MatrixType::Negative) && !simplex_case)
        throw std::invalid_argument("Cartan matrix is neither of negative type nor invertible");
    IndexSet rows;
    for (std::size_t i = 0; i < a.size(); ++i) {
        IndexSet trial = rows;
        trial.push_back(i);
        if (matrix_rank(rows_of(m, trial)) == static_cast<int>(trial.size())) rows = trial;
    }
    const Idx r = ix(rows.size());
    Eigen::MatrixXd base = rows_of(m, rows);  // r x n
    Eigen::MatrixXd b = base.transpose();     // b_t = A[R, t]
    Eigen::MatrixXd alpha(m.rows(), r);
    auto solver = base.transpose().colPivHouseholderQr();
    for (Idx s = 0; s < m.rows(); ++s) alpha.row(s) = solver.solve(m.row(s).transpose()).transpose();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        alpha.row(ix(rows[i])).setZero();
        alpha(ix(rows[i]), ix(i)) = 1.0;
    }
    Realization out = realization_from(a.system(), alpha, b);
    out.cartan = a;
    return out;
}

TitsSimplex tits_simplex(const CoxeterSystem& w)
{
    Eigen::MatrixXd cos = gram_matrix(w);
    const Idx n = cos.rows();
    TitsSimplex t;
    t.realization = realization_from(w, Eigen::MatrixXd::Identity(n, n), cos);
    const Eigen::MatrixXd& b = t.realization.b;
    t.bilinear = b * cos.completeOrthogonalDecomposition().pseudoInverse() * b.transpose();
    return t;
}

ReflectionSet reflections_of(const Realization& r)
{
    ReflectionSet out;
    const Idx dd = r.alpha.cols();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dd, dd);
    for (Idx s = 0; s < r.alpha.rows(); ++s) {
        Eigen::MatrixXd sigma = id - r.b.row(s).transpose() * r.alpha.row(s);
        out.involution_error = std::max(out.involution_error, (sigma * sigma - id).cwiseAbs().maxCoeff());
        out.det_error = std::max(out.det_error, std::abs(sigma.determinant() + 1.0));
        out.matrices.push_back(std::move(sigma));
    }
    const auto& w = r.cartan.system();
    for (std::size_t s = 0; s < w.rank(); ++s)
        for (std::size_t t = s + 1; t < w.rank(); ++t) {
            Eigen::MatrixXd st = out.matrices[s] * out.matrices[t];
            const int m = w.order(s, t);
            if (is_inf(m)) {
                const double expected = static_cast<double>(dd) - 4.0 + r.cartan(s, t) * r.cartan(t, s);
                out.parabolic_trace_error = std::max(out.parabolic_trace_error, std::abs(st.trace() - expected));
            } else {
                Eigen::MatrixXd p = matrix_power(st, m);
                const double scale = std::max(1.0, st.cwiseAbs().maxCoeff());
                out.relation_error = std::max(out.relation_error, (p - id).cwiseAbs().maxCoeff() / scale);
            }
        }
    return out;
}

std::string vertex_class_name(VertexClass c)
{
    switch (c) {
        case VertexClass::Elliptic: return "elliptic";
        case VertexClass::Parabolic: return "parabolic";
        case VertexClass::Loxodromic: return "loxodromic";
    }
    return "?";
}

std::size_t VertexGeometry::count(VertexClass c) const
{
    return static_cast<std::size_t>(std::count_if(vertices.begin(), vertices.end(), [&](const VertexInfo& v) { return v.cls == c; }));
}

VertexGeometry classify_vertices(const Realization& r)
{
    VertexGeometry g;
    for (const auto& v : r.vertices) {
        CartanMatrix link = r.cartan.restrict_to(mask_indices(v.facets));
        const auto td = type_decompose(link);
        VertexClass cls = VertexClass::Loxodromic;
        if (td.all(MatrixType::Positive))
            cls = VertexClass::Elliptic;
        else if (td.all(MatrixType::Zero) && matrix_rank(link) == r.dim - 1)
            cls = VertexClass::Parabolic;
        g.vertices.push_back({v.facets, v.position, std::move(link), cls});
    }
    g.perfect = g.count(VertexClass::Elliptic) == g.vertices.size();
    g.quasi_perfect = g.count(VertexClass::Loxodromic) == 0;
    return g;
}

TruncationCertificate truncatable(const Realization& r, FacetMask v)
{
    auto it = std::find_if(r.vertices.begin(), r.vertices.end(), [&](const RealizedVertex& x) { return x.facets == v; });
    if (it == r.vertices.end()) throw std::invalid_argument("not a vertex: " + r.lattice.vertex_name(v));
    TruncationCertificate c;
    Eigen::MatrixXd poles = rows_of(r.b, mask_indices(v));
    c.span_dim = matrix_rank(poles);
    if (c.span_dim != r.dim) return c;
    Eigen::VectorXd beta = kernel_vector(poles);
    const double at_v = beta.dot(it->position);
    if (std::abs(at_v) < kZero) return c;
    if (at_v < 0) beta = -beta;
    c.support = beta;
    bool ok = true;
    for (const auto& e : r.lattice.faces_containing(v)) {
        if (e.dim != 1) continue;
        for (const auto& w : r.vertices) {
            if (w.facets == v || (w.facets & e.facets) != e.facets) continue;
            const double bv = beta.dot(it->position), bw = beta.dot(w.position);
            const double t = bv / (bv - bw);
            c.edge_parameters.push_back(t);
            if (!(t > 1e-7 && t < 1 - 1e-7)) ok = false;
        }
    }
    c.truncatable = ok && !c.edge_parameters.empty();
    return c;
}

Realization truncate_geometric(const Realization& r, FacetMask v)
{
    TruncationCertificate c = truncatable(r, v);
    if (!c.truncatable) throw RealizationError("vertex " + r.lattice.vertex_name(v) + " is not truncatable");
    auto it = std::find_if(r.vertices.begin(), r.vertices.end(), [&](const RealizedVertex& x) { return x.facets == v; });
    const Idx n = r.alpha.rows(), dd = r.alpha.cols();
    Eigen::MatrixXd alpha(n + 1, dd), b(n + 1, dd);
    alpha.topRows(n) = r.alpha;
    b.topRows(n) = r.b;
    alpha.row(n) = c.support.transpose();
    b.row(n) = (2.0 / c.support.dot(it->position)) * it->position.transpose();

    const auto& w = r.cartan.system();
    std::vector<std::string> gens = w.generators();
    gens.push_back(truncation_facet_id(r.lattice, v));
    CoxeterSystem nw(gens);
    for (std::size_t s = 0; s < w.rank(); ++s)
        for (std::size_t t = s + 1; t < w.rank(); ++t) nw.set_order(s, t, w.order(s, t));
    Eigen::VectorXd row = alpha.row(n) * b.transpose(), col = alpha * b.row(n).transpose();
    for (std::size_t s = 0; s < w.rank(); ++s) {
        if (v & bit(s)) {
            nw.set_order(s, w.rank(), 2);
            continue;
        }
        const double x = row(ix(s)), y = col(ix(s));
        if (std::abs(x) < 1e-9 && std::abs(y) < 1e-9)
            nw.set_order(s, w.rank(), 2);
        else
            nw.set_order(s, w.rank(), order_from_product(x * y));
    }
    return realization_from(nw, alpha, b);
}

OrbitApproximation orbit_explore(const Realization& r, int max_length, int samples, std::uint64_t seed)
{
    constexpr std::size_t kMaxElements = 20000;
    const ReflectionSet refl = reflections_of(r);
    const Idx dd = r.alpha.cols();
    OrbitApproximation out;
    std::unordered_map<std::string, std::size_t> seen;
    out.elements.push_back({{}, Eigen::MatrixXd::Identity(dd, dd)});
    seen.emplace(matrix_key(out.elements[0].matrix), 0);
    std::size_t level_begin = 0;
    for (int len = 1; len <= max_length && out.elements.size() < kMaxElements; ++len) {
        const std::size_t level_end = out.elements.size();
        for (std::size_t i = level_begin; i < level_end && out.elements.size() < kMaxElements; ++i)
            for (std::size_t s = 0; s < refl.matrices.size(); ++s) {
                Eigen::MatrixXd g = out.elements[i].matrix * refl.matrices[s];
                if (!seen.emplace(matrix_key(g), out.elements.size()).second) continue;
                std::vector<std::size_t> word = out.elements[i].word;
                word.push_back(s);
                out.elements.push_back({std::move(word), std::move(g)});
                if (out.elements.size() >= kMaxElements) break;
            }
        level_begin = level_end;
    }

    const Chart chart = chart_of(r);
    for (const auto& e : out.elements)
        for (const auto& v : r.vertices)
            if (auto c = chart.coords(e.matrix * v.position)) out.hull_samples.push_back(*c);

    if (out.elements.size() < 2) return out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, out.elements.size() - 1);
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    std::vector<Eigen::MatrixXd> inverses(out.elements.size());
    for (int k = 0; k < samples; ++k) {
        const std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        while (j == i) j = pick(rng);
        Eigen::VectorXd x = Eigen::VectorXd::Zero(dd);
        for (const auto& v : r.vertices) x += weight(rng) * v.position;
        if (inverses[j].size() == 0) inverses[j] = out.elements[j].matrix.inverse();
        Eigen::VectorXd y = inverses[j] * (out.elements[i].matrix * x);
        Eigen::VectorXd vals = r.alpha * y;
        ++out.pair_checks;
        if (vals.maxCoeff() < -1e-9 * y.norm() * r.alpha.cwiseAbs().maxCoeff()) ++out.overlap_violations;
    }
    return out;
}

void write_ply(std::ostream& out, const Realization& r, const OrbitApproximation& orbit)
{
    if (r.dim < 2 || r.dim > 4) throw std::invalid_argument("PLY export needs dimension 2, 3 or 4");
    const Chart chart = chart_of(r);
    std::vector<FacetMask> polygons;
    if (r.dim == 2)
        polygons.push_back(0);
    else
        for (const auto& f : r.lattice.faces_of_dim(2)) polygons.push_back(f.facets);

    std::vector<Eigen::Vector3d> pts;
    std::vector<std::vector<int>> tris;
    for (const auto& e : orbit.elements)
        for (FacetMask f : polygons) {
            std::vector<Eigen::VectorXd> poly;
            bool in_chart = true;
            for (const auto& v : r.vertices) {
                if ((v.facets & f) != f) continue;
                auto c = chart.coords(e.matrix * v.position);
                if (!c) {
                    in_chart = false;
                    break;
                }
                poly.push_back(*c);
            }
            if (!in_chart || poly.size() < 3) continue;
            Eigen::VectorXd centre = Eigen::VectorXd::Zero(poly[0].size());
            for (const auto& p : poly) centre += p;
            centre /= static_cast<double>(poly.size());
            Eigen::MatrixXd centred(ix(poly.size()), centre.size());
            for (std::size_t i = 0; i < poly.size(); ++i) centred.row(ix(i)) = (poly[i] - centre).transpose();
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeThinV);
            const Eigen::VectorXd u = svd.matrixV().col(0), w = svd.matrixV().col(1);
            std::vector<std::pair<double, std::size_t>> order;
            for (std::size_t i = 0; i < poly.size(); ++i)
                order.emplace_back(std::atan2((poly[i] - centre).dot(w), (poly[i] - centre).dot(u)), i);
            std::sort(order.begin(), order.end());
            const int base = static_cast<int>(pts.size());
            for (const auto& [ang, i] : order) {
                Eigen::Vector3d p = Eigen::Vector3d::Zero();
                for (Idx k = 0; k < std::min<Idx>(3, poly[i].size()); ++k) p(k) = poly[i](k);
                pts.push_back(p);
            }
            for (int i = 1; i + 1 < static_cast<int>(order.size()); ++i) tris.push_back({base, base + i, base + i + 1});
        }
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << pts.size() << "\nproperty double x\nproperty double y\nproperty double z\n";
    out << "element face " << tris.size() << "\nproperty list uchar int vertex_indices\nend_header\n";
    for (const auto& p : pts) out << p(0) << ' ' << p(1) << ' ' << p(2) << '\n';
    for (const auto& t : tris) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

bool is_hyperbolic(const CartanMatrix& a)
{
    auto d = symmetrize(a);
    if (!d) return false;
    Eigen::MatrixXd s = a.conjugate(*d).entries();
    s = 0.5 * (s + s.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const double tol = 1e-9 * std::max(1.0, s.cwiseAbs().maxCoeff());
    int neg = 0;
    for (Idx i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) < -tol) ++neg;
    return neg == 1;
}

bool is_hyperbolic(const Realization& r)
{
    if (!is_hyperbolic(r.cartan)) return false;
    return matrix_rank(r.cartan.entries()) == r.dim + 1;
}

double hilbert_distance(const Membership& inside, const Eigen::VectorXd& x, const Eigen::VectorXd& y)
{
    if (!inside(x) || !inside(y)) throw RealizationError("points are not inside the region");
    const Eigen::VectorXd dir = y - x;
    const double len = dir.norm();
    if (len == 0) return 0.0;
    // boundary at x + t*dir, t > 1 (beyond y) or t < 0 (beyond x)
    auto exit_param = [&](double sign) {
        double lo = sign > 0 ? 1.0 : 0.0, step = 1.0;
        double hi = lo + sign * step;
        while (inside(x + hi * dir)) {
            lo = hi;
            step *= 2;
            hi = lo + sign * step;
            if (step > 1e12) throw RealizationError("region is unbounded along the line");
        }
        for (int k = 0; k < 200 && std::abs(hi - lo) > 1e-15 * std::max(1.0, std::abs(lo)); ++k) {
            const double mid = 0.5 * (lo + hi);
            (inside(x + mid * dir) ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double q = exit_param(1.0), p = exit_param(-1.0);
    // positions along the line: p < 0 < 1 < q
    return 0.5 * std::log(((1.0 - p) * q) / ((-p) * (q - 1.0)));
}

nlohmann::json to_json(const Realization& r)
{
    auto mat = [](const Eigen::MatrixXd& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (Idx i = 0; i < m.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Idx j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
            rows.push_back(row);
        }
        return rows;
    };
    nlohmann::json j;
    j["dim"] = r.dim;
    j["facets"] = r.facets();
    j["alpha"] = mat(r.alpha);
    j["b"] = mat(r.b);
    j["cartan"] = to_json(r.cartan);
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : r.vertices) {
        std::vector<double> pos(v.position.data(), v.position.data() + v.position.size());
        vs.push_back({{"name", r.lattice.vertex_name(v.facets)}, {"position", pos}});
    }
    j["vertices"] = vs;
    j["f_vector"] = r.lattice.f_vector();
    return j;
}

}  // namespace coxpoly
