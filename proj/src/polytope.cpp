#include "coxpoly/polytope.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace coxpoly {

int popcount(FacetMask m) { return std::popcount(m); }

FacetMask bit(std::size_t i)
{
    if (i >= 64) throw std::out_of_range("at most 64 facets are supported");
    return FacetMask{1} << i;
}

std::vector<std::size_t> mask_indices(FacetMask m)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; m; ++i, m >>= 1)
        if (m & 1) out.push_back(i);
    return out;
}

namespace {

bool subset(FacetMask a, FacetMask b) { return (a & ~b) == 0; }

}  // namespace

// ---------------------------------------------------------------- FaceLattice

FaceLattice::FaceLattice(int dim, std::vector<std::string> facet_ids, std::vector<Face> faces)
    : dim_(dim), ids_(std::move(facet_ids))
{
    if (ids_.size() > 64) throw std::invalid_argument("at most 64 facets are supported");
    std::sort(faces.begin(), faces.end());
    for (const auto& f : faces) {
        auto [it, fresh] = index_.emplace(f.facets, f.dim);
        if (!fresh && it->second != f.dim) throw std::invalid_argument("face recorded with two dimensions");
        if (fresh) faces_.push_back(f);
    }
}

std::size_t FaceLattice::facet_index(const std::string& id) const
{
    auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) throw std::out_of_range("unknown facet '" + id + "'");
    return static_cast<std::size_t>(it - ids_.begin());
}

FacetMask FaceLattice::mask_of(const std::vector<std::string>& ids) const
{
    FacetMask m = 0;
    for (const auto& s : ids) m |= bit(facet_index(s));
    return m;
}

std::vector<std::string> FaceLattice::names(FacetMask m) const
{
    std::vector<std::string> out;
    for (auto i : mask_indices(m)) out.push_back(ids_.at(i));
    return out;
}

std::optional<int> FaceLattice::dim_of(FacetMask m) const
{
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<Face> FaceLattice::faces_of_dim(int k) const
{
    std::vector<Face> out;
    for (const auto& f : faces_)
        if (f.dim == k) out.push_back(f);
    return out;
}

std::vector<FacetMask> FaceLattice::vertices() const
{
    std::vector<FacetMask> out;
    for (const auto& f : faces_)
        if (f.dim == 0) out.push_back(f.facets);
    return out;
}

std::vector<std::size_t> FaceLattice::f_vector() const
{
    std::vector<std::size_t> f(static_cast<std::size_t>(std::max(dim_, 0)), 0);
    for (const auto& face : faces_)
        if (face.dim >= 0 && face.dim < dim_) ++f[static_cast<std::size_t>(face.dim)];
    return f;
}

long FaceLattice::euler_characteristic() const
{
    long e = 0;
    auto f = f_vector();
    for (std::size_t k = 0; k < f.size(); ++k) e += (k % 2 ? -1L : 1L) * static_cast<long>(f[k]);
    return e;
}

bool FaceLattice::adjacent(std::size_t i, std::size_t j) const
{
    auto d = dim_of(bit(i) | bit(j));
    return i != j && d && *d == dim_ - 2;
}

std::optional<Face> FaceLattice::intersection(FacetMask m) const
{
    if (m == 0) return std::nullopt;
    std::optional<Face> best;
    for (const auto& f : faces_)
        if (subset(m, f.facets) && (!best || f.dim > best->dim)) best = f;
    return best;
}

std::vector<Face> FaceLattice::faces_containing(FacetMask v) const
{
    std::vector<Face> out;
    for (const auto& f : faces_)
        if (subset(f.facets, v)) out.push_back(f);
    return out;
}

std::string FaceLattice::vertex_name(FacetMask v) const
{
    auto n = names(v);
    bool short_ids = std::all_of(n.begin(), n.end(), [](const std::string& s) { return s.size() == 1; });
    std::string out = "v";
    for (std::size_t i = 0; i < n.size(); ++i) out += (short_ids || i == 0 ? "" : ",") + n[i];
    return out;
}

FacetMask FaceLattice::find_vertex(const std::string& spec) const
{
    std::vector<std::string> cands{spec};
    if (!spec.empty() && spec[0] == 'v') cands.push_back(spec.substr(1));
    for (const auto& c : cands) {
        std::vector<std::string> parts;
        if (c.find(',') != std::string::npos) {
            std::stringstream ss(c);
            for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
        } else {
            for (char ch : c) parts.emplace_back(1, ch);
        }
        FacetMask m = 0;
        bool ok = !parts.empty();
        for (const auto& p : parts) {
            auto it = std::find(ids_.begin(), ids_.end(), p);
            if (it == ids_.end()) {
                ok = false;
                break;
            }
            m |= bit(static_cast<std::size_t>(it - ids_.begin()));
        }
        if (ok && dim_of(m) == 0) return m;
    }
    throw std::out_of_range("unknown vertex '" + spec + "'");
}

std::vector<std::string> FaceLattice::validate() const
{
    std::vector<std::string> problems;
    for (std::size_t i = 0; i < ids_.size(); ++i)
        if (dim_of(bit(i)) != dim_ - 1) problems.push_back("facet " + ids_[i] + " missing");
    for (std::size_t a = 0; a < faces_.size(); ++a)
        for (std::size_t b = a + 1; b < faces_.size(); ++b) {
            const FacetMask u = faces_[a].facets | faces_[b].facets;
            auto meet = intersection(u);
            if (!meet) continue;
            for (const auto& h : faces_)
                if (subset(u, h.facets) && !subset(meet->facets, h.facets)) {
                    problems.push_back("faces " + vertex_name(faces_[a].facets) + " and " +
                                       vertex_name(faces_[b].facets) + " have no unique meet");
                    break;
                }
        }
    const long expect = 1 - (dim_ % 2 ? -1 : 1);
    if (euler_characteristic() != expect) problems.push_back("Euler relation fails");
    return problems;
}

FaceLattice simplex(int n, const std::string& prefix)
{
    std::vector<std::string> ids;
    for (int i = 1; i <= n + 1; ++i) ids.push_back(prefix + std::to_string(i));
    std::vector<Face> faces;
    for (FacetMask m = 1; m < (FacetMask{1} << (n + 1)); ++m) {
        int k = popcount(m);
        if (k <= n) faces.push_back({m, n - k});
    }
    return FaceLattice(n, ids, faces);
}

FaceLattice simplex_product(int e, int f)
{
    if (e < 1 || f < 1) throw std::invalid_argument("simplex_product needs e, f >= 1");
    std::vector<std::string> ids;
    for (int i = 1; i <= e + 1; ++i) ids.push_back("a" + std::to_string(i));
    for (int j = 1; j <= f + 1; ++j) ids.push_back("b" + std::to_string(j));
    std::vector<Face> faces;
    for (FacetMask i = 0; i < (FacetMask{1} << (e + 1)); ++i) {
        if (popcount(i) > e) continue;
        for (FacetMask j = 0; j < (FacetMask{1} << (f + 1)); ++j) {
            if (popcount(j) > f || (i == 0 && j == 0)) continue;
            faces.push_back({i | (j << (e + 1)), e + f - popcount(i) - popcount(j)});
        }
    }
    return FaceLattice(e + f, ids, faces);
}

FaceLattice pyramid(const FaceLattice& q, const std::string& base_id)
{
    auto ids = q.facets();
    std::string b = base_id;
    while (std::find(ids.begin(), ids.end(), b) != ids.end()) b += "'";
    ids.push_back(b);
    const FacetMask base = bit(ids.size() - 1);
    FacetMask all_sides = 0;
    for (std::size_t i = 0; i < q.facet_count(); ++i) all_sides |= bit(i);
    std::vector<Face> faces;
    for (const auto& f : q.faces()) {
        faces.push_back({f.facets | base, f.dim});  // inside the base
        faces.push_back({f.facets, f.dim + 1});     // cone over it
    }
    faces.push_back({base, q.dim()});
    faces.push_back({all_sides, 0});  // apex
    return FaceLattice(q.dim() + 1, ids, faces);
}

FaceLattice rename_facets(const FaceLattice& l, const std::map<std::string, std::string>& ren)
{
    auto ids = l.facets();
    for (auto& s : ids)
        if (auto it = ren.find(s); it != ren.end()) s = it->second;
    return FaceLattice(l.dim(), ids, l.faces());
}

FaceLattice reorder_facets(const FaceLattice& l, const std::vector<std::string>& order)
{
    if (order.size() != l.facet_count()) throw std::invalid_argument("reorder needs every facet once");
    std::vector<std::size_t> to(l.facet_count());
    for (std::size_t k = 0; k < order.size(); ++k) to[l.facet_index(order[k])] = k;
    std::vector<Face> faces;
    for (const auto& f : l.faces()) {
        FacetMask m = 0;
        for (auto i : mask_indices(f.facets)) m |= bit(to[i]);
        faces.push_back({m, f.dim});
    }
    return FaceLattice(l.dim(), order, faces);
}

std::optional<std::vector<std::size_t>> lattice_isomorphism(const FaceLattice& a, const FaceLattice& b)
{
    const std::size_t n = a.facet_count();
    if (n != b.facet_count() || a.dim() != b.dim() || a.f_vector() != b.f_vector()) return std::nullopt;
    auto signature = [](const FaceLattice& l, std::size_t i) {
        std::vector<int> s(static_cast<std::size_t>(l.dim()) + 1, 0);
        for (const auto& f : l.faces())
            if (f.facets & bit(i)) ++s[static_cast<std::size_t>(f.dim)];
        return s;
    };
    std::vector<std::vector<int>> sa(n), sb(n);
    for (std::size_t i = 0; i < n; ++i) {
        sa[i] = signature(a, i);
        sb[i] = signature(b, i);
    }
    std::set<FacetMask> target;
    for (const auto& f : b.faces()) target.insert(f.facets);
    std::vector<std::size_t> map(n, n);
    std::vector<bool> used(n, false);
    std::optional<std::vector<std::size_t>> result;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (result) return;
        if (i == n) {
            for (const auto& f : a.faces()) {
                FacetMask m = 0;
                for (auto k : mask_indices(f.facets)) m |= bit(map[k]);
                if (b.dim_of(m) != f.dim) return;
            }
            result = map;
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || sa[i] != sb[j]) continue;
            bool ok = true;
            for (std::size_t k = 0; k < i && ok; ++k) ok = a.adjacent(i, k) == b.adjacent(j, map[k]);
            if (!ok) continue;
            map[i] = j;
            used[j] = true;
            self(self, i + 1);
            used[j] = false;
        }
    };
    rec(rec, 0);
    return result;
}

// ---------------------------------------------------------------- labels

int LabeledPolytope::label(std::size_t i, std::size_t j) const
{
    auto it = labels.find({std::min(i, j), std::max(i, j)});
    if (it == labels.end()) throw std::out_of_range("facets " + lattice.facets().at(i) + "," + lattice.facets().at(j) + " do not form a ridge");
    return it->second;
}

CoxeterSystem LabeledPolytope::coxeter_system() const
{
    CoxeterSystem w(lattice.facets());
    for (std::size_t i = 0; i < w.rank(); ++i)
        for (std::size_t j = i + 1; j < w.rank(); ++j) {
            auto it = labels.find({i, j});
            w.set_order(i, j, it == labels.end() ? kInf : it->second);
        }
    return w;
}

LabeledPolytope label_polytope(const FaceLattice& l, const CoxeterSystem& w, const std::map<std::string, std::string>& assignment)
{
    if (assignment.size() != l.facet_count() || w.rank() != l.facet_count())
        throw LabelError("assignment must be a bijection between facets and generators");
    std::set<std::string> targets;
    for (const auto& f : l.facets()) {
        auto it = assignment.find(f);
        if (it == assignment.end()) throw LabelError("facet " + f + " is not assigned");
        if (!w.find(it->second)) throw LabelError("unknown generator " + it->second);
        if (!targets.insert(it->second).second) throw LabelError("generator " + it->second + " assigned twice");
    }
    FaceLattice lat = reorder_facets(rename_facets(l, assignment), w.generators());
    LabeledPolytope g{lat, {}};
    for (std::size_t i = 0; i < w.rank(); ++i)
        for (std::size_t j = i + 1; j < w.rank(); ++j) {
            const int m = w.order(i, j);
            if (lat.adjacent(i, j)) {
                g.labels[{i, j}] = m;
            } else if (!is_inf(m)) {
                throw LabelError("facets " + w.name(i) + "," + w.name(j) + " are not adjacent but m = " +
                                 std::to_string(m) + " is finite");
            }
        }
    return g;
}

LabeledPolytope label_polytope(const FaceLattice& l, const CoxeterSystem& w)
{
    std::map<std::string, std::string> id;
    for (const auto& f : l.facets()) id[f] = f;
    return label_polytope(l, w, id);
}

LabeledPolytope vertex_link(const LabeledPolytope& g, FacetMask v)
{
    const FaceLattice& l = g.lattice;
    if (l.dim_of(v) != 0) throw std::out_of_range("not a vertex");
    auto sv = mask_indices(v);
    std::vector<std::string> ids;
    std::map<std::size_t, std::size_t> to;
    for (auto i : sv) {
        to[i] = ids.size();
        ids.push_back(l.facets()[i]);
    }
    std::vector<Face> faces;
    for (const auto& f : l.faces_containing(v)) {
        if (f.dim < 1) continue;
        FacetMask m = 0;
        for (auto i : mask_indices(f.facets)) m |= bit(to.at(i));
        faces.push_back({m, f.dim - 1});
    }
    LabeledPolytope out{FaceLattice(l.dim() - 1, ids, faces), {}};
    for (std::size_t a = 0; a < sv.size(); ++a)
        for (std::size_t b = a + 1; b < sv.size(); ++b)
            if (out.lattice.adjacent(a, b)) out.labels[{a, b}] = g.label(sv[a], sv[b]);
    return out;
}

bool is_simplex(const FaceLattice& l)
{
    const int d = l.dim();
    if (static_cast<int>(l.facet_count()) != d + 1) return false;
    if (l.faces().size() != static_cast<std::size_t>((1L << (d + 1)) - 2)) return false;
    return std::all_of(l.faces().begin(), l.faces().end(), [&](const Face& f) { return f.dim == d - popcount(f.facets); });
}

std::string vertex_label_name(VertexLabel v)
{
    switch (v) {
    case VertexLabel::Spherical: return "spherical";
    case VertexLabel::Affine: return "affine";
    case VertexLabel::Lanner: return "Lanner";
    case VertexLabel::LargeOther: return "large-other";
    }
    return "?";
}

std::size_t PerfectnessReport::count(VertexLabel v) const
{
    return static_cast<std::size_t>(std::count_if(vertices.begin(), vertices.end(), [&](const auto& p) { return p.second == v; }));
}

PrismLink prism_link(const LabeledPolytope& g, FacetMask v)
{
    const int d = g.lattice.dim();
    LabeledPolytope link = vertex_link(g, v);
    CoxeterSystem wv = link.coxeter_system();
    const std::string group = describe(wv);
    const std::string where = g.lattice.vertex_name(v);
    auto fail = [&](const std::string& why) -> DehnFillError {
        return DehnFillError(where + ": " + why + " (link group " + group + ")", group);
    };
    auto comps = component_indices(wv);
    if (comps.size() != 2) throw fail("link group is not tilde_A_1 x tilde_A_" + std::to_string(d - 2));
    for (int swap = 0; swap < 2; ++swap) {
        const auto& ends = comps[static_cast<std::size_t>(swap)];
        const auto& ring = comps[static_cast<std::size_t>(1 - swap)];
        if (ends.size() != 2 || !is_inf(wv.order(ends[0], ends[1]))) continue;
        if (static_cast<int>(ring.size()) != d - 1) continue;
        auto name = catalog_match(subsystem(wv, ring));
        const std::string want = d - 2 == 1 ? "tilde_A_1" : "tilde_A_" + std::to_string(d - 2);
        if (!name || *name != want) continue;
        // compare with the prism Delta_1 x Delta_{d-2}
        FaceLattice prism = simplex_product(1, d - 2);
        std::map<std::string, std::string> ren{{"a1", link.lattice.facets()[ends[0]]}, {"a2", link.lattice.facets()[ends[1]]}};
        for (std::size_t k = 0; k < ring.size(); ++k) ren["b" + std::to_string(k + 1)] = link.lattice.facets()[ring[k]];
        FaceLattice expect = reorder_facets(rename_facets(prism, ren), link.lattice.facets());
        if (!(expect == link.lattice)) continue;
        auto sv = mask_indices(v);
        PrismLink out{sv[ends[0]], sv[ends[1]], {}};
        for (auto k : ring) out.cycle.push_back(sv[k]);
        return out;
    }
    throw fail("link is not a prism with group tilde_A_1 x tilde_A_" + std::to_string(d - 2));
}

VertexLabel classify_vertex(const LabeledPolytope& g, FacetMask v)
{
    LabeledPolytope link = vertex_link(g, v);
    CoxeterSystem wv = link.coxeter_system();
    if (is_simplex(link.lattice)) {
        if (is_spherical(wv)) return VertexLabel::Spherical;
        if (!is_irreducible(wv)) return VertexLabel::LargeOther;
        switch (classify_irreducible(wv).kind) {
        case Kind::Affine: return VertexLabel::Affine;
        case Kind::Lanner: return VertexLabel::Lanner;
        default: return VertexLabel::LargeOther;
        }
    }
    try {
        prism_link(g, v);
        return VertexLabel::Affine;
    } catch (const DehnFillError&) {
        return VertexLabel::LargeOther;
    }
}

PerfectnessReport perfectness_report(const LabeledPolytope& g)
{
    PerfectnessReport r;
    for (auto v : g.lattice.vertices()) r.vertices.emplace_back(v, classify_vertex(g, v));
    r.perfect = r.count(VertexLabel::Spherical) == r.vertices.size();
    r.two_perfect = r.count(VertexLabel::LargeOther) == 0;
    return r;
}

LabeledPolytope dehn_fill(const LabeledPolytope& g, FacetMask v, int m)
{
    if (m < 2) throw std::invalid_argument("Dehn filling order must be at least 2");
    PrismLink p = prism_link(g, v);
    const int d = g.lattice.dim();
    std::vector<Face> faces;
    for (const auto& f : g.lattice.faces())
        if (f.facets != v) faces.push_back(f);
    const FacetMask st = bit(p.s) | bit(p.t);
    const std::size_t k = p.cycle.size();
    for (FacetMask j = 0; j < (FacetMask{1} << k); ++j) {
        const int size = popcount(j);
        if (size > d - 2) continue;
        FacetMask m2 = st;
        for (std::size_t i = 0; i < k; ++i)
            if (j & (FacetMask{1} << i)) m2 |= bit(p.cycle[i]);
        faces.push_back({m2, d - 2 - size});
    }
    LabeledPolytope out{FaceLattice(d, g.lattice.facets(), faces), g.labels};
    out.labels[{std::min(p.s, p.t), std::max(p.s, p.t)}] = m;
    return out;
}

LabeledPolytope collapse_ridge(const LabeledPolytope& g, std::size_t s, std::size_t t)
{
    const FacetMask st = bit(s) | bit(t);
    if (!g.lattice.adjacent(s, t)) throw std::invalid_argument("facets do not share a ridge");
    std::vector<Face> faces;
    FacetMask v = 0;
    for (const auto& f : g.lattice.faces()) {
        if (subset(st, f.facets))
            v |= f.facets;
        else
            faces.push_back(f);
    }
    faces.push_back({v, 0});
    LabeledPolytope out{FaceLattice(g.lattice.dim(), g.lattice.facets(), faces), g.labels};
    out.labels.erase({std::min(s, t), std::max(s, t)});
    return out;
}

std::string truncation_facet_id(const FaceLattice& l, FacetMask v)
{
    std::string id = "t" + l.vertex_name(v).substr(1);
    while (std::find(l.facets().begin(), l.facets().end(), id) != l.facets().end()) id += "'";
    return id;
}

LabeledPolytope truncate_labeled(const LabeledPolytope& g, const std::vector<FacetMask>& vs)
{
    LabeledPolytope cur = g;
    for (auto v : vs) {
        const FaceLattice& l = cur.lattice;
        const int d = l.dim();
        if (l.dim_of(v) != 0) throw std::invalid_argument("truncation target is not a vertex");
        if (popcount(v) != d || !is_simplex(vertex_link(cur, v).lattice))
            throw std::invalid_argument("vertex " + l.vertex_name(v) + " is not simple");
        auto ids = l.facets();
        const std::string nid = truncation_facet_id(l, v);
        const std::size_t n = ids.size();
        ids.push_back(nid);
        std::vector<Face> faces;
        for (const auto& f : l.faces())
            if (f.facets != v) faces.push_back(f);
        faces.push_back({bit(n), d - 1});
        auto sv = mask_indices(v);
        for (FacetMask sub = 1; sub < (FacetMask{1} << sv.size()); ++sub) {
            if (popcount(sub) == d) continue;
            FacetMask m = bit(n);
            for (std::size_t i = 0; i < sv.size(); ++i)
                if (sub & (FacetMask{1} << i)) m |= bit(sv[i]);
            faces.push_back({m, d - 1 - popcount(sub)});
        }
        LabeledPolytope next{FaceLattice(d, ids, faces), cur.labels};
        for (auto s : sv) next.labels[{s, n}] = 2;
        cur = std::move(next);
    }
    return cur;
}

std::vector<std::map<std::string, std::string>> link_isomorphisms(const LabeledPolytope& g1, FacetMask v1,
                                                                   const LabeledPolytope& g2, FacetMask v2)
{
    LabeledPolytope l1 = vertex_link(g1, v1), l2 = vertex_link(g2, v2);
    if (!is_simplex(l1.lattice) || !is_simplex(l2.lattice)) throw std::invalid_argument("links must be simplices");
    std::vector<std::map<std::string, std::string>> out;
    for (const auto& iso : isomorphisms(l1.coxeter_system(), l2.coxeter_system())) {
        std::map<std::string, std::string> m;
        for (std::size_t i = 0; i < iso.size(); ++i) m[l1.lattice.facets()[i]] = l2.lattice.facets()[iso[i]];
        out.push_back(std::move(m));
    }
    return out;
}

GlueResult glue_labeled(const LabeledPolytope& g1, FacetMask v1, const LabeledPolytope& g2, FacetMask v2,
                        const std::map<std::string, std::string>& iso)
{
    const FaceLattice &l1 = g1.lattice, &l2 = g2.lattice;
    if (l1.dim() != l2.dim()) throw std::invalid_argument("glued polytopes must have the same dimension");
    auto s1 = mask_indices(v1), s2 = mask_indices(v2);
    if (iso.size() != s1.size() || s1.size() != s2.size()) throw LabelError("iso must match the facets at both vertices");
    std::map<std::size_t, std::size_t> f;  // G1 index -> G2 index
    std::set<std::size_t> image;
    for (auto i : s1) {
        auto it = iso.find(l1.facets()[i]);
        if (it == iso.end()) throw LabelError("iso misses facet " + l1.facets()[i]);
        const std::size_t j = l2.facet_index(it->second);
        if (!(v2 & bit(j)) || !image.insert(j).second) throw LabelError("iso is not a bijection onto the facets at v2");
        f[i] = j;
    }
    for (auto a : s1)
        for (auto b : s1)
            if (a < b && g1.label(a, b) != g2.label(f[a], f[b]))
                throw LabelError("iso does not preserve the label of " + l1.facets()[a] + "," + l1.facets()[b]);

    LabeledPolytope t1 = truncate_labeled(g1, {v1}), t2 = truncate_labeled(g2, {v2});
    const std::size_t cut1 = l1.facet_count(), cut2 = l2.facet_count();

    GlueResult r;
    r.left_vertex = v1;
    r.right_vertex = v2;
    r.left_cut = t1.lattice.facets()[cut1];
    r.right_cut = t2.lattice.facets()[cut2];
    std::vector<std::string> ids = l1.facets();
    r.left_facets = ids;
    std::vector<std::size_t> to(l2.facet_count());
    std::map<std::size_t, std::size_t> inv;
    for (auto [a, b] : f) inv[b] = a;
    for (std::size_t j = 0; j < l2.facet_count(); ++j) {
        if (auto it = inv.find(j); it != inv.end()) {
            to[j] = it->second;
        } else {
            std::string id = l2.facets()[j];
            while (std::find(ids.begin(), ids.end(), id) != ids.end()) id += "'";
            to[j] = ids.size();
            ids.push_back(id);
        }
        r.right_rename[l2.facets()[j]] = ids[to[j]];
    }

    std::map<FacetMask, int> faces;
    for (const auto& face : t1.lattice.faces())
        if (!(face.facets & bit(cut1))) faces[face.facets] = face.dim;
    for (const auto& face : t2.lattice.faces()) {
        if (face.facets & bit(cut2)) continue;
        FacetMask m = 0;
        for (auto j : mask_indices(face.facets)) m |= bit(to[j]);
        auto [it, fresh] = faces.emplace(m, face.dim);
        if (!fresh && it->second != face.dim) throw std::logic_error("glued faces disagree in dimension");
    }
    std::vector<Face> list;
    for (auto [m, d] : faces) list.push_back({m, d});
    r.polytope.lattice = FaceLattice(l1.dim(), ids, list);
    for (auto [k, m] : t1.labels)
        if (k.second != cut1) r.polytope.labels[k] = m;
    for (auto [k, m] : t2.labels) {
        if (k.first == cut2 || k.second == cut2) continue;
        RidgeKey key{std::min(to[k.first], to[k.second]), std::max(to[k.first], to[k.second])};
        auto [it, fresh] = r.polytope.labels.emplace(key, m);
        if (!fresh && it->second != m) throw LabelError("glued ridge labels disagree");
    }
    return r;
}

std::pair<LabeledPolytope, LabeledPolytope> cut_glued(const GlueResult& r, const LabeledPolytope& g2)
{
    const FaceLattice& l = r.polytope.lattice;
    const int d = l.dim();
    auto piece = [&](const std::vector<std::string>& glued_ids, const std::vector<std::string>& out_ids,
                     FacetMask vertex_in_out, const std::string& cut) {
        // glued_ids[k] is the glued name of output facet k
        std::vector<std::string> ids = out_ids;
        ids.push_back(cut);
        const std::size_t c = out_ids.size();
        std::map<std::size_t, std::size_t> to;
        FacetMask allowed = 0;
        for (std::size_t k = 0; k < glued_ids.size(); ++k) {
            const std::size_t gi = l.facet_index(glued_ids[k]);
            to[gi] = k;
            allowed |= bit(gi);
        }
        std::vector<Face> faces;
        for (const auto& f : l.faces()) {
            if (!subset(f.facets, allowed)) continue;
            FacetMask m = 0;
            for (auto i : mask_indices(f.facets)) m |= bit(to[i]);
            if (m == vertex_in_out) continue;
            faces.push_back({m, f.dim});
        }
        auto sv = mask_indices(vertex_in_out);
        faces.push_back({bit(c), d - 1});
        for (FacetMask sub = 1; sub < (FacetMask{1} << sv.size()); ++sub) {
            if (popcount(sub) == static_cast<int>(sv.size())) continue;
            FacetMask m = bit(c);
            for (std::size_t i = 0; i < sv.size(); ++i)
                if (sub & (FacetMask{1} << i)) m |= bit(sv[i]);
            faces.push_back({m, d - 1 - popcount(sub)});
        }
        LabeledPolytope p{FaceLattice(d, ids, faces), {}};
        for (std::size_t a = 0; a < glued_ids.size(); ++a)
            for (std::size_t b = a + 1; b < glued_ids.size(); ++b)
                if (p.lattice.adjacent(a, b))
                    p.labels[{a, b}] = r.polytope.label(l.facet_index(glued_ids[a]), l.facet_index(glued_ids[b]));
        for (auto s : sv) p.labels[{s, c}] = 2;
        return p;
    };
    LabeledPolytope left = piece(r.left_facets, r.left_facets, r.left_vertex, r.left_cut);
    std::vector<std::string> glued_right;
    for (const auto& id : g2.lattice.facets()) glued_right.push_back(r.right_rename.at(id));
    LabeledPolytope right = piece(glued_right, g2.lattice.facets(), r.right_vertex, r.right_cut);
    return {left, right};
}

// ---------------------------------------------------------------- Vinberg faces

std::vector<PredictedFace> faces_from_cartan(const CartanMatrix& a, int d)
{
    const std::size_t n = a.size();
    if (n > 20) throw std::invalid_argument("faces_from_cartan supports at most 20 generators");
    if (matrix_components(a.entries()).size() != 1) throw std::invalid_argument("Cartan matrix is reducible");
    auto whole = type_decompose(a);
    if (!whole.all(MatrixType::Negative)) throw std::invalid_argument("Cartan matrix is not of negative type");
    if (matrix_rank(a) != d + 1) throw std::invalid_argument("Cartan matrix rank is not d+1");

    std::map<FacetMask, PredictedFace> found;
    std::vector<std::pair<FacetMask, TypeDecomposition>> types;
    for (FacetMask t = 1; t + 1 < (FacetMask{1} << n); ++t) {
        IndexSet idx = mask_indices(t);
        auto td = type_decompose(a.restrict_to(idx));
        // map component indices back to generator indices
        for (auto& c : td.components)
            for (auto& i : c.indices) i = idx[i];
        types.emplace_back(t, td);
        const int size = static_cast<int>(idx.size());
        if (td.all(MatrixType::Positive)) {
            if (d - size >= 0) found[t] = {idx, d - size, "spherical"};
            continue;
        }
        if (!td.all(MatrixType::Zero)) continue;
        const int rk = size - static_cast<int>(td.components.size());
        if (rk == d - 1) {
            found[t] = {idx, 0, "parabolic-vertex"};
            continue;
        }
        IndexSet z;
        for (std::size_t s = 0; s < n; ++s) {
            if (t & bit(s)) continue;
            bool perp = std::all_of(idx.begin(), idx.end(), [&](std::size_t u) { return a(s, u) == 0.0; });
            if (perp) z.push_back(s);
        }
        bool z_zero = false;
        if (!z.empty()) z_zero = type_decompose(a.restrict_to(z)).any(MatrixType::Zero);
        if (!z_zero) found[t] = {idx, d - 1 - rk, "zero-type"};
    }
    for (const auto& [t, td] : types) {
        if (found.count(t)) continue;
        FacetMask core = 0;
        int positive = 0;
        for (const auto& c : td.components)
            for (auto i : c.indices) {
                if (c.type == MatrixType::Positive)
                    ++positive;
                else
                    core |= bit(i);
            }
        if (core == 0 || core == t) continue;
        auto it = found.find(core);
        if (it == found.end() || it->second.dim < 0) continue;
        const int dim = it->second.dim - positive;
        if (dim >= 0) found[t] = {mask_indices(t), dim, "closure"};
    }
    std::vector<PredictedFace> out;
    for (auto& [t, f] : found) out.push_back(f);
    std::sort(out.begin(), out.end(), [](const PredictedFace& x, const PredictedFace& y) {
        return x.dim != y.dim ? x.dim > y.dim : x.facets < y.facets;
    });
    return out;
}

bool is_prismatic(const FaceLattice& l, FacetMask a)
{
    if (popcount(a) < 2) throw std::invalid_argument("prismatic subsets need at least two facets");
    if (l.intersection(a)) return false;
    const int k = popcount(a) - 1;
    for (auto i : mask_indices(a)) {
        auto face = l.intersection(a & ~bit(i));
        if (!face || face->dim != l.dim() - k) return false;
    }
    return true;
}

// ---------------------------------------------------------------- json

nlohmann::json to_json(const FaceLattice& l)
{
    nlohmann::json faces = nlohmann::json::array();
    for (const auto& f : l.faces()) faces.push_back({{"facets", l.names(f.facets)}, {"dim", f.dim}});
    return {{"dim", l.dim()}, {"facets", l.facets()}, {"faces", faces}};
}

nlohmann::json to_json(const LabeledPolytope& g)
{
    nlohmann::json j = to_json(g.lattice);
    nlohmann::json labels = nlohmann::json::object();
    for (auto [k, m] : g.labels) {
        const std::string key = g.lattice.facets()[k.first] + "," + g.lattice.facets()[k.second];
        if (is_inf(m))
            labels[key] = "inf";
        else
            labels[key] = m;
    }
    j["labels"] = labels;
    return j;
}

LabeledPolytope labeled_from_json(const nlohmann::json& j)
{
    auto ids = j.at("facets").get<std::vector<std::string>>();
    FaceLattice tmp(j.at("dim").get<int>(), ids, {});
    std::vector<Face> faces;
    for (const auto& f : j.at("faces")) faces.push_back({tmp.mask_of(f.at("facets").get<std::vector<std::string>>()), f.at("dim").get<int>()});
    LabeledPolytope g{FaceLattice(j.at("dim").get<int>(), ids, faces), {}};
    if (j.contains("labels"))
        for (const auto& [key, val] : j.at("labels").items()) {
            auto comma = key.find(',');
            std::size_t a = g.lattice.facet_index(key.substr(0, comma)), b = g.lattice.facet_index(key.substr(comma + 1));
            g.labels[{std::min(a, b), std::max(a, b)}] = val.is_string() ? kInf : val.get<int>();
        }
    return g;
}

}  // namespace coxpoly
