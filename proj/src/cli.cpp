#include "coxpoly/cli.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "coxpoly/cartan.hpp"
#include "coxpoly/deform.hpp"
#include "coxpoly/diagram.hpp"
#include "coxpoly/families.hpp"
#include "coxpoly/polytope.hpp"
#include "coxpoly/realize.hpp"
#include "coxpoly/relhyp.hpp"

namespace coxpoly {

namespace {

using json = nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownId : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    bool compact = false;
    unsigned long long seed = 0;
    double tol = 1e-9;
    int max_word_length = 5;
    std::string out_path;
};

struct Checks {
    json items = json::array();
    void add(const std::string& name, bool pass, json detail = nullptr)
    {
        json j = {{"name", name}, {"pass", pass}};
        if (!detail.is_null()) j["detail"] = std::move(detail);
        items.push_back(std::move(j));
    }
    std::size_t failed() const
    {
        std::size_t n = 0;
        for (const auto& c : items)
            if (!c["pass"].get<bool>()) ++n;
        return n;
    }
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_json_path(const std::string& path) { return path.size() > 5 && path.substr(path.size() - 5) == ".json"; }

const Family& family_or_throw(const std::string& id)
{
    try {
        return family(id);
    } catch (const std::out_of_range&) {
        throw UnknownId("unknown family '" + id + "'");
    }
}

int parse_order(const std::string& s)
{
    if (s == "inf" || s == "oo") return kInf;
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad order '" + s + "'", 1, 1);
    }
    if (pos != s.size() || v < 2) throw ParseError("bad order '" + s + "'", 1, 1);
    return v;
}

// "7", "inf", "3..9", or comma-separated combinations
std::vector<int> parse_m_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_order(item));
            continue;
        }
        const int a = parse_order(item.substr(0, dots)), b = parse_order(item.substr(dots + 2));
        if (is_inf(a) || is_inf(b) || b < a) throw ParseError("bad range '" + item + "'", 1, 1);
        for (int m = a; m <= b; ++m) out.push_back(m);
    }
    if (out.empty()) throw ParseError("empty m list", 1, 1);
    return out;
}

CoxeterSystem load_system(const std::string& path, std::optional<int> m)
{
    const std::string text = read_file(path);
    std::map<std::string, int> params;
    if (m) params["m"] = *m;
    return parse_system(text, params);
}

bool has_free_m(const std::string& path)
{
    auto free = parse_diagram(read_file(path)).free_parameters();
    return std::find(free.begin(), free.end(), "m") != free.end();
}

// the first bridge edge giving a supported two-block split
std::pair<std::vector<std::string>, std::vector<std::string>> auto_split(const CoxeterSystem& w)
{
    const std::size_t n = w.rank();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            if (!w.adjacent(u, v)) continue;
            std::vector<int> side(n, -1);
            std::vector<std::size_t> stack{u};
            side[u] = 0;
            while (!stack.empty()) {
                const std::size_t x = stack.back();
                stack.pop_back();
                for (auto y : w.neighbors(x)) {
                    if ((x == u && y == v) || (x == v && y == u) || side[y] != -1) continue;
                    side[y] = 0;
                    stack.push_back(y);
                }
            }
            if (side[v] != -1) continue;
            std::vector<std::string> left, right;
            for (std::size_t i = 0; i < n; ++i) (side[i] == 0 ? left : right).push_back(w.name(i));
            try {
                reduce(w, left, right);
                return {left, right};
            } catch (const UnsupportedFamily&) {
            }
        }
    throw UnsupportedFamily("no bridge edge splits the diagram into supported blocks");
}

json classes_json(const Realization& r, const VertexGeometry& g)
{
    json vs = json::array();
    for (const auto& v : g.vertices)
        vs.push_back({{"vertex", r.lattice.vertex_name(v.facets)}, {"class", vertex_class_name(v.cls)}, {"link", describe(v.link.system())}});
    return {{"vertices", vs},
            {"elliptic", g.count(VertexClass::Elliptic)},
            {"parabolic", g.count(VertexClass::Parabolic)},
            {"loxodromic", g.count(VertexClass::Loxodromic)},
            {"perfect", g.perfect},
            {"quasi_perfect", g.quasi_perfect}};
}

std::array<std::size_t, 3> class_counts(const VertexGeometry& g)
{
    return {g.count(VertexClass::Elliptic), g.count(VertexClass::Parabolic), g.count(VertexClass::Loxodromic)};
}

std::string name_of(const std::vector<std::string>& s)
{
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
    return out;
}

// ----------------------------------------------------------------- reproduce

// closed-form limit matrices, indices 1..6 of the cox_gp graphs
Eigen::MatrixXd closed_form_limit(int i, double mu)
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(6, 6);
    for (int k = 0; k < 6; ++k) a(k, k) = 2;
    a(0, 1) = a(1, 0) = a(1, 2) = a(2, 1) = a(0, 2) = a(2, 0) = -1;
    const double c34 = i == 2 ? std::cos(M_PI / 5) : 0.5;
    a(2, 3) = a(3, 2) = -2 * c34;
    a(3, 4) = a(4, 3) = -1;
    a(4, 5) = a(5, 4) = -2;
    if (i == 3) {
        a(3, 5) = -1 / mu;
        a(5, 3) = -mu;
    }
    return a;
}

VertexGeometry realized_classes(const Family& f, int m, std::optional<double> mu = std::nullopt)
{
    if (is_inf(m)) {
        auto lim = limit_family(f, mu);
        return classify_vertices(realize_cartan(lim.limit));
    }
    auto sp = deformation_space(f, m);
    if (sp.witnesses.empty()) throw std::runtime_error("empty deformation space for " + f.id);
    return classify_vertices(realize_cartan(family_cartan(f, m, sp.witnesses.front())));
}

std::optional<double> default_mu(const Family& f)
{
    if (cycle_rank(family_system(f, 7)) == 2) return 1.0;
    return std::nullopt;
}

void check_cox_gp(Checks& c, json& findings, double tol)
{
    const std::map<std::string, std::pair<std::array<std::size_t, 3>, std::array<std::size_t, 3>>> classes{
        {"G1", {{9, 0, 0}, {6, 1, 0}}}, {"G2", {{7, 0, 2}, {4, 1, 2}}}, {"G3", {{9, 0, 0}, {6, 1, 0}}}};
    for (int i = 1; i <= 3; ++i) {
        const Family& f = family("G" + std::to_string(i));
        json sizes = json::object();
        bool beta_ok = true, product_ok = true;
        double worst_det = 0;
        for (int m = 3; m <= 12; ++m) {
            auto sp = deformation_space(f, m);
            sizes[std::to_string(m)] = {space_kind_name(sp.kind), sp.components};
            for (double d : sp.witness_dets) worst_det = std::max(worst_det, std::abs(d));
            if (i < 3) {
                const bool want_empty = m <= 6;
                beta_ok = beta_ok && (want_empty ? sp.kind == SpaceKind::Empty
                                                 : sp.kind == SpaceKind::FinitePoints && sp.components == 2);
                if (!want_empty && sp.witnesses.size() == 2)
                    product_ok = product_ok && std::abs(sp.witnesses[0][0] * sp.witnesses[1][0] - 1) < tol;
            } else {
                beta_ok = beta_ok && sp.kind == SpaceKind::Curves && sp.components == (m == 3 ? 4u : 2u);
            }
        }
        findings[f.id]["beta"] = sizes;
        c.add(f.id + " deformation space sizes", beta_ok, sizes);
        if (i < 3) c.add(f.id + " the two points are dual (lambda0 * lambda1 = 1)", product_ok);
        c.add(f.id + " witnesses solve det = 0", worst_det < tol, worst_det);

        const double mu = 1.0;
        auto lim = limit_family(f, i == 3 ? std::optional<double>(mu) : std::nullopt);
        const double err = (lim.limit.entries() - closed_form_limit(i, mu)).cwiseAbs().maxCoeff();
        c.add(f.id + " lambda(m) decreases to 1", lim.decreasing && std::abs(lim.lambda_limit - 1) < 1e-9, lim.lambda_limit);
        c.add(f.id + " limit matrix", err < 1e-7, err);
        Realization r = realize_cartan(lim.limit);
        c.add(f.id + " limit polytope is the pyramid over the prism",
              r.lattice == family_lattice(f) && r.vertices.size() == 7, r.lattice.f_vector());
        const auto& want = classes.at(f.id);
        const auto fin = class_counts(realized_classes(f, 7)), inf = class_counts(classify_vertices(r));
        c.add(f.id + " vertex classes (m = 7)", fin == want.first, fin);
        c.add(f.id + " vertex classes (m = inf)", inf == want.second, inf);
        c.add(f.id + " limit is hyperbolic", is_hyperbolic(lim.limit));
        if (i == 3)
            for (double m2 : {0.5, 2.0}) {
                auto l2 = limit_family(f, m2);
                c.add("G3 limit at mu = " + std::to_string(m2) + " is not hyperbolic", !is_hyperbolic(l2.limit));
            }
        const LabeledPolytope filled = dehn_fill(family_polytope(f), cusp_vertex(f), 7);
        c.add(f.id + " Dehn filling of the cusp gives the m = 7 polytope", filled == family_polytope(f, 7));
        auto per = default_peripherals(family_system(f, 7));
        c.add(f.id + " peripheral subgroup", per.subsets == std::vector<Subset>{{"1", "2", "3", "5", "6"}}, per.subsets);
    }
}

// vertex-class claims for finite m
struct Claim {
    std::optional<bool> perfect;
    std::optional<std::size_t> parabolic, loxodromic;
};

std::optional<Claim> ex1_claim(const std::string& id)
{
    using P = std::optional<std::size_t>;
    static const std::map<std::string, Claim> claims{
        {"A-j5", {false, P{0}, P{}}},         {"A-j5-tri", {false, P{0}, P{}}},
        {"B-p3", {true, P{0}, P{0}}},         {"B-p3-q3", {true, P{0}, P{0}}},
        {"B-p4-q3", {false, P{1}, P{0}}},     {"B-p4-q4", {false, P{2}, P{0}}},
        {"B-p5", {false, P{0}, P{}}},         {"B-p5-q3", {false, P{0}, P{3}}},
        {"B-p5-q4", {false, P{1}, P{3}}},     {"B-p5-q5", {false, P{0}, P{6}}},
        {"C-chain", {true, P{}, P{}}},        {"C-tri", {true, P{}, P{}}},
        {"D-chain", {false, P{}, P{0}}},      {"D-tri", {false, P{}, P{0}}},
    };
    auto it = claims.find(id);
    if (it != claims.end()) return it->second;
    if (id.rfind("A-", 0) == 0) return Claim{true, std::nullopt, std::nullopt};
    return std::nullopt;
}

void check_ex1(const std::string& table, Checks& c, json& findings, double tol)
{
    for (const auto& f : families_in(table)) {
        const LabeledPolytope cusp = family_polytope(f);
        bool pre = true;
        try {
            prism_link(cusp, cusp_vertex(f));
        } catch (const DehnFillError&) {
            pre = false;
        }
        c.add(f.id + " cusp link is a Coxeter prism", pre);
        c.add(f.id + " Dehn filling gives the m = 7 labeled polytope", dehn_fill(cusp, cusp_vertex(f), 7) == family_polytope(f, 7));
        json sizes = json::object();
        bool nonempty = true;
        double worst = 0;
        for (int m : {7, 8, 10, 20}) {
            auto sp = deformation_space(f, m);
            sizes[std::to_string(m)] = {space_kind_name(sp.kind), sp.components};
            nonempty = nonempty && sp.kind != SpaceKind::Empty;
            for (double d : sp.witness_dets) worst = std::max(worst, std::abs(d));
        }
        findings[f.id]["beta"] = sizes;
        c.add(f.id + " deformation space nonempty for m = 7, 8, 10, 20", nonempty, sizes);
        c.add(f.id + " witnesses solve det = 0", worst < tol, worst);

        auto sp = deformation_space(f, 7);
        Realization r = realize_cartan(family_cartan(f, 7, sp.witnesses.front()));
        c.add(f.id + " realized m = 7 polytope", r.lattice == family_lattice(f, 7), r.lattice.f_vector());
        const VertexGeometry g7 = classify_vertices(r);
        const auto fin = class_counts(g7);
        findings[f.id]["classes_m7"] = fin;
        if (auto claim = ex1_claim(f.id)) {
            bool ok = true;
            if (claim->perfect) ok = ok && g7.perfect == *claim->perfect;
            if (claim->parabolic) ok = ok && fin[1] == *claim->parabolic;
            if (claim->loxodromic) ok = ok && fin[2] == *claim->loxodromic;
            c.add(f.id + " vertex classes (m = 7)", ok, fin);
        }
        auto lim = limit_family(f, default_mu(f));
        Realization ri = realize_cartan(lim.limit);
        const auto inf = class_counts(classify_vertices(ri));
        findings[f.id]["classes_inf"] = inf;
        c.add(f.id + " lambda(m) decreases to 1", lim.decreasing && std::abs(lim.lambda_limit - 1) < 1e-9);
        c.add(f.id + " limit polytope is the pyramid", ri.lattice == family_lattice(f));
        c.add(f.id + " the limit gains exactly the cusp", inf[1] == fin[1] + 1 && inf[2] == fin[2], inf);

        const std::string core = "tilde_A_" + std::to_string(f.dim - 2);
        for (int m : {7, kInf}) {
            const CoxeterSystem w = family_system(f, m);
            auto per = default_peripherals(w);
            std::vector<std::string> found;
            for (const auto& t : per.subsets) {
                bool has_loop = true;
                for (const auto& s : f.left) has_loop = has_loop && std::find(t.begin(), t.end(), s) != t.end();
                if (has_loop) found = summarize_peripheral(w, t).affine_components;
            }
            std::sort(found.begin(), found.end());
            std::vector<std::string> want{core};
            if (is_inf(m)) want.push_back("tilde_A_1");
            std::sort(want.begin(), want.end());
            c.add(f.id + " affine core of the cusp peripheral (m = " + order_to_string(m) + ")", found == want, found);
        }
    }
}

void check_fixed(const std::string& table, Checks& c, json& findings, double tol)
{
    for (const auto& f : families_in(table)) {
        auto sp = deformation_space(f);
        double worst = 0;
        for (double d : sp.witness_dets) worst = std::max(worst, std::abs(d));
        findings[f.id]["beta"] = {space_kind_name(sp.kind), sp.components};
        c.add(f.id + " deformation space nonempty", sp.kind != SpaceKind::Empty);
        c.add(f.id + " witnesses solve det = 0", worst < tol, worst);
        Realization r = realize_cartan(family_cartan(f, kInf, sp.witnesses.front()));
        c.add(f.id + " realized polytope is a product of simplices", r.lattice == family_lattice(f), r.lattice.f_vector());
        VertexGeometry g = classify_vertices(r);
        findings[f.id]["classes"] = class_counts(g);
        if (table == "ex2") {
            const bool lanner_pair = f.id == "ex2-d5a-k5" || f.id == "ex2-d5b" || f.id == "ex2-d5c";
            if (!lanner_pair) {
                c.add(f.id + " is perfect", g.perfect);
                continue;
            }
            c.add(f.id + " has two loxodromic vertices", g.count(VertexClass::Loxodromic) == 2 && g.quasi_perfect == false);
            Realization t = r;
            bool trunc_ok = true;
            for (const auto& v : g.vertices) {
                if (v.cls != VertexClass::Loxodromic) continue;
                const FacetMask mask = t.lattice.mask_of(r.lattice.names(v.facets));
                if (!truncatable(t, mask).truncatable) {
                    trunc_ok = false;
                    continue;
                }
                t = truncate_geometric(t, mask);
            }
            c.add(f.id + " truncating both loxodromic vertices gives a perfect polytope", trunc_ok && classify_vertices(t).perfect);
        } else {
            c.add(f.id + " is perfect", g.perfect);
            const CoxeterSystem w = family_system(f);
            std::vector<int> ranks;
            bool ok = true;
            for (const auto& t : default_peripherals(w).subsets) {
                const int k = summarize_peripheral(w, t).virtual_abelian_rank;
                ranks.push_back(k);
                ok = ok && (k == 2 || k == f.dim - 2);
            }
            c.add(f.id + " peripherals are virtually Z^2 or Z^(d-2)", ok && !ranks.empty(), ranks);
        }
    }
}

void check_appendix(Checks& c, json& findings, double tol)
{
    const double root = std::sqrt(1.5);
    json sym = json::object();
    bool ok = true;
    for (double l : {1.1, root, 2.0}) {
        const CartanMatrix a = appendix_cartan(l);
        const bool s = symmetrize(a, 1e-9).has_value();
        const double poly = 4 * std::pow(l, 4) - 8 * l * l + 3;
        sym[std::to_string(l)] = s;
        ok = ok && s == (std::abs(poly) < 1e-9);
    }
    findings["symmetrizable"] = sym;
    c.add("symmetrizable exactly at lambda = sqrt(3/2)", ok, sym);
    const Realization r2 = realization_from(appendix_system(), appendix_alpha(2.0), appendix_b(2.0));
    c.add("realized lattice is the pyramid over a quadrilateral", r2.lattice == appendix_polytope().lattice, r2.lattice.f_vector());
    const FacetMask apex = r2.lattice.mask_of({"2", "3", "4", "5"});
    const auto cert2 = truncatable(r2, apex);
    findings["span_dim_lambda_2"] = cert2.span_dim;
    c.add("apex not truncatable at lambda = 2", !cert2.truncatable && cert2.span_dim == 4, cert2.span_dim);
    const Realization rr = realization_from(appendix_system(), appendix_alpha(root), appendix_b(root));
    const auto certr = truncatable(rr, apex);
    findings["span_dim_lambda_root"] = certr.span_dim;
    c.add("poles at the apex span a hyperplane at lambda = sqrt(3/2)", certr.span_dim == 3, certr.span_dim);
    auto g = classify_vertices(r2);
    bool apex_lox = false;
    for (const auto& v : g.vertices)
        if (v.facets == apex) apex_lox = v.cls == VertexClass::Loxodromic;
    c.add("apex is loxodromic", apex_lox);
    c.add("apex link is not spherical or affine",
          classify_vertex(appendix_polytope(), appendix_polytope().lattice.mask_of({"2", "3", "4", "5"})) == VertexLabel::LargeOther);
    (void)tol;
}

void check_circle(Checks& c, json& findings, double tol)
{
    const Family& f = family("U");
    auto sp = circle_space(f);
    const double target = 8 * std::pow(std::cos(M_PI / 5), 2);
    findings["reduced"] = to_json(sp)["reduced"];
    c.add("deformation space is a circle", sp.kind == SpaceKind::Circle && sp.components == 1);
    c.add("reduced constant is 8 cos^2(pi/5)", std::abs(sp.reduced.b - target) < 1e-12, sp.reduced.b);
    const double at_one = (2 - sp.reduced.ax) * (2 - sp.reduced.ay) - sp.reduced.b;
    c.add("lambda = mu = 1 is excluded", std::abs(at_one) >= 1.2, at_one);
    double worst = 0;
    for (double d : sp.witness_dets) worst = std::max(worst, std::abs(d));
    c.add("witnesses solve det = 0", sp.witnesses.size() >= 64 && worst < tol, worst);
    bool bounded = sp.x_range && sp.y_range;
    if (bounded)
        for (const auto& w : sp.witnesses) {
            const double x = w[0] + 1 / w[0], y = w[1] + 1 / w[1];
            bounded = bounded && x <= sp.x_range->second + 1e-9 && y <= sp.y_range->second + 1e-9;
        }
    c.add("solutions stay in the closed-form box", bounded);
    c.add("Coxeter group is Gromov-hyperbolic", caprace_check(family_system(f), {}).holds);
    const Family& v = family("V");
    const LabeledPolytope gv = family_polytope(v);
    bool rejected = false;
    std::string group;
    try {
        prism_link(gv, gv.lattice.find_vertex("v2345"));
    } catch (const DehnFillError& e) {
        rejected = true;
        group = e.link_group;
    }
    c.add("V: the tilde C_3 vertex is not a Dehn filling site", rejected, group);
}

json run_report(const std::string& command, json inputs, json findings, const Checks& c)
{
    const std::size_t failed = c.failed();
    return {{"command", command},
            {"inputs", std::move(inputs)},
            {"findings", std::move(findings)},
            {"checks", {{"passed", c.items.size() - failed}, {"failed", failed}, {"items", c.items}}}};
}

}  // namespace

bool TableReport::passed() const
{
    for (const auto& c : checks)
        if (!c["pass"].get<bool>()) return false;
    return true;
}

std::vector<std::string> reproduce_ids() { return {"cox_gp", "ex1A", "ex1B", "ex1C", "ex1D", "ex2", "mix", "appendixB", "circle"}; }

TableReport reproduce(const std::string& table, double tol, unsigned long long seed)
{
    (void)seed;
    Checks c;
    TableReport r;
    if (table == "cox_gp")
        check_cox_gp(c, r.findings, tol);
    else if (table.rfind("ex1", 0) == 0 && table.size() == 4 && families_in(table).size())
        check_ex1(table, c, r.findings, tol);
    else if (table == "ex2" || table == "mix")
        check_fixed(table, c, r.findings, tol);
    else if (table == "appendixB")
        check_appendix(c, r.findings, tol);
    else if (table == "circle")
        check_circle(c, r.findings, tol);
    else
        throw std::out_of_range("unknown table '" + table + "'");
    r.checks = c.items;
    return r;
}

namespace {

struct Source {
    std::string path;
    std::string family_id;
    std::string m = "";
    std::vector<double> params;
    std::optional<double> mu;
    int witness = 0;
};

void add_source(CLI::App* cmd, Source& s, bool with_m = true)
{
    cmd->add_option("file", s.path, "DSL file (or JSON dump)");
    cmd->add_option("--family", s.family_id, "built-in family id");
    if (with_m) cmd->add_option("--m", s.m, "value of the parameter m: 7, inf, 3..9 or a comma list");
}

// a Cartan matrix from a JSON dump, explicit parameters, or a deformation witness
CartanMatrix source_cartan(const Source& s, json& inputs)
{
    if (!s.path.empty() && is_json_path(s.path)) {
        inputs["cartan_json"] = s.path;
        return cartan_from_json(json::parse(read_file(s.path)));
    }
    std::optional<int> m;
    if (!s.m.empty()) m = parse_m_list(s.m).front();
    CoxeterSystem w;
    std::optional<Family> fam;
    if (!s.family_id.empty()) {
        fam = family_or_throw(s.family_id);
        if (fam->has_m && !m) throw ParseError("family " + fam->id + " needs --m", 1, 1);
        w = family_system(*fam, m.value_or(kInf));
        inputs["family"] = fam->id;
    } else {
        if (s.path.empty()) throw ParseError("no input: give a file or --family", 1, 1);
        w = load_system(s.path, m);
        inputs["file"] = s.path;
    }
    if (m) inputs["m"] = order_to_string(*m);
    if (!s.params.empty()) {
        inputs["params"] = s.params;
        return build_special_form(w, s.params);
    }
    DeformationSpace sp;
    if (fam) {
        sp = deformation_space(*fam, m.value_or(kInf));
    } else {
        auto [l, r] = auto_split(w);
        sp = deformation_space(w, l, r);
    }
    std::vector<double> p;
    if (s.mu && sp.reduced.cycles == 2) {
        auto ws = witnesses_at(sp.reduced, *s.mu);
        if (ws.empty()) throw std::runtime_error("no polytope with this mu");
        p = {ws.front(), *s.mu};
    } else {
        if (sp.witnesses.empty()) throw std::runtime_error("the deformation space is empty");
        if (s.witness < 0 || static_cast<std::size_t>(s.witness) >= sp.witnesses.size())
            throw std::out_of_range("witness index out of range");
        p = sp.witnesses[static_cast<std::size_t>(s.witness)];
    }
    inputs["params"] = p;
    return build_special_form(w, p);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    CLI::App app{"Coxeter polytopes, deformation spaces and Dehn fillings"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.compact, "compact JSON output");
    app.add_option("--seed", opt.seed, "sampling seed");
    app.add_option("--tol", opt.tol, "numerical tolerance for checks");
    app.add_option("--max-word-length", opt.max_word_length, "orbit word length");
    app.add_option("--out", opt.out_path, "output file (PLY for orbit, JSON otherwise)");

    Source src;
    std::string table, mu_text;
    std::vector<std::string> peripherals, vertices;
    int samples = 64, big_m = 1000000, orbit_samples = 2000;

    auto* classify = app.add_subcommand("classify", "classify a Coxeter diagram");
    add_source(classify, src);
    auto* deform = app.add_subcommand("deform", "deformation space of a labeled polytope");
    add_source(deform, src);
    deform->add_option("--mu", src.mu, "mu value for two-cycle families");
    deform->add_option("--samples", samples, "witness samples");
    auto* limit = app.add_subcommand("limit", "limit of P_m as m goes to infinity");
    limit->add_option("--family", src.family_id)->required();
    limit->add_option("--mu", src.mu);
    limit->add_option("--big-m", big_m);
    auto* realize = app.add_subcommand("realize", "realize a Cartan matrix as a polytope");
    add_source(realize, src);
    realize->add_option("--param", src.params, "special-form parameters (lambda, mu)");
    realize->add_option("--mu", src.mu);
    realize->add_option("--witness", src.witness, "index of the deformation witness");
    auto* orbit = app.add_subcommand("orbit", "explore the orbit of the polytope");
    add_source(orbit, src);
    orbit->add_option("--param", src.params);
    orbit->add_option("--mu", src.mu);
    orbit->add_option("--witness", src.witness);
    orbit->add_option("--samples", orbit_samples, "overlap samples");
    auto* relhyp = app.add_subcommand("relhyp", "relative hyperbolicity of the Coxeter group");
    add_source(relhyp, src);
    relhyp->add_option("--peripheral", peripherals, "peripheral subset, comma separated (repeatable)");
    auto* truncate = app.add_subcommand("truncate", "truncate vertices of a labeled polytope");
    add_source(truncate, src);
    truncate->add_option("--vertex", vertices, "vertex name such as v1345 (repeatable)");
    auto* repro = app.add_subcommand("reproduce", "run the checks for a table of examples");
    repro->add_option("table", table, "cox_gp, ex1A, ex1B, ex1C, ex1D, ex2, mix, appendixB, circle")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? 0 : 2;
    }

    json inputs = json::object(), findings = json::object();
    Checks checks;
    std::string command;
    try {
        if (*classify) {
            command = "classify";
            if (src.path.empty()) throw ParseError("classify needs a file", 1, 1);
            std::optional<int> m;
            if (!src.m.empty()) m = parse_m_list(src.m).front();
            const CoxeterSystem w = load_system(src.path, m);
            inputs["file"] = src.path;
            json comps = json::array();
            for (const auto& c : split_components(w)) {
                auto l = classify_irreducible(c);
                comps.push_back({{"generators", c.generators()}, {"kind", kind_name(l.kind)}, {"catalog", l.catalog_name ? json(*l.catalog_name) : json(nullptr)}});
            }
            std::string summary;
            if (is_irreducible(w)) {
                auto l = classify_irreducible(w);
                summary = kind_name(l.kind) + (l.catalog_name ? " " + *l.catalog_name : std::string(" (irreducible)"));
            } else {
                summary = describe(w);
            }
            findings = {{"system", serialize(w)}, {"summary", summary}, {"components", comps}};
            if (w.rank() <= 16) {
                json aff = json::array();
                for (const auto& s : affine_subsystems(w, 3)) aff.push_back(name_of(s));
                findings["affine_subsystems_rank3"] = aff;
            }
        } else if (*deform) {
            command = "deform";
            std::vector<int> ms{kInf};
            std::optional<Family> fam;
            if (!src.family_id.empty()) {
                fam = family_or_throw(src.family_id);
                inputs["family"] = fam->id;
                if (fam->has_m) ms = parse_m_list(src.m.empty() ? "7" : src.m);
            } else {
                if (src.path.empty()) throw ParseError("deform needs a file or --family", 1, 1);
                inputs["file"] = src.path;
                if (has_free_m(src.path)) ms = parse_m_list(src.m.empty() ? "7" : src.m);
            }
            json per_m = json::array();
            for (int m : ms) {
                DeformationSpace sp;
                if (fam) {
                    sp = deformation_space(*fam, m, samples);
                } else {
                    const CoxeterSystem w = load_system(src.path, is_inf(m) ? std::nullopt : std::optional<int>(m));
                    auto [l, r] = auto_split(w);
                    sp = deformation_space(w, l, r, samples);
                }
                json j = to_json(sp);
                if (!is_inf(m) || (fam && fam->has_m)) j["m"] = order_to_string(m);
                if (src.mu && sp.reduced.cycles == 2) j["witnesses_at_mu"] = witnesses_at(sp.reduced, *src.mu);
                double worst = 0;
                for (double d : sp.witness_dets) worst = std::max(worst, std::abs(d));
                checks.add("witnesses solve det = 0" + (is_inf(m) ? std::string() : " (m = " + std::to_string(m) + ")"), worst < opt.tol, worst);
                per_m.push_back(j);
            }
            findings["spaces"] = per_m;
        } else if (*limit) {
            command = "limit";
            const Family& f = family_or_throw(src.family_id);
            inputs["family"] = f.id;
            if (src.mu) inputs["mu"] = *src.mu;
            auto lim = limit_family(f, src.mu, big_m);
            json pred = json::array();
            for (const auto& p : lim.predicted) {
                std::vector<std::string> names;
                for (auto i : p.facets) names.push_back(lim.limit.system().name(i));
                pred.push_back({{"facets", names}, {"dim", p.dim}, {"tag", p.tag}});
            }
            Realization r = realize_cartan(lim.limit);
            findings = {{"ms", lim.ms},
                        {"lambdas", lim.lambdas},
                        {"decreasing", lim.decreasing},
                        {"x_limit", lim.x_limit},
                        {"lambda_limit", lim.lambda_limit},
                        {"extrapolation_error", lim.extrapolation_error},
                        {"limit", to_json(lim.limit)},
                        {"predicted_faces", pred},
                        {"f_vector", r.lattice.f_vector()},
                        {"hyperbolic", is_hyperbolic(lim.limit)}};
            checks.add("lambda(m) decreasing", lim.decreasing);
            checks.add("limit lattice is the pyramid", r.lattice == family_lattice(f));
        } else if (*realize) {
            command = "realize";
            const CartanMatrix a = source_cartan(src, inputs);
            Realization r = realize_cartan(a);
            auto refl = reflections_of(r);
            auto g = classify_vertices(r);
            findings = to_json(r);
            findings["classes"] = classes_json(r, g);
            findings["reflections"] = {{"involution_error", refl.involution_error}, {"relation_error", refl.relation_error}};
            findings["hyperbolic"] = is_hyperbolic(r);
            checks.add("round trip of the Cartan matrix", are_equivalent(cartan_of(r), a, 1e-9));
            checks.add("face lattice is consistent", r.lattice.validate().empty());
            checks.add("finite-order relations hold", refl.relation_error < 1e-7, refl.relation_error);
            if (!src.family_id.empty()) {
                const Family& f = family(src.family_id);
                const int m = src.m.empty() ? kInf : parse_m_list(src.m).front();
                checks.add("face lattice matches the labeled polytope", r.lattice == family_lattice(f, m));
            }
        } else if (*orbit) {
            command = "orbit";
            const CartanMatrix a = source_cartan(src, inputs);
            Realization r = realize_cartan(a);
            inputs["max_word_length"] = opt.max_word_length;
            inputs["seed"] = opt.seed;
            auto o = orbit_explore(r, opt.max_word_length, orbit_samples, opt.seed);
            findings = {{"elements", o.elements.size()}, {"pair_checks", o.pair_checks}, {"overlap_violations", o.overlap_violations},
                        {"hull_samples", o.hull_samples.size()}};
            checks.add("no sampled tile overlaps", o.overlap_violations == 0, o.overlap_violations);
            if (!opt.out_path.empty()) {
                std::ofstream f(opt.out_path);
                if (!f) throw IoError("cannot write " + opt.out_path);
                write_ply(f, r, o);
                findings["ply"] = opt.out_path;
            }
        } else if (*relhyp) {
            command = "relhyp";
            CoxeterSystem w;
            if (!src.family_id.empty()) {
                const Family& f = family_or_throw(src.family_id);
                w = family_system(f, src.m.empty() ? kInf : parse_m_list(src.m).front());
                inputs["family"] = f.id;
            } else {
                if (src.path.empty()) throw ParseError("relhyp needs a file or --family", 1, 1);
                w = load_system(src.path, src.m.empty() ? std::nullopt : std::optional<int>(parse_m_list(src.m).front()));
                inputs["file"] = src.path;
            }
            PeripheralCollection given;
            for (const auto& p : peripherals) {
                Subset s;
                std::stringstream ss(p);
                std::string x;
                while (std::getline(ss, x, ',')) s.push_back(x);
                given.subsets.push_back(s);
            }
            inputs["peripherals"] = peripherals;
            const RelHypVerdict gv = caprace_check(w, given);
            findings["verdict"] = to_json(gv);
            if (!peripherals.empty()) checks.add("given peripherals satisfy the four conditions", gv.holds);
            auto def = default_peripherals(w);
            json summaries = json::array();
            for (const auto& t : def.subsets) {
                auto s = summarize_peripheral(w, t);
                summaries.push_back({{"subset", s.subset}, {"description", s.description}, {"affine_components", s.affine_components},
                                     {"virtual_abelian_rank", s.virtual_abelian_rank}});
            }
            findings["default_peripherals"] = summaries;
            const RelHypVerdict dv = caprace_check(w, def);
            findings["default_verdict"] = to_json(dv);
            checks.add("default peripherals satisfy the four conditions", dv.holds);
        } else if (*truncate) {
            command = "truncate";
            LabeledPolytope g;
            std::optional<Family> fam;
            int m = kInf;
            if (!src.family_id.empty()) {
                fam = family_or_throw(src.family_id);
                if (!src.m.empty()) m = parse_m_list(src.m).front();
                g = family_polytope(*fam, m);
                inputs["family"] = fam->id;
                inputs["m"] = order_to_string(m);
            } else {
                if (src.path.empty()) throw ParseError("truncate needs a labeled polytope JSON or --family", 1, 1);
                g = labeled_from_json(json::parse(read_file(src.path)));
                inputs["file"] = src.path;
            }
            std::vector<FacetMask> vs;
            for (const auto& v : vertices) vs.push_back(g.lattice.find_vertex(v));
            if (vs.empty())
                for (const auto& [v, label] : perfectness_report(g).vertices)
                    if (label == VertexLabel::Lanner) vs.push_back(v);
            json names = json::array();
            for (auto v : vs) names.push_back(g.lattice.vertex_name(v));
            inputs["vertices"] = names;
            const LabeledPolytope t = truncate_labeled(g, vs);
            const auto rep = perfectness_report(t);
            findings = {{"polytope", to_json(t)}, {"perfect", rep.perfect}, {"two_perfect", rep.two_perfect}};
            checks.add("truncated lattice is consistent", t.lattice.validate().empty());
            if (fam) {
                auto sp = deformation_space(*fam, m);
                if (!sp.witnesses.empty()) {
                    Realization r = realize_cartan(family_cartan(*fam, m, sp.witnesses.front()));
                    bool ok = true;
                    for (auto v : vs) {
                        const FacetMask cur = r.lattice.mask_of(g.lattice.names(v));
                        if (!truncatable(r, cur).truncatable) {
                            ok = false;
                            break;
                        }
                        r = truncate_geometric(r, cur);
                    }
                    checks.add("geometric truncation matches", ok && r.lattice == t.lattice);
                    if (ok) findings["geometric_classes"] = classes_json(r, classify_vertices(r));
                }
            }
        } else if (*repro) {
            command = "reproduce";
            inputs["table"] = table;
            const auto ids = reproduce_ids();
            if (std::find(ids.begin(), ids.end(), table) == ids.end()) throw UnknownId("unknown table '" + table + "'");
            TableReport r = reproduce(table, opt.tol, opt.seed);
            findings = r.findings;
            checks.items = r.checks;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        err << "JSON error: " << e.what() << '\n';
        return 2;
    } catch (const UnsupportedFamily& e) {
        err << "unsupported family: " << e.what() << '\n';
        return 3;
    } catch (const UnknownId& e) {
        err << "unknown id: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    const json report = run_report(command, inputs, findings, checks);
    const std::string text = opt.compact ? report.dump() : report.dump(2);
    out << text << '\n';
    if (!opt.out_path.empty() && command != "orbit") {
        std::ofstream f(opt.out_path);
        if (!f) {
            err << "error: cannot write " << opt.out_path << '\n';
            return 2;
        }
        f << text << '\n';
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::size_t failed = checks.failed();
    err << command << ": " << checks.items.size() - failed << " checks passed, " << failed << " failed (" << secs << " s)\n";
    for (const auto& c : checks.items)
        if (!c["pass"].get<bool>()) err << "  FAIL " << c["name"].get<std::string>() << '\n';
    return failed == 0 ? 0 : 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv;
    argv.push_back("coxtool");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace coxpoly
