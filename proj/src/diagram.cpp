#include "coxpoly/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace coxpoly {

double cos_pi_over(int m)
{
    if (is_inf(m)) return 1.0;
    if (m == 2) return 0.0;
    if (m == 3) return 0.5;
    return std::cos(M_PI / m);
}

double sin2_pi_over(int m)
{
    if (is_inf(m)) return 0.0;
    double s = std::sin(M_PI / m);
    return s * s;
}

std::string order_to_string(int m) { return is_inf(m) ? "inf" : std::to_string(m); }

CoxeterSystem::CoxeterSystem(std::vector<std::string> generators) : gens_(std::move(generators))
{
    const std::size_t n = gens_.size();
    std::set<std::string> seen(gens_.begin(), gens_.end());
    if (seen.size() != n) throw std::invalid_argument("duplicate generator name");
    orders_.assign(n * n, 2);
    for (std::size_t i = 0; i < n; ++i) orders_[i * n + i] = 1;
}

int CoxeterSystem::order(const std::string& s, const std::string& t) const
{
    return order(index_of(s), index_of(t));
}

void CoxeterSystem::set_order(std::size_t i, std::size_t j, int m)
{
    if (i == j) throw std::invalid_argument("cannot set a diagonal order");
    if (m < 2) throw std::invalid_argument("Coxeter order must be >= 2");
    const std::size_t n = gens_.size();
    orders_[i * n + j] = m;
    orders_[j * n + i] = m;
}

std::optional<std::size_t> CoxeterSystem::find(const std::string& s) const
{
    auto it = std::find(gens_.begin(), gens_.end(), s);
    if (it == gens_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - gens_.begin());
}

std::size_t CoxeterSystem::index_of(const std::string& s) const
{
    auto i = find(s);
    if (!i) throw std::out_of_range("unknown generator '" + s + "'");
    return *i;
}

std::vector<std::size_t> CoxeterSystem::neighbors(std::size_t i) const
{
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < rank(); ++j)
        if (adjacent(i, j)) out.push_back(j);
    return out;
}

std::size_t CoxeterSystem::edge_count() const
{
    std::size_t e = 0;
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = i + 1; j < rank(); ++j)
            if (adjacent(i, j)) ++e;
    return e;
}

ParseError::ParseError(const std::string& msg, int l, int c)
    : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg), line(l),
      column(c)
{
}

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { Ident, DotDot, Dash, Colon, Semi, Comma, Eq, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view src)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto adv = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') adv(1);
            continue;
        }
        if (c == '\n') {
            // a newline ends a statement just like ';'
            out.push_back({Tok::Semi, "\n", line, col});
            adv(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
            continue;
        }
        int l = line, cc = col;
        if (ident_char(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cc});
            adv(j - i);
            continue;
        }
        if (c == '.' && i + 1 < src.size() && src[i + 1] == '.') {
            out.push_back({Tok::DotDot, "..", l, cc});
            adv(2);
            continue;
        }
        Tok k;
        switch (c) {
        case '-': k = Tok::Dash; break;
        case ':': k = Tok::Colon; break;
        case ';': k = Tok::Semi; break;
        case ',': k = Tok::Comma; break;
        case '=': k = Tok::Eq; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", l, cc);
        }
        out.push_back({k, std::string(1, c), l, cc});
        adv(1);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

bool is_int(const std::string& s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    Diagram run()
    {
        while (peek().kind != Tok::End) {
            if (peek().kind == Tok::Semi) {
                ++p_;
                continue;
            }
            statement();
            if (peek().kind != Tok::Semi && peek().kind != Tok::End)
                throw err("expected ';' between statements");
        }
        if (d_.nodes.empty()) throw ParseError("no nodes declared", 1, 1);
        return d_;
    }

private:
    const Token& peek() const { return t_[p_]; }
    const Token& take() { return t_[p_++]; }
    ParseError err(const std::string& msg) const { return ParseError(msg, peek().line, peek().col); }

    const Token& expect(Tok k, const char* what)
    {
        if (peek().kind != k) throw err(std::string("expected ") + what);
        return take();
    }

    void statement()
    {
        const Token& first = expect(Tok::Ident, "statement");
        if (first.text == "nodes" && peek().kind == Tok::Ident) {
            nodes();
        } else if (first.text == "let" && peek().kind == Tok::Ident) {
            let();
        } else {
            edge(first);
        }
    }

    void add_node(const Token& tk, const std::string& name)
    {
        if (std::find(d_.nodes.begin(), d_.nodes.end(), name) != d_.nodes.end())
            throw ParseError("node '" + name + "' declared twice", tk.line, tk.col);
        d_.nodes.push_back(name);
    }

    void nodes()
    {
        const Token& a = expect(Tok::Ident, "node name");
        if (peek().kind == Tok::DotDot) {
            take();
            const Token& b = expect(Tok::Ident, "range end");
            if (!is_int(a.text) || !is_int(b.text)) throw ParseError("range bounds must be integers", a.line, a.col);
            long lo = std::stol(a.text), hi = std::stol(b.text);
            if (hi < lo) throw ParseError("empty node range", b.line, b.col);
            for (long v = lo; v <= hi; ++v) add_node(a, std::to_string(v));
            return;
        }
        add_node(a, a.text);
        while (peek().kind == Tok::Comma) {
            take();
            const Token& b = expect(Tok::Ident, "node name");
            add_node(b, b.text);
        }
    }

    void let()
    {
        const Token& name = expect(Tok::Ident, "parameter name");
        expect(Tok::Eq, "'='");
        const Token& v = expect(Tok::Ident, "integer or inf");
        if (d_.lets.count(name.text)) throw ParseError("parameter '" + name.text + "' bound twice", name.line, name.col);
        d_.lets[name.text] = order_value(v);
    }

    int order_value(const Token& v)
    {
        if (v.text == "inf") return kInf;
        if (!is_int(v.text)) throw ParseError("expected integer or inf", v.line, v.col);
        if (v.text.size() > 9) throw ParseError("order too large", v.line, v.col);
        int m = std::stoi(v.text);
        if (m < 2) throw ParseError("Coxeter order must be at least 2", v.line, v.col);
        return m;
    }

    void edge(const Token& a)
    {
        expect(Tok::Dash, "'-' in edge");
        const Token& b = expect(Tok::Ident, "node name");
        Diagram::Edge e{a.text, b.text, 3, a.line, a.col};
        if (peek().kind == Tok::Colon) {
            take();
            const Token& o = expect(Tok::Ident, "edge order");
            if (o.text == "inf" || is_int(o.text))
                e.order = order_value(o);
            else
                e.order = o.text;
        }
        for (const std::string* s : {&a.text, &b.text})
            if (std::find(d_.nodes.begin(), d_.nodes.end(), *s) == d_.nodes.end())
                throw ParseError("unknown node '" + *s + "'", a.line, a.col);
        if (a.text == b.text) throw ParseError("self-edge on '" + a.text + "'", a.line, a.col);
        for (const auto& f : d_.edges)
            if ((f.a == e.a && f.b == e.b) || (f.a == e.b && f.b == e.a))
                throw ParseError("duplicate edge " + a.text + "-" + b.text, a.line, a.col);
        d_.edges.push_back(std::move(e));
    }

    std::vector<Token> t_;
    std::size_t p_ = 0;
    Diagram d_;
};

}  // namespace

Diagram parse_diagram(std::string_view text) { return Parser(lex(text)).run(); }

std::vector<std::string> Diagram::free_parameters() const
{
    std::vector<std::string> out;
    for (const auto& e : edges)
        if (auto* s = std::get_if<std::string>(&e.order))
            if (!lets.count(*s) && std::find(out.begin(), out.end(), *s) == out.end()) out.push_back(*s);
    return out;
}

CoxeterSystem Diagram::bind(const std::map<std::string, int>& params) const
{
    CoxeterSystem w(nodes);
    for (const auto& e : edges) {
        int m;
        if (auto* s = std::get_if<std::string>(&e.order)) {
            auto it = params.find(*s);
            if (it != params.end()) {
                m = it->second;
            } else if (auto jt = lets.find(*s); jt != lets.end()) {
                m = jt->second;
            } else {
                throw ParseError("unbound parameter '" + *s + "'", e.line, e.column);
            }
            if (m < 2) throw ParseError("parameter '" + *s + "' must be at least 2", e.line, e.column);
        } else {
            m = std::get<int>(e.order);
        }
        w.set_order(w.index_of(e.a), w.index_of(e.b), m);
    }
    return w;
}

CoxeterSystem parse_system(std::string_view text, const std::map<std::string, int>& params)
{
    return parse_diagram(text).bind(params);
}

std::string serialize(const CoxeterSystem& w)
{
    std::ostringstream os;
    const auto& g = w.generators();
    bool range = !g.empty() && std::all_of(g.begin(), g.end(), [](const std::string& s) {
        return is_int(s) && (s == "0" || s[0] != '0') && s.size() < 9;
    });
    if (range) {
        long first = std::stol(g[0]);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (std::stol(g[i]) != first + static_cast<long>(i)) range = false;
    }
    os << "nodes ";
    if (range) {
        os << g.front() << ".." << g.back();
    } else {
        for (std::size_t i = 0; i < g.size(); ++i) os << (i ? ", " : "") << g[i];
    }
    for (std::size_t i = 0; i < w.rank(); ++i)
        for (std::size_t j = i + 1; j < w.rank(); ++j) {
            int m = w.order(i, j);
            if (m == 2) continue;
            os << "; " << g[i] << "-" << g[j];
            if (m != 3) os << ":" << order_to_string(m);
        }
    return os.str();
}

Eigen::MatrixXd gram_matrix(const CoxeterSystem& w)
{
    const auto n = static_cast<Eigen::Index>(w.rank());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = i == j ? 2.0 : -2.0 * cos_pi_over(w.order(i, j));
    return g;
}

CoxeterSystem subsystem(const CoxeterSystem& w, const std::vector<std::size_t>& idx)
{
    std::vector<std::string> names;
    for (auto i : idx) names.push_back(w.name(i));
    CoxeterSystem out(names);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) out.set_order(a, b, w.order(idx[a], idx[b]));
    return out;
}

CoxeterSystem subsystem(const CoxeterSystem& w, const std::vector<std::string>& names)
{
    std::vector<std::size_t> idx;
    for (const auto& s : names) idx.push_back(w.index_of(s));
    return subsystem(w, idx);
}

std::vector<std::vector<std::size_t>> component_indices(const CoxeterSystem& w)
{
    const std::size_t n = w.rank();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        const int c = static_cast<int>(out.size());
        std::vector<std::size_t> stack{s};
        comp[s] = c;
        std::vector<std::size_t> members;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (auto u : w.neighbors(v))
                if (comp[u] < 0) {
                    comp[u] = c;
                    stack.push_back(u);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(members);
    }
    return out;
}

std::vector<CoxeterSystem> split_components(const CoxeterSystem& w)
{
    std::vector<CoxeterSystem> out;
    for (const auto& c : component_indices(w)) out.push_back(subsystem(w, c));
    return out;
}

bool is_irreducible(const CoxeterSystem& w) { return w.rank() > 0 && component_indices(w).size() == 1; }

std::string kind_name(Kind k)
{
    switch (k) {
    case Kind::Spherical: return "Spherical";
    case Kind::Affine: return "Affine";
    case Kind::Lanner: return "Lanner";
    case Kind::Large: return "Large";
    }
    return "?";
}

// ---------------------------------------------------------------- isomorphism

namespace {

std::vector<int> node_signature(const CoxeterSystem& w, std::size_t i)
{
    std::vector<int> sig;
    for (std::size_t j = 0; j < w.rank(); ++j)
        if (w.adjacent(i, j)) sig.push_back(w.order(i, j));
    std::sort(sig.begin(), sig.end());
    return sig;
}

// second-round refinement: own signature plus sorted neighbour signatures
std::vector<std::vector<int>> refined_signature(const CoxeterSystem& w, std::size_t i)
{
    std::vector<std::vector<int>> out{node_signature(w, i)};
    std::vector<std::vector<int>> nb;
    for (auto j : w.neighbors(i)) {
        auto s = node_signature(w, j);
        s.insert(s.begin(), w.order(i, j));
        nb.push_back(std::move(s));
    }
    std::sort(nb.begin(), nb.end());
    out.insert(out.end(), nb.begin(), nb.end());
    return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> isomorphisms(const CoxeterSystem& a, const CoxeterSystem& b, std::size_t limit)
{
    std::vector<std::vector<std::size_t>> found;
    const std::size_t n = a.rank();
    if (n != b.rank() || a.edge_count() != b.edge_count()) return found;
    std::vector<std::vector<std::vector<int>>> sa(n), sb(n);
    for (std::size_t i = 0; i < n; ++i) {
        sa[i] = refined_signature(a, i);
        sb[i] = refined_signature(b, i);
    }
    {
        auto x = sa, y = sb;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        if (x != y) return found;
    }
    // assign nodes of `a` in BFS order so that each new node touches mapped ones
    std::vector<std::size_t> order;
    std::vector<bool> seen(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> q{s};
        seen[s] = true;
        for (std::size_t k = 0; k < q.size(); ++k) {
            order.push_back(q[k]);
            for (auto u : a.neighbors(q[k]))
                if (!seen[u]) {
                    seen[u] = true;
                    q.push_back(u);
                }
        }
    }
    std::vector<std::size_t> map(n, n);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (found.size() >= limit) return;
        if (k == n) {
            found.push_back(map);
            return;
        }
        const std::size_t i = order[k];
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || sa[i] != sb[j]) continue;
            bool ok = true;
            for (std::size_t kk = 0; kk < k && ok; ++kk) {
                const std::size_t p = order[kk];
                ok = a.order(i, p) == b.order(j, map[p]);
            }
            if (!ok) continue;
            map[i] = j;
            used[j] = true;
            self(self, k + 1);
            used[j] = false;
            map[i] = n;
        }
    };
    rec(rec, 0);
    return found;
}

bool isomorphic(const CoxeterSystem& a, const CoxeterSystem& b) { return !isomorphisms(a, b, 1).empty(); }

// ---------------------------------------------------------------- catalogs

namespace {

struct Builder {
    CoxeterSystem w;
    explicit Builder(std::size_t n)
    {
        std::vector<std::string> g;
        for (std::size_t i = 1; i <= n; ++i) g.push_back(std::to_string(i));
        w = CoxeterSystem(g);
    }
    Builder& e(std::size_t i, std::size_t j, int m = 3)
    {
        w.set_order(i, j, m);
        return *this;
    }
    // path i0 - i0+1 - ... - i1 with label 3
    Builder& path(std::size_t i0, std::size_t i1)
    {
        for (std::size_t i = i0; i < i1; ++i) e(i, i + 1);
        return *this;
    }
};

CatalogEntry entry(std::string name, Kind k, const Builder& b) { return {std::move(name), k, b.w}; }

std::string nm(const char* base, std::size_t n) { return std::string(base) + std::to_string(n); }

// chain with explicit labels
Builder chain(const std::vector<int>& labels)
{
    Builder b(labels.size() + 1);
    for (std::size_t i = 0; i < labels.size(); ++i) b.e(i, i + 1, labels[i]);
    return b;
}

Builder cycle(const std::vector<int>& labels)
{
    Builder b(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) b.e(i, (i + 1) % labels.size(), labels[i]);
    return b;
}

// star with arms of the given lengths around node 0
Builder star(const std::vector<std::size_t>& arms)
{
    std::size_t n = 1 + std::accumulate(arms.begin(), arms.end(), std::size_t{0});
    Builder b(n);
    std::size_t next = 1;
    for (auto len : arms) {
        std::size_t prev = 0;
        for (std::size_t k = 0; k < len; ++k) {
            b.e(prev, next);
            prev = next++;
        }
    }
    return b;
}

std::string lanner_name(std::size_t rank, const std::string& shape, const std::vector<int>& labels)
{
    std::string s = "Lanner-" + std::to_string(rank) + "-" + shape;
    for (int m : labels) s += std::to_string(m);
    return s;
}

std::vector<CatalogEntry> fixed_catalog(std::size_t r)
{
    std::vector<CatalogEntry> out;
    const Kind S = Kind::Spherical, A = Kind::Affine, L = Kind::Lanner;
    if (r >= 1) out.push_back(entry(nm("A_", r), S, Builder(r).path(0, r - 1)));
    if (r >= 3) out.push_back(entry(nm("B_", r), S, Builder(r).path(1, r - 1).e(0, 1, 4)));
    if (r >= 4) out.push_back(entry(nm("D_", r), S, Builder(r).path(0, r - 2).e(r - 3, r - 1)));
    if (r >= 6 && r <= 8) out.push_back(entry(nm("E_", r), S, Builder(r).path(0, r - 2).e(2, r - 1)));
    if (r == 4) out.push_back(entry("F_4", S, chain({3, 4, 3})));
    if (r == 3) out.push_back(entry("H_3", S, chain({5, 3})));
    if (r == 4) out.push_back(entry("H_4", S, chain({5, 3, 3})));

    // affine, rank r = n + 1
    if (r >= 3) out.push_back(entry(nm("tilde_A_", r - 1), A, cycle(std::vector<int>(r, 3))));
    if (r >= 4) {
        // chain 0..r-2 ending in a 4, extra node forked at node 1
        Builder b(r);
        b.path(0, r - 2).e(1, r - 1);
        b.e(r - 3, r - 2, 4);
        out.push_back(entry(nm("tilde_B_", r - 1), A, b));
    }
    if (r >= 4) {
        Builder b(r);
        b.path(0, r - 1).e(0, 1, 4).e(r - 2, r - 1, 4);
        out.push_back(entry(nm("tilde_C_", r - 1), A, b));
    }
    if (r >= 5) {
        // chain 0..r-3 with extra leaves on node 1 and node r-4
        Builder b(r);
        b.path(0, r - 3).e(1, r - 2).e(r - 4, r - 1);
        out.push_back(entry(nm("tilde_D_", r - 1), A, b));
    }
    if (r == 5) out.push_back(entry("tilde_F_4", A, chain({3, 3, 4, 3})));
    if (r == 7) out.push_back(entry("tilde_E_6", A, star({2, 2, 2})));
    if (r == 8) out.push_back(entry("tilde_E_7", A, star({3, 3, 1})));
    if (r == 9) out.push_back(entry("tilde_E_8", A, star({5, 2, 1})));

    if (r == 4) {
        out.push_back(entry(lanner_name(4, "chain", {3, 5, 3}), L, chain({3, 5, 3})));
        out.push_back(entry(lanner_name(4, "chain", {5, 3, 4}), L, chain({5, 3, 4})));
        out.push_back(entry(lanner_name(4, "chain", {5, 3, 5}), L, chain({5, 3, 5})));
        Builder y = star({1, 1, 1});
        y.e(0, 1, 5);
        out.push_back(entry(lanner_name(4, "fork", {5}), L, y));
        for (auto labels : std::vector<std::vector<int>>{
                 {4, 3, 3, 3}, {5, 3, 3, 3}, {4, 3, 4, 3}, {5, 3, 4, 3}, {5, 3, 5, 3}})
            out.push_back(entry(lanner_name(4, "cycle", labels), L, cycle(labels)));
    }
    if (r == 5) {
        out.push_back(entry(lanner_name(5, "cycle", {4, 3, 3, 3, 3}), L, cycle({4, 3, 3, 3, 3})));
        // 5-3 followed by a fork: 0 -5- 1 - 2 < 3, 4
        Builder f(5);
        f.e(0, 1, 5).e(1, 2).e(2, 3).e(2, 4);
        out.push_back(entry(lanner_name(5, "fork", {5, 3}), L, f));
        for (auto labels : std::vector<std::vector<int>>{{5, 3, 3, 3}, {5, 3, 3, 5}, {5, 3, 3, 4}})
            out.push_back(entry(lanner_name(5, "chain", labels), L, chain(labels)));
    }
    return out;
}

std::string paren(std::vector<int> v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

// rank 2 and 3 handled directly so that every label is covered
std::optional<CatalogEntry> small_rank(const CoxeterSystem& w)
{
    const std::size_t r = w.rank();
    if (r == 1) return CatalogEntry{"A_1", Kind::Spherical, w};
    if (r == 2) {
        int m = w.order(0, 1);
        if (is_inf(m)) return CatalogEntry{"tilde_A_1", Kind::Affine, w};
        if (m == 3) return CatalogEntry{"A_2", Kind::Spherical, w};
        return CatalogEntry{"I_2(" + std::to_string(m) + ")", Kind::Spherical, w};
    }
    // rank 3
    std::vector<int> l{w.order(0, 1), w.order(1, 2), w.order(0, 2)};
    if (std::any_of(l.begin(), l.end(), is_inf)) return std::nullopt;
    auto inv = [](int m) { return 1.0 / m; };
    const int twos = static_cast<int>(std::count(l.begin(), l.end(), 2));
    if (twos == 0) {
        std::sort(l.begin(), l.end());
        double s = inv(l[0]) + inv(l[1]) + inv(l[2]);
        if (l == std::vector<int>{3, 3, 3}) return CatalogEntry{"tilde_A_2", Kind::Affine, w};
        if (s < 1.0 - 1e-12) return CatalogEntry{"Lanner-3-cycle" + paren(l), Kind::Lanner, w};
        return std::nullopt;
    }
    if (twos == 1) {
        std::vector<int> c;
        for (int m : l)
            if (m != 2) c.push_back(m);
        std::sort(c.begin(), c.end());
        const int p = c[0], q = c[1];
        // 12 * (1/p + 1/q) compared with 6 avoids rounding
        const long lhs = 12L * (p + q), rhs = 6L * p * q;
        if (lhs > rhs) {
            if (p == 3 && q == 3) return CatalogEntry{"A_3", Kind::Spherical, w};
            if (p == 3 && q == 4) return CatalogEntry{"B_3", Kind::Spherical, w};
            if (p == 3 && q == 5) return CatalogEntry{"H_3", Kind::Spherical, w};
            return std::nullopt;
        }
        if (lhs == rhs) {
            if (p == 4 && q == 4) return CatalogEntry{"tilde_C_2", Kind::Affine, w};
            if (p == 3 && q == 6) return CatalogEntry{"tilde_G_2", Kind::Affine, w};
            return std::nullopt;
        }
        return CatalogEntry{"Lanner-3-chain" + paren(c), Kind::Lanner, w};
    }
    return std::nullopt;
}

}  // namespace

std::vector<CatalogEntry> catalog(std::size_t rank, int max_label)
{
    if (rank == 0) return {};
    if (rank > 3) return fixed_catalog(rank);
    std::vector<CatalogEntry> out;
    auto keep = [&](const CoxeterSystem& w) {
        if (auto e = small_rank(w)) out.push_back(*e);
    };
    if (rank == 1) {
        keep(Builder(1).w);
    } else if (rank == 2) {
        for (int m = 3; m <= max_label; ++m) keep(Builder(2).e(0, 1, m).w);
        keep(Builder(2).e(0, 1, kInf).w);
    } else {
        for (int p = 3; p <= max_label; ++p)
            for (int q = p; q <= max_label; ++q) {
                keep(chain({p, q}).w);
                for (int s = q; s <= max_label; ++s) keep(cycle({p, q, s}).w);
            }
    }
    return out;
}

std::optional<CatalogEntry> catalog_lookup(const CoxeterSystem& w)
{
    if (!is_irreducible(w)) throw std::invalid_argument("catalog_match needs an irreducible system");
    if (w.rank() <= 3) return small_rank(w);
    for (const auto& e : fixed_catalog(w.rank()))
        if (isomorphic(w, e.system)) return CatalogEntry{e.name, e.kind, w};
    return std::nullopt;
}

std::optional<std::string> catalog_match(const CoxeterSystem& w)
{
    if (auto e = catalog_lookup(w)) return e->name;
    return std::nullopt;
}

namespace {

bool positive_definite(const Eigen::MatrixXd& m)
{
    if (m.rows() == 0) return true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > 1e-9;
}

Eigen::MatrixXd drop(const Eigen::MatrixXd& m, Eigen::Index k)
{
    const Eigen::Index n = m.rows();
    Eigen::MatrixXd out(n - 1, n - 1);
    for (Eigen::Index i = 0, a = 0; i < n; ++i) {
        if (i == k) continue;
        for (Eigen::Index j = 0, b = 0; j < n; ++j) {
            if (j == k) continue;
            out(a, b++) = m(i, j);
        }
        ++a;
    }
    return out;
}

}  // namespace

ClassificationLabel classify_irreducible(const CoxeterSystem& w)
{
    if (auto e = catalog_lookup(w)) return {e->kind, e->name};
    // numeric fallback: Gram-matrix definitions
    Eigen::MatrixXd g = gram_matrix(w);
    if (positive_definite(g)) return {Kind::Spherical, std::nullopt};
    bool minors_pd = true;
    for (Eigen::Index k = 0; k < g.rows() && minors_pd; ++k) minors_pd = positive_definite(drop(g, k));
    if (minors_pd) {
        double det = g.determinant();
        if (std::abs(det) < 1e-9) return {Kind::Affine, std::nullopt};
        // negative determinant with positive definite maximal minors would be a
        // Lanner diagram, but the catalog is complete for those
        if (det < 0 && w.rank() <= 5) return {Kind::Lanner, std::nullopt};
    }
    return {Kind::Large, std::nullopt};
}

bool is_spherical(const CoxeterSystem& w)
{
    for (const auto& c : split_components(w))
        if (classify_irreducible(c).kind != Kind::Spherical) return false;
    return true;
}

bool is_affine(const CoxeterSystem& w)
{
    if (w.rank() == 0) return false;
    for (const auto& c : split_components(w))
        if (classify_irreducible(c).kind != Kind::Affine) return false;
    return true;
}

std::string describe(const CoxeterSystem& w)
{
    if (w.rank() == 0) return "empty";
    std::string out;
    for (const auto& c : split_components(w)) {
        auto l = classify_irreducible(c);
        if (!out.empty()) out += " x ";
        out += l.catalog_name ? *l.catalog_name : kind_name(l.kind);
    }
    return out;
}

}  // namespace coxpoly
