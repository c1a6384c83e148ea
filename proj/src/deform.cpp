#include "coxpoly/deform.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace coxpoly {

namespace {

using Idx = Eigen::Index;
constexpr double kZero = 1e-12;

double det(const Eigen::MatrixXd& m)
{
    if (m.rows() == 0) return 1.0;
    return m.partialPivLu().determinant();
}

IndexSet without(const IndexSet& s, std::size_t drop)
{
    IndexSet out;
    for (auto i : s)
        if (i != drop) out.push_back(i);
    return out;
}

// lambda >= 1 with lambda + 1/lambda = 2 + t, accurate for small t
double lambda_of_t(double t)
{
    if (t <= 0) return 1.0;
    return 1.0 + t / 2.0 + std::sqrt(t + t * t / 4.0);
}

double mu_of_y(double y) { return lambda_of_t(y - 2.0); }

std::vector<double> log_grid(double lo, double hi, int n, bool lo_closed, bool hi_closed)
{
    std::vector<double> out;
    if (n <= 0) return out;
    if (n == 1 || hi <= lo) {
        out.push_back(lo);
        return out;
    }
    const double a = std::log(lo), b = std::log(hi);
    const double off_lo = lo_closed ? 0.0 : 0.5, off_hi = hi_closed ? 0.0 : 0.5;
    for (int k = 0; k < n; ++k) {
        const double s = (k + off_lo) / (n - 1 + off_lo + off_hi);
        out.push_back(std::exp(a + (b - a) * s));
    }
    return out;
}

struct Blocks {
    CoxeterSystem w;
    IndexSet left, right;
    std::size_t j = 0, h = 0;  // bridge, j in left
    CycleBasis basis;
    int left_cycle = -1, right_cycle = -1;
};

Blocks split_blocks(const CoxeterSystem& w, const std::vector<std::string>& left, const std::vector<std::string>& right)
{
    Blocks b;
    b.w = w;
    std::vector<int> side(w.rank(), -1);
    for (const auto& s : left) {
        b.left.push_back(w.index_of(s));
        side[w.index_of(s)] = 0;
    }
    for (const auto& s : right) {
        if (side[w.index_of(s)] != -1) throw UnsupportedFamily("generator " + s + " lies in both blocks");
        b.right.push_back(w.index_of(s));
        side[w.index_of(s)] = 1;
    }
    if (std::count(side.begin(), side.end(), -1)) throw UnsupportedFamily("blocks do not cover the generators");
    std::vector<std::pair<std::size_t, std::size_t>> bridges;
    for (auto a : b.left)
        for (auto c : b.right)
            if (w.adjacent(a, c)) bridges.emplace_back(a, c);
    if (bridges.size() != 1) throw UnsupportedFamily("blocks must be joined by exactly one edge");
    std::tie(b.j, b.h) = bridges.front();
    b.basis = cycle_basis(w);
    if (b.basis.cycles.size() > 2) throw UnsupportedFamily("cycle rank above 2");
    for (std::size_t k = 0; k < b.basis.cycles.size(); ++k) {
        const auto& c = b.basis.cycles[k];
        const int s = side[c.nodes.front()];
        int& slot = s == 0 ? b.left_cycle : b.right_cycle;
        if (slot != -1) throw UnsupportedFamily("a block carries two cycles");
        slot = static_cast<int>(k);
        const std::size_t end = s == 0 ? b.j : b.h;
        if (std::find(c.nodes.begin(), c.nodes.end(), end) == c.nodes.end())
            throw UnsupportedFamily("cycle " + c.id + " does not pass through the bridge");
    }
    // the lambda side goes first
    if (b.left_cycle == -1 && b.right_cycle != -1) {
        std::swap(b.left, b.right);
        std::swap(b.j, b.h);
        std::swap(b.left_cycle, b.right_cycle);
    } else if (b.left_cycle == 1 && b.right_cycle == 0) {
        std::swap(b.left, b.right);
        std::swap(b.j, b.h);
        std::swap(b.left_cycle, b.right_cycle);
    }
    return b;
}

Eigen::MatrixXd half_form(const Blocks& b, double lam, double mu)
{
    std::vector<double> p;
    for (std::size_t k = 0; k < b.basis.cycles.size(); ++k) p.push_back(k == 0 ? lam : mu);
    return build_special_form(b.w, p).entries() / 2.0;
}

ReducedEquation reduce_blocks(const Blocks& b)
{
    ReducedEquation r;
    r.cycles = b.basis.cycles.size();
    for (const auto& c : b.basis.cycles) r.cycle_ids.push_back(c.id);
    r.left_has_cycle = b.left_cycle != -1;
    r.right_has_cycle = b.right_cycle != -1;
    r.bridge_left = b.w.name(b.j);
    r.bridge_right = b.w.name(b.h);
    r.bridge_cos = cos_pi_over(b.w.order(b.j, b.h));

    const Eigen::MatrixXd n1 = half_form(b, 1.0, 1.0), n2 = half_form(b, 2.0, 2.0);
    r.d1 = det(principal(n1, b.left));
    r.e1 = det(principal(n1, b.right));
    // x(2) - 2 = 1/2
    if (r.left_has_cycle) r.p1 = 2.0 * (r.d1 - det(principal(n2, b.left)));
    if (r.right_has_cycle) r.p2 = 2.0 * (r.e1 - det(principal(n2, b.right)));
    r.k1 = det(principal(n1, without(b.left, b.j)));
    r.k2 = det(principal(n1, without(b.right, b.h)));
    r.c = r.bridge_cos * r.bridge_cos * r.k1 * r.k2;
    if (r.p1 != 0.0 && r.p2 != 0.0) {
        r.ax = 2.0 + r.d1 / r.p1;
        r.ay = 2.0 + r.e1 / r.p2;
        r.b = r.c / (r.p1 * r.p2);
    }
    return r;
}

double full_det(const Blocks& b, double lam, double mu) { return det(half_form(b, lam, mu) * 2.0); }

// bisection on the true determinant along x in [2, xmax]
double bisect_x(const Blocks& b, double xmax)
{
    auto f = [&](double x) { return full_det(b, lambda_of_t(x - 2.0), 1.0); };
    double lo = 2.0, hi = xmax, flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void add_witness(DeformationSpace& s, const Blocks& b, std::vector<double> p)
{
    const double lam = p.empty() ? 1.0 : p[0];
    const double mu = p.size() > 1 ? p[1] : 1.0;
    s.witness_dets.push_back(full_det(b, lam, mu));
    s.witnesses.push_back(std::move(p));
}

// x on the two-cycle curve at a given y
double x_at_y(const ReducedEquation& r, double y)
{
    const double v = r.e1 - r.p2 * (y - 2.0);
    const double u = r.c / v;
    return 2.0 + (r.d1 - u) / r.p1;
}

void two_cycles(DeformationSpace& s, const Blocks& b, int samples)
{
    const ReducedEquation& r = s.reduced;
    const double tol = kZero * std::max(1.0, std::abs(r.d1 * r.e1));
    if (r.c < -tol) throw UnsupportedFamily("negative bridge constant");
    const double far = 50.0;

    if (r.c <= tol) {
        // u v = 0: vertical line u = 0 and horizontal line v = 0
        std::size_t lines = 0;
        if (r.d1 >= -kZero) {
            Branch br;
            br.fixed_x = 2.0 + std::max(r.d1, 0.0) / r.p1;
            br.shape = "line";
            br.components = *br.fixed_x > 2.0 + kZero ? 2 : 1;
            br.y_min = 2.0;
            br.y_max = 2.0 + far;
            br.y_max_closed = false;
            s.branches.push_back(br);
            ++lines;
        }
        if (r.e1 >= -kZero) {
            Branch br;
            br.shape = "line";
            br.y_min = br.y_max = 2.0 + std::max(r.e1, 0.0) / r.p2;
            br.components = br.y_min > 2.0 + kZero ? 2 : 1;
            s.branches.push_back(br);
            ++lines;
        }
        for (const auto& br : s.branches) s.components += br.components;
        if (lines == 2) s.components = 1;  // the two families of lines cross
        for (const auto& br : s.branches) {
            if (br.fixed_x) {
                for (double y : log_grid(2.0, br.y_max, samples, true, false))
                    add_witness(s, b, {lambda_of_t(*br.fixed_x - 2.0), mu_of_y(y)});
            } else {
                for (double x : log_grid(2.0, 2.0 + far, samples, true, false))
                    add_witness(s, b, {lambda_of_t(x - 2.0), mu_of_y(br.y_min)});
            }
        }
        s.kind = s.branches.empty() ? SpaceKind::Empty : SpaceKind::Curves;
        return;
    }

    auto finish = [&](Branch br) {
        const bool point = std::abs(br.y_max - br.y_min) <= 1e-12 && br.y_min_closed && br.y_max_closed;
        const int closed = (br.y_min_closed ? 1 : 0) + (br.y_max_closed ? 1 : 0);
        if (point) {
            br.shape = "point";
            br.components = 1;
        } else if (closed == 2) {
            br.shape = "circle";
            br.components = 1;
        } else {
            br.shape = "lines";
            br.components = closed == 1 ? 2 : 4;
        }
        s.branches.push_back(br);
    };

    // negative branch: u, v < 0
    {
        Branch br;
        bool ok = true;
        if (r.e1 < 0) {
            br.y_min = 2.0;
            br.y_min_closed = true;
        } else {
            br.y_min = 2.0 + r.e1 / r.p2;
            br.y_min_closed = false;
        }
        if (r.d1 < 0) {
            br.y_max = 2.0 + (r.e1 - r.c / r.d1) / r.p2;
            br.y_max_closed = true;
            if (r.e1 < 0 && r.c < r.d1 * r.e1 - tol) ok = false;
            if (r.e1 < 0 && std::abs(r.c - r.d1 * r.e1) <= tol) br.y_max = br.y_min;
        } else {
            br.y_max = std::max(br.y_min, 2.0) + far;
            br.y_max_closed = false;
        }
        if (ok) finish(br);
    }
    // positive branch: u, v > 0
    if (r.d1 > 0 && r.e1 > 0 && r.c <= r.d1 * r.e1 + tol) {
        Branch br;
        br.y_min = 2.0;
        br.y_max = std::abs(r.c - r.d1 * r.e1) <= tol ? 2.0 : 2.0 + (r.e1 - r.c / r.d1) / r.p2;
        finish(br);
    }

    for (const auto& br : s.branches) s.components += br.components;
    if (s.branches.empty())
        s.kind = SpaceKind::Empty;
    else if (std::all_of(s.branches.begin(), s.branches.end(), [](const Branch& x) { return x.shape == "point"; }))
        s.kind = SpaceKind::FinitePoints;
    else if (s.branches.size() == 1 && s.branches[0].shape == "circle")
        s.kind = SpaceKind::Circle;
    else
        s.kind = SpaceKind::Curves;

    for (const auto& br : s.branches) {
        const int n = br.shape == "point" ? 1 : samples;
        for (double y : log_grid(br.y_min, br.y_max, n, br.y_min_closed, br.y_max_closed)) {
            const double x = x_at_y(r, y);
            add_witness(s, b, {lambda_of_t(x - 2.0), mu_of_y(y)});
        }
        if (br.shape == "circle") {
            const double x0 = x_at_y(r, br.y_min), x1 = x_at_y(r, br.y_max);
            s.x_range = std::make_pair(std::min(x0, x1), std::max(x0, x1));
            s.y_range = std::make_pair(br.y_min, br.y_max);
        }
    }
}

}  // namespace

std::string space_kind_name(SpaceKind k)
{
    switch (k) {
    case SpaceKind::Empty: return "Empty";
    case SpaceKind::FinitePoints: return "FinitePoints";
    case SpaceKind::Curves: return "Curves";
    case SpaceKind::Circle: return "Circle";
    }
    return "?";
}

ReducedEquation reduce(const CoxeterSystem& w, const std::vector<std::string>& left, const std::vector<std::string>& right)
{
    return reduce_blocks(split_blocks(w, left, right));
}

DeformationSpace deformation_space(const CoxeterSystem& w, const std::vector<std::string>& left,
                                   const std::vector<std::string>& right, int samples)
{
    if (left.size() + right.size() != w.rank()) throw UnsupportedFamily("blocks do not cover the generators");
    Blocks b = split_blocks(w, left, right);
    DeformationSpace s;
    s.system = w;
    s.reduced = reduce_blocks(b);
    const ReducedEquation& r = s.reduced;

    // the factorization against the true determinant at a few random points
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    double worst = 0;
    for (int i = 0; i < 8; ++i) {
        const double lam = std::exp(dist(rng)), mu = std::exp(dist(rng));
        const double x = lam + 1 / lam, y = mu + 1 / mu;
        const double u = r.d1 - r.p1 * (x - 2), v = r.e1 - r.p2 * (y - 2);
        worst = std::max(worst, std::abs(det(half_form(b, lam, mu)) - (u * v - r.c)));
    }
    s.checks["factorization_residual"] = worst;
    if (r.left_has_cycle && b.basis.cycles[0].nodes.size() == b.left.size() && b.left.size() >= 3) {
        // a bare loop: compare with the loop reduction
        std::vector<double> c;
        const auto& ring = b.basis.cycles[0].nodes;
        for (std::size_t k = 0; k < ring.size(); ++k) c.push_back(cos_pi_over(w.order(ring[k], ring[(k + 1) % ring.size()])));
        auto lr = loop_det_reduce(c);
        s.checks["loop_reduction_residual"] = std::max(std::abs(lr.d1 - r.d1), std::abs(lr.coefficient - r.p1));
    }

    if (r.cycles == 0) {
        if (std::abs(r.d1 * r.e1 - r.c) <= kZero) {
            s.kind = SpaceKind::FinitePoints;
            s.components = 1;
            add_witness(s, b, {});
        }
    } else if (r.cycles == 1) {
        const double e = r.e1;
        if (std::abs(e) <= kZero) {
            if (std::abs(r.c) <= kZero) {
                s.kind = SpaceKind::Curves;
                s.components = 1;
                Branch br;
                br.shape = "line";
                s.branches.push_back(br);
                for (double x : log_grid(2.0, 52.0, samples, true, false)) add_witness(s, b, {lambda_of_t(x - 2.0)});
            }
        } else {
            const double t = (r.d1 - r.c / e) / r.p1;  // x* - 2
            if (t > kZero) {
                // the closed form brackets the root; polish on the true determinant
                const double x = t < 1e-6 ? 2.0 + t : bisect_x(b, 2.0 + 2.0 * (t + 1.0));
                const double lam = lambda_of_t(x - 2.0);
                s.kind = SpaceKind::FinitePoints;
                s.components = 2;
                s.checks["closed_form_x"] = 2.0 + t;
                s.checks["bisection_x"] = x;
                add_witness(s, b, {lam});
                add_witness(s, b, {1.0 / lam});
            } else if (t >= -kZero) {
                s.kind = SpaceKind::FinitePoints;
                s.components = 1;
                add_witness(s, b, {1.0});
            }
        }
    } else {
        two_cycles(s, b, samples);
    }
    double wmax = 0;
    for (double d : s.witness_dets) wmax = std::max(wmax, std::abs(d));
    s.checks["max_witness_det"] = wmax;
    return s;
}

DeformationSpace deformation_space(const Family& f, int m, int samples)
{
    return deformation_space(family_system(f, m), f.left, f.right, samples);
}

DeformationSpace circle_space(const Family& f)
{
    DeformationSpace s = deformation_space(f, kInf);
    if (s.kind != SpaceKind::Circle)
        throw std::invalid_argument("family " + f.id + " has deformation space " + space_kind_name(s.kind) + ", not a circle");
    return s;
}

std::vector<double> witnesses_at(const ReducedEquation& r, double mu)
{
    if (r.cycles != 2) throw std::invalid_argument("witnesses_at needs two cycles");
    if (!(mu > 0)) throw std::invalid_argument("mu must be positive");
    const double y = mu + 1.0 / mu;
    const double v = r.e1 - r.p2 * (y - 2.0);
    if (std::abs(v) <= kZero) return {};
    const double t = (r.d1 - r.c / v) / r.p1;
    if (t < -kZero) return {};
    if (t <= kZero) return {1.0};
    const double lam = lambda_of_t(t);
    return {lam, 1.0 / lam};
}

CartanMatrix family_cartan(const Family& f, int m, const std::vector<double>& params)
{
    return build_special_form(family_system(f, m), params);
}

double mu_invariant(const CartanMatrix& a)
{
    auto sf = special_form_of(a);
    if (sf.cycle_params.size() != 2) throw std::invalid_argument("the mu-invariant needs cycle rank 2");
    return sf.cycle_params[1].second;
}

LimitResult limit_family(const Family& f, std::optional<double> mu, int big_m)
{
    if (!f.has_m) throw std::invalid_argument("family " + f.id + " has no parameter m");
    const std::size_t cycles = cycle_rank(family_system(f, 7));
    if (cycles == 2 && !mu) throw std::invalid_argument("two-cycle family: mu is required");
    // t(m) = x(m) - 2 on the branch lambda > 1, or nothing when beta is empty
    auto t_of = [&](int m) -> std::optional<double> {
        ReducedEquation r = reduce(family_system(f, m), f.left, f.right);
        double t;
        if (r.cycles == 1) {
            if (std::abs(r.e1) <= kZero) return std::nullopt;
            t = (r.d1 - r.c / r.e1) / r.p1;
        } else {
            const double y = *mu + 1.0 / *mu;
            const double v = r.e1 - r.p2 * (y - 2.0);
            if (std::abs(v) <= kZero) return std::nullopt;
            t = (r.d1 - r.c / v) / r.p1;
        }
        if (t <= 0) return std::nullopt;
        return t;
    };
    LimitResult out;
    std::vector<int> ms;
    for (int m = 3; m <= 40; ++m) ms.push_back(m);
    for (int m : {100, 1000, 10000, 100000, big_m / 2, big_m}) ms.push_back(m);
    for (int m : ms) {
        auto t = t_of(m);
        if (!t) {
            if (!out.ms.empty()) throw std::runtime_error("deformation space empty at m = " + std::to_string(m));
            continue;
        }
        out.ms.push_back(m);
        out.lambdas.push_back(lambda_of_t(*t));
    }
    if (out.ms.size() < 3) throw std::runtime_error("non-convergent sequence for " + f.id);
    out.decreasing = true;
    for (std::size_t i = 1; i < out.lambdas.size(); ++i)
        if (!(out.lambdas[i] < out.lambdas[i - 1]) || !(out.lambdas[i] > 1.0)) out.decreasing = false;
    // Richardson in 1/m^2 on t = x - 2 (lambda - 1 itself behaves like 1/m)
    const double t1 = *t_of(big_m / 2), t2 = *t_of(big_m);
    double tinf = (4.0 * t2 - t1) / 3.0;
    // round-off in t is ~1e-16 and lambda - 1 ~ sqrt(t) would amplify it
    if (tinf < 1e-12) tinf = 0.0;
    out.x_limit = 2.0 + tinf;
    out.lambda_limit = lambda_of_t(tinf);
    std::vector<double> p{out.lambda_limit};
    if (cycles == 2) p.push_back(*mu);
    out.limit = family_cartan(f, kInf, p);

    // extrapolate the m-edge cosine the same way and compare entrywise
    const double c1 = cos_pi_over(big_m / 2), c2 = cos_pi_over(big_m);
    const double cinf = (4.0 * c2 - c1) / 3.0;
    Eigen::MatrixXd ext = out.limit.entries();
    const auto a = out.limit.system().index_of(f.m_edge.first), bb = out.limit.system().index_of(f.m_edge.second);
    ext(static_cast<Idx>(a), static_cast<Idx>(bb)) = ext(static_cast<Idx>(bb), static_cast<Idx>(a)) = -2.0 * cinf;
    out.extrapolation_error = (ext - out.limit.entries()).cwiseAbs().maxCoeff();
    out.predicted = faces_from_cartan(out.limit, f.dim);
    return out;
}

nlohmann::json to_json(const DeformationSpace& s)
{
    const auto& r = s.reduced;
    nlohmann::json reduced = {{"cycles", r.cycles},       {"cycle_ids", r.cycle_ids}, {"bridge", {r.bridge_left, r.bridge_right}},
                              {"bridge_cos", r.bridge_cos}, {"D1", r.d1},             {"P1", r.p1},
                              {"E1", r.e1},               {"P2", r.p2},               {"K1", r.k1},
                              {"K2", r.k2},               {"C", r.c}};
    if (r.cycles == 2) reduced["normal_form"] = {{"Ax", r.ax}, {"Ay", r.ay}, {"B", r.b}};
    nlohmann::json branches = nlohmann::json::array();
    for (const auto& b : s.branches) {
        nlohmann::json jb = {{"shape", b.shape}, {"components", b.components}, {"y_min", b.y_min}, {"y_max", b.y_max},
                             {"y_min_closed", b.y_min_closed}, {"y_max_closed", b.y_max_closed}};
        if (b.fixed_x) jb["x"] = *b.fixed_x;
        branches.push_back(jb);
    }
    nlohmann::json j = {{"kind", space_kind_name(s.kind)}, {"components", s.components}, {"reduced", reduced},
                        {"branches", branches},          {"witnesses", s.witnesses},   {"checks", s.checks},
                        {"system", serialize(s.system)}};
    if (s.x_range) j["x_range"] = {s.x_range->first, s.x_range->second};
    if (s.y_range) j["y_range"] = {s.y_range->first, s.y_range->second};
    return j;
}

}  // namespace coxpoly
