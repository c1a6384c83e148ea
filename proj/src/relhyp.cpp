#include "coxpoly/relhyp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace coxpoly {

namespace {

using Mask = std::uint32_t;

// per-subset data for the whole subset lattice of S
struct SubsetTable {
    const CoxeterSystem* w = nullptr;
    std::size_t n = 0;
    std::vector<Mask> nbr;    // graph neighbours
    std::vector<Mask> orth;   // commuting generators (m = 2)
    std::vector<char> spherical, affine, irreducible;

    explicit SubsetTable(const CoxeterSystem& sys) : w(&sys), n(sys.rank())
    {
        if (n > 16) throw std::invalid_argument("subset enumeration is limited to 16 generators");
        nbr.assign(n, 0);
        orth.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                if (sys.adjacent(i, j))
                    nbr[i] |= Mask{1} << j;
                else
                    orth[i] |= Mask{1} << j;
            }
        const std::size_t total = std::size_t{1} << n;
        spherical.assign(total, 0);
        affine.assign(total, 0);
        irreducible.assign(total, 0);
        for (Mask m = 0; m < total; ++m) {
            irreducible[m] = m != 0 && connected(m);
            CoxeterSystem sub = subsystem(sys, indices(m));
            spherical[m] = is_spherical(sub);
            affine[m] = m != 0 && !spherical[m] && is_affine(sub);
        }
    }

    std::vector<std::size_t> indices(Mask m) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n; ++i)
            if (m & (Mask{1} << i)) out.push_back(i);
        return out;
    }

    bool connected(Mask m) const
    {
        Mask seen = m & (~m + 1), frontier = seen;
        while (frontier) {
            Mask next = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (frontier & (Mask{1} << i)) next |= nbr[i] & m;
            frontier = next & ~seen;
            seen |= next;
        }
        return seen == m;
    }

    Mask perp(Mask t) const
    {
        Mask out = ((Mask{1} << n) - 1) & ~t;
        for (std::size_t i = 0; i < n; ++i)
            if (t & (Mask{1} << i)) out &= orth[i];
        return out;
    }

    bool irreducible_nonspherical(Mask m) const { return irreducible[m] && !spherical[m]; }

    Subset names(Mask m) const
    {
        Subset out;
        for (auto i : indices(m)) out.push_back(w->name(i));
        return out;
    }

    Mask mask(const Subset& s) const
    {
        Mask m = 0;
        for (const auto& x : s) {
            auto i = w->find(x);
            if (!i) throw std::invalid_argument("unknown generator '" + x + "'");
            m |= Mask{1} << *i;
        }
        return m;
    }

    std::size_t total() const { return std::size_t{1} << n; }
};

bool covered(Mask u, const std::vector<Mask>& ts)
{
    return std::any_of(ts.begin(), ts.end(), [&](Mask t) { return (u & t) == u; });
}

std::vector<Mask> masks_of(const SubsetTable& tab, const PeripheralCollection& coll)
{
    std::vector<Mask> out;
    for (const auto& s : coll.subsets) {
        Mask m = tab.mask(s);
        if (m == 0) throw std::invalid_argument("peripheral subsets must be nonempty");
        if (std::find(out.begin(), out.end(), m) != out.end()) throw std::invalid_argument("repeated peripheral subset");
        out.push_back(m);
    }
    return out;
}

RelHypVerdict check(const SubsetTable& tab, const std::vector<Mask>& ts)
{
    RelHypVerdict v;
    auto report = [&](int c, std::vector<Mask> ws) {
        Violation x{c, {}};
        for (Mask m : ws) x.witnesses.push_back(tab.names(m));
        v.violations.push_back(std::move(x));
    };

    for (Mask u = 1; u < tab.total(); ++u)
        if (tab.affine[u] && std::popcount(u) >= 3 && !covered(u, ts)) {
            report(1, {u});
            break;
        }

    [&] {
        for (Mask u1 = 1; u1 < tab.total(); ++u1) {
            if (!tab.irreducible_nonspherical(u1)) continue;
            const Mask p = tab.perp(u1);
            for (Mask u2 = p; u2; u2 = (u2 - 1) & p)
                if (u2 > u1 && tab.irreducible_nonspherical(u2) && !covered(u1 | u2, ts)) {
                    report(2, {u1, u2});
                    return;
                }
        }
    }();

    [&] {
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (std::size_t j = i + 1; j < ts.size(); ++j)
                if (!tab.spherical[ts[i] & ts[j]]) {
                    report(3, {ts[i], ts[j]});
                    return;
                }
    }();

    [&] {
        for (Mask t : ts)
            for (Mask u = t; u; u = (u - 1) & t)
                if (tab.irreducible_nonspherical(u)) {
                    const Mask p = tab.perp(u);
                    if ((p & t) != p) {
                        report(4, {t, u, p});
                        return;
                    }
                }
    }();

    v.holds = v.violations.empty();
    return v;
}

std::vector<Mask> maximal_only(std::vector<Mask> ts)
{
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<Mask> out;
    for (Mask t : ts) {
        bool inside = false;
        for (Mask o : ts)
            if (o != t && (t & o) == t) inside = true;
        if (!inside) out.push_back(t);
    }
    return out;
}

}  // namespace

std::vector<Subset> affine_subsystems(const CoxeterSystem& w, std::size_t min_rank)
{
    if (min_rank < 1) throw std::invalid_argument("min_rank must be at least 1");
    SubsetTable tab(w);
    std::vector<Subset> out;
    for (Mask m = 1; m < tab.total(); ++m)
        if (tab.affine[m] && static_cast<std::size_t>(std::popcount(m)) >= min_rank) out.push_back(tab.names(m));
    return out;
}

Subset perp(const CoxeterSystem& w, const Subset& t)
{
    Subset out;
    for (std::size_t i = 0; i < w.rank(); ++i) {
        const auto& s = w.name(i);
        if (std::find(t.begin(), t.end(), s) != t.end()) continue;
        bool ok = true;
        for (const auto& x : t)
            if (w.order(s, x) != 2) ok = false;
        if (ok) out.push_back(s);
    }
    return out;
}

RelHypVerdict caprace_check(const CoxeterSystem& w, const PeripheralCollection& coll)
{
    SubsetTable tab(w);
    return check(tab, masks_of(tab, coll));
}

PeripheralCollection default_peripherals(const CoxeterSystem& w)
{
    SubsetTable tab(w);
    std::vector<Mask> ts;
    for (Mask m = 1; m < tab.total(); ++m)
        if (tab.affine[m] && std::popcount(m) >= 3) ts.push_back(m);
    ts = maximal_only(ts);
    for (bool changed = true; changed;) {
        changed = false;
        for (Mask u1 = 1; u1 < tab.total() && !changed; ++u1) {
            if (!tab.irreducible_nonspherical(u1)) continue;
            const Mask p = tab.perp(u1);
            for (Mask u2 = p; u2 && !changed; u2 = (u2 - 1) & p)
                if (u2 > u1 && tab.irreducible_nonspherical(u2) && !covered(u1 | u2, ts)) {
                    ts.push_back(u1 | u2);
                    changed = true;
                }
        }
        for (auto& t : ts) {
            if (changed) break;
            for (Mask u = t; u; u = (u - 1) & t)
                if (tab.irreducible_nonspherical(u) && (tab.perp(u) & t) != tab.perp(u)) {
                    t |= tab.perp(u);
                    changed = true;
                    break;
                }
        }
        ts = maximal_only(ts);
    }
    PeripheralCollection out;
    for (Mask t : ts) out.subsets.push_back(tab.names(t));
    return out;
}

PeripheralSummary summarize_peripheral(const CoxeterSystem& w, const Subset& t)
{
    PeripheralSummary s;
    s.subset = t;
    CoxeterSystem sub = subsystem(w, t);
    s.description = describe(sub);
    for (const auto& c : split_components(sub)) {
        const auto label = classify_irreducible(c);
        if (label.kind != Kind::Affine) continue;
        s.affine_components.push_back(label.catalog_name.value_or("affine"));
        s.virtual_abelian_rank += static_cast<int>(c.rank()) - 1;
    }
    return s;
}

nlohmann::json to_json(const RelHypVerdict& v)
{
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& x : v.violations) vs.push_back({{"condition", x.condition}, {"witnesses", x.witnesses}});
    return {{"holds", v.holds}, {"violations", vs}};
}

}  // namespace coxpoly
