#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "coxpoly/diagram.hpp"

namespace coxpoly {

using Subset = std::vector<std::string>;  // generator names in system order

struct PeripheralCollection {
    std::vector<Subset> subsets;
};

struct Violation {
    int condition;                 // 1..4
    std::vector<Subset> witnesses;  // 1: U; 2: U1, U2; 3: T1, T2; 4: T, U, U^perp
};

struct RelHypVerdict {
    bool holds = true;
    std::vector<Violation> violations;  // at most one per condition
};

// T with W_T affine (every component irreducible affine) and |T| >= min_rank
std::vector<Subset> affine_subsystems(const CoxeterSystem& w, std::size_t min_rank);
// generators outside T commuting with all of T
Subset perp(const CoxeterSystem& w, const Subset& t);

// throws std::invalid_argument for empty, repeated or unknown subsets
RelHypVerdict caprace_check(const CoxeterSystem& w, const PeripheralCollection& coll);
PeripheralCollection default_peripherals(const CoxeterSystem& w);

struct PeripheralSummary {
    Subset subset;
    std::vector<std::string> affine_components;  // catalog names
    std::string description;
    int virtual_abelian_rank = 0;  // sum of (rank - 1) over affine components
};
PeripheralSummary summarize_peripheral(const CoxeterSystem& w, const Subset& t);

nlohmann::json to_json(const RelHypVerdict& v);

}  // namespace coxpoly
