#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace coxpoly {

// Exit codes: 0 all checks pass, 1 a check failed or a computation error,
// 2 parse or IO error, 3 unsupported family, 4 unknown id.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct TableReport {
    nlohmann::json checks = nlohmann::json::array();
    nlohmann::json findings = nlohmann::json::object();
    bool passed() const;
};

std::vector<std::string> reproduce_ids();
// throws std::out_of_range for unknown ids
TableReport reproduce(const std::string& table, double tol = 1e-9, unsigned long long seed = 0);

}  // namespace coxpoly
