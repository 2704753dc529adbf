#pragma once
#include <string>
#include <vector>

#include "runup/oracles.hpp"

namespace runup {

// Named oracle-backed validation suites: "projection", "evolver", "cg",
// "pipeline", or "all". Unknown names throw std::invalid_argument.
std::vector<OracleReport> run_validation_suite(const std::string& suite);

const std::vector<std::string>& validation_suites();

}
