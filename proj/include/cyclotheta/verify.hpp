#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "cyclotheta/real.hpp"

namespace cyclotheta {
namespace checks {

struct Check {
    std::string name;
    bool pass;
    std::string note;
};

// golden-table checks, each deterministic
std::vector<Check> amatrix_goldens();
std::vector<Check> subdeterminants();
std::vector<Check> factor_table();
std::vector<Check> m_ranks();
std::vector<Check> h1s2_table();
std::vector<Check> cm_identities();
std::vector<Check> theta_goldens(mpfr_prec_t prec);
std::vector<Check> theta_laws(mpfr_prec_t prec);
std::vector<Check> orbit_checks(mpfr_prec_t prec);

} // namespace checks

struct SuiteResult {
    std::string suite;
    bool pass = false;
    std::vector<checks::Check> results;
    std::string report_json() const; // deterministic
};

// suite in {paper-tables, theta-laws, cm-identities, orbits}
SuiteResult run_suite(const std::string& suite, int jobs = 0);

} // namespace cyclotheta
