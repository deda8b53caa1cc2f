#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "cyclotheta/intmat.hpp"

namespace cyclotheta {

// One certified nonzero verdict for det(N_ell): either a nonzero residue
// modulo a recorded witness prime, or the exact determinant.
struct ScanEntry {
    long ell = 0;
    bool exact = false;
    mpz_class value;   // residue (mod witness) or exact determinant
    mpz_class witness; // witness prime; 0 for exact entries
    nlohmann::json to_json() const;
    static ScanEntry from_json(const nlohmann::json& j);
};

struct ScanResult {
    long bound = 0;
    std::vector<ScanEntry> entries;        // sorted by ell
    std::vector<long> counterexamples;     // ell with exact det = 0
    std::string report_json() const;       // deterministic, keys sorted
};

// Deterministic witness prime for (ell, attempt); near 2^61.
mpz_class scan_witness_prime(long ell, int attempt);

// Certify det(N_ell) != 0 for a single ell: residues modulo deterministic
// witness primes, exact Bareiss after `max_attempts` zero residues.
ScanEntry scan_one(long ell, int max_attempts = 5);

// Scan all odd primes ell <= bound. Completed entries are appended to the
// JSON-lines state file (fsync per batch) and reloaded on resume; the final
// report is byte-identical regardless of job count or resume point.
ScanResult run_scan(long bound, int jobs, const std::string& state_path);

std::vector<long> odd_primes_upto(long bound);

} // namespace cyclotheta
