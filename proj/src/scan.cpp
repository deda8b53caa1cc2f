#include "cyclotheta/scan.hpp"

#include <omp.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "cyclotheta/factor.hpp"
#include "cyclotheta/rayclass.hpp"

namespace cyclotheta {

std::vector<long> odd_primes_upto(long bound) {
    std::vector<long> out;
    std::vector<bool> sieve((size_t)bound + 1, true);
    for (long i = 2; i <= bound; i++) {
        if (!sieve[(size_t)i]) continue;
        if (i >= 3) out.push_back(i);
        for (long j = i * i; j <= bound; j += i) sieve[(size_t)j] = false;
    }
    return out;
}

nlohmann::json ScanEntry::to_json() const {
    nlohmann::json j;
    j["l"] = ell;
    j["mode"] = exact ? "exact" : "residue";
    j["value"] = value.get_str();
    if (!exact) j["witness"] = witness.get_str();
    return j;
}

ScanEntry ScanEntry::from_json(const nlohmann::json& j) {
    ScanEntry e;
    e.ell = j.at("l").get<long>();
    e.exact = j.at("mode").get<std::string>() == "exact";
    e.value = mpz_class(j.at("value").get<std::string>());
    if (!e.exact) e.witness = mpz_class(j.at("witness").get<std::string>());
    return e;
}

std::string ScanResult::report_json() const {
    nlohmann::json j;
    j["bound"] = bound;
    j["completed"] = entries.size();
    nlohmann::json ce = nlohmann::json::array();
    for (long l : counterexamples) ce.push_back(l);
    j["counterexamples"] = ce;
    nlohmann::json es = nlohmann::json::array();
    for (auto& e : entries) es.push_back(e.to_json());
    j["entries"] = es;
    return j.dump();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

mpz_class scan_witness_prime(long ell, int attempt) {
    std::uint64_t seed = splitmix64((std::uint64_t)ell * 0x100000001B3ULL + (std::uint64_t)attempt);
    std::uint64_t low = seed % (1ULL << 60);
    mpz_class offset;
    mpz_import(offset.get_mpz_t(), 1, 1, sizeof low, 0, 0, &low);
    mpz_class base = (mpz_class(1) << 61) + offset;
    return next_prime(base);
}

ScanEntry scan_one(long ell, int max_attempts) {
    const long n = (ell - 1) / 2;
    ScanEntry e;
    e.ell = ell;
    std::vector<std::uint64_t> rm((size_t)n * (size_t)n);
    for (long i = 1; i <= n; i++)
        for (long j = 1; j <= n; j++)
            rm[(size_t)(i - 1) * (size_t)n + (size_t)(j - 1) ] = (i * j) % ell <= n ? 1u : 0u;
    for (int attempt = 0; attempt < max_attempts; attempt++) {
        mpz_class q = scan_witness_prime(ell, attempt);
        std::uint64_t d = det_mod_u64((int)n, mpz_get_ui(q.get_mpz_t()), rm);
        if (d != 0) {
            e.exact = false;
            e.witness = q;
            e.value = mpz_class(d);
            return e;
        }
    }
    // residues kept vanishing: settle it exactly
    e.exact = true;
    e.witness = 0;
    e.value = det_exact(matrix_N(ell));
    return e;
}

ScanResult run_scan(long bound, int jobs, const std::string& state_path) {
    if (bound < 3) throw ParameterError("scan bound must be >= 3");
    std::map<long, ScanEntry> done;
    if (!state_path.empty()) {
        std::ifstream in(state_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            try {
                nlohmann::json j = nlohmann::json::parse(line);
                if (j.contains("l")) {
                    ScanEntry e = ScanEntry::from_json(j);
                    done[e.ell] = e;
                }
            } catch (...) {
                break; // truncated trailing line after a crash
            }
        }
    }

    std::vector<long> primes = odd_primes_upto(bound);
    std::vector<long> todo;
    for (long l : primes)
        if (!done.count(l)) todo.push_back(l);

    FILE* state = nullptr;
    if (!state_path.empty()) {
        state = std::fopen(state_path.c_str(), "a");
        if (state == nullptr) throw ParameterError("cannot open state file " + state_path);
        if (done.empty()) {
            char ts[64];
            std::time_t now = std::time(nullptr);
            std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
            nlohmann::json meta;
            meta["bound"] = bound;
            meta["started"] = ts;
            std::fprintf(state, "%s\n", meta.dump().c_str());
        }
    }

    if (jobs > 0) omp_set_num_threads(jobs);
    const size_t batch = 50;
    for (size_t base = 0; base < todo.size(); base += batch) {
        size_t hi = std::min(todo.size(), base + batch);
        std::vector<ScanEntry> results(hi - base);
#pragma omp parallel for schedule(dynamic)
        for (long k = 0; k < (long)(hi - base); k++)
            results[(size_t)k] = scan_one(todo[base + (size_t)k]);
        for (auto& e : results) {
            done[e.ell] = e;
            if (state != nullptr) std::fprintf(state, "%s\n", e.to_json().dump().c_str());
        }
        if (state != nullptr) {
            char ts[64];
            std::time_t now = std::time(nullptr);
            std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
            nlohmann::json meta;
            meta["updated"] = ts;
            std::fprintf(state, "%s\n", meta.dump().c_str());
            std::fflush(state);
            fsync(fileno(state));
        }
    }
    if (state != nullptr) std::fclose(state);

    ScanResult res;
    res.bound = bound;
    for (long l : primes) {
        auto it = done.find(l);
        if (it == done.end()) throw ConsistencyError("scan missed a prime");
        res.entries.push_back(it->second);
        if (it->second.exact && it->second.value == 0) res.counterexamples.push_back(l);
    }
    return res;
}

} // namespace cyclotheta
