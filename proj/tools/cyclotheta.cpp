// Command-line front end: exact cyclotomic/ray-class computations, certified
// theta evaluation, reciprocity exponent tables, and the det(N_ell) scan.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "cyclotheta/cmgeom.hpp"
#include "cyclotheta/cyclotomic.hpp"
#include "cyclotheta/rayclass.hpp"
#include "cyclotheta/reciprocity.hpp"
#include "cyclotheta/scan.hpp"
#include "cyclotheta/theta.hpp"
#include "cyclotheta/verify.hpp"

using namespace cyclotheta;

int main(int argc, char** argv) {
    CLI::App app{"class field computations over cyclotomic fields"};
    app.require_subcommand(1);

    long ell = 7, p = 3, mu = 1, idx = 1, prec = 192, bound = 100, pmax = 0;
    int jobs = 0;
    bool with_factor = false;
    std::string state_path, suite, hplus_path;

    auto* nl = app.add_subcommand("nl", "exact determinant of N_ell");
    nl->add_option("--l", ell, "odd prime ell")->required();

    auto* mrank = app.add_subcommand("mrank", "rank of M_ell(p) over F_p");
    mrank->add_option("--l", ell)->required();
    mrank->add_option("--p", p)->required();

    auto* h1 = app.add_subcommand("h1s2", "generators and dimension of H_1/S_2");
    h1->add_option("--l", ell)->required();
    h1->add_option("--p", p);
    h1->add_option("--pmax", pmax, "run all odd primes <= pmax");
    h1->add_option("--hplus", hplus_path, "JSON map ell -> h_ell^+ for ell > 67");

    auto* cmp = app.add_subcommand("cmpoint", "CM point z_ell with certified bounds");
    cmp->add_option("--l", ell)->required();
    cmp->add_option("--prec", prec);

    auto* th = app.add_subcommand("theta", "Phi_[r0,s0;mu,i](z_ell)_p");
    th->add_option("--l", ell)->required();
    th->add_option("--p", p)->required();
    th->add_option("--mu", mu);
    th->add_option("--i", idx)->required();
    th->add_option("--prec", prec);

    auto* am = app.add_subcommand("amatrix", "exponent matrix A_ell(r0,s0)");
    am->add_option("--l", ell)->required();
    am->add_flag("--factor", with_factor, "factor the determinant");

    auto* ob = app.add_subcommand("orbit", "predicted Galois conjugates of the generator sum");
    ob->add_option("--l", ell)->required();
    ob->add_option("--p", p)->required();
    ob->add_option("--mu", mu);
    ob->add_option("--prec", prec);

    auto* sc = app.add_subcommand("scan", "certify det(N_ell) != 0 for odd primes up to bound");
    sc->add_option("--bound", bound)->required();
    sc->add_option("--jobs", jobs);
    sc->add_option("--state", state_path, "JSON-lines checkpoint file");

    auto* vf = app.add_subcommand("verify", "run a named acceptance block");
    vf->add_option("--suite", suite, "paper-tables | theta-laws | cm-identities | orbits")
        ->required();
    vf->add_option("--jobs", jobs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (nl->parsed()) {
            nlohmann::json j;
            j["l"] = ell;
            j["det"] = det_exact(matrix_N(ell)).get_str();
            std::cout << j.dump() << "\n";
        } else if (mrank->parsed()) {
            nlohmann::json j;
            j["l"] = ell;
            j["p"] = p;
            j["rank"] = rank_mod_p(matrix_M(ell, p));
            j["n_plus_1"] = (ell - 1) / 2 + 1;
            std::cout << j.dump() << "\n";
        } else if (h1->parsed()) {
            HPlusTable tab = HPlusTable::defaults();
            if (!hplus_path.empty()) {
                std::ifstream in(hplus_path);
                if (!in) throw ParameterError("cannot read " + hplus_path);
                nlohmann::json j;
                in >> j;
                tab.load_json(j);
            }
            if (pmax > 0) {
                nlohmann::json arr = nlohmann::json::array();
                for (long q : odd_primes_upto(pmax))
                    if (q != ell) arr.push_back(h1s2(ell, q, tab).to_json());
                std::cout << arr.dump() << "\n";
            } else {
                std::cout << h1s2(ell, p, tab).to_json().dump() << "\n";
            }
        } else if (cmp->parsed()) {
            std::cout << cm_point(ell, prec).to_json().dump() << "\n";
        } else if (th->parsed()) {
            CMPoint z = cm_point(ell, prec);
            CharFamily fam = default_family(ell);
            long n = (ell - 1) / 2;
            if (idx < 1 || idx > n + 1) throw ParameterError("--i out of range");
            mpz_class pm;
            mpz_ui_pow_ui(pm.get_mpz_t(), (unsigned long)p, (unsigned long)mu);
            Characteristic c = Characteristic::zero((size_t)n);
            for (long k = 0; k < n; k++) {
                c.r[(size_t)k] = mpq_class(fam.r[(size_t)(idx - 1)][(size_t)k], pm);
                c.s[(size_t)k] = mpq_class(fam.s[(size_t)(idx - 1)][(size_t)k], pm);
                c.r[(size_t)k].canonicalize();
                c.s[(size_t)k].canonicalize();
            }
            std::cout << phi_quotient(z, c, prec).to_json().dump() << "\n";
        } else if (am->parsed()) {
            std::cout << a_matrix(ell, default_family(ell)).to_json(with_factor).dump() << "\n";
        } else if (ob->parsed()) {
            OrbitReport r = orbit(ell, p, mu, 0, prec);
            std::cout << r.to_json().dump() << "\n";
            if (!r.distinct) return 1;
        } else if (sc->parsed()) {
            ScanResult r = run_scan(bound, jobs, state_path);
            std::cout << r.report_json() << "\n";
            if (!r.counterexamples.empty()) {
                for (long l : r.counterexamples)
                    std::cerr << "CONJECTURE COUNTEREXAMPLE: det(N_" << l << ") = 0\n";
                return 3;
            }
        } else if (vf->parsed()) {
            SuiteResult r = run_suite(suite, jobs);
            std::cout << r.report_json() << "\n";
            if (!r.pass) return 1;
        }
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedParameters& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
