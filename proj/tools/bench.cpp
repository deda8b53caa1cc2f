// Benchmark comparing the serial reference kernels against the OpenMP ones:
// theta lattice sums and the det(N_ell) scan.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "cyclotheta/cmgeom.hpp"
#include "cyclotheta/reciprocity.hpp"
#include "cyclotheta/scan.hpp"
#include "cyclotheta/theta.hpp"

using namespace cyclotheta;
using Clock = std::chrono::steady_clock;

static double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int main(int argc, char** argv) {
    long ell = 7, p = 5, prec = 256, bound = 400;
    for (int i = 1; i < argc; i++) {
        std::string a = argv[i];
        auto next = [&](long& out) { if (i + 1 < argc) out = std::atol(argv[++i]); };
        if (a == "--l") next(ell);
        else if (a == "--p") next(p);
        else if (a == "--prec") next(prec);
        else if (a == "--bound") next(bound);
    }
    int hw = omp_get_max_threads();
    std::printf("threads available: %d\n\n", hw);

    {
        CMPoint z = cm_point(ell, prec);
        CharFamily fam = default_family(ell);
        long n = (ell - 1) / 2;
        Characteristic c = Characteristic::zero((size_t)n);
        for (long k = 0; k < n; k++) {
            c.r[(size_t)k] = mpq_class(fam.r[1][(size_t)k], p);
            c.s[(size_t)k] = mpq_class(fam.s[1][(size_t)k], p);
            c.r[(size_t)k].canonicalize();
            c.s[(size_t)k].canonicalize();
        }
        auto t0 = Clock::now();
        ThetaValue ref = theta_constant_reference(z, c, prec);
        auto t1 = Clock::now();
        ThetaValue par = theta_constant(z, c, prec);
        auto t2 = Clock::now();
        double ts = seconds(t0, t1), tp = seconds(t1, t2);
        std::printf("theta  l=%ld denom=%ld prec=%ld\n", ell, p, prec);
        std::printf("  serial reference : %8.3f s\n", ts);
        std::printf("  openmp (x%d)      : %8.3f s   speedup %.2fx\n", hw, tp, ts / tp);
        Mag gap = cc_dist_upper(ref.v, par.v, prec);
        std::printf("  |serial-parallel| <= 2^%ld (certified radii 2^%ld, 2^%ld)\n\n",
                    gap.is_zero() ? -999999L : gap.exp2_of(),
                    ref.v.err.is_zero() ? -999999L : ref.v.err.exp2_of(),
                    par.v.err.is_zero() ? -999999L : par.v.err.exp2_of());
    }

    {
        auto t0 = Clock::now();
        omp_set_num_threads(1);
        ScanResult a = run_scan(bound, 1, "");
        auto t1 = Clock::now();
        omp_set_num_threads(hw);
        ScanResult b = run_scan(bound, hw, "");
        auto t2 = Clock::now();
        double ts = seconds(t0, t1), tp = seconds(t1, t2);
        std::printf("scan   bound=%ld (%zu primes)\n", bound, a.entries.size());
        std::printf("  serial           : %8.3f s\n", ts);
        std::printf("  openmp (x%d)      : %8.3f s   speedup %.2fx\n", hw, tp, ts / tp);
        std::printf("  reports identical: %s\n", a.report_json() == b.report_json() ? "yes" : "NO");
    }
    return 0;
}
