// Acceptance suite: one certified run per criterion, one PASS/FAIL line
// each, exit 0 only if everything passed. Criteria 3, 5 and 7 run through
// the CLI twice (--threads 1 vs N) so the determinism criterion can compare
// report bodies byte for byte.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <vector>

#include "gp/census.hpp"
#include "gp/contour.hpp"
#include "gp/curve_degree.hpp"
#include "gp/gamma.hpp"
#include "gp/grid.hpp"
#include "gp/reports.hpp"
#include "gp/zero_lemma.hpp"
#include "oracle_helpers.hpp"

#ifndef GAMMA_POINTS_CLI_PATH
#error "GAMMA_POINTS_CLI_PATH must point at the CLI binary"
#endif

using namespace gp;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
std::string g_tmpdir;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, bool pass, const std::string& what, double secs) {
    std::printf("%s criterion %2d: %s  [%.1fs]\n", pass ? "PASS" : "FAIL", id, what.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct CliRun {
    int exit_code = -1;
    Json doc;
    std::string body_dump;
};

CliRun run_cli(const std::string& args, const std::string& tag) {
    std::string out = g_tmpdir + "/" + tag + ".json";
    std::string cmd = std::string(GAMMA_POINTS_CLI_PATH) + " " + args + " --out " + out;
    int rc = std::system(cmd.c_str());
    CliRun r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream f(out);
    if (f) {
        r.doc = Json::parse(f, nullptr, false);
        if (!r.doc.is_discarded() && r.doc.contains("body")) r.body_dump = r.doc["body"].dump();
    }
    return r;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int n_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 1 ? static_cast<int>(hw) : 2;
}

const PrecisionContext kCtx = PrecisionContext::standard();

// criterion 10 accumulates body comparisons from 3, 5, 7
struct DeterminismLog {
    long compared = 0;
    long mismatched = 0;
} g_det;

void criterion1() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string note;
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 500 && ok; ++i) {
        double re = (static_cast<double>(rng() % 20000) - 10000.0) / 1000.0;
        double im = (static_cast<double>(rng() % 20000) - 10000.0) / 1000.0;
        ComplexBall r = complement_residual(ComplexBall::from_doubles(re, im, 256), kCtx);
        if (!r.contains_zero()) {
            ok = false;
            note = "complement residual missed 0 at z = " + fmt(re) + "+" + fmt(im) + "i";
        }
    }
    mpz_class fact(1);
    for (long n = 1; n <= 12 && ok; ++n) {
        if (n > 1) fact *= (n - 1);
        GammaEval g = gamma(ComplexBall::from_long(n, 256), kCtx);
        RealBall expect = RealBall::from_mpz(fact.get_mpz_t(), 256);
        Mpfr d(64), dist(64);
        mpfr_sub(d.get(), g.value.mid_re().get(), expect.mid().get(), MPFR_RNDA);
        mpfr_hypot(dist.get(), d.get(), g.value.mid_im().get(), MPFR_RNDU);
        if (mpfr_cmp(dist.get(), g.value.rad().get()) > 0) {
            ok = false;
            note = "Gamma(" + std::to_string(n) + ") ball misses (n-1)!";
        }
    }
    if (ok) {
        GammaEval g = gamma(ComplexBall::from_real(RealBall::dyadic(1, -1, 256)), kCtx);
        RealBall ratio = (g.value * g.value).real_part() / RealBall::pi(256);
        if (!ratio.contains_si(1) || mpfr_get_d(ratio.rad().get(), MPFR_RNDU) > std::ldexp(1.0, -100)) {
            ok = false;
            note = "Gamma(1/2)^2/pi not within 2^-100 of 1";
        }
    }
    report(1, ok, "gamma identities (500 complement residuals, factorials to 11!, Gamma(1/2)^2/pi)" +
                      (note.empty() ? "" : " -- " + note),
           elapsed(t0));
}

void criterion2() {
    auto t0 = Clock::now();
    ContourCount a = count_solutions_rectangle(ComplexBall(64), {10.5, 1.0}, kCtx, n_threads());
    ContourCount b = count_solutions_rectangle(ComplexBall(64), {40.5, 1.0}, kCtx, n_threads());
    bool ok = a.count == 11 && b.count == 41;
    report(2, ok,
           "known-zero counting: N(10.5, 0) = " + std::to_string(a.count) +
               " (want 11), N(40.5, 0) = " + std::to_string(b.count) + " (want 41)",
           elapsed(t0));
}

void criterion3() {
    auto t0 = Clock::now();
    double r0 = compute_r0(kCtx).r0.to_double();
    const double Xs[3] = {10.5, 20.5, 40.5};
    bool ok = true;
    std::string note;
    long max_dev = 0;
    for (int j = 0; j < 20 && ok; ++j) {
        double mod = r0 * (0.15 + 0.8 * j / 19.0);
        double ang = 2.0 * M_PI * j / 20.0;
        double wre = mod * std::cos(ang), wim = mod * std::sin(ang);
        std::string wflag = "--w " + fmt(wre) + "," + fmt(wim);
        std::string args = "count-rect " + wflag + " --sweep 10.5,20.5,40.5";
        CliRun rN = run_cli(args + " --threads " + std::to_string(n_threads()),
                            "c3_w" + std::to_string(j) + "_tN");
        CliRun r1 = run_cli(args + " --threads 1", "c3_w" + std::to_string(j) + "_t1");
        g_det.compared++;
        if (rN.body_dump != r1.body_dump || rN.body_dump.empty()) g_det.mismatched++;
        if (rN.exit_code != 0) {
            ok = false;
            note = "CLI failed for w index " + std::to_string(j);
            break;
        }
        auto rows = rN.doc["body"]["rows"];
        for (int k = 0; k < 3; ++k) {
            long count = rows[k]["count"].get<long>();
            long dev = std::labs(count - static_cast<long>(Xs[k]));
            max_dev = std::max(max_dev, dev);
            if (dev > 3) {
                ok = false;
                note = "count deviates by " + std::to_string(dev) + " at X = " + fmt(Xs[k]);
                break;
            }
            ComplexBall w = ComplexBall::from_doubles(wre, wim, 256);
            long oracle_count = oracle::newton_seed_count(w, Xs[k], 1.0, kCtx);
            if (oracle_count != count) {
                ok = false;
                note = "contour count " + std::to_string(count) + " != oracle " +
                       std::to_string(oracle_count) + " at X = " + fmt(Xs[k]) +
                       ", w index " + std::to_string(j);
                break;
            }
        }
    }
    report(3, ok,
           "Lemma N(X,w) on a 20-point w grid, X in {10.5, 20.5, 40.5}: max |count - X| = " +
               std::to_string(max_dev) + " (<= 3), counts match the Newton-seed oracle" +
               (note.empty() ? "" : " -- " + note),
           elapsed(t0));
}

void criterion4() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string note;
    for (long L : {2L, 5L, 10L, 20L}) {
        try {
            GridCertificate c = build_grid(L, kCtx, n_threads());
            GridVerifyReport rep = verify_grid(c, kCtx, n_threads());
            if (!rep.pass) {
                ok = false;
                note = "verify failed at L = " + std::to_string(L);
                break;
            }
        } catch (const Error& e) {
            ok = false;
            note = std::string("exception at L = ") + std::to_string(L) + ": " + e.what();
            break;
        }
    }
    report(4, ok,
           "grid certificates verified for L in {2, 5, 10, 20} (five conditions incl. "
           "(L-1)! spacing, certified residuals, simple roots)" +
               (note.empty() ? "" : " -- " + note),
           elapsed(t0));
}

void criterion5() {
    auto t0 = Clock::now();
    std::string args = "zerolemma --suite random --count 100 --seed 7 --c 2 --Lmax 5 --Rmax 20";
    CliRun rN = run_cli(args + " --threads " + std::to_string(n_threads()), "c5_tN");
    CliRun r1 = run_cli(args + " --threads 1", "c5_t1");
    g_det.compared++;
    if (rN.body_dump != r1.body_dump || rN.body_dump.empty()) g_det.mismatched++;
    bool ok = rN.exit_code == 0 && rN.doc["body"]["all_pass"].get<bool>();
    double max_c = ok ? rN.doc["body"]["max_calibrated_c"].get<double>() : 0.0;
    std::string note;
    // tightness family: P = w^L hits L (floor(R)+1) exactly
    for (long L : {1L, 2L, 3L, 4L, 5L}) {
        BivarPolynomial p = BivarPolynomial::monomial(L, 0, L);
        ZeroLemmaReport r = verify_zero_lemma(p, 10.5, 2.0, kCtx, n_threads());
        if (r.count != L * 11) {
            ok = false;
            note = " -- w^" + std::to_string(L) + " counted " + std::to_string(r.count) +
                   " != " + std::to_string(L * 11);
            break;
        }
    }
    report(5, ok,
           "zero lemma: 100 seeded random P (L<=5, R<=20) within 2 L(L+R)log(L+R), max "
           "calibrated c = " +
               fmt(max_c) + "; tightness family w^L exact" + note,
           elapsed(t0));
}

void criterion6() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string note;
    for (long L : {2L, 3L, 4L}) {
        BivarPolynomial p = extremal_polynomial(L, kCtx);
        auto vo = vanishing_order(p, kCtx);
        if (vo.order < L * L + 2 * L) {
            ok = false;
            note = " -- L = " + std::to_string(L) + " reached only order " +
                   std::to_string(vo.order);
            break;
        }
    }
    report(6, ok, "extremal construction: vanishing_order >= L^2 + 2L for L in {2, 3, 4}" + note,
           elapsed(t0));
}

void criterion7() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string note;
    for (long n = 2; n <= 6 && ok; ++n) {
        for (long D : {50L, 200L}) {
            std::string args = "census --n " + std::to_string(n) + " --D " + std::to_string(D);
            std::string tag = "c7_n" + std::to_string(n) + "_D" + std::to_string(D);
            CliRun rN = run_cli(args + " --threads " + std::to_string(n_threads()), tag + "_tN");
            CliRun r1 = run_cli(args + " --threads 1", tag + "_t1");
            g_det.compared++;
            if (rN.body_dump != r1.body_dump || rN.body_dump.empty()) g_det.mismatched++;
            if (rN.exit_code != 0) {
                ok = false;
                note = " -- CLI exit " + std::to_string(rN.exit_code) + " at (n, D) = (" +
                       std::to_string(n) + ", " + std::to_string(D) + ")";
                break;
            }
            const Json& b = rN.doc["body"];
            long N = b["N"].get<long>();
            long Np = b["N_prime"].get<long>();
            long undecided = b["undecided_count"].get<long>();
            long candidates = b["numerical_candidates"].get<long>();
            bool bounds_ok = b["bounds_ok"].get<bool>();
            // paper-exact expectations: both integer endpoints hit for Gamma;
            // for 1/Gamma an endpoint m hits iff (m-1)! <= D. At (n, D) =
            // (6, 50), 1/Gamma(6) = 1/120 has denominator 120 > 50, so the
            // expected N' there is 1 (the spec criterion's blanket "2" is a
            // known slip; see the hits list for the certified classification).
            long expect_Np = 0;
            for (long m : {n - 1, n}) {
                mpz_class f;
                mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m - 1));
                if (f <= D) ++expect_Np;
            }
            if (n == 6 && D == 50)
                std::printf("    note: (n, D) = (6, 50): 1/Gamma(6) = 1/120 has denominator "
                            "120 > 50 => N' = 1 by the definition (criterion text says 2)\n");
            if (!(N == 2 && Np == expect_Np && undecided == 0 && candidates == 0 && bounds_ok)) {
                ok = false;
                note = " -- (n, D) = (" + std::to_string(n) + ", " + std::to_string(D) +
                       "): N = " + std::to_string(N) + ", N' = " + std::to_string(Np) +
                       " (want 2, " + std::to_string(expect_Np) + "), undecided = " +
                       std::to_string(undecided) + ", candidates = " + std::to_string(candidates) +
                       ", bounds_ok = " + std::to_string(bounds_ok);
                break;
            }
            // hits must be exactly the integer endpoints
            for (const auto& h : b["hits"]) {
                if (h["q"].get<std::string>() != "1") {
                    ok = false;
                    note = " -- non-integer hit at p/q = " + h["p"].get<std::string>() + "/" +
                           h["q"].get<std::string>();
                    break;
                }
            }
        }
    }
    report(7, ok,
           "census n in {2..6}, D in {50, 200}: hits are exactly the integer endpoints "
           "(N = 2; N' = 2 except N' = 1 at (6,50) where 1/120 needs q = 120), zero "
           "Undecided at max_bits 4096, N <= bound(c=1)" +
               note,
           elapsed(t0));
}

void criterion8() {
    auto t0 = Clock::now();
    // coordinate pool {0..3}/{1,2} = 7 values, 49 grid points
    std::vector<BigRational> vals;
    for (long num = 0; num <= 3; ++num)
        for (long den : {1L, 2L}) {
            BigRational v = make_rational(num, den);
            if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
        }
    std::vector<std::pair<BigRational, BigRational>> grid;
    for (const auto& x : vals)
        for (const auto& y : vals) grid.emplace_back(x, y);

    std::atomic<long> checked{0};
    std::atomic<bool> ok{true};
    std::string note;
    std::mutex note_m;

    auto check_set = [&](const std::vector<std::pair<BigRational, BigRational>>& pts) {
        if (!ok.load()) return;
        PointSet s = PointSet::from_exact(pts);
        long w = omega(s);
        long brute = oracle::brute_omega(pts);
        long dim = omega_dimension_bound(pts.size());
        if (w != brute || w > dim) {
            bool expected = true;
            if (ok.compare_exchange_strong(expected, false)) {
                std::lock_guard<std::mutex> lock(note_m);
                note = " -- omega = " + std::to_string(w) + ", brute = " + std::to_string(brute) +
                       ", dim bound = " + std::to_string(dim) + " on a size-" +
                       std::to_string(pts.size()) + " set";
            }
        }
        checked++;
    };

    // exhaustive up to size 3
    size_t n = grid.size();
    for (size_t i = 0; i < n && ok; ++i) check_set({grid[i]});
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    parallel_for(pairs.size(), n_threads(), [&](size_t k) {
        check_set({grid[pairs[k].first], grid[pairs[k].second]});
    });
    std::vector<std::array<size_t, 3>> triples;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) triples.push_back({i, j, k});
    parallel_for(triples.size(), n_threads(), [&](size_t k) {
        check_set({grid[triples[k][0]], grid[triples[k][1]], grid[triples[k][2]]});
    });
    // seeded deterministic samples for sizes 4..8 (the literal family of all
    // <=8-subsets has ~4.5e8 members and cannot run in the budget; the
    // sampled sub-family is fixed by the seed)
    std::mt19937_64 rng(20250810);
    for (size_t sz = 4; sz <= 8; ++sz) {
        std::vector<std::vector<std::pair<BigRational, BigRational>>> batch;
        for (int rep = 0; rep < 6000; ++rep) {
            std::vector<size_t> idx;
            while (idx.size() < sz) {
                size_t c = rng() % n;
                if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
            }
            std::vector<std::pair<BigRational, BigRational>> pts;
            for (size_t i : idx) pts.push_back(grid[i]);
            batch.push_back(std::move(pts));
        }
        parallel_for(batch.size(), n_threads(), [&](size_t k) { check_set(batch[k]); });
        if (!ok) break;
    }
    report(8, ok,
           "omega(S) == brute-force rank oracle and <= dimension bound on " +
               std::to_string(checked.load()) +
               " point sets (exhaustive to size 3, seeded samples to size 8)" + note,
           elapsed(t0));
}

void criterion9() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string note;
    const double lambda0 = 128.0;
    for (long d : {1L, 2L})
        for (double H : {1e3, 1e6})
            for (long n : {2L, 5L}) {
                try {
                    auto sel = select_parameters(n, d, H, lambda0, 1.0);
                    auto res = bp_condition(sel.params);
                    if (!res.holds || !sel.choix_holds) {
                        ok = false;
                        note = " -- fails at d=" + std::to_string(d) + " H=" + fmt(H) +
                               " n=" + std::to_string(n);
                    }
                } catch (const Error& e) {
                    ok = false;
                    note = std::string(" -- ") + e.what();
                }
            }
    report(9, ok,
           "BP parameter chain holds across d in {1,2}, H in {1e3,1e6}, n in {2,5} at "
           "lambda0 = 128 (T = ceil(17 c d Z), M = Z^{cZ})" +
               note,
           elapsed(t0));
}

void criterion10() {
    bool ok = g_det.compared >= 12 && g_det.mismatched == 0;
    report(10, ok,
           "determinism: " + std::to_string(g_det.compared) +
               " CLI report bodies from criteria 3, 5, 7 byte-identical between --threads 1 "
               "and --threads N (" +
               std::to_string(g_det.mismatched) + " mismatches)",
           0.0);
}

} // namespace

int main() {
    char tmpl[] = "/tmp/gamma_points_acceptance_XXXXXX";
    const char* dir = mkdtemp(tmpl);
    g_tmpdir = dir ? dir : "/tmp";
    std::printf("acceptance suite: CLI = %s, scratch = %s\n", GAMMA_POINTS_CLI_PATH,
                g_tmpdir.c_str());
    auto t0 = Clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%d/10 criteria passed in %.1fs\n", 10 - g_failures, elapsed(t0));
    return g_failures == 0 ? 0 : 1;
}
