#pragma once

// Independent oracles for the test suites. Everything here recomputes its
// answer by brute force or by an algorithm unrelated to the production
// path it is checking.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "gp/census.hpp"
#include "gp/contour.hpp"
#include "gp/newton.hpp"
#include "gp/rational.hpp"

namespace oracle {

using namespace gp;

/// Brute-force best rational approximation: scan every reduced p/q with
/// q <= qmax near x.
inline std::pair<BigRational, BigRational> brute_best_rational(const BigRational& x, long qmax) {
    BigRational best, best_gap;
    bool have = false;
    for (long q = 1; q <= qmax; ++q) {
        // p near x*q
        BigRational xq = x * q;
        mpz_class p0;
        mpz_fdiv_q(p0.get_mpz_t(), xq.get_num_mpz_t(), xq.get_den_mpz_t());
        for (mpz_class p = p0 - 1; p <= p0 + 2; ++p) {
            BigRational cand(p, q);
            cand.canonicalize();
            BigRational gap = rational_abs_diff(x, cand);
            if (!have || gap < best_gap ||
                (gap == best_gap && (cand.get_den() < best.get_den() ||
                                     (cand.get_den() == best.get_den() &&
                                      mpz_cmpabs(mpq_numref(cand.get_mpq_t()),
                                                 mpq_numref(best.get_mpq_t())) < 0)))) {
                best = cand;
                best_gap = gap;
                have = true;
            }
        }
    }
    return {best, best_gap};
}

/// Brute-force enumeration of reduced fractions in [n-1, n] with q <= D.
inline std::vector<BigRational> brute_enumerate(long n, long D) {
    std::vector<BigRational> out;
    for (long q = 1; q <= D; ++q)
        for (mpz_class p = mpz_class(n - 1) * q; p <= mpz_class(n) * q; ++p) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), mpz_class(q).get_mpz_t());
            if (g == 1 || (p == 0 && q == 1)) {
                BigRational f(p, q);
                f.canonicalize();
                out.push_back(f);
            }
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Certified Newton-seed root census for G(z) = w on Z(X, Y): Newton from a
/// deterministic seed grid, dedup, keep interior roots, then certify each
/// root's multiplicity with a small-disk winding check. The total replaces
/// the rectangle-contour count as an independent route.
inline long newton_seed_count(const ComplexBall& w, double X, double Y,
                              const PrecisionContext& ctx) {
    const Prec p = 192;
    BallFunction f = [&w](const ComplexBall& z) {
        return reciprocal_gamma_prec(z, z.prec()) - w.at_prec(z.prec());
    };
    // seed grid: >= 200 seeds, spacing <= ~0.5 in x
    int nx = std::max(50, static_cast<int>(std::ceil(2.2 * (X + 2))));
    const double ys[4] = {-0.6, -0.2, 0.2, 0.6};
    std::vector<std::pair<double, double>> roots;
    for (int iy = 0; iy < 4; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            double sx = -X + (X + 1.0) * (ix + 0.5) / nx;
            auto r = newton_refine(f, sx, ys[iy] * Y, p, 60);
            if (!r) continue;
            double rre = mpfr_get_d(r->mid_re().get(), MPFR_RNDN);
            double rim = mpfr_get_d(r->mid_im().get(), MPFR_RNDN);
            if (!(rre > -X + 1e-9 && rre < 1.0 - 1e-9 && std::fabs(rim) < Y - 1e-9)) continue;
            bool dup = false;
            for (auto& [qr, qi] : roots)
                if (std::fabs(qr - rre) < 1e-7 && std::fabs(qi - rim) < 1e-7) dup = true;
            if (!dup) roots.emplace_back(rre, rim);
        }
    }
    // multiplicity via winding on a small disk around each root
    long total = 0;
    for (auto& [rre, rim] : roots) {
        double sep = 0.35;
        for (auto& [qr, qi] : roots) {
            double d = std::hypot(qr - rre, qi - rim);
            if (d > 1e-9) sep = std::min(sep, d / 2);
        }
        ContourCount c = count_zeros_disk(f, sep, ctx, 1, rre, rim);
        total += c.count;
    }
    return total;
}

/// Exact matrix rank by plain rational Gauss-Jordan with partial pivoting
/// (division-based; independent of the fraction-free production path).
inline size_t gauss_rank(std::vector<std::vector<BigRational>> m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size(), rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        // largest |entry| pivot
        for (size_t i = rank; i < rows; ++i) {
            BigRational a = abs(m[i][col]), b = abs(m[piv][col]);
            if (a > b) piv = i;
        }
        if (m[piv][col] == 0) continue;
        std::swap(m[piv], m[rank]);
        BigRational ip = 1 / m[rank][col];
        for (size_t j = col; j < cols; ++j) m[rank][j] *= ip;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            BigRational fct = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= fct * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

/// Brute-force omega: smallest T whose monomial matrix (built here with a
/// plain double loop) has a nontrivial kernel per gauss_rank.
inline long brute_omega(const std::vector<std::pair<BigRational, BigRational>>& pts) {
    for (long T = 1;; ++T) {
        std::vector<std::vector<BigRational>> m;
        for (const auto& [x, y] : pts) {
            std::vector<BigRational> row;
            for (long d = 0; d <= T; ++d)
                for (long i = d; i >= 0; --i) {
                    BigRational v = 1;
                    for (long k = 0; k < i; ++k) v *= x;
                    for (long k = 0; k < d - i; ++k) v *= y;
                    row.push_back(v);
                }
            m.push_back(std::move(row));
        }
        if (gauss_rank(m) < m[0].size()) return T;
    }
}

} // namespace oracle
