#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gp/bivar_poly.hpp"
#include "gp/contour.hpp"
#include "gp/gamma.hpp"
#include "gp/linalg.hpp"
#include "gp/parallel.hpp"

namespace gp {

/// The theorem's bound c L (L+R) log(L+R).
inline double zero_bound(long L, double R, double c) {
    if (L < 1 || R < 2.0 || c <= 0) throw DomainError("zero_bound: need L>=1, R>=2, c>0");
    double s = static_cast<double>(L) + R;
    return c * static_cast<double>(L) * s * std::log(s);
}

struct ZeroLemmaReport {
    long L = 0;
    double R = 0;
    long count = 0;
    double bound = 0;
    double calibrated_c = 0; // count / (L (L+R) log(L+R))
    double ratio_no_log = 0; // count / (L (L+R)), evidence on the conjectured sharper bound
    bool pass = false;
    double used_R = 0; // after any boundary nudges
};

/// Certified zero count of F(z) = P(z, G(z)) in |z| <= R against the bound.
inline ZeroLemmaReport verify_zero_lemma(const BivarPolynomial& P, double R, double c,
                                         const PrecisionContext& ctx, int threads = 0) {
    if (P.is_zero()) throw DomainError("verify_zero_lemma: zero polynomial");
    if (R < 2.0) throw DomainError("verify_zero_lemma: R must be >= 2");
    BallFunction f = [&P](const ComplexBall& z) {
        ComplexBall g = reciprocal_gamma_prec(z, z.prec());
        return P.evaluate(z, g);
    };
    ZeroLemmaReport rep;
    rep.L = P.L;
    rep.R = R;
    rep.used_R = R;
    ContourCount cc = count_zeros_disk_nudged(f, R, ctx, threads, &rep.used_R);
    rep.count = cc.count;
    rep.bound = zero_bound(P.L, R, c);
    double s = static_cast<double>(P.L) + R;
    rep.calibrated_c = static_cast<double>(rep.count) / (static_cast<double>(P.L) * s * std::log(s));
    rep.ratio_no_log = static_cast<double>(rep.count) / (static_cast<double>(P.L) * s);
    rep.pass = static_cast<double>(rep.count) <= rep.bound;
    return rep;
}

/// Taylor coefficients of G(z)^b at 0 for b = 0..bmax, each series of the
/// given order.
inline std::vector<PowerSeries> reciprocal_gamma_powers(long bmax, size_t order,
                                                        const PrecisionContext& ctx) {
    std::vector<PowerSeries> pows;
    pows.reserve(bmax + 1);
    PowerSeries one(order, ctx.bits);
    one[0] = ComplexBall::from_long(1, ctx.bits);
    pows.push_back(one);
    if (bmax >= 1) {
        PowerSeries g = reciprocal_gamma_taylor(order, ctx);
        pows.push_back(g);
        for (long b = 2; b <= bmax; ++b) pows.push_back(pows.back() * g);
    }
    return pows;
}

/// Taylor coefficients of P(z, G(z)) at 0, order `order`.
inline PowerSeries compose_with_reciprocal_gamma(const BivarPolynomial& P, size_t order,
                                                 const PrecisionContext& ctx) {
    auto pows = reciprocal_gamma_powers(P.L, order, ctx);
    Prec p = ctx.bits;
    PowerSeries out(order, p);
    for (size_t k = 0; k < order; ++k) {
        ComplexBall acc(p);
        for (long a = 0; a <= P.L && static_cast<size_t>(a) <= k; ++a)
            for (long b = 0; b <= P.L; ++b) {
                ComplexBall cab = P.coeff_ball(a, b, p);
                if (cab.is_exact() && cab.contains_zero()) continue;
                acc = acc + cab * pows[b][k - a];
            }
        out[k] = acc;
    }
    return out;
}

struct VanishingOrderResult {
    long order = 0;       // smallest k whose coefficient ball excludes 0
    bool capped = false;  // every computed coefficient ball contained 0
    long cap = 0;
};

/// Order of vanishing of P(z, G(z)) at z = 0: the smallest k whose series
/// coefficient is certified nonzero, computed up to cap = (L+1)^2 + 4.
/// Precision escalates per ctx whenever no coefficient separates from 0.
inline VanishingOrderResult vanishing_order(const BivarPolynomial& P,
                                            const PrecisionContext& ctx) {
    if (P.is_zero()) throw DomainError("vanishing_order: zero polynomial");
    long cap = (P.L + 1) * (P.L + 1) + 4;
    PrecisionContext cur = ctx;
    while (true) {
        PowerSeries s = compose_with_reciprocal_gamma(P, static_cast<size_t>(cap), cur);
        for (long k = 0; k < cap; ++k)
            if (s[k].nonzero_certified()) return VanishingOrderResult{k, false, cap};
        auto next = cur.escalated();
        if (!next) return VanishingOrderResult{cap, true, cap};
        cur = *next;
    }
}

/// The optimality construction: a nonzero P of bidegree <= L whose
/// composition with G vanishes to order >= L^2 + 2L at 0. Built from the
/// ((L+1)^2 - 1) x (L+1)^2 homogeneous system "Taylor coefficient k of
/// P(z, G(z)) is 0", kernel extracted with ball-certified pivots.
inline BivarPolynomial extremal_polynomial(long L, const PrecisionContext& ctx) {
    if (L < 2) throw DomainError("extremal_polynomial: L must be >= 2");
    size_t ncols = static_cast<size_t>((L + 1) * (L + 1));
    size_t nrows = ncols - 1;
    PrecisionContext cur = ctx;
    while (true) {
        Prec p = cur.bits;
        auto pows = reciprocal_gamma_powers(L, nrows, cur);
        linalg::BMatrix m(nrows, std::vector<ComplexBall>(ncols, ComplexBall(p)));
        for (size_t k = 0; k < nrows; ++k)
            for (long a = 0; a <= L; ++a)
                for (long b = 0; b <= L; ++b) {
                    size_t col = static_cast<size_t>(a) * (L + 1) + static_cast<size_t>(b);
                    if (static_cast<size_t>(a) <= k) m[k][col] = pows[b][k - a];
                }
        try {
            auto x = linalg::ball_kernel_vector(std::move(m), ncols, p);
            BivarPolynomial P = BivarPolynomial::zero(L, false, p);
            for (long a = 0; a <= L; ++a)
                for (long b = 0; b <= L; ++b)
                    P.coeffs_ball[a][b] = x[static_cast<size_t>(a) * (L + 1) + b];
            return P;
        } catch (const Inconclusive&) {
            auto next = cur.escalated();
            if (!next)
                throw PrecisionExhausted("extremal_polynomial: kernel pivots not certified");
            cur = *next;
        }
    }
}

// -- random suite ------------------------------------------------------------

/// Coefficients k/64 with k drawn from [-64, 64]; mt19937_64 keeps the
/// stream identical across platforms (distributions are avoided on purpose).
inline BivarPolynomial random_polynomial(long L, std::mt19937_64& rng) {
    BivarPolynomial P = BivarPolynomial::zero(L);
    bool nonzero = false;
    for (long a = 0; a <= L; ++a)
        for (long b = 0; b <= L; ++b) {
            long k = static_cast<long>(rng() % 129) - 64;
            P.coeffs[a][b].re = make_rational(k, 64);
            nonzero = nonzero || k != 0;
        }
    if (!nonzero) P.coeffs[0][0].re = 1;
    return P;
}

struct ZeroLemmaSuiteReport {
    std::vector<ZeroLemmaReport> runs;
    double max_calibrated_c = 0;
    double max_ratio_no_log = 0;
    bool all_pass = true;
    uint64_t seed = 0;
};

/// Random-polynomial suite: `count` draws with L <= Lmax, R <= Rmax checked
/// against the bound with the given c.
inline ZeroLemmaSuiteReport zero_lemma_suite(int count, uint64_t seed, double c, long Lmax,
                                             double Rmax, const PrecisionContext& ctx,
                                             int threads = 0) {
    std::mt19937_64 rng(seed);
    struct Draw {
        BivarPolynomial P;
        double R;
    };
    std::vector<Draw> draws;
    draws.reserve(count);
    for (int i = 0; i < count; ++i) {
        long L = 1 + static_cast<long>(rng() % static_cast<unsigned long>(Lmax));
        double R = 2.0 + 0.1 * static_cast<double>(rng() % 181); // 2.0 .. 20.0 in 0.1 steps
        if (R > Rmax) R = Rmax;
        draws.push_back({random_polynomial(L, rng), R});
    }
    ZeroLemmaSuiteReport rep;
    rep.seed = seed;
    rep.runs.assign(count, ZeroLemmaReport{});
    parallel_for(static_cast<size_t>(count), threads, [&](size_t i) {
        rep.runs[i] = verify_zero_lemma(draws[i].P, draws[i].R, c, ctx, 1);
    });
    for (const auto& r : rep.runs) {
        rep.all_pass = rep.all_pass && r.pass;
        rep.max_calibrated_c = std::max(rep.max_calibrated_c, r.calibrated_c);
        rep.max_ratio_no_log = std::max(rep.max_ratio_no_log, r.ratio_no_log);
    }
    return rep;
}

} // namespace gp
