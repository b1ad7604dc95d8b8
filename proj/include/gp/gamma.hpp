#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "gp/bernoulli.hpp"
#include "gp/complex_ball.hpp"
#include "gp/power_series.hpp"
#include "gp/prec.hpp"

namespace gp {

/// Shared constants at a given precision; each ball contains the true value.
struct GammaConstants {
    RealBall euler_gamma;
    RealBall zeta2;
    RealBall pi;

    static GammaConstants at(Prec prec) {
        RealBall pi = RealBall::pi(prec);
        return GammaConstants{RealBall::euler_gamma(prec),
                              pi * pi / RealBall::from_long(6, prec), pi};
    }
};

enum class GammaMethod { weierstrass, stirling_right, stirling_left_reflection, recurrence };

inline const char* to_string(GammaMethod m) {
    switch (m) {
        case GammaMethod::weierstrass: return "weierstrass";
        case GammaMethod::stirling_right: return "stirling_right";
        case GammaMethod::stirling_left_reflection: return "stirling_left_reflection";
        case GammaMethod::recurrence: return "recurrence";
    }
    return "?";
}

struct GammaEval {
    ComplexBall input;
    ComplexBall value;
    GammaMethod method;
};

namespace detail {

inline long mpfr_get_exp_safe(const Mpfr& v) {
    if (mpfr_zero_p(v.get())) return -(1L << 30);
    if (!mpfr_number_p(v.get())) return (1L << 30);
    return static_cast<long>(mpfr_get_exp(v.get()));
}

/// Smallest Stirling truncation K whose certified remainder at |z| >= zlo,
/// sec(arg/2) <= secb is below 2^-wp. Probed with double arithmetic
/// (deterministic), certified later by stirling_remainder.
inline unsigned long stirling_pick_terms(double zlo, double secb, long wp) {
    double target = -static_cast<double>(wp) * 0.6931471805599453 - 4.0;
    unsigned long best = 0;
    for (unsigned long k = 4;; k = k + std::max<unsigned long>(2, k / 4)) {
        double n = 2.0 * static_cast<double>(k) + 2.0;
        // log |B_n| ~ log 2 + lgamma(n+1) - n log(2 pi)
        double logb = std::log(2.0) + std::lgamma(n + 1.0) - n * std::log(2.0 * M_PI);
        double logr = logb - std::log(n * (n - 1.0)) - (n - 1.0) * std::log(zlo) +
                      n * std::log(secb);
        if (logr <= target) {
            best = k;
            break;
        }
        if (k > 8 * static_cast<unsigned long>(wp) + 64) {
            best = k; // give up growing; certified bound will reject and escalate
            break;
        }
    }
    return best;
}

/// Certified bound of the Stirling remainder after K terms:
/// |R| <= |B_{2K+2}| / ((2K+2)(2K+1) |z|^{2K+1}) * sec(arg(z)/2)^{2K+2}.
inline Mpfr stirling_remainder(const Mpfr& zlo, const Mpfr& secb, unsigned long K) {
    Mpfr r(RealBall::kRadPrec);
    BigRational b = bernoulli_exact(K + 1);
    mpfr_set_q(r.get(), b.get_mpq_t(), MPFR_RNDU);
    mpfr_abs(r.get(), r.get(), MPFR_RNDU);
    mpfr_div_ui(r.get(), r.get(), 2 * K + 2, MPFR_RNDU);
    mpfr_div_ui(r.get(), r.get(), 2 * K + 1, MPFR_RNDU);
    Mpfr t(RealBall::kRadPrec);
    mpfr_pow_ui(t.get(), zlo.get(), 2 * K + 1, MPFR_RNDD);
    mpfr_div(r.get(), r.get(), t.get(), MPFR_RNDU);
    mpfr_pow_ui(t.get(), secb.get(), 2 * K + 2, MPFR_RNDU);
    mpfr_mul(r.get(), r.get(), t.get(), MPFR_RNDU);
    return r;
}

/// log Gamma(z) for a ball with certified Re(z) > 0, by the Stirling series
/// with Olver's remainder bound. Throws DomainError when the ball is too
/// wide to certify (caller subdivides or escalates).
inline ComplexBall stirling_log_gamma(const ComplexBall& z, Prec wp) {
    RealBall re = z.real_part();
    Mpfr re_lo = re.lower();
    if (mpfr_sgn(re_lo.get()) <= 0)
        throw DomainError("stirling_log_gamma: ball not certified in Re > 0");
    Mpfr zlo = z.abs_lower();
    Mpfr zhi = z.abs_upper();
    // sec(theta/2)^2 = 2/(1+cos theta), cos theta >= re_lo/|z|_hi
    Mpfr c(RealBall::kRadPrec), secb(RealBall::kRadPrec);
    mpfr_div(c.get(), re_lo.get(), zhi.get(), MPFR_RNDD);
    mpfr_add_ui(c.get(), c.get(), 1, MPFR_RNDD);
    mpfr_ui_div(secb.get(), 2, c.get(), MPFR_RNDU);
    mpfr_sqrt(secb.get(), secb.get(), MPFR_RNDU);

    unsigned long K = stirling_pick_terms(mpfr_get_d(zlo.get(), MPFR_RNDD),
                                          mpfr_get_d(secb.get(), MPFR_RNDU), wp);
    Mpfr rem = stirling_remainder(zlo, secb, K);
    for (int grow = 0; grow < 4 && !(mpfr_number_p(rem.get()) &&
                                     mpfr_get_exp_safe(rem) < -static_cast<long>(wp)); ++grow) {
        K += K / 2 + 8;
        rem = stirling_remainder(zlo, secb, K);
    }

    Prec p = wp;
    auto bern = bernoulli_balls(K, p);
    ComplexBall u = inv(z);
    ComplexBall u2 = u * u;
    ComplexBall t = u;
    ComplexBall acc(p);
    for (unsigned long k = 1; k <= K; ++k) {
        RealBall coef = (*bern)[k - 1] / RealBall::from_long(static_cast<long>(2 * k) *
                                                          static_cast<long>(2 * k - 1), p);
        acc = acc + t.mul_real(coef);
        if (k < K) t = t * u2;
    }
    acc = acc.widened(rem);

    RealBall half = RealBall::dyadic(1, -1, p);
    ComplexBall zmh = z - ComplexBall::from_real(half);
    RealBall log2pi_half = log(RealBall::pi(p).mul_2si(1)).mul_2si(-1);
    ComplexBall lg = zmh * log(z) - z + ComplexBall::from_real(log2pi_half) + acc;
    return lg;
}

} // namespace detail

/// 1/Gamma on a ball at a fixed working precision (no escalation).
/// Core evaluation: Stirling after rising-factorial pull-in on the right
/// half-plane, complement-formula reflection on the left.
inline ComplexBall reciprocal_gamma_prec(const ComplexBall& z, Prec prec,
                                         GammaMethod* method_out = nullptr) {
    Prec wp = prec + 64;
    ComplexBall zw = z.at_prec(wp);
    const long target = std::max<long>(8, (22 * wp) / 100);
    const bool right = mpfr_cmp_d(z.mid_re().get(), 0.5) >= 0;
    if (method_out)
        *method_out = right ? GammaMethod::stirling_right : GammaMethod::stirling_left_reflection;

    auto right_reciprocal = [&](const ComplexBall& w) {
        // 1/Gamma(w) = prod_{j=0}^{m-1} (w+j) * exp(-log Gamma(w+m))
        RealBall re = w.real_part();
        Mpfr relo = re.lower();
        double lo = mpfr_get_d(relo.get(), MPFR_RNDD);
        if (!(lo > -1e6)) throw DomainError("reciprocal_gamma: ball too wide");
        long m = 0;
        if (lo < static_cast<double>(target)) m = static_cast<long>(std::ceil(target - lo));
        ComplexBall rising = ComplexBall::from_long(1, wp);
        for (long j = 0; j < m; ++j) rising = rising * w.add_long(j);
        ComplexBall lg = detail::stirling_log_gamma(w.add_long(m), wp);
        return rising * exp(-lg);
    };

    ComplexBall out(wp);
    if (right) {
        out = right_reciprocal(zw);
    } else {
        // G(z) = sin(pi z)/pi * Gamma(1-z), Gamma(w) = exp(log Gamma(w+m)) / prod (w+j)
        ComplexBall w = ComplexBall::from_long(1, wp) - zw;
        RealBall re = w.real_part();
        Mpfr relo = re.lower();
        double lo = mpfr_get_d(relo.get(), MPFR_RNDD);
        if (lo <= 0.0) throw DomainError("reciprocal_gamma: ball too wide for reflection");
        long m = 0;
        if (lo < static_cast<double>(target)) m = static_cast<long>(std::ceil(target - lo));
        ComplexBall rising = ComplexBall::from_long(1, wp);
        for (long j = 0; j < m; ++j) rising = rising * w.add_long(j);
        ComplexBall lg = detail::stirling_log_gamma(w.add_long(m), wp);
        RealBall pi = RealBall::pi(wp);
        ComplexBall s = sin(zw.mul_real(pi));
        out = s.mul_real(inv(pi)) * exp(lg) / rising;
    }
    return out.at_prec(prec);
}

/// Certified 1/Gamma(z). For exact (point) inputs the precision escalates
/// per ctx until the result width is <= 2^(32-bits) * max(1, |value|);
/// ball inputs get a single evaluation at ctx.bits (the input radius is the
/// accuracy floor and escalation cannot beat it).
inline GammaEval reciprocal_gamma(const ComplexBall& z, const PrecisionContext& ctx) {
    if (!z.is_finite()) throw DomainError("reciprocal_gamma: non-finite input");
    GammaMethod method = GammaMethod::stirling_right;
    if (!z.is_exact()) {
        ComplexBall v = reciprocal_gamma_prec(z, ctx.bits, &method);
        return GammaEval{z, v, method};
    }
    PrecisionContext cur = ctx;
    while (true) {
        ComplexBall v = reciprocal_gamma_prec(z, cur.bits, &method);
        Mpfr tol(RealBall::kRadPrec);
        mpfr_set(tol.get(), v.abs_upper().get(), MPFR_RNDU);
        if (mpfr_cmp_ui(tol.get(), 1) < 0) mpfr_set_ui(tol.get(), 1, MPFR_RNDU);
        mpfr_mul_2si(tol.get(), tol.get(), 32 - ctx.bits, MPFR_RNDU);
        if (mpfr_cmp(v.rad().get(), tol.get()) <= 0) return GammaEval{z, v, method};
        auto next = cur.escalated();
        if (!next) throw PrecisionExhausted("reciprocal_gamma: tolerance unreachable at max_bits");
        cur = *next;
    }
}

/// Gamma(z) = 1 / reciprocal_gamma(z); errors out on balls enclosing a pole.
inline GammaEval gamma(const ComplexBall& z, const PrecisionContext& ctx) {
    GammaEval g = reciprocal_gamma(z, ctx);
    if (g.value.contains_zero())
        throw PoleError("gamma: reciprocal ball contains 0 (pole or insufficient precision)");
    return GammaEval{z, inv(g.value), g.method};
}

/// 1/(Gamma(z) Gamma(1-z)) - sin(pi z)/pi; encloses 0 whenever the
/// implementation is sound (the identity is exact).
inline ComplexBall complement_residual(const ComplexBall& z, const PrecisionContext& ctx) {
    Prec p = ctx.bits + 32;
    ComplexBall zw = z.at_prec(p);
    ComplexBall g1 = reciprocal_gamma_prec(zw, p);
    ComplexBall g2 = reciprocal_gamma_prec(ComplexBall::from_long(1, p) - zw, p);
    RealBall pi = RealBall::pi(p);
    ComplexBall s = sin(zw.mul_real(pi)).mul_real(inv(pi));
    return (g1 * g2 - s).at_prec(ctx.bits);
}

/// Functional-equation utility: 1/Gamma(z) from 1/Gamma(z+1) via
/// G(z) = z * G(z+1). Used by consistency tests.
inline ComplexBall reciprocal_gamma_recurrence(const ComplexBall& z, Prec prec) {
    ComplexBall g1 = reciprocal_gamma_prec(z.add_long(1), prec);
    return (z.at_prec(prec + 32) * g1.at_prec(prec + 32)).at_prec(prec);
}

/// Weierstrass partial product with a certified tail bound:
/// G(z) = z e^{gamma z} prod_{n<=N} (1+z/n) e^{-z/n} * e^delta,
/// |delta| <= |z|^2 / (2 N (1 - |z|/(N+1))). Accuracy is O(|z|^2/N); this
/// is the cross-check evaluator, not the production path.
inline ComplexBall reciprocal_gamma_weierstrass(const ComplexBall& z, unsigned long terms,
                                                Prec prec) {
    Mpfr zhi = z.abs_upper();
    Mpfr q(RealBall::kRadPrec);
    mpfr_div_ui(q.get(), zhi.get(), terms + 1, MPFR_RNDU);
    if (mpfr_cmp_d(q.get(), 0.5) >= 0)
        throw DomainError("weierstrass: need N >= 2|z| for the tail bound");
    Prec wp = prec + 32;
    ComplexBall zw = z.at_prec(wp);
    RealBall gamma_c = RealBall::euler_gamma(wp);
    // harmonic number H_N exactly, then prod e^{-z/n} = e^{-z H_N}
    BigRational h(0);
    for (unsigned long n = 1; n <= terms; ++n) h += make_rational(1, static_cast<long>(n));
    RealBall hn = rational_to_ball(h, wp);
    ComplexBall acc = exp(zw.mul_real(gamma_c - hn)) * zw;
    for (unsigned long n = 1; n <= terms; ++n) {
        ComplexBall f = zw.mul_real(inv(RealBall::from_long(static_cast<long>(n), wp))).add_long(1);
        acc = acc * f;
    }
    // tail factor e^delta in [e^-t, e^t]
    Mpfr t(RealBall::kRadPrec);
    mpfr_mul(t.get(), zhi.get(), zhi.get(), MPFR_RNDU);
    mpfr_div_ui(t.get(), t.get(), 2 * terms, MPFR_RNDU);
    Mpfr onemq(RealBall::kRadPrec);
    mpfr_ui_sub(onemq.get(), 1, q.get(), MPFR_RNDD);
    mpfr_div(t.get(), t.get(), onemq.get(), MPFR_RNDU);
    RealBall tb(wp);
    mpfr_set(tb.rb_mid().get(), t.get(), MPFR_RNDU);
    RealBall factor(wp);
    {
        RealBall et = exp(tb), emt = inv(et);
        factor = hull(et, emt);
    }
    return (acc * ComplexBall::from_real(factor)).at_prec(prec);
}

struct RadialGrowthReport {
    double max_log_modulus;
    double bound_log;
    bool pass;
    double tightest_c; // smallest c that would pass at this R
};

/// Samples |1/Gamma| on the circle |z| = R and compares max log|G| against
/// c R log R. The maximum-modulus principle makes the circle the extremal
/// locus for the disk bound.
inline RadialGrowthReport radial_growth_check(double R, int samples,
                                              const PrecisionContext& ctx, double c = 3.0) {
    if (R < 2.0) throw DomainError("radial_growth_check: R must be >= 2");
    if (samples < 64) throw DomainError("radial_growth_check: samples must be >= 64");
    Prec p = ctx.bits;
    RealBall rb = RealBall::from_double(R, p);
    RealBall two_pi = RealBall::pi(p).mul_2si(1);
    double max_log = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < samples; ++j) {
        RealBall theta = two_pi * RealBall::from_long(j, p) / RealBall::from_long(samples, p);
        ComplexBall z(rb * cos(theta), rb * sin(theta));
        ComplexBall g = reciprocal_gamma_prec(z, p);
        Mpfr hi = g.abs_upper();
        if (mpfr_sgn(hi.get()) <= 0) continue;
        Mpfr lg(RealBall::kRadPrec);
        mpfr_log(lg.get(), hi.get(), MPFR_RNDU);
        max_log = std::max(max_log, mpfr_get_d(lg.get(), MPFR_RNDU));
    }
    double bound = c * R * std::log(R);
    return RadialGrowthReport{max_log, bound, max_log <= bound,
                              max_log / (R * std::log(R))};
}

/// Taylor coefficients of 1/Gamma at 0:
/// G(z) = z exp(gamma z + sum_{k>=2} (-1)^{k+1} zeta(k) z^k / k), truncated.
/// g0 = 0 and g1 = 1 exactly.
inline PowerSeries reciprocal_gamma_taylor(size_t order, const PrecisionContext& ctx) {
    if (order < 2) throw DomainError("reciprocal_gamma_taylor: order must be >= 2");
    Prec p = ctx.bits + 32;
    PowerSeries a(order, p);
    a[1] = ComplexBall::from_real(RealBall::euler_gamma(p));
    for (size_t k = 2; k < order; ++k) {
        RealBall zk = zeta_integer(static_cast<unsigned long>(k), p);
        RealBall coef = zk / RealBall::from_long(static_cast<long>(k), p);
        if (k % 2 == 0) coef = -coef;
        a[k] = ComplexBall::from_real(coef);
    }
    PowerSeries e = series_exp(a);
    PowerSeries g = e.shift_up();
    PowerSeries out(order, ctx.bits);
    for (size_t k = 0; k < order; ++k) out[k] = g[k].at_prec(ctx.bits);
    return out;
}

} // namespace gp
