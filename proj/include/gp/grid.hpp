#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "gp/contour.hpp"
#include "gp/gamma.hpp"
#include "gp/newton.hpp"
#include "gp/parallel.hpp"

namespace gp {

/// The explicit r0 of the spacing lemma, from the proof's three segment
/// estimates with the fixed cutoffs R = 2 (large-|x| switch) and n0 = 4
/// (product split). r0 = min(components)/2.
struct R0Result {
    RealBall r0;
    std::array<RealBall, 3> components;
    RealBall vertical_bound; // the -X-edge estimate; must dominate r0
    bool vertical_ok;
};

inline R0Result compute_r0(const PrecisionContext& ctx) {
    Prec p = ctx.bits;
    RealBall pi = RealBall::pi(p);
    RealBall e1 = exp(RealBall::from_long(1, p));
    RealBall half = RealBall::dyadic(1, -1, p);

    // component 1: 1/2
    RealBall c1 = half;

    // component 2: (2 pi e)^(-1/2) sinh(pi) e^(-pi/2) ((1+R)/e)^(R+1/2), R = 2
    RealBall two_pi_e = pi.mul_2si(1) * e1;
    RealBall pref = inv(sqrt(two_pi_e));
    RealBall three_over_e = RealBall::from_long(3, p) / e1;
    RealBall pow_term = three_over_e.pow_ui(2) * sqrt(three_over_e);
    RealBall c2 = pref * sinh(pi) * exp(-pi.mul_2si(-1)) * pow_term;

    // component 3: e^(-gamma R - R^2/2 zeta(2)) prod_{1<=n<n0} n^-1 e^(-1/n), R = 2, n0 = 4
    RealBall gamma_c = RealBall::euler_gamma(p);
    RealBall zeta2 = pi * pi / RealBall::from_long(6, p);
    RealBall expo = -(gamma_c.mul_2si(1) + zeta2.mul_2si(1)); // -2 gamma - 2 zeta(2)
    RealBall prod = RealBall::from_long(1, p);
    for (long n = 1; n <= 3; ++n) {
        RealBall nb = RealBall::from_long(n, p);
        prod = prod * inv(nb) * exp(-inv(nb));
    }
    RealBall c3 = exp(expo) * prod;

    // vertical edge: (4 pi e)^(-1/2) e^(-pi/2) ((1+R)/e)^(R+1/2)
    RealBall vert = inv(sqrt(two_pi_e.mul_2si(1))) * exp(-pi.mul_2si(-1)) * pow_term;

    // r0 = min/2 by certified comparison (components are far apart)
    RealBall m = c1;
    for (const RealBall& c : {c2, c3})
        if (mpfr_cmp(c.upper().get(), m.lower().get()) < 0) m = c;
    RealBall r0 = m.mul_2si(-1);

    bool vok = mpfr_cmp(vert.lower().get(), r0.upper().get()) >= 0;
    return R0Result{r0, {c1, c2, c3}, vert, vok};
}

/// Machine-checked interpolation data of the spacing lemma: values w_l and
/// pre-images z_{k,l} with G(z_{k,l}) = w_l, plus the five condition flags.
/// zs[l][k] is the root associated with target w[l] near the integer -3(k+1).
struct GridCertificate {
    long L = 0;
    long bits = 0;
    RealBall r0{64};
    std::vector<ComplexBall> w;
    std::vector<std::vector<ComplexBall>> zs;
    std::array<bool, 5> cond_flags{};
    std::vector<std::vector<double>> residual_log2; // log2 upper bounds of |G(z)-w|
    double cond2_threshold = 0.0; // (r0/4) L^(-1/2), the instantiated spacing constant
    double c0_realized = 0.0;     // max |z| / L
    bool simple_roots = true;     // every certifying disk has winding exactly 1
};

namespace detail {

inline const double kNewtonOffsets[4] = {0.1, 0.15, 0.05, 0.2};

/// Root of G(z) = w near the negative integer -n, Newton-refined and
/// certified by a winding check on the radius-1/4 disk around -n.
/// The refinement precision carries an extra log2(n!) on top of the
/// requested bits: |G'(-n)| = n!, so pinning the residual below 2^(-bits/2)
/// needs the root located to 2^(-bits/2 - log2 n!).
inline ComplexBall grid_root(const ComplexBall& w, long n, Prec prec,
                             const PrecisionContext& ctx, bool* simple_ok) {
    BallFunction f = [&w](const ComplexBall& z) {
        return reciprocal_gamma_prec(z, z.prec()) - w.at_prec(z.prec());
    };
    prec += static_cast<Prec>(std::ceil(std::lgamma(static_cast<double>(n) + 1) / std::log(2.0))) + 16;
    for (double delta : kNewtonOffsets) {
        auto root = newton_refine(f, -static_cast<double>(n) - delta, 0.0, prec);
        if (!root) continue;
        // root must lie inside the certifying disk
        Mpfr dre(RealBall::kRadPrec), dim(RealBall::kRadPrec), d(RealBall::kRadPrec);
        mpfr_add_si(dre.get(), root->mid_re().get(), n, MPFR_RNDA);
        mpfr_set(dim.get(), root->mid_im().get(), MPFR_RNDA);
        mpfr_hypot(d.get(), dre.get(), dim.get(), MPFR_RNDU);
        if (mpfr_cmp_d(d.get(), 0.25) >= 0) continue;
        ContourCount disk = count_zeros_disk(f, 0.25, ctx, 1, -static_cast<double>(n), 0.0);
        if (disk.count != 1) {
            if (simple_ok) *simple_ok = false;
            continue;
        }
        return *root;
    }
    throw NewtonDivergence("grid_root: no offset in the schedule converged for n = " +
                           std::to_string(n));
}

} // namespace detail

/// Deterministic construction of the lemma's interpolation grid:
/// w_l = (r0/2)(1 + l/(2L)) e^{2 pi i l/(L+1)}, roots near -3, -6, ..., -3(L+1).
/// Throws ConditionFailed when a certified condition check fails.
inline GridCertificate build_grid(long L, const PrecisionContext& ctx, int threads = 0) {
    if (L < 2) throw DomainError("build_grid: L must be >= 2");
    Prec p = ctx.bits;
    Prec wp = std::max<Prec>(p + 64, 192);
    GridCertificate cert;
    cert.L = L;
    cert.bits = ctx.bits;
    cert.r0 = compute_r0(ctx).r0;

    // targets w_l as exact dyadic points
    RealBall r0h = RealBall::from_mpfr(cert.r0.mid().get(), p).mul_2si(-1);
    RealBall two_pi = RealBall::pi(p).mul_2si(1);
    cert.w.reserve(L + 1);
    for (long l = 0; l <= L; ++l) {
        RealBall scale = r0h * (RealBall::from_long(1, p) +
                                RealBall::from_long(l, p) / RealBall::from_long(2 * L, p));
        RealBall theta = two_pi * RealBall::from_long(l, p) / RealBall::from_long(L + 1, p);
        cert.w.push_back(ComplexBall(scale * cos(theta), scale * sin(theta)).mid_point());
    }

    // roots (parallel over the (l, k) grid; slots are index-addressed)
    cert.zs.assign(L + 1, std::vector<ComplexBall>(L + 1, ComplexBall(wp)));
    std::vector<char> simple(static_cast<size_t>((L + 1) * (L + 1)), 1);
    parallel_for(static_cast<size_t>((L + 1) * (L + 1)), threads, [&](size_t idx) {
        long l = static_cast<long>(idx) / (L + 1);
        long k = static_cast<long>(idx) % (L + 1);
        bool ok = true;
        cert.zs[l][k] = detail::grid_root(cert.w[l], 3 * (k + 1), wp, ctx, &ok);
        simple[idx] = ok ? 1 : 0;
    });
    for (char s : simple) cert.simple_roots = cert.simple_roots && s;

    // residuals, stored as log2 upper bounds; evaluated at each root's own
    // precision (truncating the root would reinflate |G(z) - w| by n!)
    cert.residual_log2.assign(L + 1, std::vector<double>(L + 1, 0.0));
    double worst = -std::numeric_limits<double>::infinity();
    for (long l = 0; l <= L; ++l)
        for (long k = 0; k <= L; ++k) {
            Prec pr = std::max<Prec>(wp, cert.zs[l][k].prec());
            ComplexBall res = reciprocal_gamma_prec(cert.zs[l][k], pr) - cert.w[l].at_prec(pr);
            Mpfr up = res.abs_upper();
            // mpfr exponent is an upper bound on log2
            double lg = mpfr_zero_p(up.get()) ? -1e9
                                              : static_cast<double>(detail::mpfr_get_exp_safe(up));
            cert.residual_log2[l][k] = lg;
            worst = std::max(worst, lg);
        }
    if (worst > -static_cast<double>(ctx.bits) / 2.0)
        throw PrecisionExhausted("build_grid: residual above 2^(-bits/2)");

    // condition flags, certified
    auto flags = [&]() {
        std::array<bool, 5> f{true, true, true, true, true};
        // (1) |w_l| <= r0
        for (const auto& w : cert.w)
            if (mpfr_cmp(w.abs_upper().get(), cert.r0.lower().get()) > 0) f[0] = false;
        // (2) |w_l - w_i| >= (r0/4) L^(-1/2)
        RealBall thr = cert.r0.mul_2si(-2) / sqrt(RealBall::from_long(L, p));
        cert.cond2_threshold = thr.to_double();
        for (long l = 0; l <= L; ++l)
            for (long i = 0; i < l; ++i) {
                ComplexBall d = cert.w[l] - cert.w[i];
                if (mpfr_cmp(d.abs_lower().get(), thr.upper().get()) < 0) f[1] = false;
            }
        // (3) |z - 1| >= 1, (4) |z| <= 3L + 4
        double c0max = 0.0;
        for (long l = 0; l <= L; ++l)
            for (long k = 0; k <= L; ++k) {
                ComplexBall zm1 = cert.zs[l][k] - ComplexBall::from_long(1, wp);
                if (mpfr_cmp_ui(zm1.abs_lower().get(), 1) < 0) f[2] = false;
                Mpfr zu = cert.zs[l][k].abs_upper();
                if (mpfr_cmp_si(zu.get(), 3 * L + 4) > 0) f[3] = false;
                c0max = std::max(c0max, mpfr_get_d(zu.get(), MPFR_RNDU) / static_cast<double>(L));
            }
        cert.c0_realized = c0max;
        // (5) prod_{j != k} |z_{k,l} - z_{j,l}| >= (L-1)!
        mpz_class fac;
        mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(L - 1));
        RealBall fb = RealBall::from_mpz(fac.get_mpz_t(), p);
        for (long l = 0; l <= L; ++l)
            for (long k = 0; k <= L; ++k) {
                RealBall prod = RealBall::from_long(1, wp);
                for (long j = 0; j <= L; ++j) {
                    if (j == k) continue;
                    prod = prod * (cert.zs[l][k] - cert.zs[l][j]).abs_ball();
                }
                if (mpfr_cmp(prod.lower().get(), fb.upper().get()) < 0) f[4] = false;
            }
        return f;
    };
    cert.cond_flags = flags();
    for (int i = 0; i < 5; ++i)
        if (!cert.cond_flags[i])
            throw ConditionFailed(i + 1, "build_grid: condition " + std::to_string(i + 1) +
                                             " failed the certified check");
    return cert;
}

struct GridVerifyReport {
    std::array<bool, 5> conditions{};
    bool residuals_ok = false;
    bool simple_ok = false;
    double max_residual_log2 = 0.0;
    bool pass = false;
};

/// Independent re-verification of a certificate: re-evaluates G at every
/// z_{k,l} with fresh precision and re-derives all five flags and the
/// residual bounds directly from the stored points.
inline GridVerifyReport verify_grid(const GridCertificate& cert, const PrecisionContext& ctx,
                                    int threads = 0) {
    GridVerifyReport rep;
    long L = cert.L;
    if (L < 2 || cert.w.size() != static_cast<size_t>(L + 1) ||
        cert.zs.size() != static_cast<size_t>(L + 1))
        throw DomainError("verify_grid: malformed certificate");
    Prec fp = ctx.bits + 128; // fresh, deliberately different from the build precision

    // residuals: |G(z) - w| <= 2^(-bits/2) at the certificate's stated bits,
    // evaluated at the stored roots' full precision
    std::vector<double> res(static_cast<size_t>((L + 1) * (L + 1)), 0.0);
    parallel_for(res.size(), threads, [&](size_t idx) {
        long l = static_cast<long>(idx) / (L + 1);
        long k = static_cast<long>(idx) % (L + 1);
        Prec pr = std::max<Prec>(fp, cert.zs[l][k].prec());
        ComplexBall r = reciprocal_gamma_prec(cert.zs[l][k], pr) - cert.w[l].at_prec(pr);
        Mpfr up = r.abs_upper();
        res[idx] = mpfr_zero_p(up.get()) ? -1e9
                                         : static_cast<double>(detail::mpfr_get_exp_safe(up));
    });
    rep.max_residual_log2 = -1e9;
    for (double v : res) rep.max_residual_log2 = std::max(rep.max_residual_log2, v);
    rep.residuals_ok = rep.max_residual_log2 <= -static_cast<double>(cert.bits) / 2.0;

    // fresh compute of r0 for condition 1 (do not trust the stored ball)
    RealBall r0 = compute_r0(ctx.with_bits(fp)).r0;

    rep.conditions = {true, true, true, true, true};
    for (const auto& w : cert.w)
        if (mpfr_cmp(w.abs_upper().get(), r0.lower().get()) > 0) rep.conditions[0] = false;
    RealBall thr = r0.mul_2si(-2) / sqrt(RealBall::from_long(L, fp));
    for (long l = 0; l <= L; ++l)
        for (long i = 0; i < l; ++i)
            if (mpfr_cmp((cert.w[l] - cert.w[i]).abs_lower().get(), thr.upper().get()) < 0)
                rep.conditions[1] = false;
    for (long l = 0; l <= L; ++l)
        for (long k = 0; k <= L; ++k) {
            if (mpfr_cmp_ui((cert.zs[l][k] - ComplexBall::from_long(1, fp)).abs_lower().get(), 1) < 0)
                rep.conditions[2] = false;
            if (mpfr_cmp_si(cert.zs[l][k].abs_upper().get(), 3 * L + 4) > 0)
                rep.conditions[3] = false;
        }
    mpz_class fac;
    mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(L - 1));
    RealBall fb = RealBall::from_mpz(fac.get_mpz_t(), fp);
    for (long l = 0; l <= L && rep.conditions[4]; ++l)
        for (long k = 0; k <= L; ++k) {
            RealBall prod = RealBall::from_long(1, fp);
            for (long j = 0; j <= L; ++j)
                if (j != k) prod = prod * (cert.zs[l][k] - cert.zs[l][j]).abs_ball();
            if (mpfr_cmp(prod.lower().get(), fb.upper().get()) < 0) rep.conditions[4] = false;
        }

    // simplicity: winding 1 on each certifying disk (nearest negative integer)
    std::vector<char> simple(static_cast<size_t>((L + 1) * (L + 1)), 1);
    parallel_for(simple.size(), threads, [&](size_t idx) {
        long l = static_cast<long>(idx) / (L + 1);
        long k = static_cast<long>(idx) % (L + 1);
        double re = mpfr_get_d(cert.zs[l][k].mid_re().get(), MPFR_RNDN);
        double n = std::round(-re);
        ComplexBall w = cert.w[l];
        BallFunction f = [&w](const ComplexBall& z) {
            return reciprocal_gamma_prec(z, z.prec()) - w.at_prec(z.prec());
        };
        try {
            ContourCount disk = count_zeros_disk(f, 0.25, ctx, 1, -n, 0.0);
            simple[idx] = disk.count == 1 ? 1 : 0;
        } catch (const Error&) {
            simple[idx] = 0;
        }
    });
    rep.simple_ok = true;
    for (char s : simple) rep.simple_ok = rep.simple_ok && s;

    rep.pass = rep.residuals_ok && rep.simple_ok && rep.conditions[0] && rep.conditions[1] &&
               rep.conditions[2] && rep.conditions[3] && rep.conditions[4];
    return rep;
}

} // namespace gp
