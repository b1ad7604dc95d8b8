#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gp/gamma.hpp"
#include "gp/parallel.hpp"
#include "gp/rational.hpp"
#include "gp/rational_approx.hpp"

namespace gp {

/// All reduced p/q with 1 <= q <= D in [n-1, n], ascending, endpoints
/// included: the Farey sequence of order D shifted by n-1.
inline std::vector<BigRational> enumerate_rationals(long n, long D) {
    if (n < 2 || D < 1) throw DomainError("enumerate_rationals: need n >= 2, D >= 1");
    std::vector<BigRational> out;
    // Farey neighbors on [0,1]: start 0/1, 1/D
    mpz_class a = 0, b = 1, c = 1, d = D;
    out.push_back(BigRational(n - 1));
    while (c <= D) {
        BigRational f(mpz_class((n - 1)) * d + c, d);
        f.canonicalize();
        out.push_back(f);
        mpz_class k = (D + b) / d;
        mpz_class a2 = c, b2 = d;
        c = k * c - a;
        d = k * d - b;
        a = a2;
        b = b2;
        if (b == 1 && a == 1) break; // reached 1/1
    }
    return out;
}

enum class CensusTarget { gamma, reciprocal_gamma };
enum class CensusVerdict { RationalHit, CertifiedMiss, Undecided };

inline const char* to_string(CensusTarget t) {
    return t == CensusTarget::gamma ? "gamma" : "reciprocal_gamma";
}
inline const char* to_string(CensusVerdict v) {
    switch (v) {
        case CensusVerdict::RationalHit: return "RationalHit";
        case CensusVerdict::CertifiedMiss: return "CertifiedMiss";
        case CensusVerdict::Undecided: return "Undecided";
    }
    return "?";
}

struct CensusRecord {
    BigRational point;
    CensusTarget target = CensusTarget::gamma;
    ComplexBall value_ball{64};
    BigRational nearest;           // best approximation with q <= D
    BigRational gap_lower_q{0};    // exact certified lower bound of the gap (0 on a hit)
    double gap_lower_log2 = 0;     // log2 of gap_lower_q (or -inf as -1e9)
    CensusVerdict verdict = CensusVerdict::Undecided;
    long bits_used = 0;
    bool numerical_candidate = false; // non-integer "hit" that finite precision cannot prove
};

namespace detail {

/// Exact value of the target at an integer point m >= 1:
/// Gamma(m) = (m-1)!, so 1/Gamma(m) = 1/(m-1)!.
inline BigRational integer_target_value(long m, CensusTarget target) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m - 1));
    return target == CensusTarget::gamma ? BigRational(f) : BigRational(1, f);
}

/// Closest rational with denominator <= D to the exact rational v, plus
/// the exact distance. All arithmetic exact.
inline std::pair<BigRational, BigRational> nearest_bounded_den(const BigRational& v, long D) {
    if (v.get_den() <= D) return {v, BigRational(0)};
    auto cand = cf_candidates(v, mpz_class(D));
    BigRational best, best_gap;
    bool have = false;
    for (const auto& c : cand) {
        BigRational g = rational_abs_diff(v, c);
        if (!have || g < best_gap) {
            best = c;
            best_gap = g;
            have = true;
        }
    }
    return {best, best_gap};
}

/// log2 of a positive rational without double overflow.
inline double rational_log2(const BigRational& q) {
    if (q <= 0) return -1e9;
    long ne = 0, de = 0;
    double nd = mpz_get_d_2exp(&ne, q.get_num_mpz_t());
    double dd = mpz_get_d_2exp(&de, q.get_den_mpz_t());
    return std::log2(nd) + ne - (std::log2(dd) + de);
}

} // namespace detail

/// Certified classification of Gamma(p/q) (or 1/Gamma) as "rational with
/// denominator <= D" / "certified not" / undecided-at-max_bits.
inline CensusRecord classify_point(const BigRational& pq, long D, CensusTarget target,
                                   const PrecisionContext& ctx) {
    if (D < 1) throw DomainError("classify_point: D must be >= 1");
    CensusRecord rec;
    rec.point = pq;
    rec.target = target;

    if (is_integer(pq)) {
        if (!mpz_fits_slong_p(pq.get_num_mpz_t()))
            throw DomainError("classify_point: integer point out of range");
        long m = pq.get_num().get_si();
        if (m < 1) throw DomainError("classify_point: integer point below 1");
        BigRational v = detail::integer_target_value(m, target);
        rec.value_ball = ComplexBall::from_real(rational_to_ball(v, ctx.bits));
        rec.bits_used = ctx.bits;
        auto [nearest, gap] = detail::nearest_bounded_den(v, D);
        rec.nearest = nearest;
        rec.gap_lower_q = gap;
        if (gap == 0) {
            rec.verdict = CensusVerdict::RationalHit;
            rec.gap_lower_log2 = -1e9;
        } else {
            rec.verdict = CensusVerdict::CertifiedMiss;
            rec.gap_lower_log2 = detail::rational_log2(gap);
        }
        return rec;
    }

    PrecisionContext cur = ctx;
    while (true) {
        Prec p = cur.bits;
        ComplexBall z = ComplexBall::from_real(rational_to_ball(pq, p));
        ComplexBall g = reciprocal_gamma_prec(z, p);
        ComplexBall v = target == CensusTarget::gamma ? inv(g) : g;
        RealBall vr = v.real_part(); // on [n-1, n] the value is real; rad covers Im
        auto best = best_rational_approx(vr, mpz_class(D));
        BigRational rad_q = mpfr_to_rational(vr.rad().get());
        rec.value_ball = v;
        rec.nearest = best.approx;
        rec.bits_used = p;
        if (best.gap_mid > rad_q) {
            // ball excludes every q <= D rational: the nearest one misses,
            // and any other is even farther from the midpoint
            rec.verdict = CensusVerdict::CertifiedMiss;
            rec.gap_lower_q = best.gap_mid - rad_q;
            rec.gap_lower_log2 = detail::rational_log2(rec.gap_lower_q);
            return rec;
        }
        auto next = cur.escalated();
        if (next) {
            cur = *next;
            continue;
        }
        // max_bits reached with the candidate still inside the ball.
        // Rationality of a non-integer point can never be positively
        // certified at finite precision; report a flagged hit only when
        // containment plus uniqueness hold, else Undecided.
        BigRational width = rad_q * 2;
        bool unique = true;
        if (D > 1) {
            // spacing to any other denominator <= D rational is > 1/D^2
            // iff width below that floor
            unique = width < BigRational(1, mpz_class(D) * D);
        }
        if (unique && best.gap_mid <= rad_q) {
            rec.verdict = CensusVerdict::RationalHit;
            rec.numerical_candidate = true;
            rec.gap_lower_q = 0;
            rec.gap_lower_log2 = -1e9;
        } else {
            rec.verdict = CensusVerdict::Undecided;
            rec.gap_lower_q = 0;
            rec.gap_lower_log2 = -1e9;
        }
        return rec;
    }
}

/// Closed-form theorem bound: c n^4 log^3(n) log^2(D)/loglog(D) for Gamma,
/// c n^2 log^3(n) log^2(D)/loglog(D) for 1/Gamma.
inline double theorem_bound(long n, long D, double c, CensusTarget variant) {
    if (n < 2) throw DomainError("theorem_bound: n must be >= 2");
    if (D < 3) throw DomainError("theorem_bound: D must be >= 3 (loglog D)");
    double ln = std::log(static_cast<double>(n));
    double ld = std::log(static_cast<double>(D));
    double npow = variant == CensusTarget::gamma ? std::pow(static_cast<double>(n), 4)
                                                 : std::pow(static_cast<double>(n), 2);
    return c * npow * ln * ln * ln * ld * ld / std::log(ld);
}

struct CensusReport {
    long n = 0, D = 0;
    double c = 1.0;
    long N = 0;        // RationalHit count for Gamma
    long N_prime = 0;  // RationalHit count for 1/Gamma
    std::vector<CensusRecord> records; // both targets, enumeration order
    std::vector<size_t> undecided;     // indices into records
    double bound_N = 0, bound_N_prime = 0;
    mpz_class height_H_gamma;      // (n-1)! D
    mpz_class height_H_reciprocal; // n D
    bool bounds_ok = false;
    long numerical_candidates = 0;
};

/// Full classification of the interval's rationals for both targets.
inline CensusReport run_census(long n, long D, double c, const PrecisionContext& ctx,
                               int threads = 0) {
    if (n < 2 || D < 3) throw DomainError("run_census: need n >= 2, D >= 3");
    auto points = enumerate_rationals(n, D);
    CensusReport rep;
    rep.n = n;
    rep.D = D;
    rep.c = c;
    rep.records.assign(points.size() * 2, CensusRecord{});
    parallel_for(points.size() * 2, threads, [&](size_t i) {
        const BigRational& pq = points[i / 2];
        CensusTarget t = (i % 2 == 0) ? CensusTarget::gamma : CensusTarget::reciprocal_gamma;
        rep.records[i] = classify_point(pq, D, t, ctx);
    });
    for (size_t i = 0; i < rep.records.size(); ++i) {
        const auto& r = rep.records[i];
        if (r.verdict == CensusVerdict::RationalHit) {
            (r.target == CensusTarget::gamma ? rep.N : rep.N_prime) += 1;
            if (r.numerical_candidate) rep.numerical_candidates += 1;
        } else if (r.verdict == CensusVerdict::Undecided) {
            rep.undecided.push_back(i);
        }
    }
    rep.bound_N = theorem_bound(n, D, c, CensusTarget::gamma);
    rep.bound_N_prime = theorem_bound(n, D, c, CensusTarget::reciprocal_gamma);
    mpz_fac_ui(rep.height_H_gamma.get_mpz_t(), static_cast<unsigned long>(n - 1));
    rep.height_H_gamma *= D;
    rep.height_H_reciprocal = mpz_class(n) * D;
    rep.bounds_ok = static_cast<double>(rep.N) <= rep.bound_N &&
                    static_cast<double>(rep.N_prime) <= rep.bound_N_prime;
    return rep;
}

} // namespace gp
