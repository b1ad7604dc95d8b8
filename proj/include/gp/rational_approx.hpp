#pragma once

#include <utility>
#include <vector>

#include "gp/rational.hpp"
#include "gp/real_ball.hpp"

namespace gp {

struct BestRationalResult {
    BigRational approx;   // p/q with q <= qmax minimizing |x.mid - p/q|
    BigRational gap_mid;  // exact |x.mid - approx|
    RealBall gap;         // ball enclosing |x - approx| for the whole input ball
};

namespace detail {

/// All continued-fraction convergents of x with denominator <= qmax,
/// plus the final semiconvergent truncated at qmax. x is exact.
inline std::vector<BigRational> cf_candidates(const BigRational& x, const mpz_class& qmax) {
    std::vector<BigRational> cand;
    mpz_class p_prev = 1, q_prev = 0;  // h_{-1}
    mpz_class p_cur, q_cur;            // h_0 = floor(x)
    mpz_class a;
    mpz_class num = x.get_num(), den = x.get_den();
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    p_cur = a;
    q_cur = 1;
    cand.emplace_back(BigRational(p_cur, q_cur));
    mpz_class rem = num - a * den;
    while (rem != 0) {
        // next partial quotient of [.; a1, a2, ...]
        mpz_class nnum = den, nden = rem;
        mpz_fdiv_q(a.get_mpz_t(), nnum.get_mpz_t(), nden.get_mpz_t());
        rem = nnum - a * nden;
        num = nnum;
        den = nden;
        mpz_class p_next = a * p_cur + p_prev;
        mpz_class q_next = a * q_cur + q_prev;
        if (q_next > qmax) {
            // best semiconvergent: largest t with q_prev + t q_cur <= qmax
            mpz_class t = (qmax - q_prev) / q_cur;
            if (t >= 1) {
                BigRational semi(p_prev + t * p_cur, q_prev + t * q_cur);
                semi.canonicalize();
                cand.push_back(semi);
            }
            return cand;
        }
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        BigRational c(p_cur, q_cur);
        c.canonicalize();
        cand.push_back(c);
    }
    return cand; // x itself is the last candidate (exact representation)
}

} // namespace detail

/// Closest rational p/q with 1 <= q <= qmax to the midpoint of the real
/// ball x, via continued-fraction convergents and semiconvergents. Ties go
/// to the smaller q, then the smaller |p|. The returned gap ball encloses
/// |x - p/q| over the whole input ball.
inline BestRationalResult best_rational_approx(const RealBall& x, const mpz_class& qmax) {
    if (qmax < 1) throw DomainError("best_rational_approx: qmax must be >= 1");
    BigRational xm = mpfr_to_rational(x.mid().get());
    auto cand = detail::cf_candidates(xm, qmax);

    BigRational best;
    BigRational best_gap;
    bool have = false;
    for (const auto& c : cand) {
        BigRational g = rational_abs_diff(xm, c);
        if (!have || g < best_gap ||
            (g == best_gap && (c.get_den() < best.get_den() ||
                               (c.get_den() == best.get_den() &&
                                mpz_cmpabs(mpq_numref(c.get_mpq_t()),
                                           mpq_numref(best.get_mpq_t())) < 0)))) {
            best = c;
            best_gap = g;
            have = true;
        }
    }

    BestRationalResult res;
    res.approx = best;
    res.gap_mid = best_gap;
    Prec p = x.prec();
    RealBall g = abs(rational_to_ball(best_gap, p));
    res.gap = g.widened(x.rad());
    return res;
}

inline BestRationalResult best_rational_approx(const RealBall& x, unsigned long qmax) {
    return best_rational_approx(x, mpz_class(qmax));
}

} // namespace gp
