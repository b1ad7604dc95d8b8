#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "gp/rational.hpp"
#include "gp/real_ball.hpp"

namespace gp {

namespace detail {

/// Tangent numbers T_1..T_n (integers) by the Knuth–Buckholtz triangle;
/// T_1 = 1, T_2 = 2, T_3 = 16, T_4 = 272, ...
inline void extend_tangent_numbers(std::vector<mpz_class>& t, size_t n) {
    // Recurrence is in-place over the whole prefix, so recompute from
    // scratch when growth is needed (cost is dominated by the last rows).
    if (t.size() >= n) return;
    std::vector<mpz_class> a(n + 1);
    a[1] = 1;
    for (size_t k = 2; k <= n; ++k) a[k] = mpz_class((k - 1) * a[k - 1]);
    for (size_t k = 2; k <= n; ++k)
        for (size_t j = k; j <= n; ++j)
            a[j] = mpz_class((j - k) * a[j - 1]) + mpz_class((j - k + 2) * a[j]);
    t.assign(a.begin() + 1, a.end());
}

struct BernoulliCache {
    std::mutex m;
    std::vector<mpz_class> tangent;  // tangent[i] = T_{i+1}
    // per precision: B_2, B_4, ... (shared, so lookups are copy-free)
    std::map<Prec, std::shared_ptr<const std::vector<RealBall>>> ball_cache;
};

inline BernoulliCache& bernoulli_cache() {
    static BernoulliCache c;
    return c;
}

} // namespace detail

/// Exact Bernoulli number B_{2n}, n >= 1, from tangent numbers:
/// |B_{2n}| = 2n T_n / (2^{2n} (2^{2n} - 1)), sign (-1)^{n+1}.
inline BigRational bernoulli_exact(unsigned long n) {
    if (n == 0) throw DomainError("bernoulli_exact: index must be >= 1");
    auto& c = detail::bernoulli_cache();
    std::lock_guard<std::mutex> lock(c.m);
    detail::extend_tangent_numbers(c.tangent, n);
    mpz_class num = 2 * mpz_class(n) * c.tangent[n - 1];
    mpz_class p = 1;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), 2 * n);
    mpz_class den = p * (p - 1);
    if (n % 2 == 0) num = -num;
    BigRational b(num, den);
    b.canonicalize();
    return b;
}

/// Ball enclosures of B_2, B_4, ..., B_{2kmax} at `prec`, cached; the
/// returned vector has at least kmax entries (possibly more).
inline std::shared_ptr<const std::vector<RealBall>> bernoulli_balls(unsigned long kmax,
                                                                    Prec prec) {
    auto& c = detail::bernoulli_cache();
    {
        std::lock_guard<std::mutex> lock(c.m);
        auto it = c.ball_cache.find(prec);
        if (it != c.ball_cache.end() && it->second->size() >= kmax) return it->second;
    }
    auto out = std::make_shared<std::vector<RealBall>>();
    out->reserve(kmax);
    for (unsigned long k = 1; k <= kmax; ++k)
        out->push_back(rational_to_ball(bernoulli_exact(k), prec));
    {
        std::lock_guard<std::mutex> lock(c.m);
        auto& v = c.ball_cache[prec];
        if (!v || v->size() < out->size()) v = out;
        return v;
    }
}

/// zeta(s) for integer s >= 2 as a certified ball, by Euler–Maclaurin:
///   zeta(s) = sum_{n=1}^{N} n^-s + N^{1-s}/(s-1) - N^-s/2
///           + sum_{j=1}^{J} B_{2j}/(2j)! (s)_{2j-1} N^{-s-2j+1} + R,
/// with |R| <= |first omitted term| for real s (standard alternating-tail
/// bound; doubled here for slack). N and J grow until the bound closes.
inline RealBall zeta_integer(unsigned long s, Prec prec) {
    if (s < 2) throw DomainError("zeta_integer: s must be >= 2");
    Prec wp = prec + 32;
    unsigned long n_terms = 16, j_terms = 8;
    for (int attempt = 0; attempt < 20; ++attempt) {
        RealBall sum(wp);
        for (unsigned long n = 1; n <= n_terms; ++n)
            sum = sum + inv(RealBall::from_long(static_cast<long>(n), wp).pow_ui(s));
        RealBall nball = RealBall::from_long(static_cast<long>(n_terms), wp);
        RealBall ninv = inv(nball);
        RealBall ninv_s = ninv.pow_ui(s);
        // N^{1-s}/(s-1) - N^{-s}/2
        sum = sum + ninv_s * nball / RealBall::from_long(static_cast<long>(s) - 1, wp);
        sum = sum - ninv_s.mul_2si(-1);
        // correction terms
        RealBall rising = RealBall::from_long(static_cast<long>(s), wp); // (s)_1
        RealBall fact = RealBall::from_long(2, wp);                      // (2j)!
        RealBall npow = ninv_s * ninv;                                   // N^{-s-1}
        auto bern = bernoulli_balls(j_terms + 1, wp);
        RealBall term(wp);
        bool converged = false;
        for (unsigned long j = 1; j <= j_terms + 1; ++j) {
            term = (*bern)[j - 1] / fact * rising * npow;
            if (j == j_terms + 1) {
                // |R| <= |term| (first omitted); widen by 2|term|
                Mpfr bound = term.abs_upper();
                mpfr_mul_2si(bound.get(), bound.get(), 1, MPFR_RNDU);
                sum = sum.widened(bound);
                Mpfr tol(RealBall::kRadPrec);
                mpfr_set_ui_2exp(tol.get(), 1, -static_cast<long>(prec) - 4, MPFR_RNDN);
                converged = mpfr_cmp(bound.get(), tol.get()) <= 0;
                break;
            }
            sum = sum + term;
            // advance (s)_{2j-1} -> (s)_{2j+1}, (2j)! -> (2j+2)!, N^{-s-2j+1} -> N^{-s-2j-1}
            rising = rising * RealBall::from_long(static_cast<long>(s + 2 * j - 1), wp) *
                     RealBall::from_long(static_cast<long>(s + 2 * j), wp);
            fact = fact * RealBall::from_long(static_cast<long>(2 * j + 1), wp) *
                   RealBall::from_long(static_cast<long>(2 * j + 2), wp);
            npow = npow * ninv * ninv;
        }
        if (converged) return sum.at_prec(prec);
        n_terms *= 2;
        j_terms *= 2;
    }
    throw PrecisionExhausted("zeta_integer: Euler–Maclaurin did not close");
}

} // namespace gp
