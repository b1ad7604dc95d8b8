#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "gp/errors.hpp"
#include "gp/real_ball.hpp"

namespace gp {

/// Exact reduced fraction. mpq_class already maintains gcd(|num|, den) = 1
/// and den >= 1 through canonicalize; helpers here add the pieces the
/// library needs on top (heights, dyadic conversion, parsing).
using BigRational = mpq_class;

inline BigRational make_rational(long num, long den) {
    if (den == 0) throw DomainError("rational: zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

inline BigRational parse_rational(const std::string& s) {
    std::string t = s;
    if (t.find('/') == std::string::npos) t += "/1";
    BigRational q;
    if (q.set_str(t, 10) != 0) throw DomainError("rational: cannot parse '" + s + "'");
    if (sgn(q.get_den()) == 0) throw DomainError("rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rational_to_string(const BigRational& q) {
    return q.get_str();
}

/// Non-logarithmic absolute height of a reduced rational: max(|p|, q).
inline mpz_class rational_height(const BigRational& q) {
    mpz_class num = abs(q.get_num());
    return num > q.get_den() ? num : mpz_class(q.get_den());
}

inline bool is_integer(const BigRational& q) { return q.get_den() == 1; }

/// Exact conversion of an mpfr value (a dyadic rational) to BigRational.
inline BigRational mpfr_to_rational(mpfr_srcptr x) {
    if (!mpfr_number_p(x)) throw DomainError("mpfr_to_rational: non-finite");
    if (mpfr_zero_p(x)) return BigRational(0);
    mpz_class man;
    mpfr_exp_t e = mpfr_get_z_2exp(man.get_mpz_t(), x);
    BigRational q(man);
    if (e >= 0) {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(e));
        q *= BigRational(p2);
    } else {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        q /= BigRational(p2);
    }
    q.canonicalize();
    return q;
}

inline RealBall rational_to_ball(const BigRational& q, Prec prec) {
    return RealBall::from_mpq(q.get_mpq_t(), prec);
}

/// Exact |a - b| as a rational.
inline BigRational rational_abs_diff(const BigRational& a, const BigRational& b) {
    BigRational d = a - b;
    return d < 0 ? BigRational(-d) : d;
}

} // namespace gp
