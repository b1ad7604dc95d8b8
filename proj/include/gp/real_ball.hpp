#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <string>

#include "gp/prec.hpp"
#include "gp/errors.hpp"

namespace gp {

/// Midpoint-radius enclosure of a real number. The midpoint carries the
/// working precision; the radius is a low-precision upper bound maintained
/// with upward rounding, so every operation is inclusion-monotone: the
/// result ball contains the exact image of the input balls.
class RealBall {
  public:
    static constexpr Prec kRadPrec = 64;

    explicit RealBall(Prec prec = 64) : mid_(prec), rad_(kRadPrec) {}

    static RealBall from_long(long v, Prec prec) {
        RealBall b(prec);
        int t = mpfr_set_si(b.mid_.get(), v, MPFR_RNDN);
        b.bump_rad_ulp(t);
        return b;
    }
    static RealBall from_double(double v, Prec prec) {
        RealBall b(prec);
        int t = mpfr_set_d(b.mid_.get(), v, MPFR_RNDN);
        b.bump_rad_ulp(t);
        return b;
    }
    static RealBall from_mpq(mpq_srcptr q, Prec prec) {
        RealBall b(prec);
        int t = mpfr_set_q(b.mid_.get(), q, MPFR_RNDN);
        b.bump_rad_ulp(t);
        return b;
    }
    static RealBall from_mpz(mpz_srcptr z, Prec prec) {
        RealBall b(prec);
        int t = mpfr_set_z(b.mid_.get(), z, MPFR_RNDN);
        b.bump_rad_ulp(t);
        return b;
    }
    static RealBall from_mpfr(mpfr_srcptr m, Prec prec) {
        RealBall b(prec);
        int t = mpfr_set(b.mid_.get(), m, MPFR_RNDN);
        b.bump_rad_ulp(t);
        return b;
    }
    /// Exact dyadic value man * 2^exp.
    static RealBall dyadic(long man, long exp, Prec prec) {
        RealBall b(prec);
        int t = mpfr_set_si_2exp(b.mid_.get(), man, exp, MPFR_RNDN);
        b.bump_rad_ulp(t);
        return b;
    }
    static RealBall pi(Prec prec) {
        RealBall b(prec);
        int t = mpfr_const_pi(b.mid_.get(), MPFR_RNDN);
        b.bump_rad_ulp(t);
        return b;
    }
    static RealBall euler_gamma(Prec prec) {
        RealBall b(prec);
        int t = mpfr_const_euler(b.mid_.get(), MPFR_RNDN);
        b.bump_rad_ulp(t);
        return b;
    }
    static RealBall log2_const(Prec prec) {
        RealBall b(prec);
        int t = mpfr_const_log2(b.mid_.get(), MPFR_RNDN);
        b.bump_rad_ulp(t);
        return b;
    }
    /// Ball [-r, r]; encloses an error of known magnitude bound.
    static RealBall error_bound(const Mpfr& r, Prec prec) {
        RealBall b(prec);
        mpfr_set_zero(b.mid_.get(), 1);
        mpfr_abs(b.rad_.get(), r.get(), MPFR_RNDU);
        return b;
    }

    const Mpfr& mid() const { return mid_; }
    const Mpfr& rad() const { return rad_; }
    Prec prec() const { return mid_.prec(); }

    // Mutable access for sibling enclosure types; invariants are the
    // caller's responsibility (rad nonnegative upper bound).
    Mpfr& rb_mid() { return mid_; }
    Mpfr& rb_rad() { return rad_; }

    RealBall at_prec(Prec prec) const {
        RealBall b(prec);
        int t = mpfr_set(b.mid_.get(), mid_.get(), MPFR_RNDN);
        mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
        b.bump_rad_ulp(t);
        return b;
    }

    bool is_finite() const { return mid_.is_finite() && rad_.is_finite(); }
    bool is_exact() const { return rad_.is_zero(); }

    /// mid - rad rounded down: a certified lower bound of every point.
    Mpfr lower() const {
        Mpfr lo(kRadPrec);
        mpfr_sub(lo.get(), mid_.get(), rad_.get(), MPFR_RNDD);
        return lo;
    }
    /// mid + rad rounded up.
    Mpfr upper() const {
        Mpfr hi(kRadPrec);
        mpfr_add(hi.get(), mid_.get(), rad_.get(), MPFR_RNDU);
        return hi;
    }
    /// Upper bound of |x| over the ball.
    Mpfr abs_upper() const {
        Mpfr hi(kRadPrec);
        mpfr_abs(hi.get(), mid_.get(), MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), rad_.get(), MPFR_RNDU);
        return hi;
    }
    /// Lower bound of |x| over the ball (clamped at 0).
    Mpfr abs_lower() const {
        Mpfr lo(kRadPrec);
        mpfr_abs(lo.get(), mid_.get(), MPFR_RNDD);
        mpfr_sub(lo.get(), lo.get(), rad_.get(), MPFR_RNDD);
        if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
        return lo;
    }

    bool contains_zero() const { return mpfr_cmpabs(mid_.get(), rad_.get()) <= 0; }
    bool is_positive() const { return mid_.sign() > 0 && !contains_zero(); }
    bool is_negative() const { return mid_.sign() < 0 && !contains_zero(); }
    bool contains(const RealBall& other) const {
        // [om - or, om + or] subset of [m - r, m + r], checked with
        // directed rounding (conservative: may reject borderline cases).
        Mpfr lo = lower(), hi = upper();
        Mpfr olo(kRadPrec), ohi(kRadPrec);
        mpfr_sub(olo.get(), other.mid_.get(), other.rad_.get(), MPFR_RNDU);
        mpfr_add(ohi.get(), other.mid_.get(), other.rad_.get(), MPFR_RNDD);
        return mpfr_cmp(lo.get(), olo.get()) <= 0 && mpfr_cmp(ohi.get(), hi.get()) <= 0;
    }
    bool overlaps(const RealBall& other) const {
        Mpfr d(kRadPrec);
        mpfr_sub(d.get(), mid_.get(), other.mid_.get(), MPFR_RNDA);
        mpfr_abs(d.get(), d.get(), MPFR_RNDU);
        Mpfr rr(kRadPrec);
        mpfr_add(rr.get(), rad_.get(), other.rad_.get(), MPFR_RNDD);
        return mpfr_cmp(d.get(), rr.get()) <= 0;
    }
    bool contains_si(long v) const {
        Mpfr d(std::max<Prec>(kRadPrec, prec()));
        mpfr_sub_si(d.get(), mid_.get(), v, MPFR_RNDA);
        return mpfr_cmpabs(d.get(), rad_.get()) <= 0;
    }

    double to_double() const { return mid_.to_double(); }
    double rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

    // -- arithmetic ---------------------------------------------------------

    friend RealBall operator-(const RealBall& a) {
        RealBall r(a.prec());
        mpfr_neg(r.mid_.get(), a.mid_.get(), MPFR_RNDN); // exact
        mpfr_set(r.rad_.get(), a.rad_.get(), MPFR_RNDU);
        return r;
    }

    friend RealBall operator+(const RealBall& a, const RealBall& b) {
        RealBall r(std::max(a.prec(), b.prec()));
        int t = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
        mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        r.bump_rad_ulp(t);
        return r;
    }
    friend RealBall operator-(const RealBall& a, const RealBall& b) {
        RealBall r(std::max(a.prec(), b.prec()));
        int t = mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
        mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        r.bump_rad_ulp(t);
        return r;
    }
    friend RealBall operator*(const RealBall& a, const RealBall& b) {
        RealBall r(std::max(a.prec(), b.prec()));
        int t = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
        // rad = |am|*rb + |bm|*ra + ra*rb, upward.
        Mpfr t1(kRadPrec), t2(kRadPrec);
        mpfr_abs(t1.get(), a.mid_.get(), MPFR_RNDU);
        mpfr_mul(t1.get(), t1.get(), b.rad_.get(), MPFR_RNDU);
        mpfr_abs(t2.get(), b.mid_.get(), MPFR_RNDU);
        mpfr_mul(t2.get(), t2.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), t1.get(), t2.get(), MPFR_RNDU);
        mpfr_mul(t1.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), t1.get(), MPFR_RNDU);
        r.bump_rad_ulp(t);
        return r;
    }

    friend RealBall inv(const RealBall& a) {
        Mpfr lo = a.abs_lower();
        if (mpfr_sgn(lo.get()) <= 0) throw DomainError("inv: ball contains zero");
        RealBall r(a.prec());
        int t = mpfr_si_div(r.mid_.get(), 1, a.mid_.get(), MPFR_RNDN);
        // |1/x - 1/m| <= ra / (|m| * lo)
        Mpfr d(kRadPrec);
        mpfr_abs(d.get(), a.mid_.get(), MPFR_RNDD);
        mpfr_mul(d.get(), d.get(), lo.get(), MPFR_RNDD);
        mpfr_div(r.rad_.get(), a.rad_.get(), d.get(), MPFR_RNDU);
        r.bump_rad_ulp(t);
        return r;
    }
    friend RealBall operator/(const RealBall& a, const RealBall& b) { return a * inv(b); }

    friend RealBall abs(const RealBall& a) {
        RealBall r(a.prec());
        mpfr_abs(r.mid_.get(), a.mid_.get(), MPFR_RNDN); // exact
        mpfr_set(r.rad_.get(), a.rad_.get(), MPFR_RNDU);
        return r;
    }

    friend RealBall sqrt(const RealBall& a) {
        Mpfr lo = a.lower();
        if (mpfr_sgn(lo.get()) < 0) throw DomainError("sqrt: ball dips below zero");
        RealBall r(a.prec());
        int t = mpfr_sqrt(r.mid_.get(), a.mid_.get(), MPFR_RNDN);
        if (mpfr_sgn(lo.get()) > 0) {
            // Lipschitz: |f'| <= 1/(2 sqrt(lo))
            Mpfr s(kRadPrec);
            mpfr_sqrt(s.get(), lo.get(), MPFR_RNDD);
            mpfr_mul_2si(s.get(), s.get(), 1, MPFR_RNDD);
            mpfr_div(r.rad_.get(), a.rad_.get(), s.get(), MPFR_RNDU);
        } else {
            // touches zero: |sqrt x - sqrt y| <= sqrt|x - y|
            mpfr_sqrt(r.rad_.get(), a.rad_.get(), MPFR_RNDU);
        }
        r.bump_rad_ulp(t);
        return r;
    }

    friend RealBall exp(const RealBall& a) {
        RealBall r(a.prec());
        int t = mpfr_exp(r.mid_.get(), a.mid_.get(), MPFR_RNDN);
        // sup |exp| on ball = exp(mid + rad)
        Mpfr hi(kRadPrec);
        mpfr_add(hi.get(), a.mid_.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
        mpfr_mul(r.rad_.get(), hi.get(), a.rad_.get(), MPFR_RNDU);
        r.bump_rad_ulp(t);
        return r;
    }

    friend RealBall log(const RealBall& a) {
        Mpfr lo = a.lower();
        if (mpfr_sgn(lo.get()) <= 0) throw DomainError("log: ball touches (-inf, 0]");
        RealBall r(a.prec());
        int t = mpfr_log(r.mid_.get(), a.mid_.get(), MPFR_RNDN);
        mpfr_div(r.rad_.get(), a.rad_.get(), lo.get(), MPFR_RNDU);
        r.bump_rad_ulp(t);
        return r;
    }

    friend RealBall sin(const RealBall& a) { return a.unary_lip1(mpfr_sin); }
    friend RealBall cos(const RealBall& a) { return a.unary_lip1(mpfr_cos); }
    friend RealBall atan(const RealBall& a) { return a.unary_lip1(mpfr_atan); }

    friend RealBall sinh(const RealBall& a) { return a.unary_cosh_lip(mpfr_sinh); }
    friend RealBall cosh(const RealBall& a) { return a.unary_cosh_lip(mpfr_cosh); }

    RealBall pow_ui(unsigned long e) const {
        RealBall acc = from_long(1, prec());
        RealBall base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    RealBall mul_2si(long e) const {
        RealBall r(prec());
        mpfr_mul_2si(r.mid_.get(), mid_.get(), e, MPFR_RNDN); // exact
        mpfr_mul_2si(r.rad_.get(), rad_.get(), e, MPFR_RNDU);
        return r;
    }

    /// Widen the radius by |e| (an explicit error bound, e.g. a truncation tail).
    RealBall widened(const Mpfr& e) const {
        RealBall r = *this;
        Mpfr t(kRadPrec);
        mpfr_abs(t.get(), e.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), t.get(), MPFR_RNDU);
        return r;
    }

    /// Convex hull of two balls (smallest ball containing both, up to rounding).
    friend RealBall hull(const RealBall& a, const RealBall& b) {
        Prec p = std::max(a.prec(), b.prec());
        Mpfr lo1 = a.lower(), lo2 = b.lower(), hi1 = a.upper(), hi2 = b.upper();
        if (mpfr_cmp(lo2.get(), lo1.get()) < 0) mpfr_swap(lo1.get(), lo2.get());
        if (mpfr_cmp(hi1.get(), hi2.get()) < 0) mpfr_swap(hi1.get(), hi2.get());
        RealBall r(p);
        int t = mpfr_add(r.mid_.get(), lo1.get(), hi1.get(), MPFR_RNDN);
        mpfr_div_2si(r.mid_.get(), r.mid_.get(), 1, MPFR_RNDN);
        mpfr_sub(r.rad_.get(), hi1.get(), lo1.get(), MPFR_RNDU);
        mpfr_div_2si(r.rad_.get(), r.rad_.get(), 1, MPFR_RNDU);
        r.bump_rad_ulp(t);
        r.bump_rad_ulp(1); // the halving of (hi-lo) can round down; one ulp covers it
        return r;
    }

    std::string to_string() const {
        return mid_.to_decimal_string(24) + " +/- " + rad_.to_decimal_string(4);
    }

    /// Add one ulp of the midpoint to the radius when `ternary` reports the
    /// last midpoint rounding was inexact. One ulp dominates the 1/2-ulp
    /// RNDN error.
    void bump_rad_ulp(int ternary) {
        if (ternary == 0) return;
        Mpfr u(kRadPrec);
        mpfr_exp_t e = mid_.is_zero() ? mpfr_get_emin() : mpfr_get_exp(mid_.get());
        mpfr_set_ui_2exp(u.get(), 1, e - mid_.prec(), MPFR_RNDU);
        mpfr_add(rad_.get(), rad_.get(), u.get(), MPFR_RNDU);
    }

  private:
    RealBall unary_lip1(int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) const {
        RealBall r(prec());
        int t = f(r.mid_.get(), mid_.get(), MPFR_RNDN);
        mpfr_set(r.rad_.get(), rad_.get(), MPFR_RNDU);
        r.bump_rad_ulp(t);
        return r;
    }
    RealBall unary_cosh_lip(int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) const {
        RealBall r(prec());
        int t = f(r.mid_.get(), mid_.get(), MPFR_RNDN);
        // |f'| <= cosh(|mid| + rad) for both sinh and cosh
        Mpfr hi(kRadPrec);
        mpfr_abs(hi.get(), mid_.get(), MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), rad_.get(), MPFR_RNDU);
        mpfr_cosh(hi.get(), hi.get(), MPFR_RNDU);
        mpfr_mul(r.rad_.get(), hi.get(), rad_.get(), MPFR_RNDU);
        r.bump_rad_ulp(t);
        return r;
    }

    Mpfr mid_;
    Mpfr rad_; // prec kRadPrec, always an upper bound
};

inline RealBall operator+(const RealBall& a, long v) { return a + RealBall::from_long(v, a.prec()); }
inline RealBall operator-(const RealBall& a, long v) { return a - RealBall::from_long(v, a.prec()); }
inline RealBall operator*(const RealBall& a, long v) { return a * RealBall::from_long(v, a.prec()); }
inline RealBall operator/(const RealBall& a, long v) { return a / RealBall::from_long(v, a.prec()); }
inline RealBall operator-(long v, const RealBall& a) { return RealBall::from_long(v, a.prec()) - a; }
inline RealBall operator+(long v, const RealBall& a) { return a + v; }
inline RealBall operator*(long v, const RealBall& a) { return a * v; }

} // namespace gp
