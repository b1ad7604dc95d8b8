#pragma once

#include <algorithm>
#include <string>
#include <utility>

#include "gp/real_ball.hpp"

namespace gp {

/// Midpoint-radius complex enclosure { z : |z - mid| <= rad } with a single
/// Euclidean radius. Midpoint components carry the working precision.
///
/// Strategy per operation: the midpoint image is computed with RealBall
/// arithmetic on exact (zero-radius) inputs, which tracks every rounding
/// step; the input radius is propagated with an analytic bound (Lipschitz
/// or exact product formula). The two contributions add.
class ComplexBall {
  public:
    static constexpr Prec kRadPrec = RealBall::kRadPrec;

    explicit ComplexBall(Prec prec = 64) : re_(prec), im_(prec), rad_(kRadPrec) {}

    ComplexBall(const RealBall& re, const RealBall& im)
        : re_(std::max(re.prec(), im.prec())), im_(re_.prec()), rad_(kRadPrec) {
        mpfr_set(re_.get(), re.mid().get(), MPFR_RNDN);
        mpfr_set(im_.get(), im.mid().get(), MPFR_RNDN);
        // Euclidean radius <= hypot of the component radii.
        mpfr_hypot(rad_.get(), re.rad().get(), im.rad().get(), MPFR_RNDU);
    }

    static ComplexBall from_real(const RealBall& re) {
        return ComplexBall(re, RealBall(re.prec()));
    }
    static ComplexBall from_long(long re, Prec prec) {
        return from_real(RealBall::from_long(re, prec));
    }
    static ComplexBall from_doubles(double re, double im, Prec prec) {
        return ComplexBall(RealBall::from_double(re, prec), RealBall::from_double(im, prec));
    }
    /// Exact point (radius zero; the mpfr values are rounded into prec,
    /// the tiny rounding going into the radius).
    static ComplexBall from_point(mpfr_srcptr re, mpfr_srcptr im, Prec prec) {
        ComplexBall b(prec);
        int t1 = mpfr_set(b.re_.get(), re, MPFR_RNDN);
        int t2 = mpfr_set(b.im_.get(), im, MPFR_RNDN);
        b.bump(b.re_, t1);
        b.bump(b.im_, t2);
        return b;
    }
    /// The midpoint as an exact zero-radius ball.
    ComplexBall mid_point() const {
        ComplexBall b = *this;
        mpfr_set_zero(b.rad_.get(), 1);
        return b;
    }

    /// Real/imaginary parts as real balls; each component deviates from its
    /// midpoint by at most the Euclidean radius.
    RealBall real_part() const {
        RealBall r(prec());
        mpfr_set(r.rb_mid().get(), re_.get(), MPFR_RNDN);
        mpfr_set(r.rb_rad().get(), rad_.get(), MPFR_RNDU);
        return r;
    }
    RealBall imag_part() const {
        RealBall r(prec());
        mpfr_set(r.rb_mid().get(), im_.get(), MPFR_RNDN);
        mpfr_set(r.rb_rad().get(), rad_.get(), MPFR_RNDU);
        return r;
    }

    const Mpfr& mid_re() const { return re_; }
    const Mpfr& mid_im() const { return im_; }
    const Mpfr& rad() const { return rad_; }
    Prec prec() const { return re_.prec(); }

    ComplexBall at_prec(Prec p) const {
        ComplexBall r(p);
        int t1 = mpfr_set(r.re_.get(), re_.get(), MPFR_RNDN);
        int t2 = mpfr_set(r.im_.get(), im_.get(), MPFR_RNDN);
        mpfr_set(r.rad_.get(), rad_.get(), MPFR_RNDU);
        r.bump(r.re_, t1);
        r.bump(r.im_, t2);
        return r;
    }

    bool is_finite() const { return re_.is_finite() && im_.is_finite() && rad_.is_finite(); }
    bool is_exact() const { return rad_.is_zero(); }

    /// Upper bound of |z| over the ball.
    Mpfr abs_upper() const {
        Mpfr m(kRadPrec);
        mpfr_hypot(m.get(), re_.get(), im_.get(), MPFR_RNDU);
        mpfr_add(m.get(), m.get(), rad_.get(), MPFR_RNDU);
        return m;
    }
    /// Lower bound of |z| over the ball (clamped at 0).
    Mpfr abs_lower() const {
        Mpfr m(kRadPrec);
        mpfr_hypot(m.get(), re_.get(), im_.get(), MPFR_RNDD);
        mpfr_sub(m.get(), m.get(), rad_.get(), MPFR_RNDD);
        if (mpfr_sgn(m.get()) < 0) mpfr_set_zero(m.get(), 1);
        return m;
    }
    /// |z| as a real ball.
    RealBall abs_ball() const {
        Mpfr lo = abs_lower(), hi = abs_upper();
        RealBall r(prec());
        mpfr_add(r.rb_mid().get(), lo.get(), hi.get(), MPFR_RNDN);
        mpfr_div_2si(r.rb_mid().get(), r.rb_mid().get(), 1, MPFR_RNDN);
        mpfr_sub(r.rb_rad().get(), hi.get(), lo.get(), MPFR_RNDU);
        mpfr_div_2si(r.rb_rad().get(), r.rb_rad().get(), 1, MPFR_RNDU);
        r.bump_rad_ulp(1);
        return r;
    }

    bool contains_zero() const {
        Mpfr m(kRadPrec);
        mpfr_hypot(m.get(), re_.get(), im_.get(), MPFR_RNDD);
        return mpfr_cmp(m.get(), rad_.get()) <= 0;
    }
    bool nonzero_certified() const { return mpfr_sgn(abs_lower().get()) > 0; }

    /// Certified nonempty intersection.
    bool overlaps(const ComplexBall& o) const {
        Mpfr dre(kRadPrec), dim(kRadPrec), d(kRadPrec), rr(kRadPrec);
        mpfr_sub(dre.get(), re_.get(), o.re_.get(), MPFR_RNDA);
        mpfr_sub(dim.get(), im_.get(), o.im_.get(), MPFR_RNDA);
        mpfr_hypot(d.get(), dre.get(), dim.get(), MPFR_RNDU);
        mpfr_add(rr.get(), rad_.get(), o.rad_.get(), MPFR_RNDD);
        return mpfr_cmp(d.get(), rr.get()) <= 0;
    }

    /// Certified: this ball contains the point (pre, pim)? (points given as exact mpfr)
    bool contains_point(mpfr_srcptr pre, mpfr_srcptr pim) const {
        Mpfr dre(kRadPrec), dim(kRadPrec), d(kRadPrec);
        mpfr_sub(dre.get(), re_.get(), pre, MPFR_RNDA);
        mpfr_sub(dim.get(), im_.get(), pim, MPFR_RNDA);
        mpfr_hypot(d.get(), dre.get(), dim.get(), MPFR_RNDU);
        return mpfr_cmp(d.get(), rad_.get()) <= 0;
    }

    ComplexBall widened(const Mpfr& e) const {
        ComplexBall r = *this;
        Mpfr t(kRadPrec);
        mpfr_abs(t.get(), e.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), t.get(), MPFR_RNDU);
        return r;
    }

    // -- arithmetic ---------------------------------------------------------

    friend ComplexBall operator-(const ComplexBall& a) {
        ComplexBall r(a.prec());
        mpfr_neg(r.re_.get(), a.re_.get(), MPFR_RNDN);
        mpfr_neg(r.im_.get(), a.im_.get(), MPFR_RNDN);
        mpfr_set(r.rad_.get(), a.rad_.get(), MPFR_RNDU);
        return r;
    }
    friend ComplexBall conj(const ComplexBall& a) {
        ComplexBall r = a;
        mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
        return r;
    }

    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
        ComplexBall r(std::max(a.prec(), b.prec()));
        int t1 = mpfr_add(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
        int t2 = mpfr_add(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
        mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        r.bump(r.re_, t1);
        r.bump(r.im_, t2);
        return r;
    }
    friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
        ComplexBall r(std::max(a.prec(), b.prec()));
        int t1 = mpfr_sub(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
        int t2 = mpfr_sub(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
        mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        r.bump(r.re_, t1);
        r.bump(r.im_, t2);
        return r;
    }

    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
        Prec p = std::max(a.prec(), b.prec());
        // Midpoint product via rounding-tracked real balls on exact mids.
        RealBall ar = exact_mid(a.re_, p), ai = exact_mid(a.im_, p);
        RealBall br = exact_mid(b.re_, p), bi = exact_mid(b.im_, p);
        RealBall re = ar * br - ai * bi;
        RealBall im = ar * bi + ai * br;
        ComplexBall r(re, im);
        // |a| rb + |b| ra + ra rb
        Mpfr t1(kRadPrec), t2(kRadPrec);
        mpfr_mul(t1.get(), a.abs_upper().get(), b.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), t1.get(), MPFR_RNDU);
        mpfr_mul(t2.get(), b.abs_upper().get(), a.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), t2.get(), MPFR_RNDU);
        mpfr_mul(t1.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), t1.get(), MPFR_RNDU);
        return r;
    }

    friend ComplexBall inv(const ComplexBall& a) {
        Mpfr lo = a.abs_lower();
        if (mpfr_sgn(lo.get()) <= 0) throw DomainError("inv: complex ball contains zero");
        Prec p = a.prec();
        RealBall ar = exact_mid(a.re_, p), ai = exact_mid(a.im_, p);
        RealBall den = ar * ar + ai * ai;
        RealBall re = ar / den;
        RealBall im = -(ai / den);
        ComplexBall r(re, im);
        // |1/z - 1/m| <= ra / (|m| lo)
        Mpfr d(kRadPrec);
        mpfr_hypot(d.get(), a.re_.get(), a.im_.get(), MPFR_RNDD);
        mpfr_mul(d.get(), d.get(), lo.get(), MPFR_RNDD);
        Mpfr t(kRadPrec);
        mpfr_div(t.get(), a.rad_.get(), d.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), t.get(), MPFR_RNDU);
        return r;
    }
    friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
        return a * inv(b);
    }

    /// exp(z): midpoint via e^x (cos y + i sin y); propagation by
    /// sup |exp| over the ball = e^(Re mid + rad).
    friend ComplexBall exp(const ComplexBall& a) {
        Prec p = a.prec();
        RealBall ar = exact_mid(a.re_, p), ai = exact_mid(a.im_, p);
        RealBall ex = exp(ar);
        ComplexBall r(ex * cos(ai), ex * sin(ai));
        Mpfr hi(kRadPrec);
        mpfr_add(hi.get(), a.re_.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
        mpfr_mul(hi.get(), hi.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), hi.get(), MPFR_RNDU);
        return r;
    }

    /// Principal log. Requires the ball to exclude the closed negative real
    /// axis through 0 (branch cut), which also keeps Arg continuous on it.
    friend ComplexBall log(const ComplexBall& a) {
        Mpfr lo = a.abs_lower();
        if (mpfr_sgn(lo.get()) <= 0) throw DomainError("log: ball contains zero");
        Prec p = a.prec();
        RealBall ar = exact_mid(a.re_, p), ai = exact_mid(a.im_, p);
        RealBall re = log(ar * ar + ai * ai).mul_2si(-1);
        RealBall im = arg_mid(a, ar, ai);
        ComplexBall r(re, im);
        Mpfr t(kRadPrec);
        mpfr_div(t.get(), a.rad_.get(), lo.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), t.get(), MPFR_RNDU);
        return r;
    }

    /// sin(z) = sin x cosh y + i cos x sinh y; |sin'| = |cos z| <= cosh(|Im|+rad).
    friend ComplexBall sin(const ComplexBall& a) {
        Prec p = a.prec();
        RealBall ar = exact_mid(a.re_, p), ai = exact_mid(a.im_, p);
        ComplexBall r(sin(ar) * cosh(ai), cos(ar) * sinh(ai));
        Mpfr hi(kRadPrec);
        mpfr_abs(hi.get(), a.im_.get(), MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_cosh(hi.get(), hi.get(), MPFR_RNDU);
        mpfr_mul(hi.get(), hi.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), hi.get(), MPFR_RNDU);
        return r;
    }

    friend ComplexBall sqrt(const ComplexBall& a) {
        return exp(log(a).mul_half());
    }
    friend ComplexBall pow(const ComplexBall& a, const ComplexBall& b) {
        return exp(b * log(a));
    }

    ComplexBall mul_real(const RealBall& s) const {
        return *this * from_real(s);
    }
    ComplexBall add_long(long v) const {
        ComplexBall r = *this;
        int t = mpfr_add_si(r.re_.get(), r.re_.get(), v, MPFR_RNDN);
        r.bump(r.re_, t);
        return r;
    }
    ComplexBall mul_half() const {
        ComplexBall r = *this;
        mpfr_div_2si(r.re_.get(), r.re_.get(), 1, MPFR_RNDN);
        mpfr_div_2si(r.im_.get(), r.im_.get(), 1, MPFR_RNDN);
        mpfr_div_2si(r.rad_.get(), r.rad_.get(), 1, MPFR_RNDU);
        return r;
    }
    ComplexBall pow_ui(unsigned long e) const {
        ComplexBall acc = from_long(1, prec());
        ComplexBall base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    double rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

    std::string to_string() const {
        return "(" + re_.to_decimal_string(24) + ", " + im_.to_decimal_string(24) +
               ") +/- " + rad_.to_decimal_string(4);
    }

  private:
    static RealBall exact_mid(const Mpfr& m, Prec p) {
        return RealBall::from_mpfr(m.get(), std::max<Prec>(p, m.prec()));
    }

    /// Principal argument of the midpoint, valid because the ball (and so
    /// the midpoint) stays off the closed negative real axis.
    static RealBall arg_mid(const ComplexBall& a, const RealBall& ar, const RealBall& ai) {
        Prec p = ar.prec();
        // Certified branch selection from the ball's position.
        RealBall re_ball = a.real_part(), im_ball = a.imag_part();
        if (re_ball.is_positive()) return atan(ai / ar);
        RealBall half_pi = RealBall::pi(p).mul_2si(-1);
        if (im_ball.is_positive()) return half_pi - atan(ar / ai);
        if (im_ball.is_negative()) return -(half_pi - atan(ar / (-ai)));
        throw DomainError("log/arg: ball touches the closed negative real axis");
    }

    void bump(Mpfr& comp, int ternary) {
        if (ternary == 0) return;
        Mpfr u(kRadPrec);
        mpfr_exp_t e = comp.is_zero() ? mpfr_get_emin() : mpfr_get_exp(comp.get());
        mpfr_set_ui_2exp(u.get(), 1, e - comp.prec(), MPFR_RNDU);
        mpfr_add(rad_.get(), rad_.get(), u.get(), MPFR_RNDU);
    }

    Mpfr re_, im_;
    Mpfr rad_;
};

enum class BallOp { add, sub, mul, div, exp, log, sin, sqrt, pow };

/// Coarse dispatcher over the primitive operation table; unary ops ignore b.
inline ComplexBall ball_arithmetic(BallOp op, const ComplexBall& a, const ComplexBall* b = nullptr) {
    auto need_b = [&]() -> const ComplexBall& {
        if (!b) throw DomainError("ball_arithmetic: binary op needs two operands");
        return *b;
    };
    switch (op) {
        case BallOp::add: return a + need_b();
        case BallOp::sub: return a - need_b();
        case BallOp::mul: return a * need_b();
        case BallOp::div: return a / need_b();
        case BallOp::exp: return exp(a);
        case BallOp::log: return log(a);
        case BallOp::sin: return sin(a);
        case BallOp::sqrt: return sqrt(a);
        case BallOp::pow: return pow(a, need_b());
    }
    throw DomainError("ball_arithmetic: unknown op");
}

} // namespace gp
