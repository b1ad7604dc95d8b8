#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gp/complex_ball.hpp"
#include "gp/power_series.hpp"
#include "gp/rational.hpp"

namespace gp {

/// Complex number with exact rational real/imaginary parts.
struct RatComplex {
    BigRational re{0};
    BigRational im{0};

    bool is_zero() const { return re == 0 && im == 0; }
    ComplexBall to_ball(Prec prec) const {
        return ComplexBall(rational_to_ball(re, prec), rational_to_ball(im, prec));
    }
};

/// P(z,w) with degree <= L in each variable; coefficients either exact
/// rational-complex or balls. coeff index [a][b] multiplies z^a w^b.
struct BivarPolynomial {
    long L = 0;
    bool exact = true;
    std::vector<std::vector<RatComplex>> coeffs;      // used when exact
    std::vector<std::vector<ComplexBall>> coeffs_ball; // used when !exact

    static BivarPolynomial zero(long L, bool exact = true, Prec prec = 64) {
        BivarPolynomial p;
        p.L = L;
        p.exact = exact;
        if (exact)
            p.coeffs.assign(L + 1, std::vector<RatComplex>(L + 1));
        else
            p.coeffs_ball.assign(L + 1, std::vector<ComplexBall>(L + 1, ComplexBall(prec)));
        return p;
    }

    /// Monomial c * z^a w^b.
    static BivarPolynomial monomial(long L, long a, long b, const BigRational& c = BigRational(1)) {
        BivarPolynomial p = zero(L);
        p.coeffs[a][b].re = c;
        return p;
    }

    bool is_zero() const {
        if (exact) {
            for (const auto& row : coeffs)
                for (const auto& c : row)
                    if (!c.is_zero()) return false;
            return true;
        }
        for (const auto& row : coeffs_ball)
            for (const auto& c : row)
                if (c.nonzero_certified()) return false;
        return true; // nothing certified nonzero
    }

    ComplexBall coeff_ball(long a, long b, Prec prec) const {
        return exact ? coeffs[a][b].to_ball(prec) : coeffs_ball[a][b].at_prec(prec);
    }

    /// Horner evaluation P(z, w) on balls.
    ComplexBall evaluate(const ComplexBall& z, const ComplexBall& w) const {
        Prec p = std::max(z.prec(), w.prec());
        ComplexBall acc(p);
        for (long a = L; a >= 0; --a) {
            ComplexBall row(p);
            for (long b = L; b >= 0; --b) row = row * w + coeff_ball(a, b, p);
            acc = acc * z + row;
        }
        return acc;
    }

    /// Exact evaluation at rational (z, w); requires exact coefficients.
    RatComplex evaluate_exact(const BigRational& z, const BigRational& w) const {
        if (!exact) throw InexactInput("evaluate_exact: ball coefficients");
        RatComplex acc;
        for (long a = L; a >= 0; --a) {
            RatComplex row;
            for (long b = L; b >= 0; --b) {
                // row = row * w + coeffs[a][b]
                row.re = row.re * w + coeffs[a][b].re;
                row.im = row.im * w + coeffs[a][b].im;
            }
            acc.re = acc.re * z + row.re;
            acc.im = acc.im * z + row.im;
        }
        return acc;
    }

    /// Scale so the largest coefficient (sup-norm max(|re|,|im|) in exact
    /// mode, midpoint modulus otherwise) has size 1. Zeros are unchanged;
    /// this mirrors the proof's max-coefficient normalization.
    BivarPolynomial normalized() const {
        BivarPolynomial p = *this;
        if (exact) {
            BigRational best(0);
            for (const auto& row : p.coeffs)
                for (const auto& c : row) {
                    BigRational m = abs(c.re) > abs(c.im) ? abs(c.re) : abs(c.im);
                    if (m > best) best = m;
                }
            if (best == 0) return p;
            for (auto& row : p.coeffs)
                for (auto& c : row) {
                    c.re /= best;
                    c.im /= best;
                }
            return p;
        }
        double best = 0;
        long ba = 0, bb = 0;
        for (long a = 0; a <= L; ++a)
            for (long b = 0; b <= L; ++b) {
                Mpfr m(RealBall::kRadPrec);
                mpfr_hypot(m.get(), p.coeffs_ball[a][b].mid_re().get(),
                           p.coeffs_ball[a][b].mid_im().get(), MPFR_RNDN);
                double v = mpfr_get_d(m.get(), MPFR_RNDN);
                if (v > best) {
                    best = v;
                    ba = a;
                    bb = b;
                }
            }
        if (best == 0) return p;
        ComplexBall d = p.coeffs_ball[ba][bb];
        for (auto& row : p.coeffs_ball)
            for (auto& c : row) c = c / d;
        return p;
    }

    /// Degree in w actually present (largest b with a nonzero column).
    long w_degree() const {
        for (long b = L; b >= 0; --b)
            for (long a = 0; a <= L; ++a) {
                if (exact ? !coeffs[a][b].is_zero() : coeffs_ball[a][b].nonzero_certified())
                    return b;
            }
        return 0;
    }
};

/// Q(z,u) = u^L P(z, 1/u): coefficient reversal in the second variable,
/// the corollary's reduction P(z, Gamma(z)) = Gamma(z)^L Q(z, G(z)).
inline BivarPolynomial gamma_corollary_reduce(const BivarPolynomial& p) {
    if (p.is_zero()) throw DomainError("gamma_corollary_reduce: zero polynomial");
    BivarPolynomial q = p;
    if (p.exact) {
        for (long a = 0; a <= p.L; ++a)
            for (long b = 0; b <= p.L; ++b) q.coeffs[a][b] = p.coeffs[a][p.L - b];
    } else {
        for (long a = 0; a <= p.L; ++a)
            for (long b = 0; b <= p.L; ++b) q.coeffs_ball[a][b] = p.coeffs_ball[a][p.L - b];
    }
    return q;
}

} // namespace gp
