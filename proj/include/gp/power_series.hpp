#pragma once

#include <cstddef>
#include <vector>

#include "gp/complex_ball.hpp"
#include "gp/errors.hpp"

namespace gp {

/// Truncated power series with ComplexBall coefficients; coeffs[k] encloses
/// the exact coefficient of z^k. All ring operations truncate at `order()`
/// (= number of stored coefficients).
class PowerSeries {
  public:
    PowerSeries(size_t order, Prec prec) : prec_(prec), c_(order, ComplexBall(prec)) {}

    size_t order() const { return c_.size(); }
    Prec prec() const { return prec_; }
    const ComplexBall& operator[](size_t k) const { return c_[k]; }
    ComplexBall& operator[](size_t k) { return c_[k]; }

    static PowerSeries identity(size_t order, Prec prec) {
        PowerSeries s(order, prec);
        if (order > 1) s[1] = ComplexBall::from_long(1, prec);
        return s;
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        check_orders(a, b);
        PowerSeries r(a.order(), std::max(a.prec_, b.prec_));
        for (size_t k = 0; k < a.order(); ++k) r[k] = a[k] + b[k];
        return r;
    }
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
        check_orders(a, b);
        PowerSeries r(a.order(), std::max(a.prec_, b.prec_));
        for (size_t k = 0; k < a.order(); ++k) r[k] = a[k] - b[k];
        return r;
    }

    /// Cauchy product truncated at the common order.
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        check_orders(a, b);
        size_t n = a.order();
        Prec p = std::max(a.prec_, b.prec_);
        PowerSeries r(n, p);
        for (size_t k = 0; k < n; ++k) {
            ComplexBall acc(p);
            for (size_t j = 0; j <= k; ++j) acc = acc + a[j] * b[k - j];
            r[k] = acc;
        }
        return r;
    }

    PowerSeries mul_scalar(const ComplexBall& s) const {
        PowerSeries r(order(), prec_);
        for (size_t k = 0; k < order(); ++k) r[k] = c_[k] * s;
        return r;
    }

    /// Multiply by z (shift coefficients up, dropping the top one).
    PowerSeries shift_up() const {
        PowerSeries r(order(), prec_);
        for (size_t k = order(); k-- > 1;) r[k] = c_[k - 1];
        return r;
    }

    friend void check_orders(const PowerSeries& a, const PowerSeries& b) {
        if (a.order() != b.order())
            throw OrderMismatch("power series operands of different truncation orders");
    }

  private:
    Prec prec_;
    std::vector<ComplexBall> c_;
};

/// exp of a series via the differential-equation recurrence:
/// f' = a' f, so k f_k = sum_{j=1..k} j a_j f_{k-j}. O(order^2), and the
/// constant term goes through the ball exponential.
inline PowerSeries series_exp(const PowerSeries& a) {
    size_t n = a.order();
    Prec p = a.prec();
    PowerSeries f(n, p);
    if (n == 0) return f;
    if (!a[0].is_finite()) throw DomainError("series_exp: non-finite constant term");
    f[0] = exp(a[0]);
    for (size_t k = 1; k < n; ++k) {
        ComplexBall acc(p);
        for (size_t j = 1; j <= k; ++j) {
            acc = acc + a[j].mul_real(RealBall::from_long(static_cast<long>(j), p)) * f[k - j];
        }
        f[k] = acc.mul_real(inv(RealBall::from_long(static_cast<long>(k), p)));
    }
    return f;
}

/// Composition a(b(z)) for series with b(0) = 0 (required so the truncation
/// is consistent). Horner over the coefficients of a.
inline PowerSeries series_compose(const PowerSeries& a, const PowerSeries& b) {
    check_orders(a, b);
    if (!b[0].contains_zero() || !b[0].is_exact())
        throw DomainError("series_compose: inner series must have exact zero constant term");
    size_t n = a.order();
    Prec p = std::max(a.prec(), b.prec());
    PowerSeries r(n, p);
    if (n == 0) return r;
    for (size_t k = n; k-- > 0;) {
        r = r * b;
        r[0] = r[0] + a[k];
    }
    return r;
}

enum class SeriesOp { mul, exp, compose };

/// Dispatcher mirroring the coarse operation surface; unary ops ignore b.
inline PowerSeries series_ops(SeriesOp op, const PowerSeries& a, const PowerSeries* b = nullptr) {
    switch (op) {
        case SeriesOp::mul:
            if (!b) throw DomainError("series_ops: mul needs two operands");
            return a * (*b);
        case SeriesOp::exp:
            return series_exp(a);
        case SeriesOp::compose:
            if (!b) throw DomainError("series_ops: compose needs two operands");
            return series_compose(a, *b);
    }
    throw DomainError("series_ops: unknown op");
}

} // namespace gp
