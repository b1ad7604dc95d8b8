#pragma once

#include <cmath>
#include <deque>
#include <functional>
#include <utility>
#include <vector>

#include "gp/complex_ball.hpp"
#include "gp/gamma.hpp"
#include "gp/parallel.hpp"
#include "gp/prec.hpp"

namespace gp {

/// The paper's rectangle Z(X,Y) = { x+iy : -X <= x <= 1, -Y <= y <= Y }.
struct RectangleRegion {
    double X;
    double Y = 1.0;
};

struct ContourCount {
    long count = 0;
    long contour_cells = 0;
    RealBall min_boundary_modulus{64}; // certified positive lower bound of |F| on the contour
};

/// Analytic ball function; must return an enclosure of F over the whole
/// input ball, at the input's precision.
using BallFunction = std::function<ComplexBall(const ComplexBall&)>;

namespace detail {

struct SubdivisionLimit : Error {
    using Error::Error;
};
struct NeedMorePrecision : Error {
    using Error::Error;
};

/// Parametrized contour piece over t in [0,1]; returns an enclosure of the
/// path over the whole t-ball.
using PathFunction = std::function<ComplexBall(const RealBall&)>;

struct Piece {
    double t0, t1;
};

/// Adaptive bisection of one initial cell until each sub-piece's image ball
/// excludes 0 with angular half-extent asin(1/4) (so consecutive values sit
/// in an open quarter-plane and the per-piece argument step is unambiguous).
///
/// The depth cap must accommodate legitimately steep spots: near z = -n the
/// derivative of anything involving 1/Gamma grows like n!, so certifying a
/// small-|F| value there needs cells of width |F|/(4 |F'|) — far below
/// 2^-16 of an edge. A failing chain costs O(depth) evaluations, so a deep
/// cap stays cheap; the explicit evaluation budget bounds the total work.
inline void subdivide_cell(const PathFunction& path, const BallFunction& F, Prec prec,
                           double t0, double t1, double min_width,
                           std::vector<Piece>& out, Mpfr& min_mod_lo) {
    long evals_left = 1L << 20;
    // LIFO with the left half pushed last: pieces come out in contour order,
    // which the argument-summation pass depends on.
    std::vector<Piece> work{{t0, t1}};
    while (!work.empty()) {
        Piece p = work.back();
        work.pop_back();
        if (--evals_left < 0)
            throw SubdivisionLimit("contour: evaluation budget exhausted on one cell");
        RealBall tb(prec);
        mpfr_set_d(tb.rb_mid().get(), 0.5 * (p.t0 + p.t1), MPFR_RNDN);
        mpfr_set_d(tb.rb_rad().get(), 0.5 * (p.t1 - p.t0), MPFR_RNDU);
        bool ok = false;
        Mpfr lo(RealBall::kRadPrec);
        try {
            ComplexBall z = path(tb);
            ComplexBall w = F(z);
            // accept iff rad <= |mid|/4 (implies 0 excluded)
            Mpfr mid_abs(RealBall::kRadPrec);
            mpfr_hypot(mid_abs.get(), w.mid_re().get(), w.mid_im().get(), MPFR_RNDD);
            Mpfr quarter(RealBall::kRadPrec);
            mpfr_div_2si(quarter.get(), mid_abs.get(), 2, MPFR_RNDD);
            ok = mpfr_cmp(w.rad().get(), quarter.get()) <= 0;
            mpfr_sub(lo.get(), mid_abs.get(), w.rad().get(), MPFR_RNDD);
        } catch (const DomainError&) {
            ok = false; // ball too wide for the evaluator; treat as inconclusive
        }
        if (ok) {
            out.push_back(p);
            if (mpfr_nan_p(min_mod_lo.get()) || mpfr_cmp(lo.get(), min_mod_lo.get()) < 0)
                mpfr_set(min_mod_lo.get(), lo.get(), MPFR_RNDD);
            continue;
        }
        if (p.t1 - p.t0 <= min_width)
            throw SubdivisionLimit("contour: subdivision limit reached (possible boundary zero)");
        double tm = 0.5 * (p.t0 + p.t1);
        work.push_back({tm, p.t1});
        work.push_back({p.t0, tm});
    }
}

struct WindingResult {
    long winding;
    long cells;
    Mpfr min_mod_lo{RealBall::kRadPrec};
};

/// Total argument variation of F along the closed contour path([0,1]),
/// divided by 2*pi, as a certified integer.
inline WindingResult winding_number(const PathFunction& path, const BallFunction& F, Prec prec,
                                    int initial_cells, int max_depth, int threads) {
    double min_width = 1.0 / (static_cast<double>(initial_cells) * std::pow(2.0, max_depth));
    std::vector<std::vector<Piece>> cell_pieces(initial_cells);
    std::vector<Mpfr> cell_lo;
    for (int i = 0; i < initial_cells; ++i) {
        Mpfr m(RealBall::kRadPrec);
        mpfr_set_nan(m.get());
        cell_lo.push_back(std::move(m));
    }
    parallel_for(static_cast<size_t>(initial_cells), threads, [&](size_t i) {
        double a = static_cast<double>(i) / initial_cells;
        double b = static_cast<double>(i + 1) / initial_cells;
        subdivide_cell(path, F, prec, a, b, min_width, cell_pieces[i], cell_lo[i]);
    });

    std::vector<Piece> pieces;
    for (auto& v : cell_pieces) pieces.insert(pieces.end(), v.begin(), v.end());
    size_t n = pieces.size();

    // breakpoint values; t=1 wraps to t=0 (closed contour)
    std::vector<ComplexBall> vals(n, ComplexBall(prec));
    parallel_for(n, threads, [&](size_t j) {
        RealBall tb(prec);
        mpfr_set_d(tb.rb_mid().get(), pieces[j].t0, MPFR_RNDN);
        vals[j] = F(path(tb));
    });

    RealBall total(prec);
    for (size_t j = 0; j < n; ++j) {
        const ComplexBall& a = vals[j];
        const ComplexBall& b = vals[(j + 1) % n];
        RealBall ar = a.real_part(), ai = a.imag_part();
        RealBall br = b.real_part(), bi = b.imag_part();
        RealBall dot = ar * br + ai * bi;
        RealBall cross = ar * bi - ai * br;
        if (!dot.is_positive())
            throw NeedMorePrecision("contour: endpoint angle step not certified");
        total = total + atan(cross / dot);
    }

    RealBall two_pi = RealBall::pi(prec).mul_2si(1);
    double k_d = std::round(total.to_double() / two_pi.to_double());
    long k = static_cast<long>(k_d);
    RealBall resid = total - two_pi * RealBall::from_long(k, prec);
    Mpfr pi_lo(RealBall::kRadPrec);
    mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
    if (mpfr_cmp(resid.abs_upper().get(), pi_lo.get()) >= 0)
        throw NeedMorePrecision("contour: winding number not pinned to one integer");

    WindingResult r;
    r.winding = k;
    r.cells = static_cast<long>(n);
    mpfr_set_nan(r.min_mod_lo.get());
    for (auto& m : cell_lo)
        if (!mpfr_nan_p(m.get()) &&
            (mpfr_nan_p(r.min_mod_lo.get()) || mpfr_cmp(m.get(), r.min_mod_lo.get()) < 0))
            mpfr_set(r.min_mod_lo.get(), m.get(), MPFR_RNDD);
    return r;
}

/// Straight segment from a to b (exact complex doubles).
inline PathFunction segment_path(double ar, double ai, double br, double bi) {
    return [=](const RealBall& t) {
        Prec p = t.prec();
        RealBall are = RealBall::from_double(ar, p), aim = RealBall::from_double(ai, p);
        RealBall dre = RealBall::from_double(br - ar, p), dim = RealBall::from_double(bi - ai, p);
        return ComplexBall(are + dre * t, aim + dim * t);
    };
}

/// Circle of radius R around (cr, ci), counterclockwise.
inline PathFunction circle_path(double cr, double ci, double R) {
    return [=](const RealBall& t) {
        Prec p = t.prec();
        RealBall theta = RealBall::pi(p).mul_2si(1) * t;
        RealBall rr = RealBall::from_double(R, p);
        return ComplexBall(RealBall::from_double(cr, p) + rr * cos(theta),
                           RealBall::from_double(ci, p) + rr * sin(theta));
    };
}

/// Closed rectangle boundary through the 4 corners, counterclockwise,
/// one quarter of the parameter per edge.
inline PathFunction rectangle_path(double x0, double x1, double y0, double y1) {
    return [=](const RealBall& t) {
        Prec p = t.prec();
        RealBall four = RealBall::from_long(4, p);
        RealBall s = t * four;
        // which edge: decided from the t-ball's bounds; a ball straddling a
        // corner would be ambiguous, but cells are quartered so it cannot.
        double tm = t.to_double();
        int edge = std::min(3, static_cast<int>(tm * 4.0));
        RealBall u = s - RealBall::from_long(edge, p);
        switch (edge) {
            case 0: return ComplexBall(RealBall::from_double(x0, p) +
                                           RealBall::from_double(x1 - x0, p) * u,
                                       RealBall::from_double(y0, p));
            case 1: return ComplexBall(RealBall::from_double(x1, p),
                                       RealBall::from_double(y0, p) +
                                           RealBall::from_double(y1 - y0, p) * u);
            case 2: return ComplexBall(RealBall::from_double(x1, p) +
                                           RealBall::from_double(x0 - x1, p) * u,
                                       RealBall::from_double(y1, p));
            default: return ComplexBall(RealBall::from_double(x0, p),
                                        RealBall::from_double(y1, p) +
                                            RealBall::from_double(y0 - y1, p) * u);
        }
    };
}

inline ContourCount run_counter(const PathFunction& path, const BallFunction& make_f, Prec bits,
                                const PrecisionContext& ctx, int initial_cells, int threads) {
    PrecisionContext cur = ctx.with_bits(bits);
    int width_escalations = 0;
    while (true) {
        // width cap 2^-depth of a cell; see subdivide_cell. At low precision
        // the image balls hit the rounding floor long before 2^-44, so the
        // depth follows the precision and escalation takes over from there.
        int max_depth = static_cast<int>(std::min<long>(44, cur.bits / 2));
        try {
            WindingResult w = winding_number(path, make_f, cur.bits, initial_cells, max_depth, threads);
            ContourCount c;
            c.count = w.winding;
            c.contour_cells = w.cells;
            c.min_boundary_modulus = RealBall::from_mpfr(w.min_mod_lo.get(), 64);
            return c;
        } catch (const SubdivisionLimit& e) {
            // A width-limit failure is usually a genuine (near-)zero on the
            // boundary, which no precision can fix; one escalation rules out
            // a rounding-floor stall, after that the caller's perturbation
            // remedy (nudged radius / safe_X) is the productive path.
            auto next = cur.escalated();
            if (!next || ++width_escalations > 1)
                throw BoundaryZero(std::string(e.what()) + " (subdivision exhausted)");
            cur = *next;
        } catch (const NeedMorePrecision& e) {
            auto next = cur.escalated();
            if (!next) throw PrecisionExhausted(e.what());
            cur = *next;
        }
    }
}

} // namespace detail

/// Admissible bracket X^- <= X <= X^+ with |X± - X| <= 1/2 and
/// dist(X±, Z) >= 1/4, per the proof's perturbation of the left edge.
inline std::pair<double, double> safe_X(double X) {
    if (X < 1.0) throw DomainError("safe_X: X must be >= 1");
    double n = std::round(X);
    if (std::abs(X - n) >= 0.25) return {X, X};
    return {n - 0.25, n + 0.25};
}

/// Number of solutions of G(z) = w (with multiplicity) in Z(X,Y), as the
/// winding number of G - w along the boundary, by adaptive bisection of
/// each edge until every sub-segment's image sits in a certified cone.
inline ContourCount count_solutions_rectangle(const ComplexBall& w, const RectangleRegion& region,
                                              const PrecisionContext& ctx, int threads = 0) {
    if (!w.is_finite()) throw DomainError("count_solutions_rectangle: non-finite w");
    auto path = detail::rectangle_path(-region.X, 1.0, -region.Y, region.Y);
    BallFunction f = [w](const ComplexBall& z) {
        return reciprocal_gamma_prec(z, z.prec()) - w.at_prec(z.prec());
    };
    // 8 initial cells per edge keeps each cell within one edge
    return detail::run_counter(path, f, ctx.bits, ctx, 32, threads);
}

/// Zeros of F (with multiplicity) in |z - center| < R by the same method.
inline ContourCount count_zeros_disk(const BallFunction& F, double R, const PrecisionContext& ctx,
                                     int threads = 0, double center_re = 0.0,
                                     double center_im = 0.0) {
    if (R <= 0) throw DomainError("count_zeros_disk: R must be positive");
    auto path = detail::circle_path(center_re, center_im, R);
    return detail::run_counter(path, F, ctx.bits, ctx, 16, threads);
}

/// count_zeros_disk with the documented radius-nudge retry schedule for
/// BoundaryZero: R' = R ± 2^-6 (1 + k 2^-3), k = 0..7.
inline ContourCount count_zeros_disk_nudged(const BallFunction& F, double R,
                                            const PrecisionContext& ctx, int threads = 0,
                                            double* used_R = nullptr) {
    double base = 1.0 / 64.0;
    for (int k = 0; k <= 7; ++k) {
        for (int sgn : {0, 1, -1}) {
            if (k > 0 && sgn == 0) continue;
            double r = R + sgn * base * (1.0 + k / 8.0);
            try {
                ContourCount c = count_zeros_disk(F, r, ctx, threads);
                if (used_R) *used_R = r;
                return c;
            } catch (const BoundaryZero&) {
                continue;
            }
        }
    }
    throw BoundaryZero("count_zeros_disk: boundary zero persists through nudge schedule");
}

} // namespace gp
