#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "gp/bivar_poly.hpp"
#include "gp/linalg.hpp"
#include "gp/rational.hpp"
#include "gp/real_ball.hpp"

namespace gp {

/// Finite point set in C^2; exact mode carries rational coordinates and is
/// required for certified answers.
struct PointSet {
    std::vector<std::pair<BigRational, BigRational>> exact_points;
    std::vector<std::pair<ComplexBall, ComplexBall>> ball_points;
    bool exact = true;

    size_t size() const { return exact ? exact_points.size() : ball_points.size(); }
    static PointSet from_exact(std::vector<std::pair<BigRational, BigRational>> pts) {
        PointSet s;
        s.exact = true;
        s.exact_points = std::move(pts);
        return s;
    }
};

namespace detail {

/// Monomial exponents (i, j), i + j <= T, graded lexicographic:
/// degree 0, then within each degree x-power descending.
inline std::vector<std::pair<long, long>> monomials_up_to(long T) {
    std::vector<std::pair<long, long>> out;
    for (long d = 0; d <= T; ++d)
        for (long i = d; i >= 0; --i) out.emplace_back(i, d - i);
    return out;
}

inline linalg::QMatrix monomial_matrix(const PointSet& s, long T) {
    auto mons = monomials_up_to(T);
    linalg::QMatrix m(s.size(), std::vector<BigRational>(mons.size()));
    for (size_t r = 0; r < s.size(); ++r) {
        const auto& [x, y] = s.exact_points[r];
        // powers up to T
        std::vector<BigRational> xp(T + 1, BigRational(1)), yp(T + 1, BigRational(1));
        for (long i = 1; i <= T; ++i) {
            xp[i] = xp[i - 1] * x;
            yp[i] = yp[i - 1] * y;
        }
        for (size_t c = 0; c < mons.size(); ++c) m[r][c] = xp[mons[c].first] * yp[mons[c].second];
    }
    return m;
}

} // namespace detail

/// Dimension-count upper bound: the smallest T with (T+1)(T+2)/2 > |S|.
inline long omega_dimension_bound(size_t npoints) {
    long T = 1;
    while (static_cast<size_t>((T + 1) * (T + 2) / 2) <= npoints) ++T;
    return T;
}

/// omega(S): minimal total degree of a nonzero plane curve through all of S,
/// by exact rank of the monomial matrix for T = 1, 2, ... Exact input only.
inline long omega(const PointSet& s) {
    if (s.size() == 0) throw DomainError("omega: empty point set");
    if (!s.exact)
        throw InexactInput("omega: certified answer requires exact rational points "
                           "(use omega_dimension_bound for ball data)");
    for (long T = 1;; ++T) {
        auto m = detail::monomial_matrix(s, T);
        size_t ncols = m[0].size();
        if (linalg::exact_rank(m) < ncols) return T;
        // T = omega_dimension_bound(...) always terminates the loop
    }
}

/// A nonzero polynomial of total degree <= T vanishing on S, or nullopt if
/// only the zero polynomial does. Exact kernel with the first-free-column
/// tie-break; residuals on S are exactly zero by construction.
inline std::optional<BivarPolynomial> fit_curve(const PointSet& s, long T) {
    if (s.size() == 0) throw DomainError("fit_curve: empty point set");
    if (!s.exact) throw InexactInput("fit_curve: exact rational points required");
    auto m = detail::monomial_matrix(s, T);
    auto mons = detail::monomials_up_to(T);
    auto x = linalg::exact_kernel_vector(std::move(m), mons.size());
    if (!x) return std::nullopt;
    BivarPolynomial p = BivarPolynomial::zero(T);
    for (size_t c = 0; c < mons.size(); ++c) p.coeffs[mons[c].first][mons[c].second].re = (*x)[c];
    return p;
}

/// Parameters of the Bombieri–Pila hypothesis (Proposition 2).
/// Invariant: T >= sqrt(8 d).
struct BPParameters {
    long d = 1;
    long T = 0;
    RealBall A{64}, Z{64}, M{64}, H{64};
};

inline BPParameters make_bp_parameters(long d, long T, const RealBall& A, const RealBall& Z,
                                       const RealBall& M, const RealBall& H) {
    if (d < 1) throw DomainError("BPParameters: d must be >= 1");
    if (static_cast<double>(T) * T < 8.0 * static_cast<double>(d))
        throw DomainError("BPParameters: invariant T >= sqrt(8d) violated");
    if (!A.is_positive() || !Z.is_positive() || !H.is_positive())
        throw DomainError("BPParameters: A, Z, H must be positive");
    return BPParameters{d, T, A, Z, M, H};
}

struct BPConditionResult {
    bool holds = false;
    double lhs_log = 0;
    double rhs_log = 0;
};

/// The proposition's inequality (AZ)^T > (4T)^(96 d^2/T) (M+1)^(16 d) H^(48 d^2),
/// compared in logarithms with certified directed rounding.
inline BPConditionResult bp_condition(const BPParameters& p) {
    for (Prec prec : {128L, 256L, 512L, 1024L}) {
        RealBall A = p.A.at_prec(prec), Z = p.Z.at_prec(prec), M = p.M.at_prec(prec),
                 H = p.H.at_prec(prec);
        RealBall T = RealBall::from_long(p.T, prec);
        RealBall d = RealBall::from_long(p.d, prec);
        RealBall lhs = T * (log(A) + log(Z));
        RealBall rhs = (RealBall::from_long(96, prec) * d * d / T) * log(T.mul_2si(2)) +
                       RealBall::from_long(16, prec) * d * log(M + RealBall::from_long(1, prec)) +
                       RealBall::from_long(48, prec) * d * d * log(H);
        BPConditionResult res;
        res.lhs_log = lhs.to_double();
        res.rhs_log = rhs.to_double();
        if (mpfr_cmp(lhs.lower().get(), rhs.upper().get()) > 0) {
            res.holds = true;
            return res;
        }
        if (mpfr_cmp(lhs.upper().get(), rhs.lower().get()) < 0) {
            res.holds = false;
            return res;
        }
    }
    throw Inconclusive("bp_condition: logs not separable at 1024 bits");
}

struct SelectedParameters {
    BPParameters params;
    double lambda_used = 0;
    double Z_value = 0;
    bool choix_holds = false; // c d log H <= Z log Z at the returned Z
};

/// The main theorem's parameter selection:
///   Z = lambda d log(H)/log(d log H) + n,  A = 1,  M = Z^{cZ},
///   T = ceil(kappa c d Z) with kappa = 17 so that T log Z dominates the
///   16 d log(M+1) = 16 c d Z log Z term of the condition (the paper's
///   "T >= 2cdZ" uses a c that already absorbs the M-exponent).
/// lambda is doubled, as in the proof, until T >= sqrt(8d).
inline SelectedParameters select_parameters(long n, long d, double H, double lambda, double c) {
    if (n < 2 || d < 1) throw DomainError("select_parameters: need n >= 2, d >= 1");
    if (H < 3.0) throw DomainError("select_parameters: H must be >= 3");
    if (static_cast<double>(d) * std::log(H) <= std::exp(1.0))
        throw DomainError("select_parameters: need d log H > e");
    if (lambda <= 0 || c <= 0) throw DomainError("select_parameters: lambda, c must be positive");

    constexpr double kTMultiplier = 17.0;
    const Prec prec = 192;
    RealBall Hb = RealBall::from_double(H, prec);
    RealBall db = RealBall::from_long(d, prec);
    RealBall cb = RealBall::from_double(c, prec);
    double lam = lambda;
    for (int attempt = 0; attempt < 64; ++attempt) {
        RealBall lamb = RealBall::from_double(lam, prec);
        RealBall Z = lamb * db * log(Hb) / log(db * log(Hb)) + RealBall::from_long(n, prec);
        double Tceil = std::ceil(kTMultiplier * c * static_cast<double>(d) *
                                 mpfr_get_d(Z.upper().get(), MPFR_RNDU));
        long T = static_cast<long>(Tceil);
        if (static_cast<double>(T) * T < 8.0 * static_cast<double>(d)) {
            lam *= 2; // "quitte a augmenter encore la valeur de lambda"
            continue;
        }
        RealBall M = exp(cb * Z * log(Z));
        RealBall lhs = cb * db * log(Hb);
        RealBall rhs = Z * log(Z);
        bool choix = mpfr_cmp(lhs.upper().get(), rhs.lower().get()) <= 0;
        if (!choix) throw LambdaTooSmall("select_parameters: c d log H <= Z log Z fails");
        SelectedParameters out;
        out.params = make_bp_parameters(d, T, RealBall::from_long(1, prec), Z, M, Hb);
        out.lambda_used = lam;
        out.Z_value = Z.to_double();
        out.choix_holds = choix;
        return out;
    }
    throw LambdaTooSmall("select_parameters: lambda escalation failed to reach T >= sqrt(8d)");
}

} // namespace gp
