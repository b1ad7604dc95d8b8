#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gp/curve_degree.hpp"
#include "oracle_helpers.hpp"

using namespace gp;

namespace {
PointSet pts(std::initializer_list<std::pair<long, long>> xy) {
    std::vector<std::pair<BigRational, BigRational>> v;
    for (auto& [x, y] : xy) v.emplace_back(BigRational(x), BigRational(y));
    return PointSet::from_exact(std::move(v));
}
} // namespace

TEST_CASE("omega basics") {
    CHECK(omega(pts({{3, 7}})) == 1);
    // 5 generic points force a conic
    PointSet s5 = pts({{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 3}});
    CHECK(omega(s5) == 2);
    // 6 generic rational points: no conic, cubic always exists
    PointSet s6 = PointSet::from_exact({{BigRational(0), BigRational(0)},
                                        {BigRational(1), BigRational(0)},
                                        {BigRational(0), BigRational(1)},
                                        {make_rational(1, 2), BigRational(2)},
                                        {BigRational(2), make_rational(3, 2)},
                                        {BigRational(3), BigRational(1)}});
    long w = omega(s6);
    CHECK(w == 3);
    // oracle: the 6x6 conic matrix has full rank
    CHECK(w == oracle::brute_omega(s6.exact_points));
}

TEST_CASE("omega rejects ball data, dimension bound covers it") {
    PointSet b;
    b.exact = false;
    b.ball_points.emplace_back(ComplexBall::from_long(0, 64), ComplexBall::from_long(0, 64));
    CHECK_THROWS_AS(omega(b), InexactInput);
    CHECK(omega_dimension_bound(1) == 1);
    CHECK(omega_dimension_bound(5) == 2);
    CHECK(omega_dimension_bound(9) == 3);
}

TEST_CASE("fit_curve recovers the line through two points") {
    PointSet s = pts({{0, 0}, {1, 1}});
    auto p = fit_curve(s, 1);
    REQUIRE(p);
    // vanishes on both, nonzero, degree 1: must be proportional to w - z
    auto v0 = p->evaluate_exact(BigRational(0), BigRational(0));
    auto v1 = p->evaluate_exact(BigRational(1), BigRational(1));
    CHECK(v0.is_zero());
    CHECK(v1.is_zero());
    CHECK_FALSE(p->is_zero());
    CHECK(p->coeffs[1][0].re == -p->coeffs[0][1].re);
}

TEST_CASE("fit_curve residuals are exactly zero, none when full rank") {
    PointSet s5 = pts({{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 3}});
    auto conic = fit_curve(s5, 2);
    REQUIRE(conic);
    for (auto& [x, y] : s5.exact_points) CHECK(conic->evaluate_exact(x, y).is_zero());
    PointSet s6 = PointSet::from_exact({{BigRational(0), BigRational(0)},
                                        {BigRational(1), BigRational(0)},
                                        {BigRational(0), BigRational(1)},
                                        {make_rational(1, 2), BigRational(2)},
                                        {BigRational(2), make_rational(3, 2)},
                                        {BigRational(3), BigRational(1)}});
    CHECK_FALSE(fit_curve(s6, 2));
}

TEST_CASE("omega is invariant under swapping x and y") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<std::pair<BigRational, BigRational>> v, w;
        int npts = 3 + static_cast<int>(rng() % 6);
        for (int i = 0; i < npts; ++i) {
            BigRational x = make_rational(static_cast<long>(rng() % 7), 1 + (rng() % 2));
            BigRational y = make_rational(static_cast<long>(rng() % 7), 1 + (rng() % 2));
            v.emplace_back(x, y);
            w.emplace_back(y, x);
        }
        CHECK(omega(PointSet::from_exact(v)) == omega(PointSet::from_exact(w)));
    }
}

TEST_CASE("bareiss rank equals the division-based oracle on random matrices") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 40; ++rep) {
        size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        linalg::QMatrix m(rows, std::vector<BigRational>(cols));
        for (auto& row : m)
            for (auto& e : row)
                e = make_rational(static_cast<long>(rng() % 9) - 4, 1 + (rng() % 3));
        CHECK(linalg::exact_rank(m) == oracle::gauss_rank(m));
    }
}

TEST_CASE("bp_condition at the spec's corners") {
    Prec p = 128;
    auto mk = [&](long d, long T, double A, double Z, double M, double H) {
        return make_bp_parameters(d, T, RealBall::from_double(A, p), RealBall::from_double(Z, p),
                                  RealBall::from_double(M, p), RealBall::from_double(H, p));
    };
    auto r1 = bp_condition(mk(1, 8, 1, 1, 0, 1));
    CHECK_FALSE(r1.holds);
    CHECK(r1.lhs_log == Catch::Approx(0.0).margin(1e-12));
    CHECK(r1.rhs_log == Catch::Approx(12.0 * std::log(32.0)).epsilon(1e-9));
    auto r2 = bp_condition(mk(1, 100, 1, 1e6, 1, 3));
    CHECK(r2.holds);
    CHECK(r2.lhs_log == Catch::Approx(600.0 * std::log(10.0)).epsilon(1e-9));
    // invariant T >= sqrt(8 d)
    CHECK_THROWS_AS(mk(1, 2, 1, 1, 0, 1), DomainError);
    CHECK_THROWS_AS(mk(2, 3, 1, 1, 0, 1), DomainError);
}

TEST_CASE("select_parameters formula and checks") {
    // H = 2 e^e, the spec's worked point
    double H = 2.0 * std::exp(std::exp(1.0));
    auto sel = select_parameters(2, 1, H, 10.0, 1.0);
    double logH = std::log(H);
    double expectZ = 10.0 * logH / std::log(logH) + 2.0;
    CHECK(sel.Z_value == Catch::Approx(expectZ).epsilon(1e-9));
    CHECK(sel.choix_holds);
    CHECK(sel.params.T == static_cast<long>(std::ceil(17.0 * sel.Z_value)));
    CHECK(sel.params.d == 1);

    // Z >= n always (additive n term)
    for (long n : {2L, 5L, 9L}) {
        auto s = select_parameters(n, 1, 1000.0, 32.0, 1.0);
        CHECK(s.Z_value >= static_cast<double>(n));
    }

    // doubling lambda strictly increases Z and T
    auto a = select_parameters(2, 1, 1000.0, 32.0, 1.0);
    auto b = select_parameters(2, 1, 1000.0, 64.0, 1.0);
    CHECK(b.Z_value > a.Z_value);
    CHECK(b.params.T > a.params.T);

    CHECK_THROWS_AS(select_parameters(2, 1, 2.0, 10.0, 1.0), DomainError); // H < 3
}

TEST_CASE("calibrated sweep: condition holds at lambda0 = 128") {
    for (long d : {1L, 2L})
        for (double H : {1e3, 1e6})
            for (long n : {2L, 5L}) {
                auto sel = select_parameters(n, d, H, 128.0, 1.0);
                auto res = bp_condition(sel.params);
                INFO("d=" << d << " H=" << H << " n=" << n);
                CHECK(res.holds);
            }
}
