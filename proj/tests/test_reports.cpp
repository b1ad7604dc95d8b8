#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "gp/reports.hpp"

using namespace gp;

namespace {
const PrecisionContext kCtx = PrecisionContext::standard();
}

TEST_CASE("complex ball survives the hex JSON round trip exactly") {
    ComplexBall b = ComplexBall::from_doubles(-3.25, 0.7071, 192).widened(
        RealBall::dyadic(1, -100, 64).mid());
    Json j = ball_to_json(b);
    ComplexBall back = complex_ball_from_json(j);
    CHECK(mpfr_cmp(b.mid_re().get(), back.mid_re().get()) == 0);
    CHECK(mpfr_cmp(b.mid_im().get(), back.mid_im().get()) == 0);
    CHECK(mpfr_cmp(b.rad().get(), back.rad().get()) == 0);
    CHECK(back.prec() == 192);
}

TEST_CASE("polynomial file round trip with exact rationals") {
    BivarPolynomial p = BivarPolynomial::zero(2);
    p.coeffs[0][1].re = make_rational(-3, 7);
    p.coeffs[2][2].re = make_rational(5, 64);
    p.coeffs[1][0].im = make_rational(1, 2);
    Json j = polynomial_to_json(p);
    BivarPolynomial back = polynomial_from_json(j);
    CHECK(back.L == 2);
    CHECK(back.coeffs[0][1].re == make_rational(-3, 7));
    CHECK(back.coeffs[2][2].re == make_rational(5, 64));
    CHECK(back.coeffs[1][0].im == make_rational(1, 2));
    CHECK(polynomial_to_json(back).dump() == j.dump());
}

TEST_CASE("manifest determinism: equal bodies hash equal") {
    Json body{{"kind", "demo"}, {"x", 1}};
    RunManifest m1{"demo", {{"a", "1"}}, 7, 256, 4096, "t0", "t1"};
    RunManifest m2 = m1;
    Json r1 = make_report(m1, body);
    Json r2 = make_report(m2, body);
    CHECK(r1.at("body").dump() == r2.at("body").dump());
    CHECK(r1.at("manifest").at("body_hash") == r2.at("manifest").at("body_hash"));
    // different body, different hash
    Json body2{{"kind", "demo"}, {"x", 2}};
    Json r3 = make_report(m1, body2);
    CHECK(r1.at("manifest").at("body_hash") != r3.at("manifest").at("body_hash"));
}

TEST_CASE("census CSV columns") {
    CensusReport rep = run_census(2, 5, 1.0, kCtx, 2);
    std::ostringstream os;
    census_to_csv(rep, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "p,q,target,verdict,nearest_p,nearest_q,gap_lower_log2,bits_used");
    std::string line;
    size_t rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 7);
    }
    CHECK(rows == rep.records.size());
}

TEST_CASE("plot emission and kind mismatches") {
    CensusReport rep = run_census(2, 5, 1.0, kCtx, 2);
    Json body = census_report_to_json(rep, true);
    std::ostringstream os;
    emit_plot_data(body, PlotKind::census_scatter, os);
    std::string out = os.str();
    CHECK(out.rfind("# x=p/q", 0) == 0);
    CHECK(std::count(out.begin(), out.end(), '\n') > 3);
    std::ostringstream sink;
    CHECK_THROWS_AS(emit_plot_data(body, PlotKind::count_vs_X, sink), KindMismatch);

    Json sweep{{"kind", "count_sweep"},
               {"rows", Json::array({Json{{"X", 10.5}, {"count", 11}}})}};
    std::ostringstream os2;
    emit_plot_data(sweep, PlotKind::count_vs_X, os2);
    CHECK(os2.str().find("10.5") != std::string::npos);
    CHECK_THROWS_AS(emit_plot_data(sweep, PlotKind::bound_vs_count, sink), KindMismatch);
}

TEST_CASE("point set CSV round trip") {
    PointSet s = PointSet::from_exact({{make_rational(1, 2), BigRational(3)},
                                       {BigRational(0), make_rational(-5, 7)}});
    std::ostringstream os;
    point_set_to_csv(s, os);
    std::istringstream is(os.str());
    PointSet back = point_set_from_csv(is);
    REQUIRE(back.size() == 2);
    CHECK(back.exact_points[0].first == make_rational(1, 2));
    CHECK(back.exact_points[1].second == make_rational(-5, 7));
}
