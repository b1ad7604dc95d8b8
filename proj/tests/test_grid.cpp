#include <catch2/catch_amalgamated.hpp>

#include "gp/grid.hpp"
#include "gp/reports.hpp"

using namespace gp;

namespace {
const PrecisionContext kCtx = PrecisionContext::standard();
}

TEST_CASE("r0 components match the displayed constants") {
    auto r = compute_r0(kCtx);
    // component 1 is exactly 1/2
    CHECK(r.components[0].to_double() == 0.5);
    CHECK(r.components[0].is_exact());
    // component 2 = (2 pi e)^(-1/2) sinh(pi) e^(-pi/2) (3/e)^(5/2), direct arithmetic
    double c2 = std::pow(2.0 * M_PI * M_E, -0.5) * std::sinh(M_PI) * std::exp(-M_PI / 2.0) *
                std::pow(3.0 / M_E, 2.5);
    CHECK(std::fabs(r.components[1].to_double() - c2) < 1e-12);
    // r0 = min/2 is positive and at most 1/2
    CHECK(r.r0.is_positive());
    CHECK(r.r0.to_double() <= 0.5);
    // the vertical-segment estimate dominates r0
    CHECK(r.vertical_ok);
    CHECK(r.vertical_bound.to_double() >= r.r0.to_double());
}

TEST_CASE("build and verify a small grid") {
    GridCertificate c = build_grid(2, kCtx, 2);
    for (int i = 0; i < 5; ++i) CHECK(c.cond_flags[i]);
    CHECK(c.simple_roots);

    // roots sit within 1/4 of distinct negative integers
    for (long l = 0; l <= 2; ++l) {
        std::vector<long> ints;
        for (long k = 0; k <= 2; ++k) {
            double re = mpfr_get_d(c.zs[l][k].mid_re().get(), MPFR_RNDN);
            double im = mpfr_get_d(c.zs[l][k].mid_im().get(), MPFR_RNDN);
            long n = std::lround(-re);
            CHECK(n >= 1);
            CHECK(std::hypot(re + n, im) < 0.25);
            ints.push_back(n);
        }
        std::sort(ints.begin(), ints.end());
        CHECK(std::unique(ints.begin(), ints.end()) == ints.end());
    }

    // condition 3 spot check: every |z - 1| >= 1 trivially (roots near <= -3)
    for (long l = 0; l <= 2; ++l)
        for (long k = 0; k <= 2; ++k) {
            ComplexBall d = c.zs[l][k] - ComplexBall::from_long(1, 256);
            CHECK(mpfr_cmp_ui(d.abs_lower().get(), 1) >= 0);
        }

    GridVerifyReport rep = verify_grid(c, kCtx, 2);
    CHECK(rep.pass);
    CHECK(rep.max_residual_log2 <= -128.0); // 2^(-bits/2) at 256 bits
}

TEST_CASE("verify passes for L = 5") {
    GridCertificate c = build_grid(5, kCtx, 2);
    GridVerifyReport rep = verify_grid(c, kCtx, 2);
    CHECK(rep.pass);
    // condition 5 with certified arithmetic: product >= 4!
    // (already in flags; sanity check the realized spacing constant)
    CHECK(c.cond2_threshold > 0);
    CHECK(c.c0_realized <= 3.0 + 4.0 / 5.0 + 0.1);
}

TEST_CASE("tampered certificates fail verification") {
    GridCertificate c = build_grid(2, kCtx, 2);

    SECTION("a root moved by 0.5 breaks residual or spacing") {
        GridCertificate bad = c;
        bad.zs[1][1] = bad.zs[1][1] + ComplexBall::from_doubles(0.5, 0.0, 256);
        GridVerifyReport rep = verify_grid(bad, kCtx, 2);
        CHECK_FALSE(rep.pass);
        CHECK((!rep.residuals_ok || !rep.conditions[4]));
    }

    SECTION("two equal w values break condition 2") {
        GridCertificate bad = c;
        bad.w[1] = bad.w[0];
        GridVerifyReport rep = verify_grid(bad, kCtx, 2);
        CHECK_FALSE(rep.conditions[1]);
        CHECK_FALSE(rep.pass);
    }
}

TEST_CASE("grid construction is deterministic bit for bit") {
    GridCertificate a = build_grid(2, kCtx, 1);
    GridCertificate b = build_grid(2, kCtx, 2); // thread count must not matter
    Json ja = grid_certificate_to_json(a);
    Json jb = grid_certificate_to_json(b);
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("grid certificate JSON round trip") {
    GridCertificate c = build_grid(2, kCtx, 2);
    Json j = grid_certificate_to_json(c);
    GridCertificate back = grid_certificate_from_json(j);
    CHECK(grid_certificate_to_json(back).dump() == j.dump());
    GridVerifyReport rep = verify_grid(back, kCtx, 2);
    CHECK(rep.pass);
}
