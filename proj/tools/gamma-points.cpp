// gamma-points: certified Gamma-function experiments from the command line.
// One subcommand per verification family; all outputs are JSON reports with
// an embedded manifest (plus CSV / plot tables where defined).
//
// Exit codes: 0 = all checks passed, 1 = usage error, 2 = a certified
// invariant or verdict failed.

#include <cstdlib>
#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gp/census.hpp"
#include "gp/contour.hpp"
#include "gp/curve_degree.hpp"
#include "gp/gamma.hpp"
#include "gp/grid.hpp"
#include "gp/reports.hpp"
#include "gp/zero_lemma.hpp"

namespace {

using namespace gp;

struct CommonOpts {
    long bits = 256;
    long max_bits = 4096;
    int threads = 0;
    uint64_t seed = 0;
    std::string out;
};

PrecisionContext make_ctx(const CommonOpts& c) {
    long cap = c.max_bits;
    if (const char* env = std::getenv("GAMMA_POINTS_MAX_BITS")) {
        long v = std::atol(env);
        if (v >= c.bits) cap = v;
    }
    return PrecisionContext(c.bits, cap, 2);
}

ComplexBall parse_complex(const std::string& s, Prec prec) {
    auto comma = s.find(',');
    Mpfr re(prec), im(prec);
    std::string rs = comma == std::string::npos ? s : s.substr(0, comma);
    if (mpfr_set_str(re.get(), rs.c_str(), 10, MPFR_RNDN) != 0 && !mpfr_number_p(re.get()))
        throw DomainError("cannot parse number '" + rs + "'");
    if (comma != std::string::npos) {
        std::string is = s.substr(comma + 1);
        if (mpfr_set_str(im.get(), is.c_str(), 10, MPFR_RNDN) != 0 && !mpfr_number_p(im.get()))
            throw DomainError("cannot parse number '" + is + "'");
    }
    return ComplexBall::from_point(re.get(), im.get(), prec);
}

RealBall parse_real_ball(const std::string& s, Prec prec) {
    Mpfr v(prec);
    if (mpfr_set_str(v.get(), s.c_str(), 10, MPFR_RNDN) != 0 && !mpfr_number_p(v.get()))
        throw DomainError("cannot parse number '" + s + "'");
    return RealBall::from_mpfr(v.get(), prec);
}

BivarPolynomial load_polynomial(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open polynomial file: " + path);
    Json j = Json::parse(f);
    return polynomial_from_json(j);
}

void write_report(const CommonOpts& opts, RunManifest& manifest, const Json& body) {
    manifest.finished = iso_timestamp_now();
    Json doc = make_report(manifest, body);
    std::string text = doc.dump(2);
    text += "\n";
    if (opts.out.empty())
        std::cout << text;
    else
        write_text_file(opts.out, text);
}

void add_param(RunManifest& m, const std::string& k, const std::string& v) {
    m.parameters.emplace_back(k, v);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified Gamma-function experiments (1/Gamma evaluation, argument-principle "
                 "counting, interpolation grids, zero-lemma checks, rational-point census, "
                 "curve degrees)"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    CommonOpts opts;
    app.add_option("--bits", opts.bits, "working precision in bits")->capture_default_str();
    app.add_option("--max-bits", opts.max_bits, "escalation cap in bits")->capture_default_str();
    app.add_option("--threads", opts.threads, "parallelism degree (0 = machine cores)")
        ->capture_default_str();
    app.add_option("--seed", opts.seed, "random seed where applicable")->capture_default_str();
    app.add_option("--out", opts.out, "output JSON file (default stdout)");

    // eval
    std::string eval_z = "1";
    std::string eval_target = "gamma";
    auto* eval = app.add_subcommand("eval", "evaluate Gamma or 1/Gamma on a certified ball");
    eval->add_option("--z", eval_z, "point, 're' or 're,im'")->required();
    eval->add_option("--target", eval_target, "gamma | rgamma")->capture_default_str();

    // count-rect
    std::string rect_w = "0";
    double rect_X = 10.5, rect_Y = 1.0;
    std::string rect_sweep, rect_plot;
    auto* crect = app.add_subcommand("count-rect", "count solutions of G(z) = w in Z(X, Y)");
    crect->add_option("--w", rect_w, "target value, 're' or 're,im'")->capture_default_str();
    crect->add_option("--X", rect_X, "rectangle extent (-X <= Re z <= 1)")->capture_default_str();
    crect->add_option("--Y", rect_Y, "vertical half-height")->capture_default_str();
    crect->add_option("--sweep", rect_sweep, "comma-separated list of X values");
    crect->add_option("--plot", rect_plot, "write (X, count, X-count) table here");

    // count-disk
    std::string disk_poly;
    double disk_R = 5.5;
    auto* cdisk = app.add_subcommand("count-disk", "count zeros of P(z, G(z)) in |z| <= R");
    cdisk->add_option("--poly", disk_poly, "polynomial JSON file")->required();
    cdisk->add_option("--R", disk_R, "disk radius")->capture_default_str();

    // grid
    long grid_L = 2;
    auto* grid = app.add_subcommand("grid", "build and verify an interpolation-grid certificate");
    grid->add_option("--L", grid_L, "grid parameter L >= 2")->required();

    // zerolemma
    std::string zl_poly, zl_suite, zl_plot;
    double zl_R = 10.5, zl_c = 2.0, zl_Rmax = 20.0;
    int zl_count = 100;
    long zl_Lmax = 5;
    auto* zl = app.add_subcommand("zerolemma", "verify the zero lemma for one P or a random suite");
    zl->add_option("--poly", zl_poly, "polynomial JSON file");
    zl->add_option("--R", zl_R, "disk radius")->capture_default_str();
    zl->add_option("--c", zl_c, "bound constant")->capture_default_str();
    zl->add_option("--suite", zl_suite, "'random' for the seeded suite");
    zl->add_option("--count", zl_count, "suite size")->capture_default_str();
    zl->add_option("--Lmax", zl_Lmax, "suite max L")->capture_default_str();
    zl->add_option("--Rmax", zl_Rmax, "suite max R")->capture_default_str();
    zl->add_option("--plot", zl_plot, "write (L(L+R)log(L+R), count) table here");

    // extremal
    long ext_L = 2;
    auto* ext = app.add_subcommand("extremal", "construct the maximal-vanishing polynomial");
    ext->add_option("--L", ext_L, "bidegree")->required();

    // census
    long cen_n = 2, cen_D = 50;
    double cen_c = 1.0;
    std::string cen_csv, cen_plot;
    bool cen_records = false;
    auto* cen = app.add_subcommand("census", "rational-point census N(D, n) on [n-1, n]");
    cen->add_option("--n", cen_n, "interval right endpoint (n >= 2)")->required();
    cen->add_option("--D", cen_D, "denominator bound (D >= 3)")->required();
    cen->add_option("--c", cen_c, "bound constant")->capture_default_str();
    cen->add_option("--csv", cen_csv, "write the per-point CSV here");
    cen->add_option("--plot", cen_plot, "write the (p/q, log2 gap) scatter here");
    cen->add_flag("--records", cen_records, "embed every record in the JSON body");

    // omega
    std::string om_points;
    long om_fit = -1;
    auto* om = app.add_subcommand("omega", "minimal curve degree through a rational point set");
    om->add_option("--points", om_points, "CSV file x_num,x_den,y_num,y_den")->required();
    om->add_option("--fit", om_fit, "also fit a curve of this total degree");

    // bp-check
    long bp_d = 1, bp_T = 8;
    std::string bp_A = "1", bp_Z = "1", bp_M = "0", bp_H = "1";
    auto* bpc = app.add_subcommand("bp-check", "check the Proposition-2 inequality");
    bpc->add_option("--d", bp_d)->required();
    bpc->add_option("--T", bp_T)->required();
    bpc->add_option("--A", bp_A)->required();
    bpc->add_option("--Z", bp_Z)->required();
    bpc->add_option("--M", bp_M)->required();
    bpc->add_option("--H", bp_H)->required();

    // bp-select
    long sel_n = 2, sel_d = 1;
    double sel_H = 1000.0, sel_lambda = 128.0, sel_c = 1.0;
    auto* bps = app.add_subcommand("bp-select", "main-theorem parameter selection");
    bps->add_option("--n", sel_n)->required();
    bps->add_option("--d", sel_d)->required();
    bps->add_option("--H", sel_H)->required();
    bps->add_option("--lambda", sel_lambda)->capture_default_str();
    bps->add_option("--c", sel_c)->capture_default_str();

    // growth
    double gr_R = 10.0, gr_c = 3.0;
    int gr_samples = 256;
    auto* gr = app.add_subcommand("growth", "radial growth check of |1/Gamma| on |z| = R");
    gr->add_option("--R", gr_R)->required();
    gr->add_option("--samples", gr_samples)->capture_default_str();
    gr->add_option("--c", gr_c)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    RunManifest manifest;
    manifest.started = iso_timestamp_now();
    manifest.seed = opts.seed;
    manifest.bits = opts.bits;
    manifest.max_bits = opts.max_bits;
    add_param(manifest, "threads", std::to_string(opts.threads));

    try {
        PrecisionContext ctx = make_ctx(opts);
        manifest.max_bits = ctx.max_bits;
        int rc = 0;
        Json body;

        if (eval->parsed()) {
            manifest.subcommand = "eval";
            add_param(manifest, "z", eval_z);
            add_param(manifest, "target", eval_target);
            ComplexBall z = parse_complex(eval_z, ctx.bits);
            body["kind"] = "eval";
            body["z"] = ball_to_json(z);
            body["target"] = eval_target;
            if (eval_target == "gamma") {
                GammaEval g = gamma(z, ctx);
                body["value"] = ball_to_json(g.value);
                body["method"] = to_string(g.method);
            } else if (eval_target == "rgamma") {
                GammaEval g = reciprocal_gamma(z, ctx);
                body["value"] = ball_to_json(g.value);
                body["method"] = to_string(g.method);
            } else {
                throw CLI::ValidationError("--target must be gamma or rgamma");
            }
        } else if (crect->parsed()) {
            manifest.subcommand = "count-rect";
            add_param(manifest, "w", rect_w);
            add_param(manifest, "Y", std::to_string(rect_Y));
            ComplexBall w = parse_complex(rect_w, ctx.bits);
            if (!rect_sweep.empty()) {
                add_param(manifest, "sweep", rect_sweep);
                body["kind"] = "count_sweep";
                Json rows = Json::array();
                std::stringstream ss(rect_sweep);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    double X = std::stod(tok);
                    ContourCount c = count_solutions_rectangle(w, {X, rect_Y}, ctx, opts.threads);
                    Json row = contour_count_to_json(c);
                    row["X"] = X;
                    rows.push_back(row);
                }
                body["rows"] = rows;
            } else {
                add_param(manifest, "X", std::to_string(rect_X));
                body["kind"] = "count_rect";
                ContourCount c = count_solutions_rectangle(w, {rect_X, rect_Y}, ctx, opts.threads);
                body.update(contour_count_to_json(c));
                body["X"] = rect_X;
            }
            if (!rect_plot.empty()) {
                std::ostringstream os;
                emit_plot_data(body, PlotKind::count_vs_X, os);
                write_text_file(rect_plot, os.str());
            }
        } else if (cdisk->parsed()) {
            manifest.subcommand = "count-disk";
            add_param(manifest, "poly", disk_poly);
            add_param(manifest, "R", std::to_string(disk_R));
            BivarPolynomial P = load_polynomial(disk_poly);
            BallFunction f = [&P](const ComplexBall& z) {
                return P.evaluate(z, reciprocal_gamma_prec(z, z.prec()));
            };
            double used_R = disk_R;
            ContourCount c = count_zeros_disk_nudged(f, disk_R, ctx, opts.threads, &used_R);
            body = contour_count_to_json(c);
            body["kind"] = "count_disk";
            body["R"] = disk_R;
            body["used_R"] = used_R;
        } else if (grid->parsed()) {
            manifest.subcommand = "grid";
            add_param(manifest, "L", std::to_string(grid_L));
            GridCertificate cert = build_grid(grid_L, ctx, opts.threads);
            GridVerifyReport rep = verify_grid(cert, ctx, opts.threads);
            body = Json{{"kind", "grid"},
                        {"certificate", grid_certificate_to_json(cert)},
                        {"verify",
                         Json{{"conditions", std::vector<bool>(rep.conditions.begin(),
                                                               rep.conditions.end())},
                              {"residuals_ok", rep.residuals_ok},
                              {"simple_ok", rep.simple_ok},
                              {"max_residual_log2", rep.max_residual_log2},
                              {"pass", rep.pass}}}};
            if (!rep.pass) rc = 2;
        } else if (zl->parsed()) {
            manifest.subcommand = "zerolemma";
            add_param(manifest, "c", std::to_string(zl_c));
            if (zl_suite == "random") {
                add_param(manifest, "suite", zl_suite);
                add_param(manifest, "count", std::to_string(zl_count));
                add_param(manifest, "Lmax", std::to_string(zl_Lmax));
                add_param(manifest, "Rmax", std::to_string(zl_Rmax));
                ZeroLemmaSuiteReport rep =
                    zero_lemma_suite(zl_count, opts.seed, zl_c, zl_Lmax, zl_Rmax, ctx, opts.threads);
                body = zero_lemma_suite_to_json(rep);
                if (!rep.all_pass) rc = 2;
            } else if (!zl_poly.empty()) {
                add_param(manifest, "poly", zl_poly);
                add_param(manifest, "R", std::to_string(zl_R));
                ZeroLemmaReport rep =
                    verify_zero_lemma(load_polynomial(zl_poly), zl_R, zl_c, ctx, opts.threads);
                body = zero_lemma_report_to_json(rep);
                if (!rep.pass) rc = 2;
            } else {
                throw CLI::ValidationError("zerolemma needs --poly or --suite random");
            }
            if (!zl_plot.empty()) {
                std::ostringstream os;
                emit_plot_data(body, PlotKind::bound_vs_count, os);
                write_text_file(zl_plot, os.str());
            }
        } else if (ext->parsed()) {
            manifest.subcommand = "extremal";
            add_param(manifest, "L", std::to_string(ext_L));
            BivarPolynomial P = extremal_polynomial(ext_L, ctx);
            VanishingOrderResult vo = vanishing_order(P, ctx);
            long required = ext_L * ext_L + 2 * ext_L;
            body = Json{{"kind", "extremal"},
                        {"L", ext_L},
                        {"vanishing_order", vo.order},
                        {"capped", vo.capped},
                        {"required", required},
                        {"pass", vo.order >= required},
                        {"polynomial", polynomial_to_json(P)}};
            if (vo.order < required) rc = 2;
        } else if (cen->parsed()) {
            manifest.subcommand = "census";
            add_param(manifest, "n", std::to_string(cen_n));
            add_param(manifest, "D", std::to_string(cen_D));
            add_param(manifest, "c", std::to_string(cen_c));
            CensusReport rep = run_census(cen_n, cen_D, cen_c, ctx, opts.threads);
            body = census_report_to_json(rep, cen_records);
            if (!rep.undecided.empty() || !rep.bounds_ok) rc = 2;
            if (!cen_csv.empty()) {
                std::ostringstream os;
                census_to_csv(rep, os);
                write_text_file(cen_csv, os.str());
            }
            if (!cen_plot.empty()) {
                Json full = census_report_to_json(rep, true);
                std::ostringstream os;
                emit_plot_data(full, PlotKind::census_scatter, os);
                write_text_file(cen_plot, os.str());
            }
        } else if (om->parsed()) {
            manifest.subcommand = "omega";
            add_param(manifest, "points", om_points);
            std::ifstream f(om_points);
            if (!f) throw Error("cannot open points file: " + om_points);
            PointSet s = point_set_from_csv(f);
            long w = omega(s);
            body = Json{{"kind", "omega"},
                        {"points", s.size()},
                        {"omega", w},
                        {"dimension_bound", omega_dimension_bound(s.size())}};
            if (om_fit >= 0) {
                add_param(manifest, "fit", std::to_string(om_fit));
                auto p = fit_curve(s, om_fit);
                body["fit_degree"] = om_fit;
                body["fit"] = p ? polynomial_to_json(*p) : Json(nullptr);
            }
        } else if (bpc->parsed()) {
            manifest.subcommand = "bp-check";
            add_param(manifest, "d", std::to_string(bp_d));
            add_param(manifest, "T", std::to_string(bp_T));
            add_param(manifest, "A", bp_A);
            add_param(manifest, "Z", bp_Z);
            add_param(manifest, "M", bp_M);
            add_param(manifest, "H", bp_H);
            Prec p = 256;
            BPParameters params =
                make_bp_parameters(bp_d, bp_T, parse_real_ball(bp_A, p), parse_real_ball(bp_Z, p),
                                   parse_real_ball(bp_M, p), parse_real_ball(bp_H, p));
            BPConditionResult res = bp_condition(params);
            body = Json{{"kind", "bp_check"},
                        {"holds", res.holds},
                        {"lhs_log", res.lhs_log},
                        {"rhs_log", res.rhs_log}};
        } else if (bps->parsed()) {
            manifest.subcommand = "bp-select";
            add_param(manifest, "n", std::to_string(sel_n));
            add_param(manifest, "d", std::to_string(sel_d));
            add_param(manifest, "H", std::to_string(sel_H));
            add_param(manifest, "lambda", std::to_string(sel_lambda));
            add_param(manifest, "c", std::to_string(sel_c));
            SelectedParameters sel = select_parameters(sel_n, sel_d, sel_H, sel_lambda, sel_c);
            BPConditionResult res = bp_condition(sel.params);
            body = Json{{"kind", "bp_select"},
                        {"Z", sel.Z_value},
                        {"T", sel.params.T},
                        {"A", 1},
                        {"M_log", log(sel.params.M).to_double()},
                        {"lambda_used", sel.lambda_used},
                        {"choix_holds", sel.choix_holds},
                        {"condition_holds", res.holds},
                        {"lhs_log", res.lhs_log},
                        {"rhs_log", res.rhs_log}};
            if (!res.holds) rc = 2;
        } else if (gr->parsed()) {
            manifest.subcommand = "growth";
            add_param(manifest, "R", std::to_string(gr_R));
            add_param(manifest, "samples", std::to_string(gr_samples));
            add_param(manifest, "c", std::to_string(gr_c));
            RadialGrowthReport rep = radial_growth_check(gr_R, gr_samples, ctx, gr_c);
            body = Json{{"kind", "growth"},
                        {"R", gr_R},
                        {"samples", gr_samples},
                        {"c", gr_c},
                        {"max_log_modulus", rep.max_log_modulus},
                        {"bound_log", rep.bound_log},
                        {"tightest_c", rep.tightest_c},
                        {"pass", rep.pass}};
            if (!rep.pass) rc = 2;
        }

        write_report(opts, manifest, body);
        return rc;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
