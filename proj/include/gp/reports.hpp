#pragma once

#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gp/census.hpp"
#include "gp/complex_ball.hpp"
#include "gp/contour.hpp"
#include "gp/curve_degree.hpp"
#include "gp/grid.hpp"
#include "gp/version.hpp"
#include "gp/zero_lemma.hpp"

namespace gp {

using Json = nlohmann::ordered_json;

/// Provenance block embedded in every output file. The hashed body never
/// contains timestamps, so identical manifests give byte-identical bodies.
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> parameters;
    uint64_t seed = 0;
    long bits = 256;
    long max_bits = 4096;
    std::string started;
    std::string finished;
};

inline std::string iso_timestamp_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

/// FNV-1a 64-bit of the serialized body, hex encoded.
inline std::string body_hash(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

inline Json make_report(const RunManifest& m, const Json& body) {
    Json manifest;
    manifest["subcommand"] = m.subcommand;
    Json params = Json::object();
    for (const auto& [k, v] : m.parameters) params[k] = v;
    manifest["parameters"] = params;
    manifest["seed"] = m.seed;
    manifest["precision"] = Json{{"bits", m.bits}, {"max_bits", m.max_bits}};
    manifest["version"] = kVersion;
    manifest["started"] = m.started;
    manifest["finished"] = m.finished.empty() ? iso_timestamp_now() : m.finished;
    manifest["body_hash"] = body_hash(body.dump());
    return Json{{"manifest", manifest}, {"body", body}};
}

// -- ball (de)serialization: exact hex round trip ----------------------------

inline Json ball_to_json(const ComplexBall& b) {
    return Json{{"prec", static_cast<long>(b.prec())},
                {"re", Mpfr(b.mid_re()).to_hex_string()},
                {"im", Mpfr(b.mid_im()).to_hex_string()},
                {"rad", Mpfr(b.rad()).to_hex_string()}};
}

inline Json ball_to_json(const RealBall& b) {
    return Json{{"prec", static_cast<long>(b.prec())},
                {"mid", Mpfr(b.mid()).to_hex_string()},
                {"rad", Mpfr(b.rad()).to_hex_string()}};
}

inline void mpfr_from_hex(Mpfr& out, const std::string& s) {
    if (mpfr_set_str(out.get(), s.c_str(), 0, MPFR_RNDN) != 0 && !mpfr_number_p(out.get()))
        throw DomainError("cannot parse mpfr hex literal '" + s + "'");
}

inline ComplexBall complex_ball_from_json(const Json& j) {
    Prec p = j.at("prec").get<long>();
    ComplexBall b(p);
    Mpfr re(p), im(p), rad(RealBall::kRadPrec);
    mpfr_from_hex(re, j.at("re").get<std::string>());
    mpfr_from_hex(im, j.at("im").get<std::string>());
    mpfr_from_hex(rad, j.at("rad").get<std::string>());
    b = ComplexBall::from_point(re.get(), im.get(), p);
    return b.widened(rad);
}

// -- grid certificates --------------------------------------------------------

inline Json grid_certificate_to_json(const GridCertificate& c) {
    Json j;
    j["kind"] = "grid_certificate";
    j["L"] = c.L;
    j["bits"] = c.bits;
    j["r0"] = ball_to_json(c.r0);
    j["cond2_threshold"] = c.cond2_threshold;
    j["c0_realized"] = c.c0_realized;
    j["simple_roots"] = c.simple_roots;
    Json ws = Json::array();
    for (const auto& w : c.w) ws.push_back(ball_to_json(w));
    j["w"] = ws;
    Json zs = Json::array();
    for (const auto& row : c.zs) {
        Json r = Json::array();
        for (const auto& z : row) r.push_back(ball_to_json(z));
        zs.push_back(r);
    }
    j["z"] = zs;
    j["cond_flags"] = std::vector<bool>(c.cond_flags.begin(), c.cond_flags.end());
    j["residual_log2"] = c.residual_log2;
    return j;
}

inline GridCertificate grid_certificate_from_json(const Json& j) {
    GridCertificate c;
    c.L = j.at("L").get<long>();
    c.bits = j.at("bits").get<long>();
    {
        Json r0 = j.at("r0");
        Prec p = r0.at("prec").get<long>();
        Mpfr mid(p), rad(RealBall::kRadPrec);
        mpfr_from_hex(mid, r0.at("mid").get<std::string>());
        mpfr_from_hex(rad, r0.at("rad").get<std::string>());
        c.r0 = RealBall::from_mpfr(mid.get(), p).widened(rad);
    }
    c.cond2_threshold = j.value("cond2_threshold", 0.0);
    c.c0_realized = j.value("c0_realized", 0.0);
    c.simple_roots = j.value("simple_roots", true);
    for (const auto& w : j.at("w")) c.w.push_back(complex_ball_from_json(w));
    for (const auto& row : j.at("z")) {
        std::vector<ComplexBall> r;
        for (const auto& z : row) r.push_back(complex_ball_from_json(z));
        c.zs.push_back(std::move(r));
    }
    auto flags = j.at("cond_flags").get<std::vector<bool>>();
    for (size_t i = 0; i < 5 && i < flags.size(); ++i) c.cond_flags[i] = flags[i];
    c.residual_log2 = j.at("residual_log2").get<std::vector<std::vector<double>>>();
    return c;
}

// -- polynomial files ---------------------------------------------------------

/// Exact-rational polynomial file: {"L": n, "coeffs": row-major "p/q" strings}.
inline Json polynomial_to_json(const BivarPolynomial& p) {
    if (!p.exact) {
        Json j;
        j["kind"] = "polynomial_ball";
        j["L"] = p.L;
        Json rows = Json::array();
        for (const auto& row : p.coeffs_ball) {
            Json r = Json::array();
            for (const auto& c : row) r.push_back(ball_to_json(c));
            rows.push_back(r);
        }
        j["coeffs_ball"] = rows;
        return j;
    }
    Json j;
    j["kind"] = "polynomial";
    j["L"] = p.L;
    Json rows = Json::array();
    for (const auto& row : p.coeffs) {
        Json r = Json::array();
        for (const auto& c : row) {
            if (c.im == 0)
                r.push_back(rational_to_string(c.re));
            else
                r.push_back(rational_to_string(c.re) + "," + rational_to_string(c.im));
        }
        rows.push_back(r);
    }
    j["coeffs"] = rows;
    return j;
}

inline BivarPolynomial polynomial_from_json(const Json& j) {
    long L = j.at("L").get<long>();
    if (j.contains("coeffs_ball")) {
        BivarPolynomial p = BivarPolynomial::zero(L, false, 64);
        const auto& rows = j.at("coeffs_ball");
        for (long a = 0; a <= L; ++a)
            for (long b = 0; b <= L; ++b)
                p.coeffs_ball[a][b] = complex_ball_from_json(rows.at(a).at(b));
        return p;
    }
    BivarPolynomial p = BivarPolynomial::zero(L);
    const auto& rows = j.at("coeffs");
    if (rows.size() != static_cast<size_t>(L + 1))
        throw DomainError("polynomial_from_json: coeffs must have L+1 rows");
    for (long a = 0; a <= L; ++a) {
        const auto& row = rows.at(a);
        if (row.size() != static_cast<size_t>(L + 1))
            throw DomainError("polynomial_from_json: row length must be L+1");
        for (long b = 0; b <= L; ++b) {
            std::string s = row.at(b).get<std::string>();
            auto comma = s.find(',');
            if (comma == std::string::npos) {
                p.coeffs[a][b].re = parse_rational(s);
            } else {
                p.coeffs[a][b].re = parse_rational(s.substr(0, comma));
                p.coeffs[a][b].im = parse_rational(s.substr(comma + 1));
            }
        }
    }
    return p;
}

// -- census -------------------------------------------------------------------

inline Json census_record_to_json(const CensusRecord& r) {
    Json j;
    j["p"] = r.point.get_num().get_str();
    j["q"] = r.point.get_den().get_str();
    j["target"] = to_string(r.target);
    j["verdict"] = to_string(r.verdict);
    j["nearest_p"] = r.nearest.get_num().get_str();
    j["nearest_q"] = r.nearest.get_den().get_str();
    j["gap_lower_log2"] = r.gap_lower_log2;
    j["bits_used"] = r.bits_used;
    if (r.numerical_candidate) j["numerical_candidate"] = true;
    return j;
}

inline Json census_report_to_json(const CensusReport& rep, bool include_records = false) {
    Json j;
    j["kind"] = "census";
    j["n"] = rep.n;
    j["D"] = rep.D;
    j["c"] = rep.c;
    j["N"] = rep.N;
    j["N_prime"] = rep.N_prime;
    j["points"] = rep.records.size() / 2;
    j["undecided_count"] = rep.undecided.size();
    Json und = Json::array();
    for (size_t i : rep.undecided) und.push_back(census_record_to_json(rep.records[i]));
    j["undecided"] = und;
    j["numerical_candidates"] = rep.numerical_candidates;
    j["bound_N"] = rep.bound_N;
    j["bound_N_prime"] = rep.bound_N_prime;
    j["height_H_gamma"] = rep.height_H_gamma.get_str();
    j["height_H_reciprocal"] = rep.height_H_reciprocal.get_str();
    j["bounds_ok"] = rep.bounds_ok;
    Json hits = Json::array();
    for (const auto& r : rep.records)
        if (r.verdict == CensusVerdict::RationalHit) hits.push_back(census_record_to_json(r));
    j["hits"] = hits;
    if (include_records) {
        Json recs = Json::array();
        for (const auto& r : rep.records) recs.push_back(census_record_to_json(r));
        j["records"] = recs;
    }
    return j;
}

/// CSV columns exactly: p, q, target, verdict, nearest_p, nearest_q,
/// gap_lower_log2, bits_used.
inline void census_to_csv(const CensusReport& rep, std::ostream& os) {
    os << "p,q,target,verdict,nearest_p,nearest_q,gap_lower_log2,bits_used\n";
    char buf[64];
    for (const auto& r : rep.records) {
        std::snprintf(buf, sizeof buf, "%.6f", r.gap_lower_log2);
        os << r.point.get_num().get_str() << ',' << r.point.get_den().get_str() << ','
           << to_string(r.target) << ',' << to_string(r.verdict) << ','
           << r.nearest.get_num().get_str() << ',' << r.nearest.get_den().get_str() << ',' << buf
           << ',' << r.bits_used << '\n';
    }
}

// -- zero lemma ---------------------------------------------------------------

inline Json zero_lemma_report_to_json(const ZeroLemmaReport& r) {
    return Json{{"kind", "zerolemma"},
                {"L", r.L},
                {"R", r.R},
                {"used_R", r.used_R},
                {"count", r.count},
                {"bound", r.bound},
                {"calibrated_c", r.calibrated_c},
                {"ratio_no_log", r.ratio_no_log},
                {"pass", r.pass}};
}

inline Json zero_lemma_suite_to_json(const ZeroLemmaSuiteReport& s) {
    Json j;
    j["kind"] = "zerolemma_suite";
    j["seed"] = s.seed;
    j["all_pass"] = s.all_pass;
    j["max_calibrated_c"] = s.max_calibrated_c;
    j["max_ratio_no_log"] = s.max_ratio_no_log;
    Json runs = Json::array();
    for (const auto& r : s.runs) runs.push_back(zero_lemma_report_to_json(r));
    j["runs"] = runs;
    return j;
}

// -- contour ------------------------------------------------------------------

inline Json contour_count_to_json(const ContourCount& c) {
    return Json{{"count", c.count},
                {"contour_cells", c.contour_cells},
                {"min_boundary_modulus", ball_to_json(c.min_boundary_modulus)}};
}

// -- plot emission ------------------------------------------------------------

enum class PlotKind { census_scatter, count_vs_X, bound_vs_count };

/// Whitespace-separated numeric tables for offline plotting; the header
/// comment line documents the columns.
inline void emit_plot_data(const Json& body, PlotKind kind, std::ostream& os) {
    const std::string k = body.value("kind", "");
    char buf[128];
    switch (kind) {
        case PlotKind::census_scatter: {
            if (k != "census" || !body.contains("records"))
                throw KindMismatch("census_scatter needs a census report with records");
            os << "# x=p/q  log2_gap_lower  target(0=gamma,1=reciprocal)\n";
            for (const auto& r : body.at("records")) {
                if (r.at("verdict").get<std::string>() != "CertifiedMiss") continue;
                double x = std::stod(r.at("p").get<std::string>()) /
                           std::stod(r.at("q").get<std::string>());
                int t = r.at("target").get<std::string>() == "gamma" ? 0 : 1;
                std::snprintf(buf, sizeof buf, "%.12f %.6f %d\n", x,
                              r.at("gap_lower_log2").get<double>(), t);
                os << buf;
            }
            return;
        }
        case PlotKind::count_vs_X: {
            if (k != "count_sweep")
                throw KindMismatch("count_vs_X needs a count_sweep report");
            os << "# X  count  X-count\n";
            for (const auto& r : body.at("rows")) {
                double X = r.at("X").get<double>();
                long c = r.at("count").get<long>();
                std::snprintf(buf, sizeof buf, "%.6f %ld %.6f\n", X, c, X - c);
                os << buf;
            }
            return;
        }
        case PlotKind::bound_vs_count: {
            if (k != "zerolemma_suite")
                throw KindMismatch("bound_vs_count needs a zerolemma_suite report");
            os << "# L(L+R)log(L+R)  count\n";
            for (const auto& r : body.at("runs")) {
                double L = r.at("L").get<double>(), R = r.at("R").get<double>();
                double s = L * (L + R) * std::log(L + R);
                std::snprintf(buf, sizeof buf, "%.6f %ld\n", s, r.at("count").get<long>());
                os << buf;
            }
            return;
        }
    }
    throw KindMismatch("unknown plot kind");
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + path);
    f << content;
}

// -- point sets ----------------------------------------------------------------

/// CSV columns x_num, x_den, y_num, y_den; a leading header line is allowed.
inline PointSet point_set_from_csv(std::istream& is) {
    PointSet s;
    s.exact = true;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        size_t pos = 0;
        while (true) {
            size_t c = line.find(',', pos);
            cols.push_back(line.substr(pos, c == std::string::npos ? c : c - pos));
            if (c == std::string::npos) break;
            pos = c + 1;
        }
        if (first && cols.size() >= 4 && cols[0].find_first_not_of("-0123456789 \t") != std::string::npos) {
            first = false;
            continue; // header
        }
        first = false;
        if (cols.size() < 4) throw DomainError("point CSV: need 4 columns x_num,x_den,y_num,y_den");
        BigRational x(parse_rational(cols[0] + "/" + cols[1]));
        BigRational y(parse_rational(cols[2] + "/" + cols[3]));
        s.exact_points.emplace_back(x, y);
    }
    return s;
}

inline void point_set_to_csv(const PointSet& s, std::ostream& os) {
    os << "x_num,x_den,y_num,y_den\n";
    for (const auto& [x, y] : s.exact_points)
        os << x.get_num().get_str() << ',' << x.get_den().get_str() << ','
           << y.get_num().get_str() << ',' << y.get_den().get_str() << '\n';
}

} // namespace gp
