#include "bergman/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

#include "bergman/errors.hpp"

namespace bergman::report {

namespace {

using nlohmann::json;

json complex_pair(Complex c) { return json::array({c.real(), c.imag()}); }

json poly_json(const ComplexPoly& p) {
    json out = json::array();
    for (int i = 0; i <= p.degree(); ++i) out.push_back(complex_pair(p.coeff(i)));
    return out;
}

ComplexPoly poly_from_json(const json& arr) {
    std::vector<Complex> coeffs;
    for (const auto& pair : arr) coeffs.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    return ComplexPoly(std::move(coeffs));
}

json certificate_json(const spectral::EigenCertificate& cert) {
    json zeros = json::array();
    for (const spectral::CertifiedZero& z : cert.zeros)
        zeros.push_back({{"z", complex_pair(z.z)},
                         {"n", z.n},
                         {"zero_residual", z.zero_residual},
                         {"condition_residual", z.condition_residual}});
    return {{"lambda", complex_pair(cert.lambda)},
            {"branch", cert.branch == spectral::EigenBranch::NoZeros ? "NO_ZEROS" : "SIMPLE_ZEROS"},
            {"winding", cert.winding},
            {"zeros", zeros}};
}

json tolerances_json(const Config& config) {
    return {{"root_residual_tol", config.root_residual_tol},
            {"cluster_tol", config.cluster_tol},
            {"boundary_band", config.boundary_band},
            {"eigen_condition_tol", config.eigen_condition_tol},
            {"indeterminacy_band", config.indeterminacy_band},
            {"dedup_tol", config.dedup_tol},
            {"series_margin", config.series_margin},
            {"screen_margin", config.screen_margin},
            {"range_tol", config.range_tol},
            {"n_cap", config.n_cap},
            {"arg_samples", config.arg_samples}};
}

std::string csv_num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

SpectralReport analyze(const HarmonicSymbol& s, int n_max, const Config& config) {
    spectral::Analyzer analyzer(s, config);
    SpectralReport out;
    out.symbol = s;
    out.config = config;
    out.n_max = n_max;
    out.essential_samples = analyzer.curve_samples();

    spectral::LambdaSet ls = analyzer.enumerate_lambda(n_max);
    out.lambda_set = ls.lambdas;
    out.complete = ls.complete;
    out.completeness_reason = ls.completeness_note;

    out.weyl = analyzer.weyl_report(n_max);
    out.hardy_relation_note =
        "Bergman spectrum = Hardy spectrum of the boundary symbol union Lambda "
        "(finitely many isolated eigenvalues)";

    // coarse winding atlas over the inflated curve bounding box
    double re_min = 1e300, re_max = -1e300, im_min = 1e300, im_max = -1e300;
    for (const Complex& c : out.essential_samples) {
        re_min = std::min(re_min, c.real());
        re_max = std::max(re_max, c.real());
        im_min = std::min(im_min, c.imag());
        im_max = std::max(im_max, c.imag());
    }
    double dre = std::max(0.5, 0.25 * (re_max - re_min)), dim = std::max(0.5, 0.25 * (im_max - im_min));
    re_min -= dre / 2.0;
    re_max += dre / 2.0;
    im_min -= dim / 2.0;
    im_max += dim / 2.0;
    const int probes = 16;
    for (int i = 0; i < probes; ++i)
        for (int j = 0; j < probes; ++j) {
            AtlasEntry e;
            e.point = {re_min + (i + 0.5) * (re_max - re_min) / probes,
                       im_min + (j + 0.5) * (im_max - im_min) / probes};
            try {
                spectral::WindingResult w = analyzer.winding(e.point);
                e.winding = w.w;
                e.on_curve = w.on_curve;
            } catch (const Error&) {
                e.on_curve = true;  // ambiguous probe, recorded as on-curve
            }
            out.winding_atlas.push_back(e);
        }
    return out;
}

bool range_inclusion_check(const HarmonicSymbol& s, const SpectralReport& report, int grid,
                           const Config& config) {
    if (s.degree() > 2)
        throw UnsupportedDegree("range_inclusion_check: stated for degree <= 2 only");
    if (grid < 2) throw InvalidParams("range_inclusion_check: grid too small");

    // coarse polar mesh of 𝔻̄ (boundary ring included), then a shrinking
    // local search around the best preimage: the coarse mesh alone cannot
    // resolve range_tol when |φ'| stretches the grid
    std::vector<Complex> mesh;
    mesh.reserve(static_cast<std::size_t>(grid) * grid);
    for (int i = 0; i < grid; ++i) {
        double r = static_cast<double>(i) / (grid - 1);
        for (int j = 0; j < grid; ++j) mesh.push_back(std::polar(r, 2.0 * std::numbers::pi * j / grid));
    }

    auto distance_to_image = [&](Complex w) {
        Complex best_z = 0.0;
        double best = std::abs(s.eval(0.0) - w);
        for (const Complex& z : mesh) {
            double d = std::abs(s.eval(z) - w);
            if (d < best) {
                best = d;
                best_z = z;
            }
        }
        double step = 2.0 / (grid - 1);
        for (int it = 0; it < 48; ++it) {
            Complex improved = best_z;
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy) {
                    Complex z = best_z + Complex(dx * step, dy * step);
                    if (std::abs(z) > 1.0) z /= std::abs(z);  // clamp to the closed disk
                    double d = std::abs(s.eval(z) - w);
                    if (d < best) {
                        best = d;
                        improved = z;
                    }
                }
            best_z = improved;
            step *= 0.6;
        }
        return best;
    };

    auto covered = [&](Complex w) { return distance_to_image(w) <= config.range_tol; };

    for (std::size_t j = 0; j < report.essential_samples.size();
         j += std::max<std::size_t>(1, report.essential_samples.size() / 64))
        if (!covered(report.essential_samples[j])) return false;
    for (const spectral::EigenCertificate& cert : report.lambda_set)
        if (!covered(cert.lambda)) return false;
    for (const AtlasEntry& e : report.winding_atlas)
        if (!e.on_curve && e.winding != 0 && !covered(e.point)) return false;
    return true;
}

std::string to_json(const SpectralReport& report) {
    json doc;
    doc["schema"] = "bergman-spectra/v1";
    doc["kind"] = "spectral_report";
    doc["symbol"] = {{"p", poly_json(report.symbol.p)}, {"degree", report.symbol.degree()}};
    json samples = json::array();
    for (const Complex& c : report.essential_samples) samples.push_back(complex_pair(c));
    doc["essential_samples"] = samples;
    json lambdas = json::array();
    for (const spectral::EigenCertificate& cert : report.lambda_set)
        lambdas.push_back(certificate_json(cert));
    doc["lambda_set"] = lambdas;
    json atlas = json::array();
    for (const AtlasEntry& e : report.winding_atlas)
        atlas.push_back({{"point", complex_pair(e.point)}, {"winding", e.winding}, {"on_curve", e.on_curve}});
    doc["winding_atlas"] = atlas;
    json pi00 = json::array();
    for (const spectral::EigenCertificate& cert : report.weyl.pi00)
        pi00.push_back(complex_pair(cert.lambda));
    doc["weyl"] = {{"pi00", pi00},
                   {"weyl_theorem_holds", report.weyl.holds},
                   {"conditional_on_n_max", report.weyl.conditional_on_n_max},
                   {"omega_description", report.weyl.omega_description}};
    doc["hardy_relation_note"] = report.hardy_relation_note;
    doc["truncation"] = {{"n_max", report.n_max},
                         {"complete", report.complete},
                         {"reason", report.completeness_reason}};
    doc["tolerances"] = tolerances_json(report.config);
    return doc.dump();
}

std::string to_csv(const SpectralReport& report) {
    std::string out = "# essential_samples\ntheta,re,im\n";
    for (std::size_t j = 0; j < report.essential_samples.size(); ++j) {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                       static_cast<double>(report.essential_samples.size());
        out += csv_num(theta) + "," + csv_num(report.essential_samples[j].real()) + "," +
               csv_num(report.essential_samples[j].imag()) + "\n";
    }
    out += "# lambda_set\nre,im,branch,winding,num_zeros\n";
    for (const spectral::EigenCertificate& cert : report.lambda_set) {
        out += csv_num(cert.lambda.real()) + "," + csv_num(cert.lambda.imag()) + ",";
        out += cert.branch == spectral::EigenBranch::NoZeros ? "NO_ZEROS" : "SIMPLE_ZEROS";
        out += "," + std::to_string(cert.winding) + "," + std::to_string(cert.zeros.size()) + "\n";
    }
    return out;
}

std::string to_json(const constructions::ConstructionParams& params) {
    json doc;
    doc["schema"] = "bergman-spectra/v1";
    doc["kind"] = "construction";
    doc["k"] = params.k;
    doc["n"] = params.n;
    doc["beta"] = complex_pair(params.beta);
    doc["alpha"] = complex_pair(params.alpha);
    doc["p"] = poly_json(params.p);
    doc["z_inf"] = complex_pair(params.z_inf);
    doc["w_inf"] = complex_pair(params.w_inf);
    doc["lambda_inf"] = complex_pair(params.lambda_inf);
    doc["mu_inf"] = complex_pair(params.mu_inf);
    doc["c_k"] = params.c_k;
    doc["residuals"] = {{"constant_term", params.residuals.constant_term},
                        {"identity_coeffwise", params.residuals.identity_coeffwise},
                        {"alpha_condition", params.residuals.alpha_condition},
                        {"z_inf_condition", params.residuals.z_inf_condition},
                        {"w_inf_condition", params.residuals.w_inf_condition},
                        {"f_multiple_zero", params.residuals.f_multiple_zero}};
    return doc.dump();
}

constructions::ConstructionParams construction_from_json(const std::string& text) {
    json doc = json::parse(text);
    if (doc.value("kind", "") != "construction")
        throw InvalidParams("construction_from_json: not a construction document");
    constructions::ConstructionParams params;
    params.k = doc.at("k").get<int>();
    params.n = doc.at("n").get<int>();
    auto cx = [&](const char* key) {
        return Complex(doc.at(key).at(0).get<double>(), doc.at(key).at(1).get<double>());
    };
    params.beta = cx("beta");
    params.alpha = cx("alpha");
    params.p = poly_from_json(doc.at("p"));
    params.z_inf = cx("z_inf");
    params.w_inf = cx("w_inf");
    params.lambda_inf = cx("lambda_inf");
    params.mu_inf = cx("mu_inf");
    params.c_k = doc.at("c_k").get<double>();
    return params;
}

std::string to_json(const spectral::Classification& cls, Complex lambda) {
    json doc;
    doc["schema"] = "bergman-spectra/v1";
    doc["kind"] = "classification";
    doc["lambda"] = complex_pair(lambda);
    doc["class"] = spectral::to_string(cls.kind);
    doc["winding"] = cls.winding;
    if (!cls.detail.empty()) doc["detail"] = cls.detail;
    if (cls.certificate) doc["certificate"] = certificate_json(*cls.certificate);
    return doc.dump();
}

std::string to_json(const spectral::InvertibilityWitness& witness) {
    json doc;
    doc["schema"] = "bergman-spectra/v1";
    doc["kind"] = "invertibility";
    doc["invertible"] = witness.verdict;
    doc["witness"] = witness.clause;
    if (witness.zero) doc["zero"] = complex_pair(*witness.zero);
    if (witness.condition_value) doc["condition_value"] = complex_pair(*witness.condition_value);
    if (witness.matched_n) doc["matched_n"] = *witness.matched_n;
    return doc.dump();
}

std::string to_json(const spectral::WeylReport& weyl, bool) {
    json doc;
    doc["schema"] = "bergman-spectra/v1";
    doc["kind"] = "weyl_report";
    json pi00 = json::array();
    for (const spectral::EigenCertificate& cert : weyl.pi00) pi00.push_back(certificate_json(cert));
    doc["pi00"] = pi00;
    doc["holds"] = weyl.holds;
    doc["conditional_on_n_max"] = weyl.conditional_on_n_max;
    doc["omega_description"] = weyl.omega_description;
    return doc.dump();
}

std::string to_json(const spectral::HyponormalScreen& screen) {
    json doc;
    doc["schema"] = "bergman-spectra/v1";
    doc["kind"] = "hyponormal_screen";
    doc["verdict"] = screen.verdict == spectral::HyponormalVerdict::NotHyponormal
                         ? "NOT_HYPONORMAL"
                         : "INCONCLUSIVE";
    doc["min_modulus"] = screen.min_modulus;
    return doc.dump();
}

}  // namespace bergman::report
