#include "bergman/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/constructions.hpp"
#include "bergman/det_rng.hpp"
#include "bergman/errors.hpp"
#include "bergman/finite_section.hpp"
#include "bergman/raster.hpp"
#include "bergman/report.hpp"
#include "bergman/spectral.hpp"

namespace bergman::selftest {

namespace {

using constructions::ConstructionParams;

Complex random_modulus_bounded(DetRng& rng, double bound) {
    double r = bound * std::sqrt(rng.uniform());
    return std::polar(r, rng.uniform(0.0, 2.0 * std::numbers::pi));
}

HarmonicSymbol random_quadratic(DetRng& rng) {
    Complex c = random_modulus_bounded(rng, 2.0);
    Complex b = random_modulus_bounded(rng, 2.0);
    Complex a = random_modulus_bounded(rng, 2.0);
    return HarmonicSymbol{ComplexPoly{{c, b, a}}};
}

CriterionResult criterion_construction_sweep(const Config& config) {
    CriterionResult out{1, "construction-identity-sweep", true, ""};
    double worst = 0.0;
    for (int k = 3; k <= 10; ++k)
        for (int n = 1; n <= 5; ++n) {
            ConstructionParams params = constructions::build_counterexample(k, n, config);
            if (!(std::abs(params.beta) > 1.0) || !(std::abs(params.alpha) < 1.0)) {
                out.passed = false;
                out.detail = "modulus bounds violated at k=" + std::to_string(k);
                return out;
            }
            worst = std::max(worst, params.residuals.alpha_condition);
            if (params.residuals.alpha_condition >= 1e-10) {
                out.passed = false;
                out.detail = "alpha condition residual " + std::to_string(params.residuals.alpha_condition);
                return out;
            }
            if (k == 3 && n == 1) {
                Complex v = params.alpha * params.alpha * params.p.derivative().eval(params.alpha);
                if (std::abs(v - Complex(1.5)) >= 1e-10) {
                    out.passed = false;
                    out.detail = "alpha^2 p'(alpha) != 3/2 for (3,1)";
                    return out;
                }
            }
        }
    std::ostringstream ss;
    ss << "k=3..10, n=1..5; worst |alpha^2 p'(alpha)-(n+2)/(n+1)| = " << worst;
    out.detail = ss.str();
    return out;
}

CriterionResult criterion_isolated_certification(const Config& config) {
    CriterionResult out{2, "isolated-point-certification", false, ""};
    ConstructionParams params = constructions::build_counterexample(3, 1, config);
    spectral::Analyzer analyzer(params.symbol(), config);

    spectral::EigenOutcome eo = analyzer.eigen_test(0.0);
    if (eo.status != spectral::EigenStatus::Certificate ||
        eo.certificate->branch != spectral::EigenBranch::SimpleZeros ||
        eo.certificate->zeros.size() != 1 || eo.certificate->zeros[0].n != 1 ||
        std::abs(eo.certificate->zeros[0].z - params.alpha) > 1e-8) {
        out.detail = "eigen_test(0) did not certify the single zero alpha with n=1";
        return out;
    }
    spectral::WindingResult w = analyzer.winding(0.0);
    if (w.w != 0 || w.on_curve) {
        out.detail = "winding(0) != 0";
        return out;
    }
    constructions::IsolatedPoints iso = constructions::isolated_points(params, 200, config);
    bool has_zero = false;
    for (const auto& cert : iso.lambda.lambdas)
        if (std::abs(cert.lambda) <= 1e-9) has_zero = true;
    if (!has_zero || !(iso.gap_radius > 0.0) || !iso.lambda.complete) {
        out.detail = "isolated_points: gap=" + std::to_string(iso.gap_radius) +
                     " complete=" + std::to_string(iso.lambda.complete);
        return out;
    }
    out.passed = true;
    std::ostringstream ss;
    ss << "Lambda size " << iso.lambda.lambdas.size() << ", gap_radius " << iso.gap_radius
       << ", N_detect " << iso.n_detect << ", complete at n_max=200";
    out.detail = ss.str();
    return out;
}

CriterionResult criterion_limit_closed_forms(const Config& config) {
    CriterionResult out{3, "limit-root-closed-forms", false, ""};
    for (int k = 3; k <= 10; ++k) {
        ConstructionParams params = constructions::build_counterexample(k, 1, config);
        constructions::Certificate cert = constructions::verify_construction(params, config);
        if (!cert.all_passed) {
            out.detail = "verify_construction failed at k=" + std::to_string(k);
            return out;
        }
        if (params.z_inf == params.w_inf) {
            out.detail = "z_inf == w_inf at k=" + std::to_string(k);
            return out;
        }
        for (double m : {std::abs(params.z_inf), std::abs(params.w_inf)})
            if (!(params.c_k <= m && m < 49.0 / 50.0)) {
                out.detail = "limit-root modulus out of bounds at k=" + std::to_string(k);
                return out;
            }

        // tail witness: beyond some small N_detect every candidate keeps
        // at least two in-disk zeros of F_lambda
        spectral::Analyzer analyzer(params.symbol(), config);
        ComplexPoly zzpd = params.p.derivative().shifted_up(2);
        const int n_probe = 60;
        int last_failing = -1;
        int tail_candidates = 0;
        for (int n = 0; n <= n_probe; ++n) {
            double target = static_cast<double>(n + 2) / static_cast<double>(n + 1);
            RootSet rs = find_roots(zzpd - ComplexPoly::constant(target), config);
            for (const Root& r : rs.roots) {
                if (r.position != DiskPosition::Inside) continue;
                Complex lambda = 1.0 / r.location + params.p.eval(r.location);
                DiskCount dc = count_in_disk(analyzer.f_lambda(lambda), config);
                if (dc.inside < 2)
                    last_failing = std::max(last_failing, n);
                else if (n > last_failing)
                    ++tail_candidates;
            }
        }
        if (last_failing > 5 || tail_candidates == 0) {
            out.detail = "tail exclusion not established at k=" + std::to_string(k) +
                         " (last failing n = " + std::to_string(last_failing) + ")";
            return out;
        }
    }
    out.passed = true;
    out.detail = "factorization, z_inf != w_inf, modulus bounds, two-zero tail for k=3..10 (n=1)";
    return out;
}

CriterionResult criterion_quadratic_emptiness(const Config& config) {
    CriterionResult out{4, "quadratic-emptiness", false, ""};
    DetRng rng(config.seed);
    for (int trial = 0; trial < 200; ++trial) {
        HarmonicSymbol s = random_quadratic(rng);
        spectral::LambdaSet ls = spectral::enumerate_lambda(s, 50, config);
        if (!ls.lambdas.empty()) {
            out.detail = "nonempty Lambda at trial " + std::to_string(trial);
            return out;
        }
    }
    // one full report: decomposition carries no Lambda component
    DetRng rng2(config.seed);
    report::SpectralReport rep = report::analyze(random_quadratic(rng2), 50, config);
    if (!rep.lambda_set.empty() || !rep.weyl.pi00.empty()) {
        out.detail = "report carries Lambda points for a quadratic";
        return out;
    }
    out.passed = true;
    out.detail = "200 seeded quadratics, enumerate_lambda(50) empty in every case";
    return out;
}

CriterionResult criterion_invertibility(const Config& config) {
    CriterionResult out{5, "invertibility-vectors", false, ""};
    spectral::InvertibilityWitness w1 =
        spectral::invertible(HarmonicSymbol{ComplexPoly{{0.0, -1.0, 1.0}}}, config);
    if (!w1.verdict) {
        out.detail = "p = z^2 - z should be invertible";
        return out;
    }
    spectral::InvertibilityWitness w2 = spectral::invertible(HarmonicSymbol{ComplexPoly{{0.0}}}, config);
    if (w2.verdict) {
        out.detail = "p = 0 should not be invertible";
        return out;
    }
    ConstructionParams params = constructions::build_counterexample(3, 1, config);
    spectral::InvertibilityWitness w3 = spectral::invertible(params.symbol(), config);
    if (w3.verdict || w3.clause.find("Eq. (1) satisfied at n = 1") == std::string::npos) {
        out.detail = "(3,1) witness: " + w3.clause;
        return out;
    }
    out.passed = true;
    out.detail = "z^2-z true; 0 false; (3,1) false via '" + w3.clause + "'";
    return out;
}

CriterionResult criterion_tzbar_sanity(const Config& config) {
    CriterionResult out{6, "tzbar-sanity", false, ""};
    HarmonicSymbol zbar{ComplexPoly{{0.0}}};
    raster::RasterGrid grid =
        raster::rasterize(zbar, raster::BBox{-2.0, 2.0, -2.0, 2.0}, 256, 256, 10, config);
    long mismatches = 0;
    for (int row = 0; row < 256; ++row)
        for (int col = 0; col < 256; ++col) {
            double m = std::abs(grid.pixel_center(col, row));
            raster::CellCode code = grid.at(col, row);
            if (m < 1.0 - config.boundary_band && code != raster::CellCode::EigenRegion) ++mismatches;
            if (m > 1.0 + config.boundary_band && code != raster::CellCode::Resolvent) ++mismatches;
        }
    if (mismatches > static_cast<long>(0.005 * 256 * 256)) {
        out.detail = std::to_string(mismatches) + " misclassified pixels";
        return out;
    }
    matrix::SeriesEigenvector series = matrix::series_eigenvector(zbar, 0.3, 400, config);
    for (int j = 0; j <= 50; ++j) {
        double expected = (j + 1) * std::pow(0.3, j);
        double got = std::abs(series.coeffs[static_cast<std::size_t>(j)]) *
                     std::exp2(series.scale_log2[static_cast<std::size_t>(j)]);
        if (std::abs(got - expected) > 1e-13 * expected) {
            out.detail = "series coefficient mismatch at j=" + std::to_string(j);
            return out;
        }
    }
    if (series.verdict != matrix::SeriesVerdict::Decaying) {
        out.detail = "series verdict for the reproducing-kernel eigenvector not DECAYING";
        return out;
    }
    out.passed = true;
    out.detail = std::to_string(mismatches) + " boundary exceptions of " + std::to_string(256 * 256) +
                 "; c_j = (j+1)(0.3)^j to 1e-13";
    return out;
}

CriterionResult criterion_oracle_residuals(const Config& config) {
    CriterionResult out{7, "oracle-residuals", false, ""};
    ConstructionParams params = constructions::build_counterexample(3, 1, config);
    HarmonicSymbol s = params.symbol();

    matrix::FiniteSection section = matrix::build_section(s, 200);
    matrix::SeriesEigenvector v = matrix::series_eigenvector(s, 0.0, 400, config);
    double r1 = matrix::residual(section, v);
    if (!(r1 < 1e-6)) {
        out.detail = "(3,1) residual " + std::to_string(r1);
        return out;
    }

    HarmonicSymbol zbar{ComplexPoly{{0.0}}};
    double r2 = matrix::residual(matrix::build_section(zbar, 200),
                                 matrix::series_eigenvector(zbar, 0.3, 400, config));
    if (!(r2 < 1e-8)) {
        out.detail = "p=0 residual " + std::to_string(r2);
        return out;
    }

    // a resolvent point inside the isolation gap around 0
    constructions::IsolatedPoints iso = constructions::isolated_points(params, 100, config);
    Complex probe(iso.gap_radius / 2.0, 0.0);
    spectral::Classification cls = spectral::classify_point(s, probe, 100, config);
    if (cls.kind != spectral::PointClass::Resolvent) {
        out.detail = "gap probe not RESOLVENT";
        return out;
    }
    matrix::SeriesEigenvector vres = matrix::series_eigenvector(s, probe, 400, config);
    if (vres.verdict != matrix::SeriesVerdict::Growing) {
        out.detail = "resolvent series verdict " + std::string(matrix::to_string(vres.verdict));
        return out;
    }
    out.passed = true;
    std::ostringstream ss;
    ss << "(3,1) residual " << r1 << "; p=0 residual " << r2 << "; resolvent probe GROWING";
    out.detail = ss.str();
    return out;
}

CriterionResult criterion_radial_shift(const Config& config) {
    CriterionResult out{8, "example-5.1-radial-shift", false, ""};
    const int size = 102;
    matrix::FiniteSection section = matrix::radial_shift_section(0.5, size);
    for (int n = 1; n <= 100; ++n) {
        double expected = std::sqrt(static_cast<double>(n) * (n + 1.0)) * std::pow(0.5, 2 * n) /
                          (2.0 * n + 1.0);
        double got = section.entry(n - 1, n).real();
        if (std::abs(got - expected) > 1e-12) {
            out.detail = "weight mismatch at n=" + std::to_string(n);
            return out;
        }
    }
    std::vector<Complex> eigs = matrix::section_eigenvalues(section, config);
    for (const Complex& e : eigs)
        if (e != 0.0) {
            out.detail = "nonzero section eigenvalue";
            return out;
        }
    std::string note = matrix::kRadialShiftWeylNote;
    if (note.find("Weyl") == std::string::npos) {
        out.detail = "missing Weyl failure note";
        return out;
    }
    out.passed = true;
    out.detail = "weights match to 1e-12 for n<=100; all section eigenvalues exactly 0; "
                 "Weyl failure documented";
    return out;
}

CriterionResult criterion_weyl_verdicts(const Config& config) {
    CriterionResult out{9, "weyl-verdicts", false, ""};
    ConstructionParams params = constructions::build_counterexample(3, 1, config);
    spectral::WeylReport w1 = spectral::weyl_report(params.symbol(), 100, config);
    bool has_zero = false;
    for (const auto& cert : w1.pi00)
        if (std::abs(cert.lambda) <= 1e-9) has_zero = true;
    if (!w1.holds || !has_zero) {
        out.detail = "(3,1) weyl_report does not hold with 0 in pi00";
        return out;
    }
    spectral::WeylReport w2 = spectral::weyl_report(HarmonicSymbol{ComplexPoly{{0.0}}}, 100, config);
    if (!w2.holds || !w2.pi00.empty()) {
        out.detail = "p=0 weyl_report should hold with empty pi00";
        return out;
    }
    DetRng rng(config.seed);
    for (int trial = 0; trial < 200; ++trial) {
        spectral::WeylReport w = spectral::weyl_report(random_quadratic(rng), 50, config);
        if (!w.holds || !w.pi00.empty()) {
            out.detail = "quadratic weyl_report failed at trial " + std::to_string(trial);
            return out;
        }
    }
    out.passed = true;
    out.detail = "(3,1): holds, pi00 contains 0; p=0 and 200 quadratics: holds, pi00 empty";
    return out;
}

CriterionResult criterion_winding_crosscheck(const Config& config) {
    CriterionResult out{10, "winding-crosscheck", false, ""};
    DetRng rng(config.seed);
    int accepted = 0, mismatches = 0;
    long guard = 0;
    while (accepted < 1000 && ++guard < 100000) {
        int degree = rng.uniform_int(0, 5);
        std::vector<Complex> coeffs(static_cast<std::size_t>(degree) + 1);
        for (Complex& c : coeffs) c = random_modulus_bounded(rng, 2.0);
        if (degree > 0 && std::abs(coeffs.back()) < 0.25)
            coeffs.back() *= 0.25 / std::max(1e-6, std::abs(coeffs.back()));
        HarmonicSymbol s{ComplexPoly(std::move(coeffs))};
        spectral::Analyzer analyzer(s, config);

        // conservative curve-distance filter: sample distance minus half
        // the longest polygon edge must clear 1e-3
        const std::vector<Complex>& curve = analyzer.curve_samples();
        double max_edge = 0.0;
        for (std::size_t i = 0; i < curve.size(); ++i)
            max_edge = std::max(max_edge, std::abs(curve[(i + 1) % curve.size()] - curve[i]));

        double re_min = 1e300, re_max = -1e300, im_min = 1e300, im_max = -1e300;
        for (const Complex& c : curve) {
            re_min = std::min(re_min, c.real());
            re_max = std::max(re_max, c.real());
            im_min = std::min(im_min, c.imag());
            im_max = std::max(im_max, c.imag());
        }
        double inflate_re = 0.3 * std::max(1.0, re_max - re_min);
        double inflate_im = 0.3 * std::max(1.0, im_max - im_min);
        Complex lambda(rng.uniform(re_min - inflate_re, re_max + inflate_re),
                       rng.uniform(im_min - inflate_im, im_max + inflate_im));
        double dist = 1e300;
        for (const Complex& c : curve) dist = std::min(dist, std::abs(c - lambda));
        if (dist - max_edge / 2.0 <= 1e-3) continue;

        ++accepted;
        DiskCount dc = count_in_disk(analyzer.f_lambda(lambda), config);
        int root_wind = dc.inside - 1;
        int arg_wind = analyzer.argument_winding(lambda);
        if (dc.on_circle || root_wind != arg_wind) ++mismatches;
    }
    if (accepted < 1000) {
        out.detail = "could not generate 1000 pairs";
        return out;
    }
    if (mismatches != 0) {
        out.detail = std::to_string(mismatches) + " mismatches of 1000";
        return out;
    }
    out.passed = true;
    out.detail = "1000 seeded (symbol, lambda) pairs, zero mismatches";
    return out;
}

CriterionResult criterion_hyponormal(const Config& config) {
    CriterionResult out{11, "hyponormal-screen", false, ""};
    spectral::HyponormalScreen s1 =
        spectral::hyponormal_screen(HarmonicSymbol{ComplexPoly{0.0, 0.3}}, 64, config);
    if (s1.verdict != spectral::HyponormalVerdict::NotHyponormal ||
        std::abs(s1.min_modulus - 0.3) > 1e-9) {
        out.detail = "p = 0.3z should screen NOT_HYPONORMAL with min 0.3";
        return out;
    }
    spectral::HyponormalScreen s2 =
        spectral::hyponormal_screen(HarmonicSymbol{ComplexPoly{0.0, 2.0}}, 64, config);
    if (s2.verdict != spectral::HyponormalVerdict::Inconclusive ||
        std::abs(s2.min_modulus - 2.0) > 1e-9) {
        out.detail = "p = 2z should screen INCONCLUSIVE with min 2";
        return out;
    }
    out.passed = true;
    out.detail = "0.3z NOT_HYPONORMAL (min 0.3); 2z INCONCLUSIVE (min 2)";
    return out;
}

CriterionResult criterion_determinism(const Config& config) {
    CriterionResult out{12, "determinism", false, ""};
    ConstructionParams params = constructions::build_counterexample(3, 1, config);
    HarmonicSymbol s = params.symbol();
    raster::BBox box{-0.2, 0.2, -0.2, 0.2};

    Config one = config, four = config;
    one.threads = 1;
    four.threads = 4;
    raster::RasterGrid g1 = raster::rasterize(s, box, 64, 64, 40, one);
    raster::RasterGrid g4 = raster::rasterize(s, box, 64, 64, 40, four);
    raster::RasterGrid g1b = raster::rasterize(s, box, 64, 64, 40, one);
    if (g1.cells != g4.cells || g1.cells != g1b.cells) {
        out.detail = "raster cells differ across runs/worker counts";
        return out;
    }
    for (raster::RenderFormat fmt :
         {raster::RenderFormat::Pgm, raster::RenderFormat::Svg, raster::RenderFormat::Json}) {
        if (raster::render(g1, fmt) != raster::render(g4, fmt)) {
            out.detail = "render bytes differ across worker counts";
            return out;
        }
    }
    std::string rep1 = report::to_json(report::analyze(s, 60, one));
    std::string rep2 = report::to_json(report::analyze(s, 60, four));
    if (rep1 != rep2) {
        out.detail = "analyze JSON differs across worker counts";
        return out;
    }
    std::string json1 = raster::render(g1, raster::RenderFormat::Json);
    raster::RasterGrid parsed = raster::parse_grid_json(json1);
    if (raster::render(parsed, raster::RenderFormat::Json) != json1) {
        out.detail = "raster JSON round-trip not byte-identical";
        return out;
    }
    out.passed = true;
    out.detail = "raster grids, renders and reports bit-identical across runs and 1 vs 4 workers";
    return out;
}

}  // namespace

std::vector<CriterionResult> run_all(const Config& config) {
    using Criterion = CriterionResult (*)(const Config&);
    const Criterion criteria[] = {
        criterion_construction_sweep, criterion_isolated_certification,
        criterion_limit_closed_forms,            criterion_quadratic_emptiness,
        criterion_invertibility,      criterion_tzbar_sanity,
        criterion_oracle_residuals,   criterion_radial_shift,
        criterion_weyl_verdicts,      criterion_winding_crosscheck,
        criterion_hyponormal,         criterion_determinism,
    };
    std::vector<CriterionResult> results;
    int id = 0;
    for (Criterion c : criteria) {
        ++id;
        try {
            results.push_back(c(config));
        } catch (const std::exception& e) {
            results.push_back({id, "criterion-" + std::to_string(id), false,
                               std::string("exception: ") + e.what()});
        }
    }
    return results;
}

bool run_and_report(std::ostream& out, const Config& config) {
    bool all = true;
    for (const CriterionResult& r : run_all(config)) {
        out << (r.passed ? "PASS" : "FAIL") << " " << r.id << " " << r.name;
        if (!r.detail.empty()) out << " — " << r.detail;
        out << "\n";
        all = all && r.passed;
    }
    return all;
}

}  // namespace bergman::selftest
