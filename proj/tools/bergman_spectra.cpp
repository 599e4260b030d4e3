// bergman_spectra: certified spectral analysis of Bergman-space Toeplitz
// operators with harmonic polynomial symbols z̄ + p(z). One subcommand per
// capability, machine-readable output, deterministic for a fixed config.

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bergman/constructions.hpp"
#include "bergman/errors.hpp"
#include "bergman/finite_section.hpp"
#include "bergman/poly_format.hpp"
#include "bergman/raster.hpp"
#include "bergman/report.hpp"
#include "bergman/selftest.hpp"
#include "bergman/spectral.hpp"

namespace {

using namespace bergman;

struct SymbolSource {
    std::string poly_text;
    bool from_stdin = false;
};

void add_config_options(CLI::App* cmd, Config& config) {
    cmd->add_option("--root-residual-tol", config.root_residual_tol, "Root residual tolerance")
        ->envname("BERGMAN_ROOT_RESIDUAL_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--cluster-tol", config.cluster_tol, "Root cluster merge tolerance")
        ->envname("BERGMAN_CLUSTER_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--boundary-band", config.boundary_band, "Unit-circle classification band")
        ->envname("BERGMAN_BOUNDARY_BAND")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--eigen-condition-tol", config.eigen_condition_tol,
                    "Zero-condition residual tolerance")
        ->envname("BERGMAN_EIGEN_CONDITION_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--dedup-tol", config.dedup_tol, "Lambda deduplication tolerance")
        ->envname("BERGMAN_DEDUP_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--series-margin", config.series_margin, "DECAYING/GROWING margin")
        ->envname("BERGMAN_SERIES_MARGIN")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--screen-margin", config.screen_margin, "Hyponormality screen margin")
        ->envname("BERGMAN_SCREEN_MARGIN")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--range-tol", config.range_tol, "Range inclusion tolerance")
        ->envname("BERGMAN_RANGE_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--n-max", config.n_max, "Lambda enumeration depth")
        ->envname("BERGMAN_N_MAX")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--n-cap", config.n_cap, "Largest n matched in Eq. (1)")
        ->envname("BERGMAN_N_CAP")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--arg-samples", config.arg_samples, "Curve samples for the winding cross-check")
        ->envname("BERGMAN_ARG_SAMPLES")
        ->capture_default_str();
    cmd->add_option("--section-size", config.section_size, "Finite section size N")
        ->envname("BERGMAN_SECTION_SIZE")
        ->capture_default_str();
    cmd->add_option("--series-length", config.series_length, "Series length M")
        ->envname("BERGMAN_SERIES_LENGTH")
        ->capture_default_str();
    cmd->add_option("--seed", config.seed, "Seed for randomized test vectors")
        ->envname("BERGMAN_SEED")
        ->capture_default_str();
    cmd->add_option("--threads", config.threads, "Worker threads (0 = hardware)")
        ->envname("BERGMAN_THREADS")
        ->capture_default_str();
    cmd->add_flag("--high-precision", config.high_precision, "Raise iteration caps")
        ->envname("BERGMAN_HIGH_PRECISION");
}

void add_symbol_source(CLI::App* cmd, SymbolSource& source) {
    CLI::Option* poly = cmd->add_option("--poly", source.poly_text,
                                        "Symbol coefficients (ascending, e.g. \"0,-1,1\")");
    CLI::Option* stdin_flag =
        cmd->add_flag("--stdin", source.from_stdin, "Read a construction JSON document from stdin");
    poly->excludes(stdin_flag);
}

std::string read_stdin() {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
}

HarmonicSymbol resolve_symbol(const SymbolSource& source) {
    if (source.from_stdin) {
        constructions::ConstructionParams params = report::construction_from_json(read_stdin());
        return params.symbol();
    }
    if (source.poly_text.empty())
        throw InvalidParams("no symbol given: use --poly or --stdin");
    return HarmonicSymbol{parse_poly(source.poly_text)};
}

Complex parse_complex_arg(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos) return Complex(std::stod(text), 0.0);
    return Complex(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw ValidationFailed("cannot open output file " + out_path);
    file.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral analysis of Bergman-space Toeplitz operators with symbols z-bar + p(z)"};
    app.require_subcommand(1);

    Config config;
    SymbolSource source;
    std::string format = "json";
    std::string out_path;
    std::string lambda_text = "0,0";
    int k = 3, n = 1;
    std::string bbox_text, res_text = "512x512";
    double radial_r = 0.0;
    int screen_samples = 256;

    CLI::App* analyze = app.add_subcommand("analyze", "Full spectral report for a symbol");
    add_config_options(analyze, config);
    add_symbol_source(analyze, source);
    analyze->add_option("--format", format, "json or csv")->capture_default_str();
    analyze->add_option("--out", out_path, "Output file (default stdout)");

    CLI::App* classify = app.add_subcommand("classify", "Classify one point of the plane");
    add_config_options(classify, config);
    add_symbol_source(classify, source);
    classify->add_option("--lambda", lambda_text, "Query point re,im")->required();

    CLI::App* invertible = app.add_subcommand("invertible", "Invertibility verdict with witness");
    add_config_options(invertible, config);
    add_symbol_source(invertible, source);

    CLI::App* weyl = app.add_subcommand("weyl", "Weyl spectrum report and verdict");
    add_config_options(weyl, config);
    add_symbol_source(weyl, source);

    CLI::App* construct = app.add_subcommand("construct", "Build the (k, n) counterexample symbol");
    add_config_options(construct, config);
    construct->add_option("--k", k, "Polynomial degree (>= 3)")->required();
    construct->add_option("--n", n, "Eq. (1) index (>= 1)")->required();

    CLI::App* isolated = app.add_subcommand("isolated", "Isolated spectral points of a construction");
    add_config_options(isolated, config);
    isolated->add_option("--k", k, "Polynomial degree (>= 3)");
    isolated->add_option("--n", n, "Eq. (1) index (>= 1)");
    bool isolated_stdin = false;
    isolated->add_flag("--stdin", isolated_stdin, "Read construction JSON from stdin");

    CLI::App* raster_cmd = app.add_subcommand("raster", "Classify a grid and render the picture");
    add_config_options(raster_cmd, config);
    add_symbol_source(raster_cmd, source);
    raster_cmd->add_option("--bbox", bbox_text, "re_min,re_max,im_min,im_max (default: curve box +25%)");
    raster_cmd->add_option("--res", res_text, "Resolution WxH")->capture_default_str();
    raster_cmd->add_option("--out", out_path, "Output file (default stdout)");
    raster_cmd->add_option("--format", format, "pgm, svg or json")->capture_default_str();

    CLI::App* matrix_cmd = app.add_subcommand("matrix", "Finite-section oracle outputs");
    add_config_options(matrix_cmd, config);
    add_symbol_source(matrix_cmd, source);
    matrix_cmd->add_option("--lambda", lambda_text, "Series eigenvector point re,im")
        ->capture_default_str();
    matrix_cmd->add_option("--radial", radial_r, "Radial shift symbol of radius r instead of z-bar+p");
    matrix_cmd->add_option("--format", format, "json or csv")->capture_default_str();

    CLI::App* hyponormal = app.add_subcommand("hyponormal", "Necessary-condition hyponormality screen");
    add_config_options(hyponormal, config);
    add_symbol_source(hyponormal, source);
    hyponormal->add_option("--samples", screen_samples, "Circle samples (>= 16)")->capture_default_str();

    CLI::App* selftest = app.add_subcommand("selftest", "Run the embedded acceptance suite");
    add_config_options(selftest, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*analyze) {
            report::SpectralReport rep = report::analyze(resolve_symbol(source), config.n_max, config);
            emit(format == "csv" ? report::to_csv(rep) : report::to_json(rep), out_path);
        } else if (*classify) {
            HarmonicSymbol s = resolve_symbol(source);
            Complex lambda = parse_complex_arg(lambda_text);
            spectral::Classification cls = spectral::classify_point(s, lambda, config.n_max, config);
            emit(report::to_json(cls, lambda), "");
        } else if (*invertible) {
            emit(report::to_json(spectral::invertible(resolve_symbol(source), config)), "");
        } else if (*weyl) {
            emit(report::to_json(spectral::weyl_report(resolve_symbol(source), config.n_max, config)), "");
        } else if (*construct) {
            emit(report::to_json(constructions::build_counterexample(k, n, config)), "");
        } else if (*isolated) {
            constructions::ConstructionParams params =
                isolated_stdin ? report::construction_from_json(read_stdin())
                               : constructions::build_counterexample(k, n, config);
            constructions::IsolatedPoints iso = constructions::isolated_points(params, config.n_max, config);
            nlohmann::json doc;
            doc["schema"] = "bergman-spectra/v1";
            doc["kind"] = "isolated_points";
            nlohmann::json lambdas = nlohmann::json::array();
            for (const auto& cert : iso.lambda.lambdas)
                lambdas.push_back({cert.lambda.real(), cert.lambda.imag()});
            doc["lambda"] = lambdas;
            doc["complete"] = iso.lambda.complete;
            doc["completeness_note"] = iso.lambda.completeness_note;
            doc["n_detect"] = iso.n_detect;
            doc["gap_radius"] = iso.gap_radius;
            emit(doc.dump(), "");
        } else if (*raster_cmd) {
            HarmonicSymbol s = resolve_symbol(source);
            raster::BBox box;
            if (bbox_text.empty()) {
                box = raster::default_bbox(s, config);
            } else {
                std::istringstream ss(bbox_text);
                char comma;
                if (!(ss >> box.re_min >> comma >> box.re_max >> comma >> box.im_min >> comma >> box.im_max))
                    throw InvalidParams("bad --bbox, want re_min,re_max,im_min,im_max");
            }
            int width = config.raster_width, height = config.raster_height;
            std::size_t x = res_text.find('x');
            if (x != std::string::npos) {
                width = std::stoi(res_text.substr(0, x));
                height = std::stoi(res_text.substr(x + 1));
            } else if (!res_text.empty()) {
                width = height = std::stoi(res_text);
            }
            raster::RasterGrid grid = raster::rasterize(s, box, width, height, config.n_max, config);
            raster::RenderFormat fmt = raster::RenderFormat::Pgm;
            if (format == "svg") fmt = raster::RenderFormat::Svg;
            else if (format == "json") fmt = raster::RenderFormat::Json;
            else if (format != "pgm") throw InvalidParams("raster --format must be pgm, svg or json");
            emit(raster::render(grid, fmt), out_path);
        } else if (*matrix_cmd) {
            nlohmann::json doc;
            doc["schema"] = "bergman-spectra/v1";
            doc["kind"] = "matrix_oracle";
            std::vector<Complex> eigs;
            if (matrix_cmd->count("--radial") > 0) {
                matrix::FiniteSection section = matrix::radial_shift_section(radial_r, config.section_size);
                eigs = matrix::section_eigenvalues(section, config);
                doc["symbol"] = "radial shift, r = " + std::to_string(radial_r);
                doc["note"] = matrix::kRadialShiftWeylNote;
            } else {
                HarmonicSymbol s = resolve_symbol(source);
                Complex lambda = parse_complex_arg(lambda_text);
                matrix::FiniteSection section = matrix::build_section(s, config.section_size);
                matrix::SeriesEigenvector v =
                    matrix::series_eigenvector(s, lambda, config.series_length, config);
                doc["lambda"] = {lambda.real(), lambda.imag()};
                doc["residual"] = matrix::residual(section, v);
                doc["series"] = {{"growth_ratio", v.growth_ratio},
                                 {"verdict", matrix::to_string(v.verdict)},
                                 {"length", v.coeffs.size() - 1}};
                eigs = matrix::section_eigenvalues(section, config);
            }
            if (format == "csv") {
                std::string csv = "re,im\n";
                for (const Complex& e : eigs)
                    csv += std::to_string(e.real()) + "," + std::to_string(e.imag()) + "\n";
                emit(csv, out_path);
            } else {
                nlohmann::json list = nlohmann::json::array();
                for (const Complex& e : eigs) list.push_back({e.real(), e.imag()});
                doc["eigenvalues"] = list;
                doc["section_size"] = config.section_size;
                emit(doc.dump(), out_path);
            }
        } else if (*hyponormal) {
            emit(report::to_json(
                     spectral::hyponormal_screen(resolve_symbol(source), screen_samples, config)),
                 "");
        } else if (*selftest) {
            bool ok = selftest::run_and_report(std::cout, config);
            return ok ? 0 : 2;
        }
    } catch (const NonConvergence& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
