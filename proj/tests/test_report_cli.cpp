#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "bergman/constructions.hpp"
#include "bergman/report.hpp"

using namespace bergman;
using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

// Runs the built CLI through the shell; stderr is left on the test's
// stderr so diagnostics stay visible.
CliResult run_cli(const std::string& args) {
    std::string command = std::string(BERGMAN_CLI_PATH) + " " + args;
    CliResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, got);
    int status = pclose(pipe);
    result.exit_code = WEXITSTATUS(status);
    return result;
}

}  // namespace

TEST_CASE("report JSON structure and determinism") {
    auto params = constructions::build_counterexample(3, 1);
    Config config;
    report::SpectralReport rep = report::analyze(params.symbol(), 60, config);
    std::string text = report::to_json(rep);
    json doc = json::parse(text);
    CHECK(doc.at("schema") == "bergman-spectra/v1");
    CHECK(doc.at("kind") == "spectral_report");
    CHECK(doc.at("lambda_set").size() == 1);
    CHECK(doc.at("truncation").at("complete") == true);
    CHECK(doc.at("weyl").at("weyl_theorem_holds") == true);
    CHECK(doc.at("essential_samples").size() == static_cast<std::size_t>(config.arg_samples));

    // pi00 is exactly the lambda set
    REQUIRE(rep.weyl.pi00.size() == rep.lambda_set.size());
    for (std::size_t i = 0; i < rep.lambda_set.size(); ++i)
        CHECK(rep.weyl.pi00[i].lambda == rep.lambda_set[i].lambda);

    std::string again = report::to_json(report::analyze(params.symbol(), 60, config));
    CHECK(again == text);

    std::string csv = report::to_csv(rep);
    CHECK(csv.find("# essential_samples") != std::string::npos);
    CHECK(csv.find("# lambda_set") != std::string::npos);
    CHECK(csv.find("SIMPLE_ZEROS") != std::string::npos);
}

TEST_CASE("construction JSON round trip") {
    auto params = constructions::build_counterexample(4, 2);
    std::string text = report::to_json(params);
    auto back = report::construction_from_json(text);
    CHECK(back.k == 4);
    CHECK(back.n == 2);
    CHECK(back.beta == params.beta);
    CHECK(back.alpha == params.alpha);
    CHECK(back.p == params.p);
    CHECK(back.z_inf == params.z_inf);
}

TEST_CASE("cli: invertible vectors and exit codes") {
    CliResult quad = run_cli("invertible --poly \"0,-1,1\"");
    CHECK(quad.exit_code == 0);
    json doc = json::parse(quad.output);
    CHECK(doc.at("invertible") == true);

    CliResult plain = run_cli("invertible --poly \"0\"");
    CHECK(plain.exit_code == 0);
    CHECK(json::parse(plain.output).at("invertible") == false);

    CliResult usage = run_cli("invertible 2>/dev/null");
    CHECK(usage.exit_code == 2);  // no symbol given → validation error

    CliResult unknown = run_cli("frobnicate 2>/dev/null");
    CHECK(unknown.exit_code == 1);  // usage error
}

TEST_CASE("cli: classify the origin for z-bar") {
    CliResult result = run_cli("classify --poly \"0\" --lambda \"0,0\"");
    CHECK(result.exit_code == 0);
    json doc = json::parse(result.output);
    CHECK(doc.at("class") == "EIGEN_REGION_INDEX_POSITIVE");
    CHECK(doc.at("winding") == -1);
}

TEST_CASE("cli: construct pipes into analyze and isolated") {
    CliResult piped = run_cli("construct --k 3 --n 1 | " + std::string(BERGMAN_CLI_PATH) +
                              " analyze --stdin --n-max 60");
    CHECK(piped.exit_code == 0);
    json doc = json::parse(piped.output);
    REQUIRE(doc.at("lambda_set").size() == 1);
    double re = doc.at("lambda_set").at(0).at("lambda").at(0).get<double>();
    double im = doc.at("lambda_set").at(0).at("lambda").at(1).get<double>();
    CHECK(std::abs(re) < 1e-9);
    CHECK(std::abs(im) < 1e-9);

    CliResult iso = run_cli("construct --k 3 --n 1 | " + std::string(BERGMAN_CLI_PATH) +
                            " isolated --stdin --n-max 60");
    CHECK(iso.exit_code == 0);
    json iso_doc = json::parse(iso.output);
    CHECK(iso_doc.at("gap_radius").get<double>() > 0.0);
    CHECK(iso_doc.at("complete") == true);
}

TEST_CASE("cli: construct rejects k = 2 with exit 2") {
    CliResult bad = run_cli("construct --k 2 --n 1 2>/dev/null");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cli: raster emits a valid small PGM") {
    CliResult result = run_cli("raster --poly \"0\" --bbox \"-2,2,-2,2\" --res 16x16 --format pgm");
    CHECK(result.exit_code == 0);
    CHECK(result.output.substr(0, 3) == "P5\n");
    CHECK(result.output.find("16 16") != std::string::npos);
}

TEST_CASE("cli: matrix oracle outputs") {
    CliResult result = run_cli(
        "matrix --poly \"0\" --lambda \"0.3,0\" --section-size 100 --series-length 300");
    CHECK(result.exit_code == 0);
    json doc = json::parse(result.output);
    CHECK(doc.at("residual").get<double>() < 1e-8);
    CHECK(doc.at("series").at("verdict") == "DECAYING");
    CHECK(doc.at("eigenvalues").size() == 100);

    CliResult radial = run_cli("matrix --radial 0.5 --section-size 40");
    CHECK(radial.exit_code == 0);
    json rdoc = json::parse(radial.output);
    CHECK(rdoc.at("note").get<std::string>().find("Weyl") != std::string::npos);
    for (const auto& e : rdoc.at("eigenvalues")) {
        CHECK(e.at(0).get<double>() == 0.0);
        CHECK(e.at(1).get<double>() == 0.0);
    }
}

TEST_CASE("cli: hyponormal screen verdicts") {
    CliResult s1 = run_cli("hyponormal --poly \"0,0.3\"");
    CHECK(s1.exit_code == 0);
    CHECK(json::parse(s1.output).at("verdict") == "NOT_HYPONORMAL");

    CliResult s2 = run_cli("hyponormal --poly \"0,2\"");
    CHECK(s2.exit_code == 0);
    CHECK(json::parse(s2.output).at("verdict") == "INCONCLUSIVE");
}
