#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/constructions.hpp"
#include "bergman/det_rng.hpp"
#include "bergman/errors.hpp"
#include "bergman/report.hpp"
#include "bergman/spectral.hpp"
#include "oracles.hpp"

using namespace bergman;
using spectral::Analyzer;

namespace {

HarmonicSymbol zbar() { return HarmonicSymbol{ComplexPoly{{0.0}}}; }
HarmonicSymbol z2_minus_z() { return HarmonicSymbol{ComplexPoly{{0.0, -1.0, 1.0}}}; }

Complex random_in_disk(DetRng& rng, double radius) {
    return std::polar(radius * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * std::numbers::pi));
}

}  // namespace

TEST_CASE("f_lambda shapes and the construction factorization") {
    Analyzer plain(zbar());
    CHECK(plain.f_lambda(0.0).degree() == 0);
    CHECK(plain.f_lambda(0.0).coeff(0) == Complex(1.0));

    Analyzer quad(z2_minus_z());
    ComplexPoly f = quad.f_lambda(0.0);
    CHECK(f.degree() == 3);
    CHECK(f.coeff(0) == Complex(1.0));
    CHECK(f.coeff(1) == Complex(0.0));
    CHECK(f.coeff(2) == Complex(-1.0));
    CHECK(f.coeff(3) == Complex(1.0));

    // for the constructed symbol, F_0 = (z - alpha)(z + beta)^k coefficient-wise
    auto params = constructions::build_counterexample(3, 1);
    Analyzer built(params.symbol());
    ComplexPoly f0 = built.f_lambda(0.0);
    std::vector<Complex> factors{params.alpha, -params.beta, -params.beta, -params.beta};
    ComplexPoly expanded = ComplexPoly::from_roots(factors);
    double scale = expanded.coeff_scale();
    for (int i = 0; i <= 4; ++i)
        CHECK(std::abs(f0.coeff(i) - expanded.coeff(i)) < 1e-10 * scale);
}

TEST_CASE("winding basics against an atan2 oracle") {
    Analyzer plain(zbar());
    spectral::WindingResult w0 = plain.winding(0.0);
    CHECK(w0.w == -1);
    CHECK_FALSE(w0.on_curve);
    int oracle = oracles::atan2_winding(
        [](double t) { return std::exp(Complex(0.0, -2.0 * std::numbers::pi * t)); }, 0.0, 512);
    CHECK(oracle == -1);

    spectral::WindingResult w2 = plain.winding(Complex(2.0, 0.0));
    CHECK(w2.w == 0);
    CHECK_FALSE(w2.on_curve);

    auto params = constructions::build_counterexample(3, 1);
    Analyzer built(params.symbol());
    spectral::WindingResult wc = built.winding(0.0);
    CHECK(wc.w == 0);
    CHECK_FALSE(wc.on_curve);
}

TEST_CASE("essential membership") {
    Analyzer plain(zbar());
    CHECK(plain.essential_membership(1.0));
    CHECK_FALSE(plain.essential_membership(0.0));

    Analyzer quad(z2_minus_z());
    Complex on_curve = quad.symbol().eval(std::polar(1.0, std::numbers::pi / 3.0));
    CHECK(quad.essential_membership(on_curve));
}

TEST_CASE("eigen_test: kernel region, certified isolated point, resolvent") {
    Analyzer plain(zbar());
    spectral::EigenOutcome kernel = plain.eigen_test(0.3);
    REQUIRE(kernel.status == spectral::EigenStatus::Certificate);
    CHECK(kernel.certificate->branch == spectral::EigenBranch::NoZeros);
    CHECK(kernel.certificate->winding == -1);

    auto params = constructions::build_counterexample(3, 1);
    Analyzer built(params.symbol());
    spectral::EigenOutcome isolated = built.eigen_test(0.0);
    REQUIRE(isolated.status == spectral::EigenStatus::Certificate);
    REQUIRE(isolated.certificate->branch == spectral::EigenBranch::SimpleZeros);
    REQUIRE(isolated.certificate->zeros.size() == 1);
    CHECK(isolated.certificate->zeros[0].n == 1);
    CHECK(std::abs(isolated.certificate->zeros[0].z - params.alpha) < 1e-9);
    Complex v = params.alpha * params.alpha * params.p.derivative().eval(params.alpha);
    CHECK(std::abs(v - Complex(1.5)) < 1e-10);

    Analyzer quad(z2_minus_z());
    spectral::EigenOutcome res = quad.eigen_test(0.0);
    CHECK(res.status == spectral::EigenStatus::NotEigenvalue);
    REQUIRE(res.failing_zero.has_value());

    CHECK_THROWS_AS(plain.eigen_test(1.0), PreconditionViolated);
}

TEST_CASE("enumerate_lambda on the three reference symbols") {
    auto params = constructions::build_counterexample(3, 1);
    spectral::LambdaSet built = spectral::enumerate_lambda(params.symbol(), 60);
    bool has_zero = false;
    for (const auto& cert : built.lambdas)
        if (std::abs(cert.lambda) < 1e-9) has_zero = true;
    CHECK(has_zero);
    CHECK(built.complete);

    spectral::LambdaSet trivial = spectral::enumerate_lambda(zbar(), 60);
    CHECK(trivial.lambdas.empty());
    CHECK(trivial.complete);

    DetRng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        Complex a = rng.complex_in_box(1.4), b = rng.complex_in_box(1.4), c = rng.complex_in_box(1.4);
        spectral::LambdaSet quad = spectral::enumerate_lambda(HarmonicSymbol{ComplexPoly{{c, b, a}}}, 50);
        CHECK(quad.lambdas.empty());
    }
}

TEST_CASE("classify_point taxonomy") {
    CHECK(spectral::classify_point(zbar(), 0.0, 50).kind ==
          spectral::PointClass::EigenRegionIndexPositive);
    auto params = constructions::build_counterexample(3, 1);
    spectral::Classification iso = spectral::classify_point(params.symbol(), 0.0, 50);
    CHECK(iso.kind == spectral::PointClass::IsolatedEigen);
    REQUIRE(iso.certificate.has_value());
    CHECK(spectral::classify_point(z2_minus_z(), 0.0, 50).kind == spectral::PointClass::Resolvent);
    CHECK(spectral::classify_point(zbar(), 1.0, 50).kind == spectral::PointClass::Essential);
    CHECK(spectral::classify_point(zbar(), Complex(0.0, 2.0), 50).kind ==
          spectral::PointClass::Resolvent);
}

TEST_CASE("invertibility: the three reference verdicts") {
    spectral::InvertibilityWitness quad = spectral::invertible(z2_minus_z());
    CHECK(quad.verdict);

    spectral::InvertibilityWitness plain = spectral::invertible(zbar());
    CHECK_FALSE(plain.verdict);
    CHECK(plain.clause.find("exactly one") != std::string::npos);

    auto params = constructions::build_counterexample(3, 1);
    spectral::InvertibilityWitness built = spectral::invertible(params.symbol());
    CHECK_FALSE(built.verdict);
    CHECK(built.clause == "Eq. (1) satisfied at n = 1");
}

TEST_CASE("weyl_report composition") {
    auto params = constructions::build_counterexample(3, 1);
    spectral::WeylReport w = spectral::weyl_report(params.symbol(), 60);
    CHECK(w.holds);
    REQUIRE_FALSE(w.pi00.empty());
    CHECK(std::abs(w.pi00[0].lambda) < 1e-9);

    spectral::WeylReport plain = spectral::weyl_report(zbar(), 60);
    CHECK(plain.holds);
    CHECK(plain.pi00.empty());
}

TEST_CASE("hyponormal screen: shifts and the quadratic boundary case") {
    spectral::HyponormalScreen s1 = spectral::hyponormal_screen(HarmonicSymbol{ComplexPoly{0.0, 0.3}}, 64);
    CHECK(s1.verdict == spectral::HyponormalVerdict::NotHyponormal);
    CHECK(s1.min_modulus == doctest::Approx(0.3).epsilon(1e-12));

    spectral::HyponormalScreen s2 = spectral::hyponormal_screen(HarmonicSymbol{ComplexPoly{0.0, 2.0}}, 64);
    CHECK(s2.verdict == spectral::HyponormalVerdict::Inconclusive);
    CHECK(s2.min_modulus == doctest::Approx(2.0).epsilon(1e-12));

    // |2 e^{iθ} − 1|² = 5 − 4 cos θ has its minimum 1 at θ = 0
    spectral::HyponormalScreen s3 = spectral::hyponormal_screen(z2_minus_z(), 64);
    CHECK(s3.verdict == spectral::HyponormalVerdict::Inconclusive);
    CHECK(s3.min_modulus == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(spectral::hyponormal_screen(zbar(), 8), InvalidParams);
}

TEST_CASE("winding bounds and cross-method agreement on random symbols") {
    DetRng rng(303);
    int checked = 0;
    while (checked < 100) {
        int degree = rng.uniform_int(0, 5);
        std::vector<Complex> coeffs;
        for (int i = 0; i <= degree; ++i) coeffs.push_back(rng.complex_in_box(1.5));
        HarmonicSymbol s{ComplexPoly(std::move(coeffs))};
        Analyzer analyzer(s);
        Complex lambda = rng.complex_in_box(4.0);
        double dist = 1e300, max_edge = 0.0;
        const auto& curve = analyzer.curve_samples();
        for (std::size_t i = 0; i < curve.size(); ++i) {
            dist = std::min(dist, std::abs(curve[i] - lambda));
            max_edge = std::max(max_edge, std::abs(curve[(i + 1) % curve.size()] - curve[i]));
        }
        if (dist - max_edge / 2.0 <= 1e-3) continue;
        ++checked;
        spectral::WindingResult w = analyzer.winding(lambda);  // throws on cross-check mismatch
        CHECK(w.w >= -1);
        CHECK(w.w <= s.degree());
        CHECK(w.w == analyzer.argument_winding(lambda));
    }
}

TEST_CASE("translation covariance of eigen certificates") {
    DetRng rng(404);
    auto params = constructions::build_counterexample(4, 2);
    for (int trial = 0; trial < 5; ++trial) {
        Complex lambda = random_in_disk(rng, 0.3);
        HarmonicSymbol shifted{params.p - ComplexPoly::constant(lambda)};
        spectral::Analyzer base(params.symbol()), moved(shifted);

        spectral::EigenOutcome a, b;
        try {
            a = base.eigen_test(lambda);
            b = moved.eigen_test(0.0);
        } catch (const PreconditionViolated&) {
            continue;  // probe fell on the curve: no covariance statement
        }
        REQUIRE(a.status == b.status);
        if (a.status != spectral::EigenStatus::Certificate) continue;
        REQUIRE(a.certificate->zeros.size() == b.certificate->zeros.size());
        for (std::size_t i = 0; i < a.certificate->zeros.size(); ++i) {
            CHECK(std::abs(a.certificate->zeros[i].z - b.certificate->zeros[i].z) < 1e-12);
            CHECK(a.certificate->zeros[i].n == b.certificate->zeros[i].n);
            CHECK(std::abs(a.certificate->zeros[i].condition_residual -
                           b.certificate->zeros[i].condition_residual) < 1e-12);
        }
    }
}

TEST_CASE("conjugation symmetry for real-coefficient symbols") {
    HarmonicSymbol s{ComplexPoly{{0.2, -0.7, 0.0, 0.5}}};
    DetRng rng(505);
    for (int trial = 0; trial < 30; ++trial) {
        Complex lambda = rng.complex_in_box(2.5);
        spectral::Classification up = spectral::classify_point(s, lambda, 30);
        spectral::Classification down = spectral::classify_point(s, std::conj(lambda), 30);
        CHECK(up.kind == down.kind);
    }
}

TEST_CASE("range inclusion for degree <= 2") {
    Config config;
    HarmonicSymbol linear{ComplexPoly{{0.3, Complex(0.5, 0.2)}}};
    report::SpectralReport rl = report::analyze(linear, 30, config);
    CHECK(report::range_inclusion_check(linear, rl, 128, config));

    report::SpectralReport rq = report::analyze(z2_minus_z(), 30, config);
    CHECK(report::range_inclusion_check(z2_minus_z(), rq, 128, config));

    report::SpectralReport rp = report::analyze(zbar(), 30, config);
    CHECK(report::range_inclusion_check(zbar(), rp, 128, config));

    HarmonicSymbol cubic{ComplexPoly{{0.0, 0.0, 0.0, 1.0}}};
    report::SpectralReport rc = report::analyze(cubic, 30, config);
    CHECK_THROWS_AS(report::range_inclusion_check(cubic, rc, 64, config), UnsupportedDegree);
}
