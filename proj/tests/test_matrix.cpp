#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/constructions.hpp"
#include "bergman/det_rng.hpp"
#include "bergman/errors.hpp"
#include "bergman/finite_section.hpp"
#include "oracles.hpp"

using namespace bergman;
using namespace bergman::matrix;

namespace {

HarmonicSymbol zbar() { return HarmonicSymbol{ComplexPoly{{0.0}}}; }

// ⟨φ e_n, e_m⟩ under the normalized area measure, by 2-D quadrature
Complex entry_by_quadrature(const HarmonicSymbol& s, int col, int row) {
    return oracles::disk_integral(
        [&](Complex z) {
            Complex en = std::sqrt(col + 1.0) * std::pow(z, col);
            Complex em = std::sqrt(row + 1.0) * std::pow(z, row);
            return s.eval(z) * en * std::conj(em);
        },
        1.0, 96, 512);
}

}  // namespace

TEST_CASE("build_section entry formulas") {
    FiniteSection plain = build_section(zbar(), 3);
    CHECK(std::abs(plain.entry(0, 1) - Complex(std::sqrt(0.5))) < 1e-15);
    CHECK(std::abs(plain.entry(1, 2) - Complex(std::sqrt(2.0 / 3.0))) < 1e-15);
    CHECK(plain.entry(0, 0) == Complex(0.0));
    CHECK(plain.entry(2, 0) == Complex(0.0));

    FiniteSection constant = build_section(HarmonicSymbol{ComplexPoly{{Complex(0.7, -0.2)}}}, 4);
    for (int i = 0; i < 4; ++i) CHECK(constant.entry(i, i) == Complex(0.7, -0.2));

    // T_{z̄+z} is complex-symmetric banded
    FiniteSection shift = build_section(HarmonicSymbol{ComplexPoly{0.0, 1.0}}, 6);
    for (int n = 0; n < 5; ++n)
        CHECK(std::abs(shift.entry(n + 1, n) - shift.entry(n, n + 1)) < 1e-15);

    FiniteSection scaled = build_section(HarmonicSymbol{ComplexPoly{0.0, 2.5}}, 6);
    for (int n = 0; n < 5; ++n)
        CHECK(std::abs(scaled.entry(n + 1, n) - 2.5 * scaled.entry(n, n + 1)) < 1e-15);
}

TEST_CASE("section entries match 2-D quadrature for random symbols") {
    DetRng rng(77);
    for (int trial = 0; trial < 2; ++trial) {
        int degree = rng.uniform_int(1, 4);
        std::vector<Complex> coeffs;
        for (int i = 0; i <= degree; ++i) coeffs.push_back(rng.complex_in_box(1.0));
        HarmonicSymbol s{ComplexPoly(std::move(coeffs))};
        FiniteSection section = build_section(s, 12);
        for (int col = 0; col < 12; ++col)
            for (int row = 0; row < 12; ++row) {
                Complex expected = entry_by_quadrature(s, col, row);
                CHECK(std::abs(section.entry(row, col) - expected) < 1e-8);
            }
    }
}

TEST_CASE("radial shift weights: paper value, decay, quadrature") {
    FiniteSection half = radial_shift_section(0.5, 12);
    CHECK(std::abs(half.entry(0, 1) - Complex(std::sqrt(2.0) / 12.0)) < 1e-15);

    FiniteSection longer = radial_shift_section(0.5, 60);
    CHECK(std::abs(longer.entry(58, 59)) < 1e-30);  // compactness: weights vanish

    for (double r : {0.3, 0.5, 0.9}) {
        FiniteSection section = radial_shift_section(r, 8);
        for (int n : {1, 3, 7}) {
            Complex expected = oracles::disk_integral(
                [&](Complex z) {
                    Complex en = std::sqrt(n + 1.0) * std::pow(z, n);
                    Complex em = std::sqrt(static_cast<double>(n)) * std::pow(z, n - 1);
                    return std::exp(Complex(0.0, -std::arg(z))) * en * std::conj(em);
                },
                r, 96, 512);
            CHECK(std::abs(section.entry(n - 1, n) - expected) < 1e-10);
        }
    }
    CHECK_THROWS_AS(radial_shift_section(1.5, 8), InvalidParams);
}

TEST_CASE("series eigenvector: kernel, reproducing kernel, closed form") {
    SeriesEigenvector kernel = series_eigenvector(zbar(), 0.0, 100);
    CHECK(kernel.coeffs[0] == Complex(1.0));
    for (int j = 1; j <= 100; ++j) CHECK(kernel.coeffs[static_cast<std::size_t>(j)] == Complex(0.0));
    CHECK(kernel.verdict == SeriesVerdict::Decaying);

    SeriesEigenvector rk = series_eigenvector(zbar(), 0.3, 400);
    for (int j = 0; j <= 50; ++j) {
        double expected = (j + 1) * std::pow(0.3, j);
        CHECK(std::abs(rk.magnitude(j) - expected) <= 1e-13 * expected);
    }
    CHECK(rk.verdict == SeriesVerdict::Decaying);
    CHECK(rk.growth_ratio == doctest::Approx(0.3).epsilon(0.05));

    CHECK_THROWS_AS(series_eigenvector(zbar(), 0.0, 10), InvalidParams);
}

TEST_CASE("recurrence consistency: the series satisfies the ODE coefficient-wise") {
    DetRng rng(55);
    for (int trial = 0; trial < 5; ++trial) {
        int degree = rng.uniform_int(1, 4);
        std::vector<Complex> coeffs;
        for (int i = 0; i <= degree; ++i) coeffs.push_back(rng.complex_in_box(1.0));
        HarmonicSymbol s{ComplexPoly(std::move(coeffs))};
        Complex lambda = rng.complex_in_box(0.5);
        const int m = 80;
        SeriesEigenvector v = series_eigenvector(s, lambda, m);

        // (1 + z q) f' + (2q + z p') f = 0 with q = p − λ, truncated
        std::vector<Complex> c(v.coeffs.begin(), v.coeffs.begin() + m + 1);
        ComplexPoly f(std::move(c));
        ComplexPoly q = s.p - ComplexPoly::constant(lambda);
        ComplexPoly lhs = (ComplexPoly::constant(1.0) + q.shifted_up(1)) * f.derivative() +
                          (q * 2.0 + s.p.derivative().shifted_up(1)) * f;
        double scale = f.coeff_scale() * std::max(1.0, q.coeff_scale());
        for (int j = 0; j <= m - degree - 2; ++j)
            CHECK(std::abs(lhs.coeff(j)) < 1e-12 * scale);
    }
}

TEST_CASE("residual: exact kernel, reproducing kernel, size guard") {
    FiniteSection plain = build_section(zbar(), 200);
    SeriesEigenvector kernel = series_eigenvector(zbar(), 0.0, 400);
    CHECK(residual(plain, kernel) == 0.0);

    SeriesEigenvector rk = series_eigenvector(zbar(), 0.3, 400);
    CHECK(residual(plain, rk) < 1e-8);

    CHECK_THROWS_AS(residual(build_section(zbar(), 500), rk), SizeMismatch);
}

TEST_CASE("certificate soundness via the section oracle for (3,1)") {
    auto params = constructions::build_counterexample(3, 1);
    HarmonicSymbol s = params.symbol();
    FiniteSection section = build_section(s, 200);
    SeriesEigenvector v = series_eigenvector(s, 0.0, 400);
    CHECK(residual(section, v) < 1e-6);

    // the certified eigenvector is analytic up to |β| ≈ 1.0226, but its
    // Taylor coefficients carry a subexponential transient from the
    // order-3 zero of F at −β: at any practical M the measured window
    // ratio sits above 1, so the margin verdict reads GROWING even though
    // the true asymptotic ratio is 1/|β| < 1. The certificate is instead
    // validated by the residual above.
    CHECK(v.verdict == SeriesVerdict::Growing);
    CHECK(v.growth_ratio > 1.0);
    CHECK(v.growth_ratio < 1.0 / std::abs(params.beta) + 0.25);
}

TEST_CASE("series discriminator: resolvent points grow") {
    auto params = constructions::build_counterexample(3, 1);
    HarmonicSymbol s = params.symbol();
    // λ inside the isolation gap: winding 0 but the zero condition fails
    SeriesEigenvector v = series_eigenvector(s, Complex(4e-6, 0.0), 400);
    CHECK(v.verdict == SeriesVerdict::Growing);
}

TEST_CASE("section eigenvalues: nilpotent shifts are exactly zero") {
    std::vector<Complex> radial = section_eigenvalues(radial_shift_section(0.5, 60));
    for (const Complex& e : radial) CHECK(e == Complex(0.0));

    std::vector<Complex> plain = section_eigenvalues(build_section(zbar(), 50));
    for (const Complex& e : plain) CHECK(e == Complex(0.0));
}

TEST_CASE("section eigenvalues match a LAPACK-sourced oracle at N=12") {
    // frozen from numpy.linalg.eigvals on the same (3,1) section; beyond
    // N ≈ 30 the outer eigenvalues of these non-normal sections are too
    // ill-conditioned for any two backward-stable solvers to agree
    const Complex expected[] = {
        Complex(0.179278235178466, -0.019046107887671),
        Complex(0.369598385086885, -0.0197278631522479),
        Complex(0.702851696585819, -0.0153174298335832),
        Complex(1.21404112566314, -0.00802320625601827),
        Complex(1.9128167504612, 0.0010723925998889),
        Complex(2.78198761726099, 0.0111709003385931),
        Complex(3.78030905592989, 0.0216145616211186),
        Complex(4.84769518763332, 0.031828071824517),
        Complex(5.91220994440702, 0.0413024731250525),
        Complex(6.89855107245861, 0.0496035485811482),
        Complex(7.73809718640183, 0.0563987588989645),
        Complex(8.38252038642597, 0.0615176729696895),
    };
    auto params = constructions::build_counterexample(3, 1);
    std::vector<Complex> eigs = section_eigenvalues(build_section(params.symbol(), 12));
    REQUIRE(eigs.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) CHECK(std::abs(eigs[i] - expected[i]) < 1e-9);
}

TEST_CASE("section eigenvalues annihilate the characteristic determinant") {
    DetRng rng(99);
    for (int trial = 0; trial < 3; ++trial) {
        int degree = rng.uniform_int(1, 3);
        std::vector<Complex> coeffs;
        for (int i = 0; i <= degree; ++i) coeffs.push_back(rng.complex_in_box(1.0));
        HarmonicSymbol s{ComplexPoly(std::move(coeffs))};
        FiniteSection section = build_section(s, 8);
        std::vector<Complex> eigs = section_eigenvalues(section);
        REQUIRE(eigs.size() == 8);
        for (const Complex& lambda : eigs) {
            // |det(A − λI)|^(1/N) relative to the matrix scale
            auto a = section.dense();
            for (int i = 0; i < 8; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] -= lambda;
            Complex det = 1.0;
            for (int col = 0; col < 8; ++col) {
                int pivot = col;
                for (int r = col + 1; r < 8; ++r)
                    if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                        std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]))
                        pivot = r;
                if (pivot != col) {
                    std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(col)]);
                    det = -det;
                }
                Complex diag = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
                det *= diag;
                if (diag == 0.0) break;
                for (int r = col + 1; r < 8; ++r) {
                    Complex factor = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / diag;
                    for (int c2 = col; c2 < 8; ++c2)
                        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c2)] -=
                            factor * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c2)];
                }
            }
            double scale = section.frobenius_norm() + std::abs(lambda);
            CHECK(std::pow(std::abs(det), 1.0 / 8.0) < 1e-2 * scale);
        }
    }
}

TEST_CASE("every enumerated certificate passes the section oracle") {
    for (auto [k, n] : {std::pair{3, 1}, std::pair{4, 1}}) {
        auto params = constructions::build_counterexample(k, n);
        HarmonicSymbol s = params.symbol();
        spectral::LambdaSet ls = spectral::enumerate_lambda(s, 40);
        FiniteSection section = build_section(s, 200);
        for (const spectral::EigenCertificate& cert : ls.lambdas) {
            SeriesEigenvector v = series_eigenvector(s, cert.lambda, 400);
            CHECK(residual(section, v) < 1e-6);
        }
    }
}

TEST_CASE("the isolated eigenvalue attracts section eigenvalues") {
    auto params = constructions::build_counterexample(3, 1);
    std::vector<Complex> eigs = section_eigenvalues(build_section(params.symbol(), 400));
    double nearest = 1e300;
    for (const Complex& e : eigs) nearest = std::min(nearest, std::abs(e));
    CHECK(nearest < 5e-2);
}
