#include "bergman/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bergman/det_rng.hpp"
#include "bergman/errors.hpp"

namespace bergman::constructions {

namespace {

Complex integer_power(Complex base, int exponent) {
    Complex out = 1.0;
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

// (z + β)^k expanded, ascending.
ComplexPoly binomial_shift(Complex beta, int k) {
    ComplexPoly out = ComplexPoly::constant(1.0);
    ComplexPoly factor{{beta, 1.0}};
    for (int i = 0; i < k; ++i) out = out * factor;
    return out;
}

}  // namespace

LimitRoots limit_roots(int k, Complex beta, const ComplexPoly& p) {
    LimitRoots out;
    Complex beta_k = integer_power(beta, k);
    Complex disc = std::sqrt(Complex(static_cast<double>(k - 1) * (k - 1)) +
                             4.0 * static_cast<double>(k) * beta_k * beta);
    double km1 = static_cast<double>(k - 1);
    Complex denom = 2.0 * static_cast<double>(k) * beta_k;
    out.z_inf = -(disc + km1) / denom;
    out.w_inf = (disc - km1) / denom;
    out.lambda_inf = 1.0 / out.z_inf + p.eval(out.z_inf);
    out.mu_inf = 1.0 / out.w_inf + p.eval(out.w_inf);

    // both closed forms must solve z^2 p'(z) = 1
    ComplexPoly zzpd = p.derivative().shifted_up(2);
    double scale = std::max(1.0, zzpd.coeff_scale());
    for (Complex z : {out.z_inf, out.w_inf}) {
        double res = std::abs(zzpd.eval(z) - 1.0) / scale;
        if (res > 1e-9)
            throw ValidationFailed("limit_roots: |z^2 p'(z) - 1| = " + std::to_string(res) +
                                   " at a closed-form root");
    }

    // λ_inf and μ_inf must make F have a multiple root at z_inf / w_inf
    for (auto [lam, z] : {std::pair{out.lambda_inf, out.z_inf}, std::pair{out.mu_inf, out.w_inf}}) {
        std::vector<Complex> fc(static_cast<std::size_t>(p.degree()) + 2, Complex(0.0));
        fc[0] = 1.0;
        for (int i = 0; i <= p.degree(); ++i) fc[static_cast<std::size_t>(i) + 1] = p.coeff(i);
        fc[1] -= lam;
        ComplexPoly f(std::move(fc));
        double fs = f.coeff_scale();
        auto [fv, fd] = f.eval_with_derivative(z);
        if (std::abs(fv) / fs > 1e-8 || std::abs(fd) / fs > 1e-8)
            throw ValidationFailed("limit_roots: F or F' not vanishing at the limit root");
    }
    return out;
}

ConstructionParams build_counterexample(int k, int n, const Config& config) {
    if (k < 3) throw InvalidParams("build_counterexample: k must be an integer greater than 2");
    if (n < 1) throw InvalidParams("build_counterexample: n must be a positive integer");

    ConstructionParams out;
    out.k = k;
    out.n = n;

    // principal branch throughout: β = exp(−Log(w)/(k+1))
    Complex w = 1.0 - std::pow(1.0 / static_cast<double>(n + 1), 1.0 / k) *
                          std::polar(1.0, std::numbers::pi / k);
    out.beta = std::exp(-std::log(w) / static_cast<double>(k + 1));
    Complex beta_k = integer_power(out.beta, k);
    out.alpha = -1.0 / beta_k;

    // (z − α)(z + β)^k − 1 has an exactly vanishing constant term; p is the
    // index shift down by one
    ComplexPoly product = ComplexPoly{{-out.alpha, 1.0}} * binomial_shift(out.beta, k);
    ComplexPoly shifted = product - ComplexPoly::constant(1.0);
    out.residuals.constant_term = std::abs(shifted.coeff(0));
    out.p = shifted.divided_by_z(1e-12);

    if (std::abs(out.beta) <= 1.0)
        throw ValidationFailed("build_counterexample: |beta| <= 1 (branch choice bug)");
    if (std::abs(out.alpha) >= 1.0)
        throw ValidationFailed("build_counterexample: |alpha| >= 1 (branch choice bug)");

    // coefficient-wise identity 1 + z p(z) = (z − α)(z + β)^k
    ComplexPoly reconstructed = out.p.shifted_up(1) + ComplexPoly::constant(1.0);
    double rel = 0.0;
    double scale = product.coeff_scale();
    for (int i = 0; i <= std::max(reconstructed.degree(), product.degree()); ++i)
        rel = std::max(rel, std::abs(reconstructed.coeff(i) - product.coeff(i)) / scale);
    out.residuals.identity_coeffwise = rel;
    if (rel > 1e-10)
        throw ValidationFailed("build_counterexample: identity residual " + std::to_string(rel));

    Complex v = out.alpha * out.alpha * out.p.derivative().eval(out.alpha);
    out.residuals.alpha_condition =
        std::abs(v - Complex(static_cast<double>(n + 2) / static_cast<double>(n + 1)));
    if (out.residuals.alpha_condition > 1e-10)
        throw ValidationFailed("build_counterexample: alpha condition residual " +
                               std::to_string(out.residuals.alpha_condition));

    LimitRoots lim = limit_roots(k, out.beta, out.p);
    out.z_inf = lim.z_inf;
    out.w_inf = lim.w_inf;
    out.lambda_inf = lim.lambda_inf;
    out.mu_inf = lim.mu_inf;
    out.c_k = 1.0 / (2.0 * k * std::pow(std::abs(out.beta), k));

    ComplexPoly zzpd = out.p.derivative().shifted_up(2);
    double zzpd_scale = std::max(1.0, zzpd.coeff_scale());
    out.residuals.z_inf_condition = std::abs(zzpd.eval(out.z_inf) - 1.0) / zzpd_scale;
    out.residuals.w_inf_condition = std::abs(zzpd.eval(out.w_inf) - 1.0) / zzpd_scale;

    spectral::Analyzer analyzer(out.symbol(), config);
    double worst = 0.0;
    for (auto [lam, z] : {std::pair{out.lambda_inf, out.z_inf}, std::pair{out.mu_inf, out.w_inf}}) {
        ComplexPoly f = analyzer.f_lambda(lam);
        double fs = f.coeff_scale();
        auto [fv, fd] = f.eval_with_derivative(z);
        worst = std::max({worst, std::abs(fv) / fs, std::abs(fd) / fs});
    }
    out.residuals.f_multiple_zero = worst;

    if (out.z_inf == out.w_inf)
        throw ValidationFailed("build_counterexample: z_inf equals w_inf");
    if (n == 1) {
        for (double m : {std::abs(out.z_inf), std::abs(out.w_inf)})
            if (m < out.c_k || m >= 49.0 / 50.0)
                throw ValidationFailed("build_counterexample: limit-root modulus " +
                                       std::to_string(m) + " outside [c_k, 49/50)");
    }
    return out;
}

Certificate verify_construction(const ConstructionParams& params, const Config& config) {
    Certificate out;
    auto add = [&](Check c) {
        if (!c.passed && !c.skipped) {
            out.all_passed = false;
            throw ValidationFailed("verify_construction: check '" + c.name +
                                   "' failed with residual " + std::to_string(c.residual));
        }
        out.checks.push_back(std::move(c));
    };

    // (a) z^2 p'(z) − 1 = (z+β)^{k−1} (k z² + ((k−1)/β^k) z − 1/β^{k−1})
    {
        Check c;
        c.name = "factorization_identity";
        ComplexPoly lhs = params.p.derivative().shifted_up(2) - ComplexPoly::constant(1.0);
        Complex beta_k = integer_power(params.beta, params.k);
        Complex beta_km1 = integer_power(params.beta, params.k - 1);
        ComplexPoly quad{{-1.0 / beta_km1, static_cast<double>(params.k - 1) / beta_k,
                          static_cast<double>(params.k)}};
        ComplexPoly rhs = binomial_shift(params.beta, params.k - 1) * quad;
        DetRng rng(config.seed);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            double r = std::sqrt(rng.uniform());
            Complex z = std::polar(r, rng.uniform(0.0, 2.0 * std::numbers::pi));
            Complex a = lhs.eval(z), b = rhs.eval(z);
            worst = std::max(worst, std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}));
        }
        c.residual = worst;
        c.passed = worst < 1e-9;
        add(c);
    }

    spectral::Analyzer analyzer(params.symbol(), config);

    // (b) eigen_test at 0: single zero α with the construction's n
    {
        Check c;
        c.name = "eigen_certificate_at_zero";
        spectral::EigenOutcome eo = analyzer.eigen_test(0.0);
        if (eo.status == spectral::EigenStatus::Certificate &&
            eo.certificate->branch == spectral::EigenBranch::SimpleZeros &&
            eo.certificate->zeros.size() == 1 && eo.certificate->zeros[0].n == params.n) {
            c.residual = std::abs(eo.certificate->zeros[0].z - params.alpha);
            c.passed = c.residual < 1e-8;
        }
        add(c);
    }

    // (c) winding 0 at the origin
    {
        Check c;
        c.name = "winding_zero_at_origin";
        spectral::WindingResult w = analyzer.winding(0.0);
        c.passed = (w.w == 0 && !w.on_curve);
        add(c);
    }

    // (d) modulus bounds, proved for n = 1 only
    {
        Check c;
        c.name = "limit_root_modulus_bounds";
        if (params.n != 1) {
            c.skipped = true;
            c.note = "bounds proved only for n = 1";
        } else {
            bool ok = true;
            for (double m : {std::abs(params.z_inf), std::abs(params.w_inf)})
                ok = ok && (params.c_k <= m && m < 49.0 / 50.0);
            c.passed = ok;
        }
        add(c);
    }
    return out;
}

IsolatedPoints isolated_points(const ConstructionParams& params, int n_max, const Config& config) {
    IsolatedPoints out;
    spectral::Analyzer analyzer(params.symbol(), config);
    out.lambda = analyzer.enumerate_lambda(n_max);

    // empirical tail threshold: beyond it, every
    // candidate keeps at least two in-disk zeros of F_λ
    ComplexPoly zzpd = params.p.derivative().shifted_up(2);
    std::vector<bool> all_two(static_cast<std::size_t>(n_max) + 1, true);
    for (int n = 0; n <= n_max; ++n) {
        double target = static_cast<double>(n + 2) / static_cast<double>(n + 1);
        RootSet rs = find_roots(zzpd - ComplexPoly::constant(target), config);
        for (const Root& r : rs.roots) {
            if (r.position != DiskPosition::Inside) continue;
            Complex lambda = 1.0 / r.location + params.p.eval(r.location);
            DiskCount dc = count_in_disk(analyzer.f_lambda(lambda), config);
            if (dc.inside < 2) all_two[static_cast<std::size_t>(n)] = false;
        }
    }
    out.n_detect = 0;
    for (int n = n_max; n >= 0; --n)
        if (!all_two[static_cast<std::size_t>(n)]) {
            out.n_detect = n;
            break;
        }

    // isolation gap: distance from 0 to the nearest other spectrum point.
    // Any winding ≠ 0 region is bounded by the essential curve, so the
    // curve distance covers it; a radial probe double-checks.
    double gap = std::numeric_limits<double>::infinity();
    for (const Complex& c : analyzer.curve_samples()) gap = std::min(gap, std::abs(c));
    for (const spectral::EigenCertificate& cert : out.lambda.lambdas) {
        double d = std::abs(cert.lambda);
        if (d > config.dedup_tol) gap = std::min(gap, d);
    }
    for (int ring = 1; ring <= 7; ++ring) {
        double radius = gap * ring / 8.0;
        for (int i = 0; i < 32; ++i) {
            Complex probe = std::polar(radius, 2.0 * std::numbers::pi * i / 32.0);
            spectral::Classification cls = analyzer.classify_point(probe, n_max);
            if (cls.kind != spectral::PointClass::Resolvent) gap = std::min(gap, radius);
        }
    }
    out.gap_radius = gap;
    if (!(out.gap_radius > 0.0))
        throw ValidationFailed("isolated_points: gap radius collapsed to zero; 0 not isolated");
    return out;
}

}  // namespace bergman::constructions
