#include "bergman/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>

#include "bergman/errors.hpp"

namespace bergman::spectral {

const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::Essential: return "ESSENTIAL";
        case PointClass::Resolvent: return "RESOLVENT";
        case PointClass::FilledWinding: return "FILLED_WINDING";
        case PointClass::EigenRegionIndexPositive: return "EIGEN_REGION_INDEX_POSITIVE";
        case PointClass::IsolatedEigen: return "ISOLATED_EIGEN";
        case PointClass::Ambiguous: return "AMBIGUOUS";
    }
    return "?";
}

Analyzer::Analyzer(HarmonicSymbol symbol, Config config)
    : symbol_(std::move(symbol)), config_(config) {
    curve_ = sample_curve(config_.arg_samples);
}

std::vector<Complex> Analyzer::sample_curve(int count) const {
    std::vector<Complex> out(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        double theta = 2.0 * std::numbers::pi * j / count;
        out[static_cast<std::size_t>(j)] = symbol_.eval(std::polar(1.0, theta));
    }
    return out;
}

ComplexPoly Analyzer::f_lambda(Complex lambda) const {
    std::vector<Complex> c(static_cast<std::size_t>(symbol_.degree()) + 2, Complex(0.0));
    c[0] = 1.0;
    for (int i = 0; i <= symbol_.degree(); ++i) c[static_cast<std::size_t>(i) + 1] = symbol_.p.coeff(i);
    c[1] -= lambda;
    return ComplexPoly(std::move(c));
}

Analyzer::WindingInternal Analyzer::root_count(Complex lambda) const {
    DiskCount dc = count_in_disk(f_lambda(lambda), config_);
    return {dc.inside, dc.on_circle};
}

// Winding number of the closed polygon through `samples` about `lambda`,
// by signed horizontal-ray crossings. This is the discrete total argument
// variation of the sampled curve, evaluated without transcendentals.
int Analyzer::polygon_winding(const std::vector<Complex>& samples, Complex lambda) const {
    int wind = 0;
    const std::size_t n = samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex& a = samples[i];
        const Complex& b = samples[(i + 1) % n];
        double cross = (b.real() - a.real()) * (lambda.imag() - a.imag()) -
                       (b.imag() - a.imag()) * (lambda.real() - a.real());
        if (a.imag() <= lambda.imag()) {
            if (b.imag() > lambda.imag() && cross > 0.0) ++wind;
        } else {
            if (b.imag() <= lambda.imag() && cross < 0.0) --wind;
        }
    }
    return wind;
}

WindingResult Analyzer::winding(Complex lambda) const {
    WindingInternal rc = root_count(lambda);
    WindingResult out{rc.inside - 1, rc.on_circle};
    if (out.on_curve) return out;

    int arg_wind = polygon_winding(curve_, lambda);
    if (arg_wind == out.w) return out;

    // near the curve the polygon may sag across λ; double the sampling
    for (int count = 2 * config_.arg_samples; count <= config_.max_arg_samples; count *= 2) {
        arg_wind = polygon_winding(sample_curve(count), lambda);
        if (arg_wind == out.w) return out;
    }
    throw CrossCheckMismatch("winding: root count gives " + std::to_string(out.w) +
                             ", argument variation gives " + std::to_string(arg_wind) +
                             " at lambda=(" + std::to_string(lambda.real()) + "," +
                             std::to_string(lambda.imag()) + ")");
}

bool Analyzer::essential_membership(Complex lambda) const {
    return root_count(lambda).on_circle;
}

EigenOutcome Analyzer::eigen_test_unchecked(Complex lambda, const RootSet& f_roots) const {
    EigenOutcome out;
    const ComplexPoly p_deriv = symbol_.p.derivative();

    int inside_count = 0;
    for (const Root& r : f_roots.roots)
        if (r.position == DiskPosition::Inside) inside_count += r.multiplicity;

    EigenCertificate cert;
    cert.lambda = lambda;
    cert.winding = inside_count - 1;

    if (inside_count == 0) {
        cert.branch = EigenBranch::NoZeros;
        out.status = EigenStatus::Certificate;
        out.certificate = std::move(cert);
        return out;
    }

    cert.branch = EigenBranch::SimpleZeros;
    const ComplexPoly f = f_lambda(lambda);
    const double f_scale = f.coeff_scale();
    for (const Root& r : f_roots.roots) {
        if (r.position != DiskPosition::Inside) continue;
        if (r.multiplicity > 1) {
            out.status = EigenStatus::NotEigenvalue;
            out.failing_zero = r.location;
            out.reason = "multiple in-disk zero of F_lambda";
            return out;
        }
        Complex v = r.location * r.location * p_deriv.eval(r.location);
        if (std::abs(v - 1.0) < config_.indeterminacy_band) {
            out.status = EigenStatus::Indeterminate;
            out.failing_zero = r.location;
            out.reason = "z^2 p'(z) within indeterminacy band of 1; matching n would exceed n_cap";
            return out;
        }
        Complex n_estimate = (2.0 - v) / (v - 1.0);
        long n = std::lround(n_estimate.real());
        n = std::clamp(n, 0L, static_cast<long>(config_.n_cap));
        double condition_residual = std::abs(v - Complex(static_cast<double>(n + 2) / static_cast<double>(n + 1)));
        if (condition_residual > config_.eigen_condition_tol) {
            out.status = EigenStatus::NotEigenvalue;
            out.failing_zero = r.location;
            out.reason = "zero condition fails: |z^2 p'(z) - (n+2)/(n+1)| = " +
                         std::to_string(condition_residual) + " at nearest n = " + std::to_string(n);
            return out;
        }
        CertifiedZero cz;
        cz.z = r.location;
        cz.n = static_cast<int>(n);
        cz.zero_residual = std::abs(f.eval(r.location)) / f_scale;
        cz.condition_residual = condition_residual;
        cert.zeros.push_back(cz);
    }
    out.status = EigenStatus::Certificate;
    out.certificate = std::move(cert);
    return out;
}

EigenOutcome Analyzer::eigen_test(Complex lambda) const {
    RootSet f_roots;
    ComplexPoly f = f_lambda(lambda);
    if (f.degree() >= 1) f_roots = find_roots(f, config_);
    for (const Root& r : f_roots.roots)
        if (r.position == DiskPosition::OnCircle)
            throw PreconditionViolated("eigen_test: lambda on or too close to the essential curve");
    return eigen_test_unchecked(lambda, f_roots);
}

LambdaSet Analyzer::enumerate_lambda(int n_max) const {
    LambdaSet out;
    if (symbol_.degree() == 0) {
        // z^2 p' vanishes identically; (n+2)/(n+1) ∈ (1,2] is never reached
        out.complete = true;
        out.completeness_note = "p constant: z^2 p'(z) = 0 has no solutions";
        return out;
    }

    const ComplexPoly zzpd = symbol_.p.derivative().shifted_up(2);  // z^2 p'(z)

    struct Candidate {
        Complex lambda;
        EigenCertificate cert;
    };
    std::vector<std::vector<Candidate>> per_n(static_cast<std::size_t>(n_max) + 1);

    auto handle_n = [&](int n) {
        double target = static_cast<double>(n + 2) / static_cast<double>(n + 1);
        ComplexPoly g = zzpd - ComplexPoly::constant(target);
        RootSet rs = find_roots(g, config_);
        for (const Root& r : rs.roots) {
            if (r.position != DiskPosition::Inside) continue;
            Complex z = r.location;
            Complex lambda = 1.0 / z + symbol_.p.eval(z);
            if (essential_membership(lambda)) continue;
            try {
                WindingResult w = winding(lambda);
                if (w.w != 0) continue;
                EigenOutcome eo = eigen_test(lambda);
                if (eo.status != EigenStatus::Certificate) continue;
                per_n[static_cast<std::size_t>(n)].push_back({lambda, *eo.certificate});
            } catch (const CrossCheckMismatch&) {
                continue;  // numerically on the curve: refused, not in Λ
            } catch (const PreconditionViolated&) {
                continue;
            }
        }
    };

    int workers = config_.threads > 0 ? config_.threads
                                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, n_max + 1));
    if (workers == 1) {
        for (int n = 0; n <= n_max; ++n) handle_n(n);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (int n = t; n <= n_max; n += workers) handle_n(n);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    // ordered merge with deduplication, first occurrence in n order wins
    for (int n = 0; n <= n_max; ++n) {
        for (const Candidate& cand : per_n[static_cast<std::size_t>(n)]) {
            bool seen = false;
            for (const EigenCertificate& kept : out.lambdas)
                if (std::abs(kept.lambda - cand.lambda) <= config_.dedup_tol) {
                    seen = true;
                    break;
                }
            if (!seen) out.lambdas.push_back(cand.cert);
        }
    }

    // tail exclusion via the limit polynomial z^2 p'(z) = 1: every in-disk
    // limit root is automatically a double zero of F at its λ, so the tail
    // candidates inherit winding ≥ 1 once the doubled zero stays inside
    const double tail_margin = 1e-6;
    ComplexPoly g_limit = zzpd - ComplexPoly::constant(1.0);
    out.complete = true;
    out.completeness_note = "all in-disk roots of z^2 p'(z) - 1 lead to winding >= 1";
    try {
        RootSet limit_roots = find_roots(g_limit, config_);
        for (const Root& r : limit_roots.roots) {
            if (r.position == DiskPosition::OnCircle) {
                out.complete = false;
                out.completeness_note = "limit root of z^2 p'(z) - 1 on the unit circle";
                break;
            }
            if (r.position != DiskPosition::Inside) continue;
            if (std::abs(r.location) > 1.0 - tail_margin) {
                out.complete = false;
                out.completeness_note = "limit root too close to the unit circle";
                break;
            }
            Complex lam = 1.0 / r.location + symbol_.p.eval(r.location);
            DiskCount dc = count_in_disk(f_lambda(lam), config_);
            if (dc.on_circle || dc.inside < 2) {
                out.complete = false;
                out.completeness_note = "limit candidate fails the two-zero exclusion";
                break;
            }
        }
    } catch (const NonConvergence&) {
        out.complete = false;
        out.completeness_note = "limit polynomial root finding did not converge";
    }
    return out;
}

Classification Analyzer::classify_point(Complex lambda, int n_max) const {
    Classification out;
    (void)n_max;
    WindingResult w;
    try {
        w = winding(lambda);
    } catch (const Error& e) {
        out.kind = PointClass::Ambiguous;
        out.detail = e.what();
        return out;
    }
    out.winding = w.w;
    if (w.on_curve) {
        out.kind = PointClass::Essential;
        return out;
    }
    if (w.w >= 1) {
        out.kind = PointClass::FilledWinding;
        return out;
    }
    if (w.w == -1) {
        out.kind = PointClass::EigenRegionIndexPositive;
        return out;
    }
    EigenOutcome eo;
    try {
        eo = eigen_test(lambda);
    } catch (const Error& e) {
        out.kind = PointClass::Ambiguous;
        out.detail = e.what();
        return out;
    }
    switch (eo.status) {
        case EigenStatus::Certificate:
            out.kind = PointClass::IsolatedEigen;
            out.certificate = eo.certificate;
            break;
        case EigenStatus::NotEigenvalue:
            out.kind = PointClass::Resolvent;
            out.detail = eo.reason;
            break;
        case EigenStatus::Indeterminate:
            out.kind = PointClass::Ambiguous;
            out.detail = eo.reason;
            break;
    }
    return out;
}

InvertibilityWitness Analyzer::invertible() const {
    InvertibilityWitness out;
    ComplexPoly f0 = f_lambda(0.0);  // 1 + z p(z)
    RootSet rs;
    if (f0.degree() >= 1) rs = find_roots(f0, config_);

    for (const Root& r : rs.roots)
        if (r.position == DiskPosition::OnCircle) {
            out.verdict = false;
            out.clause = "1 + z p(z) has a zero on the unit circle";
            out.zero = r.location;
            return out;
        }

    int inside_mult = 0;
    const Root* inside_root = nullptr;
    for (const Root& r : rs.roots)
        if (r.position == DiskPosition::Inside) {
            inside_mult += r.multiplicity;
            inside_root = &r;
        }
    if (inside_mult != 1) {
        out.verdict = false;
        out.clause = "1 + z p(z) has " + std::to_string(inside_mult) +
                     " in-disk zeros (need exactly one simple zero)";
        return out;
    }
    out.zero = inside_root->location;

    if (symbol_.degree() <= 2) {
        // Eq. (1) cannot bind for degree ≤ 2; the unique simple zero settles it
        out.verdict = true;
        out.clause = "exactly one simple in-disk zero; degree <= 2 fast path";
        return out;
    }

    Complex z0 = inside_root->location;
    Complex v = z0 * z0 * symbol_.p.derivative().eval(z0);
    out.condition_value = v;
    if (std::abs(v - 1.0) < config_.indeterminacy_band)
        throw Indeterminate("invertible: z0^2 p'(z0) within the indeterminacy band of 1");
    long nearest = std::lround(((2.0 - v) / (v - 1.0)).real());
    for (long n = std::max(0L, nearest - 1); n <= std::min(static_cast<long>(config_.n_cap), nearest + 1); ++n) {
        double target = static_cast<double>(n + 2) / static_cast<double>(n + 1);
        if (std::abs(v - Complex(target)) <= config_.eigen_condition_tol) {
            out.verdict = false;
            out.matched_n = static_cast<int>(n);
            out.clause = "Eq. (1) satisfied at n = " + std::to_string(n);
            return out;
        }
    }
    out.verdict = true;
    out.clause = "exactly one simple in-disk zero and Eq. (1) fails for all n";
    return out;
}

WeylReport Analyzer::weyl_report(int n_max) const {
    WeylReport out;
    out.essential_samples = curve_;
    LambdaSet ls = enumerate_lambda(n_max);
    out.pi00 = ls.lambdas;
    out.conditional_on_n_max = !ls.complete;
    out.omega_description =
        "omega = essential curve phi(unit circle) together with all lambda off the curve "
        "of nonzero winding; pi00 = Lambda";
    bool ok = true;
    for (const EigenCertificate& cert : out.pi00) {
        if (essential_membership(cert.lambda)) ok = false;
        WindingResult w = winding(cert.lambda);
        if (w.w != 0 || w.on_curve) ok = false;
    }
    out.holds = ok;
    return out;
}

HyponormalScreen Analyzer::hyponormal_screen(int samples) const {
    if (samples < 16) throw InvalidParams("hyponormal_screen: samples must be >= 16");
    HyponormalScreen out;
    const ComplexPoly pd = symbol_.p.derivative();
    auto modulus = [&](double theta) { return std::abs(pd.eval(std::polar(1.0, theta))); };

    double best_theta = 0.0, best = modulus(0.0);
    for (int i = 1; i < samples; ++i) {
        double theta = 2.0 * std::numbers::pi * i / samples;
        double m = modulus(theta);
        if (m < best) {
            best = m;
            best_theta = theta;
        }
    }
    // golden-section refinement on the bracketing arc
    double span = 2.0 * std::numbers::pi / samples;
    double a = best_theta - span, b = best_theta + span;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = modulus(x1), f2 = modulus(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = modulus(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = modulus(x2);
        }
    }
    out.min_modulus = std::min({best, f1, f2});
    out.verdict = out.min_modulus < 1.0 - config_.screen_margin ? HyponormalVerdict::NotHyponormal
                                                                : HyponormalVerdict::Inconclusive;
    return out;
}

ComplexPoly f_lambda(const HarmonicSymbol& s, Complex lambda) {
    return Analyzer(s).f_lambda(lambda);
}
WindingResult winding(const HarmonicSymbol& s, Complex lambda, const Config& config) {
    return Analyzer(s, config).winding(lambda);
}
bool essential_membership(const HarmonicSymbol& s, Complex lambda, const Config& config) {
    return Analyzer(s, config).essential_membership(lambda);
}
EigenOutcome eigen_test(const HarmonicSymbol& s, Complex lambda, const Config& config) {
    return Analyzer(s, config).eigen_test(lambda);
}
LambdaSet enumerate_lambda(const HarmonicSymbol& s, int n_max, const Config& config) {
    return Analyzer(s, config).enumerate_lambda(n_max);
}
Classification classify_point(const HarmonicSymbol& s, Complex lambda, int n_max, const Config& config) {
    return Analyzer(s, config).classify_point(lambda, n_max);
}
InvertibilityWitness invertible(const HarmonicSymbol& s, const Config& config) {
    return Analyzer(s, config).invertible();
}
WeylReport weyl_report(const HarmonicSymbol& s, int n_max, const Config& config) {
    return Analyzer(s, config).weyl_report(n_max);
}
HyponormalScreen hyponormal_screen(const HarmonicSymbol& s, int samples, const Config& config) {
    return Analyzer(s, config).hyponormal_screen(samples);
}

}  // namespace bergman::spectral
