#ifndef BERGMAN_SPECTRAL_HPP
#define BERGMAN_SPECTRAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "bergman/complex_poly.hpp"
#include "bergman/config.hpp"
#include "bergman/roots.hpp"
#include "bergman/symbol.hpp"

namespace bergman::spectral {

enum class EigenBranch { NoZeros, SimpleZeros };

/// One certified zero of F_λ: location, the recovered integer n from
/// z²p'(z) = (n+2)/(n+1), and the two residuals backing the claim.
struct CertifiedZero {
    Complex z;
    int n = 0;
    double zero_residual = 0.0;       ///< |F_λ(z)| / coeff scale
    double condition_residual = 0.0;  ///< |z²p'(z) − (n+2)/(n+1)|
};

/// Machine-checkable witness that λ is an eigenvalue: either F_λ has no
/// in-disk zeros, or every in-disk zero is simple and satisfies the
/// zero condition. winding = (#in-disk zeros of F_λ) − 1.
struct EigenCertificate {
    Complex lambda;
    EigenBranch branch = EigenBranch::NoZeros;
    std::vector<CertifiedZero> zeros;
    int winding = 0;
};

enum class EigenStatus { Certificate, NotEigenvalue, Indeterminate };

struct EigenOutcome {
    EigenStatus status = EigenStatus::NotEigenvalue;
    std::optional<EigenCertificate> certificate;
    std::string reason;                   ///< filled for the two negative statuses
    std::optional<Complex> failing_zero;  ///< the zero that broke the test, if any
};

struct WindingResult {
    int w = 0;
    bool on_curve = false;
};

enum class PointClass {
    Essential,
    Resolvent,
    FilledWinding,             ///< winding ≥ 1: in the spectrum, filled region
    EigenRegionIndexPositive,  ///< winding −1: open region of eigenvalues
    IsolatedEigen,
    Ambiguous,
};

const char* to_string(PointClass c);

struct Classification {
    PointClass kind = PointClass::Ambiguous;
    int winding = 0;
    std::optional<EigenCertificate> certificate;  ///< for IsolatedEigen
    std::string detail;
};

struct LambdaSet {
    std::vector<EigenCertificate> lambdas;
    bool complete = false;
    std::string completeness_note;
};

struct InvertibilityWitness {
    bool verdict = false;
    std::string clause;  ///< which clause decided, human-readable
    std::optional<Complex> zero;
    std::optional<Complex> condition_value;  ///< z₀²p'(z₀) when a zero exists
    std::optional<int> matched_n;            ///< n with Eq. (1) satisfied, when that kills it
};

struct WeylReport {
    std::vector<Complex> essential_samples;
    std::vector<EigenCertificate> pi00;
    bool holds = false;
    bool conditional_on_n_max = false;  ///< enumeration completeness not established
    std::string omega_description;
};

enum class HyponormalVerdict { NotHyponormal, Inconclusive };

struct HyponormalScreen {
    HyponormalVerdict verdict = HyponormalVerdict::Inconclusive;
    double min_modulus = 0.0;  ///< min over |z|=1 of |p'(z)| after refinement
};

/// The theorem engine bound to one symbol and one configuration. All
/// methods are const and the object is immutable after construction, so
/// concurrent use is safe. Construction precomputes the curve polygon
/// used by the argument-variation winding cross-check.
class Analyzer {
public:
    Analyzer(HarmonicSymbol symbol, Config config = {});

    const HarmonicSymbol& symbol() const { return symbol_; }
    const Config& config() const { return config_; }
    const std::vector<Complex>& curve_samples() const { return curve_; }

    /// F_λ = 1 + z(p(z) − λ); degree k+1, constant term exactly 1.
    ComplexPoly f_lambda(Complex lambda) const;

    /// Root-count winding (in-disk zeros of F_λ minus one), cross-checked
    /// against the discrete total argument variation of φ(e^{iθ}) − λ when
    /// λ is off the curve. Throws CrossCheckMismatch if the two methods
    /// disagree after sample doubling.
    WindingResult winding(Complex lambda) const;

    /// λ ∈ φ(∂𝔻) up to the boundary band (F_λ has an on-circle root).
    bool essential_membership(Complex lambda) const;

    /// The discrete total argument variation of φ(e^{iθ}) − λ alone, at
    /// the configured sample count, the second route of the winding
    /// cross-check, exposed for independent validation.
    int argument_winding(Complex lambda) const { return polygon_winding(curve_, lambda); }

    /// The zero-condition eigenvalue test. Requires λ off the essential
    /// curve (throws PreconditionViolated otherwise).
    EigenOutcome eigen_test(Complex lambda) const;

    /// Λ enumeration: candidate zeros from z²p'(z) = (n+2)/(n+1) for
    /// n = 0..n_max, mapped through λ = 1/z + p(z), kept when certified
    /// with winding 0. `complete` reports whether the limit-polynomial
    /// exclusion covers all n > n_max.
    LambdaSet enumerate_lambda(int n_max) const;

    Classification classify_point(Complex lambda, int n_max) const;

    /// Invertibility via the zero-condition characterization; the Eq.-(1)
    /// clause is skipped for degree ≤ 2 where it cannot bind. Throws
    /// Indeterminate when z₀²p'(z₀) is inside the indeterminacy band.
    InvertibilityWitness invertible() const;

    WeylReport weyl_report(int n_max) const;

    /// Necessary-condition hyponormality screen: min |p'| on the circle.
    HyponormalScreen hyponormal_screen(int samples) const;

private:
    struct WindingInternal {
        int inside = 0;
        bool on_circle = false;
    };
    WindingInternal root_count(Complex lambda) const;
    int polygon_winding(const std::vector<Complex>& samples, Complex lambda) const;
    std::vector<Complex> sample_curve(int count) const;
    EigenOutcome eigen_test_unchecked(Complex lambda, const RootSet& f_roots) const;

    HarmonicSymbol symbol_;
    Config config_;
    std::vector<Complex> curve_;
};

/// Free-function forms for one-off queries (each builds an Analyzer).
ComplexPoly f_lambda(const HarmonicSymbol& s, Complex lambda);
WindingResult winding(const HarmonicSymbol& s, Complex lambda, const Config& config = {});
bool essential_membership(const HarmonicSymbol& s, Complex lambda, const Config& config = {});
EigenOutcome eigen_test(const HarmonicSymbol& s, Complex lambda, const Config& config = {});
LambdaSet enumerate_lambda(const HarmonicSymbol& s, int n_max, const Config& config = {});
Classification classify_point(const HarmonicSymbol& s, Complex lambda, int n_max,
                              const Config& config = {});
InvertibilityWitness invertible(const HarmonicSymbol& s, const Config& config = {});
WeylReport weyl_report(const HarmonicSymbol& s, int n_max, const Config& config = {});
HyponormalScreen hyponormal_screen(const HarmonicSymbol& s, int samples, const Config& config = {});

}  // namespace bergman::spectral

#endif
