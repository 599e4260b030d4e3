#ifndef BERGMAN_CONSTRUCTIONS_HPP
#define BERGMAN_CONSTRUCTIONS_HPP

#include <string>
#include <vector>

#include "bergman/complex_poly.hpp"
#include "bergman/config.hpp"
#include "bergman/spectral.hpp"
#include "bergman/symbol.hpp"

namespace bergman::constructions {

/// The degree-k counterexample family: β = [1 − (1/(n+1))^{1/k} e^{iπ/k}]^{−1/(k+1)}
/// (principal branch), α = −β^{−k}, p = ((z−α)(z+β)^k − 1)/z. The symbol
/// z̄ + p has 0 as an isolated spectral point; z_inf/w_inf are the in-disk
/// roots of the limit equation z²p'(z) = 1 in closed form.
struct ConstructionParams {
    int k = 0;
    int n = 0;
    Complex beta;
    Complex alpha;
    ComplexPoly p;
    Complex z_inf;
    Complex w_inf;
    Complex lambda_inf;
    Complex mu_inf;
    double c_k = 0.0;  ///< 1/(2k|β|^k), lower modulus bound for the limit roots

    HarmonicSymbol symbol() const { return HarmonicSymbol{p}; }

    struct Residuals {
        double constant_term = 0.0;       ///< of (z−α)(z+β)^k − 1 before the z division
        double identity_coeffwise = 0.0;  ///< relative, 1 + z·p vs (z−α)(z+β)^k
        double alpha_condition = 0.0;     ///< |α²p'(α) − (n+2)/(n+1)|
        double z_inf_condition = 0.0;     ///< scaled |z²p'(z) − 1| at z_inf
        double w_inf_condition = 0.0;
        double f_multiple_zero = 0.0;     ///< max of scaled |F|, |F'| at z_inf / w_inf
    } residuals;
};

struct LimitRoots {
    Complex z_inf;
    Complex w_inf;
    Complex lambda_inf;
    Complex mu_inf;
};

/// Closed forms from the limit factorization; validated by the residual
/// checks |z²p'(z) − 1| < 1e−9 and the multiple-zero identities for
/// F at λ_inf / μ_inf. Throws ValidationFailed on a residual breach
/// (which would signal a branch-choice bug).
LimitRoots limit_roots(int k, Complex beta, const ComplexPoly& p);

/// Build and fully validate the (k, n) construction. k ≥ 3, n ≥ 1
/// (InvalidParams otherwise); every ConstructionParams invariant is
/// checked before returning (ValidationFailed on breach).
ConstructionParams build_counterexample(int k, int n, const Config& config = {});

struct Check {
    std::string name;
    bool passed = false;
    bool skipped = false;
    double residual = 0.0;
    std::string note;
};

struct Certificate {
    std::vector<Check> checks;
    bool all_passed = true;
};

/// The four verification checks: (a) the factorization identity of
/// z²p'(z) − 1 at 100 seeded random in-disk points, (b) eigen_test(0)
/// certifies the single zero α with the construction's n, (c) winding 0
/// at the origin, (d) the modulus bounds on z_inf/w_inf (n = 1 only;
/// skipped with a note otherwise). Throws ValidationFailed naming the
/// first failing check.
Certificate verify_construction(const ConstructionParams& params, const Config& config = {});

struct IsolatedPoints {
    spectral::LambdaSet lambda;
    int n_detect = -1;      ///< least n with the two-zero exclusion holding for all later n
    double gap_radius = 0.0;  ///< distance from 0 to the nearest other spectrum point
};

/// Λ enumeration plus the empirical tail witness: for every n > n_detect
/// up to n_max each candidate λ has ≥ 2 in-disk zeros of F_λ, and the
/// certified isolation gap around 0. Throws ValidationFailed when the
/// gap collapses to zero.
IsolatedPoints isolated_points(const ConstructionParams& params, int n_max, const Config& config = {});

}  // namespace bergman::constructions

#endif
