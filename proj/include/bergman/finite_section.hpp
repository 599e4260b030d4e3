#ifndef BERGMAN_FINITE_SECTION_HPP
#define BERGMAN_FINITE_SECTION_HPP

#include <string>
#include <vector>

#include "bergman/complex_poly.hpp"
#include "bergman/config.hpp"
#include "bergman/symbol.hpp"

namespace bergman::matrix {

/// N×N truncation of the operator in the orthonormal basis
/// e_n = √(n+1) z^n, stored banded. For the harmonic symbol z̄ + p the
/// nonzero band is one superdiagonal (entry(n−1, n) = √(n/(n+1))) plus
/// diagonals 0..k below (entry(n+m, n) = p_m √((n+1)/(n+m+1))).
class FiniteSection {
public:
    FiniteSection(int size, int sub_bands, std::string provenance);

    int size() const { return size_; }
    int sub_bands() const { return sub_bands_; }
    const std::string& provenance() const { return provenance_; }

    /// entry(row, col); zero outside the band.
    Complex entry(int row, int col) const;
    void set_entry(int row, int col, Complex value);

    /// y = A x restricted to the stored band (exact banded product).
    std::vector<Complex> apply(const std::vector<Complex>& x) const;

    std::vector<std::vector<Complex>> dense() const;
    double frobenius_norm() const;

private:
    // band d = row − col + 1 ∈ [0, sub_bands_ + 1]; bands_[d][col]
    int size_;
    int sub_bands_;
    std::string provenance_;
    std::vector<std::vector<Complex>> bands_;
};

/// Section of T_{z̄+p}; entry formulas derive from T_z̄ z^n = n/(n+1) z^{n−1}
/// and exact monomial multiplication. N ≥ 2.
FiniteSection build_section(const HarmonicSymbol& s, int size);

/// Section of the radial-argument symbol χ_{r𝔻}(z) e^{−i arg z}: a compact
/// backward weighted shift with weights w_n = √(n(n+1)) · 2 r^{2n+1} / (2n+1).
/// This operator is the stock example of a Bergman–Toeplitz operator that
/// fails Weyl's theorem (σ = ω = {0} yet π₀₀ = {0}).
FiniteSection radial_shift_section(double r, int size);

/// Why the radial shift matters; recorded alongside its outputs.
extern const char* const kRadialShiftWeylNote;

enum class SeriesVerdict { Decaying, Growing, Undecided };

const char* to_string(SeriesVerdict v);

/// Taylor coefficients of the eigenvector ODE solution with c_0 = 1:
/// c_{j+1} = −((j+2)/(j+1)) Σ_{m≤min(k,j)} q_m c_{j−m}, q = p − λ.
/// Coefficients are renormalized on overflow with the scale tracked in
/// log2; growth_ratio estimates the geometric ratio over the last window.
struct SeriesEigenvector {
    Complex lambda;
    std::vector<Complex> coeffs;  ///< c_0..c_M, possibly rescaled
    std::vector<double> scale_log2;  ///< per-coefficient log2 scale factor
    double growth_ratio = 0.0;
    SeriesVerdict verdict = SeriesVerdict::Undecided;

    /// True coefficient magnitude including the tracked scale.
    double magnitude(int j) const;
};

/// Runs the recurrence to length M (≥ 50); UNDECIDED retries once at 2M.
SeriesEigenvector series_eigenvector(const HarmonicSymbol& s, Complex lambda, int length,
                                     const Config& config = {});

/// ‖(A − λI)ĉ‖₂ / ‖ĉ‖₂ on rows 0..N−k−1, with ĉ_n = c_n/√(n+1) the
/// orthonormal-basis coordinates of the series, normalized. Requires
/// N ≤ M − k (SizeMismatch otherwise).
double residual(const FiniteSection& section, const SeriesEigenvector& v);

/// All N section eigenvalues by complex shifted-QR on the Hessenberg
/// form, ordered by (re, im). Triangular sections short-circuit to their
/// diagonal. Intended for qualitative spectral pictures only; finite
/// sections may pollute. N ≤ 2000.
std::vector<Complex> section_eigenvalues(const FiniteSection& section, const Config& config = {});

}  // namespace bergman::matrix

#endif
