#ifndef BERGMAN_COMPLEX_POLY_HPP
#define BERGMAN_COMPLEX_POLY_HPP

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;

/// Dense complex polynomial, ascending coefficients: coeffs[i] is the
/// coefficient of z^i. The carrier for p, F_λ = 1 + z(p − λ) and
/// z²p'(z) − c everywhere in the library.
///
/// Normalization trims trailing coefficients that are exactly zero (no
/// tolerance), so degree() is always the index of the last stored
/// coefficient and the zero polynomial is stored as {0}.
class ComplexPoly {
public:
    ComplexPoly() : coeffs_{Complex(0.0)} {}
    ComplexPoly(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { trim(); }
    explicit ComplexPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static ComplexPoly constant(Complex c) { return ComplexPoly{{c}}; }

    /// ∏ (z − r_i), expanded by repeated convolution.
    static ComplexPoly from_roots(std::span<const Complex> roots, Complex leading = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    Complex leading() const { return coeffs_.back(); }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    /// Coefficient of z^i; zero beyond the stored degree.
    Complex coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : Complex(0.0);
    }

    /// Largest coefficient modulus; the scale used by relative residuals.
    double coeff_scale() const;

    Complex eval(Complex z) const;

    /// P(z) and P'(z) in a single Horner pass; exact for degree ≤ 1.
    struct ValueAndDerivative {
        Complex value;
        Complex derivative;
    };
    ValueAndDerivative eval_with_derivative(Complex z) const;

    /// degree(derivative) = max(degree − 1, 0).
    ComplexPoly derivative() const;

    ComplexPoly operator+(const ComplexPoly& rhs) const;
    ComplexPoly operator-(const ComplexPoly& rhs) const;
    ComplexPoly operator*(const ComplexPoly& rhs) const;
    ComplexPoly operator*(Complex s) const;

    bool operator==(const ComplexPoly& rhs) const { return coeffs_ == rhs.coeffs_; }

    /// Multiply by z^m (index shift up).
    ComplexPoly shifted_up(int m) const;

    /// Divide by z after asserting the constant term vanishes to
    /// `tol` absolute; exact index shift down.
    ComplexPoly divided_by_z(double tol = 1e-12) const;

private:
    void trim();
    std::vector<Complex> coeffs_;
};

}  // namespace bergman

#endif
