#include "bergman/complex_poly.hpp"

#include <algorithm>
#include <cmath>

#include "bergman/errors.hpp"

namespace bergman {

void ComplexPoly::trim() {
    if (coeffs_.empty()) {
        coeffs_.assign(1, Complex(0.0));
        return;
    }
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

ComplexPoly ComplexPoly::from_roots(std::span<const Complex> roots, Complex leading) {
    std::vector<Complex> c{leading};
    for (Complex r : roots) {
        c.push_back(0.0);
        for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
        c[0] = -r * c[0];
    }
    return ComplexPoly(std::move(c));
}

double ComplexPoly::coeff_scale() const {
    double s = 0.0;
    for (const Complex& c : coeffs_) s = std::max(s, std::abs(c));
    return s;
}

Complex ComplexPoly::eval(Complex z) const {
    Complex v = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i > 0; --i) v = v * z + coeffs_[i - 1];
    return v;
}

ComplexPoly::ValueAndDerivative ComplexPoly::eval_with_derivative(Complex z) const {
    Complex v = coeffs_.back();
    Complex d = 0.0;
    for (std::size_t i = coeffs_.size() - 1; i > 0; --i) {
        d = d * z + v;
        v = v * z + coeffs_[i - 1];
    }
    return {v, d};
}

ComplexPoly ComplexPoly::derivative() const {
    if (coeffs_.size() == 1) return ComplexPoly();
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
    return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::operator+(const ComplexPoly& rhs) const {
    std::vector<Complex> c(std::max(coeffs_.size(), rhs.coeffs_.size()), Complex(0.0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) c[i] += rhs.coeffs_[i];
    return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::operator-(const ComplexPoly& rhs) const {
    std::vector<Complex> c(std::max(coeffs_.size(), rhs.coeffs_.size()), Complex(0.0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) c[i] -= rhs.coeffs_[i];
    return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::operator*(const ComplexPoly& rhs) const {
    if (is_zero() || rhs.is_zero()) return ComplexPoly();
    std::vector<Complex> c(coeffs_.size() + rhs.coeffs_.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::operator*(Complex s) const {
    std::vector<Complex> c = coeffs_;
    for (Complex& x : c) x *= s;
    return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::shifted_up(int m) const {
    if (is_zero()) return ComplexPoly();
    std::vector<Complex> c(coeffs_.size() + static_cast<std::size_t>(m), Complex(0.0));
    std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + m);
    return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::divided_by_z(double tol) const {
    if (std::abs(coeffs_[0]) > tol)
        throw ValidationFailed("divided_by_z: constant term " + std::to_string(std::abs(coeffs_[0])) +
                               " exceeds " + std::to_string(tol));
    if (coeffs_.size() == 1) return ComplexPoly();
    return ComplexPoly(std::vector<Complex>(coeffs_.begin() + 1, coeffs_.end()));
}

}  // namespace bergman
