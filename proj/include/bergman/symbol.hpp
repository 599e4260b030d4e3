#ifndef BERGMAN_SYMBOL_HPP
#define BERGMAN_SYMBOL_HPP

#include "bergman/complex_poly.hpp"

namespace bergman {

/// The harmonic symbol φ(z) = z̄ + p(z) with p an analytic polynomial.
/// On |z| = 1, φ(z) − λ = F_λ(z)/z with F_λ = 1 + z(p − λ).
struct HarmonicSymbol {
    ComplexPoly p;

    int degree() const { return p.degree(); }

    /// φ(z) = conj(z) + p(z); only meaningful where the symbol is defined.
    Complex eval(Complex z) const { return std::conj(z) + p.eval(z); }
};

}  // namespace bergman

#endif
