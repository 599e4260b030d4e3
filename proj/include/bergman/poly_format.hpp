#ifndef BERGMAN_POLY_FORMAT_HPP
#define BERGMAN_POLY_FORMAT_HPP

#include <string>

#include "bergman/complex_poly.hpp"

namespace bergman {

/// Text format shared by the CLI and files: comma-separated ascending
/// coefficients, each `re` or `re+imi` / `re-imi`, e.g. "1,-1,1" for
/// 1 − z + z². Scientific notation accepted. Throws InvalidParams on
/// malformed input.
ComplexPoly parse_poly(const std::string& text);

/// One coefficient in the text format (shortest round-trip digits).
std::string format_complex(Complex c);

/// The full comma-separated coefficient list.
std::string format_poly(const ComplexPoly& poly);

}  // namespace bergman

#endif
