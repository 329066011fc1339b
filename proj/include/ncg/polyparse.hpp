#pragma once

// Text form of torus and sphere polynomials.
//
//   expr    := ['-'] term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := primary ['^' ['-'] integer]
//   primary := number ['i'] | 'i' | identifier | '(' expr ')'
//
// Torus identifiers: U1, U2, t. Sphere identifiers: a, ad, b, bd, x, t
// (ad and bd are the adjoints of a and b). Negative powers are accepted only
// for U1, U2 and t. Errors raise ParseError with the offending position.

#include <string_view>

#include "ncg/nctorus.hpp"
#include "ncg/sphere.hpp"

namespace ncg {

TorusElement parse_torus(std::string_view text, ThetaMode mode);
SphereElement parse_sphere(std::string_view text, ThetaMode mode);

}  // namespace ncg
