#ifndef LEVIKIT_POLYGCD_HPP
#define LEVIKIT_POLYGCD_HPP

#include "levikit/multipoly.hpp"

#include <vector>

namespace levikit {

/// Multivariate gcd over the Gaussian rationals (primitive PRS), normalized
/// so the graded-lex leading coefficient is 1. gcd(f, 0) = normalize(f);
/// gcd(0, 0) = 0.
MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g);

MultiPoly poly_gcd_many(const std::vector<MultiPoly>& polys);

bool gcd_is_constant(const MultiPoly& f, const MultiPoly& g);

/// gcd(f, all first partials). Constant iff f is squarefree; for a real
/// defining polynomial a nonconstant result flags non-reduced input.
MultiPoly repeated_factor_part(const MultiPoly& f);

bool is_squarefree(const MultiPoly& f);

} // namespace levikit

#endif
