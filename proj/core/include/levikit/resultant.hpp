#ifndef LEVIKIT_RESULTANT_HPP
#define LEVIKIT_RESULTANT_HPP

#include "levikit/multipoly.hpp"

#include <vector>

namespace levikit {

/// Determinant of a square polynomial matrix by fraction-free Bareiss
/// elimination; every interior division is exact by the Sylvester identity.
MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m);

/// Resultant of f and g with respect to `var`: determinant of the Sylvester
/// matrix with the f-coefficient block above the g-block (this fixes the
/// sign convention). Throws when both inputs have degree zero in `var`.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, const std::string& var);

} // namespace levikit

#endif
