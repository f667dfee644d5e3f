#ifndef LEVIKIT_SEGRE_HPP
#define LEVIKIT_SEGRE_HPP

#include "levikit/multipoly.hpp"

#include <span>
#include <string>
#include <vector>

namespace levikit {

/// Raised when a claimed-real defining polynomial fails the reality
/// involution (a coefficient pair with a_{mu,nu} != conj(a_{nu,mu})).
class reality_violation : public math_error {
public:
    reality_violation(std::string offending)
        : math_error("defining polynomial is not real: offending coefficient pair at " + offending),
          detail(std::move(offending)) {}
    std::string detail;
};

/// A real polynomial phi(z, conj z) together with its complexification
/// phi_C(z, w) (w replacing conj z) and the reality certificate.
struct ComplexifiedHypersurface {
    MultiPoly phi;  // in (z..., zbar...) with the user's variable names
    MultiPoly phiC; // in (z..., w...) canonical block roster
    std::vector<std::string> z_vars, zbar_vars, w_vars;
    int n = 0;
    bool reality_checked = false;
};

/// Builds the complexification and validates reality: conjugate_swap must
/// fix phi_C. `conjugate_pairs` lists (z_k, zbar_k) in order.
ComplexifiedHypersurface complexify(const MultiPoly& phi,
                                    const std::vector<std::pair<std::string, std::string>>& conjugate_pairs);

struct SegreVariety {
    std::vector<ExactComplex> base_point; // q in z-coordinates
    MultiPoly defining;                   // phi_C(z, conj q), in the z-variables
    bool degenerate = false;              // defining identically zero
};

SegreVariety segre_variety(const ComplexifiedHypersurface& H, std::span<const ExactComplex> q);

bool is_segre_degenerate(const ComplexifiedHypersurface& H, std::span<const ExactComplex> q);

/// Coefficient of every z-monomial of phi_C as a polynomial in the
/// w-variables: its common zeros (in w = conj q) are exactly the Segre
/// degenerate points. Polynomials are normalized with leading coefficient
/// one and returned in a canonical order.
std::vector<MultiPoly> degenerate_locus_system(const ComplexifiedHypersurface& H);

/// Runtime self-check of the reality symmetry: q in Sigma_p iff p in
/// Sigma_q. Always true for accepted inputs; exposed for validation.
bool segre_symmetry_check(const ComplexifiedHypersurface& H, std::span<const ExactComplex> p,
                          std::span<const ExactComplex> q);

/// Membership value phi_C(z = a, w = conj b); zero iff a lies on Sigma_b.
ExactComplex segre_pairing(const ComplexifiedHypersurface& H, std::span<const ExactComplex> a,
                           std::span<const ExactComplex> b);

/// Substitutes x_k = (z_k + zbar_k)/2, y_k = (z_k - zbar_k)/(2i): converts a
/// polynomial over real coordinate pairs (x_k, y_k) into (z, zbar) form.
/// `coords` lists (x_k, y_k, z_k, zbar_k) names per complex variable.
struct CoordinateQuadruple {
    std::string x, y, z, zbar;
};
MultiPoly real_to_zzbar(const MultiPoly& phi_real, const std::vector<CoordinateQuadruple>& coords);

/// Inverse substitution z_k = x_k + i y_k, zbar_k = x_k - i y_k. Throws if
/// the result fails to be real (nonzero imaginary coefficients).
MultiPoly zzbar_to_real(const MultiPoly& phi, const std::vector<CoordinateQuadruple>& coords);

} // namespace levikit

#endif
