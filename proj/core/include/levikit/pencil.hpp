#ifndef LEVIKIT_PENCIL_HPP
#define LEVIKIT_PENCIL_HPP

#include "levikit/intersection.hpp"
#include "levikit/multipoly.hpp"

#include <optional>
#include <vector>

namespace levikit {

/// Pencil alpha*F + beta*G of same-degree, linearly independent forms.
class Pencil {
public:
    static Pencil make(HomogeneousForm F, HomogeneousForm G);

    const HomogeneousForm& F() const { return F_; }
    const HomogeneousForm& G() const { return G_; }
    int degree() const { return F_.degree(); }

    HomogeneousForm member(const ExactComplex& alpha, const ExactComplex& beta) const;

private:
    Pencil(HomogeneousForm F, HomogeneousForm G) : F_(std::move(F)), G_(std::move(G)) {}
    HomogeneousForm F_, G_;
};

/// Projective pair [alpha : beta], normalized so the first nonzero entry is 1.
struct PencilCoordinates {
    ExactComplex alpha, beta;
    static PencilCoordinates normalized(ExactComplex a, ExactComplex b);
    std::string str() const;
    friend bool operator==(const PencilCoordinates& x, const PencilCoordinates& y) {
        return x.alpha == y.alpha && x.beta == y.beta;
    }
};

/// Exact rank test: H = alpha*F + beta*G, or nullopt (NotInPencil).
std::optional<PencilCoordinates> pencil_membership(const HomogeneousForm& H, const Pencil& pencil);

struct PencilDetection {
    std::optional<Pencil> pencil;            // spanned by the first two members
    std::vector<PencilCoordinates> coords;   // one per family member, input order
    std::optional<std::array<std::size_t, 3>> witness; // rank-3 triple when NoPencil
    bool found() const { return pencil.has_value(); }
};

/// Detects whether >= 2 pairwise non-proportional same-degree members span
/// a pencil containing the whole family; on failure returns a rank-3
/// witness triple of member indices.
PencilDetection pencil_from_family(const std::vector<HomogeneousForm>& family);

struct ProfileEntry {
    PlanePoint point;
    int branch_index = 0; // canonical index among the reference branches at `point`
    bool contained = false;
    int order = 0;
    friend bool operator==(const ProfileEntry& a, const ProfileEntry& b) {
        return a.point == b.point && a.branch_index == b.branch_index &&
               a.contained == b.contained && a.order == b.order;
    }
};

/// Branch-by-branch intersection orders of C against the branches of a
/// fixed reference curve P at the given singular points, in a canonical
/// order keyed by (point, branch).
struct IntersectionProfile {
    std::vector<ProfileEntry> entries;
    friend bool operator==(const IntersectionProfile& a, const IntersectionProfile& b) {
        return a.entries == b.entries;
    }
};

/// Computes the profile and enforces base-locus completeness: unless a
/// CONTAINED flag arises, the orders must sum to deg(P)*deg(C) (all
/// intersections of P and C lie over sing_points). Throws math_error on a
/// Bezout-sum deficit.
IntersectionProfile intersection_profile(const HomogeneousForm& P, const HomogeneousForm& C,
                                         const std::vector<PlanePoint>& sing_points);

/// Polynomial 1-form sum A_i dz_i with homogeneous coefficients of one
/// common degree satisfying the Euler contraction identity.
struct FoliationForm {
    std::vector<std::string> vars;
    std::vector<MultiPoly> coefficients;
    int degree = 0;

    MultiPoly euler_contraction() const; // sum z_i * A_i
    /// omega ^ d(omega), the integrability obstruction (3 variables only).
    MultiPoly integrability_obstruction() const;
};

/// omega = G dF - F dG with the coefficient gcd divided out.
FoliationForm pencil_foliation_form(const Pencil& pencil);

struct InvarianceCertificate {
    HomogeneousForm member;  // alpha*F + beta*G
    MultiPoly cofactor;      // equals the member: omega ^ dH = H * dF ^ dG
    bool verified = false;
};

/// Verifies the exact 2-form identity (G dF - F dG) ^ d(aF + bG)
/// = (aF + bG) * dF ^ dG componentwise; throws internal_error on failure.
InvarianceCertificate verify_level_invariance(const Pencil& pencil, const ExactComplex& alpha,
                                              const ExactComplex& beta);

} // namespace levikit

#endif
