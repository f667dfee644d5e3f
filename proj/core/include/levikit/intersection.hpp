#ifndef LEVIKIT_INTERSECTION_HPP
#define LEVIKIT_INTERSECTION_HPP

#include "levikit/multipoly.hpp"
#include "levikit/puiseux.hpp"
#include "levikit/rng.hpp"
#include "levikit/unipoly.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace levikit {

/// Raised when two curves share a component and a finite intersection
/// quantity was requested.
class common_component_error : public math_error {
public:
    common_component_error() : math_error("curves share a common component") {}
};

/// Point of P^2 with exact coordinates, normalized so the last nonzero
/// coordinate is 1.
struct PlanePoint {
    std::array<ExactComplex, 3> h;

    static PlanePoint make(ExactComplex p0, ExactComplex p1, ExactComplex p2);
    static PlanePoint from_affine(const ExactComplex& x, const ExactComplex& y);

    /// Affine coordinates in the chart where coordinate `chart` is 1.
    std::pair<ExactComplex, ExactComplex> affine(int chart) const;
    /// Index of a nonzero coordinate (the normalization pivot).
    int pivot() const;

    static int cmp(const PlanePoint& a, const PlanePoint& b);
    friend bool operator==(const PlanePoint& a, const PlanePoint& b) { return a.h == b.h; }
    std::string str() const;
};

using Matrix3 = std::array<std::array<ExactComplex, 3>, 3>;

/// One intersection point of a curve pair. Q(i)-rational points carry
/// exact original coordinates; other points are roots of a squarefree
/// eliminant in the sheared chart, optionally isolated into certified
/// boxes (sheared chart and original homogeneous coordinates).
struct IntersectionRecord {
    int multiplicity = 1;
    std::optional<PlanePoint> exact;

    std::optional<UniPoly> eliminant;
    int conjugate_index = 0;
    std::optional<ComplexBox> x_box, y_box;
    std::optional<std::array<ComplexBox, 3>> hom_box;
    /// Exact certificate that the point is a smooth transverse intersection
    /// (single branch on each curve, local multiplicity 1).
    bool transverse_certified = false;

    std::string str() const;
};

struct IntersectionOptions {
    bool isolate_boxes = false;
    int shear_attempts = 16;
};

struct IntersectionResult {
    std::vector<IntersectionRecord> records;
    Matrix3 shear;       // coordinates used for elimination: z = shear * u
    Matrix3 check_shear; // independent cross-check coordinates
    int total = 0;       // sum of multiplicities = deg F * deg G
};

/// All intersection points of two coprime curves with exact multiplicities;
/// Bezout accounting (sum = product of degrees) is verified internally.
IntersectionResult intersection_points(const HomogeneousForm& F, const HomogeneousForm& G,
                                       Rng& rng, IntersectionOptions opts = {});

struct MultiplicityResult {
    int multiplicity = 0;
    int resultant_order = 0; // oracle (a): order of the sheared eliminant
    int branch_sum = 0;      // oracle (b): sum of Puiseux branch orders
    ExactComplex shear1, shear2;
};

/// Local intersection multiplicity at an affine point, computed by two
/// independent oracles that must agree (internal_error otherwise).
MultiplicityResult intersection_multiplicity(const MultiPoly& f, const MultiPoly& g,
                                             const ExactComplex& x0, const ExactComplex& y0,
                                             Rng& rng);

/// Projective convenience overload; the chart is picked from the point.
MultiplicityResult intersection_multiplicity(const HomogeneousForm& F, const HomogeneousForm& G,
                                             const PlanePoint& p, Rng& rng);

/// True iff the three partials share no projective zero, decided by
/// iterated resultants in two independent random coordinate frames that
/// must agree. Smooth plane curves are irreducible, which is how this
/// certificate is consumed.
bool is_smooth_curve(const HomogeneousForm& F, Rng& rng);

/// Applies the invertible substitution z = M * u, keeping variable names.
MultiPoly linear_change(const MultiPoly& f, const Matrix3& m);

ExactComplex det3(const Matrix3& m);

} // namespace levikit

#endif
