#ifndef LEVIKIT_LEVIFLAT_HPP
#define LEVIKIT_LEVIFLAT_HPP

#include "levikit/interval.hpp"
#include "levikit/multipoly.hpp"
#include "levikit/pencil.hpp"
#include "levikit/rng.hpp"
#include "levikit/segre.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace levikit {

/// Matrix of mixed second partials d^2 phi / dz_i dzbar_j.
struct LeviMatrix {
    int n = 0;
    std::vector<MultiPoly> entries; // row-major over (z, zbar)
    const MultiPoly& at(int i, int j) const {
        return entries[static_cast<std::size_t>(i * n + j)];
    }
};

LeviMatrix levi_matrix(const ComplexifiedHypersurface& H);

/// Levi form contracted with the tangential directions v_ij = phi_{z_j} e_i
/// - phi_{z_i} e_j that span ker(d phi): all pairings L(v_a, conj v_b).
/// Their simultaneous vanishing on {phi = 0} is Levi-flatness.
std::vector<MultiPoly> levi_kernel_scalars(const ComplexifiedHypersurface& H);

/// A certified point on {phi = 0}: interval coordinates in the real
/// variables (x_1, y_1, ..., x_n, y_n).
struct SamplePoint {
    std::vector<RatInterval> coords;
    std::string str() const;
};

/// Samples certified points of {phi_real = 0} by intersecting with random
/// rational lines and isolating real roots by exact sign-change bisection
/// to the requested interval width.
std::vector<SamplePoint> sample_on_hypersurface(const MultiPoly& phi_real, int count,
                                                const mpq_class& width, Rng& rng,
                                                int max_lines = 4096);

enum class FlatnessVerdict { ExactFlat, NumericallyFlat, NotFlat };
enum class CertTier { Exact, Numeric };

struct FlatnessCertificate {
    FlatnessVerdict verdict = FlatnessVerdict::NotFlat;
    std::vector<MultiPoly> cofactors; // exact tier: scalar_k = cofactor_k * phi
    int samples_used = 0;
    std::optional<SamplePoint> witness;       // NotFlat evidence
    std::optional<RatInterval> witness_value; // enclosure of the violated scalar
    mpq_class tol;
    std::string tier_str() const {
        return verdict == FlatnessVerdict::ExactFlat ? "exact" : "numeric";
    }
};

/// Two-tier flatness test: exact when every kernel scalar divides out by
/// phi, else certified sampling of `samples` points on {phi = 0}.
FlatnessCertificate flatness_certificate(const ComplexifiedHypersurface& H, int samples,
                                         const mpq_class& tol, Rng& rng);

enum class TangencyVerdict { Invariant, NotInvariant };

struct TangencyReport {
    TangencyVerdict verdict = TangencyVerdict::NotInvariant;
    CertTier tier = CertTier::Exact;
    MultiPoly tangency; // the polynomial whose vanishing on the locus is tested
    std::optional<MultiPoly> cofactor;
    int samples_used = 0;
    std::optional<SamplePoint> witness;
    std::optional<RatInterval> witness_value;
    mpq_class tol;
};

/// Algebraic invariance of the affine curve P = 0 under a dx + b dy:
/// P divides a*dP/dy - b*dP/dx, with exact cofactor evidence.
TangencyReport curve_invariance(const MultiPoly& a, const MultiPoly& b, const MultiPoly& P);

/// Projective version: P invariant under omega iff P divides every
/// component of omega ^ dP.
TangencyReport curve_invariance(const FoliationForm& omega, const HomogeneousForm& P);

/// Tangency of {phi = 0} (n = 2) to the affine 1-form a dz1 + b dz2:
/// tau = a phi_{z2} - b phi_{z1} must vanish on the hypersurface, exactly
/// by division when possible, else by certified sampling.
TangencyReport hypersurface_tangency(const MultiPoly& a, const MultiPoly& b,
                                     const ComplexifiedHypersurface& H, int samples,
                                     const mpq_class& tol, Rng& rng);

/// Quadratic 2-web A (dw)^2 + B dw dz + C (dz)^2 = 0 with polynomial
/// coefficients in (z, w).
struct Web2 {
    MultiPoly A, B, C;
    std::string z = "z";
    std::string w = "w";
};

/// Verifies that every leaf w = g(z, c) of a one-parameter family
/// satisfies the web equation identically in z and the parameter c.
bool web2_tangency(const Web2& web, const MultiPoly& leaf_family, const std::string& param);

struct SingularLocusSystem {
    std::vector<MultiPoly> system; // phi and all first partials
    bool non_reduced = false;      // gradient vanishes on all of {phi = 0}
};

SingularLocusSystem singular_locus_system(const MultiPoly& phi_real);

/// True iff every system member vanishes identically under the candidate
/// locus assignments (substitution check).
bool contains_variety(const std::vector<MultiPoly>& system,
                      const std::vector<std::pair<std::string, MultiPoly>>& assignments);

using PlaneMatrix = std::vector<std::vector<ExactComplex>>; // 3 rows x (n+1) columns

struct RestrictedForm {
    HomogeneousForm form; // in the plane coordinates u0, u1, u2
    bool degree_preserved = false;
    bool squarefree = false;
    bool degree_drop = false; // restriction vanished or lost degree
};

RestrictedForm restrict_form_to_plane(const HomogeneousForm& F, const PlaneMatrix& plane);

struct RestrictedFoliation {
    FoliationForm form;
    bool discrete_singular_set = false;
    bool degenerate = false; // every coefficient restricted to zero
};

RestrictedFoliation restrict_foliation_to_plane(const FoliationForm& omega,
                                                const PlaneMatrix& plane);

using RealMatrix2 = std::array<std::array<mpq_class, 2>, 2>;

struct LionLine {
    bool rational = true;
    mpq_class lambda;                        // eigenvalue of A - I (rational case)
    RatInterval lambda_box;                  // always set
    mpq_class line_x;                        // the singular line z1 = -1/lambda
    RatInterval line_x_box;
    std::array<RatInterval, 2> eigenvector;  // a real eigenvector (as intervals)
};

struct LionResult {
    std::vector<LionLine> lines;   // one per nonzero real eigenvalue
    bool has_zero_eigenvalue = false; // parallel leaf class, no finite crossing
};

/// Singular lines of the line field joining (0, z) to (1, Az) for an
/// R-linear, non-C-linear A: one line z1 = -1/lambda per nonzero real
/// eigenvalue of A - I. Throws math_error when A is C-linear.
LionResult lion_singular_lines(const RealMatrix2& A);

/// Brute-force floating-point oracle: intersects `trials` random line
/// pairs L_z, L_{z + alpha w} and returns the largest deviation of the
/// crossing abscissa from -1/lambda.
double lion_brute_force_max_error(const RealMatrix2& A, const LionResult& result, int trials,
                                  Rng& rng);

} // namespace levikit

#endif
