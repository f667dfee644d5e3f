#ifndef LEVIKIT_UNIPOLY_HPP
#define LEVIKIT_UNIPOLY_HPP

#include "levikit/interval.hpp"
#include "levikit/multipoly.hpp"
#include "levikit/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace levikit {

/// Dense univariate polynomial over the Gaussian rationals, coefficients
/// ascending by exponent; the invariant is empty() (zero) or a nonzero
/// leading coefficient.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<ExactComplex> coefs) : c_(std::move(coefs)) { normalize(); }
    static UniPoly constant(ExactComplex v) { return UniPoly({std::move(v)}); }
    static UniPoly x() { return UniPoly({ExactComplex(0), ExactComplex(1)}); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const std::vector<ExactComplex>& coefs() const { return c_; }
    const ExactComplex& operator[](std::size_t k) const { return c_[k]; }
    const ExactComplex& lead() const { return c_.back(); }
    /// Index of the lowest nonzero coefficient (order of vanishing at 0).
    int order_at_zero() const;

    bool is_real() const;

    UniPoly operator-() const;
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly scaled(const ExactComplex& s) const;
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    ExactComplex eval(const ExactComplex& x) const;
    ComplexBox eval_box(const ComplexBox& x) const;
    /// Sign of a real-coefficient polynomial at a rational point.
    int sign_at(const mpq_class& x) const;

    UniPoly derivative() const;
    UniPoly monic() const;

    /// Quotient and remainder over the coefficient field.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return a.divmod(b).first; }
    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return a.divmod(b).second; }

    /// Monic gcd (Euclid over the field).
    static UniPoly gcd(UniPoly a, UniPoly b);

    /// Yun squarefree decomposition: pairwise-coprime monic factors with
    /// multiplicities, product (up to the leading unit) equal to *this.
    std::vector<std::pair<UniPoly, int>> squarefree_decomposition() const;
    UniPoly squarefree_part() const;

    /// Upper bound for the modulus of every complex root (Cauchy bound).
    mpq_class root_bound() const;

    std::string str(const std::string& var = "x") const;
    static UniPoly from_multipoly(const MultiPoly& f, const std::string& var);
    MultiPoly to_multipoly(const std::string& var) const;

private:
    void normalize();
    std::vector<ExactComplex> c_;
};

/// Isolates all complex roots of a squarefree polynomial into pairwise
/// disjoint certified boxes (Krawczyk-verified, exactly one root each).
/// Deterministic given `seed`; throws internal_error if certification
/// fails at every retry.
std::vector<ComplexBox> isolate_complex_roots(const UniPoly& p, unsigned long seed = 0);

/// Shrinks a certified root box below `width` by interval Newton steps.
ComplexBox refine_root_box(const UniPoly& p, ComplexBox box, const mpq_class& width);

/// Exact real-root isolation for a squarefree real-coefficient polynomial:
/// disjoint open intervals, one root each, plus exact rational roots found
/// along the way (returned as point intervals).
std::vector<RatInterval> isolate_real_roots(const UniPoly& p);

/// Bisects an isolating sign-change interval below `width`.
RatInterval refine_real_root(const UniPoly& p, RatInterval iv, const mpq_class& width);

/// The rational with smallest denominator in [lo, hi] (Stern-Brocot walk).
mpq_class simplest_rational_in(const mpq_class& lo, const mpq_class& hi);

/// True only with proof: gcd(a, b) is constant. Uses a single-prime modular
/// image (sound by the leading-coefficient divisibility argument) and falls
/// back to the exact gcd when the image is inconclusive.
bool unipoly_coprime(const UniPoly& a, const UniPoly& b);

/// Attempts to identify an exact Gaussian-rational root inside a certified
/// box by simplest-rational reconstruction with verification; refines the
/// box up to `rounds` times before giving up.
std::optional<ExactComplex> rational_root_in_box(const UniPoly& p, ComplexBox box, int rounds = 6);

} // namespace levikit

#endif
