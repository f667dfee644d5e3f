#ifndef LEVIKIT_MULTIPOLY_HPP
#define LEVIKIT_MULTIPOLY_HPP

#include "levikit/interval.hpp"
#include "levikit/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace levikit {

using Exponents = std::vector<unsigned>;

inline unsigned exponents_degree(const Exponents& e) {
    unsigned d = 0;
    for (unsigned k : e) d += k;
    return d;
}

/// Graded-lexicographic "greater" on exponent vectors of equal length:
/// higher total degree first, ties broken lexicographically with earlier
/// roster variables weighing more. Map iteration therefore starts at the
/// leading term.
struct GradedLexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned da = exponents_degree(a), db = exponents_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

/// Multivariate polynomial over the Gaussian rationals with an explicit
/// ordered variable roster. Terms are stored sparsely; zero coefficients
/// are never kept, so the zero polynomial has an empty term map. Values
/// are immutable in spirit: all operations return new polynomials.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, ExactComplex, GradedLexGreater>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

    static MultiPoly zero(std::vector<std::string> variables) {
        return MultiPoly(std::move(variables));
    }
    static MultiPoly constant(std::vector<std::string> variables, ExactComplex c);
    static MultiPoly variable(std::vector<std::string> variables, const std::string& name);
    /// Monomial c * prod vars^exps.
    static MultiPoly monomial(std::vector<std::string> variables, Exponents exps, ExactComplex c);

    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Total degree; nullopt is the zero polynomial's "-infinity" sentinel.
    std::optional<int> total_degree() const;
    /// Total degree of a known-nonzero polynomial; throws on zero.
    int degree() const;
    int degree_in(const std::string& var) const;

    int var_index(const std::string& name) const; // -1 when absent
    bool depends_on(const std::string& var) const;

    const ExactComplex& leading_coefficient() const;
    const Exponents& leading_exponents() const;
    /// The trailing (graded-lex smallest) total degree; used as order of
    /// vanishing at the origin for affine polynomials.
    int order_at_origin() const;

    void add_term(const Exponents& e, const ExactComplex& c); // builder; merges, drops zeros

    MultiPoly operator-() const;
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly scaled(const ExactComplex& c) const;
    friend MultiPoly operator*(const ExactComplex& c, const MultiPoly& f) { return f.scaled(c); }
    friend MultiPoly operator*(const MultiPoly& f, const ExactComplex& c) { return f.scaled(c); }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    ExactComplex evaluate(std::span<const ExactComplex> point) const;
    ComplexBox evaluate_box(std::span<const ComplexBox> point) const;

    MultiPoly differentiate(const std::string& var) const;

    /// Substitutes `replacement` for `var`; the result keeps the union
    /// roster (with `var` retained at exponent zero).
    MultiPoly substitute(const std::string& var, const MultiPoly& replacement) const;
    MultiPoly substitute(const std::string& var, const ExactComplex& value) const;

    /// Reinterprets this polynomial over a larger roster (superset, any
    /// order). Throws if a used variable is missing from `roster`.
    MultiPoly with_roster(std::vector<std::string> roster) const;
    /// Drops roster variables the polynomial does not use.
    MultiPoly without_unused(const std::vector<std::string>& keep_always = {}) const;

    /// Renames variables by position map old-name -> new-name.
    MultiPoly renamed(const std::vector<std::pair<std::string, std::string>>& renames) const;

    /// Dense coefficient list in `var` (index = exponent), coefficients
    /// over the same roster with var-exponent zero.
    std::vector<MultiPoly> coefficients_in(const std::string& var) const;

    /// Conjugates every coefficient (no variable action).
    MultiPoly conjugate_coefficients() const;

    std::string str() const;
    /// Parses the canonical text form over the given roster.
    static MultiPoly parse(const std::string& text, std::vector<std::string> roster);

private:
    std::vector<std::string> vars_;
    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& f);

/// Union roster preserving left order then new right variables; both
/// polynomials reinterpreted over it.
std::pair<MultiPoly, MultiPoly> align_rosters(const MultiPoly& a, const MultiPoly& b);
std::vector<std::string> roster_union(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b);

/// Exact quotient f / g, or nullopt when g does not divide f. Division is
/// by repeated leading-term elimination under the global graded-lex order.
std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g);

/// Swaps the first half of the roster with the second half positionally
/// and conjugates all coefficients; the reality involution on phi(z, w).
/// Throws on odd roster.
MultiPoly conjugate_swap(const MultiPoly& f);

/// A homogeneous polynomial with its certified degree.
class HomogeneousForm {
public:
    HomogeneousForm(MultiPoly poly, int degree);
    /// Validates homogeneity of a nonzero polynomial and reads the degree.
    static HomogeneousForm from_poly(MultiPoly poly);

    const MultiPoly& poly() const { return poly_; }
    int degree() const { return degree_; }
    bool is_zero() const { return poly_.is_zero(); }

private:
    MultiPoly poly_;
    int degree_;
};

/// Homogenizes f with new_var (prepended to the roster) to total degree
/// `degree`; throws if degree < deg f.
HomogeneousForm homogenize(const MultiPoly& f, const std::string& new_var, int degree);
/// Sets var = 1 and removes it from the roster.
MultiPoly dehomogenize(const MultiPoly& F, const std::string& var);

} // namespace levikit

#endif
