#ifndef LEVIKIT_PUISEUX_HPP
#define LEVIKIT_PUISEUX_HPP

#include "levikit/interval.hpp"
#include "levikit/multipoly.hpp"
#include "levikit/unipoly.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace levikit {

/// Coefficient domain Q(i)[c]/(m(c)) for one branch: m is monic squarefree
/// and a certified box singles out which root of m the symbol c denotes.
/// Elements are reduced polynomial representatives in c. Zero tests are
/// exact; when a representative vanishes at some conjugates only, the
/// modulus splits (gcd) and the box decides which side this branch lives
/// on. A degree-1 modulus is plain Q(i).
class FieldTower {
public:
    FieldTower(); // Q(i): modulus c, root 0
    FieldTower(UniPoly modulus, ComplexBox root);

    bool is_rational() const { return modulus_.degree() == 1; }
    const UniPoly& modulus() const { return modulus_; }
    const ComplexBox& root_box() const { return root_; }

    UniPoly reduce(const UniPoly& a) const { return a % modulus_; }
    UniPoly from_exact(const ExactComplex& v) const { return UniPoly::constant(v); }
    UniPoly generator() const { return reduce(UniPoly::x()); }
    UniPoly mul(const UniPoly& a, const UniPoly& b) const { return reduce(a * b); }

    /// Exact zero test for this embedding; may shrink the modulus.
    bool is_zero(const UniPoly& a);
    /// Inverse modulo the modulus; throws math_error on zero.
    UniPoly inverse(const UniPoly& a);

    /// Certified box for an element value, refined below `width` if possible.
    ComplexBox elem_box(const UniPoly& a, const mpq_class& width);

    void refine_root(const mpq_class& width);

private:
    UniPoly modulus_;
    ComplexBox root_;
};

/// Truncated Puiseux parametrization t -> (x(t), y(t)) of one local branch
/// at the origin of an affine plane curve. x(t) is an exact monomial
/// x_coef * t^x_exp (identically zero for the vertical-axis branch); y(t)
/// has coefficients in the branch's extension field.
struct Branch {
    std::string x_var, y_var;
    ExactComplex x_coef;
    int x_exp = 0;
    std::shared_ptr<FieldTower> field;
    std::map<int, UniPoly> y_series; // t-exponent -> reduced field element
    int trunc = 0;                   // y(t) certified modulo t^trunc
    bool exact = false;              // series terminates; no truncation error
    int ramification = 0;            // min(ord_t x, ord_t y)

    std::shared_ptr<const MultiPoly> curve; // origin-centered defining poly
    int branch_index = 0;                   // position in canonical output order
    int built_order = 0;                    // precision it was expanded with

    /// Certified box for the t^k coefficient of y.
    ComplexBox y_coef_box(int k, const mpq_class& width) const;
    std::string describe() const;
};

struct PuiseuxOptions {
    /// Reject branches whose coefficients leave Q(i) instead of extending.
    bool reject_nonrational = false;
    /// Verify f(x(t), y(t)) = 0 mod t^order after construction.
    bool verify = true;
    unsigned long seed = 0; // for root isolation dithering
};

/// All local branches of f at the origin, in a canonical deterministic
/// order, with y-series certified modulo t^max_order. Requires f(0,0) = 0,
/// f nonzero, and a squarefree germ at the origin (checked via the gcd of
/// f with its partials, evaluated at 0).
std::vector<Branch> puiseux_branches(const MultiPoly& f, int max_order, PuiseuxOptions opts = {});

struct BranchOrderResult {
    bool contained = false;
    int order = 0;
};

/// ord_t g(x(t), y(t)), or CONTAINED when g vanishes along the branch to
/// full (escalated) truncation and gcd(f, g) confirms a shared component.
/// `bound` defaults to deg(f)*deg(g) + 1 when nonpositive. Escalates the
/// branch expansion rather than ever returning an uncertified order.
BranchOrderResult branch_order(const Branch& branch, const MultiPoly& g, int bound = 0,
                               PuiseuxOptions opts = {});

} // namespace levikit

#endif
