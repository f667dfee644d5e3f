#ifndef LEVIKIT_RATIONAL_HPP
#define LEVIKIT_RATIONAL_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace levikit {

/// Error for mathematically invalid requests (division by zero, reality
/// violations, degenerate inputs).
class math_error : public std::runtime_error {
public:
    explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

/// Error for malformed user input (parse errors, arity mismatches).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Error for internal consistency failures (oracle disagreement). These
/// abort a computation and must never be swallowed.
class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

/// A Gaussian rational a + b*i with exact arbitrary-precision parts.
/// Both parts are kept in canonical reduced form (gcd(num, den) = 1,
/// den > 0); gmp maintains this through arithmetic.
class ExactComplex {
public:
    ExactComplex() : re_(0), im_(0) {}
    ExactComplex(long v) : re_(v), im_(0) {}          // NOLINT: implicit for literals
    ExactComplex(mpq_class re) : re_(std::move(re)), im_(0) {}
    ExactComplex(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    static ExactComplex i() { return ExactComplex(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    ExactComplex conj() const { return ExactComplex(re_, -im_); }

    /// Field norm re^2 + im^2 (a nonnegative rational, zero only at zero).
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    ExactComplex inverse() const;

    ExactComplex operator-() const { return ExactComplex(-re_, -im_); }

    ExactComplex& operator+=(const ExactComplex& o);
    ExactComplex& operator-=(const ExactComplex& o);
    ExactComplex& operator*=(const ExactComplex& o);
    ExactComplex& operator/=(const ExactComplex& o);

    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
    friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }

    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

    /// Total order (re, then im) used for canonical sorting only; it is not
    /// compatible with the field structure.
    static int cmp(const ExactComplex& a, const ExactComplex& b);

    /// Canonical text form: "p/q", "r/s i" or "p/q + r/s i" (den 1 omitted).
    std::string str() const;

    static std::optional<ExactComplex> parse(std::string_view text);

private:
    mpq_class re_, im_;
};

std::ostream& operator<<(std::ostream& os, const ExactComplex& z);

/// Canonical text form of a rational: "p" when den = 1, else "p/q".
std::string rational_str(const mpq_class& q);

/// Parses "p", "p/q"; returns nullopt on malformed input or q = 0.
std::optional<mpq_class> parse_rational(std::string_view text);

/// Parses "p/q" plus decimal forms ("0.25", "1e-9", "2.5e-3") exactly.
std::optional<mpq_class> parse_rational_or_decimal(std::string_view text);

/// Exact square root of a rational if it is a perfect square, else nullopt.
std::optional<mpq_class> exact_sqrt(const mpq_class& q);

} // namespace levikit

#endif
