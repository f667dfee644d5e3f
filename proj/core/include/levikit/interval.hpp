#ifndef LEVIKIT_INTERVAL_HPP
#define LEVIKIT_INTERVAL_HPP

#include "levikit/rational.hpp"

#include <string>

namespace levikit {

/// Closed interval [lo, hi] with exact rational endpoints. All operations
/// are outward-exact: rational arithmetic has no rounding, so results are
/// the tightest representable enclosures.
struct RatInterval {
    mpq_class lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(mpq_class v) : lo(v), hi(std::move(v)) {}
    RatInterval(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw internal_error("RatInterval: lo > hi");
    }

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool contains(const mpq_class& v) const { return lo <= v && hi >= v; }
    bool is_point() const { return lo == hi; }
    mpq_class width() const { return hi - lo; }
    mpq_class mid() const { return (lo + hi) / 2; }

    /// Upper bound of |x| over the interval.
    mpq_class mag_upper() const;
    /// Lower bound of |x| over the interval (0 when it straddles zero).
    mpq_class mag_lower() const;

    RatInterval operator-() const { return RatInterval(-hi, -lo); }
    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return RatInterval(a.lo + b.lo, a.hi + b.hi);
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return RatInterval(a.lo - b.hi, a.hi - b.lo);
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b);

    /// Reciprocal; throws if the interval contains zero.
    RatInterval recip() const;

    bool intersects(const RatInterval& o) const { return !(hi < o.lo || o.hi < lo); }
    bool contains_interval(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool interior_contains(const RatInterval& o) const { return lo < o.lo && o.hi < hi; }
    RatInterval hull(const RatInterval& o) const {
        return RatInterval(std::min(lo, o.lo), std::max(hi, o.hi));
    }

    /// Widens endpoints outward to multiples of 2^-bits; keeps containment
    /// while bounding coefficient bit growth along long computations.
    RatInterval outward_round(unsigned bits) const;

    std::string str() const;
};

/// Axis-aligned complex box re + i*im with certified rational bounds.
struct ComplexBox {
    RatInterval re, im;

    ComplexBox() = default;
    ComplexBox(RatInterval r, RatInterval i) : re(std::move(r)), im(std::move(i)) {}
    explicit ComplexBox(const ExactComplex& z) : re(z.re()), im(z.im()) {}

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool excludes_zero() const { return !contains_zero(); }
    bool contains(const ExactComplex& z) const { return re.contains(z.re()) && im.contains(z.im()); }
    bool is_point() const { return re.is_point() && im.is_point(); }
    ExactComplex mid() const { return ExactComplex(re.mid(), im.mid()); }
    mpq_class width() const { return std::max(re.width(), im.width()); }

    /// Upper bound for |z| (uses |re| + |im| >= |z|; exact enough for bounds).
    mpq_class mag_upper() const { return re.mag_upper() + im.mag_upper(); }
    /// Lower bound for |z| (uses max(|re|, |im|) <= |z|).
    mpq_class mag_lower() const { return std::max(re.mag_lower(), im.mag_lower()); }

    ComplexBox operator-() const { return ComplexBox(-re, -im); }
    friend ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) {
        return ComplexBox(a.re + b.re, a.im + b.im);
    }
    friend ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) {
        return ComplexBox(a.re - b.re, a.im - b.im);
    }
    friend ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
        return ComplexBox(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }

    ComplexBox recip() const;
    friend ComplexBox operator/(const ComplexBox& a, const ComplexBox& b) { return a * b.recip(); }

    bool intersects(const ComplexBox& o) const { return re.intersects(o.re) && im.intersects(o.im); }
    bool contains_box(const ComplexBox& o) const {
        return re.contains_interval(o.re) && im.contains_interval(o.im);
    }
    bool interior_contains(const ComplexBox& o) const {
        return re.interior_contains(o.re) && im.interior_contains(o.im);
    }

    ComplexBox outward_round(unsigned bits) const {
        return ComplexBox(re.outward_round(bits), im.outward_round(bits));
    }

    ComplexBox pow(unsigned e) const;

    std::string str() const;
};

} // namespace levikit

#endif
