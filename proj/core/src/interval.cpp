#include "levikit/interval.hpp"

#include <algorithm>
#include <sstream>

namespace levikit {

mpq_class RatInterval::mag_upper() const {
    return std::max(mpq_class(abs(lo)), mpq_class(abs(hi)));
}

mpq_class RatInterval::mag_lower() const {
    if (contains_zero()) return 0;
    return std::min(mpq_class(abs(lo)), mpq_class(abs(hi)));
}

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    mpq_class p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return RatInterval(std::min(std::min(p1, p2), std::min(p3, p4)),
                       std::max(std::max(p1, p2), std::max(p3, p4)));
}

RatInterval RatInterval::recip() const {
    if (contains_zero()) throw math_error("interval reciprocal straddles zero");
    return RatInterval(1 / hi, 1 / lo);
}

namespace {

// Round q toward -inf (dir < 0) or +inf (dir > 0) to a multiple of 2^-bits.
mpq_class round_dyadic(const mpq_class& q, unsigned bits, int dir) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    mpq_class scaled = q * mpq_class(scale);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    if (dir > 0 && mpq_class(fl) != scaled) fl += 1;
    mpq_class out = mpq_class(fl) / mpq_class(scale);
    out.canonicalize();
    return out;
}

} // namespace

RatInterval RatInterval::outward_round(unsigned bits) const {
    return RatInterval(round_dyadic(lo, bits, -1), round_dyadic(hi, bits, +1));
}

std::string RatInterval::str() const {
    std::ostringstream os;
    os << '[' << rational_str(lo) << ", " << rational_str(hi) << ']';
    return os.str();
}

ComplexBox ComplexBox::recip() const {
    if (contains_zero()) throw math_error("box reciprocal straddles zero");
    // 1/z = conj(z)/|z|^2; |z|^2 enclosed by re^2 + im^2.
    RatInterval n = re * re + im * im;
    RatInterval inv = n.recip();
    return ComplexBox(re * inv, (-im) * inv);
}

ComplexBox ComplexBox::pow(unsigned e) const {
    ComplexBox acc{RatInterval(mpq_class(1)), RatInterval(mpq_class(0))};
    ComplexBox base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

std::string ComplexBox::str() const {
    return re.str() + " + " + im.str() + " i";
}

} // namespace levikit
