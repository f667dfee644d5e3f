#include "levikit/rational.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace levikit {

ExactComplex ExactComplex::inverse() const {
    if (is_zero()) throw math_error("division by zero Gaussian rational");
    mpq_class n = norm();
    return ExactComplex(re_ / n, -im_ / n);
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
    return *this *= o.inverse();
}

int ExactComplex::cmp(const ExactComplex& a, const ExactComplex& b) {
    int c = ::cmp(a.re_, b.re_);
    if (c != 0) return c;
    return ::cmp(a.im_, b.im_);
}

std::string rational_str(const mpq_class& q) {
    std::ostringstream os;
    if (q.get_den() == 1)
        os << q.get_num();
    else
        os << q.get_num() << '/' << q.get_den();
    return os.str();
}

std::string ExactComplex::str() const {
    if (im_ == 0) return rational_str(re_);
    std::string imag = rational_str(abs(im_)) + " i";
    if (re_ == 0) return (im_ < 0 ? "-" : "") + imag;
    return rational_str(re_) + (im_ < 0 ? " - " : " + ") + imag;
}

std::ostream& operator<<(std::ostream& os, const ExactComplex& z) {
    return os << z.str();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// signed integer with optional whitespace after the sign; explicit base 10
// (gmp's string constructors would read a leading 0 as octal)
std::optional<mpz_class> parse_integer(std::string_view s, int& sign) {
    s = trim(s);
    sign = 1;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        if (s.front() == '-') sign = -1;
        s.remove_prefix(1);
        s = trim(s);
    }
    if (!all_digits(s)) return std::nullopt;
    return mpz_class(std::string(s), 10);
}

} // namespace

std::optional<mpq_class> parse_rational(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den =
        slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    int sn = 1, sd = 1;
    auto n = parse_integer(num, sn);
    auto d = parse_integer(den, sd);
    if (!n || !d || *d == 0) return std::nullopt;
    mpq_class q(*n, *d);
    q.canonicalize();
    if (sn * sd < 0) q = -q;
    return q;
}

std::optional<mpq_class> parse_rational_or_decimal(std::string_view text) {
    text = trim(text);
    if (text.find('/') != std::string_view::npos) return parse_rational(text);

    // decimal with optional exponent: [-]ddd[.ddd][e[-]dd]
    bool neg = false;
    std::string_view s = text;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string digits;
    long frac_len = 0, exp10 = 0;
    size_t pos = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            digits += s[pos++];
            ++frac_len;
        }
    }
    if (digits.empty()) return std::nullopt;
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        bool eneg = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            eneg = s[pos] == '-';
            ++pos;
        }
        if (pos >= s.size()) return std::nullopt;
        long e = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            e = e * 10 + (s[pos++] - '0');
            if (e > 100000) return std::nullopt;
        }
        exp10 = eneg ? -e : e;
    }
    if (pos != s.size()) return std::nullopt;

    mpz_class mant(digits, 10);
    mpq_class q(mant);
    long net = exp10 - frac_len;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
    if (net < 0)
        q /= mpq_class(pow10);
    else
        q *= mpq_class(pow10);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

std::optional<ExactComplex> ExactComplex::parse(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;

    // Split "A + B i" / "A - B i" at a top-level +/- that is not leading.
    // Both A and B are plain rationals; 'i' marks the imaginary component.
    auto parse_part = [](std::string_view part, bool& is_imag) -> std::optional<mpq_class> {
        part = trim(part);
        is_imag = false;
        if (!part.empty() && (part.back() == 'i' || part.back() == 'I')) {
            is_imag = true;
            part.remove_suffix(1);
            part = trim(part);
            if (part.empty() || part == "+") return mpq_class(1);
            if (part == "-") return mpq_class(-1);
        }
        return parse_rational(part);
    };

    size_t split = std::string_view::npos;
    for (size_t k = 1; k < text.size(); ++k) {
        if (text[k] == '+' || text[k] == '-') {
            split = k;
            break;
        }
    }

    bool imag1 = false, imag2 = false;
    if (split == std::string_view::npos) {
        auto v = parse_part(text, imag1);
        if (!v) return std::nullopt;
        return imag1 ? ExactComplex(mpq_class(0), *v) : ExactComplex(*v);
    }
    auto a = parse_part(text.substr(0, split), imag1);
    auto b = parse_part(text.substr(split + 1), imag2);
    if (!a || !b || imag1 || !imag2) return std::nullopt;
    if (text[split] == '-') *b = -*b;
    return ExactComplex(*a, *b);
}

std::optional<mpq_class> exact_sqrt(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return mpq_class(0);
    mpz_class num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return mpq_class(rn) / mpq_class(rd);
}

} // namespace levikit
