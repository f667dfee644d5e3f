#include "levikit/unipoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <sstream>

namespace levikit {

void UniPoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int UniPoly::order_at_zero() const {
    if (c_.empty()) throw math_error("order at zero of the zero polynomial requested");
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return static_cast<int>(k);
    return 0; // unreachable given the invariant
}

bool UniPoly::is_real() const {
    for (const auto& c : c_)
        if (!c.is_real()) return false;
    return true;
}

UniPoly UniPoly::operator-() const {
    std::vector<ExactComplex> out(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) out[k] = -c_[k];
    return UniPoly(std::move(out));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<ExactComplex> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (k < a.c_.size()) out[k] += a.c_[k];
        if (k < b.c_.size()) out[k] += b.c_[k];
    }
    return UniPoly(std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<ExactComplex> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (k < a.c_.size()) out[k] += a.c_[k];
        if (k < b.c_.size()) out[k] -= b.c_[k];
    }
    return UniPoly(std::move(out));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<ExactComplex> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(out));
}

UniPoly UniPoly::scaled(const ExactComplex& s) const {
    if (s.is_zero()) return UniPoly();
    std::vector<ExactComplex> out(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) out[k] = c_[k] * s;
    return UniPoly(std::move(out));
}

ExactComplex UniPoly::eval(const ExactComplex& x) const {
    ExactComplex acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

ComplexBox UniPoly::eval_box(const ComplexBox& x) const {
    ComplexBox acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + ComplexBox(*it);
    return acc;
}

int UniPoly::sign_at(const mpq_class& x) const {
    mpq_class acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (!it->is_real()) throw math_error("sign query on a non-real polynomial");
        acc = acc * x + it->re();
    }
    return sgn(acc);
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<ExactComplex> out(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
        out[k - 1] = c_[k] * ExactComplex(static_cast<long>(k));
    return UniPoly(std::move(out));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(lead().inverse());
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw math_error("univariate division by zero");
    UniPoly r = *this;
    if (r.degree() < d.degree()) return {UniPoly(), r};
    std::vector<ExactComplex> q(static_cast<std::size_t>(r.degree() - d.degree()) + 1);
    ExactComplex dinv = d.lead().inverse();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
        ExactComplex f = r.lead() * dinv;
        q[shift] = f;
        std::vector<ExactComplex> rc = r.c_;
        for (std::size_t k = 0; k < d.c_.size(); ++k) rc[k + shift] -= f * d.c_[k];
        r = UniPoly(std::move(rc));
    }
    return {UniPoly(std::move(q)), r};
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a % b;
        a = std::move(b);
        b = std::move(r).monic();
    }
    return a.monic();
}

std::vector<std::pair<UniPoly, int>> UniPoly::squarefree_decomposition() const {
    std::vector<std::pair<UniPoly, int>> out;
    if (is_constant()) return out;
    UniPoly p = monic();
    UniPoly g = gcd(p, p.derivative());
    UniPoly w = p / g;
    UniPoly y = p.derivative() / g;
    UniPoly z = y - w.derivative();
    int i = 1;
    while (!w.is_constant()) {
        UniPoly gi = gcd(w, z);
        if (gi.degree() > 0) out.emplace_back(gi, i);
        w = w / gi;
        y = z / gi;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

UniPoly UniPoly::squarefree_part() const {
    if (is_constant()) return monic();
    UniPoly p = monic();
    return p / gcd(p, p.derivative());
}

mpq_class UniPoly::root_bound() const {
    if (degree() < 1) return 0;
    // Cauchy: 1 + max |a_k| / |a_n|, with |z| bounded via |re| + |im|.
    mpq_class lead_low = std::max(abs(c_.back().re()), abs(c_.back().im()));
    mpq_class big(0);
    for (std::size_t k = 0; k + 1 < c_.size(); ++k)
        big = std::max(big, mpq_class(abs(c_[k].re()) + abs(c_[k].im())));
    return 1 + big / lead_low;
}

std::string UniPoly::str(const std::string& var) const {
    return to_multipoly(var).str();
}

UniPoly UniPoly::from_multipoly(const MultiPoly& f, const std::string& var) {
    int idx = f.var_index(var);
    if (idx < 0) throw input_error("unknown variable '" + var + "'");
    std::vector<ExactComplex> out(static_cast<std::size_t>(f.degree_in(var)) + 1);
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t k = 0; k < e.size(); ++k)
            if (static_cast<int>(k) != idx && e[k] != 0)
                throw internal_error("from_multipoly: polynomial is not univariate in " + var);
        out[e[static_cast<std::size_t>(idx)]] = c;
    }
    return UniPoly(std::move(out));
}

MultiPoly UniPoly::to_multipoly(const std::string& var) const {
    MultiPoly out({var});
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) out.add_term({static_cast<unsigned>(k)}, c_[k]);
    return out;
}

// ---------------------------------------------------------------------------
// complex root isolation

namespace {

// Deterministic tiny offsets with odd denominators; combined with dyadic
// subdivision endpoints they keep roots off cell boundaries.
ExactComplex dither_offset(unsigned long seed, int attempt) {
    static const long primes[] = {7919, 104729, 15485863, 32452843, 49979687, 67867967};
    long p1 = primes[(seed + static_cast<unsigned long>(attempt)) % 6];
    long p2 = primes[(seed + static_cast<unsigned long>(attempt) + 3) % 6];
    return ExactComplex(mpq_class(1, p1), mpq_class(1, p2));
}

UniPoly taylor_shift(const UniPoly& p, const ExactComplex& a) {
    // p(x + a) by repeated synthetic division
    std::vector<ExactComplex> c = p.coefs();
    std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j >= i + 1; --j) c[j - 1] += a * c[j];
    return UniPoly(std::move(c));
}

// radius of a disk centered at box.mid() covering the box
mpq_class covering_radius(const ComplexBox& box) {
    return box.re.width() / 2 + box.im.width() / 2;
}

// Centered ("ball") enclosure of p over the disk |x - m| <= r: value p(m)
// widened by sum_{k>=1} |c_k| r^k with c = taylor_shift(p, m). Far tighter
// than interval Horner, whose dependency error compounds with the degree.
ComplexBox ball_eval(const UniPoly& p, const ExactComplex& m, const mpq_class& r) {
    UniPoly shifted = taylor_shift(p, m);
    const auto& c = shifted.coefs();
    ExactComplex center = c.empty() ? ExactComplex(0) : c[0];
    mpq_class tail(0);
    mpq_class rk(1);
    for (std::size_t k = 1; k < c.size(); ++k) {
        rk *= r;
        tail += (abs(c[k].re()) + abs(c[k].im())) * rk;
    }
    return ComplexBox(RatInterval(center.re() - tail, center.re() + tail),
                      RatInterval(center.im() - tail, center.im() + tail));
}

// certified: p has no zero on the box (|p(m)| strictly dominates the tail)
bool ball_excludes_zero(const UniPoly& p, const ComplexBox& box) {
    ExactComplex m = box.mid();
    mpq_class r = covering_radius(box);
    UniPoly shifted = taylor_shift(p, m);
    const auto& c = shifted.coefs();
    if (c.empty()) return false;
    mpq_class lb = std::max(abs(c[0].re()), abs(c[0].im())); // lower bound for |p(m)|
    mpq_class tail(0);
    mpq_class rk(1);
    for (std::size_t k = 1; k < c.size(); ++k) {
        rk *= r;
        tail += (abs(c[k].re()) + abs(c[k].im())) * rk;
        if (tail >= lb) return false;
    }
    return lb > tail;
}

struct KrawczykResult {
    bool certified = false;
    ComplexBox contracted;
};

KrawczykResult krawczyk_step(const UniPoly& p, const UniPoly& dp, const ComplexBox& box) {
    KrawczykResult res;
    ExactComplex y = box.mid();
    ExactComplex dpy = dp.eval(y);
    if (dpy.is_zero()) return res;
    ExactComplex c = dpy.inverse();
    ComplexBox cb(c);
    ComplexBox py(p.eval(y));
    ComplexBox one{RatInterval(mpq_class(1)), RatInterval(mpq_class(0))};
    ComplexBox dball = ball_eval(dp, y, covering_radius(box));
    ComplexBox k = ComplexBox(y) - cb * py + (one - cb * dball) * (box - ComplexBox(y));
    if (box.interior_contains(k)) {
        res.certified = true;
        res.contracted = k;
    }
    return res;
}

} // namespace

ComplexBox refine_root_box(const UniPoly& p, ComplexBox box, const mpq_class& width) {
    UniPoly dp = p.derivative();
    unsigned bits = 64;
    int stall = 0;
    while (box.width() > width) {
        auto kr = krawczyk_step(p, dp, box);
        if (kr.certified) {
            ComplexBox next(RatInterval(std::max(box.re.lo, kr.contracted.re.lo),
                                        std::min(box.re.hi, kr.contracted.re.hi)),
                            RatInterval(std::max(box.im.lo, kr.contracted.im.lo),
                                        std::min(box.im.hi, kr.contracted.im.hi)));
            next = next.outward_round(bits);
            if (next.width() >= box.width()) {
                bits += 64;
                if (++stall > 64) throw internal_error("root box refinement stalled");
            } else {
                stall = 0;
            }
            box = next;
        } else {
            bits += 64;
            if (++stall > 64) throw internal_error("root box refinement failed to certify");
        }
    }
    return box;
}

namespace {

// Durand-Kerner approximation in hardware floats; the output only seeds
// exact certification, so rounding here cannot compromise soundness.
std::vector<std::complex<double>> durand_kerner(const UniPoly& p) {
    UniPoly m = p.monic();
    int n = m.degree();
    std::vector<std::complex<double>> a(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        a[static_cast<std::size_t>(k)] = {m[static_cast<std::size_t>(k)].re().get_d(),
                                          m[static_cast<std::size_t>(k)].im().get_d()};
    std::vector<std::complex<double>> x(static_cast<std::size_t>(n));
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc(1.0, 0.0);
    for (int k = 0; k < n; ++k) {
        acc *= seed;
        x[static_cast<std::size_t>(k)] = acc;
    }
    auto eval = [&](std::complex<double> z) {
        std::complex<double> v = a[static_cast<std::size_t>(n)];
        for (int k = n - 1; k >= 0; --k) v = v * z + a[static_cast<std::size_t>(k)];
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> denom(1.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != i)
                    denom *= x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            if (denom == std::complex<double>(0.0, 0.0)) {
                x[static_cast<std::size_t>(i)] += std::complex<double>(1e-8, 1e-8);
                worst = 1;
                continue;
            }
            std::complex<double> w = eval(x[static_cast<std::size_t>(i)]) / denom;
            x[static_cast<std::size_t>(i)] -= w;
            worst = std::max(worst, std::abs(w));
        }
        if (worst < 1e-14) break;
    }
    return x;
}

mpq_class dyadic_near(double v, int bits) {
    double scaled = std::ldexp(v, bits);
    if (!std::isfinite(scaled)) return mpq_class(0);
    mpz_class num;
    mpz_set_d(num.get_mpz_t(), scaled);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits));
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

// fast path: certify one Krawczyk box around each floating approximation
std::optional<std::vector<ComplexBox>> certify_approximations(const UniPoly& p) {
    int n = p.degree();
    auto approx = durand_kerner(p);
    UniPoly dp = p.derivative();
    std::vector<ComplexBox> roots;
    roots.reserve(static_cast<std::size_t>(n));
    for (const auto& z : approx) {
        double scale = std::max(1.0, std::abs(z));
        bool done = false;
        for (int widen = 0; widen < 10 && !done; ++widen) {
            double r = scale * 1e-12 * std::pow(8.0, widen);
            mpq_class re = dyadic_near(z.real(), 48);
            mpq_class im = dyadic_near(z.imag(), 48);
            mpq_class rad = dyadic_near(r, 48);
            if (rad <= 0) continue;
            ComplexBox box(RatInterval(re - rad, re + rad), RatInterval(im - rad, im + rad));
            auto kr = krawczyk_step(p, dp, box);
            if (kr.certified) {
                // keep endpoints dyadic-small: round outward, clamp to the box
                ComplexBox r128 = kr.contracted.outward_round(128);
                ComplexBox clamped(
                    RatInterval(std::max(r128.re.lo, box.re.lo), std::min(r128.re.hi, box.re.hi)),
                    RatInterval(std::max(r128.im.lo, box.im.lo), std::min(r128.im.hi, box.im.hi)));
                roots.push_back(clamped);
                done = true;
            }
        }
        if (!done) return std::nullopt;
    }
    // pairwise disjoint and complete => every root isolated exactly once
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (roots[i].intersects(roots[j])) return std::nullopt;
    if (static_cast<int>(roots.size()) != n) return std::nullopt;
    std::sort(roots.begin(), roots.end(), [](const ComplexBox& a, const ComplexBox& b) {
        if (a.re.lo != b.re.lo) return a.re.lo < b.re.lo;
        return a.im.lo < b.im.lo;
    });
    return roots;
}

} // namespace

std::vector<ComplexBox> isolate_complex_roots(const UniPoly& p, unsigned long seed) {
    if (p.degree() <= 0) return {};
    if (auto fast = certify_approximations(p)) return *fast;
    for (int attempt = 0; attempt < 8; ++attempt) {
        ExactComplex delta = dither_offset(seed, attempt);
        UniPoly q = taylor_shift(p, delta).monic(); // roots of q = roots of p minus delta
        UniPoly dq = q.derivative();

        mpq_class bound = q.root_bound();
        // dyadic power-of-two bound so subdivision endpoints stay dyadic
        mpq_class b(1);
        while (b < bound) b *= 2;
        std::deque<std::pair<ComplexBox, int>> work;
        work.emplace_back(ComplexBox(RatInterval(-b, b), RatInterval(-b, b)), 0);
        std::vector<ComplexBox> roots;
        bool failed = false;
        const int max_depth = 96;

        while (!work.empty()) {
            auto [box, depth] = work.front();
            work.pop_front();
            if (ball_excludes_zero(q, box)) continue;
            auto kr = krawczyk_step(q, dq, box);
            if (kr.certified) {
                ComplexBox r128 = kr.contracted.outward_round(128);
                roots.push_back(ComplexBox(
                    RatInterval(std::max(r128.re.lo, box.re.lo), std::min(r128.re.hi, box.re.hi)),
                    RatInterval(std::max(r128.im.lo, box.im.lo), std::min(r128.im.hi, box.im.hi))));
                continue;
            }
            if (depth >= max_depth) {
                failed = true;
                break;
            }
            // split the wider side
            if (box.re.width() >= box.im.width()) {
                mpq_class m = box.re.mid();
                work.emplace_back(ComplexBox(RatInterval(box.re.lo, m), box.im), depth + 1);
                work.emplace_back(ComplexBox(RatInterval(m, box.re.hi), box.im), depth + 1);
            } else {
                mpq_class m = box.im.mid();
                work.emplace_back(ComplexBox(box.re, RatInterval(box.im.lo, m)), depth + 1);
                work.emplace_back(ComplexBox(box.re, RatInterval(m, box.im.hi)), depth + 1);
            }
        }
        if (failed || static_cast<int>(roots.size()) != p.degree()) continue;

        // undo the shift and order canonically
        std::vector<ComplexBox> out;
        out.reserve(roots.size());
        for (auto& r : roots) out.push_back(r + ComplexBox(delta));
        std::sort(out.begin(), out.end(), [](const ComplexBox& a, const ComplexBox& b) {
            if (a.re.lo != b.re.lo) return a.re.lo < b.re.lo;
            return a.im.lo < b.im.lo;
        });
        return out;
    }
    throw internal_error("complex root isolation failed (non-squarefree input or depth cap)");
}

// ---------------------------------------------------------------------------
// real root isolation (Sturm)

namespace {

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        UniPoly r = chain[chain.size() - 2] % chain.back();
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int sign_variations(const std::vector<UniPoly>& chain, const mpq_class& x) {
    int prev = 0, var = 0;
    for (const auto& q : chain) {
        if (q.is_zero()) continue;
        int s = q.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

void isolate_rec(const UniPoly& p, const std::vector<UniPoly>& chain, const mpq_class& lo,
                 const mpq_class& hi, int nroots, std::vector<RatInterval>& out, int depth) {
    if (nroots == 0) return;
    if (depth > 4096) throw internal_error("real root isolation exceeded depth cap");
    if (nroots == 1) {
        out.emplace_back(lo, hi);
        return;
    }
    mpq_class mid = (lo + hi) / 2;
    if (p.sign_at(mid) == 0) {
        out.emplace_back(mid, mid); // exact rational root
        // nudge inward so the sub-ranges have non-root endpoints
        mpq_class eps = (hi - lo) / 1024;
        mpq_class a = mid - eps, b = mid + eps;
        while (p.sign_at(a) == 0) a = (lo + a) / 2;
        while (p.sign_at(b) == 0) b = (b + hi) / 2;
        int left = sign_variations(chain, lo) - sign_variations(chain, a);
        int right = sign_variations(chain, b) - sign_variations(chain, hi);
        isolate_rec(p, chain, lo, a, left, out, depth + 1);
        isolate_rec(p, chain, b, hi, right, out, depth + 1);
        return;
    }
    int left = sign_variations(chain, lo) - sign_variations(chain, mid);
    int right = sign_variations(chain, mid) - sign_variations(chain, hi);
    isolate_rec(p, chain, lo, mid, left, out, depth + 1);
    isolate_rec(p, chain, mid, hi, right, out, depth + 1);
}

} // namespace

std::vector<RatInterval> isolate_real_roots(const UniPoly& p) {
    if (!p.is_real()) throw math_error("real root isolation needs real coefficients");
    if (p.degree() <= 0) return {};
    UniPoly sf = p.squarefree_part();
    mpq_class b = sf.root_bound();
    // keep endpoints off roots
    while (sf.sign_at(-b) == 0 || sf.sign_at(b) == 0) b += 1;
    auto chain = sturm_chain(sf);
    int n = sign_variations(chain, -b) - sign_variations(chain, b);
    std::vector<RatInterval> out;
    isolate_rec(sf, chain, -b, b, n, out, 0);
    std::sort(out.begin(), out.end(),
              [](const RatInterval& a, const RatInterval& c) { return a.lo < c.lo; });
    return out;
}

RatInterval refine_real_root(const UniPoly& p, RatInterval iv, const mpq_class& width) {
    if (iv.is_point()) return iv;
    int slo = p.sign_at(iv.lo);
    int shi = p.sign_at(iv.hi);
    if (slo == 0) return RatInterval(iv.lo, iv.lo);
    if (shi == 0) return RatInterval(iv.hi, iv.hi);
    if (slo == shi) throw internal_error("refine_real_root: no sign change on interval");
    while (iv.width() > width) {
        mpq_class m = iv.mid();
        int sm = p.sign_at(m);
        if (sm == 0) return RatInterval(m, m);
        if (sm == slo)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

// ---------------------------------------------------------------------------
// modular coprimality filter

namespace {

// GF(p^2) = GF(p)[i] with i^2 = -1 for the Mersenne prime p = 2^31 - 1
// (p = 3 mod 4, so x^2 + 1 is irreducible).
constexpr unsigned long FP = 2147483647UL;

struct Fp2 {
    unsigned long re = 0, im = 0;
    bool is_zero() const { return re == 0 && im == 0; }
};

unsigned long fp_mul(unsigned long a, unsigned long b) { return (a * b) % FP; }
unsigned long fp_add(unsigned long a, unsigned long b) { return (a + b) % FP; }
unsigned long fp_sub(unsigned long a, unsigned long b) { return (a + FP - b) % FP; }

unsigned long fp_pow(unsigned long a, unsigned long e) {
    unsigned long r = 1;
    while (e) {
        if (e & 1UL) r = fp_mul(r, a);
        a = fp_mul(a, a);
        e >>= 1UL;
    }
    return r;
}
unsigned long fp_inv(unsigned long a) { return fp_pow(a, FP - 2); }

Fp2 fp2_mul(Fp2 a, Fp2 b) {
    return {fp_sub(fp_mul(a.re, b.re), fp_mul(a.im, b.im)),
            fp_add(fp_mul(a.re, b.im), fp_mul(a.im, b.re))};
}
Fp2 fp2_sub(Fp2 a, Fp2 b) { return {fp_sub(a.re, b.re), fp_sub(a.im, b.im)}; }
Fp2 fp2_inv(Fp2 a) {
    unsigned long n = fp_add(fp_mul(a.re, a.re), fp_mul(a.im, a.im));
    unsigned long ninv = fp_inv(n);
    return {fp_mul(a.re, ninv), fp_mul(fp_sub(0, a.im), ninv)};
}

unsigned long fp_of_mpz(const mpz_class& z) {
    mpz_class m = z % static_cast<long>(FP);
    long v = m.get_si();
    if (v < 0) v += static_cast<long>(FP);
    return static_cast<unsigned long>(v);
}

// image of a Gaussian rational; nullopt when a denominator vanishes mod p
std::optional<Fp2> fp2_of(const ExactComplex& c) {
    unsigned long dr = fp_of_mpz(c.re().get_den());
    unsigned long di = fp_of_mpz(c.im().get_den());
    if (dr == 0 || di == 0) return std::nullopt;
    return Fp2{fp_mul(fp_of_mpz(c.re().get_num()), fp_inv(dr)),
               fp_mul(fp_of_mpz(c.im().get_num()), fp_inv(di))};
}

} // namespace

bool unipoly_coprime(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return false;
    if (a.is_constant() || b.is_constant()) return true;
    // modular image: sound when both leading coefficients survive, because
    // lc(gcd) divides lc(a), so the gcd image keeps full degree and divides
    // the image gcd
    auto to_image = [](const UniPoly& p) -> std::optional<std::vector<Fp2>> {
        std::vector<Fp2> out;
        out.reserve(p.coefs().size());
        for (const auto& c : p.coefs()) {
            auto v = fp2_of(c);
            if (!v) return std::nullopt;
            out.push_back(*v);
        }
        while (!out.empty() && out.back().is_zero()) out.pop_back();
        return out;
    };
    auto ia = to_image(a);
    auto ib = to_image(b);
    if (ia && ib && ia->size() == a.coefs().size() && ib->size() == b.coefs().size()) {
        std::vector<Fp2> u = *ia, v = *ib;
        while (!v.empty()) {
            // remainder u mod v in GF(p^2)
            Fp2 lead_inv = fp2_inv(v.back());
            while (u.size() >= v.size()) {
                Fp2 f = fp2_mul(u.back(), lead_inv);
                std::size_t shift = u.size() - v.size();
                for (std::size_t k = 0; k < v.size(); ++k)
                    u[k + shift] = fp2_sub(u[k + shift], fp2_mul(f, v[k]));
                while (!u.empty() && u.back().is_zero()) u.pop_back();
                if (u.empty()) break;
            }
            std::swap(u, v);
        }
        if (u.size() == 1) return true; // image gcd constant => gcd constant
    }
    return UniPoly::gcd(a, b).degree() == 0;
}

// ---------------------------------------------------------------------------
// rational reconstruction

namespace {

mpq_class simplest_in_pos(const mpq_class& lo, const mpq_class& hi) {
    // 0 < lo <= hi
    mpz_class fl = lo.get_num() / lo.get_den(); // floor for positive
    mpq_class flq(fl);
    if (flq == lo) return lo;                  // lo itself integer
    if (hi >= flq + 1) return flq + 1;         // an integer inside
    mpq_class rl = 1 / (hi - flq);
    mpq_class rh = 1 / (lo - flq);
    return flq + 1 / simplest_in_pos(rl, rh);
}

} // namespace

mpq_class simplest_rational_in(const mpq_class& lo, const mpq_class& hi) {
    if (lo > hi) throw internal_error("simplest_rational_in: empty interval");
    if (lo <= 0 && hi >= 0) return 0;
    if (hi < 0) return -simplest_in_pos(-hi, -lo);
    return simplest_in_pos(lo, hi);
}

std::optional<ExactComplex> rational_root_in_box(const UniPoly& p, ComplexBox box, int rounds) {
    for (int r = 0; r < rounds; ++r) {
        ExactComplex cand(simplest_rational_in(box.re.lo, box.re.hi),
                          simplest_rational_in(box.im.lo, box.im.hi));
        if (box.contains(cand) && p.eval(cand).is_zero()) return cand;
        mpq_class target = box.width() / 16;
        if (target == 0) break;
        ComplexBox refined = refine_root_box(p, box, target);
        if (refined.width() >= box.width()) break;
        box = refined;
    }
    return std::nullopt;
}

} // namespace levikit
