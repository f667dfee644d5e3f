#include "levikit/puiseux.hpp"

#include "levikit/polygcd.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <numeric>
#include <sstream>
#include <tuple>

namespace levikit {

// ---------------------------------------------------------------------------
// extension field

namespace {

// extended Euclid: returns (g, u, v) monic g with u*a + v*b = g
std::tuple<UniPoly, UniPoly, UniPoly> ext_gcd(UniPoly a, UniPoly b) {
    UniPoly u0 = UniPoly::constant(ExactComplex(1)), v0;
    UniPoly u1, v1 = UniPoly::constant(ExactComplex(1));
    while (!b.is_zero()) {
        auto [q, r] = a.divmod(b);
        UniPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
        a = std::move(b);
        b = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (!a.is_zero()) {
        ExactComplex s = a.lead().inverse();
        a = a.scaled(s);
        u0 = u0.scaled(s);
        v0 = v0.scaled(s);
    }
    return {a, u0, v0};
}

} // namespace

FieldTower::FieldTower() : modulus_(UniPoly::x()), root_(ComplexBox(ExactComplex(0))) {}

FieldTower::FieldTower(UniPoly modulus, ComplexBox root)
    : modulus_(std::move(modulus)), root_(std::move(root)) {
    if (modulus_.degree() < 1) throw internal_error("field modulus must have degree >= 1");
}

bool FieldTower::is_zero(const UniPoly& a) {
    UniPoly r = reduce(a);
    if (r.is_zero()) return true;
    if (is_rational()) return false;
    UniPoly g = UniPoly::gcd(r, modulus_);
    if (g.degree() <= 0) return false;
    if (g.degree() == modulus_.degree()) return true;
    UniPoly h = modulus_ / g;
    // r vanishes exactly at the roots of g; the box decides our side
    for (int iter = 0; iter < 256; ++iter) {
        if (g.eval_box(root_).excludes_zero()) {
            modulus_ = h;
            return false;
        }
        if (h.eval_box(root_).excludes_zero()) {
            modulus_ = g;
            return true;
        }
        mpq_class target = root_.width() / 16;
        if (target == 0) break;
        root_ = refine_root_box(modulus_, root_, target);
    }
    throw internal_error("field split undecidable from the root box");
}

UniPoly FieldTower::inverse(const UniPoly& a) {
    if (is_zero(a)) throw math_error("inverse of a zero field element");
    UniPoly r = reduce(a);
    if (is_rational()) return UniPoly::constant(r.coefs()[0].inverse());
    auto [g, u, v] = ext_gcd(r, modulus_);
    (void)v;
    if (g.degree() != 0) throw internal_error("inverse of a zero divisor escaped the zero test");
    // g is the constant 1 after normalization
    return reduce(u);
}

ComplexBox FieldTower::elem_box(const UniPoly& a, const mpq_class& width) {
    UniPoly r = reduce(a);
    ComplexBox out = r.eval_box(root_);
    int guard = 0;
    while (out.width() > width && guard++ < 128) {
        mpq_class target = root_.width() / 16;
        if (target == 0) break;
        refine_root(target);
        out = r.eval_box(root_);
    }
    return out;
}

void FieldTower::refine_root(const mpq_class& width) {
    if (root_.width() <= width) return;
    root_ = refine_root_box(modulus_, root_, width);
}

// ---------------------------------------------------------------------------
// internal bivariate scaffolding

namespace {

using BiKey = std::pair<int, int>; // (x-exponent, y-exponent)

struct BiPoly {
    std::map<BiKey, ExactComplex> t;

    bool has_origin() const { return t.count({0, 0}) > 0; }
    int min_x() const {
        int m = INT_MAX;
        for (const auto& [k, c] : t) m = std::min(m, k.first);
        return m;
    }
    int min_y() const {
        int m = INT_MAX;
        for (const auto& [k, c] : t) m = std::min(m, k.second);
        return m;
    }
    void shift_x(int d) {
        std::map<BiKey, ExactComplex> nt;
        for (auto& [k, c] : t) nt[{k.first - d, k.second}] = c;
        t = std::move(nt);
    }
    void shift_y(int d) {
        std::map<BiKey, ExactComplex> nt;
        for (auto& [k, c] : t) nt[{k.first, k.second - d}] = c;
        t = std::move(nt);
    }
};

BiPoly to_bipoly(const MultiPoly& f) {
    if (f.variables().size() != 2)
        throw input_error("puiseux expansion needs an affine polynomial in two variables");
    BiPoly out;
    for (const auto& [e, c] : f.terms())
        out.t[{static_cast<int>(e[0]), static_cast<int>(e[1])}] = c;
    return out;
}

// K-coefficient bivariate polynomial (coefficients are field reps)
using KBiPoly = std::map<BiKey, UniPoly>;

using KSeries = std::map<int, UniPoly>; // t-exponent -> field rep

KSeries series_mul(const KSeries& a, const KSeries& b, int truncate, FieldTower& field) {
    KSeries out;
    for (const auto& [ka, va] : a) {
        for (const auto& [kb, vb] : b) {
            int k = ka + kb;
            if (k >= truncate) continue;
            UniPoly prod = field.mul(va, vb);
            if (prod.is_zero()) continue;
            auto it = out.find(k);
            if (it == out.end())
                out.emplace(k, std::move(prod));
            else {
                it->second = field.reduce(it->second + prod);
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

void series_add_into(KSeries& a, const KSeries& b, FieldTower& field) {
    for (const auto& [k, v] : b) {
        auto it = a.find(k);
        if (it == a.end())
            a.emplace(k, v);
        else {
            it->second = field.reduce(it->second + v);
            if (it->second.is_zero()) a.erase(it);
        }
    }
}

// evaluate G(x1, S(x1)) mod x1^T by Horner in y1
KSeries eval_at_series(const KBiPoly& G, const KSeries& S, int T, FieldTower& field) {
    int dy = 0;
    for (const auto& [k, v] : G) dy = std::max(dy, k.second);
    // coefficient series of each y-power
    std::vector<KSeries> C(static_cast<std::size_t>(dy) + 1);
    for (const auto& [k, v] : G) {
        if (k.first >= T) continue;
        C[static_cast<std::size_t>(k.second)][k.first] = v;
    }
    KSeries R = C[static_cast<std::size_t>(dy)];
    for (int m = dy - 1; m >= 0; --m) {
        R = series_mul(R, S, T, field);
        series_add_into(R, C[static_cast<std::size_t>(m)], field);
    }
    return R;
}

// y1(x1) = sum b_k x1^k solving G(x1, y1) = 0 with invertible D = G_{y1}(0,0)
KSeries implicit_series(const KBiPoly& G, FieldTower& field, int length) {
    auto it = G.find({0, 1});
    if (it == G.end()) throw internal_error("implicit series: missing linear term");
    UniPoly D = it->second;
    UniPoly Dinv = field.inverse(D);
    KSeries S;
    for (int k = 1; k < length; ++k) {
        KSeries R = eval_at_series(G, S, k + 1, field);
        auto rit = R.find(k);
        if (rit == R.end() || rit->second.is_zero()) continue;
        UniPoly bk = field.mul(-rit->second, Dinv);
        if (!bk.is_zero()) S[k] = std::move(bk);
    }
    return S;
}

ExactComplex pow_exact(const ExactComplex& base, long e) {
    if (e == 0) return ExactComplex(1);
    ExactComplex b = e > 0 ? base : base.inverse();
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    ExactComplex acc(1);
    while (n) {
        if (n & 1ul) acc *= b;
        b *= b;
        n >>= 1ul;
    }
    return acc;
}

mpz_class binomial(int n, int k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

struct Edge {
    int i1, j1, i2, j2; // vertices, j1 > j2, i1 < i2
    int p, q, s;        // primitive slope data: dj = p*s, di = q*s
};

std::vector<Edge> newton_edges(const BiPoly& F) {
    // vertex on the y-axis (smallest j with i = 0) down to the x-axis vertex
    int j0 = INT_MAX, i0 = INT_MAX;
    for (const auto& [k, c] : F.t) {
        if (k.first == 0) j0 = std::min(j0, k.second);
        if (k.second == 0) i0 = std::min(i0, k.first);
    }
    if (j0 == INT_MAX || i0 == INT_MAX)
        throw internal_error("newton_edges: input has an axis factor");
    std::vector<Edge> edges;
    int ci = 0, cj = j0;
    while (cj > 0) {
        // steepest descent: maximize (cj - j) / (i - ci); tie -> farthest
        bool found = false;
        long bn = 0, bd = 1;
        int bi = 0, bj = 0;
        for (const auto& [k, c] : F.t) {
            if (k.first <= ci || k.second >= cj) continue;
            long n = cj - k.second, d = k.first - ci;
            if (!found || n * bd > bn * d ||
                (n * bd == bn * d && d > bd)) {
                bn = n;
                bd = d;
                bi = k.first;
                bj = k.second;
                found = true;
            }
        }
        if (!found) throw internal_error("newton polygon walk failed");
        Edge e;
        e.i1 = ci;
        e.j1 = cj;
        e.i2 = bi;
        e.j2 = bj;
        long g = std::gcd(bn, bd);
        e.p = static_cast<int>(bn / g);
        e.q = static_cast<int>(bd / g);
        e.s = static_cast<int>(g);
        edges.push_back(e);
        ci = bi;
        cj = bj;
    }
    return edges;
}

UniPoly edge_psi(const BiPoly& F, const Edge& e) {
    std::vector<ExactComplex> c(static_cast<std::size_t>(e.s) + 1);
    for (int t = 0; t <= e.s; ++t) {
        auto it = F.t.find({e.i1 + t * e.q, e.j1 - t * e.p});
        if (it != F.t.end()) c[static_cast<std::size_t>(e.s - t)] = it->second;
    }
    return UniPoly(std::move(c));
}

// G(x1, y1) = F(a x1^p, x1^q (c + y1)) / x1^m with exact rational a, c
KBiPoly recenter(const BiPoly& F, const Edge& e, const ExactComplex& a, const UniPoly& c_rep,
                 const UniPoly& modulus, int keep_up_to) {
    const int p = e.p, q = e.q;
    std::map<BiKey, UniPoly> acc;
    int m = INT_MAX;
    for (const auto& [k, coef] : F.t) m = std::min(m, k.first * p + k.second * q);
    for (const auto& [k, coef] : F.t) {
        int base = k.first * p + k.second * q - m;
        if (base > keep_up_to) continue;
        ExactComplex ai = pow_exact(a, k.first);
        // (c + y1)^j
        for (int mm = 0; mm <= k.second; ++mm) {
            ExactComplex scalar = coef * ai * ExactComplex(mpq_class(binomial(k.second, mm)));
            // c^(j-mm) as a field rep
            UniPoly cp = UniPoly::constant(ExactComplex(1));
            for (int u = 0; u < k.second - mm; ++u) cp = (cp * c_rep) % modulus;
            UniPoly add = cp.scaled(scalar);
            if (add.is_zero()) continue;
            auto it = acc.find({base, mm});
            if (it == acc.end())
                acc.emplace(BiKey{base, mm}, std::move(add));
            else {
                it->second = (it->second + add) % modulus;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
    }
    // prune exact zeros (scaled additions may have cancelled)
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second.is_zero())
            it = acc.erase(it);
        else
            ++it;
    }
    return acc;
}

struct BranchCore {
    ExactComplex x_coef;
    int x_exp = 0;
    std::shared_ptr<FieldTower> field;
    KSeries y;
    int trunc = 0;
    bool exact = false;
};

// rational roots split off a squarefree monic polynomial
std::pair<std::vector<ExactComplex>, UniPoly> split_rational_roots(UniPoly h, unsigned long seed) {
    std::vector<ExactComplex> roots;
    if (h.degree() == 1) {
        roots.push_back(-h[0]); // monic linear
        return {roots, UniPoly::constant(ExactComplex(1))};
    }
    for (const auto& box : isolate_complex_roots(h, seed)) {
        auto cand = rational_root_in_box(h, box);
        if (cand) roots.push_back(*cand);
    }
    std::sort(roots.begin(), roots.end(),
              [](const ExactComplex& a, const ExactComplex& b) { return ExactComplex::cmp(a, b) < 0; });
    for (const auto& r : roots) {
        UniPoly lin({-r, ExactComplex(1)});
        auto [quot, rem] = h.divmod(lin);
        if (!rem.is_zero()) throw internal_error("rational root division left a remainder");
        h = quot;
    }
    return {roots, h};
}

// solve v*p - w*q = 1 for integers
std::pair<long, long> duval_exponents(int p, int q) {
    long old_r = p, r = q, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        long qq = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - qq * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - qq * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - qq * t);
    }
    // old_s*p + old_t*q = old_r = gcd = 1
    if (old_r != 1) throw internal_error("edge exponents not coprime");
    return {old_s, -old_t}; // v = old_s, w = -old_t so v*p - w*q = 1
}

std::vector<BranchCore> expand(BiPoly F, int length, int depth, const PuiseuxOptions& opts);

void emit_rational_leaf(const BiPoly& F, const Edge& e, const ExactComplex& gamma, int length,
                        std::vector<BranchCore>& out) {
    auto [v, w] = duval_exponents(e.p, e.q);
    ExactComplex a = pow_exact(gamma, w);
    ExactComplex c = pow_exact(gamma, v);
    UniPoly triv = UniPoly::x(); // modulus of the trivial field
    KBiPoly G = recenter(F, e, a, UniPoly::constant(c), triv, length);
    auto field = std::make_shared<FieldTower>();
    KSeries S = implicit_series(G, *field, length);
    BranchCore b;
    b.x_coef = a;
    b.x_exp = e.p;
    b.field = field;
    b.y[e.q] = UniPoly::constant(c);
    for (const auto& [k, val] : S) b.y[e.q + k] = val;
    b.trunc = e.q + length;
    out.push_back(std::move(b));
}

void emit_extension_leaves(const BiPoly& F, const Edge& e, const UniPoly& h, int length,
                           const PuiseuxOptions& opts, std::vector<BranchCore>& out) {
    // modulus m(c) = h(c^p); squarefree because h is and its roots are nonzero
    std::vector<ExactComplex> mc(static_cast<std::size_t>(h.degree() * e.p) + 1);
    for (int k = 0; k <= h.degree(); ++k) mc[static_cast<std::size_t>(k * e.p)] = h[static_cast<std::size_t>(k)];
    UniPoly modulus(std::move(mc));

    auto cboxes = isolate_complex_roots(modulus, opts.seed);
    auto gboxes = isolate_complex_roots(h, opts.seed);

    // one representative c per gamma class, matched through c^p
    std::vector<ComplexBox> chosen(gboxes.size());
    std::vector<bool> have(gboxes.size(), false);
    for (auto cb : cboxes) {
        for (int iter = 0;; ++iter) {
            ComplexBox powered = cb.pow(static_cast<unsigned>(e.p));
            int hits = 0;
            std::size_t which = 0;
            for (std::size_t gi = 0; gi < gboxes.size(); ++gi)
                if (powered.intersects(gboxes[gi])) {
                    ++hits;
                    which = gi;
                }
            if (hits == 1) {
                if (!have[which]) {
                    chosen[which] = cb;
                    have[which] = true;
                }
                break;
            }
            if (iter > 128) throw internal_error("conjugate class matching failed");
            mpq_class target = cb.width() / 16;
            if (target == 0) throw internal_error("conjugate class matching degenerate");
            cb = refine_root_box(modulus, cb, target);
        }
    }
    for (bool hv : have)
        if (!hv) throw internal_error("conjugate class missing a representative");

    KBiPoly G = recenter(F, e, ExactComplex(1), UniPoly::x() % modulus, modulus, length);
    FieldTower shared(modulus, chosen[0]); // reps are conjugate-independent
    KSeries S = implicit_series(G, shared, length);

    for (std::size_t gi = 0; gi < gboxes.size(); ++gi) {
        BranchCore b;
        b.x_coef = ExactComplex(1);
        b.x_exp = e.p;
        b.field = std::make_shared<FieldTower>(modulus, chosen[gi]);
        b.y[e.q] = UniPoly::x() % modulus;
        for (const auto& [k, val] : S) b.y[e.q + k] = val;
        b.trunc = e.q + length;
        out.push_back(std::move(b));
    }
}

void emit_recursive(const BiPoly& F, const Edge& e, const ExactComplex& gamma, int length, int depth,
                    const PuiseuxOptions& opts, std::vector<BranchCore>& out) {
    auto [v, w] = duval_exponents(e.p, e.q);
    ExactComplex a = pow_exact(gamma, w);
    ExactComplex c = pow_exact(gamma, v);
    UniPoly triv = UniPoly::x();
    KBiPoly GK = recenter(F, e, a, UniPoly::constant(c), triv, INT_MAX / 2);
    BiPoly G;
    for (const auto& [k, val] : GK) {
        if (val.is_zero()) continue;
        G.t[k] = val.coefs()[0];
    }
    auto children = expand(std::move(G), length, depth + 1, opts);
    for (auto& ch : children) {
        if (ch.x_coef.is_zero()) throw internal_error("vertical child branch after recentering");
        BranchCore b;
        b.x_coef = a * pow_exact(ch.x_coef, e.p);
        b.x_exp = ch.x_exp * e.p;
        b.field = ch.field;
        ExactComplex scale = pow_exact(ch.x_coef, e.q);
        int base = ch.x_exp * e.q;
        b.y[base] = UniPoly::constant(scale * c);
        for (const auto& [k, val] : ch.y) {
            UniPoly term = val.scaled(scale);
            auto it = b.y.find(base + k);
            if (it == b.y.end())
                b.y[base + k] = term;
            else {
                it->second = it->second + term;
                if (it->second.is_zero()) b.y.erase(it);
            }
        }
        b.trunc = base + ch.trunc;
        b.exact = ch.exact;
        out.push_back(std::move(b));
    }
}

std::vector<BranchCore> expand(BiPoly F, int length, int depth, const PuiseuxOptions& opts) {
    if (depth > 32) throw internal_error("puiseux recursion exceeded depth cap");
    std::vector<BranchCore> out;

    // exact terminating solution y = 0
    int ystrips = 0;
    while (!F.t.empty() && F.min_y() >= 1) {
        F.shift_y(1);
        if (++ystrips > 1)
            throw internal_error("repeated y-axis factor: germ is not squarefree");
        BranchCore b;
        b.x_coef = ExactComplex(1);
        b.x_exp = 1;
        b.field = std::make_shared<FieldTower>();
        b.trunc = length;
        b.exact = true;
        out.push_back(std::move(b));
    }
    if (F.t.empty() || F.has_origin()) return out;

    for (const Edge& e : newton_edges(F)) {
        UniPoly psi = edge_psi(F, e);
        for (const auto& [h, mult] : psi.squarefree_decomposition()) {
            auto [rats, hirr] = split_rational_roots(h, opts.seed);
            for (const auto& gamma : rats) {
                if (mult == 1)
                    emit_rational_leaf(F, e, gamma, length, out);
                else
                    emit_recursive(F, e, gamma, length, depth, opts, out);
            }
            if (hirr.degree() >= 1) {
                if (opts.reject_nonrational)
                    throw math_error(
                        "branch coefficients leave Q(i) and reject_nonrational is set");
                if (mult >= 2)
                    throw math_error(
                        "multiple characteristic root outside Q(i): unsupported in this version");
                emit_extension_leaves(F, e, hirr, length, opts, out);
            }
        }
    }
    return out;
}

int series_min_exp(const KSeries& s) {
    int m = INT_MAX;
    for (const auto& [k, v] : s)
        if (!v.is_zero()) m = std::min(m, k);
    return m;
}

// g(x(t), y(t)) as a K-series mod t^T (T = INT_MAX/4 means exact/full)
KSeries compose_on_branch(const Branch& br, const MultiPoly& g, int T) {
    MultiPoly gl = g.with_roster({br.x_var, br.y_var});
    FieldTower& field = *br.field;
    int dy = gl.degree_in(br.y_var);
    auto cs = gl.coefficients_in(br.y_var); // index = y-exponent, polys in x
    // x-power series are exact monomials
    auto xpow_series = [&](const MultiPoly& cx) {
        KSeries s;
        for (const auto& [e, coef] : cx.terms()) {
            unsigned i = e[0];
            if (br.x_coef.is_zero() && i > 0) continue;
            int ord = static_cast<int>(i) * br.x_exp;
            if (ord >= T) continue;
            ExactComplex val = coef * pow_exact(br.x_coef.is_zero() ? ExactComplex(1) : br.x_coef,
                                                static_cast<long>(i));
            if (val.is_zero()) continue;
            auto it = s.find(ord);
            if (it == s.end())
                s[ord] = UniPoly::constant(val);
            else {
                it->second = field.reduce(it->second + UniPoly::constant(val));
                if (it->second.is_zero()) s.erase(it);
            }
        }
        return s;
    };
    KSeries R = xpow_series(cs[static_cast<std::size_t>(dy)]);
    for (int m = dy - 1; m >= 0; --m) {
        R = series_mul(R, br.y_series, T, field);
        series_add_into(R, xpow_series(cs[static_cast<std::size_t>(m)]), field);
    }
    return R;
}

} // namespace

ComplexBox Branch::y_coef_box(int k, const mpq_class& width) const {
    auto it = y_series.find(k);
    if (it == y_series.end()) return ComplexBox(ExactComplex(0));
    return field->elem_box(it->second, width);
}

std::string Branch::describe() const {
    std::ostringstream os;
    if (x_coef.is_zero())
        os << x_var << "(t) = 0";
    else {
        os << x_var << "(t) = " << x_coef.str() << " t";
        if (x_exp != 1) os << '^' << x_exp;
    }
    os << ", " << y_var << "(t) = ";
    if (y_series.empty()) {
        os << '0';
    } else {
        bool first = true;
        for (const auto& [k, v] : y_series) {
            if (!first) os << " + ";
            first = false;
            if (field->is_rational())
                os << '(' << v.eval(ExactComplex(0)).str() << ')';
            else
                os << '(' << v.str("c") << ')';
            os << " t";
            if (k != 1) os << '^' << k;
        }
        if (!field->is_rational())
            os << "  with c a root of " << field->modulus().str("c") << " near "
               << field->root_box().str();
    }
    if (!exact) os << "  (mod t^" << trunc << ")";
    return os.str();
}

std::vector<Branch> puiseux_branches(const MultiPoly& f, int max_order, PuiseuxOptions opts) {
    if (f.is_zero()) throw math_error("puiseux expansion of the zero polynomial");
    if (f.variables().size() != 2)
        throw input_error("puiseux expansion needs exactly two variables");
    const std::string xv = f.variables()[0], yv = f.variables()[1];
    std::array<ExactComplex, 2> origin{ExactComplex(0), ExactComplex(0)};
    if (!f.evaluate(origin).is_zero())
        throw math_error("puiseux expansion: curve does not pass through the origin");
    if (max_order < 2) max_order = 2;

    // squarefree germ check: repeated factors through the origin are rejected
    MultiPoly rep = repeated_factor_part(f);
    if (!rep.is_constant() && rep.evaluate(origin).is_zero())
        throw math_error("puiseux expansion: germ at the origin is not squarefree");

    BiPoly F = to_bipoly(f);
    std::vector<BranchCore> cores;

    int xstrips = 0;
    while (!F.t.empty() && F.min_x() >= 1) {
        F.shift_x(1);
        if (++xstrips > 1) throw internal_error("repeated x-axis factor: germ is not squarefree");
        BranchCore b; // the vertical branch x = 0, parametrized (0, t)
        b.x_coef = ExactComplex(0);
        b.x_exp = 0;
        b.field = std::make_shared<FieldTower>();
        b.y[1] = UniPoly::constant(ExactComplex(1));
        b.trunc = max_order;
        b.exact = true;
        cores.push_back(std::move(b));
    }
    if (!F.t.empty() && !F.has_origin()) {
        auto rest = expand(std::move(F), max_order, 0, opts);
        for (auto& b : rest) cores.push_back(std::move(b));
    }

    auto fptr = std::make_shared<const MultiPoly>(f);
    std::vector<Branch> out;
    out.reserve(cores.size());
    for (std::size_t k = 0; k < cores.size(); ++k) {
        Branch br;
        br.x_var = xv;
        br.y_var = yv;
        br.x_coef = cores[k].x_coef;
        br.x_exp = cores[k].x_exp;
        br.field = cores[k].field;
        br.y_series = std::move(cores[k].y);
        br.trunc = cores[k].trunc;
        br.exact = cores[k].exact;
        br.curve = fptr;
        br.branch_index = static_cast<int>(k);
        br.built_order = max_order;
        int ox = br.x_coef.is_zero() ? INT_MAX : br.x_exp;
        int oy = series_min_exp(br.y_series);
        br.ramification = std::min(ox, oy);
        if (br.ramification == INT_MAX) throw internal_error("degenerate branch parametrization");

        if (!br.exact) {
            // a terminating series that satisfies f exactly upgrades to exact
            KSeries full = compose_on_branch(br, f, INT_MAX / 4);
            bool allzero = true;
            for (const auto& [kk, v] : full)
                if (!v.is_zero()) {
                    allzero = false;
                    break;
                }
            if (allzero) br.exact = true;
        }
        if (opts.verify && !br.exact) {
            KSeries comp = compose_on_branch(br, f, br.trunc);
            for (const auto& [kk, v] : comp) {
                UniPoly vv = v;
                if (!br.field->is_zero(vv))
                    throw internal_error("puiseux verification failed at order " +
                                         std::to_string(kk));
            }
        }
        out.push_back(std::move(br));
    }
    return out;
}

BranchOrderResult branch_order(const Branch& branch, const MultiPoly& g, int bound,
                               PuiseuxOptions opts) {
    if (g.is_zero()) throw math_error("branch order against the zero polynomial");
    if (bound <= 0) {
        int df = branch.curve ? branch.curve->degree() : branch.trunc;
        bound = df * g.degree() + 1;
    }

    const Branch* use = &branch;
    Branch escalated;
    for (int attempt = 0;; ++attempt) {
        int T = use->exact ? INT_MAX / 4 : use->trunc;
        KSeries s = compose_on_branch(*use, g, T);
        int first = INT_MAX;
        for (const auto& [k, v] : s) {
            UniPoly vv = v;
            if (use->field->is_zero(vv)) continue;
            first = k;
            break;
        }
        if (use->exact) {
            if (first == INT_MAX) {
                MultiPoly h = poly_gcd(*use->curve, g);
                if (h.is_constant())
                    throw internal_error("exact branch annihilates g but gcd is constant");
                return {true, 0};
            }
            return {false, first};
        }
        if (first < T) return {false, first};

        // inconclusive: escalate the expansion up to 4x the bound
        int target = std::max(use->built_order * 2, bound + 1);
        if (target <= 4 * (bound + 1) && attempt < 4) {
            auto rebuilt = puiseux_branches(*use->curve, target, opts);
            if (use->branch_index >= static_cast<int>(rebuilt.size()))
                throw internal_error("branch escalation lost the branch");
            escalated = std::move(rebuilt[static_cast<std::size_t>(use->branch_index)]);
            use = &escalated;
            continue;
        }
        // CONTAINED candidate: confirm a shared component by gcd
        MultiPoly h = poly_gcd(*use->curve, g);
        if (!h.is_constant()) {
            KSeries hs = compose_on_branch(*use, h, use->trunc);
            bool hzero = true;
            for (const auto& [k, v] : hs) {
                UniPoly vv = v;
                if (!use->field->is_zero(vv)) {
                    hzero = false;
                    break;
                }
            }
            if (hzero) return {true, 0};
        }
        throw math_error("branch order truncation insufficient and no shared component found");
    }
}

} // namespace levikit
