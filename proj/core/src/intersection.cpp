#include "levikit/intersection.hpp"

#include "levikit/polygcd.hpp"
#include "levikit/resultant.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace levikit {

PlanePoint PlanePoint::make(ExactComplex p0, ExactComplex p1, ExactComplex p2) {
    std::array<ExactComplex, 3> h{std::move(p0), std::move(p1), std::move(p2)};
    int piv = -1;
    for (int k = 2; k >= 0; --k)
        if (!h[static_cast<std::size_t>(k)].is_zero()) {
            piv = k;
            break;
        }
    if (piv < 0) throw math_error("projective point with all coordinates zero");
    ExactComplex inv = h[static_cast<std::size_t>(piv)].inverse();
    for (auto& c : h) c *= inv;
    PlanePoint p;
    p.h = std::move(h);
    return p;
}

PlanePoint PlanePoint::from_affine(const ExactComplex& x, const ExactComplex& y) {
    return make(ExactComplex(1), x, y);
}

std::pair<ExactComplex, ExactComplex> PlanePoint::affine(int chart) const {
    const ExactComplex& piv = h[static_cast<std::size_t>(chart)];
    if (piv.is_zero()) throw math_error("point lies on the chart's line at infinity");
    ExactComplex inv = piv.inverse();
    std::array<ExactComplex, 2> rest;
    int k = 0;
    for (int j = 0; j < 3; ++j)
        if (j != chart) rest[static_cast<std::size_t>(k++)] = h[static_cast<std::size_t>(j)] * inv;
    return {rest[0], rest[1]};
}

int PlanePoint::pivot() const {
    for (int k = 2; k >= 0; --k)
        if (!h[static_cast<std::size_t>(k)].is_zero()) return k;
    return -1;
}

int PlanePoint::cmp(const PlanePoint& a, const PlanePoint& b) {
    for (int k = 0; k < 3; ++k) {
        int c = ExactComplex::cmp(a.h[static_cast<std::size_t>(k)], b.h[static_cast<std::size_t>(k)]);
        if (c != 0) return c;
    }
    return 0;
}

std::string PlanePoint::str() const {
    return "[" + h[0].str() + " : " + h[1].str() + " : " + h[2].str() + "]";
}

std::string IntersectionRecord::str() const {
    std::ostringstream os;
    if (exact) {
        os << exact->str();
    } else {
        os << "root #" << conjugate_index << " of " << eliminant->str("x");
        if (x_box) os << " in " << x_box->str();
        if (transverse_certified) os << " (transverse)";
    }
    os << ", multiplicity " << multiplicity;
    return os.str();
}

ExactComplex det3(const Matrix3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

MultiPoly linear_change(const MultiPoly& f, const Matrix3& m) {
    const auto& vars = f.variables();
    if (vars.size() != 3) throw input_error("linear_change expects a trivariate polynomial");
    std::vector<std::string> tmp{"_u0", "_u1", "_u2"};
    MultiPoly acc = f;
    for (int i = 0; i < 3; ++i) {
        MultiPoly lin(tmp);
        for (int j = 0; j < 3; ++j) {
            Exponents e(3, 0);
            e[static_cast<std::size_t>(j)] = 1;
            lin.add_term(e, m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
        acc = acc.substitute(vars[static_cast<std::size_t>(i)], lin);
    }
    acc = acc.with_roster(tmp);
    return acc.renamed({{"_u0", vars[0]}, {"_u1", vars[1]}, {"_u2", vars[2]}});
}

namespace {

Matrix3 random_invertible(Rng& rng, long bound) {
    for (;;) {
        Matrix3 m;
        for (auto& row : m)
            for (auto& e : row) e = ExactComplex(mpq_class(rng.uniform(-bound, bound)));
        if (!det3(m).is_zero()) return m;
    }
}

// c * (y - y0)^k reconstruction from a univariate power; nullopt when u is
// not a pure power of one linear factor.
std::optional<ExactComplex> pure_power_root(const UniPoly& u) {
    int k = u.degree();
    if (k < 1) return std::nullopt;
    ExactComplex y0 = -(u[static_cast<std::size_t>(k - 1)] /
                        (u.lead() * ExactComplex(static_cast<long>(k))));
    UniPoly lin({-y0, ExactComplex(1)});
    UniPoly pw = UniPoly::constant(u.lead());
    for (int j = 0; j < k; ++j) pw = pw * lin;
    if (pw == u) return y0;
    return std::nullopt;
}

struct ShearOutcome {
    Matrix3 T;
    MultiPoly f, g;                            // affine chart of the sheared forms
    UniPoly R;                                 // eliminant Res_y
    std::vector<std::pair<UniPoly, int>> yun;  // squarefree multiplicity structure
    // signature for cross-checks: sorted (multiplicity, factor degree)
    std::vector<std::pair<int, int>> signature;
};

std::optional<ShearOutcome> try_shear(const HomogeneousForm& F, const HomogeneousForm& G,
                                      const Matrix3& T) {
    const auto& vars = F.poly().variables();
    MultiPoly Fp = linear_change(F.poly(), T);
    MultiPoly Gp = linear_change(G.poly().with_roster(vars), T);
    std::array<ExactComplex, 3> e2{ExactComplex(0), ExactComplex(0), ExactComplex(1)};
    if (Fp.evaluate(e2).is_zero() || Gp.evaluate(e2).is_zero()) return std::nullopt;

    MultiPoly f = dehomogenize(Fp, vars[0]);
    MultiPoly g = dehomogenize(Gp, vars[0]);
    const std::string xv = f.variables()[0], yv = f.variables()[1];

    MultiPoly R2 = resultant(f, g, yv);
    if (R2.is_zero()) return std::nullopt;
    UniPoly R = R2.depends_on(xv) ? UniPoly::from_multipoly(R2.without_unused(), xv)
                                  : UniPoly::constant(R2.leading_coefficient());
    if (R.degree() != F.degree() * G.degree()) return std::nullopt;

    ShearOutcome out;
    out.T = T;
    out.f = std::move(f);
    out.g = std::move(g);
    out.yun = R.squarefree_decomposition();
    out.R = std::move(R);
    for (const auto& [S, j] : out.yun) out.signature.emplace_back(j, S.degree());
    std::sort(out.signature.begin(), out.signature.end());
    return out;
}

UniPoly univariate_in_y(const MultiPoly& f, const std::string& xv, const std::string& yv,
                        const ExactComplex& x0) {
    MultiPoly fy = f.substitute(xv, x0);
    return fy.depends_on(yv) ? UniPoly::from_multipoly(fy.without_unused({yv}), yv)
                             : UniPoly::constant(fy.is_zero() ? ExactComplex(0)
                                                              : fy.leading_coefficient());
}

// conservative exact certificate: every root of S is a transverse smooth
// intersection of f and g
bool transversality_certificate(const UniPoly& S, const MultiPoly& f, const MultiPoly& g,
                                const std::string& xv, const std::string& yv) {
    MultiPoly J = f.differentiate(xv) * g.differentiate(yv) -
                  f.differentiate(yv) * g.differentiate(xv);
    if (J.is_zero()) return false;
    for (const MultiPoly* side : {&f, &g}) {
        if (!side->depends_on(yv) || !J.depends_on(yv)) continue;
        MultiPoly res = resultant(*side, J, yv);
        if (res.is_zero()) continue;
        UniPoly r = res.depends_on(xv) ? UniPoly::from_multipoly(res.without_unused(), xv)
                                       : UniPoly::constant(res.leading_coefficient());
        if (unipoly_coprime(r, S)) return true;
    }
    return false;
}

} // namespace

IntersectionResult intersection_points(const HomogeneousForm& F, const HomogeneousForm& G,
                                       Rng& rng, IntersectionOptions opts) {
    const auto& vars = F.poly().variables();
    if (vars.size() != 3) throw input_error("intersection_points expects trivariate forms");
    MultiPoly Gp = G.poly().with_roster(vars);

    // common-component precondition, via resultants in each shared variable
    bool tested = false;
    for (const auto& v : vars) {
        if (F.poly().degree_in(v) == 0 || Gp.degree_in(v) == 0) continue;
        tested = true;
        if (resultant(F.poly(), Gp, v).is_zero()) throw common_component_error();
    }
    if (!tested && !gcd_is_constant(F.poly(), Gp)) throw common_component_error();

    std::vector<ShearOutcome> successes;
    for (int attempt = 0; attempt < opts.shear_attempts && successes.size() < 2; ++attempt) {
        Matrix3 T = random_invertible(rng, 5);
        auto oc = try_shear(F, G, T);
        if (!oc) continue;
        if (!successes.empty() && successes.back().signature != oc->signature) {
            // disagreeing multiplicity structure: drop both, keep sampling
            successes.clear();
        }
        successes.push_back(std::move(*oc));
    }
    if (successes.size() < 2)
        throw internal_error("intersection_points: no pair of agreeing generic shears found");

    ShearOutcome& best = successes[0];
    const std::string xv = best.f.variables()[0], yv = best.f.variables()[1];

    IntersectionResult result;
    result.shear = best.T;
    result.check_shear = successes[1].T;
    result.total = F.degree() * G.degree();

    for (const auto& [S, j] : best.yun) {
        // split Q(i)-rational roots off the squarefree factor
        UniPoly rest = S;
        std::vector<ExactComplex> rational_roots;
        if (S.degree() == 1) {
            rational_roots.push_back(-S[0]);
            rest = UniPoly::constant(ExactComplex(1));
        } else {
            for (const auto& box : isolate_complex_roots(S, 0)) {
                auto cand = rational_root_in_box(S, box, 2);
                if (cand) rational_roots.push_back(*cand);
            }
            std::sort(rational_roots.begin(), rational_roots.end(),
                      [](const ExactComplex& a, const ExactComplex& b) {
                          return ExactComplex::cmp(a, b) < 0;
                      });
            for (const auto& r : rational_roots) {
                auto [q, rem] = rest.divmod(UniPoly({-r, ExactComplex(1)}));
                if (!rem.is_zero()) throw internal_error("rational root division left a remainder");
                rest = q;
            }
        }

        for (const auto& x0 : rational_roots) {
            UniPoly uf = univariate_in_y(best.f, xv, yv, x0);
            UniPoly ug = univariate_in_y(best.g, xv, yv, x0);
            UniPoly u = UniPoly::gcd(uf, ug);
            auto y0 = pure_power_root(u);
            if (!y0)
                throw internal_error(
                    "shear admitted two intersection points on one fiber; retry with a new seed");
            // back to original coordinates: z = T * (1, x0, y0)
            std::array<ExactComplex, 3> z;
            std::array<ExactComplex, 3> uvec{ExactComplex(1), x0, *y0};
            for (int i = 0; i < 3; ++i) {
                z[static_cast<std::size_t>(i)] = ExactComplex(0);
                for (int k = 0; k < 3; ++k)
                    z[static_cast<std::size_t>(i)] +=
                        best.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                        uvec[static_cast<std::size_t>(k)];
            }
            IntersectionRecord rec;
            rec.multiplicity = j;
            rec.exact = PlanePoint::make(z[0], z[1], z[2]);
            result.records.push_back(std::move(rec));
        }

        if (rest.degree() >= 1) {
            bool cert = j == 1 && transversality_certificate(rest, best.f, best.g, xv, yv);
            std::vector<ComplexBox> xboxes;
            std::vector<ComplexBox> yboxes;
            UniPoly Ysf;
            if (opts.isolate_boxes) {
                xboxes = isolate_complex_roots(rest, 0);
                MultiPoly Ry = resultant(best.f, best.g, xv);
                UniPoly RyU = Ry.depends_on(yv) ? UniPoly::from_multipoly(Ry.without_unused(), yv)
                                                : UniPoly::constant(Ry.leading_coefficient());
                Ysf = RyU.squarefree_part();
                yboxes = isolate_complex_roots(Ysf, 0);
            }
            for (int idx = 0; idx < rest.degree(); ++idx) {
                IntersectionRecord rec;
                rec.multiplicity = j;
                rec.eliminant = rest;
                rec.conjugate_index = idx;
                rec.transverse_certified = cert;
                if (opts.isolate_boxes) {
                    ComplexBox xb = xboxes[static_cast<std::size_t>(idx)];
                    // pair with the unique y-root box that keeps (f, g) at zero
                    std::vector<ComplexBox> cands = yboxes;
                    for (int round = 0; round < 64 && cands.size() > 1; ++round) {
                        std::vector<ComplexBox> keep;
                        for (auto yb : cands) {
                            std::array<ComplexBox, 2> pt{xb, yb};
                            if (best.f.evaluate_box(pt).contains_zero() &&
                                best.g.evaluate_box(pt).contains_zero())
                                keep.push_back(yb);
                        }
                        if (keep.size() <= 1) {
                            cands = std::move(keep);
                            break;
                        }
                        cands.clear();
                        for (auto& yb : keep) {
                            mpq_class t = yb.width() / 8;
                            cands.push_back(t == 0 ? yb : refine_root_box(Ysf, yb, t));
                        }
                        mpq_class tx = xb.width() / 8;
                        if (tx != 0) xb = refine_root_box(rest, xb, tx);
                    }
                    if (cands.size() != 1)
                        throw internal_error("could not pair x- and y-root boxes");
                    rec.x_box = xb;
                    rec.y_box = cands[0];
                    std::array<ComplexBox, 3> hom;
                    std::array<ComplexBox, 3> uvec{ComplexBox(ExactComplex(1)), xb, cands[0]};
                    for (int i = 0; i < 3; ++i) {
                        ComplexBox acc(ExactComplex(0));
                        for (int k = 0; k < 3; ++k)
                            acc = acc + ComplexBox(best.T[static_cast<std::size_t>(i)]
                                                          [static_cast<std::size_t>(k)]) *
                                            uvec[static_cast<std::size_t>(k)];
                        hom[static_cast<std::size_t>(i)] = acc;
                    }
                    rec.hom_box = hom;
                }
                result.records.push_back(std::move(rec));
            }
        }
    }

    int sum = 0;
    for (const auto& r : result.records) sum += r.multiplicity;
    if (sum != result.total)
        throw internal_error("Bezout accounting failed: " + std::to_string(sum) +
                             " != " + std::to_string(result.total));

    std::sort(result.records.begin(), result.records.end(),
              [](const IntersectionRecord& a, const IntersectionRecord& b) {
                  if (a.exact && b.exact) return PlanePoint::cmp(*a.exact, *b.exact) < 0;
                  if (a.exact != b.exact) return static_cast<bool>(a.exact);
                  if (!(a.eliminant->coefs() == b.eliminant->coefs()))
                      return a.eliminant->str() < b.eliminant->str();
                  return a.conjugate_index < b.conjugate_index;
              });
    return result;
}

namespace {

// order at x = 0 of Res_y for one admissible shear, or nullopt if the shear
// fails the isolation conditions
std::optional<int> sheared_resultant_order(const MultiPoly& f0, const MultiPoly& g0,
                                           const ExactComplex& s, const std::string& xv,
                                           const std::string& yv) {
    MultiPoly xpoly = MultiPoly::variable(f0.variables(), xv);
    MultiPoly ypoly = MultiPoly::variable(f0.variables(), yv);
    MultiPoly rep = xpoly + ypoly.scaled(s);
    MultiPoly f1 = f0.substitute(xv, rep);
    MultiPoly g1 = g0.substitute(xv, rep);

    // leading y-coefficients must survive at x = 0
    for (const MultiPoly* h : {&f1, &g1}) {
        if (!h->depends_on(yv)) return std::nullopt;
        MultiPoly lc = h->coefficients_in(yv).back();
        if (lc.substitute(xv, ExactComplex(0)).is_zero()) return std::nullopt;
    }
    // the fiber x = 0 may contain no other common point
    UniPoly uf = univariate_in_y(f1, xv, yv, ExactComplex(0));
    UniPoly ug = univariate_in_y(g1, xv, yv, ExactComplex(0));
    UniPoly u = UniPoly::gcd(uf, ug);
    if (u.is_zero()) return std::nullopt;
    if (u.degree() != u.order_at_zero()) return std::nullopt; // not a pure power of y

    MultiPoly R = resultant(f1, g1, yv);
    if (R.is_zero()) return std::nullopt;
    UniPoly Ru = R.depends_on(xv) ? UniPoly::from_multipoly(R.without_unused(), xv)
                                  : UniPoly::constant(R.leading_coefficient());
    return Ru.order_at_zero();
}

} // namespace

MultiplicityResult intersection_multiplicity(const MultiPoly& f, const MultiPoly& g,
                                             const ExactComplex& x0, const ExactComplex& y0,
                                             Rng& rng) {
    auto [fa, ga] = align_rosters(f, g);
    if (fa.variables().size() != 2)
        throw input_error("intersection_multiplicity expects affine bivariate input");
    const std::string xv = fa.variables()[0], yv = fa.variables()[1];

    MultiPoly xpoly = MultiPoly::variable(fa.variables(), xv);
    MultiPoly ypoly = MultiPoly::variable(fa.variables(), yv);
    MultiPoly f0 = fa.substitute(xv, xpoly + MultiPoly::constant(fa.variables(), x0))
                       .substitute(yv, ypoly + MultiPoly::constant(fa.variables(), y0));
    MultiPoly g0 = ga.substitute(xv, xpoly + MultiPoly::constant(fa.variables(), x0))
                       .substitute(yv, ypoly + MultiPoly::constant(fa.variables(), y0));

    std::array<ExactComplex, 2> origin{ExactComplex(0), ExactComplex(0)};
    MultiplicityResult out;
    if (!f0.evaluate(origin).is_zero() || !g0.evaluate(origin).is_zero()) return out; // I_p = 0

    MultiPoly h = poly_gcd(f0, g0);
    if (!h.is_constant()) {
        if (h.evaluate(origin).is_zero()) throw common_component_error();
        auto fq = exact_divide(f0, h);
        auto gq = exact_divide(g0, h);
        if (!fq || !gq) throw internal_error("gcd division failed");
        f0 = std::move(*fq);
        g0 = std::move(*gq);
    }

    // oracle (a) twice, with independent shears
    std::vector<std::pair<ExactComplex, int>> orders;
    ExactComplex s(0);
    for (int attempt = 0; attempt < 24 && orders.size() < 2; ++attempt) {
        auto ord = sheared_resultant_order(f0, g0, s, xv, yv);
        if (ord) orders.emplace_back(s, *ord);
        s = rng.small_gaussian_nonzero(8);
    }
    if (orders.size() < 2)
        throw internal_error("no admissible shear found for the resultant oracle");
    if (orders[0].second != orders[1].second)
        throw internal_error("resultant oracle disagrees between independent shears");
    out.shear1 = orders[0].first;
    out.shear2 = orders[1].first;
    out.resultant_order = orders[0].second;

    // oracle (b): Puiseux branch sums
    int bound = f0.degree() * g0.degree() + 1;
    int sum = 0;
    for (const auto& br : puiseux_branches(f0, bound)) {
        auto r = branch_order(br, g0, bound);
        if (r.contained)
            throw internal_error("branch contained in the other curve after gcd reduction");
        sum += r.order;
    }
    out.branch_sum = sum;

    if (out.resultant_order != out.branch_sum)
        throw internal_error("intersection multiplicity oracles disagree: resultant " +
                             std::to_string(out.resultant_order) + " vs branches " +
                             std::to_string(out.branch_sum));
    out.multiplicity = out.resultant_order;
    return out;
}

MultiplicityResult intersection_multiplicity(const HomogeneousForm& F, const HomogeneousForm& G,
                                             const PlanePoint& p, Rng& rng) {
    int chart = p.pivot();
    const auto& vars = F.poly().variables();
    MultiPoly f = dehomogenize(F.poly(), vars[static_cast<std::size_t>(chart)]);
    MultiPoly g = dehomogenize(G.poly().with_roster(vars), vars[static_cast<std::size_t>(chart)]);
    auto [x0, y0] = p.affine(chart);
    return intersection_multiplicity(f, g, x0, y0, rng);
}

bool is_smooth_curve(const HomogeneousForm& F, Rng& rng) {
    if (F.is_zero()) throw math_error("smoothness of the zero form");
    if (F.degree() == 0) throw math_error("smoothness of a constant form");
    const auto& vars = F.poly().variables();
    if (vars.size() != 3) throw input_error("is_smooth_curve expects trivariate forms");
    if (F.degree() == 1) return true;

    auto verdict_once = [&](const Matrix3& M) -> std::optional<bool> {
        MultiPoly Fp = linear_change(F.poly(), M);
        std::array<MultiPoly, 3> P;
        for (int k = 0; k < 3; ++k) {
            P[static_cast<std::size_t>(k)] = Fp.differentiate(vars[static_cast<std::size_t>(k)]);
            if (P[static_cast<std::size_t>(k)].is_zero()) return false; // a vanishing partial
        }
        const std::string& elim = vars[2];
        for (const auto& p : P)
            if (!p.depends_on(elim)) return std::nullopt; // degenerate frame, retry
        MultiPoly r01 = resultant(P[0], P[1], elim);
        MultiPoly r02 = resultant(P[0], P[2], elim);
        MultiPoly r12 = resultant(P[1], P[2], elim);
        if (r01.is_zero() || r02.is_zero() || r12.is_zero()) return false;
        MultiPoly g = poly_gcd(r01, poly_gcd(r02, r12));
        return g.is_constant();
    };

    std::optional<bool> last;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Matrix3 M = random_invertible(rng, 4);
        auto v = verdict_once(M);
        if (!v) continue;
        if (last && *last == *v) return *v;
        last = v;
    }
    throw internal_error("smoothness check: coordinate frames kept disagreeing");
}

} // namespace levikit
