#include "levikit/pencil.hpp"

#include "levikit/polygcd.hpp"
#include "levikit/puiseux.hpp"

#include <algorithm>
#include <map>

namespace levikit {

namespace {

// coefficient vectors over the union monomial support, for exact rank work
std::vector<std::vector<ExactComplex>> coefficient_rows(const std::vector<const MultiPoly*>& polys) {
    std::map<Exponents, std::size_t> cols;
    for (const auto* p : polys)
        for (const auto& [e, c] : p->terms())
            if (!cols.count(e)) cols.emplace(e, cols.size());
    std::vector<std::vector<ExactComplex>> rows(polys.size(),
                                                std::vector<ExactComplex>(cols.size()));
    for (std::size_t r = 0; r < polys.size(); ++r)
        for (const auto& [e, c] : polys[r]->terms()) rows[r][cols.at(e)] = c;
    return rows;
}

bool rows_proportional(const std::vector<ExactComplex>& a, const std::vector<ExactComplex>& b) {
    // both nonzero rows of equal length
    std::size_t k = 0;
    while (k < a.size() && a[k].is_zero() && b[k].is_zero()) ++k;
    if (k == a.size()) return true;
    if (a[k].is_zero() || b[k].is_zero()) return false;
    ExactComplex ratio = b[k] / a[k];
    for (std::size_t j = 0; j < a.size(); ++j)
        if (!(a[j] * ratio == b[j])) return false;
    return true;
}

// solve [alpha beta] * [F; G] = H exactly, if possible
std::optional<std::pair<ExactComplex, ExactComplex>> solve_two(
    const std::vector<ExactComplex>& fr, const std::vector<ExactComplex>& gr,
    const std::vector<ExactComplex>& hr) {
    // pick two pivot columns making (F, G) invertible
    for (std::size_t c1 = 0; c1 < fr.size(); ++c1) {
        for (std::size_t c2 = c1 + 1; c2 < fr.size(); ++c2) {
            ExactComplex det = fr[c1] * gr[c2] - fr[c2] * gr[c1];
            if (det.is_zero()) continue;
            ExactComplex alpha = (hr[c1] * gr[c2] - hr[c2] * gr[c1]) / det;
            ExactComplex beta = (fr[c1] * hr[c2] - fr[c2] * hr[c1]) / det;
            for (std::size_t j = 0; j < fr.size(); ++j)
                if (!(alpha * fr[j] + beta * gr[j] == hr[j])) return std::nullopt;
            return std::make_pair(alpha, beta);
        }
    }
    return std::nullopt; // F, G proportional
}

} // namespace

Pencil Pencil::make(HomogeneousForm F, HomogeneousForm G) {
    if (F.is_zero() || G.is_zero()) throw math_error("pencil generators must be nonzero");
    if (F.degree() != G.degree())
        throw math_error("pencil generators must share one degree");
    MultiPoly Gp = G.poly().with_roster(F.poly().variables());
    auto rows = coefficient_rows({&F.poly(), &Gp});
    if (rows_proportional(rows[0], rows[1]))
        throw math_error("pencil generators are proportional");
    return Pencil(std::move(F), HomogeneousForm(std::move(Gp), G.degree()));
}

HomogeneousForm Pencil::member(const ExactComplex& alpha, const ExactComplex& beta) const {
    if (alpha.is_zero() && beta.is_zero())
        throw math_error("pencil member needs (alpha, beta) != (0, 0)");
    return HomogeneousForm(F_.poly().scaled(alpha) + G_.poly().scaled(beta), degree());
}

PencilCoordinates PencilCoordinates::normalized(ExactComplex a, ExactComplex b) {
    if (a.is_zero() && b.is_zero()) throw math_error("projective pair cannot be (0, 0)");
    ExactComplex inv = a.is_zero() ? b.inverse() : a.inverse();
    return PencilCoordinates{a * inv, b * inv};
}

std::string PencilCoordinates::str() const {
    return "[" + alpha.str() + " : " + beta.str() + "]";
}

std::optional<PencilCoordinates> pencil_membership(const HomogeneousForm& H, const Pencil& pencil) {
    if (H.is_zero()) throw math_error("membership of the zero form");
    if (H.degree() != pencil.degree())
        throw math_error("membership candidate degree " + std::to_string(H.degree()) +
                         " differs from pencil degree " + std::to_string(pencil.degree()));
    MultiPoly Hp = H.poly().with_roster(pencil.F().poly().variables());
    auto rows = coefficient_rows({&pencil.F().poly(), &pencil.G().poly(), &Hp});
    auto sol = solve_two(rows[0], rows[1], rows[2]);
    if (!sol) return std::nullopt;
    return PencilCoordinates::normalized(sol->first, sol->second);
}

PencilDetection pencil_from_family(const std::vector<HomogeneousForm>& family) {
    if (family.size() < 2) throw math_error("pencil detection needs at least two members");
    int d = family[0].degree();
    for (const auto& m : family) {
        if (m.is_zero()) throw math_error("zero member in family");
        if (m.degree() != d) throw math_error("family members must share one degree");
    }
    std::vector<const MultiPoly*> ptrs;
    std::vector<MultiPoly> aligned;
    aligned.reserve(family.size());
    for (const auto& m : family) aligned.push_back(m.poly().with_roster(family[0].poly().variables()));
    for (const auto& m : aligned) ptrs.push_back(&m);
    auto rows = coefficient_rows(ptrs);
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = a + 1; b < rows.size(); ++b)
            if (rows_proportional(rows[a], rows[b]))
                throw math_error("family members " + std::to_string(a) + " and " +
                                 std::to_string(b) + " are proportional");

    PencilDetection out;
    Pencil pencil = Pencil::make(HomogeneousForm(aligned[0], d), HomogeneousForm(aligned[1], d));
    out.coords.push_back(PencilCoordinates::normalized(ExactComplex(1), ExactComplex(0)));
    out.coords.push_back(PencilCoordinates::normalized(ExactComplex(0), ExactComplex(1)));
    for (std::size_t k = 2; k < family.size(); ++k) {
        auto c = pencil_membership(HomogeneousForm(aligned[k], d), pencil);
        if (!c) {
            out.witness = std::array<std::size_t, 3>{0, 1, k};
            out.coords.clear();
            return out;
        }
        out.coords.push_back(*c);
    }
    out.pencil = std::move(pencil);
    return out;
}

IntersectionProfile intersection_profile(const HomogeneousForm& P, const HomogeneousForm& C,
                                         const std::vector<PlanePoint>& sing_points) {
    if (!is_squarefree(P.poly()))
        throw math_error("profile reference curve must be squarefree");
    std::vector<PlanePoint> pts = sing_points;
    std::sort(pts.begin(), pts.end(),
              [](const PlanePoint& a, const PlanePoint& b) { return PlanePoint::cmp(a, b) < 0; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    const int bound = P.degree() * C.degree();
    IntersectionProfile profile;
    bool any_contained = false;
    long long total = 0;
    const auto& vars = P.poly().variables();
    for (const auto& p : pts) {
        int chart = p.pivot();
        const std::string& cv = vars[static_cast<std::size_t>(chart)];
        MultiPoly pf = dehomogenize(P.poly(), cv);
        MultiPoly cf = dehomogenize(C.poly().with_roster(vars), cv);
        auto [x0, y0] = p.affine(chart);
        const std::string xv = pf.variables()[0], yv = pf.variables()[1];
        MultiPoly xp = MultiPoly::variable(pf.variables(), xv);
        MultiPoly yp = MultiPoly::variable(pf.variables(), yv);
        MultiPoly pf0 = pf.substitute(xv, xp + MultiPoly::constant(pf.variables(), x0))
                            .substitute(yv, yp + MultiPoly::constant(pf.variables(), y0));
        MultiPoly cf0 = cf.substitute(xv, xp + MultiPoly::constant(pf.variables(), x0))
                            .substitute(yv, yp + MultiPoly::constant(pf.variables(), y0));
        std::array<ExactComplex, 2> origin{ExactComplex(0), ExactComplex(0)};
        if (!pf0.evaluate(origin).is_zero()) continue; // no branches of P over this point
        for (const auto& br : puiseux_branches(pf0, bound + 1)) {
            ProfileEntry e;
            e.point = p;
            e.branch_index = br.branch_index;
            auto r = branch_order(br, cf0, bound);
            if (r.contained) {
                e.contained = true;
                any_contained = true;
            } else {
                e.order = r.order;
                if (e.order > bound)
                    throw internal_error("branch order exceeds the Bezout bound");
                total += e.order;
            }
            profile.entries.push_back(std::move(e));
        }
    }
    if (!any_contained && total != static_cast<long long>(P.degree()) * C.degree())
        throw math_error("profile point set incomplete: orders sum to " + std::to_string(total) +
                         ", Bezout requires " + std::to_string(P.degree() * C.degree()));
    return profile;
}

MultiPoly FoliationForm::euler_contraction() const {
    MultiPoly acc = MultiPoly::zero(vars);
    for (std::size_t k = 0; k < vars.size(); ++k)
        acc = acc + MultiPoly::variable(vars, vars[k]) * coefficients[k];
    return acc;
}

MultiPoly FoliationForm::integrability_obstruction() const {
    if (vars.size() != 3)
        throw input_error("integrability obstruction implemented for three variables");
    auto d = [&](std::size_t i, std::size_t j) {
        return coefficients[j].differentiate(vars[i]) - coefficients[i].differentiate(vars[j]);
    };
    return coefficients[0] * d(1, 2) - coefficients[1] * d(0, 2) + coefficients[2] * d(0, 1);
}

FoliationForm pencil_foliation_form(const Pencil& pencil) {
    const auto& vars = pencil.F().poly().variables();
    const MultiPoly& F = pencil.F().poly();
    const MultiPoly& G = pencil.G().poly();
    std::vector<MultiPoly> A;
    A.reserve(vars.size());
    for (const auto& v : vars) A.push_back(G * F.differentiate(v) - F * G.differentiate(v));
    MultiPoly g = poly_gcd_many(A);
    if (g.is_zero()) throw math_error("foliation form of a degenerate pencil");
    if (!g.is_constant()) {
        for (auto& a : A) {
            if (a.is_zero()) continue;
            auto q = exact_divide(a, g);
            if (!q) throw internal_error("foliation gcd division failed");
            a = std::move(*q);
        }
    }
    FoliationForm out;
    out.vars = vars;
    out.coefficients = std::move(A);
    out.degree = -1;
    for (const auto& a : out.coefficients)
        if (!a.is_zero()) out.degree = a.degree();
    if (out.degree < 0) throw math_error("foliation form vanished: proportional generators");
    if (!out.euler_contraction().is_zero())
        throw internal_error("Euler contraction of a pencil form must vanish");
    return out;
}

InvarianceCertificate verify_level_invariance(const Pencil& pencil, const ExactComplex& alpha,
                                              const ExactComplex& beta) {
    if (alpha.is_zero() && beta.is_zero())
        throw math_error("level invariance needs (alpha, beta) != (0, 0)");
    const auto& vars = pencil.F().poly().variables();
    const MultiPoly& F = pencil.F().poly();
    const MultiPoly& G = pencil.G().poly();
    MultiPoly H = F.scaled(alpha) + G.scaled(beta);

    std::vector<MultiPoly> A, dH, dF, dG;
    for (const auto& v : vars) {
        dF.push_back(F.differentiate(v));
        dG.push_back(G.differentiate(v));
    }
    for (std::size_t k = 0; k < vars.size(); ++k) {
        A.push_back(G * dF[k] - F * dG[k]);
        dH.push_back(dF[k].scaled(alpha) + dG[k].scaled(beta));
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
        for (std::size_t j = i + 1; j < vars.size(); ++j) {
            MultiPoly lhs = A[i] * dH[j] - A[j] * dH[i];
            MultiPoly rhs = H * (dF[i] * dG[j] - dF[j] * dG[i]);
            if (!(lhs == rhs))
                throw internal_error("level invariance identity failed on component (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    InvarianceCertificate cert{HomogeneousForm(H, pencil.degree()), H, true};
    return cert;
}

} // namespace levikit
