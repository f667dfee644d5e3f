#include "levikit/polygcd.hpp"

#include "levikit/unipoly.hpp"

namespace levikit {

namespace {

MultiPoly normalize_lead(const MultiPoly& f) {
    if (f.is_zero()) return f;
    return f.scaled(f.leading_coefficient().inverse());
}

// leading coefficient of f viewed in R[x]
MultiPoly lead_coef_in(const MultiPoly& f, const std::string& var) {
    auto cs = f.coefficients_in(var);
    return cs.back();
}

MultiPoly times_var_power(const MultiPoly& f, const std::string& var, unsigned e) {
    if (e == 0) return f;
    Exponents exps(f.variables().size(), 0);
    exps[static_cast<std::size_t>(f.var_index(var))] = e;
    return f * MultiPoly::monomial(f.variables(), exps, ExactComplex(1));
}

// pseudo-remainder of a by b in the variable `var` (up to lc(b)-power scaling)
MultiPoly pseudo_rem(MultiPoly a, const MultiPoly& b, const std::string& var) {
    int db = b.degree_in(var);
    MultiPoly lcb = lead_coef_in(b, var);
    int guard = 0;
    while (!a.is_zero() && a.degree_in(var) >= db) {
        int da = a.degree_in(var);
        MultiPoly lca = lead_coef_in(a, var);
        a = a * lcb - times_var_power(b * lca, var, static_cast<unsigned>(da - db));
        if (++guard > 4096) throw internal_error("pseudo-division diverged");
    }
    return a;
}

MultiPoly content_in(const MultiPoly& f, const std::string& var) {
    MultiPoly c = MultiPoly::zero(f.variables());
    for (const auto& coef : f.coefficients_in(var)) {
        if (coef.is_zero()) continue;
        c = poly_gcd(c, coef);
        if (c.is_constant() && !c.is_zero()) break;
    }
    return c;
}

// Sound one-sided coprimality certificate. A common divisor h of f and g
// satisfies deg_v h <= deg_v f and lc_v(h) | lc_v(f); if a specialization of
// the other variables keeps lc_v(f) nonzero and the specialized univariate
// gcd is constant, then deg_v(gcd) = 0. Certifying this for every shared
// variable proves the gcd constant. Returns false when inconclusive.
bool certify_coprime(const MultiPoly& f, const MultiPoly& g) {
    const auto& vars = f.variables();
    for (const auto& v : vars) {
        if (!f.depends_on(v) || !g.depends_on(v)) continue;
        MultiPoly lc = f.coefficients_in(v).back();
        bool certified = false;
        for (long base = 1; base <= 6 && !certified; ++base) {
            std::vector<ExactComplex> sigma;
            sigma.reserve(vars.size());
            long k = 0;
            for (const auto& w : vars) {
                (void)w;
                sigma.push_back(ExactComplex(base + 2 * (k++) + (base % 2 ? 0 : 1)));
            }
            // evaluate lc at sigma (value of v is irrelevant: exponent 0)
            if (lc.evaluate(sigma).is_zero()) continue;
            MultiPoly fs = f, gs = g;
            for (std::size_t j = 0; j < vars.size(); ++j) {
                if (vars[j] == v) continue;
                fs = fs.substitute(vars[j], sigma[j]);
                gs = gs.substitute(vars[j], sigma[j]);
            }
            if (gs.is_zero()) break; // inconclusive for this variable
            UniPoly fu = UniPoly::from_multipoly(fs.without_unused({v}).with_roster({v}), v);
            UniPoly gu = UniPoly::from_multipoly(gs.without_unused({v}).with_roster({v}), v);
            if (fu.is_zero() || gu.is_zero()) break;
            if (UniPoly::gcd(fu, gu).degree() == 0) certified = true;
        }
        if (!certified) return false;
    }
    return true;
}

} // namespace

MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g) {
    auto [a0, b0] = align_rosters(f, g);
    MultiPoly a = std::move(a0), b = std::move(b0);
    if (a.is_zero()) return normalize_lead(b);
    if (b.is_zero()) return normalize_lead(a);
    if (a.is_constant() || b.is_constant())
        return MultiPoly::constant(a.variables(), ExactComplex(1));
    if (a == b) return normalize_lead(a);
    if (certify_coprime(a, b)) return MultiPoly::constant(a.variables(), ExactComplex(1));

    // main variable: first roster entry either polynomial depends on
    std::string var;
    for (const auto& v : a.variables())
        if (a.depends_on(v) || b.depends_on(v)) {
            var = v;
            break;
        }

    if (!a.depends_on(var) || !b.depends_on(var)) {
        // var-free side divides only through the other side's content
        const MultiPoly& free_side = a.depends_on(var) ? b : a;
        const MultiPoly& full_side = a.depends_on(var) ? a : b;
        return poly_gcd(free_side, content_in(full_side, var));
    }

    MultiPoly ca = content_in(a, var);
    MultiPoly cb = content_in(b, var);
    auto pa = exact_divide(a, ca);
    auto pb = exact_divide(b, cb);
    if (!pa || !pb) throw internal_error("content division failed");
    MultiPoly cg = poly_gcd(ca, cb);

    MultiPoly u = std::move(*pa), v = std::move(*pb);
    if (u.degree_in(var) < v.degree_in(var)) std::swap(u, v);
    int guard = 0;
    while (true) {
        MultiPoly r = pseudo_rem(u, v, var);
        if (r.is_zero()) break;
        if (r.degree_in(var) == 0) {
            // coprime primitive parts
            return normalize_lead(cg);
        }
        auto rp = exact_divide(r, content_in(r, var));
        if (!rp) throw internal_error("primitive part division failed");
        u = std::move(v);
        v = std::move(*rp);
        if (++guard > 2048) throw internal_error("gcd PRS diverged");
    }
    auto vp = exact_divide(v, content_in(v, var));
    if (!vp) throw internal_error("primitive part division failed");
    return normalize_lead(cg * *vp);
}

MultiPoly poly_gcd_many(const std::vector<MultiPoly>& polys) {
    MultiPoly acc;
    for (const auto& p : polys) {
        acc = poly_gcd(acc, p);
        if (!acc.is_zero() && acc.is_constant()) break;
    }
    return acc;
}

bool gcd_is_constant(const MultiPoly& f, const MultiPoly& g) {
    MultiPoly d = poly_gcd(f, g);
    return !d.is_zero() && d.is_constant();
}

MultiPoly repeated_factor_part(const MultiPoly& f) {
    std::vector<MultiPoly> gens{f};
    for (const auto& v : f.variables())
        if (f.depends_on(v)) gens.push_back(f.differentiate(v));
    return poly_gcd_many(gens);
}

bool is_squarefree(const MultiPoly& f) {
    if (f.is_zero()) return false;
    if (f.is_constant()) return true;
    MultiPoly rep = repeated_factor_part(f);
    return rep.is_constant();
}

} // namespace levikit
