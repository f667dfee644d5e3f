#include "levikit/segre.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace levikit {

ComplexifiedHypersurface complexify(
    const MultiPoly& phi, const std::vector<std::pair<std::string, std::string>>& conjugate_pairs) {
    if (conjugate_pairs.empty()) throw input_error("complexify needs at least one conjugate pair");
    ComplexifiedHypersurface H;
    H.n = static_cast<int>(conjugate_pairs.size());
    for (const auto& [z, zb] : conjugate_pairs) {
        if (phi.var_index(z) < 0 || phi.var_index(zb) < 0)
            throw input_error("conjugate pair (" + z + ", " + zb + ") missing from the roster");
        H.z_vars.push_back(z);
        H.zbar_vars.push_back(zb);
        H.w_vars.push_back("w" + std::to_string(H.w_vars.size() + 1));
    }
    for (const auto& v : phi.variables()) {
        bool known = false;
        for (const auto& [z, zb] : conjugate_pairs)
            if (v == z || v == zb) {
                known = true;
                break;
            }
        if (!known && phi.depends_on(v))
            throw input_error("variable '" + v + "' is not part of any conjugate pair");
    }

    std::vector<std::string> block = H.z_vars;
    block.insert(block.end(), H.zbar_vars.begin(), H.zbar_vars.end());
    MultiPoly arranged = phi.with_roster(block);
    std::vector<std::pair<std::string, std::string>> renames;
    for (int k = 0; k < H.n; ++k)
        renames.emplace_back(H.zbar_vars[static_cast<std::size_t>(k)],
                             H.w_vars[static_cast<std::size_t>(k)]);
    H.phi = arranged;
    H.phiC = arranged.renamed(renames);

    MultiPoly swapped = conjugate_swap(H.phiC);
    if (!(swapped == H.phiC)) {
        // locate one offending exponent pair for the diagnostic
        MultiPoly diff = H.phiC - swapped;
        std::ostringstream os;
        const auto& [e, c] = *diff.terms().begin();
        os << "(";
        for (int k = 0; k < H.n; ++k) os << (k ? "," : "") << e[static_cast<std::size_t>(k)];
        os << ")x(";
        for (int k = 0; k < H.n; ++k)
            os << (k ? "," : "") << e[static_cast<std::size_t>(k + H.n)];
        os << ")";
        throw reality_violation(os.str());
    }
    H.reality_checked = true;
    return H;
}

SegreVariety segre_variety(const ComplexifiedHypersurface& H, std::span<const ExactComplex> q) {
    if (static_cast<int>(q.size()) != H.n)
        throw input_error("Segre base point arity mismatch");
    SegreVariety out;
    out.base_point.assign(q.begin(), q.end());
    MultiPoly s = H.phiC;
    for (int k = 0; k < H.n; ++k)
        s = s.substitute(H.w_vars[static_cast<std::size_t>(k)],
                         q[static_cast<std::size_t>(k)].conj());
    out.defining = s.with_roster(H.z_vars);
    out.degenerate = out.defining.is_zero();
    return out;
}

bool is_segre_degenerate(const ComplexifiedHypersurface& H, std::span<const ExactComplex> q) {
    return segre_variety(H, q).degenerate;
}

std::vector<MultiPoly> degenerate_locus_system(const ComplexifiedHypersurface& H) {
    std::map<Exponents, MultiPoly> groups; // z-exponents -> coefficient in w
    for (const auto& [e, c] : H.phiC.terms()) {
        Exponents ze(e.begin(), e.begin() + H.n);
        Exponents we(static_cast<std::size_t>(H.n), 0);
        for (int k = 0; k < H.n; ++k) we[static_cast<std::size_t>(k)] = e[static_cast<std::size_t>(k + H.n)];
        auto it = groups.find(ze);
        if (it == groups.end()) it = groups.emplace(ze, MultiPoly(H.w_vars)).first;
        it->second.add_term(we, c);
    }
    std::vector<MultiPoly> out;
    for (auto& [ze, poly] : groups) {
        if (poly.is_zero()) continue;
        out.push_back(poly.scaled(poly.leading_coefficient().inverse()));
    }
    std::sort(out.begin(), out.end(),
              [](const MultiPoly& a, const MultiPoly& b) { return a.str() < b.str(); });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const MultiPoly& a, const MultiPoly& b) { return a == b; }),
              out.end());
    return out;
}

ExactComplex segre_pairing(const ComplexifiedHypersurface& H, std::span<const ExactComplex> a,
                           std::span<const ExactComplex> b) {
    if (static_cast<int>(a.size()) != H.n || static_cast<int>(b.size()) != H.n)
        throw input_error("Segre pairing arity mismatch");
    std::vector<ExactComplex> point;
    point.reserve(2 * static_cast<std::size_t>(H.n));
    for (const auto& v : a) point.push_back(v);
    for (const auto& v : b) point.push_back(v.conj());
    return H.phiC.evaluate(point);
}

bool segre_symmetry_check(const ComplexifiedHypersurface& H, std::span<const ExactComplex> p,
                          std::span<const ExactComplex> q) {
    bool q_in_sigma_p = segre_pairing(H, q, p).is_zero();
    bool p_in_sigma_q = segre_pairing(H, p, q).is_zero();
    return q_in_sigma_p == p_in_sigma_q;
}

MultiPoly real_to_zzbar(const MultiPoly& phi_real, const std::vector<CoordinateQuadruple>& coords) {
    MultiPoly acc = phi_real;
    const ExactComplex half(mpq_class(1, 2));
    const ExactComplex half_over_i = ExactComplex(mpq_class(0), mpq_class(-1, 2)); // 1/(2i)
    for (const auto& c : coords) {
        std::vector<std::string> zz{c.z, c.zbar};
        MultiPoly z = MultiPoly::variable(zz, c.z);
        MultiPoly zb = MultiPoly::variable(zz, c.zbar);
        acc = acc.substitute(c.x, (z + zb).scaled(half));
        acc = acc.substitute(c.y, (z - zb).scaled(half_over_i));
    }
    std::vector<std::string> roster;
    for (const auto& c : coords) roster.push_back(c.z);
    for (const auto& c : coords) roster.push_back(c.zbar);
    return acc.without_unused(roster).with_roster(roster);
}

MultiPoly zzbar_to_real(const MultiPoly& phi, const std::vector<CoordinateQuadruple>& coords) {
    MultiPoly acc = phi;
    for (const auto& c : coords) {
        std::vector<std::string> xy{c.x, c.y};
        MultiPoly x = MultiPoly::variable(xy, c.x);
        MultiPoly y = MultiPoly::variable(xy, c.y);
        acc = acc.substitute(c.z, x + y.scaled(ExactComplex::i()));
        acc = acc.substitute(c.zbar, x - y.scaled(ExactComplex::i()));
    }
    std::vector<std::string> roster;
    for (const auto& c : coords) {
        roster.push_back(c.x);
        roster.push_back(c.y);
    }
    acc = acc.without_unused(roster).with_roster(roster);
    for (const auto& [e, v] : acc.terms())
        if (!v.is_real())
            throw math_error("conversion to real coordinates left imaginary coefficients");
    return acc;
}

} // namespace levikit
