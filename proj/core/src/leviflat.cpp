#include "levikit/leviflat.hpp"

#include "levikit/polygcd.hpp"
#include "levikit/unipoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace levikit {

LeviMatrix levi_matrix(const ComplexifiedHypersurface& H) {
    if (!H.reality_checked) throw math_error("levi_matrix needs a reality-checked input");
    LeviMatrix out;
    out.n = H.n;
    for (int i = 0; i < H.n; ++i)
        for (int j = 0; j < H.n; ++j)
            out.entries.push_back(H.phi.differentiate(H.z_vars[static_cast<std::size_t>(i)])
                                      .differentiate(H.zbar_vars[static_cast<std::size_t>(j)]));
    return out;
}

namespace {

// bar(f): swap z <-> zbar and conjugate coefficients; the (z, zbar) roster
// is block-ordered by construction of ComplexifiedHypersurface
MultiPoly bar(const ComplexifiedHypersurface& H, const MultiPoly& f) {
    std::vector<std::string> block = H.z_vars;
    block.insert(block.end(), H.zbar_vars.begin(), H.zbar_vars.end());
    return conjugate_swap(f.with_roster(block));
}

} // namespace

std::vector<MultiPoly> levi_kernel_scalars(const ComplexifiedHypersurface& H) {
    LeviMatrix L = levi_matrix(H);
    std::vector<MultiPoly> grad;
    for (int i = 0; i < H.n; ++i)
        grad.push_back(H.phi.differentiate(H.z_vars[static_cast<std::size_t>(i)]));

    // tangential directions v_{ij} with components phi_{z_j} at i, -phi_{z_i} at j
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < H.n; ++i)
        for (int j = i + 1; j < H.n; ++j) pairs.emplace_back(i, j);

    std::vector<MultiPoly> out;
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        for (std::size_t b = a; b < pairs.size(); ++b) {
            // L(v_a, conj v_b) = sum_{r,s} phi_{z_r zbar_s} (v_a)_r bar((v_b)_s)
            auto va = pairs[a];
            auto vb = pairs[b];
            MultiPoly acc;
            auto term = [&](int r, const MultiPoly& vr, int s, const MultiPoly& vs) {
                acc = acc + L.at(r, s) * vr * bar(H, vs);
            };
            term(va.first, grad[static_cast<std::size_t>(va.second)], vb.first,
                 grad[static_cast<std::size_t>(vb.second)]);
            term(va.first, grad[static_cast<std::size_t>(va.second)], vb.second,
                 -grad[static_cast<std::size_t>(vb.first)]);
            term(va.second, -grad[static_cast<std::size_t>(va.first)], vb.first,
                 grad[static_cast<std::size_t>(vb.second)]);
            term(va.second, -grad[static_cast<std::size_t>(va.first)], vb.second,
                 -grad[static_cast<std::size_t>(vb.first)]);
            if (!acc.is_zero()) out.push_back(std::move(acc));
        }
    }
    return out;
}

std::string SamplePoint::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < coords.size(); ++k) {
        if (k) os << ", ";
        os << coords[k].str();
    }
    os << ')';
    return os.str();
}

std::vector<SamplePoint> sample_on_hypersurface(const MultiPoly& phi_real, int count,
                                                const mpq_class& width, Rng& rng, int max_lines) {
    const auto& vars = phi_real.variables();
    std::size_t n = vars.size();
    std::vector<SamplePoint> out;
    for (int line = 0; line < max_lines && static_cast<int>(out.size()) < count; ++line) {
        std::vector<mpq_class> base(n), dir(n);
        bool nonzero = false;
        for (std::size_t k = 0; k < n; ++k) {
            base[k] = rng.small_rational(3, 4);
            dir[k] = rng.small_rational(2, 2);
            if (dir[k] != 0) nonzero = true;
        }
        if (!nonzero) continue;
        // restrict to the line: univariate polynomial in t
        MultiPoly restricted = phi_real;
        std::vector<std::string> tvar{"_t"};
        MultiPoly t = MultiPoly::variable(tvar, "_t");
        for (std::size_t k = 0; k < n; ++k) {
            MultiPoly rep = MultiPoly::constant(tvar, ExactComplex(base[k])) +
                            t.scaled(ExactComplex(dir[k]));
            restricted = restricted.substitute(vars[k], rep);
        }
        restricted = restricted.without_unused({"_t"});
        if (restricted.is_zero()) continue; // line inside the hypersurface
        if (!restricted.depends_on("_t")) continue;
        UniPoly p = UniPoly::from_multipoly(restricted.with_roster({"_t"}), "_t");
        if (!p.is_real()) throw internal_error("real restriction has imaginary coefficients");
        for (auto iv : isolate_real_roots(p)) {
            if (static_cast<int>(out.size()) >= count) break;
            iv = refine_real_root(p.squarefree_part(), iv, width);
            SamplePoint sp;
            for (std::size_t k = 0; k < n; ++k)
                sp.coords.push_back(RatInterval(base[k]) + iv * RatInterval(dir[k]));
            out.push_back(std::move(sp));
        }
    }
    if (out.empty()) throw math_error("no sample points found on the hypersurface");
    return out;
}

namespace {

// interval evaluation of a (z, zbar) polynomial at a real sample point
ComplexBox eval_at_sample(const ComplexifiedHypersurface& H, const MultiPoly& f,
                          const SamplePoint& p) {
    std::vector<std::string> block = H.z_vars;
    block.insert(block.end(), H.zbar_vars.begin(), H.zbar_vars.end());
    MultiPoly fb = f.with_roster(block);
    std::vector<ComplexBox> point(block.size());
    for (int k = 0; k < H.n; ++k) {
        RatInterval x = p.coords[static_cast<std::size_t>(2 * k)];
        RatInterval y = p.coords[static_cast<std::size_t>(2 * k + 1)];
        point[static_cast<std::size_t>(k)] = ComplexBox(x, y);
        point[static_cast<std::size_t>(k + H.n)] = ComplexBox(x, -y);
    }
    return fb.evaluate_box(point);
}

MultiPoly real_form_of(const ComplexifiedHypersurface& H) {
    std::vector<CoordinateQuadruple> quads;
    for (int k = 0; k < H.n; ++k)
        quads.push_back({"_x" + std::to_string(k + 1), "_y" + std::to_string(k + 1),
                         H.z_vars[static_cast<std::size_t>(k)],
                         H.zbar_vars[static_cast<std::size_t>(k)]});
    return zzbar_to_real(H.phi, quads);
}

} // namespace

FlatnessCertificate flatness_certificate(const ComplexifiedHypersurface& H, int samples,
                                         const mpq_class& tol, Rng& rng) {
    FlatnessCertificate cert;
    cert.tol = tol;
    std::vector<MultiPoly> scalars = levi_kernel_scalars(H);
    if (scalars.empty()) {
        cert.verdict = FlatnessVerdict::ExactFlat;
        cert.cofactors.push_back(MultiPoly::zero(H.phi.variables()));
        return cert;
    }

    bool all_divide = true;
    std::vector<MultiPoly> cofs;
    for (const auto& s : scalars) {
        auto q = exact_divide(s, H.phi);
        if (!q) {
            all_divide = false;
            break;
        }
        cofs.push_back(std::move(*q));
    }
    if (all_divide) {
        cert.verdict = FlatnessVerdict::ExactFlat;
        cert.cofactors = std::move(cofs);
        return cert;
    }

    // numeric tier: certified samples on {phi = 0}
    MultiPoly phi_real = real_form_of(H);
    mpq_class width(1, 1000000000000); // 1e-12 chart width
    auto points = sample_on_hypersurface(phi_real, samples, width, rng);
    for (const auto& p : points) {
        for (const auto& s : scalars) {
            ComplexBox val = eval_at_sample(H, s, p);
            if (val.mag_upper() <= tol) continue;
            if (val.mag_lower() > tol) {
                cert.verdict = FlatnessVerdict::NotFlat;
                cert.witness = p;
                cert.witness_value = RatInterval(val.mag_lower(), val.mag_upper());
                cert.samples_used = static_cast<int>(&p - points.data()) + 1;
                return cert;
            }
            // ambiguous enclosure: treat as a violation candidate and report
            // honestly with the wide enclosure rather than guessing
            cert.verdict = FlatnessVerdict::NotFlat;
            cert.witness = p;
            cert.witness_value = RatInterval(val.mag_lower(), val.mag_upper());
            cert.samples_used = static_cast<int>(&p - points.data()) + 1;
            return cert;
        }
    }
    cert.verdict = FlatnessVerdict::NumericallyFlat;
    cert.samples_used = static_cast<int>(points.size());
    return cert;
}

TangencyReport curve_invariance(const MultiPoly& a, const MultiPoly& b, const MultiPoly& P) {
    if (a.is_zero() && b.is_zero()) throw math_error("curve invariance against the zero form");
    if (P.is_zero()) throw math_error("curve invariance of the zero curve");
    if (!is_squarefree(P)) throw math_error("curve invariance needs a squarefree curve");
    if (!gcd_is_constant(a.is_zero() ? b : a, b.is_zero() ? a : b))
        throw math_error("form coefficients must be coprime");
    const auto& vars = P.variables();
    if (vars.size() != 2) throw input_error("affine curve invariance expects two variables");
    MultiPoly tau = a * P.differentiate(vars[1]) - b * P.differentiate(vars[0]);
    TangencyReport rep;
    rep.tangency = tau;
    rep.tier = CertTier::Exact;
    if (tau.is_zero()) {
        rep.verdict = TangencyVerdict::Invariant;
        rep.cofactor = MultiPoly::zero(vars);
        return rep;
    }
    auto q = exact_divide(tau, P);
    if (q) {
        rep.verdict = TangencyVerdict::Invariant;
        rep.cofactor = std::move(*q);
    } else {
        rep.verdict = TangencyVerdict::NotInvariant;
    }
    return rep;
}

TangencyReport curve_invariance(const FoliationForm& omega, const HomogeneousForm& P) {
    if (P.is_zero()) throw math_error("curve invariance of the zero curve");
    const auto& vars = omega.vars;
    MultiPoly Pp = P.poly().with_roster(vars);
    std::vector<MultiPoly> dP;
    for (const auto& v : vars) dP.push_back(Pp.differentiate(v));
    TangencyReport rep;
    rep.tier = CertTier::Exact;
    rep.verdict = TangencyVerdict::Invariant;
    MultiPoly combined;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        for (std::size_t j = i + 1; j < vars.size(); ++j) {
            MultiPoly comp = omega.coefficients[i] * dP[j] - omega.coefficients[j] * dP[i];
            combined = combined + comp; // representative for the report
            if (comp.is_zero()) continue;
            auto q = exact_divide(comp, Pp);
            if (!q) {
                rep.verdict = TangencyVerdict::NotInvariant;
                rep.tangency = comp;
                return rep;
            }
            if (!rep.cofactor) rep.cofactor = std::move(*q);
        }
    }
    rep.tangency = combined;
    if (!rep.cofactor) rep.cofactor = MultiPoly::zero(vars);
    return rep;
}

TangencyReport hypersurface_tangency(const MultiPoly& a, const MultiPoly& b,
                                     const ComplexifiedHypersurface& H, int samples,
                                     const mpq_class& tol, Rng& rng) {
    if (H.n != 2) throw input_error("hypersurface tangency is a two-variable chart operation");
    TangencyReport rep;
    rep.tol = tol;
    std::vector<std::string> block = H.z_vars;
    block.insert(block.end(), H.zbar_vars.begin(), H.zbar_vars.end());
    MultiPoly tau = a.with_roster(block) * H.phi.differentiate(H.z_vars[1]) -
                    b.with_roster(block) * H.phi.differentiate(H.z_vars[0]);
    rep.tangency = tau;
    if (tau.is_zero()) {
        rep.verdict = TangencyVerdict::Invariant;
        rep.tier = CertTier::Exact;
        rep.cofactor = MultiPoly::zero(block);
        return rep;
    }
    auto q = exact_divide(tau, H.phi);
    if (q) {
        rep.verdict = TangencyVerdict::Invariant;
        rep.tier = CertTier::Exact;
        rep.cofactor = std::move(*q);
        return rep;
    }
    rep.tier = CertTier::Numeric;
    MultiPoly phi_real = real_form_of(H);
    mpq_class width(1, 1000000000000);
    auto points = sample_on_hypersurface(phi_real, samples, width, rng);
    for (const auto& p : points) {
        ComplexBox val = eval_at_sample(H, tau, p);
        if (val.mag_upper() <= tol) continue;
        rep.verdict = TangencyVerdict::NotInvariant;
        rep.witness = p;
        rep.witness_value = RatInterval(val.mag_lower(), val.mag_upper());
        rep.samples_used = static_cast<int>(&p - points.data()) + 1;
        return rep;
    }
    rep.verdict = TangencyVerdict::Invariant;
    rep.samples_used = static_cast<int>(points.size());
    return rep;
}

bool web2_tangency(const Web2& web, const MultiPoly& leaf_family, const std::string& param) {
    // leaf w = g(z, c): substitute dw = g_z dz into A (dw)^2 + B dw dz + C (dz)^2
    MultiPoly g = leaf_family;
    MultiPoly gz = g.differentiate(web.z);
    MultiPoly A = web.A.substitute(web.w, g);
    MultiPoly B = web.B.substitute(web.w, g);
    MultiPoly C = web.C.substitute(web.w, g);
    (void)param;
    MultiPoly E = A * gz * gz + B * gz + C;
    return E.is_zero();
}

SingularLocusSystem singular_locus_system(const MultiPoly& phi_real) {
    SingularLocusSystem out;
    out.system.push_back(phi_real);
    for (const auto& v : phi_real.variables()) out.system.push_back(phi_real.differentiate(v));
    MultiPoly rep = repeated_factor_part(phi_real);
    out.non_reduced = !rep.is_constant();
    return out;
}

bool contains_variety(const std::vector<MultiPoly>& system,
                      const std::vector<std::pair<std::string, MultiPoly>>& assignments) {
    for (const auto& f : system) {
        MultiPoly s = f;
        for (const auto& [var, val] : assignments)
            if (s.var_index(var) >= 0) s = s.substitute(var, val);
        if (!s.is_zero()) return false;
    }
    return true;
}

namespace {

MultiPoly plane_substitute(const MultiPoly& f, const PlaneMatrix& plane,
                           const std::vector<std::string>& uvars) {
    const auto& vars = f.variables();
    if (plane.size() != 3) throw input_error("plane parametrization needs three rows");
    for (const auto& row : plane)
        if (row.size() != vars.size())
            throw input_error("plane parametrization column count mismatch");
    // rank check: some 3x3 minor nonzero
    bool full_rank = false;
    std::size_t m = vars.size();
    for (std::size_t c1 = 0; c1 < m && !full_rank; ++c1)
        for (std::size_t c2 = c1 + 1; c2 < m && !full_rank; ++c2)
            for (std::size_t c3 = c2 + 1; c3 < m && !full_rank; ++c3) {
                Matrix3 minor;
                for (int r = 0; r < 3; ++r) {
                    minor[static_cast<std::size_t>(r)][0] = plane[static_cast<std::size_t>(r)][c1];
                    minor[static_cast<std::size_t>(r)][1] = plane[static_cast<std::size_t>(r)][c2];
                    minor[static_cast<std::size_t>(r)][2] = plane[static_cast<std::size_t>(r)][c3];
                }
                if (!det3(minor).is_zero()) full_rank = true;
            }
    if (!full_rank) throw math_error("plane parametrization is rank deficient");

    MultiPoly acc = f;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        MultiPoly lin(uvars);
        for (int j = 0; j < 3; ++j) {
            Exponents e(3, 0);
            e[static_cast<std::size_t>(j)] = 1;
            lin.add_term(e, plane[static_cast<std::size_t>(j)][i]);
        }
        acc = acc.substitute(vars[i], lin);
    }
    return acc.without_unused(uvars).with_roster(uvars);
}

} // namespace

RestrictedForm restrict_form_to_plane(const HomogeneousForm& F, const PlaneMatrix& plane) {
    std::vector<std::string> uvars{"u0", "u1", "u2"};
    MultiPoly r = plane_substitute(F.poly(), plane, uvars);
    RestrictedForm out{HomogeneousForm(r, F.degree()), false, false, false};
    if (r.is_zero()) {
        out.degree_drop = true;
        return out;
    }
    out.degree_preserved = r.degree() == F.degree();
    out.degree_drop = !out.degree_preserved;
    out.squarefree = is_squarefree(r);
    return out;
}

RestrictedFoliation restrict_foliation_to_plane(const FoliationForm& omega,
                                                const PlaneMatrix& plane) {
    std::vector<std::string> uvars{"u0", "u1", "u2"};
    std::vector<MultiPoly> B(3, MultiPoly::zero(uvars));
    for (int j = 0; j < 3; ++j) {
        for (std::size_t i = 0; i < omega.vars.size(); ++i) {
            if (omega.coefficients[i].is_zero()) continue;
            if (plane[static_cast<std::size_t>(j)][i].is_zero()) continue;
            B[static_cast<std::size_t>(j)] =
                B[static_cast<std::size_t>(j)] +
                plane_substitute(omega.coefficients[i], plane, uvars)
                    .scaled(plane[static_cast<std::size_t>(j)][i]);
        }
    }
    RestrictedFoliation out;
    MultiPoly g = poly_gcd_many(B);
    if (g.is_zero()) {
        out.degenerate = true;
        out.form.vars = uvars;
        out.form.coefficients = B;
        out.form.degree = 0;
        return out;
    }
    if (!g.is_constant())
        for (auto& b : B) {
            if (b.is_zero()) continue;
            auto q = exact_divide(b, g);
            if (!q) throw internal_error("restricted foliation gcd division failed");
            b = std::move(*q);
        }
    out.form.vars = uvars;
    out.form.coefficients = B;
    out.form.degree = 0;
    for (const auto& b : B)
        if (!b.is_zero()) out.form.degree = b.degree();
    if (!out.form.euler_contraction().is_zero())
        throw internal_error("restricted foliation lost the Euler identity");
    // discreteness: two nonzero coprime coefficients bound the zero set
    std::vector<const MultiPoly*> nz;
    for (const auto& b : B)
        if (!b.is_zero()) nz.push_back(&b);
    if (nz.size() >= 2) {
        for (std::size_t a = 0; a < nz.size() && !out.discrete_singular_set; ++a)
            for (std::size_t b2 = a + 1; b2 < nz.size() && !out.discrete_singular_set; ++b2)
                if (gcd_is_constant(*nz[a], *nz[b2])) out.discrete_singular_set = true;
    }
    return out;
}

LionResult lion_singular_lines(const RealMatrix2& A) {
    // C-linear iff A commutes with multiplication by i: a00 = a11, a01 = -a10
    if (A[0][0] == A[1][1] && A[0][1] == -A[1][0])
        throw math_error("matrix is C-linear: the line field is a holomorphic pencil");
    RealMatrix2 B{{{A[0][0] - 1, A[0][1]}, {A[1][0], A[1][1] - 1}}};
    mpq_class tr = B[0][0] + B[1][1];
    mpq_class det = B[0][0] * B[1][1] - B[0][1] * B[1][0];
    mpq_class disc = tr * tr - 4 * det;

    LionResult out;
    auto add_line = [&](const mpq_class& lambda) {
        if (lambda == 0) {
            out.has_zero_eigenvalue = true;
            return;
        }
        LionLine line;
        line.rational = true;
        line.lambda = lambda;
        line.lambda_box = RatInterval(lambda);
        line.line_x = -1 / lambda;
        line.line_x_box = RatInterval(line.line_x);
        // eigenvector of B for lambda
        mpq_class v0, v1;
        if (B[0][1] != 0 || lambda - B[0][0] != 0) {
            v0 = B[0][1];
            v1 = lambda - B[0][0];
        } else {
            v0 = lambda - B[1][1];
            v1 = B[1][0];
        }
        if (v0 == 0 && v1 == 0) { // B = lambda I
            v0 = 1;
            v1 = 0;
        }
        line.eigenvector = {RatInterval(v0), RatInterval(v1)};
        out.lines.push_back(std::move(line));
    };
    auto add_irrational = [&](const RatInterval& box) {
        LionLine line;
        line.rational = false;
        line.lambda_box = box;
        line.line_x_box = -box.recip();
        RatInterval l0 = RatInterval(B[0][1]);
        RatInterval l1 = box - RatInterval(B[0][0]);
        line.eigenvector = {l0, l1};
        out.lines.push_back(std::move(line));
    };

    if (disc < 0) return out; // complex pair: no real eigenvector
    auto s = exact_sqrt(disc);
    if (s) {
        add_line((tr + *s) / 2);
        if (*s != 0) add_line((tr - *s) / 2);
        return out;
    }
    // irrational real pair: isolate roots of x^2 - tr x + det
    UniPoly charpoly({ExactComplex(det), ExactComplex(-tr), ExactComplex(1)});
    mpq_class width(1, 1000000000000);
    for (auto iv : isolate_real_roots(charpoly)) {
        iv = refine_real_root(charpoly, iv, width);
        if (iv.contains(0) ) {
            // an irrational eigenvalue cannot be exactly zero: refine until decided
            while (iv.contains(0) && iv.width() > 0)
                iv = refine_real_root(charpoly, iv, iv.width() / 16);
        }
        add_irrational(iv);
    }
    return out;
}

double lion_brute_force_max_error(const RealMatrix2& A, const LionResult& result, int trials,
                                  Rng& rng) {
    double max_err = 0.0;
    RealMatrix2 B{{{A[0][0] - 1, A[0][1]}, {A[1][0], A[1][1] - 1}}};
    auto apply = [&](const std::complex<double>& z) {
        double x = z.real(), y = z.imag();
        return std::complex<double>(B[0][0].get_d() * x + B[0][1].get_d() * y,
                                    B[1][0].get_d() * x + B[1][1].get_d() * y);
    };
    for (const auto& line : result.lines) {
        std::complex<double> w(line.eigenvector[0].mid().get_d(),
                               line.eigenvector[1].mid().get_d());
        double expected = line.rational ? line.line_x.get_d() : line.line_x_box.mid().get_d();
        for (int k = 0; k < trials; ++k) {
            std::complex<double> z(rng.uniform(-1000, 1000) / 251.0,
                                   rng.uniform(-1000, 1000) / 257.0);
            double alpha = 0;
            while (alpha == 0) alpha = rng.uniform(-1000, 1000) / 263.0;
            std::complex<double> zt = z + alpha * w;
            // L_z(t) = (t, z + t Bz); intersection forces t * B(zt - z) = -(zt - z)
            std::complex<double> d = zt - z;
            std::complex<double> Bd = apply(d);
            std::complex<double> t = -d / Bd;
            // residual of the full intersection equation
            std::complex<double> lhs = z + t * apply(z);
            std::complex<double> rhs = zt + t * apply(zt);
            double resid = std::abs(lhs - rhs);
            double err = std::max(resid, std::abs(t - std::complex<double>(expected, 0.0)));
            max_err = std::max(max_err, err);
        }
    }
    return max_err;
}

} // namespace levikit
