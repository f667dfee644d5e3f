// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include "levikit/cli.hpp"
#include "levikit/intersection.hpp"
#include "levikit/leviflat.hpp"
#include "levikit/pencil.hpp"
#include "levikit/polygcd.hpp"
#include "levikit/puiseux.hpp"
#include "levikit/rng.hpp"
#include "levikit/segre.hpp"

#include "test_helpers.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

using namespace levikit;
using namespace levikit::testing;

namespace {

std::string g_cli_path;
std::string g_corpus_dir;
int g_failures = 0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int number, const std::string& name, const Outcome& o) {
    std::printf("[%s] criterion %2d: %s%s%s\n", o.pass ? "PASS" : "FAIL", number, name.c_str(),
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++g_failures;
}

const std::vector<std::string> ZS{"z0", "z1", "z2"};

// ---------------------------------------------------------------------------
// criteria 1 and 2 share one seeded sweep

struct SweepData {
    int pairs = 0;
    long long points = 0;
    long long exact_points = 0;
    long long certified_clusters = 0;
    bool bezout_ok = true;
    bool oracles_ok = true;
    std::string first_error;
    double elapsed = 0;
};

SweepData run_sweep(int target_pairs) {
    SweepData data;
    Rng rng(20240001);
    auto t0 = std::chrono::steady_clock::now();
    while (data.pairs < target_pairs) {
        int dF = 1 + static_cast<int>(rng.uniform(0, 3));
        int dG = 1 + static_cast<int>(rng.uniform(0, 3));
        MultiPoly F = random_form(ZS, dF, rng, 3);
        MultiPoly G = random_form(ZS, dG, rng, 3);
        if (!gcd_is_constant(F, G)) continue;
        HomogeneousForm Fh = HomogeneousForm::from_poly(F);
        HomogeneousForm Gh = HomogeneousForm::from_poly(G);
        IntersectionResult res;
        try {
            res = intersection_points(Fh, Gh, rng);
        } catch (const common_component_error&) {
            continue;
        }
        ++data.pairs;
        long long sum = 0;
        for (const auto& r : res.records) sum += r.multiplicity;
        if (sum != dF * dG) {
            data.bezout_ok = false;
            data.first_error = "pair " + std::to_string(data.pairs) + ": sum " +
                               std::to_string(sum) + " != " + std::to_string(dF * dG);
            break;
        }
        data.points += static_cast<long long>(res.records.size());

        // criterion 2: dual oracle at every point of the sweep
        for (const auto& r : res.records) {
            if (r.exact) {
                auto m = intersection_multiplicity(Fh, Gh, *r.exact, rng);
                ++data.exact_points;
                if (m.multiplicity != r.multiplicity || m.resultant_order != m.branch_sum) {
                    data.oracles_ok = false;
                    data.first_error = "exact point " + r.exact->str() + ": record " +
                                       std::to_string(r.multiplicity) + ", oracle " +
                                       std::to_string(m.multiplicity);
                }
            } else {
                // nonrational point: the exact transversality certificate pins the
                // branch-sum oracle to 1, which must match the eliminant order
                if (r.multiplicity == 1 && r.transverse_certified) {
                    ++data.certified_clusters;
                } else {
                    data.oracles_ok = false;
                    data.first_error = "uncertified nonrational point (multiplicity " +
                                       std::to_string(r.multiplicity) + ")";
                }
            }
            if (!data.oracles_ok) break;
        }
        if (!data.oracles_ok) break;
    }
    data.elapsed = seconds_since(t0);
    return data;
}

Outcome criterion_1(const SweepData& d) {
    Outcome o;
    o.pass = d.bezout_ok && d.pairs >= 200 && d.elapsed < 60.0;
    std::ostringstream os;
    os << d.pairs << " coprime pairs, " << d.points << " points, exact Bezout sums, "
       << d.elapsed << " s";
    if (!d.first_error.empty() && !d.bezout_ok) os << "; " << d.first_error;
    o.detail = os.str();
    return o;
}

Outcome criterion_2(const SweepData& d) {
    Outcome o;
    o.pass = d.oracles_ok && d.bezout_ok;
    std::ostringstream os;
    os << d.exact_points << " rational points dual-checked, " << d.certified_clusters
       << " nonrational points transversality-certified";
    if (!d.first_error.empty() && !d.oracles_ok) os << "; " << d.first_error;
    o.detail = os.str();
    return o;
}

// ---------------------------------------------------------------------------
// criterion 3: profile agreement across pencils built from rational base loci

struct PencilInstance {
    Pencil pencil;
    std::vector<PlanePoint> base;
};

std::optional<PencilInstance> build_point_pencil(int degree, Rng& rng) {
    int conditions = degree == 2 ? 4 : 8;
    // sample rational points, solve for the degree-d curves through them
    std::vector<std::pair<ExactComplex, ExactComplex>> pts;
    for (int k = 0; k < conditions; ++k)
        pts.emplace_back(ExactComplex(rng.small_rational(4, 3)),
                         ExactComplex(rng.small_rational(4, 3)));
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            if (pts[a] == pts[b]) return std::nullopt;

    // monomial basis of degree d in (z0, z1, z2)
    std::vector<Exponents> basis;
    for (unsigned i = 0; i <= static_cast<unsigned>(degree); ++i)
        for (unsigned j = 0; i + j <= static_cast<unsigned>(degree); ++j)
            basis.push_back({static_cast<unsigned>(degree) - i - j, i, j});

    // condition matrix: rows = points, columns = monomials (chart z0 = 1)
    std::size_t cols = basis.size();
    std::vector<std::vector<ExactComplex>> m(pts.size(), std::vector<ExactComplex>(cols));
    for (std::size_t r = 0; r < pts.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            ExactComplex v(1);
            for (unsigned e = 0; e < basis[c][1]; ++e) v *= pts[r].first;
            for (unsigned e = 0; e < basis[c][2]; ++e) v *= pts[r].second;
            m[r][c] = v;
        }
    // exact kernel via Gauss-Jordan
    std::vector<int> pivot_col(pts.size(), -1);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        ExactComplex inv = m[rank][c].inverse();
        for (auto& e : m[rank]) e *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][c].is_zero()) continue;
            ExactComplex f = m[r][c];
            for (std::size_t cc = 0; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        pivot_col[rank] = static_cast<int>(c);
        ++rank;
    }
    if (cols - rank != 2) return std::nullopt;

    // kernel basis from the two free columns
    std::vector<MultiPoly> gens;
    for (std::size_t fc = 0; fc < cols; ++fc) {
        bool is_pivot = false;
        for (std::size_t r = 0; r < rank; ++r)
            if (pivot_col[r] == static_cast<int>(fc)) is_pivot = true;
        if (is_pivot) continue;
        MultiPoly gen(ZS);
        gen.add_term(basis[fc], ExactComplex(1));
        for (std::size_t r = 0; r < rank; ++r)
            gen.add_term(basis[static_cast<std::size_t>(pivot_col[r])], -m[r][fc]);
        gens.push_back(gen);
    }
    if (gens.size() != 2) return std::nullopt;

    Rng check_rng(rng.fork_seed());
    HomogeneousForm F(gens[0], degree), G(gens[1], degree);
    if (!gcd_is_constant(gens[0], gens[1])) return std::nullopt;
    if (!is_smooth_curve(F, check_rng) || !is_smooth_curve(G, check_rng)) return std::nullopt;

    PencilInstance inst{Pencil::make(F, G), {}};
    IntersectionResult base;
    try {
        base = intersection_points(F, G, check_rng);
    } catch (const common_component_error&) {
        return std::nullopt;
    }
    for (const auto& r : base.records) {
        if (!r.exact || r.multiplicity != 1) return std::nullopt; // want a simple rational base locus
        inst.base.push_back(*r.exact);
    }
    if (static_cast<int>(inst.base.size()) != degree * degree) return std::nullopt;
    return inst;
}

Outcome criterion_3() {
    Outcome o;
    Rng rng(20240003);
    int forward_done = 0, contrapositive_done = 0;
    try {
        while (forward_done < 50) {
            int degree = 2 + static_cast<int>(rng.uniform(0, 1));
            auto inst = build_point_pencil(degree, rng);
            if (!inst) continue;
            HomogeneousForm P = inst->pencil.member(ExactComplex(1), ExactComplex(1));
            if (!is_squarefree(P.poly())) continue;

            auto reference = intersection_profile(P, inst->pencil.G(), inst->base);
            bool agree = true;
            for (int k = 0; k < 3 && agree; ++k) {
                ExactComplex a(rng.uniform(-5, 5)), b(rng.uniform(-5, 5));
                if (a.is_zero() && b.is_zero()) continue;
                HomogeneousForm C = inst->pencil.member(a, b);
                if (C.is_zero() || !(pencil_membership(P, inst->pencil).has_value())) continue;
                // skip the member proportional to P itself: CONTAINED by definition
                if (pencil_membership(C, inst->pencil) ==
                    pencil_membership(P, inst->pencil))
                    continue;
                auto prof = intersection_profile(P, C, inst->base);
                agree = agree && prof == reference;
            }
            if (!agree) {
                o.detail = "forward profile mismatch";
                return o;
            }
            ++forward_done;

            // contrapositive: off-pencil smooth H differs from the pencil profile
            if (contrapositive_done < 50) {
                for (int tries = 0; tries < 40; ++tries) {
                    MultiPoly Hp = random_form(ZS, degree, rng, 3);
                    HomogeneousForm H(Hp, degree);
                    if (pencil_membership(H, inst->pencil).has_value()) continue;
                    Rng srng(rng.fork_seed());
                    if (!is_smooth_curve(H, srng)) continue;
                    if (!gcd_is_constant(P.poly(), Hp)) continue;
                    // profile of H over the base branches of P (hypotheses: the
                    // singularity set also contains P&H intersections; entries
                    // there belong to H alone, so base-branch inequality decides)
                    bool differs = false, contained_flag = false;
                    const int bound = P.degree() * H.degree();
                    for (std::size_t pi = 0; pi < inst->base.size() && !differs; ++pi) {
                        const PlanePoint& p = inst->base[pi];
                        int chart = p.pivot();
                        MultiPoly pf = dehomogenize(P.poly(), ZS[static_cast<std::size_t>(chart)]);
                        MultiPoly hf =
                            dehomogenize(Hp.with_roster(ZS), ZS[static_cast<std::size_t>(chart)]);
                        auto [x0, y0] = p.affine(chart);
                        const auto vars = pf.variables();
                        MultiPoly xv = MultiPoly::variable(vars, vars[0]);
                        MultiPoly yv = MultiPoly::variable(vars, vars[1]);
                        auto shift = [&](const MultiPoly& g) {
                            return g
                                .substitute(vars[0],
                                            xv + MultiPoly::constant(vars, x0))
                                .substitute(vars[1], yv + MultiPoly::constant(vars, y0));
                        };
                        MultiPoly p0 = shift(pf), h0 = shift(hf);
                        for (const auto& br : puiseux_branches(p0, bound + 1)) {
                            auto ord = branch_order(br, h0, bound);
                            if (ord.contained) contained_flag = true;
                            // the common pencil profile is >= 1 at every base branch
                            else if (ord.order == 0)
                                differs = true;
                        }
                    }
                    if (!(differs || contained_flag)) {
                        o.detail = "off-pencil curve matched the pencil profile";
                        return o;
                    }
                    ++contrapositive_done;
                    break;
                }
            }
        }
    } catch (const std::exception& e) {
        o.detail = std::string("exception: ") + e.what();
        return o;
    }
    o.pass = forward_done >= 50 && contrapositive_done >= 50;
    o.detail = std::to_string(forward_done) + " pencils agree entrywise, " +
               std::to_string(contrapositive_done) + " off-pencil curves differ";
    return o;
}

// ---------------------------------------------------------------------------
// criteria 4 and 10 share the random pencil loop

Outcome criterion_4_and_10(Outcome& out10) {
    Outcome o;
    Rng rng(20240004);
    int done = 0, members_checked = 0;
    try {
        while (done < 100) {
            int d = 1 + static_cast<int>(rng.uniform(0, 2));
            MultiPoly F = random_form(ZS, d, rng, 3);
            MultiPoly G = random_form(ZS, d, rng, 3);
            std::optional<Pencil> pen;
            try {
                pen = Pencil::make(HomogeneousForm::from_poly(F), HomogeneousForm::from_poly(G));
            } catch (const math_error&) {
                continue;
            }
            ExactComplex a = rng.small_gaussian(5), b = rng.small_gaussian(5);
            if (a.is_zero() && b.is_zero()) continue;

            auto cert = verify_level_invariance(*pen, a, b); // throws on identity failure
            if (!cert.verified) {
                o.detail = "identity certificate missing";
                return o;
            }
            FoliationForm ff = pencil_foliation_form(*pen);
            if (!ff.euler_contraction().is_zero()) {
                o.detail = "nonzero Euler contraction";
                return o;
            }
            ++done;

            // criterion 10 on the same pencil: members invariant under the form
            HomogeneousForm member = pen->member(a, b);
            if (!member.is_zero() && is_squarefree(member.poly())) {
                auto rep = curve_invariance(ff, member);
                if (rep.verdict != TangencyVerdict::Invariant) {
                    out10.detail = "member not invariant under its pencil form";
                    return o;
                }
                ++members_checked;
            }
        }
    } catch (const std::exception& e) {
        o.detail = std::string("exception: ") + e.what();
        return o;
    }
    o.pass = done >= 100;
    o.detail = std::to_string(done) + " identities verified exactly";
    out10.pass = members_checked > 0;
    out10.detail = std::to_string(members_checked) + " members certified invariant";
    return o;
}

// ---------------------------------------------------------------------------
// criterion 5: Brunella corpus

Outcome criterion_5() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        std::vector<std::string> rv{"x", "y", "s", "t"};
        auto Y = MultiPoly::variable(rv, "y");
        auto S = MultiPoly::variable(rv, "s");
        auto T = MultiPoly::variable(rv, "t");
        auto phi = T * T - ExactComplex(4) * (Y * Y + S) * Y * Y;

        // flatness
        std::vector<CoordinateQuadruple> quads{{"x", "y", "z1", "z1b"}, {"s", "t", "z2", "z2b"}};
        auto H = complexify(real_to_zzbar(phi, quads), {{"z1", "z1b"}, {"z2", "z2b"}});
        Rng rng(0);
        auto fc = flatness_certificate(H, 24, mpq_class(1, 1000000000), rng);
        if (fc.verdict == FlatnessVerdict::NotFlat) {
            o.detail = "flatness verdict NotFlat";
            return o;
        }

        // singular locus containment of {t = 0, y = 0}
        auto sls = singular_locus_system(phi);
        std::vector<std::string> xs{"x", "s"};
        if (!contains_variety(sls.system,
                              {{"t", MultiPoly::zero(xs)}, {"y", MultiPoly::zero(xs)}})) {
            o.detail = "singular locus containment failed";
            return o;
        }

        // web tangency of the five leaves
        std::vector<std::string> zw{"z", "w"};
        Web2 web{MultiPoly::constant(zw, ExactComplex(1)), MultiPoly::zero(zw),
                 ExactComplex(-4) * MultiPoly::variable(zw, "w"), "z", "w"};
        for (long c : {-2L, -1L, 0L, 1L, 2L}) {
            std::vector<std::string> zc{"z"};
            auto z = MultiPoly::variable(zc, "z");
            auto leaf = (z + MultiPoly::constant(zc, ExactComplex(c))) *
                        (z + MultiPoly::constant(zc, ExactComplex(c)));
            if (!web2_tangency(web, leaf, "")) {
                o.detail = "web equation failed for leaf c=" + std::to_string(c);
                return o;
            }
        }

        // the full pipeline on the corpus file reports NoPencil
        auto reqs = parse_input_file(g_corpus_dir + "/brunella.json");
        Report rep = run_request(reqs[0]);
        if (rep.verdicts.value("pencil_found", true) != false ||
            rep.verdicts.value("conclusion", "") != std::string("NO_PENCIL")) {
            o.detail = "analyze did not conclude NO_PENCIL";
            return o;
        }
    } catch (const std::exception& e) {
        o.detail = std::string("exception: ") + e.what();
        return o;
    }
    double el = seconds_since(t0);
    o.pass = el < 10.0;
    std::ostringstream os;
    os << "flat, sing-locus containment, 5 web leaves, NO_PENCIL; " << el << " s";
    o.detail = os.str();
    return o;
}

// ---------------------------------------------------------------------------
// criterion 6: Lebl degenerate locus

Outcome criterion_6() {
    Outcome o;
    try {
        std::vector<std::string> V{"z1", "z2", "z1b", "z2b"};
        MultiPoly phi(V);
        phi.add_term({1, 0, 0, 1}, ExactComplex(mpq_class(0), mpq_class(-1)));
        phi.add_term({0, 1, 1, 0}, ExactComplex(mpq_class(0), mpq_class(1)));
        auto H = complexify(phi, {{"z1", "z1b"}, {"z2", "z2b"}});
        auto sys = degenerate_locus_system(H);
        std::vector<std::string> w{"w1", "w2"};
        bool ok = sys.size() == 2 && sys[0] == MultiPoly::variable(w, "w1") &&
                  sys[1] == MultiPoly::variable(w, "w2");
        o.pass = ok;
        o.detail = ok ? "system {w1, w2}: complex codimension 2"
                      : "unexpected degenerate-locus system";
    } catch (const std::exception& e) {
        o.detail = std::string("exception: ") + e.what();
    }
    return o;
}

// ---------------------------------------------------------------------------
// criterion 7: Segre symmetry over the corpus hypersurfaces

Outcome criterion_7() {
    Outcome o;
    try {
        std::vector<std::string> V{"z1", "z2", "z1b", "z2b"};
        std::vector<ComplexifiedHypersurface> corpus;
        { // Lebl
            MultiPoly phi(V);
            phi.add_term({1, 0, 0, 1}, ExactComplex(mpq_class(0), mpq_class(-1)));
            phi.add_term({0, 1, 1, 0}, ExactComplex(mpq_class(0), mpq_class(1)));
            corpus.push_back(complexify(phi, {{"z1", "z1b"}, {"z2", "z2b"}}));
        }
        { // sphere
            MultiPoly phi(V);
            phi.add_term({1, 0, 1, 0}, ExactComplex(1));
            phi.add_term({0, 1, 0, 1}, ExactComplex(1));
            phi.add_term({0, 0, 0, 0}, ExactComplex(-1));
            corpus.push_back(complexify(phi, {{"z1", "z1b"}, {"z2", "z2b"}}));
        }
        { // Brunella
            std::vector<std::string> rv{"x", "y", "s", "t"};
            auto Y = MultiPoly::variable(rv, "y");
            auto S = MultiPoly::variable(rv, "s");
            auto T = MultiPoly::variable(rv, "t");
            auto phi = T * T - ExactComplex(4) * (Y * Y + S) * Y * Y;
            std::vector<CoordinateQuadruple> quads{{"x", "y", "z1", "z1b"},
                                                   {"s", "t", "z2", "z2b"}};
            corpus.push_back(complexify(real_to_zzbar(phi, quads), {{"z1", "z1b"}, {"z2", "z2b"}}));
        }
        { // pencil levels |z1|^2 - 4 |z2|^2
            MultiPoly phi(V);
            phi.add_term({1, 0, 1, 0}, ExactComplex(1));
            phi.add_term({0, 1, 0, 1}, ExactComplex(-4));
            corpus.push_back(complexify(phi, {{"z1", "z1b"}, {"z2", "z2b"}}));
        }

        Rng rng(20240007);
        mpq_class tol(1, 1000000000);
        int exact_pairs = 0, interval_pairs = 0;
        for (const auto& H : corpus) {
            // exact rational pairs
            for (int k = 0; k < 100; ++k) {
                std::vector<ExactComplex> p{rng.small_gaussian(4), rng.small_gaussian(4)};
                std::vector<ExactComplex> q{rng.small_gaussian(4), rng.small_gaussian(4)};
                if (!segre_symmetry_check(H, p, q)) {
                    o.detail = "exact symmetry failed";
                    return o;
                }
                ++exact_pairs;
            }
            // certified-interval pairs sampled on the hypersurface
            std::vector<CoordinateQuadruple> quads;
            for (int k = 0; k < H.n; ++k)
                quads.push_back({"_x" + std::to_string(k + 1), "_y" + std::to_string(k + 1),
                                 H.z_vars[static_cast<std::size_t>(k)],
                                 H.zbar_vars[static_cast<std::size_t>(k)]});
            MultiPoly phi_real = zzbar_to_real(H.phi, quads);
            auto pts = sample_on_hypersurface(phi_real, 12, mpq_class(1, 1000000000000), rng);
            for (std::size_t a = 0; a + 1 < pts.size(); a += 2) {
                // assemble complex boxes for both points
                auto to_boxes = [&](const SamplePoint& sp, bool conj) {
                    std::vector<ComplexBox> out;
                    for (int k = 0; k < H.n; ++k) {
                        RatInterval re = sp.coords[static_cast<std::size_t>(2 * k)];
                        RatInterval im = sp.coords[static_cast<std::size_t>(2 * k + 1)];
                        out.emplace_back(re, conj ? -im : im);
                    }
                    return out;
                };
                std::vector<ComplexBox> point(2 * static_cast<std::size_t>(H.n));
                auto eval_pairing = [&](const SamplePoint& x, const SamplePoint& ybar) {
                    auto zs = to_boxes(x, false);
                    auto ws = to_boxes(ybar, true);
                    std::vector<ComplexBox> full = zs;
                    full.insert(full.end(), ws.begin(), ws.end());
                    std::vector<std::string> block = H.z_vars;
                    for (const auto& w : H.w_vars) block.push_back(w);
                    return H.phiC.with_roster(block).evaluate_box(full);
                };
                ComplexBox ab = eval_pairing(pts[a], pts[a + 1]);
                ComplexBox ba = eval_pairing(pts[a + 1], pts[a]);
                // |ab| and |ba| agree exactly in truth; enclosures must meet at tol
                mpq_class lo1 = ab.mag_lower(), hi1 = ab.mag_upper();
                mpq_class lo2 = ba.mag_lower(), hi2 = ba.mag_upper();
                if (lo1 > hi2 + tol || lo2 > hi1 + tol) {
                    o.detail = "interval symmetry violated";
                    return o;
                }
                ++interval_pairs;
            }
        }
        int total = exact_pairs + interval_pairs;
        o.pass = total >= 500 && exact_pairs >= 400;
        o.detail = std::to_string(exact_pairs) + " exact + " + std::to_string(interval_pairs) +
                   " certified-interval pairs";
        if (total < 500) o.detail += " (insufficient)";
    } catch (const std::exception& e) {
        o.detail = std::string("exception: ") + e.what();
    }
    return o;
}

// ---------------------------------------------------------------------------
// criterion 8: Lion example

Outcome criterion_8() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        RealMatrix2 A{{{mpq_class(1), mpq_class(0)}, {mpq_class(0), mpq_class(-1)}}};
        auto res = lion_singular_lines(A);
        if (res.lines.size() != 1 || res.lines[0].lambda != -2 ||
            res.lines[0].line_x != mpq_class(1, 2)) {
            o.detail = "expected lambda = -2, line z1 = 1/2";
            return o;
        }
        Rng rng(20240008);
        double err = lion_brute_force_max_error(A, res, 1000, rng);
        double el = seconds_since(t0);
        o.pass = err < 1e-9 && el < 5.0;
        std::ostringstream os;
        os << "lambda -2, line 1/2, 1000 numeric pairs max err " << err << ", " << el << " s";
        o.detail = os.str();
    } catch (const std::exception& e) {
        o.detail = std::string("exception: ") + e.what();
    }
    return o;
}

// ---------------------------------------------------------------------------
// criterion 9: byte-identical reports across repeated CLI runs

Outcome criterion_9() {
    Outcome o;
    if (g_cli_path.empty()) {
        o.detail = "cli path not supplied";
        return o;
    }
    const std::vector<std::pair<std::string, int>> corpus{
        {"lebl.json", 0},      {"brunella.json", 0},         {"lion.json", 0},
        {"sphere.json", 2},    {"pencil_hyperplane.json", 0}, {"intersect_conics.json", 0},
    };
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    int checked = 0;
    for (const auto& [file, expected_code] : corpus) {
        for (const auto& fmt : {std::string("json"), std::string("text")}) {
            std::string out1 = "acceptance_run1." + fmt;
            std::string out2 = "acceptance_run2." + fmt;
            std::string cmd1 = g_cli_path + " " + g_corpus_dir + "/" + file + " --format " + fmt +
                               " --out " + out1 + " 2>/dev/null";
            std::string cmd2 = g_cli_path + " " + g_corpus_dir + "/" + file + " --format " + fmt +
                               " --out " + out2 + " 2>/dev/null";
            int c1 = std::system(cmd1.c_str());
            int c2 = std::system(cmd2.c_str());
            int code1 = WEXITSTATUS(c1), code2 = WEXITSTATUS(c2);
            if (code1 != expected_code || code2 != expected_code) {
                o.detail = file + ": exit code " + std::to_string(code1) + ", expected " +
                           std::to_string(expected_code);
                return o;
            }
            std::string b1 = slurp(out1), b2 = slurp(out2);
            if (b1.empty() || b1 != b2) {
                o.detail = file + " (" + fmt + "): reports differ between runs";
                return o;
            }
            ++checked;
        }
    }
    std::remove("acceptance_run1.json");
    std::remove("acceptance_run2.json");
    std::remove("acceptance_run1.text");
    std::remove("acceptance_run2.text");
    o.pass = true;
    o.detail = std::to_string(checked) + " (file, format) runs byte-identical with expected exits";
    return o;
}

} // namespace

int main(int argc, char** argv) {
    if (argc >= 2) g_cli_path = argv[1];
    if (argc >= 3) g_corpus_dir = argv[2];
    if (g_corpus_dir.empty()) g_corpus_dir = "corpus";

    auto sweep = run_sweep(200);
    report(1, "Bezout accounting over seeded coprime pairs", criterion_1(sweep));
    report(2, "dual-oracle multiplicities across the sweep", criterion_2(sweep));
    report(3, "pencil profile agreement, forward and contrapositive", criterion_3());
    Outcome ten;
    Outcome four = criterion_4_and_10(ten);
    report(4, "pencil 2-form identity and Euler contraction", four);
    report(5, "Brunella corpus: flatness, locus, web, NO_PENCIL", criterion_5());
    report(6, "Lebl corpus: degenerate locus {w1, w2}", criterion_6());
    report(7, "Segre symmetry across corpus hypersurfaces", criterion_7());
    report(8, "Lion example: singular line and numeric cross-check", criterion_8());
    report(9, "byte-identical reports for equal seeds", criterion_9());
    report(10, "cross-module invariance of pencil members", ten);

    if (g_failures > 0) {
        std::printf("%d criteria FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
