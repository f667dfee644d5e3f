#include "levikit/cli.hpp"

#include "levikit/intersection.hpp"
#include "levikit/leviflat.hpp"
#include "levikit/pencil.hpp"
#include "levikit/polygcd.hpp"
#include "levikit/puiseux.hpp"
#include "levikit/rng.hpp"
#include "levikit/segre.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace levikit {

using json = nlohmann::ordered_json;

const MultiPoly* AnalysisRequest::find_poly(const std::string& name) const {
    for (const auto& [n, p] : polynomials)
        if (n == name) return &p;
    return nullptr;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw input_error(where + ": " + what);
}

mpq_class parse_rational_field(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "exact rationals must be strings like \"p/q\"");
    auto q = parse_rational_or_decimal(j.get<std::string>());
    if (!q) fail(where, "malformed rational '" + j.get<std::string>() + "'");
    return *q;
}

ExactComplex parse_coeff(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "coefficient must be {\"re\": ..., \"im\": ...}");
    mpq_class re(0), im(0);
    if (j.contains("re")) re = parse_rational_field(j.at("re"), where + ".re");
    if (j.contains("im")) im = parse_rational_field(j.at("im"), where + ".im");
    return ExactComplex(re, im);
}

MultiPoly parse_poly(const json& j, const std::vector<std::string>& roster,
                     const std::string& where) {
    if (!j.is_array()) fail(where, "polynomial must be an array of terms");
    MultiPoly out(roster);
    for (std::size_t k = 0; k < j.size(); ++k) {
        const json& term = j[k];
        std::string tw = where + "[" + std::to_string(k) + "]";
        if (!term.is_object() || !term.contains("coeff") || !term.contains("exps"))
            fail(tw, "term must be {\"coeff\": {...}, \"exps\": [...]}");
        ExactComplex c = parse_coeff(term.at("coeff"), tw + ".coeff");
        const json& exps = term.at("exps");
        if (!exps.is_array() || exps.size() != roster.size())
            fail(tw + ".exps", "expected " + std::to_string(roster.size()) + " exponents");
        Exponents e;
        for (const auto& x : exps) {
            if (!x.is_number_unsigned()) fail(tw + ".exps", "exponents must be nonnegative integers");
            e.push_back(x.get<unsigned>());
        }
        out.add_term(e, c);
    }
    return out;
}

AnalysisRequest parse_request_json(const json& j) {
    AnalysisRequest req;
    if (!j.is_object()) fail("request", "must be a JSON object");
    if (!j.contains("schema") || !j.at("schema").is_number_integer() ||
        j.at("schema").get<int>() != 1)
        fail("schema", "unsupported or missing schema version (expected 1)");
    if (!j.contains("command") || !j.at("command").is_string())
        fail("command", "missing command");
    req.command = j.at("command").get<std::string>();
    static const std::vector<std::string> known{"intersect", "pencil",     "segre", "leviflat",
                                                "invariance", "lion",      "analyze"};
    if (std::find(known.begin(), known.end(), req.command) == known.end())
        fail("command", "unknown command '" + req.command + "'");

    if (j.contains("variables")) {
        for (const auto& v : j.at("variables")) {
            if (!v.is_string()) fail("variables", "variable names must be strings");
            req.variables.push_back(v.get<std::string>());
        }
        for (const auto& v : req.variables)
            if (v == "i" || v == "I") fail("variables", "variable name 'i' is reserved");
    } else if (req.command != "lion") {
        fail("variables", "missing variable roster");
    }

    auto parse_pairs = [&](const char* key, std::vector<std::pair<std::string, std::string>>& out) {
        if (!j.contains(key)) return;
        for (const auto& p : j.at(key)) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
                fail(key, "pairs must be [name, name]");
            out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
        }
    };
    parse_pairs("conjugate_pairs", req.conjugate_pairs);
    parse_pairs("real_pairs", req.real_pairs);

    if (j.contains("polynomials")) {
        if (!j.at("polynomials").is_object()) fail("polynomials", "must be an object");
        for (const auto& [name, val] : j.at("polynomials").items())
            req.polynomials.emplace_back(name,
                                         parse_poly(val, req.variables, "polynomials." + name));
    }
    if (j.contains("points")) {
        if (!j.at("points").is_object()) fail("points", "must be an object");
        for (const auto& [name, val] : j.at("points").items()) {
            if (!val.is_array()) fail("points." + name, "point must be an array of coordinates");
            std::vector<ExactComplex> coords;
            for (std::size_t k = 0; k < val.size(); ++k)
                coords.push_back(parse_coeff(val[k], "points." + name + "[" + std::to_string(k) + "]"));
            req.points.emplace_back(name, std::move(coords));
        }
    }
    if (j.contains("matrix")) {
        for (const auto& row : j.at("matrix")) {
            std::vector<mpq_class> r;
            for (const auto& e : row) r.push_back(parse_rational_field(e, "matrix"));
            req.matrix.push_back(std::move(r));
        }
    }
    if (j.contains("options")) {
        const json& o = j.at("options");
        if (o.contains("seed")) {
            if (!o.at("seed").is_number_unsigned()) fail("options.seed", "must be a nonnegative integer");
            req.options.seed = o.at("seed").get<unsigned long>();
        }
        if (o.contains("samples")) req.options.samples = o.at("samples").get<int>();
        if (o.contains("tol")) req.options.tol = parse_rational_field(o.at("tol"), "options.tol");
        if (o.contains("truncation")) req.options.truncation = o.at("truncation").get<int>();
        if (req.options.samples <= 0) fail("options.samples", "must be positive");
        if (req.options.tol <= 0) fail("options.tol", "must be positive");
    }
    return req;
}

} // namespace

std::vector<AnalysisRequest> parse_input(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t k = 0; k < std::min(text.size(), static_cast<std::size_t>(e.byte)); ++k)
            if (text[k] == '\n') ++line;
        throw input_error("JSON parse error at line " + std::to_string(line) + ": " + e.what());
    }
    std::vector<AnalysisRequest> out;
    if (doc.is_array()) {
        for (const auto& r : doc) out.push_back(parse_request_json(r));
    } else {
        out.push_back(parse_request_json(doc));
    }
    return out;
}

std::vector<AnalysisRequest> parse_input_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_input(ss.str());
}

// ---------------------------------------------------------------------------
// report assembly helpers

namespace {

std::string box_str(const ComplexBox& b) { return b.outward_round(64).str(); }
std::string iv_str(const RatInterval& v) { return v.outward_round(64).str(); }

json matrix_json(const Matrix3& m) {
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const auto& e : r) row.push_back(e.str());
        rows.push_back(row);
    }
    return rows;
}

json options_json(const AnalysisOptions& o) {
    json out;
    out["seed"] = o.seed;
    out["samples"] = o.samples;
    out["tol"] = rational_str(o.tol);
    out["truncation"] = o.truncation;
    return out;
}

json request_echo(const AnalysisRequest& req) {
    json out;
    out["command"] = req.command;
    json vars = json::array();
    for (const auto& v : req.variables) vars.push_back(v);
    out["variables"] = vars;
    json polys = json::object();
    for (const auto& [n, p] : req.polynomials) polys[n] = p.str();
    out["polynomials"] = polys;
    if (!req.points.empty()) {
        json pts;
        for (const auto& [n, q] : req.points) {
            json arr = json::array();
            for (const auto& c : q) arr.push_back(c.str());
            pts[n] = arr;
        }
        out["points"] = pts;
    }
    out["options"] = options_json(req.options);
    return out;
}

HomogeneousForm need_form(const AnalysisRequest& req, const std::string& name) {
    const MultiPoly* p = req.find_poly(name);
    if (!p) throw input_error("command '" + req.command + "' needs polynomial '" + name + "'");
    if (p->is_zero()) throw input_error("polynomial '" + name + "' is zero");
    return HomogeneousForm::from_poly(*p);
}

struct HypersurfaceInput {
    ComplexifiedHypersurface H;
    MultiPoly phi_real;                   // over real coordinates
    std::vector<CoordinateQuadruple> quads;
    bool from_real = false;
};

HypersurfaceInput hypersurface_from_request(const AnalysisRequest& req) {
    const MultiPoly* phi = req.find_poly("phi");
    if (!phi) throw input_error("command '" + req.command + "' needs polynomial 'phi'");
    HypersurfaceInput in;
    if (!req.real_pairs.empty()) {
        in.from_real = true;
        int k = 0;
        for (const auto& [x, y] : req.real_pairs) {
            ++k;
            in.quads.push_back({x, y, "z" + std::to_string(k), "z" + std::to_string(k) + "b"});
        }
        in.phi_real = *phi;
        MultiPoly zz = real_to_zzbar(*phi, in.quads);
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& q : in.quads) pairs.emplace_back(q.z, q.zbar);
        in.H = complexify(zz, pairs);
    } else {
        if (req.conjugate_pairs.empty())
            throw input_error("declare conjugate_pairs (z/zbar) or real_pairs (x/y)");
        in.H = complexify(*phi, req.conjugate_pairs);
        int k = 0;
        for (const auto& [z, zb] : req.conjugate_pairs) {
            ++k;
            in.quads.push_back({"x" + std::to_string(k), "y" + std::to_string(k), z, zb});
        }
        in.phi_real = zzbar_to_real(in.H.phi, in.quads);
    }
    return in;
}

json flatness_json(const FlatnessCertificate& fc) {
    json out;
    out["verdict"] = fc.verdict == FlatnessVerdict::ExactFlat
                         ? "EXACT_FLAT"
                         : fc.verdict == FlatnessVerdict::NumericallyFlat ? "NUMERICALLY_FLAT"
                                                                          : "NOT_FLAT";
    out["tier"] = fc.verdict == FlatnessVerdict::ExactFlat ? "exact" : "numeric";
    if (!fc.cofactors.empty()) {
        json cofs = json::array();
        for (const auto& c : fc.cofactors) cofs.push_back(c.str());
        out["cofactors"] = cofs;
    }
    if (fc.samples_used > 0) out["samples_used"] = fc.samples_used;
    if (fc.witness) {
        json w = json::array();
        for (const auto& c : fc.witness->coords) w.push_back(iv_str(c));
        out["witness_point"] = w;
        out["witness_value"] = iv_str(*fc.witness_value);
    }
    out["tol"] = rational_str(fc.tol);
    return out;
}

json tangency_json(const TangencyReport& tr) {
    json out;
    out["verdict"] = tr.verdict == TangencyVerdict::Invariant ? "INVARIANT" : "NOT_INVARIANT";
    out["tier"] = tr.tier == CertTier::Exact ? "exact" : "numeric";
    out["tangency"] = tr.tangency.str();
    if (tr.cofactor) out["cofactor"] = tr.cofactor->str();
    if (tr.samples_used > 0) out["samples_used"] = tr.samples_used;
    if (tr.witness) {
        json w = json::array();
        for (const auto& c : tr.witness->coords) w.push_back(iv_str(c));
        out["witness_point"] = w;
        out["witness_value"] = iv_str(*tr.witness_value);
    }
    return out;
}

// ---------------------------------------------------------------------------
// per-command runners

Report run_intersect(const AnalysisRequest& req) {
    Report rep;
    rep.command = req.command;
    HomogeneousForm F = need_form(req, "F");
    HomogeneousForm G = need_form(req, "G");
    Rng rng(req.options.seed);
    IntersectionOptions opts;
    opts.isolate_boxes = true;
    IntersectionResult res = intersection_points(F, G, rng, opts);

    json recs = json::array();
    for (const auto& r : res.records) {
        json e;
        e["multiplicity"] = r.multiplicity;
        if (r.exact) {
            e["point"] = r.exact->str();
        } else {
            e["eliminant"] = r.eliminant->str("x");
            e["conjugate_index"] = r.conjugate_index;
            if (r.x_box) e["x_box"] = box_str(*r.x_box);
            if (r.y_box) e["y_box"] = box_str(*r.y_box);
            if (r.hom_box) {
                json hb = json::array();
                for (const auto& b : *r.hom_box) hb.push_back(box_str(b));
                e["homogeneous_box"] = hb;
            }
            e["transverse_certified"] = r.transverse_certified;
        }
        recs.push_back(e);
    }
    rep.verdicts["total"] = res.total;
    rep.verdicts["records"] = recs;
    rep.provenance = request_echo(req);
    rep.provenance["shear"] = matrix_json(res.shear);
    rep.provenance["check_shear"] = matrix_json(res.check_shear);
    return rep;
}

Report run_pencil(const AnalysisRequest& req) {
    Report rep;
    rep.command = req.command;
    if (req.polynomials.size() < 2)
        throw input_error("pencil detection needs at least two polynomials");
    std::vector<HomogeneousForm> family;
    json names = json::array();
    for (const auto& [n, p] : req.polynomials) {
        family.push_back(HomogeneousForm::from_poly(p));
        names.push_back(n);
    }
    PencilDetection det = pencil_from_family(family);
    rep.verdicts["family"] = names;
    rep.verdicts["pencil_found"] = det.found();
    if (!det.found()) {
        json w = json::array();
        for (auto k : *det.witness) w.push_back(names[k].get<std::string>());
        rep.verdicts["witness"] = w;
        rep.provenance = request_echo(req);
        return rep;
    }
    rep.verdicts["generators"] = {det.pencil->F().poly().str(), det.pencil->G().poly().str()};
    json coords = json::array();
    for (const auto& c : det.coords) coords.push_back(c.str());
    rep.verdicts["coordinates"] = coords;
    rep.verdicts["first_integral"] =
        "(" + det.pencil->F().poly().str() + ") / (" + det.pencil->G().poly().str() + ")";

    FoliationForm ff = pencil_foliation_form(*det.pencil);
    json fj = json::array();
    for (const auto& a : ff.coefficients) fj.push_back(a.str());
    rep.verdicts["foliation_form"] = fj;
    rep.verdicts["euler_contraction_zero"] = ff.euler_contraction().is_zero();
    rep.verdicts["integrable"] = ff.integrability_obstruction().is_zero();

    json inv = json::array();
    for (std::size_t k = 0; k < family.size(); ++k) {
        auto cert = verify_level_invariance(*det.pencil, det.coords[k].alpha, det.coords[k].beta);
        json e;
        e["member"] = names[k].get<std::string>();
        e["verified"] = cert.verified;
        e["cofactor"] = cert.cofactor.str();
        inv.push_back(e);
    }
    rep.verdicts["level_invariance"] = inv;
    rep.provenance = request_echo(req);
    return rep;
}

Report run_segre(const AnalysisRequest& req) {
    Report rep;
    rep.command = req.command;
    HypersurfaceInput in = hypersurface_from_request(req);
    rep.verdicts["reality"] = "OK";
    rep.verdicts["complexification"] = in.H.phiC.str();

    json sys = json::array();
    for (const auto& s : degenerate_locus_system(in.H)) sys.push_back(s.str());
    rep.verdicts["degenerate_locus_system"] = sys;

    json vars = json::array();
    for (const auto& [name, q] : req.points) {
        if (static_cast<int>(q.size()) != in.H.n)
            throw input_error("point '" + name + "' has wrong arity");
        SegreVariety sv = segre_variety(in.H, q);
        json e;
        e["point"] = name;
        e["defining"] = sv.defining.str();
        e["degenerate"] = sv.degenerate;
        vars.push_back(e);
    }
    rep.verdicts["segre_varieties"] = vars;

    json sym = json::array();
    for (std::size_t a = 0; a < req.points.size(); ++a) {
        for (std::size_t b = a + 1; b < req.points.size(); ++b) {
            json e;
            e["pair"] = {req.points[a].first, req.points[b].first};
            e["symmetric"] = segre_symmetry_check(in.H, req.points[a].second, req.points[b].second);
            sym.push_back(e);
        }
    }
    rep.verdicts["symmetry_checks"] = sym;
    rep.provenance = request_echo(req);
    return rep;
}

Report run_leviflat(const AnalysisRequest& req) {
    Report rep;
    rep.command = req.command;
    HypersurfaceInput in = hypersurface_from_request(req);
    Rng rng(req.options.seed);
    rep.verdicts["reality"] = "OK";

    LeviMatrix lm = levi_matrix(in.H);
    json entries = json::array();
    for (int i = 0; i < lm.n; ++i) {
        json row = json::array();
        for (int j = 0; j < lm.n; ++j) row.push_back(lm.at(i, j).str());
        entries.push_back(row);
    }
    rep.verdicts["levi_matrix"] = entries;

    FlatnessCertificate fc = flatness_certificate(in.H, req.options.samples, req.options.tol, rng);
    rep.verdicts["flatness"] = flatness_json(fc);

    SingularLocusSystem sls = singular_locus_system(in.phi_real);
    json sj = json::array();
    for (const auto& s : sls.system) sj.push_back(s.str());
    rep.verdicts["singular_locus_system"] = sj;
    rep.verdicts["non_reduced"] = sls.non_reduced;
    rep.provenance = request_echo(req);
    rep.provenance["seed_used"] = req.options.seed;
    return rep;
}

Report run_invariance(const AnalysisRequest& req) {
    Report rep;
    rep.command = req.command;
    const MultiPoly* P = req.find_poly("P");
    if (!P) throw input_error("invariance needs polynomial 'P'");
    const MultiPoly* a = req.find_poly("a");
    const MultiPoly* b = req.find_poly("b");
    TangencyReport tr;
    if (a || b) {
        MultiPoly av = a ? *a : MultiPoly::zero(P->variables());
        MultiPoly bv = b ? *b : MultiPoly::zero(P->variables());
        tr = curve_invariance(av, bv, *P);
    } else {
        const MultiPoly* A0 = req.find_poly("A0");
        const MultiPoly* A1 = req.find_poly("A1");
        const MultiPoly* A2 = req.find_poly("A2");
        if (!A0 || !A1 || !A2)
            throw input_error("invariance needs 'a'/'b' (affine) or 'A0','A1','A2' (projective)");
        FoliationForm ff;
        ff.vars = req.variables;
        ff.coefficients = {A0->with_roster(req.variables), A1->with_roster(req.variables),
                           A2->with_roster(req.variables)};
        ff.degree = 0;
        for (const auto& c : ff.coefficients)
            if (!c.is_zero()) ff.degree = c.degree();
        tr = curve_invariance(ff, HomogeneousForm::from_poly(*P));
    }
    rep.verdicts["invariance"] = tangency_json(tr);
    rep.provenance = request_echo(req);
    return rep;
}

Report run_lion(const AnalysisRequest& req) {
    Report rep;
    rep.command = req.command;
    if (req.matrix.size() != 2 || req.matrix[0].size() != 2 || req.matrix[1].size() != 2)
        throw input_error("lion needs a 2x2 rational matrix");
    RealMatrix2 A{{{req.matrix[0][0], req.matrix[0][1]}, {req.matrix[1][0], req.matrix[1][1]}}};
    LionResult res = lion_singular_lines(A);
    json lines = json::array();
    for (const auto& l : res.lines) {
        json e;
        if (l.rational) {
            e["lambda"] = rational_str(l.lambda);
            e["line_z1"] = rational_str(l.line_x);
        } else {
            e["lambda_box"] = iv_str(l.lambda_box);
            e["line_z1_box"] = iv_str(l.line_x_box);
        }
        e["eigenvector"] = {iv_str(l.eigenvector[0]), iv_str(l.eigenvector[1])};
        lines.push_back(e);
    }
    rep.verdicts["singular_lines"] = lines;
    rep.verdicts["zero_eigenvalue_parallel_class"] = res.has_zero_eigenvalue;

    Rng rng(req.options.seed);
    int trials = 1000;
    double err = lion_brute_force_max_error(A, res, trials, rng);
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << err;
    rep.verdicts["brute_force"] = {{"trials", trials}, {"max_error", os.str()}};
    rep.provenance = request_echo(req);
    return rep;
}

// sampling rational points for the analyze pipeline when none are supplied
std::vector<std::vector<ExactComplex>> probe_points(const HypersurfaceInput& in, int count,
                                                    Rng& rng) {
    const auto& vars = in.phi_real.variables();
    std::vector<std::vector<ExactComplex>> out;
    std::vector<std::vector<mpq_class>> seen;
    auto try_point = [&](std::vector<mpq_class> coords) {
        // on-surface check
        std::vector<ExactComplex> cc;
        for (const auto& v : coords) cc.push_back(ExactComplex(v));
        if (!in.phi_real.evaluate(cc).is_zero()) return;
        // regular point: some first partial nonzero
        bool regular = false;
        for (const auto& v : vars)
            if (!in.phi_real.differentiate(v).evaluate(cc).is_zero()) {
                regular = true;
                break;
            }
        if (!regular) return;
        for (const auto& s : seen)
            if (s == coords) return;
        seen.push_back(coords);
        std::vector<ExactComplex> q;
        for (std::size_t k = 0; k + 1 < coords.size(); k += 2)
            q.emplace_back(coords[k], coords[k + 1]);
        out.push_back(std::move(q));
    };

    for (int iter = 0; iter < 4000 && static_cast<int>(out.size()) < count; ++iter) {
        std::size_t vi = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(vars.size()) - 1));
        const std::string& v = vars[vi];
        int d = in.phi_real.degree_in(v);
        if (d < 1 || d > 2) continue;
        std::vector<mpq_class> assign(vars.size());
        std::vector<ExactComplex> point(vars.size());
        for (std::size_t k = 0; k < vars.size(); ++k) {
            assign[k] = rng.small_rational(3, 2);
            point[k] = ExactComplex(assign[k]);
        }
        auto coefs = in.phi_real.coefficients_in(v);
        auto at = [&](const MultiPoly& c) {
            return c.evaluate(point).re(); // real polynomial
        };
        if (d == 1) {
            mpq_class c1 = at(coefs[1]);
            if (c1 == 0) continue;
            assign[vi] = -at(coefs[0]) / c1;
            try_point(assign);
        } else {
            mpq_class a2 = at(coefs[2]), a1 = at(coefs[1]), a0 = at(coefs[0]);
            if (a2 == 0) continue;
            mpq_class disc = a1 * a1 - 4 * a2 * a0;
            auto s = exact_sqrt(disc);
            if (!s) continue;
            assign[vi] = (-a1 + *s) / (2 * a2);
            try_point(assign);
            if (*s != 0 && static_cast<int>(out.size()) < count) {
                assign[vi] = (-a1 - *s) / (2 * a2);
                try_point(assign);
            }
        }
    }
    return out;
}

Report run_analyze(const AnalysisRequest& req) {
    Report rep;
    rep.command = req.command;
    rep.provenance = request_echo(req);
    Rng rng(req.options.seed);

    // stage 1: reality
    HypersurfaceInput in = hypersurface_from_request(req);
    rep.verdicts["reality"] = "OK";

    // stage 2: flatness
    FlatnessCertificate fc = flatness_certificate(in.H, req.options.samples, req.options.tol, rng);
    rep.verdicts["flatness"] = flatness_json(fc);
    if (fc.verdict == FlatnessVerdict::NotFlat) {
        rep.verdicts["halted_at"] = "flatness";
        rep.mathematical_rejection = true;
        return rep;
    }

    // stage 3: singular locus
    SingularLocusSystem sls = singular_locus_system(in.phi_real);
    json sj = json::array();
    for (const auto& s : sls.system) sj.push_back(s.str());
    rep.verdicts["singular_locus_system"] = sj;
    rep.verdicts["non_reduced"] = sls.non_reduced;
    if (sls.non_reduced) {
        rep.verdicts["halted_at"] = "singular-locus";
        rep.mathematical_rejection = true;
        return rep;
    }

    // stage 4: Segre degeneracy system
    json dls = json::array();
    for (const auto& s : degenerate_locus_system(in.H)) dls.push_back(s.str());
    rep.verdicts["degenerate_locus_system"] = dls;

    // stage 5: Segre varieties at regular sample points
    std::vector<std::vector<ExactComplex>> pts;
    for (const auto& [name, q] : req.points) pts.push_back(q);
    if (pts.empty()) pts = probe_points(in, 6, rng);
    if (pts.size() < 2)
        throw math_error("analyze: could not find enough rational points on the hypersurface; "
                         "supply sample points");
    json ptj = json::array();
    for (const auto& q : pts) {
        json e = json::array();
        for (const auto& c : q) e.push_back(c.str());
        ptj.push_back(e);
    }
    rep.verdicts["sample_points"] = ptj;

    std::vector<MultiPoly> segres;
    int degenerate_count = 0;
    for (const auto& q : pts) {
        SegreVariety sv = segre_variety(in.H, q);
        if (sv.degenerate) {
            ++degenerate_count;
            continue;
        }
        MultiPoly norm = sv.defining.scaled(sv.defining.leading_coefficient().inverse());
        bool dup = false;
        for (const auto& s : segres)
            if (s == norm) {
                dup = true;
                break;
            }
        if (!dup) segres.push_back(std::move(norm));
    }
    rep.verdicts["segre_family"] = {{"distinct", segres.size()},
                                    {"degenerate_points", degenerate_count}};

    // uniform degree subfamily (largest group)
    std::map<int, std::vector<MultiPoly>> by_degree;
    for (const auto& s : segres) by_degree[s.degree()].push_back(s);
    std::vector<MultiPoly> fam;
    for (const auto& [d, v] : by_degree)
        if (v.size() >= fam.size()) fam = v;
    if (fam.size() < 2)
        throw math_error("analyze: fewer than two independent Segre varieties; add sample points");

    // stage 6: pencil detection over homogenized Segre varieties
    std::string hvar = "z0";
    for (const auto& v : fam[0].variables())
        if (v == hvar) hvar = "u0";
    int d = fam[0].degree();
    std::vector<HomogeneousForm> forms;
    for (const auto& s : fam) forms.push_back(homogenize(s, hvar, d));
    PencilDetection det = pencil_from_family(forms);
    rep.verdicts["pencil_found"] = det.found();
    if (!det.found()) {
        json w = json::array();
        for (auto k : *det.witness) w.push_back(static_cast<int>(k));
        rep.verdicts["witness"] = w;
        json wp = json::array();
        for (auto k : *det.witness) wp.push_back(forms[k].poly().str());
        rep.verdicts["witness_polynomials"] = wp;
        rep.verdicts["conclusion"] = "NO_PENCIL";
        return rep;
    }

    // stage 7: first integral and foliation form
    rep.verdicts["first_integral"] =
        "(" + det.pencil->F().poly().str() + ") / (" + det.pencil->G().poly().str() + ")";
    FoliationForm ff = pencil_foliation_form(*det.pencil);
    json fj = json::array();
    for (const auto& a : ff.coefficients) fj.push_back(a.str());
    rep.verdicts["foliation_form"] = fj;

    // stage 8: tangency of the hypersurface to the pencil foliation
    MultiPoly a = ff.coefficients[1].substitute(hvar, ExactComplex(1));
    MultiPoly b = ff.coefficients[2].substitute(hvar, ExactComplex(1));
    std::vector<std::string> zroster = in.H.z_vars;
    TangencyReport tr = hypersurface_tangency(a.without_unused(zroster).with_roster(zroster),
                                              b.without_unused(zroster).with_roster(zroster), in.H,
                                              req.options.samples, req.options.tol, rng);
    rep.verdicts["tangency"] = tangency_json(tr);
    rep.verdicts["conclusion"] = tr.verdict == TangencyVerdict::Invariant
                                     ? "PENCIL_WITH_INVARIANT_HYPERSURFACE"
                                     : "PENCIL_WITHOUT_TANGENCY";
    return rep;
}

} // namespace

Report run_request(const AnalysisRequest& req) {
    if (req.command == "intersect") return run_intersect(req);
    if (req.command == "pencil") return run_pencil(req);
    if (req.command == "segre") return run_segre(req);
    if (req.command == "leviflat") return run_leviflat(req);
    if (req.command == "invariance") return run_invariance(req);
    if (req.command == "lion") return run_lion(req);
    if (req.command == "analyze") return run_analyze(req);
    throw input_error("unknown command '" + req.command + "'");
}

// ---------------------------------------------------------------------------
// serialization

namespace {

void render_text(const json& j, std::ostream& os, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || v.is_array()) {
                os << pad << k << ":\n";
                render_text(v, os, indent + 1);
            } else {
                os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                   << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << pad << "-\n";
                render_text(v, os, indent + 1);
            } else {
                os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else {
        os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

json report_json(const Report& r) {
    json out;
    out["schema"] = 1;
    out["command"] = r.command;
    out["rejected"] = r.mathematical_rejection;
    out["verdicts"] = r.verdicts;
    out["provenance"] = r.provenance;
    return out;
}

} // namespace

std::string emit_report(const Report& report, const std::string& format) {
    if (format == "json") return report_json(report).dump(2) + "\n";
    if (format == "text") {
        std::ostringstream os;
        os << "== " << report.command
           << (report.mathematical_rejection ? " (rejected)" : "") << " ==\n";
        render_text(report.verdicts, os, 0);
        os << "provenance:\n";
        render_text(report.provenance, os, 1);
        return os.str();
    }
    throw input_error("unknown report format '" + format + "'");
}

std::string emit_reports(const std::vector<Report>& reports, const std::string& format) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_json(r));
        return (reports.size() == 1 ? report_json(reports[0]).dump(2) : arr.dump(2)) + "\n";
    }
    std::ostringstream os;
    for (const auto& r : reports) os << emit_report(r, format);
    return os.str();
}

} // namespace levikit
