#include "levikit/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace levikit {

MultiPoly MultiPoly::constant(std::vector<std::string> variables, ExactComplex c) {
    MultiPoly p(std::move(variables));
    if (!c.is_zero()) p.terms_.emplace(Exponents(p.vars_.size(), 0), std::move(c));
    return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> variables, const std::string& name) {
    MultiPoly p(std::move(variables));
    Exponents e(p.vars_.size(), 0);
    int idx = p.var_index(name);
    if (idx < 0) throw input_error("unknown variable '" + name + "'");
    e[static_cast<std::size_t>(idx)] = 1;
    p.terms_.emplace(std::move(e), ExactComplex(1));
    return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> variables, Exponents exps, ExactComplex c) {
    MultiPoly p(std::move(variables));
    if (exps.size() != p.vars_.size()) throw input_error("monomial exponent arity mismatch");
    if (!c.is_zero()) p.terms_.emplace(std::move(exps), std::move(c));
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && exponents_degree(terms_.begin()->first) == 0);
}

std::optional<int> MultiPoly::total_degree() const {
    if (terms_.empty()) return std::nullopt;
    return static_cast<int>(exponents_degree(terms_.begin()->first));
}

int MultiPoly::degree() const {
    auto d = total_degree();
    if (!d) throw math_error("degree of the zero polynomial requested");
    return *d;
}

int MultiPoly::degree_in(const std::string& var) const {
    int idx = var_index(var);
    if (idx < 0) throw input_error("unknown variable '" + var + "'");
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[static_cast<std::size_t>(idx)]));
    return d;
}

int MultiPoly::var_index(const std::string& name) const {
    for (std::size_t k = 0; k < vars_.size(); ++k)
        if (vars_[k] == name) return static_cast<int>(k);
    return -1;
}

bool MultiPoly::depends_on(const std::string& var) const {
    int idx = var_index(var);
    if (idx < 0) return false;
    for (const auto& [e, c] : terms_)
        if (e[static_cast<std::size_t>(idx)] > 0) return true;
    return false;
}

const ExactComplex& MultiPoly::leading_coefficient() const {
    if (terms_.empty()) throw math_error("leading term of the zero polynomial requested");
    return terms_.begin()->second;
}

const Exponents& MultiPoly::leading_exponents() const {
    if (terms_.empty()) throw math_error("leading term of the zero polynomial requested");
    return terms_.begin()->first;
}

int MultiPoly::order_at_origin() const {
    if (terms_.empty()) throw math_error("order at origin of the zero polynomial requested");
    return static_cast<int>(exponents_degree(terms_.rbegin()->first));
}

void MultiPoly::add_term(const Exponents& e, const ExactComplex& c) {
    if (e.size() != vars_.size()) throw input_error("term exponent arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

std::vector<std::string> roster_union(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const auto& v : b)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}

MultiPoly MultiPoly::with_roster(std::vector<std::string> roster) const {
    std::vector<int> map(vars_.size(), -1);
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = std::find(roster.begin(), roster.end(), vars_[k]);
        if (it != roster.end()) map[k] = static_cast<int>(it - roster.begin());
    }
    MultiPoly out(std::move(roster));
    for (const auto& [e, c] : terms_) {
        Exponents ne(out.vars_.size(), 0);
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (map[k] < 0)
                throw input_error("variable '" + vars_[k] + "' missing from target roster");
            ne[static_cast<std::size_t>(map[k])] = e[k];
        }
        out.add_term(ne, c);
    }
    return out;
}

MultiPoly MultiPoly::without_unused(const std::vector<std::string>& keep_always) const {
    std::vector<std::string> used;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        bool keep = std::find(keep_always.begin(), keep_always.end(), vars_[k]) != keep_always.end();
        if (!keep)
            for (const auto& [e, c] : terms_)
                if (e[k] > 0) {
                    keep = true;
                    break;
                }
        if (keep) used.push_back(vars_[k]);
    }
    return with_roster(std::move(used));
}

MultiPoly MultiPoly::renamed(const std::vector<std::pair<std::string, std::string>>& renames) const {
    std::vector<std::string> roster = vars_;
    for (auto& v : roster)
        for (const auto& [from, to] : renames)
            if (v == from) {
                v = to;
                break;
            }
    MultiPoly out(std::move(roster));
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c);
    return out;
}

std::pair<MultiPoly, MultiPoly> align_rosters(const MultiPoly& a, const MultiPoly& b) {
    if (a.variables() == b.variables()) return {a, b};
    auto roster = roster_union(a.variables(), b.variables());
    return {a.with_roster(roster), b.with_roster(roster)};
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    auto [x, y] = align_rosters(a, b);
    MultiPoly out = x;
    for (const auto& [e, c] : y.terms_) out.add_term(e, c);
    return out;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    auto [x, y] = align_rosters(a, b);
    MultiPoly out = x;
    for (const auto& [e, c] : y.terms_) out.add_term(e, -c);
    return out;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    auto [x, y] = align_rosters(a, b);
    MultiPoly out(x.variables());
    Exponents e(out.variables().size());
    for (const auto& [ea, ca] : x.terms_) {
        for (const auto& [eb, cb] : y.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

MultiPoly MultiPoly::scaled(const ExactComplex& c) const {
    MultiPoly out(vars_);
    if (c.is_zero()) return out;
    for (const auto& [e, k] : terms_) out.terms_.emplace(e, k * c);
    return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    auto [x, y] = align_rosters(a, b);
    return x.terms_ == y.terms_;
}

namespace {

// Sparse Horner over the variable at `idx`: group terms by that exponent,
// recurse on the rest.
template <typename Value, typename Coef>
Value eval_group(const std::vector<std::pair<const Exponents*, const Coef*>>& terms,
                 std::size_t idx, std::size_t nvars, std::span<const Value> point,
                 const Value& zero, const Value& one) {
    if (terms.empty()) return zero;
    if (idx == nvars) {
        Value acc = zero;
        for (const auto& [e, c] : terms) acc = acc + Value(*c);
        return acc;
    }
    // bucket by exponent of var idx, descending
    std::map<unsigned, std::vector<std::pair<const Exponents*, const Coef*>>, std::greater<>> buckets;
    for (const auto& t : terms) buckets[(*t.first)[idx]].push_back(t);
    Value acc = zero;
    unsigned prev = 0;
    bool first = true;
    for (const auto& [exp, bucket] : buckets) {
        if (first) {
            acc = eval_group(bucket, idx + 1, nvars, point, zero, one);
            prev = exp;
            first = false;
            continue;
        }
        for (unsigned k = exp; k < prev; ++k) acc = acc * point[idx];
        acc = acc + eval_group(bucket, idx + 1, nvars, point, zero, one);
        prev = exp;
    }
    for (unsigned k = 0; k < prev; ++k) acc = acc * point[idx];
    return acc;
}

} // namespace

ExactComplex MultiPoly::evaluate(std::span<const ExactComplex> point) const {
    if (point.size() != vars_.size())
        throw input_error("evaluation arity mismatch: " + std::to_string(point.size()) +
                          " values for " + std::to_string(vars_.size()) + " variables");
    std::vector<std::pair<const Exponents*, const ExactComplex*>> terms;
    terms.reserve(terms_.size());
    for (const auto& [e, c] : terms_) terms.emplace_back(&e, &c);
    return eval_group<ExactComplex, ExactComplex>(terms, 0, vars_.size(), point, ExactComplex(0),
                                                  ExactComplex(1));
}

ComplexBox MultiPoly::evaluate_box(std::span<const ComplexBox> point) const {
    if (point.size() != vars_.size()) throw input_error("evaluation arity mismatch");
    std::vector<std::pair<const Exponents*, const ExactComplex*>> terms;
    terms.reserve(terms_.size());
    for (const auto& [e, c] : terms_) terms.emplace_back(&e, &c);
    ComplexBox zero{RatInterval(mpq_class(0)), RatInterval(mpq_class(0))};
    ComplexBox one{RatInterval(mpq_class(1)), RatInterval(mpq_class(0))};
    return eval_group<ComplexBox, ExactComplex>(terms, 0, vars_.size(), point, zero, one);
}

MultiPoly MultiPoly::differentiate(const std::string& var) const {
    int idx = var_index(var);
    if (idx < 0) throw input_error("unknown variable '" + var + "'");
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        unsigned k = e[static_cast<std::size_t>(idx)];
        if (k == 0) continue;
        Exponents ne = e;
        ne[static_cast<std::size_t>(idx)] = k - 1;
        out.add_term(ne, c * ExactComplex(static_cast<long>(k)));
    }
    return out;
}

MultiPoly MultiPoly::substitute(const std::string& var, const MultiPoly& replacement) const {
    int idx = var_index(var);
    if (idx < 0) throw input_error("unknown variable '" + var + "'");
    auto roster = roster_union(vars_, replacement.variables());
    MultiPoly rep = replacement.with_roster(roster);
    MultiPoly out(roster);

    // cache powers of the replacement
    std::vector<MultiPoly> powers{MultiPoly::constant(roster, ExactComplex(1))};
    for (const auto& [e, c] : terms_) {
        unsigned k = e[static_cast<std::size_t>(idx)];
        while (powers.size() <= k) powers.push_back(powers.back() * rep);
        Exponents ne(roster.size(), 0);
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (static_cast<int>(j) == idx) continue;
            if (e[j] == 0) continue;
            auto it = std::find(roster.begin(), roster.end(), vars_[j]);
            ne[static_cast<std::size_t>(it - roster.begin())] = e[j];
        }
        out = out + MultiPoly::monomial(roster, ne, c) * powers[k];
    }
    return out;
}

MultiPoly MultiPoly::substitute(const std::string& var, const ExactComplex& value) const {
    int idx = var_index(var);
    if (idx < 0) throw input_error("unknown variable '" + var + "'");
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        unsigned k = e[static_cast<std::size_t>(idx)];
        ExactComplex coef = c;
        for (unsigned j = 0; j < k; ++j) coef *= value;
        Exponents ne = e;
        ne[static_cast<std::size_t>(idx)] = 0;
        out.add_term(ne, coef);
    }
    return out;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(const std::string& var) const {
    int idx = var_index(var);
    if (idx < 0) throw input_error("unknown variable '" + var + "'");
    int d = degree_in(var);
    std::vector<MultiPoly> out(static_cast<std::size_t>(d) + 1, MultiPoly(vars_));
    for (const auto& [e, c] : terms_) {
        unsigned k = e[static_cast<std::size_t>(idx)];
        Exponents ne = e;
        ne[static_cast<std::size_t>(idx)] = 0;
        out[k].add_term(ne, c);
    }
    return out;
}

MultiPoly MultiPoly::conjugate_coefficients() const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.conj());
    return out;
}

std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g) {
    if (g.is_zero()) throw math_error("division by the zero polynomial");
    auto [r0, d] = align_rosters(f, g);
    MultiPoly r = std::move(r0);
    MultiPoly q(r.variables());
    const Exponents& ge = d.leading_exponents();
    const ExactComplex& gc = d.leading_coefficient();
    while (!r.is_zero()) {
        const Exponents& re = r.leading_exponents();
        Exponents me(re.size());
        for (std::size_t k = 0; k < re.size(); ++k) {
            if (re[k] < ge[k]) return std::nullopt;
            me[k] = re[k] - ge[k];
        }
        ExactComplex mc = r.leading_coefficient() / gc;
        MultiPoly mono = MultiPoly::monomial(r.variables(), me, mc);
        q = q + mono;
        r = r - mono * d;
    }
    return q;
}

MultiPoly conjugate_swap(const MultiPoly& f) {
    std::size_t n = f.variables().size();
    if (n % 2 != 0) throw input_error("conjugate_swap needs an even roster (z-block and w-block)");
    std::size_t h = n / 2;
    MultiPoly out(f.variables());
    for (const auto& [e, c] : f.terms()) {
        Exponents ne(n);
        for (std::size_t k = 0; k < h; ++k) {
            ne[k] = e[k + h];
            ne[k + h] = e[k];
        }
        out.add_term(ne, c.conj());
    }
    return out;
}

HomogeneousForm::HomogeneousForm(MultiPoly poly, int degree) : poly_(std::move(poly)), degree_(degree) {
    if (degree_ < 0) throw math_error("negative degree for a homogeneous form");
    for (const auto& [e, c] : poly_.terms())
        if (static_cast<int>(exponents_degree(e)) != degree_)
            throw math_error("polynomial is not homogeneous of degree " + std::to_string(degree_));
}

HomogeneousForm HomogeneousForm::from_poly(MultiPoly poly) {
    if (poly.is_zero()) throw math_error("cannot infer the degree of the zero form");
    int d = poly.degree();
    return HomogeneousForm(std::move(poly), d);
}

HomogeneousForm homogenize(const MultiPoly& f, const std::string& new_var, int degree) {
    if (f.var_index(new_var) >= 0)
        throw input_error("homogenization variable '" + new_var + "' already in roster");
    std::vector<std::string> roster{new_var};
    roster.insert(roster.end(), f.variables().begin(), f.variables().end());
    MultiPoly out(roster);
    if (f.is_zero()) return HomogeneousForm(std::move(out), degree);
    if (degree < f.degree())
        throw math_error("homogenization degree " + std::to_string(degree) +
                         " below polynomial degree " + std::to_string(f.degree()));
    for (const auto& [e, c] : f.terms()) {
        Exponents ne(roster.size());
        ne[0] = static_cast<unsigned>(degree) - exponents_degree(e);
        for (std::size_t k = 0; k < e.size(); ++k) ne[k + 1] = e[k];
        out.add_term(ne, c);
    }
    return HomogeneousForm(std::move(out), degree);
}

MultiPoly dehomogenize(const MultiPoly& F, const std::string& var) {
    if (F.var_index(var) < 0) throw input_error("unknown variable '" + var + "'");
    MultiPoly sub = F.substitute(var, ExactComplex(1));
    std::vector<std::string> roster;
    for (const auto& v : F.variables())
        if (v != var) roster.push_back(v);
    return sub.with_roster(roster);
}

// ---------------------------------------------------------------------------
// canonical printing and parsing

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string mon;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!mon.empty()) mon += ' ';
            mon += vars_[k];
            if (e[k] > 1) mon += '^' + std::to_string(e[k]);
        }
        bool mixed = !c.is_real() && c.re() != 0;
        bool negative = false;
        ExactComplex mag = c;
        if (!mixed) {
            if (c.is_real() ? c.re() < 0 : c.im() < 0) {
                negative = true;
                mag = -c;
            }
        }
        if (first) {
            if (negative) os << '-';
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        std::string coef;
        if (mixed) {
            coef = "(" + mag.str() + ")";
        } else if (mag.is_real()) {
            if (!(mag.re() == 1 && !mon.empty())) coef = rational_str(mag.re());
        } else {
            if (mag.im() != 1)
                coef = rational_str(mag.im()) + " i";
            else
                coef = "i";
        }
        if (!coef.empty() && !mon.empty())
            os << coef << ' ' << mon;
        else if (!coef.empty())
            os << coef;
        else
            os << mon;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& f) { return os << f.str(); }

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
    std::string text;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < s.size()) {
        char c = s[k];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++k;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (k < s.size() && (std::isdigit(static_cast<unsigned char>(s[k])) || s[k] == '/')) {
                // a '/' is part of the rational only if followed by a digit
                if (s[k] == '/' && !(k + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[k + 1]))))
                    break;
                num += s[k++];
            }
            out.push_back({Token::Number, num});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (k < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '_'))
                id += s[k++];
            out.push_back({Token::Ident, id});
            continue;
        }
        switch (c) {
            case '+': out.push_back({Token::Plus, "+"}); break;
            case '-': out.push_back({Token::Minus, "-"}); break;
            case '*': out.push_back({Token::Star, "*"}); break;
            case '^': out.push_back({Token::Caret, "^"}); break;
            case '(': out.push_back({Token::LParen, "("}); break;
            case ')': out.push_back({Token::RParen, ")"}); break;
            default: throw input_error(std::string("unexpected character '") + c + "' in polynomial");
        }
        ++k;
    }
    out.push_back({Token::End, ""});
    return out;
}

} // namespace

MultiPoly MultiPoly::parse(const std::string& text, std::vector<std::string> roster) {
    for (const auto& v : roster)
        if (v == "i" || v == "I")
            throw input_error("variable name 'i' collides with the imaginary unit");
    auto toks = tokenize(text);
    std::size_t pos = 0;
    MultiPoly out(roster);
    if (toks[pos].kind == Token::End) throw input_error("empty polynomial text");

    auto peek = [&]() -> const Token& { return toks[pos]; };
    auto advance = [&]() -> const Token& { return toks[pos++]; };

    while (peek().kind != Token::End) {
        ExactComplex sign(1);
        if (peek().kind == Token::Plus) {
            advance();
        } else if (peek().kind == Token::Minus) {
            sign = ExactComplex(-1);
            advance();
        }
        // term: factors juxtaposed or joined by '*'
        ExactComplex coef(1);
        bool any_factor = false;
        Exponents exps(roster.size(), 0);
        while (true) {
            const Token& t = peek();
            if (t.kind == Token::Number) {
                auto q = parse_rational(t.text);
                if (!q) throw input_error("malformed rational '" + t.text + "'");
                coef *= ExactComplex(*q);
                advance();
                any_factor = true;
            } else if (t.kind == Token::Ident && (t.text == "i" || t.text == "I")) {
                coef *= ExactComplex::i();
                advance();
                any_factor = true;
            } else if (t.kind == Token::Ident) {
                int idx = out.var_index(t.text);
                if (idx < 0) throw input_error("variable '" + t.text + "' not in roster");
                advance();
                unsigned e = 1;
                if (peek().kind == Token::Caret) {
                    advance();
                    if (peek().kind != Token::Number)
                        throw input_error("exponent expected after '^'");
                    auto q = parse_rational(peek().text);
                    if (!q || q->get_den() != 1 || *q < 0)
                        throw input_error("exponent must be a nonnegative integer");
                    e = static_cast<unsigned>(q->get_num().get_ui());
                    advance();
                }
                exps[static_cast<std::size_t>(idx)] += e;
                any_factor = true;
            } else if (t.kind == Token::LParen) {
                // parenthesized exact complex coefficient
                advance();
                std::string inner;
                int depth = 1;
                while (peek().kind != Token::End) {
                    if (peek().kind == Token::LParen) ++depth;
                    if (peek().kind == Token::RParen && --depth == 0) break;
                    inner += advance().text;
                    inner += ' ';
                }
                if (peek().kind != Token::RParen) throw input_error("unbalanced parenthesis");
                advance();
                auto z = ExactComplex::parse(inner);
                if (!z) throw input_error("malformed complex coefficient '(" + inner + ")'");
                coef *= *z;
                any_factor = true;
            } else if (t.kind == Token::Star) {
                advance(); // explicit multiplication separator
            } else {
                break;
            }
        }
        if (!any_factor) throw input_error("empty term in polynomial text");
        out.add_term(exps, coef * sign);
        if (peek().kind != Token::Plus && peek().kind != Token::Minus && peek().kind != Token::End)
            throw input_error("unexpected token '" + peek().text + "' in polynomial");
    }
    return out;
}

} // namespace levikit
