#ifndef LEVIKIT_TEST_HELPERS_HPP
#define LEVIKIT_TEST_HELPERS_HPP

#include "levikit/multipoly.hpp"
#include "levikit/rng.hpp"

#include <functional>
#include <string>
#include <vector>

namespace levikit::testing {

inline MultiPoly var(const std::vector<std::string>& roster, const std::string& name) {
    return MultiPoly::variable(roster, name);
}

inline MultiPoly cst(const std::vector<std::string>& roster, long v) {
    return MultiPoly::constant(roster, ExactComplex(v));
}

/// Random dense-ish polynomial of total degree <= deg with small Gaussian
/// rational coefficients (term kept with probability ~ 2/3).
inline MultiPoly random_poly(const std::vector<std::string>& roster, int deg, Rng& rng,
                             long bound = 4) {
    MultiPoly out(roster);
    Exponents e(roster.size(), 0);
    // enumerate exponent tuples of total degree <= deg
    std::vector<Exponents> stack;
    std::function<void(std::size_t, int)> gen = [&](std::size_t k, int left) {
        if (k == roster.size()) {
            stack.push_back(e);
            return;
        }
        for (int d = 0; d <= left; ++d) {
            e[k] = static_cast<unsigned>(d);
            gen(k + 1, left - d);
        }
        e[k] = 0;
    };
    gen(0, deg);
    for (const auto& ex : stack) {
        if (rng.uniform(0, 2) == 0) continue;
        out.add_term(ex, rng.small_gaussian(bound));
    }
    return out;
}

/// Random HOMOGENEOUS polynomial of exact degree deg (nonzero).
inline MultiPoly random_form(const std::vector<std::string>& roster, int deg, Rng& rng,
                             long bound = 4) {
    for (;;) {
        MultiPoly out(roster);
        Exponents e(roster.size(), 0);
        std::vector<Exponents> stack;
        std::function<void(std::size_t, int)> gen = [&](std::size_t k, int left) {
            if (k + 1 == roster.size()) {
                e[k] = static_cast<unsigned>(left);
                stack.push_back(e);
                e[k] = 0;
                return;
            }
            for (int d = 0; d <= left; ++d) {
                e[k] = static_cast<unsigned>(d);
                gen(k + 1, left - d);
            }
            e[k] = 0;
        };
        gen(0, deg);
        for (const auto& ex : stack) {
            if (rng.uniform(0, 3) == 0) continue;
            out.add_term(ex, rng.small_gaussian(bound));
        }
        if (!out.is_zero() && out.degree() == deg) return out;
    }
}

} // namespace levikit::testing

#endif
