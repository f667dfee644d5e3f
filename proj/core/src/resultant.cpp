#include "levikit/resultant.hpp"

namespace levikit {

MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m) {
    std::size_t n = m.size();
    if (n == 0) throw math_error("determinant of an empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw math_error("determinant of a non-square matrix");

    std::vector<std::string> roster;
    for (const auto& row : m)
        for (const auto& e : row) roster = roster_union(roster, e.variables());
    for (auto& row : m)
        for (auto& e : row) e = e.with_roster(roster);

    const MultiPoly one = MultiPoly::constant(roster, ExactComplex(1));
    MultiPoly prev = one;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k;
            for (std::size_t r = k + 1; r < n; ++r)
                if (!m[r][k].is_zero()) {
                    swap_row = r;
                    break;
                }
            if (swap_row == k) return MultiPoly::zero(roster);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                if (num.is_zero()) {
                    m[i][j] = MultiPoly::zero(roster);
                    continue;
                }
                auto q = exact_divide(num, prev);
                if (!q) throw internal_error("Bareiss division was not exact");
                m[i][j] = std::move(*q);
            }
            m[i][k] = MultiPoly::zero(roster);
        }
        prev = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, const std::string& var) {
    auto [a, b] = align_rosters(f, g);
    if (a.is_zero() || b.is_zero()) throw math_error("resultant with a zero polynomial");
    int m = a.degree_in(var);
    int n = b.degree_in(var);
    if (m == 0 && n == 0)
        throw math_error("resultant is degenerate: neither input involves " + var);

    auto fa = a.coefficients_in(var); // index = exponent
    auto fb = b.coefficients_in(var);
    if (m == 0) {
        // Res(c, g) = c^deg_var(g)
        MultiPoly out = MultiPoly::constant(a.variables(), ExactComplex(1));
        for (int k = 0; k < n; ++k) out = out * a;
        return out;
    }
    if (n == 0) {
        MultiPoly out = MultiPoly::constant(a.variables(), ExactComplex(1));
        for (int k = 0; k < m; ++k) out = out * b;
        return out;
    }

    std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<MultiPoly>> s(size,
                                          std::vector<MultiPoly>(size, MultiPoly::zero(a.variables())));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k)
            s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] =
                fa[static_cast<std::size_t>(m - k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] =
                fb[static_cast<std::size_t>(n - k)];
    return bareiss_determinant(std::move(s));
}

} // namespace levikit
