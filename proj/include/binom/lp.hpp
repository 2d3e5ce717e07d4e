#pragma once

// Exact feasibility for { x >= 0 : A x = b } by phase-one simplex with Bland's rule.

#include "integer.hpp"

#include <optional>
#include <vector>

namespace binom {

using RationalMatrix = std::vector<std::vector<Rational>>;

inline std::optional<std::vector<Rational>> find_nonnegative_solution(RationalMatrix A, std::vector<Rational> b)
{
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0) {
            for (auto& a : A[i])
                a = -a;
            b[i] = -b[i];
        }
    }
    // tableau: m rows of [A | I | b], objective row = -(sum of rows)
    const std::size_t width = n + m + 1;
    std::vector<std::vector<Rational>> T(m + 1, std::vector<Rational>(width));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            T[i][j] = A[i][j];
        T[i][n + i] = 1;
        T[i][width - 1] = b[i];
        basis[i] = n + i;
    }
    for (std::size_t j = 0; j < width; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (j < n || j == width - 1)
                s += T[i][j];
        T[m][j] = -s;
    }
    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (T[m][j] < 0) {
                enter = j;
                break;
            }
        if (enter == width)
            break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0)
                continue;
            Rational ratio = T[i][width - 1] / T[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m)
            break;  // unbounded direction cannot occur in phase one
        Rational piv = T[leave][enter];
        for (auto& t : T[leave])
            t /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || T[i][enter] == 0)
                continue;
            Rational f = T[i][enter];
            for (std::size_t j = 0; j < width; ++j)
                if (T[leave][j] != 0)
                    T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    if (T[m][width - 1] != 0)
        return std::nullopt;
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n)
            x[basis[i]] = T[i][width - 1];
    return x;
}

// c with c.g >= 1 for every g, when one exists
inline std::optional<std::vector<Rational>> find_positive_functional(const std::vector<std::vector<Integer>>& gens, std::size_t dim)
{
    const std::size_t k = gens.size();
    if (k == 0)
        return std::vector<Rational>(dim);
    RationalMatrix A(k, std::vector<Rational>(2 * dim + k));
    std::vector<Rational> b(k, Rational(1));
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t j = 0; j < dim; ++j) {
            A[r][j] = Rational(gens[r][j]);
            A[r][dim + j] = Rational(-gens[r][j]);
        }
        A[r][2 * dim + r] = -1;
    }
    auto x = find_nonnegative_solution(A, b);
    if (!x)
        return std::nullopt;
    std::vector<Rational> c(dim);
    for (std::size_t j = 0; j < dim; ++j)
        c[j] = (*x)[j] - (*x)[dim + j];
    return c;
}

}  // namespace binom
