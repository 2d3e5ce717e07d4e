#pragma once

#include "integer.hpp"
#include "lp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace binom {

class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (auto& r : rows) {
            if (r.size() != cols_)
                throw invariant_violation("ragged matrix");
            for (long x : r)
                a_.emplace_back(x);
        }
    }
    static IntegerMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols)
    {
        IntegerMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw invariant_violation("ragged matrix");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }
    static IntegerMatrix identity(std::size_t n)
    {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Integer> row(std::size_t i) const { return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_}; }
    std::vector<Integer> col(std::size_t j) const
    {
        std::vector<Integer> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }
    std::vector<std::vector<Integer>> row_list() const
    {
        std::vector<std::vector<Integer>> out;
        for (std::size_t i = 0; i < rows_; ++i)
            out.push_back(row(i));
        return out;
    }

    IntegerMatrix transpose() const
    {
        IntegerMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }
    IntegerMatrix select_cols(const std::vector<int>& js) const
    {
        IntegerMatrix t(rows_, js.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < js.size(); ++k)
                t(i, k) = (*this)(i, js[k]);
        return t;
    }

    void swap_rows(std::size_t i, std::size_t k)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(i, j), (*this)(k, j));
    }
    void swap_cols(std::size_t j, std::size_t k)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, j), (*this)(i, k));
    }
    // row i += f * row k
    void add_row(std::size_t i, std::size_t k, const Integer& f)
    {
        if (f == 0)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) += f * (*this)(k, j);
    }
    void add_col(std::size_t j, std::size_t k, const Integer& f)
    {
        if (f == 0)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) += f * (*this)(i, k);
    }
    void negate_row(std::size_t i)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = -(*this)(i, j);
    }
    void negate_col(std::size_t j)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = -(*this)(i, j);
    }

    bool operator==(const IntegerMatrix& o) const = default;

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw invariant_violation("matrix shape mismatch");
        IntegerMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    std::vector<Integer> apply(const std::vector<Integer>& v) const
    {
        std::vector<Integer> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[i] += (*this)(i, j) * v[j];
        return out;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> a_;
};

inline std::vector<Integer> to_integers(const Exponent& e) { return {e.begin(), e.end()}; }

inline Exponent to_exponent(const std::vector<Integer>& v)
{
    Exponent e;
    for (auto& x : v)
        e.push_back(static_cast<int>(x));
    return e;
}

struct HermiteResult {
    IntegerMatrix H;  // U * M, row echelon
    IntegerMatrix U;  // unimodular
    std::size_t rank = 0;
};

// Row-style Hermite normal form: pivots positive, entries above a pivot reduced into [0, pivot).
inline HermiteResult hermite(const IntegerMatrix& M)
{
    IntegerMatrix H = M;
    IntegerMatrix U = IntegerMatrix::identity(M.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
        for (;;) {
            std::size_t best = H.rows();
            for (std::size_t i = r; i < H.rows(); ++i)
                if (H(i, c) != 0 && (best == H.rows() || abs(H(i, c)) < abs(H(best, c))))
                    best = i;
            if (best == H.rows())
                break;
            if (best != r) {
                H.swap_rows(r, best);
                U.swap_rows(r, best);
            }
            bool clean = true;
            for (std::size_t i = r + 1; i < H.rows(); ++i) {
                if (H(i, c) == 0)
                    continue;
                Integer q = floor_div(H(i, c), H(r, c));
                H.add_row(i, r, -q);
                U.add_row(i, r, -q);
                if (H(i, c) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (H(r, c) == 0)
            continue;
        if (H(r, c) < 0) {
            H.negate_row(r);
            U.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(H(i, c), H(r, c));
            H.add_row(i, r, -q);
            U.add_row(i, r, -q);
        }
        ++r;
    }
    return {std::move(H), std::move(U), r};
}

struct SmithResult {
    IntegerMatrix S;  // U * M * V
    IntegerMatrix U, V;
    std::size_t rank = 0;
};

inline SmithResult smith(const IntegerMatrix& M)
{
    IntegerMatrix S = M;
    IntegerMatrix U = IntegerMatrix::identity(M.rows());
    IntegerMatrix V = IntegerMatrix::identity(M.cols());
    const std::size_t m = S.rows(), n = S.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // smallest nonzero entry in the trailing block
        for (;;) {
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (S(i, j) != 0 && (bi == m || abs(S(i, j)) < abs(S(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == m)
                goto done;
            if (bi != t) {
                S.swap_rows(t, bi);
                U.swap_rows(t, bi);
            }
            if (bj != t) {
                S.swap_cols(t, bj);
                V.swap_cols(t, bj);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (S(i, t) == 0)
                    continue;
                Integer q = floor_div(S(i, t), S(t, t));
                S.add_row(i, t, -q);
                U.add_row(i, t, -q);
                if (S(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (S(t, j) == 0)
                    continue;
                Integer q = floor_div(S(t, j), S(t, t));
                S.add_col(j, t, -q);
                V.add_col(j, t, -q);
                if (S(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility of the trailing block
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (S(i, j) % S(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m)
                break;
            S.add_row(t, bad, 1);
            U.add_row(t, bad, 1);
        }
        if (S(t, t) < 0) {
            S.negate_row(t);
            U.negate_row(t);
        }
    }
done:
    return {std::move(S), std::move(U), std::move(V), t};
}

struct NormalForms {
    IntegerMatrix hermite, hermite_transform;
    IntegerMatrix smith, smith_left, smith_right;
    std::size_t rank = 0;
};

inline NormalForms integer_normal_forms(const IntegerMatrix& M)
{
    if (M.rows() == 0 || M.cols() == 0)
        throw invariant_violation("empty matrix");
    auto h = hermite(M);
    auto s = smith(M);
    return {h.H, h.U, s.S, s.U, s.V, h.rank};
}

inline std::size_t rank_of(const IntegerMatrix& M)
{
    if (M.rows() == 0 || M.cols() == 0)
        return 0;
    return hermite(M).rank;
}

inline std::vector<std::vector<Integer>> select_coords(const std::vector<std::vector<Integer>>& vs, const std::vector<int>& js)
{
    std::vector<std::vector<Integer>> out;
    for (auto& v : vs) {
        std::vector<Integer> w;
        for (int j : js)
            w.push_back(v[j]);
        out.push_back(std::move(w));
    }
    return out;
}

using Subset = std::vector<int>;  // sorted 0-based indices

inline Subset complement(const Subset& J, int n)
{
    Subset out;
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(J.begin(), J.end(), i))
            out.push_back(i);
    return out;
}

inline Subset full_subset(int n)
{
    Subset s(n);
    std::iota(s.begin(), s.end(), 0);
    return s;
}

// Sublattice of Z^n. Basis vectors are the rows of an HNF matrix.
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(int n) : n_(n), basis_(0, n) {}
    Lattice(int n, const std::vector<std::vector<Integer>>& gens, std::optional<Subset> support = std::nullopt)
        : n_(n), support_(std::move(support))
    {
        std::vector<std::vector<Integer>> nz;
        for (auto& g : gens) {
            if (static_cast<int>(g.size()) != n)
                throw invariant_violation("lattice generator has wrong length");
            if (std::any_of(g.begin(), g.end(), [](const Integer& x) { return x != 0; }))
                nz.push_back(g);
        }
        if (support_)
            for (auto& g : nz)
                for (int i = 0; i < n; ++i)
                    if (g[i] != 0 && !std::binary_search(support_->begin(), support_->end(), i))
                        throw invariant_violation("lattice generator outside support");
        if (nz.empty()) {
            basis_ = IntegerMatrix(0, n);
            return;
        }
        auto h = hermite(IntegerMatrix::from_rows(nz, n));
        basis_ = IntegerMatrix(h.rank, n);
        for (std::size_t i = 0; i < h.rank; ++i)
            for (int j = 0; j < n; ++j)
                basis_(i, j) = h.H(i, j);
    }

    int ambient_dim() const { return n_; }
    std::size_t rank() const { return basis_.rows(); }
    const IntegerMatrix& basis() const { return basis_; }
    std::vector<std::vector<Integer>> basis_vectors() const { return basis_.row_list(); }
    const std::optional<Subset>& support() const { return support_; }
    Lattice with_support(Subset J) const
    {
        return Lattice(n_, basis_vectors(), std::move(J));
    }

    bool operator==(const Lattice& o) const { return n_ == o.n_ && basis_ == o.basis_; }
    bool operator<(const Lattice& o) const
    {
        if (n_ != o.n_)
            return n_ < o.n_;
        if (basis_.rows() != o.basis_.rows())
            return basis_.rows() < o.basis_.rows();
        for (std::size_t i = 0; i < basis_.rows(); ++i)
            for (int j = 0; j < n_; ++j)
                if (basis_(i, j) != o.basis_(i, j))
                    return basis_(i, j) < o.basis_(i, j);
        return false;
    }

    // integer coordinates of v in the HNF basis, if v lies in the lattice
    std::optional<std::vector<Integer>> coordinates(std::vector<Integer> v) const
    {
        std::vector<Integer> c(rank());
        std::size_t col = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            while (basis_(i, col) == 0)
                ++col;
            for (std::size_t j = 0; j < col; ++j)
                if (v[j] != 0)
                    return std::nullopt;
            if (v[col] % basis_(i, col) != 0)
                return std::nullopt;
            c[i] = v[col] / basis_(i, col);
            for (int j = 0; j < n_; ++j)
                v[j] -= c[i] * basis_(i, j);
        }
        for (auto& x : v)
            if (x != 0)
                return std::nullopt;
        return c;
    }
    bool contains(const std::vector<Integer>& v) const { return coordinates(v).has_value(); }
    bool contains(const Lattice& o) const
    {
        for (auto& v : o.basis_vectors())
            if (!contains(v))
                return false;
        return true;
    }

private:
    int n_ = 0;
    IntegerMatrix basis_;
    std::optional<Subset> support_;
};

inline Lattice lattice_sum(const Lattice& a, const Lattice& b)
{
    auto g = a.basis_vectors();
    for (auto& v : b.basis_vectors())
        g.push_back(v);
    return Lattice(a.ambient_dim(), g);
}

// ker(A) over Z; always saturated
inline Lattice kernel_saturated(const IntegerMatrix& A)
{
    const std::size_t n = A.cols();
    if (A.rows() == 0)
        return Lattice(static_cast<int>(n), IntegerMatrix::identity(n).row_list());
    auto h = hermite(A.transpose());
    std::vector<std::vector<Integer>> ker;
    for (std::size_t i = h.rank; i < n; ++i)
        ker.push_back(h.U.row(i));
    return Lattice(static_cast<int>(n), ker);
}

struct LatticeQuotientInvariants {
    std::vector<Integer> invariant_factors;
    int free_rank = 0;
    Integer order() const
    {
        Integer o = 1;
        for (auto& f : invariant_factors)
            o *= f;
        return o;
    }
    Integer exponent() const
    {
        Integer e = 1;
        for (auto& f : invariant_factors)
            e = integer_lcm(e, f);
        return e;
    }
};

// Inverse of a unimodular matrix, via Hermite form of [M | I].
inline IntegerMatrix unimodular_inverse(const IntegerMatrix& M)
{
    auto h = hermite(M);
    // U M = H with H = I when M is unimodular
    for (std::size_t i = 0; i < M.rows(); ++i)
        if (h.H(i, i) != 1)
            throw invariant_violation("matrix is not unimodular");
    return h.U;
}

struct SaturationData {
    Lattice saturated;
    LatticeQuotientInvariants invariants;
    // adapted bases: L has basis factor[i] * adapted[i], L_sat has basis adapted[i]
    std::vector<std::vector<Integer>> adapted;
    std::vector<Integer> factor;
};

inline SaturationData saturation_data(const Lattice& L)
{
    const int n = L.ambient_dim();
    if (L.rank() == 0)
        return {L, {}, {}, {}};
    auto s = smith(L.basis());
    IntegerMatrix Vinv = unimodular_inverse(s.V);
    SaturationData out;
    for (std::size_t i = 0; i < L.rank(); ++i) {
        out.adapted.push_back(Vinv.row(i));
        out.factor.push_back(s.S(i, i));
        out.invariants.invariant_factors.push_back(s.S(i, i));
    }
    out.saturated = Lattice(n, out.adapted, L.support());
    return out;
}

inline std::pair<Lattice, LatticeQuotientInvariants> saturation_invariants(const Lattice& L)
{
    auto d = saturation_data(L);
    return {d.saturated, d.invariants};
}

inline bool is_saturated(const Lattice& L)
{
    return saturation_invariants(L).second.order() == 1;
}

inline bool is_pointed(const std::vector<std::vector<Integer>>& vectors)
{
    if (vectors.empty())
        return true;
    const std::size_t d = vectors[0].size();
    const std::size_t k = vectors.size();
    RationalMatrix A(d + 1, std::vector<Rational>(k));
    std::vector<Rational> b(d + 1);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < d; ++i)
            A[i][j] = Rational(vectors[j][i]);
        A[d][j] = 1;
    }
    b[d] = 1;
    return !find_nonnegative_solution(A, b).has_value();
}

namespace detail {

inline Integer det(std::vector<std::vector<Rational>> M)
{
    const std::size_t n = M.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(M[p], M[c]);
            d = -d;
        }
        d *= M[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (M[i][c] == 0)
                continue;
            Rational f = M[i][c] / M[c][c];
            for (std::size_t j = c; j < n; ++j)
                M[i][j] -= f * M[c][j];
        }
    }
    return numerator_of(d);
}

inline int sign(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace detail

// Normalized volume of conv(0, columns of A_J) in the lattice Z A_J (placing triangulation).
inline Integer normalized_volume(const IntegerMatrix& A, const Subset& J)
{
    if (J.empty())
        return 1;
    std::vector<std::vector<Integer>> pts_full;
    for (int j : J)
        pts_full.push_back(A.col(j));
    Lattice ZA(static_cast<int>(A.rows()), pts_full);
    const std::size_t r = ZA.rank();
    if (r == 0)
        return 1;
    std::vector<std::vector<Integer>> pts{std::vector<Integer>(r, 0)};
    for (auto& p : pts_full) {
        auto c = ZA.coordinates(p);
        pts.push_back(*c);
    }
    std::sort(pts.begin() + 1, pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto orient = [&](const std::vector<std::size_t>& facet, const std::vector<Integer>& x) {
        std::vector<std::vector<Rational>> M;
        const auto& f0 = pts[facet[0]];
        for (std::size_t k = 1; k < facet.size(); ++k) {
            std::vector<Rational> row;
            for (std::size_t j = 0; j < r; ++j)
                row.emplace_back(pts[facet[k]][j] - f0[j]);
            M.push_back(row);
        }
        std::vector<Rational> row;
        for (std::size_t j = 0; j < r; ++j)
            row.emplace_back(x[j] - f0[j]);
        M.push_back(row);
        return detail::det(M);
    };
    auto simplex_det = [&](const std::vector<std::size_t>& s) {
        std::vector<std::vector<Rational>> M;
        for (std::size_t k = 1; k < s.size(); ++k) {
            std::vector<Rational> row;
            for (std::size_t j = 0; j < r; ++j)
                row.emplace_back(pts[s[k]][j] - pts[s[0]][j]);
            M.push_back(row);
        }
        return detail::det(M);
    };

    // initial full-dimensional simplex containing the origin
    std::vector<std::size_t> start{0};
    std::vector<std::vector<Integer>> chosen;
    for (std::size_t i = 1; i < pts.size() && chosen.size() < r; ++i) {
        auto trial = chosen;
        trial.push_back(pts[i]);
        if (rank_of(IntegerMatrix::from_rows(trial, r)) == trial.size()) {
            chosen = trial;
            start.push_back(i);
        }
    }
    std::vector<std::vector<std::size_t>> simplices{start};
    std::vector<bool> used(pts.size(), false);
    for (auto i : start)
        used[i] = true;

    for (std::size_t p = 0; p < pts.size(); ++p) {
        if (used[p])
            continue;
        // boundary facets with their opposite vertex
        std::map<std::vector<std::size_t>, std::pair<int, std::size_t>> facets;
        for (auto& s : simplices)
            for (std::size_t k = 0; k < s.size(); ++k) {
                std::vector<std::size_t> f;
                for (std::size_t l = 0; l < s.size(); ++l)
                    if (l != k)
                        f.push_back(s[l]);
                std::sort(f.begin(), f.end());
                auto& e = facets[f];
                e.first++;
                e.second = s[k];
            }
        std::vector<std::vector<std::size_t>> added;
        for (auto& [f, info] : facets) {
            if (info.first != 1)
                continue;
            int sp = detail::sign(orient(f, pts[p]));
            int so = detail::sign(orient(f, pts[info.second]));
            if (sp != 0 && sp == -so) {
                auto s = f;
                s.push_back(p);
                added.push_back(s);
            }
        }
        for (auto& s : added)
            simplices.push_back(s);
        used[p] = true;
    }
    Integer vol = 0;
    for (auto& s : simplices)
        vol += abs(simplex_det(s));
    return vol;
}

inline std::vector<Exponent> enumerate_fiber(const IntegerMatrix& A, const std::vector<Integer>& alpha, std::optional<int> cap = std::nullopt)
{
    const std::size_t d = A.rows(), n = A.cols();
    std::vector<Integer> bound(n);
    auto cols = A.transpose().row_list();
    if (auto c = find_positive_functional(cols, d)) {
        // c.A >= 1 coordinatewise bounds every coordinate of a fiber point
        Rational ca = 0;
        for (std::size_t i = 0; i < d; ++i)
            ca += (*c)[i] * Rational(alpha[i]);
        for (std::size_t j = 0; j < n; ++j) {
            Rational w = 0;
            for (std::size_t i = 0; i < d; ++i)
                w += (*c)[i] * Rational(A(i, j));
            Rational b = ca / w;
            bound[j] = b < 0 ? Integer(-1) : Integer(numerator_of(b) / denominator_of(b));
        }
    } else if (cap) {
        for (auto& b : bound)
            b = *cap;
    } else {
        throw error("FiberInfinite: fibers are infinite and no cap was given");
    }
    std::vector<Exponent> out;
    Exponent u(n, 0);
    std::vector<Integer> rem = alpha;
    auto rec = [&](auto&& self, std::size_t j) -> void {
        if (j == n) {
            if (std::all_of(rem.begin(), rem.end(), [](const Integer& x) { return x == 0; }))
                out.push_back(u);
            return;
        }
        for (Integer k = 0; k <= bound[j]; ++k) {
            u[j] = static_cast<int>(k);
            self(self, j + 1);
            for (std::size_t i = 0; i < d; ++i)
                rem[i] -= A(i, j);
        }
        for (std::size_t i = 0; i < d; ++i)
            rem[i] += (bound[j] + 1) * A(i, j);
        u[j] = 0;
    };
    if (std::all_of(bound.begin(), bound.end(), [](const Integer& b) { return b >= 0; }))
        rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace binom
