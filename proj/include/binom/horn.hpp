#pragma once

#include "decomposition.hpp"
#include "lp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace binom {

struct not_graded : error {
    using error::error;
};
struct not_mixed : error {
    using error::error;
};

// no nonzero vector of the column span is >= 0
inline bool check_mixed(const IntegerMatrix& B)
{
    const std::size_t n = B.rows(), m = B.cols();
    if (m == 0)
        return true;
    // B y+ - B y- - s = 0, sum s = 1
    RationalMatrix M(n + 1, std::vector<Rational>(2 * m + n));
    std::vector<Rational> b(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            M[i][j] = Rational(B(i, j));
            M[i][m + j] = Rational(-B(i, j));
        }
        M[i][2 * m + i] = -1;
        M[n][2 * m + i] = 1;
    }
    b[n] = 1;
    return !find_nonnegative_solution(M, b);
}

inline BinomialIdeal lattice_basis_ideal(const IntegerMatrix& B, std::vector<std::string> vars = {})
{
    const int n = static_cast<int>(B.rows());
    std::vector<Binomial> g;
    for (std::size_t j = 0; j < B.cols(); ++j) {
        Exponent plus(n, 0), minus(n, 0);
        for (int i = 0; i < n; ++i) {
            int x = static_cast<int>(B(i, j));
            (x > 0 ? plus[i] : minus[i]) = std::abs(x);
        }
        g.push_back(Binomial(plus, minus));
    }
    return BinomialIdeal(n, std::move(g), std::move(vars));
}

// canonical grading: HNF basis of the integer left kernel of B
inline IntegerMatrix grading_matrix(const IntegerMatrix& B)
{
    auto K = kernel_saturated(B.transpose());
    return K.basis();
}

struct HornSystem {
    IntegerMatrix B;
    IntegerMatrix A;
    std::vector<Rational> beta;

    HornSystem(IntegerMatrix b, std::optional<IntegerMatrix> a = std::nullopt, std::vector<Rational> be = {})
        : B(std::move(b)), A(a ? std::move(*a) : grading_matrix(B)), beta(std::move(be))
    {
        const std::size_t n = B.rows();
        if (A.cols() != n)
            throw invariant_violation("grading matrix has the wrong number of columns");
        auto AB = A * B;
        for (std::size_t i = 0; i < AB.rows(); ++i)
            for (std::size_t j = 0; j < AB.cols(); ++j)
                if (AB(i, j) != 0)
                    throw invariant_violation("A B is not zero");
        if (rank_of(A) != A.rows() || rank_of(A) + rank_of(B) != n)
            throw invariant_violation("A does not have rank n - rank B");
        if (beta.empty())
            beta.assign(A.rows(), Rational(0));
        if (beta.size() != A.rows())
            throw invariant_violation("beta has the wrong length");
    }

    std::size_t n() const { return B.rows(); }
    std::size_t d() const { return A.rows(); }

    std::vector<std::string> euler_operators() const
    {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < A.rows(); ++i) {
            std::string s;
            for (std::size_t j = 0; j < A.cols(); ++j) {
                const Integer& a = A(i, j);
                if (a == 0)
                    continue;
                std::string t = "x" + std::to_string(j + 1) + "d" + std::to_string(j + 1);
                if (s.empty())
                    s = a == 1 ? t : a == -1 ? "-" + t : to_string(a) + "*" + t;
                else
                    s += (a > 0 ? " + " : " - ") + (abs(a) == 1 ? t : to_string(Integer(abs(a))) + "*" + t);
            }
            Rational b = beta[i];
            if (b != 0)
                s += b < 0 ? " + " + to_string(Rational(-b)) : " - " + to_string(b);
            out.push_back(s);
        }
        return out;
    }
};

inline void check_graded(const BinomialIdeal& I, const IntegerMatrix& A)
{
    for (auto& g : I.generators) {
        auto a = A.apply(to_integers(g.u));
        if (!g.is_monomial() && a != A.apply(to_integers(g.v)))
            throw not_graded("generator " + binomial_string(g, I.vars) + " is not homogeneous");
    }
}

// affine subspace offset + span_Q(A_J)
struct AffineSubspace {
    std::vector<Rational> offset;
    Subset J;
    std::vector<std::vector<Rational>> basis;  // reduced echelon basis of the span

    bool contains(const std::vector<Rational>& p) const
    {
        auto r = reduce(p);
        for (auto& x : r)
            if (x != 0)
                return false;
        return true;
    }
    // p - offset reduced against the span
    std::vector<Rational> reduce(const std::vector<Rational>& p) const
    {
        std::vector<Rational> r(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            r[i] = p[i] - offset[i];
        for (auto& b : basis) {
            std::size_t piv = 0;
            while (b[piv] == 0)
                ++piv;
            if (r[piv] != 0) {
                Rational f = r[piv];
                for (std::size_t i = 0; i < r.size(); ++i)
                    r[i] -= f * b[i];
            }
        }
        return r;
    }
    std::size_t dim() const { return basis.size(); }
    bool subset_of(const AffineSubspace& o) const
    {
        if (!o.contains(offset))
            return false;
        for (auto& b : basis) {
            auto shifted = o.offset;
            for (std::size_t i = 0; i < b.size(); ++i)
                shifted[i] += b[i];
            if (!o.contains(shifted))
                return false;
        }
        return true;
    }
};

inline std::vector<std::vector<Rational>> rref_rows(std::vector<std::vector<Rational>> rows)
{
    std::vector<std::vector<Rational>> out;
    if (rows.empty())
        return out;
    const std::size_t d = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < d && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[r], rows[p]);
        Rational f = rows[r][c];
        for (auto& x : rows[r])
            x /= f;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i][c] != 0) {
                Rational g = rows[i][c];
                for (std::size_t k = 0; k < d; ++k)
                    rows[i][k] -= g * rows[r][k];
            }
        ++r;
    }
    rows.resize(r);
    return rows;
}

inline AffineSubspace column_translate(const IntegerMatrix& A, const Subset& J, const std::vector<Integer>& offset)
{
    AffineSubspace s;
    s.J = J;
    std::vector<std::vector<Rational>> cols;
    for (int j : J) {
        std::vector<Rational> c;
        for (std::size_t i = 0; i < A.rows(); ++i)
            c.emplace_back(A(i, j));
        cols.push_back(c);
    }
    s.basis = rref_rows(cols);
    s.offset.assign(A.rows(), Rational(0));
    s.offset = s.reduce({offset.begin(), offset.end()});  // canonical representative
    return s;
}

inline std::vector<AffineSubspace> prune_subspaces(std::vector<AffineSubspace> v)
{
    std::vector<AffineSubspace> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        bool covered = false;
        for (std::size_t j = 0; j < v.size() && !covered; ++j) {
            if (i == j || !v[i].subset_of(v[j]))
                continue;
            // equal subspaces: keep the first
            covered = !v[j].subset_of(v[i]) || j < i;
        }
        if (!covered)
            out.push_back(v[i]);
    }
    std::sort(out.begin(), out.end(), [](const AffineSubspace& a, const AffineSubspace& b) {
        if (a.dim() != b.dim())
            return a.dim() > b.dim();
        if (a.J != b.J)
            return a.J < b.J;
        return a.offset < b.offset;
    });
    return out;
}

// qdeg of a primary component: A u + C A_J over the standard monomials u on the complement of J
inline std::vector<AffineSubspace> component_quasidegrees(const PrimaryComponent& c, const IntegerMatrix& A, std::size_t budget = 100000)
{
    auto G = groebner_basis(c.ideal);
    std::vector<AffineSubspace> out;
    for (auto& u : detail::standard_exponents(G, complement(c.prime.J, c.ideal.n), budget))
        out.push_back(column_translate(A, c.prime.J, A.apply(to_integers(u))));
    return prune_subspaces(out);
}

inline std::vector<AffineSubspace> quasidegrees(const BinomialIdeal& I, const IntegerMatrix& A)
{
    check_graded(I, A);
    std::vector<AffineSubspace> all;
    for (auto& c : primary_decompose(I).components)
        for (auto& s : component_quasidegrees(c, A))
            all.push_back(s);
    return prune_subspaces(all);
}

// dim of the degree-alpha piece of k[x]/I
inline std::size_t graded_dimension(const GroebnerBasis& G, const IntegerMatrix& A, const std::vector<Integer>& alpha)
{
    std::set<Exponent> nf;
    for (auto& u : enumerate_fiber(A, alpha)) {
        auto t = normal_form({Scalar(1), u}, G);
        if (t)
            nf.insert(t->exp);
    }
    return nf.size();
}

// Hilbert function sampled along k * (sum of the columns in J)
inline std::vector<std::size_t> hilbert_samples(const BinomialIdeal& P, const IntegerMatrix& A, const Subset& J, int kmax)
{
    auto G = groebner_basis(P);
    std::vector<Integer> ray(A.rows(), 0);
    for (int j : J)
        for (std::size_t i = 0; i < A.rows(); ++i)
            ray[i] += A(i, j);
    std::vector<std::size_t> out;
    for (int k = 1; k <= kmax; ++k) {
        std::vector<Integer> a = ray;
        for (auto& x : a)
            x *= k;
        out.push_back(graded_dimension(G, A, a));
    }
    return out;
}

inline bool is_toral(const BinomialPrime& p, const IntegerMatrix& A)
{
    return static_cast<std::size_t>(p.L.rank()) + rank_of(A.select_cols(p.J)) == p.J.size();
}

struct ClassifiedComponent {
    PrimaryComponent component;
    bool toral = false;
    std::vector<std::size_t> hilbert;  // prime's Hilbert function along the probe ray
};

struct ToralAndeanReport {
    std::vector<ClassifiedComponent> components;
    std::vector<AffineSubspace> andean_arrangement;
    TruncationVerdict verification;

    std::vector<BinomialIdeal> toral_part() const
    {
        std::vector<BinomialIdeal> v;
        for (auto& c : components)
            if (c.toral)
                v.push_back(c.component.ideal);
        return v;
    }
    std::vector<BinomialIdeal> andean_part() const
    {
        std::vector<BinomialIdeal> v;
        for (auto& c : components)
            if (!c.toral)
                v.push_back(c.component.ideal);
        return v;
    }
};

inline ToralAndeanReport toral_andean_analysis(const BinomialIdeal& I, const IntegerMatrix& A, int probe = 4)
{
    check_graded(I, A);
    std::vector<std::vector<Integer>> cols;
    for (std::size_t j = 0; j < A.cols(); ++j)
        cols.push_back(A.col(j));
    if (!is_pointed(cols))
        throw invariant_violation("the semigroup of the grading is not pointed");
    ToralAndeanReport r;
    auto d = primary_decompose(I);
    r.verification = d.verification;
    std::vector<AffineSubspace> arr;
    for (auto& c : d.components) {
        ClassifiedComponent cc{c, is_toral(c.prime, A), {}};
        if (!c.prime.J.empty())
            cc.hilbert = hilbert_samples(prime_ideal(c.prime), A, c.prime.J, probe);
        if (!cc.toral)
            for (auto& s : component_quasidegrees(c, A))
                arr.push_back(s);
        r.components.push_back(cc);
    }
    r.andean_arrangement = prune_subspaces(arr);
    return r;
}

struct RankSummand {
    Lattice L;
    Subset J;
    Integer iota;
    std::size_t characters = 0;  // associated primes over (L, J)
    std::size_t mu = 0;
    Integer vol;
    Integer product;
};

struct RankReport {
    std::vector<RankSummand> summands;
    Integer total;
    Integer finite_support;
    Integer full_support;
    ToralAndeanReport analysis;
};

// |L / (ZB cap Z^J)|, zero when the ranks differ
inline Integer lattice_index(const Lattice& L, const IntegerMatrix& B, const Subset& J)
{
    const int n = static_cast<int>(B.rows());
    Subset Jbar = complement(J, n);
    std::vector<std::vector<Integer>> gens;
    if (Jbar.empty()) {
        for (std::size_t j = 0; j < B.cols(); ++j)
            gens.push_back(B.col(j));
    } else {
        IntegerMatrix BJbar(Jbar.size(), B.cols());
        for (std::size_t i = 0; i < Jbar.size(); ++i)
            for (std::size_t j = 0; j < B.cols(); ++j)
                BJbar(i, j) = B(Jbar[i], j);
        for (auto& c : kernel_saturated(BJbar).basis_vectors())
            gens.push_back(B.apply(c));
    }
    Lattice M(n, gens);
    if (M.rank() != L.rank())
        return 0;
    if (M.rank() == 0)
        return 1;
    // coordinates of M in the basis of L
    std::vector<std::vector<Rational>> C;
    for (auto& v : M.basis_vectors()) {
        auto c = L.coordinates(v);
        if (!c)
            throw invariant_violation("lattice of B on J is not inside L");
        C.emplace_back(c->begin(), c->end());
    }
    return abs(detail::det(C));
}

inline RankReport generic_rank(const HornSystem& sys)
{
    if (!check_mixed(sys.B))
        throw not_mixed("B is not mixed");
    RankReport r;
    auto I = lattice_basis_ideal(sys.B);
    r.analysis = toral_andean_analysis(I, sys.A);
    const std::size_t d = sys.d();
    r.total = r.finite_support = r.full_support = 0;
    for (auto& cc : r.analysis.components) {
        auto& p = cc.component.prime;
        if (!cc.toral || rank_of(sys.A.select_cols(p.J)) != d)
            continue;
        auto it = std::find_if(r.summands.begin(), r.summands.end(), [&](const RankSummand& s) { return s.L == p.L && s.J == p.J; });
        if (it == r.summands.end()) {
            RankSummand s;
            s.L = p.L;
            s.J = p.J;
            s.iota = lattice_index(p.L, sys.B, p.J);
            s.vol = normalized_volume(sys.A, p.J);
            r.summands.push_back(s);
            it = r.summands.end() - 1;
        }
        ++it->characters;
        auto v = is_primary(cc.component.ideal, p);
        if (v.kind != PrimaryVerdict::Kind::primary)
            throw verification_failed("component failed the primary check");
        it->mu = std::max(it->mu, v.orbits);
    }
    for (auto& s : r.summands) {
        s.product = s.iota * Integer(s.mu) * s.vol;
        r.total += s.product;
        (s.J.size() == sys.n() ? r.full_support : r.finite_support) += s.product;
    }
    return r;
}

// finite exactly off the Andean arrangement
inline bool finite_rank_test(const HornSystem& sys, const std::vector<Rational>& beta)
{
    auto r = toral_andean_analysis(lattice_basis_ideal(sys.B), sys.A);
    for (auto& s : r.andean_arrangement)
        if (s.contains(beta))
            return false;
    return true;
}

inline bool finite_rank_test(const HornSystem& sys) { return finite_rank_test(sys, sys.beta); }

}  // namespace binom
