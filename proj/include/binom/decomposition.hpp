#pragma once

#include "congruence.hpp"
#include "lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace binom {

struct not_bounded : error {
    using error::error;
};
struct need_cutoff : error {
    using error::error;
};
struct not_minimal : error {
    using error::error;
};
struct verification_failed : error {
    using error::error;
};

// character on a lattice: values on its HNF basis vectors
inline Scalar character_value(const Lattice& L, const std::vector<Scalar>& values, const std::vector<Integer>& l)
{
    auto c = L.coordinates(l);
    if (!c)
        throw invariant_violation("vector outside the character's lattice");
    Scalar s(1);
    for (std::size_t i = 0; i < c->size(); ++i)
        if ((*c)[i] != 0)
            s = s * values[i].pow((*c)[i]);
    return s;
}

// values on the HNF basis of Lattice(n, gens) for a character given on gens
inline std::vector<Scalar> character_on_basis(int n, const std::vector<std::vector<Integer>>& gens, const std::vector<Scalar>& vals)
{
    if (gens.empty())
        return {};
    auto h = hermite(IntegerMatrix::from_rows(gens, n));
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < h.rank; ++i) {
        Scalar s(1);
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (h.U(i, k) != 0)
                s = s * vals[k].pow(h.U(i, k));
        out.push_back(s);
    }
    return out;
}

inline bool same_values(const std::vector<Scalar>& a, const std::vector<Scalar>& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return false;
    return true;
}

inline bool values_less(const std::vector<Scalar>& a, const std::vector<Scalar>& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return a[i] < b[i];
    return false;
}

// (J, L, character); a prime when L is saturated
struct Mesoprime {
    int n = 0;
    Subset J;
    Lattice L;
    std::vector<Scalar> sigma;

    bool operator==(const Mesoprime& o) const { return J == o.J && L == o.L && same_values(sigma, o.sigma); }
    bool operator<(const Mesoprime& o) const
    {
        if (J != o.J)
            return J < o.J;
        if (!(L == o.L))
            return L < o.L;
        return values_less(sigma, o.sigma);
    }
};

using BinomialPrime = Mesoprime;

struct Witness {
    Exponent u;
    Mesoprime meso;
};

struct CellularComponent {
    Subset J;
    BinomialIdeal ideal;
};

struct PrimaryComponent {
    BinomialPrime prime;
    BinomialIdeal ideal;
    std::optional<int> cutoff;  // exponent e of K = m_J^e
};

inline std::vector<Binomial> lattice_generators(int n, const Lattice& L, const std::vector<Scalar>& values)
{
    std::vector<Binomial> g;
    auto B = L.basis_vectors();
    for (std::size_t i = 0; i < B.size(); ++i) {
        Exponent plus(n, 0), minus(n, 0);
        for (int j = 0; j < n; ++j) {
            int x = static_cast<int>(B[i][j]);
            (x > 0 ? plus[j] : minus[j]) = std::abs(x);
        }
        g.push_back(Binomial(plus, minus, values[i]));
    }
    return g;
}

// I_rho: the lattice ideal of (L, rho) saturated at the variables of J
inline BinomialIdeal lattice_ideal(int n, const Subset& J, const Lattice& L, const std::vector<Scalar>& values, std::vector<std::string> vars = {})
{
    BinomialIdeal I(n, lattice_generators(n, L, values), std::move(vars));
    return saturate_at(I, J);
}

inline BinomialIdeal prime_ideal(const Mesoprime& p, std::vector<std::string> vars = {})
{
    auto I = lattice_ideal(p.n, p.J, p.L, p.sigma, vars);
    return reduced_groebner(I.with(variables_outside(p.n, p.J)));
}

inline BinomialIdeal toric_ideal(const IntegerMatrix& A)
{
    const int n = static_cast<int>(A.cols());
    auto L = kernel_saturated(A);
    std::vector<Scalar> ones(L.rank(), Scalar(1));
    return lattice_ideal(n, full_subset(n), L, ones);
}

inline BinomialIdeal ideal_sum(const BinomialIdeal& a, const std::vector<Binomial>& more)
{
    return a.with(more);
}

// K[Z^J] + m_J after colon by x^u; lattice and character from the binomials on J
inline Mesoprime witness_character(const BinomialIdeal& I, const Exponent& u, const Subset& J)
{
    const int n = I.n;
    auto K = colon(I, u);
    auto K2 = saturate_at(K.with(variables_outside(n, J)), J);
    auto G = groebner_basis(K2);
    if (G.is_unit())
        throw not_bounded("class of " + monomial_string(u, I.vars) + " is the monomial class");
    std::vector<std::vector<Integer>> diffs;
    std::vector<Scalar> vals;
    for (auto& g : G.elements()) {
        if (g.monomial)
            continue;
        bool onJ = true;
        for (int i : complement(J, n))
            if (g.lead[i] || g.tail[i])
                onJ = false;
        if (!onJ)
            continue;
        std::vector<Integer> d;
        for (int i = 0; i < n; ++i)
            d.emplace_back(g.lead[i] - g.tail[i]);
        diffs.push_back(d);
        vals.push_back(g.lambda);
    }
    Mesoprime m;
    m.n = n;
    m.J = J;
    m.L = Lattice(n, diffs, J);
    m.sigma = character_on_basis(n, diffs, vals);
    return m;
}

namespace detail {

inline void cellular_rec(const BinomialIdeal& I, std::vector<CellularComponent>& out)
{
    const int n = I.n;
    auto G = groebner_basis(I);
    if (G.is_unit())
        return;
    Subset nzd;
    for (int i = 0; i < n; ++i) {
        auto S = saturate(I, unit_exp(n, i));
        auto GS = groebner_basis(S);
        if (GS.is_unit())
            continue;
        if (GS == G) {
            nzd.push_back(i);
            continue;
        }
        int e = 1;
        auto C = colon(I, unit_exp(n, i));
        while (!(groebner_basis(C) == GS)) {
            C = colon(C, unit_exp(n, i));
            ++e;
        }
        Exponent xe(n, 0);
        xe[i] = e;
        cellular_rec(S, out);
        cellular_rec(reduced_groebner(I.with({Binomial::monomial(xe)})), out);
        return;
    }
    out.push_back({nzd, reduced_groebner(I)});
}

inline std::vector<Exponent> standard_exponents(const GroebnerBasis& G, const Subset& Jbar, std::size_t budget)
{
    const int n = G.nvars();
    std::vector<Exponent> out;
    std::set<Exponent> seen;
    std::deque<Exponent> q;
    Exponent z(n, 0);
    if (G.contains_monomial(z))
        return out;
    q.push_back(z);
    seen.insert(z);
    while (!q.empty()) {
        Exponent u = q.front();
        q.pop_front();
        out.push_back(u);
        if (out.size() > budget)
            throw resource_exceeded("standard monomials on the nilpotent variables exceed the budget");
        for (int i : Jbar) {
            Exponent v = u;
            ++v[i];
            if (seen.count(v) || G.contains_monomial(v))
                continue;
            seen.insert(v);
            q.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

inline std::vector<CellularComponent> cellular_decompose(const BinomialIdeal& I)
{
    std::vector<CellularComponent> out;
    detail::cellular_rec(I, out);
    std::vector<CellularComponent> uniq;
    for (auto& c : out) {
        bool dup = false;
        for (auto& d : uniq)
            if (d.J == c.J && ideal_equal(d.ideal, c.ideal))
                dup = true;
        if (!dup)
            uniq.push_back(c);
    }
    std::sort(uniq.begin(), uniq.end(), [](const CellularComponent& a, const CellularComponent& b) { return a.J < b.J; });
    return uniq;
}

inline std::vector<Witness> potentially_associated(const BinomialIdeal& I, std::size_t budget = 100000)
{
    std::vector<Witness> out;
    for (auto& cell : cellular_decompose(I)) {
        const int n = I.n;
        Subset Jbar = complement(cell.J, n);
        auto G = groebner_basis(cell.ideal);
        for (auto& u : detail::standard_exponents(G, Jbar, budget)) {
            auto b = class_boundedness(cell.ideal, u, cell.J, budget);
            if (b.kind == Boundedness::Kind::unknown)
                throw resource_exceeded("boundedness budget exhausted");
            if (!b.is_bounded())
                continue;
            Witness w{u, witness_character(cell.ideal, u, cell.J)};
            bool dup = false;
            for (auto& o : out)
                if (o.meso == w.meso)
                    dup = true;
            if (!dup)
                out.push_back(w);
        }
    }
    std::sort(out.begin(), out.end(), [](const Witness& a, const Witness& b) {
        if (!(a.meso == b.meso))
            return a.meso < b.meso;
        return a.u < b.u;
    });
    return out;
}

// the |L_sat / L| primes over a mesoprime
inline std::vector<BinomialPrime> character_extensions(const Mesoprime& m)
{
    const int n = m.n;
    if (m.L.rank() == 0)
        return {m};
    auto sd = saturation_data(m.L);
    // sigma on factor[i] * adapted[i]
    std::vector<std::vector<Scalar>> choices;
    for (std::size_t i = 0; i < sd.adapted.size(); ++i) {
        std::vector<Integer> v;
        for (auto& x : sd.adapted[i])
            v.push_back(x * sd.factor[i]);
        Scalar s = character_value(m.L, m.sigma, v);
        choices.push_back(roots_of(s, sd.factor[i]));
    }
    // HNF basis of L_sat in terms of the adapted basis
    auto h = hermite(IntegerMatrix::from_rows(sd.adapted, n));
    std::vector<BinomialPrime> out;
    std::vector<std::size_t> idx(choices.size(), 0);
    for (;;) {
        std::vector<Scalar> on_adapted;
        for (std::size_t i = 0; i < choices.size(); ++i)
            on_adapted.push_back(choices[i][idx[i]]);
        std::vector<Scalar> vals;
        for (std::size_t r = 0; r < h.rank; ++r) {
            Scalar s(1);
            for (std::size_t k = 0; k < on_adapted.size(); ++k)
                if (h.U(r, k) != 0)
                    s = s * on_adapted[k].pow(h.U(r, k));
            vals.push_back(s);
        }
        out.push_back({n, m.J, sd.saturated, vals});
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == choices[i].size()) {
            idx[i] = 0;
            ++i;
        }
        if (i == idx.size())
            break;
    }
    return out;
}

inline std::vector<BinomialPrime> candidate_primes(const BinomialIdeal& I, std::size_t budget = 100000)
{
    std::vector<BinomialPrime> out;
    for (auto& w : potentially_associated(I, budget))
        for (auto& p : character_extensions(w.meso))
            if (std::find(out.begin(), out.end(), p) == out.end())
                out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

// P = I' + <x^u : class of u not L-bounded>, I' = (I + I_rho + K) : x_J^inf
inline PrimaryComponent primary_component(const BinomialIdeal& I, const BinomialPrime& p, std::optional<int> cutoff = std::nullopt, std::size_t budget = 20000)
{
    const int n = I.n;
    Subset Jbar = complement(p.J, n);
    auto extra = lattice_generators(n, p.L, p.sigma);
    if (cutoff && !Jbar.empty()) {
        // generators of m_J^e
        std::vector<Exponent> mons;
        Exponent e(n, 0);
        auto rec = [&](auto&& self, std::size_t k, int left) -> void {
            if (k + 1 == Jbar.size()) {
                e[Jbar[k]] = left;
                mons.push_back(e);
                e[Jbar[k]] = 0;
                return;
            }
            for (int a = 0; a <= left; ++a) {
                e[Jbar[k]] = a;
                self(self, k + 1, left - a);
            }
            e[Jbar[k]] = 0;
        };
        rec(rec, 0, *cutoff);
        for (auto& m : mons)
            extra.push_back(Binomial::monomial(m));
    }
    auto Iprime = saturate_at(I.with(extra), p.J);
    auto G = groebner_basis(Iprime);
    PrimaryComponent out{p, Iprime, cutoff};
    if (G.is_unit())
        return out;
    std::vector<Binomial> bad;
    std::set<Exponent> seen;
    std::deque<Exponent> q;
    Exponent z(n, 0);
    q.push_back(z);
    seen.insert(z);
    std::size_t good = 0;
    while (!q.empty()) {
        Exponent u = q.front();
        q.pop_front();
        if (G.contains_monomial(u))
            continue;
        auto b = class_boundedness(Iprime, u, p.J, budget);
        if (b.kind == Boundedness::Kind::unknown)
            throw resource_exceeded("boundedness budget exhausted");
        if (!b.is_bounded() || !(b.stabilizer == p.L)) {
            bad.push_back(Binomial::monomial(u));
            continue;
        }
        if (++good > budget) {
            if (!cutoff)
                throw need_cutoff("prime appears embedded; a monomial cutoff is required");
            throw resource_exceeded("primary component search exceeded the budget");
        }
        for (int i : Jbar) {
            Exponent v = u;
            ++v[i];
            if (seen.insert(v).second)
                q.push_back(v);
        }
    }
    out.ideal = reduced_groebner(Iprime.with(bad));
    return out;
}

inline PrimaryComponent monomial_primary_component(const BinomialIdeal& I, const Subset& J, std::size_t budget = 20000)
{
    BinomialPrime p{I.n, J, Lattice(I.n), {}};
    auto P = prime_ideal(p);
    if (!ideal_contains(P, I))
        throw not_minimal("the monomial prime does not contain the ideal");
    try {
        return primary_component(I, p, std::nullopt, budget);
    } catch (const need_cutoff&) {
        throw not_minimal("the monomial prime is not minimal over the ideal");
    }
}

struct PrimaryVerdict {
    enum class Kind { primary, not_primary, unknown };
    Kind kind = Kind::unknown;
    std::size_t orbits = 0;
    std::string reason;
    std::string name() const { return kind == Kind::primary ? "Primary" : kind == Kind::not_primary ? "NotPrimary" : "Unknown"; }
};

// exact once the standard monomials on the complement of J are finite
inline PrimaryVerdict is_primary(const BinomialIdeal& I, const BinomialPrime& p, std::size_t budget = 20000)
{
    const int n = I.n;
    PrimaryVerdict v;
    auto fail = [&](std::string why) {
        v.kind = PrimaryVerdict::Kind::not_primary;
        v.reason = std::move(why);
        return v;
    };
    auto G = groebner_basis(I);
    if (G.is_unit())
        return fail("unit ideal");
    auto P = groebner_basis(prime_ideal(p, I.vars));
    for (auto& g : I.generators)
        if (!P.contains(g))
            return fail("generator " + binomial_string(g, I.vars) + " outside the prime");
    Subset Jbar = complement(p.J, n);
    for (int i : Jbar)
        if (!groebner_basis(saturate(I, unit_exp(n, i))).is_unit())
            return fail("variable " + I.vars[i] + " is not nilpotent");
    if (!(groebner_basis(saturate_at(I, p.J)) == G))
        return fail("a variable of the cell is a zerodivisor");
    for (auto& g : lattice_generators(n, p.L, p.sigma))
        if (!G.contains(g))
            return fail("lattice binomial " + binomial_string(g, I.vars) + " missing");
    std::vector<Exponent> std_exps;
    try {
        std_exps = detail::standard_exponents(G, Jbar, budget);
    } catch (const resource_exceeded&) {
        v.kind = PrimaryVerdict::Kind::unknown;
        v.reason = "budget";
        return v;
    }
    std::set<std::vector<Exponent>> orbits;
    for (auto& u : std_exps) {
        auto b = class_boundedness(I, u, p.J, budget);
        if (b.kind == Boundedness::Kind::unknown) {
            v.kind = PrimaryVerdict::Kind::unknown;
            v.reason = "budget";
            return v;
        }
        if (!b.is_bounded() || !(b.stabilizer == p.L))
            return fail("class of " + monomial_string(u, I.vars) + " has the wrong stabilizer");
        orbits.insert(b.states);
    }
    v.kind = PrimaryVerdict::Kind::primary;
    v.orbits = orbits.size();
    return v;
}

struct DecompositionOptions {
    int degree_bound = 0;        // 0: automatic
    std::size_t budget = 20000;
    int max_cutoff = 64;
};

struct Decomposition {
    std::vector<PrimaryComponent> components;
    std::vector<BinomialPrime> candidates;
    TruncationVerdict verification;
    int degree_bound = 0;
    int cutoff = 0;
};

inline std::vector<BinomialIdeal> ideals_of(const std::vector<PrimaryComponent>& cs)
{
    std::vector<BinomialIdeal> out;
    for (auto& c : cs)
        out.push_back(c.ideal);
    return out;
}

inline Decomposition primary_decompose(const BinomialIdeal& I, const DecompositionOptions& opt = {})
{
    Decomposition out;
    if (is_unit_ideal(I))
        return out;
    out.candidates = candidate_primes(I, opt.budget);
    const int maxdeg = std::max(1, I.max_degree());
    int e = maxdeg;
    for (;;) {
        std::vector<PrimaryComponent> comps;
        for (auto& p : out.candidates) {
            auto c = primary_component(I, p, e, opt.budget);
            if (!is_unit_ideal(c.ideal))
                comps.push_back(c);
        }
        int bound = std::max({opt.degree_bound, 2 * maxdeg, e + maxdeg});
        auto v = graded_truncation_compare(I, ideals_of(comps), bound);
        if (v.kind == TruncationVerdict::Kind::equal) {
            // greedy redundancy pruning, most embedded candidates first
            std::vector<std::size_t> order(comps.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return comps[a].prime.J.size() < comps[b].prime.J.size();
            });
            std::vector<bool> keep(comps.size(), true);
            for (auto k : order) {
                keep[k] = false;
                std::vector<BinomialIdeal> rest;
                for (std::size_t j = 0; j < comps.size(); ++j)
                    if (keep[j])
                        rest.push_back(comps[j].ideal);
                if (rest.empty() || graded_truncation_compare(I, rest, bound).kind != TruncationVerdict::Kind::equal)
                    keep[k] = true;
            }
            for (std::size_t j = 0; j < comps.size(); ++j)
                if (keep[j])
                    out.components.push_back(comps[j]);
            out.verification = graded_truncation_compare(I, ideals_of(out.components), bound);
            out.degree_bound = bound;
            out.cutoff = e;
            break;
        }
        if (v.kind == TruncationVerdict::Kind::incomparable)
            throw verification_failed("component does not contain the ideal: " + v.witness_text);
        if (e >= opt.max_cutoff)
            throw verification_failed("intersection exceeds the ideal at cutoff " + std::to_string(e) + ": " + v.witness_text);
        e *= 2;
    }
    for (auto& c : out.components) {
        auto pv = is_primary(c.ideal, c.prime, opt.budget);
        if (pv.kind != PrimaryVerdict::Kind::primary)
            throw verification_failed("component for prime over J fails the primary check: " + pv.reason);
    }
    return out;
}

inline std::vector<BinomialPrime> associated_primes(const BinomialIdeal& I, const DecompositionOptions& opt = {})
{
    std::vector<BinomialPrime> out;
    for (auto& c : primary_decompose(I, opt).components)
        out.push_back(c.prime);
    return out;
}

}  // namespace binom
