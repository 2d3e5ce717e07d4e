#pragma once

// Buchberger's algorithm specialised to binomials: every S-pair and every reduction
// step keeps at most two terms, so the basis stays binomial.

#include "binomial.hpp"

#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace binom {

struct Term {
    Scalar coeff;
    Exponent exp;
};

// x^lead - lambda x^tail with lead > tail, or the monomial x^lead
struct GbElement {
    Exponent lead, tail;
    Scalar lambda;
    bool monomial = false;

    Binomial as_binomial() const { return monomial ? Binomial::monomial(lead) : Binomial(lead, tail, lambda); }
    bool operator==(const GbElement& o) const
    {
        return monomial == o.monomial && lead == o.lead && (monomial || (tail == o.tail && lambda == o.lambda));
    }
};

class GroebnerBasis {
public:
    GroebnerBasis() = default;
    GroebnerBasis(int n, MonomialOrder ord, std::vector<GbElement> elems, std::vector<std::string> vars = {})
        : n_(n), ord_(std::move(ord)), elems_(std::move(elems)), vars_(std::move(vars))
    {
        if (vars_.empty())
            vars_ = BinomialIdeal::default_names(n_);
    }

    int nvars() const { return n_; }
    const MonomialOrder& order() const { return ord_; }
    const std::vector<GbElement>& elements() const { return elems_; }
    const std::vector<std::string>& vars() const { return vars_; }

    bool is_unit() const { return elems_.size() == 1 && elems_[0].monomial && is_zero_exp(elems_[0].lead); }
    bool is_zero() const { return elems_.empty(); }

    // one reducer whose lead divides e
    const GbElement* reducer(const Exponent& e) const
    {
        for (auto& g : elems_)
            if (divides(g.lead, e))
                return &g;
        return nullptr;
    }

    std::optional<Term> reduce(Term t) const
    {
        if (t.coeff.is_zero())
            return std::nullopt;
        while (const GbElement* g = reducer(t.exp)) {
            if (g->monomial)
                return std::nullopt;
            t.exp = t.exp - g->lead + g->tail;
            t.coeff = t.coeff * g->lambda;
        }
        return t;
    }

    bool contains_monomial(const Exponent& e) const { return !reduce({Scalar(1), e}).has_value(); }

    bool contains(const Binomial& b) const
    {
        auto r1 = reduce({Scalar(1), b.u});
        if (b.is_monomial())
            return !r1;
        auto r2 = reduce({b.lambda, b.v});
        if (!r1 && !r2)
            return true;
        if (!r1 || !r2)
            return false;
        return r1->exp == r2->exp && r1->coeff == r2->coeff;
    }

    BinomialIdeal to_ideal() const
    {
        std::vector<Binomial> g;
        for (auto& e : elems_)
            g.push_back(e.as_binomial());
        return BinomialIdeal(n_, std::move(g), vars_);
    }

    bool operator==(const GroebnerBasis& o) const { return n_ == o.n_ && elems_ == o.elems_; }

private:
    int n_ = 0;
    MonomialOrder ord_;
    std::vector<GbElement> elems_;
    std::vector<std::string> vars_;
};

namespace detail {

// c1 x^e1 + c2 x^e2 as a normalized element (nullopt when zero)
inline std::optional<GbElement> make_element(std::optional<Term> a, std::optional<Term> b, const MonomialOrder& ord)
{
    if (a && a->coeff.is_zero())
        a.reset();
    if (b && b->coeff.is_zero())
        b.reset();
    if (!a && !b)
        return std::nullopt;
    if (!a || !b) {
        const Term& t = a ? *a : *b;
        return GbElement{t.exp, Exponent(t.exp.size(), 0), Scalar(0), true};
    }
    if (a->exp == b->exp) {
        Scalar c = a->coeff + b->coeff;
        if (c.is_zero())
            return std::nullopt;
        return GbElement{a->exp, Exponent(a->exp.size(), 0), Scalar(0), true};
    }
    if (ord.less(a->exp, b->exp))
        std::swap(a, b);
    return GbElement{a->exp, b->exp, -(b->coeff / a->coeff), false};
}

inline std::optional<GbElement> reduce_element(const GbElement& g, const GroebnerBasis& G, const MonomialOrder& ord)
{
    auto a = G.reduce({Scalar(1), g.lead});
    if (g.monomial)
        return make_element(a, std::nullopt, ord);
    auto b = G.reduce({-g.lambda, g.tail});
    return make_element(a, b, ord);
}

inline std::optional<GbElement> spair(const GbElement& f, const GbElement& g)
{
    if (f.monomial && g.monomial)
        return std::nullopt;
    Exponent L = lcm_exp(f.lead, g.lead);
    // (L/f.lead) f - (L/g.lead) g
    Exponent zero(L.size(), 0);
    if (f.monomial)
        return GbElement{L - g.lead + g.tail, zero, Scalar(0), true};
    if (g.monomial)
        return GbElement{L - f.lead + f.tail, zero, Scalar(0), true};
    // -lambda x^{L-a+b} + mu x^{L-c+d}
    return GbElement{L - g.lead + g.tail, L - f.lead + f.tail, f.lambda / g.lambda, false};
}

}  // namespace detail

inline GroebnerBasis groebner_basis(const BinomialIdeal& I, const MonomialOrder& ord = MonomialOrder::degrevlex())
{
    const int n = I.n;
    std::vector<GbElement> G;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    bool unit = false;

    auto current = [&] { return GroebnerBasis(n, ord, G); };
    auto add = [&](std::optional<GbElement> e) {
        if (!e)
            return;
        auto r = detail::reduce_element(*e, current(), ord);
        if (!r)
            return;
        if (r->monomial && is_zero_exp(r->lead)) {
            unit = true;
            return;
        }
        if (!r->monomial) {
            // normalize lambda lives in the ideal's context
            r->lambda = r->lambda.lifted(std::lcm(r->lambda.order(), I.zeta_order));
        }
        G.push_back(*r);
        for (std::size_t i = 0; i + 1 < G.size(); ++i)
            pairs.emplace_back(i, G.size() - 1);
    };

    for (auto& b : I.generators) {
        std::optional<Term> t1 = Term{Scalar(1), b.u};
        std::optional<Term> t2;
        if (!b.is_monomial())
            t2 = Term{-b.lambda, b.v};
        add(detail::make_element(t1, t2, ord));
        if (unit)
            break;
    }

    auto pending = [&](std::size_t i, std::size_t j) {
        if (i > j)
            std::swap(i, j);
        for (auto& p : pairs)
            if (p.first == i && p.second == j)
                return true;
        return false;
    };

    while (!unit && !pairs.empty()) {
        // normal selection strategy
        std::size_t best = 0;
        Exponent bl = lcm_exp(G[pairs[0].first].lead, G[pairs[0].second].lead);
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            Exponent l = lcm_exp(G[pairs[k].first].lead, G[pairs[k].second].lead);
            if (ord.less(l, bl)) {
                bl = l;
                best = k;
            }
        }
        auto [i, j] = pairs[best];
        pairs.erase(pairs.begin() + best);
        const GbElement& f = G[i];
        const GbElement& g = G[j];
        // product criterion
        bool coprime = true;
        for (int v = 0; v < n; ++v)
            if (f.lead[v] > 0 && g.lead[v] > 0)
                coprime = false;
        if (coprime)
            continue;
        // chain criterion
        bool chain = false;
        for (std::size_t k = 0; k < G.size() && !chain; ++k) {
            if (k == i || k == j)
                continue;
            if (divides(G[k].lead, bl) && !pending(i, k) && !pending(j, k))
                chain = true;
        }
        if (chain)
            continue;
        add(detail::spair(f, g));
    }

    if (unit)
        return GroebnerBasis(n, ord, {GbElement{Exponent(n, 0), Exponent(n, 0), Scalar(0), true}}, I.vars);

    // minimalize
    std::vector<GbElement> M;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j || !divides(G[j].lead, G[i].lead))
                continue;
            if (G[j].lead != G[i].lead || j < i)
                redundant = true;
        }
        if (!redundant)
            M.push_back(G[i]);
    }
    // inter-reduce tails
    GroebnerBasis leads(n, ord, M);
    for (auto& g : M) {
        if (g.monomial)
            continue;
        auto t = leads.reduce({g.lambda, g.tail});
        if (!t) {
            g.monomial = true;
            g.tail.assign(n, 0);
            g.lambda = Scalar(0);
        } else {
            g.tail = t->exp;
            g.lambda = t->coeff;
        }
    }
    std::sort(M.begin(), M.end(), [&](const GbElement& a, const GbElement& b) { return ord.less(a.lead, b.lead); });
    return GroebnerBasis(n, ord, std::move(M), I.vars);
}

inline BinomialIdeal reduced_groebner(const BinomialIdeal& I, const MonomialOrder& ord = MonomialOrder::degrevlex())
{
    auto r = groebner_basis(I, ord).to_ideal();
    r.zeta_order = std::lcm(r.zeta_order, I.zeta_order);
    return r;
}

inline std::optional<Term> normal_form(const Term& t, const GroebnerBasis& G) { return G.reduce(t); }

inline bool ideal_equal(const BinomialIdeal& a, const BinomialIdeal& b)
{
    return groebner_basis(a) == groebner_basis(b);
}

inline bool ideal_contains(const BinomialIdeal& big, const BinomialIdeal& small)
{
    auto G = groebner_basis(big);
    for (auto& g : small.generators)
        if (!G.contains(g))
            return false;
    return true;
}

inline bool is_unit_ideal(const BinomialIdeal& I) { return groebner_basis(I).is_unit(); }

inline BinomialIdeal unit_ideal(int n, std::vector<std::string> vars = {})
{
    return BinomialIdeal(n, {Binomial::monomial(Exponent(n, 0))}, std::move(vars));
}

namespace detail {

inline Exponent extend(const Exponent& e, int t)
{
    Exponent r = e;
    r.push_back(t);
    return r;
}

inline Exponent shrink(const Exponent& e)
{
    return Exponent(e.begin(), e.end() - 1);
}

// t-free part of a GB over n+1 variables under the elimination order
inline BinomialIdeal eliminate_last(const BinomialIdeal& big, const std::vector<std::string>& vars, int zeta, const Exponent& divide_by)
{
    const int n = big.n - 1;
    auto G = groebner_basis(big, MonomialOrder::elimination({n}));
    std::vector<Binomial> out;
    for (auto& g : G.elements()) {
        if (g.lead[n] != 0 || (!g.monomial && g.tail[n] != 0))
            continue;
        Exponent u = shrink(g.lead) - divide_by;
        if (g.monomial) {
            out.push_back(Binomial::monomial(u));
        } else {
            out.push_back(Binomial(u, shrink(g.tail) - divide_by, g.lambda));
        }
    }
    BinomialIdeal r(n, std::move(out), vars);
    r.zeta_order = std::lcm(r.zeta_order, zeta);
    return reduced_groebner(r);
}

}  // namespace detail

// (I : x^m), or (I : x^m^inf) when saturate is set
inline BinomialIdeal quotient_or_saturate(const BinomialIdeal& I, const Exponent& m, bool saturate)
{
    const int n = I.n;
    if (is_zero_exp(m))
        return reduced_groebner(I);
    auto G = groebner_basis(I);
    if (G.is_unit())
        return G.to_ideal();
    std::vector<Binomial> gens;
    if (saturate) {
        for (auto& g : G.elements()) {
            if (g.monomial)
                gens.push_back(Binomial::monomial(detail::extend(g.lead, 0)));
            else
                gens.push_back(Binomial(detail::extend(g.lead, 0), detail::extend(g.tail, 0), g.lambda));
        }
        gens.push_back(Binomial(detail::extend(m, 1), Exponent(n + 1, 0), Scalar(1)));
        BinomialIdeal big(n + 1, gens);
        big.zeta_order = I.zeta_order;
        return detail::eliminate_last(big, I.vars, I.zeta_order, Exponent(n, 0));
    }
    for (auto& g : G.elements()) {
        if (g.monomial)
            gens.push_back(Binomial::monomial(detail::extend(g.lead, 1)));
        else
            gens.push_back(Binomial(detail::extend(g.lead, 1), detail::extend(g.tail, 1), g.lambda));
    }
    // (1 - t) x^m
    gens.push_back(Binomial(detail::extend(m, 0), detail::extend(m, 1), Scalar(1)));
    BinomialIdeal big(n + 1, gens);
    big.zeta_order = I.zeta_order;
    return detail::eliminate_last(big, I.vars, I.zeta_order, m);
}

inline BinomialIdeal colon(const BinomialIdeal& I, const Exponent& m) { return quotient_or_saturate(I, m, false); }
inline BinomialIdeal saturate(const BinomialIdeal& I, const Exponent& m) { return quotient_or_saturate(I, m, true); }

inline Exponent indicator(int n, const Subset& J)
{
    Exponent e(n, 0);
    for (int j : J)
        e[j] = 1;
    return e;
}

inline BinomialIdeal saturate_at(const BinomialIdeal& I, const Subset& J) { return saturate(I, indicator(I.n, J)); }

// m_J: variables outside J
inline std::vector<Binomial> variables_outside(int n, const Subset& J)
{
    std::vector<Binomial> g;
    for (int i : complement(J, n))
        g.push_back(Binomial::monomial(unit_exp(n, i)));
    return g;
}

}  // namespace binom
