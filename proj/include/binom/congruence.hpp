#pragma once

#include "groebner.hpp"

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace binom {

// all exponents 0 <= e <= box componentwise
inline std::vector<Exponent> box_points(const Exponent& box)
{
    std::vector<Exponent> out;
    Exponent e(box.size(), 0);
    for (;;) {
        out.push_back(e);
        std::size_t i = 0;
        while (i < e.size() && e[i] == box[i]) {
            e[i] = 0;
            ++i;
        }
        if (i == e.size())
            break;
        ++e[i];
    }
    return out;
}

struct CongruenceClasses {
    Exponent box;
    std::vector<std::vector<Exponent>> classes;  // non-monomial classes, each sorted
    std::vector<Exponent> monomial_class;
    std::map<Exponent, std::size_t> class_of;    // point -> index into classes
    std::map<Exponent, Scalar> scale;            // x^u == scale[u] * x^(first element of its class)
    std::string order = "degrevlex";

    bool same_class(const Exponent& u, const Exponent& v) const
    {
        auto a = class_of.find(u), b = class_of.find(v);
        return a != class_of.end() && b != class_of.end() && a->second == b->second;
    }
    // lambda with x^u == lambda x^v
    std::optional<Scalar> scalar(const Exponent& u, const Exponent& v) const
    {
        if (!same_class(u, v))
            return std::nullopt;
        return scale.at(u) / scale.at(v);
    }
};

inline CongruenceClasses congruence_classes(const BinomialIdeal& I, const Exponent& box, std::optional<Subset> invert = std::nullopt)
{
    if (static_cast<int>(box.size()) != I.n)
        throw invariant_violation("box length differs from n");
    BinomialIdeal base = invert ? saturate_at(I, *invert) : I;
    auto G = groebner_basis(base);
    CongruenceClasses out;
    out.box = box;
    std::map<Exponent, std::size_t> by_nf;
    std::vector<Scalar> rep_coeff;
    for (auto& u : box_points(box)) {
        auto nf = G.reduce({Scalar(1), u});
        if (!nf) {
            out.monomial_class.push_back(u);
            continue;
        }
        auto [it, fresh] = by_nf.emplace(nf->exp, out.classes.size());
        if (fresh) {
            out.classes.emplace_back();
            rep_coeff.push_back(nf->coeff);
        }
        out.classes[it->second].push_back(u);
        out.class_of[u] = it->second;
        // x^u == c_u x^w and x^rep == c_rep x^w
        out.scale[u] = nf->coeff / rep_coeff[it->second];
    }
    for (auto& c : out.classes) {
        std::sort(c.begin(), c.end());
        Scalar base = out.scale[c[0]];
        for (auto& u : c)
            out.scale[u] = out.scale[u] / base;
    }
    return out;
}

struct Boundedness {
    enum class Kind { bounded, unbounded, monomial, unknown };
    Kind kind = Kind::unknown;
    Lattice stabilizer;               // bounded: sublattice of Z^J
    Exponent pump;                    // unbounded: u ~ u + pump (up to a scalar)
    std::vector<Exponent> states;     // explored exponents on the complement of J
    std::size_t nodes = 0;

    bool is_bounded() const { return kind == Kind::bounded; }
    std::string name() const
    {
        switch (kind) {
        case Kind::bounded: return "Bounded";
        case Kind::unbounded: return "Unbounded";
        case Kind::monomial: return "Monomial";
        default: return "Unknown";
        }
    }
};

namespace detail {

struct Move {
    Exponent from, to;  // J-bar parts
    Exponent shift;     // full displacement to - from
};

inline std::vector<Move> localized_moves(const GroebnerBasis& G, const Subset& Jbar, std::vector<Exponent>& monomial_gates)
{
    std::vector<Move> moves;
    for (auto& g : G.elements()) {
        Exponent a, b;
        for (int i : Jbar)
            a.push_back(g.lead[i]);
        if (g.monomial) {
            monomial_gates.push_back(a);
            continue;
        }
        for (int i : Jbar)
            b.push_back(g.tail[i]);
        moves.push_back({a, b, g.tail - g.lead});
        moves.push_back({b, a, g.lead - g.tail});
    }
    return moves;
}

}  // namespace detail

// Is the class of u in the localization at the variables in J bounded modulo Z^J?
// Breadth-first exploration of the reversible move system on the complement of J; a visited state
// strictly dominated by a newer one yields a pump, and exhaustion yields the stabilizer.
inline Boundedness class_boundedness(const BinomialIdeal& I, const Exponent& u, const Subset& J, std::size_t budget = 1000000)
{
    const int n = I.n;
    Subset Jbar = complement(J, n);
    auto G = groebner_basis(saturate_at(I, J));
    std::vector<Exponent> gates;
    auto moves = detail::localized_moves(G, Jbar, gates);

    Boundedness out;
    auto proj = [&](const Exponent& e) {
        Exponent s;
        for (int i : Jbar)
            s.push_back(e[i]);
        return s;
    };
    auto hits_gate = [&](const Exponent& s) {
        for (auto& m : gates)
            if (divides(m, s))
                return true;
        return false;
    };
    // state -> full exponent first reaching it
    std::map<Exponent, Exponent> first;
    std::vector<Exponent> order;
    std::deque<Exponent> queue;
    std::vector<std::vector<Integer>> cycle;

    Exponent s0 = proj(u);
    if (hits_gate(s0)) {
        out.kind = Boundedness::Kind::monomial;
        out.states = {s0};
        return out;
    }
    first[s0] = u;
    order.push_back(s0);
    queue.push_back(s0);
    while (!queue.empty()) {
        Exponent s = queue.front();
        queue.pop_front();
        const Exponent& w = first[s];
        for (auto& mv : moves) {
            if (!divides(mv.from, s))
                continue;
            Exponent t = s - mv.from + mv.to;
            Exponent w2 = w + mv.shift;
            auto it = first.find(t);
            if (it != first.end()) {
                std::vector<Integer> diff;
                for (int i = 0; i < n; ++i)
                    diff.emplace_back(w2[i] - it->second[i]);
                cycle.push_back(std::move(diff));
                continue;
            }
            if (hits_gate(t)) {
                out.kind = Boundedness::Kind::monomial;
                out.states = order;
                out.nodes = order.size();
                return out;
            }
            for (auto& [v, wv] : first) {
                if (divides(v, t)) {
                    out.kind = Boundedness::Kind::unbounded;
                    out.pump = w2 - wv;
                    out.states = order;
                    out.states.push_back(t);
                    out.nodes = order.size() + 1;
                    return out;
                }
            }
            first[t] = w2;
            order.push_back(t);
            queue.push_back(t);
            if (order.size() > budget) {
                out.kind = Boundedness::Kind::unknown;
                out.nodes = order.size();
                return out;
            }
        }
    }
    out.kind = Boundedness::Kind::bounded;
    out.stabilizer = Lattice(n, cycle, J);
    std::sort(order.begin(), order.end());
    out.states = order;
    out.nodes = order.size();
    return out;
}

// sparse polynomials, used for witnesses
using Polynomial = std::map<Exponent, Scalar>;

inline std::string polynomial_string(const Polynomial& p, const std::vector<std::string>& vars)
{
    if (p.empty())
        return "0";
    std::string s;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        std::string c = it->second.str();
        std::string m = monomial_string(it->first, vars);
        bool compound = it->second.terms().size() > 1;
        std::string term;
        if (compound)
            term = "(" + c + ")" + (m == "1" ? "" : "*" + m);
        else if (m == "1")
            term = c;
        else if (c == "1")
            term = m;
        else if (c == "-1")
            term = "-" + m;
        else
            term = c + "*" + m;
        if (s.empty())
            s = term;
        else if (term[0] == '-')
            s += " - " + term.substr(1);
        else
            s += " + " + term;
    }
    return s;
}

inline std::vector<Exponent> monomials_up_to(int n, int d)
{
    std::vector<Exponent> out;
    Exponent e(n, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n) {
            out.push_back(e);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[i] = k;
            self(self, i + 1, left - k);
        }
        e[i] = 0;
    };
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) {
        int da = total_degree(a), db = total_degree(b);
        return da != db ? da < db : a < b;
    });
    return out;
}

struct TruncationVerdict {
    enum class Kind { equal, lhs_strictly_smaller, incomparable };
    Kind kind = Kind::equal;
    Polynomial witness;
    std::string witness_text;
    int degree_bound = 0;
    std::string name() const
    {
        return kind == Kind::equal ? "Equal" : kind == Kind::incomparable ? "Incomparable" : "LhsStrictlySmaller";
    }
};

namespace detail {

// echelon basis over sparse rows keyed by column
class SparseEchelon {
public:
    void insert(std::map<int, Scalar> row)
    {
        reduce(row);
        if (row.empty())
            return;
        Scalar lead = row.begin()->second.inverse();
        for (auto& [c, v] : row)
            v = v * lead;
        pivots_[row.begin()->first] = std::move(row);
    }
    std::size_t rank() const { return pivots_.size(); }
    // reduced row echelon rows
    std::map<int, std::map<int, Scalar>> reduced() const
    {
        auto P = pivots_;
        for (auto it = P.rbegin(); it != P.rend(); ++it) {
            for (auto& [pc, row] : P) {
                if (pc == it->first)
                    continue;
                auto f = row.find(it->first);
                if (f == row.end())
                    continue;
                Scalar k = f->second;
                for (auto& [c, v] : it->second) {
                    Scalar nv = row[c] - k * v;
                    if (nv.is_zero())
                        row.erase(c);
                    else
                        row[c] = nv;
                }
            }
        }
        return P;
    }

private:
    void reduce(std::map<int, Scalar>& row) const
    {
        bool changed = true;
        while (changed && !row.empty()) {
            changed = false;
            for (auto& [c, v] : row) {
                auto p = pivots_.find(c);
                if (p == pivots_.end())
                    continue;
                Scalar k = v;
                for (auto& [pc, pv] : p->second) {
                    Scalar nv = row[pc] - k * pv;
                    if (nv.is_zero())
                        row.erase(pc);
                    else
                        row[pc] = nv;
                }
                changed = true;
                break;
            }
        }
    }
    std::map<int, std::map<int, Scalar>> pivots_;
};

inline Polynomial reduce_polynomial(const Polynomial& f, const GroebnerBasis& G)
{
    Polynomial r;
    for (auto& [e, c] : f) {
        auto t = G.reduce({c, e});
        if (!t)
            continue;
        Scalar v = r[t->exp] + t->coeff;
        if (v.is_zero())
            r.erase(t->exp);
        else
            r[t->exp] = v;
    }
    return r;
}

inline Polynomial as_polynomial(const Binomial& b)
{
    Polynomial p;
    p[b.u] = Scalar(1);
    if (!b.is_monomial()) {
        Scalar v = p[b.v] - b.lambda;
        if (v.is_zero())
            p.erase(b.v);
        else
            p[b.v] = v;
    }
    return p;
}

}  // namespace detail

// Compares lhs with the intersection of rhs on polynomials of degree <= bound.
inline TruncationVerdict graded_truncation_compare(const BinomialIdeal& lhs, const std::vector<BinomialIdeal>& rhs, int bound)
{
    const int n = lhs.n;
    TruncationVerdict out;
    out.degree_bound = bound;
    std::vector<GroebnerBasis> GP;
    for (auto& P : rhs)
        GP.push_back(groebner_basis(P));
    for (auto& g : lhs.generators)
        for (auto& G : GP)
            if (!G.contains(g)) {
                out.kind = TruncationVerdict::Kind::incomparable;
                out.witness = detail::as_polynomial(g);
                out.witness_text = polynomial_string(out.witness, lhs.vars);
                return out;
            }
    auto mons = monomials_up_to(n, bound);
    std::map<Exponent, int> col;
    for (std::size_t i = 0; i < mons.size(); ++i)
        col[mons[i]] = static_cast<int>(i);

    auto GI = groebner_basis(lhs);
    std::size_t standard = 0;
    for (auto& m : mons)
        if (!GI.reducer(m))
            ++standard;

    detail::SparseEchelon E;
    for (auto& G : GP) {
        std::map<Exponent, std::map<int, Scalar>> rows;
        for (std::size_t i = 0; i < mons.size(); ++i) {
            auto t = G.reduce({Scalar(1), mons[i]});
            if (t)
                rows[t->exp][static_cast<int>(i)] = t->coeff;
        }
        for (auto& [e, r] : rows)
            E.insert(r);
    }
    if (E.rank() == standard)
        return out;

    // the intersection is larger: exhibit a kernel vector outside lhs
    out.kind = TruncationVerdict::Kind::lhs_strictly_smaller;
    auto R = E.reduced();
    std::vector<bool> is_pivot(mons.size(), false);
    for (auto& [pc, row] : R)
        is_pivot[pc] = true;
    for (std::size_t f = 0; f < mons.size(); ++f) {
        if (is_pivot[f])
            continue;
        Polynomial v;
        v[mons[f]] = Scalar(1);
        for (auto& [pc, row] : R) {
            auto it = row.find(static_cast<int>(f));
            if (it != row.end())
                v[mons[pc]] = -it->second;
        }
        if (!detail::reduce_polynomial(v, GI).empty()) {
            out.witness = v;
            out.witness_text = polynomial_string(v, lhs.vars);
            break;
        }
    }
    return out;
}

}  // namespace binom
