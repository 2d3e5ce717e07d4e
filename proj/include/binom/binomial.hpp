#pragma once

#include "integer.hpp"
#include "lattice.hpp"
#include "scalar.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace binom {

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

inline bool divides(const Exponent& a, const Exponent& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

inline Exponent lcm_exp(const Exponent& a, const Exponent& b)
{
    Exponent c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = std::max(a[i], b[i]);
    return c;
}

inline Exponent operator+(const Exponent& a, const Exponent& b)
{
    Exponent c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[i] + b[i];
    return c;
}

inline Exponent operator-(const Exponent& a, const Exponent& b)
{
    Exponent c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[i] - b[i];
    return c;
}

inline bool is_zero_exp(const Exponent& e)
{
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

inline Exponent unit_exp(int n, int i)
{
    Exponent e(n, 0);
    e[i] = 1;
    return e;
}

class MonomialOrder {
public:
    enum class Kind { degrevlex, lex, deglex };

    MonomialOrder() = default;
    explicit MonomialOrder(Kind k, std::vector<int> perm = {}, std::vector<int> eliminate = {})
        : kind_(k), perm_(std::move(perm)), elim_(std::move(eliminate))
    {
    }
    static MonomialOrder degrevlex() { return MonomialOrder(Kind::degrevlex); }
    static MonomialOrder lex() { return MonomialOrder(Kind::lex); }
    static MonomialOrder deglex() { return MonomialOrder(Kind::deglex); }
    // block order: degree in the given variables first, then degrevlex
    static MonomialOrder elimination(std::vector<int> vars) { return MonomialOrder(Kind::degrevlex, {}, std::move(vars)); }

    Kind kind() const { return kind_; }
    const std::vector<int>& permutation() const { return perm_; }
    const std::vector<int>& eliminated() const { return elim_; }

    std::string name() const
    {
        std::string s = kind_ == Kind::degrevlex ? "degrevlex" : kind_ == Kind::lex ? "lex" : "deglex";
        if (!elim_.empty())
            s = "elim+" + s;
        return s;
    }

    // -1, 0, 1 as a is smaller, equal, larger than b
    int compare(const Exponent& a, const Exponent& b) const
    {
        const int n = static_cast<int>(a.size());
        if (!elim_.empty()) {
            int da = 0, db = 0;
            for (int i : elim_) {
                da += a[i];
                db += b[i];
            }
            if (da != db)
                return da < db ? -1 : 1;
        }
        auto var = [&](int k) { return perm_.empty() ? k : perm_[k]; };
        if (kind_ != Kind::lex) {
            int da = total_degree(a), db = total_degree(b);
            if (da != db)
                return da < db ? -1 : 1;
        }
        if (kind_ == Kind::degrevlex) {
            for (int k = n - 1; k >= 0; --k) {
                int i = var(k);
                if (a[i] != b[i])
                    return a[i] > b[i] ? -1 : 1;
            }
            return 0;
        }
        for (int k = 0; k < n; ++k) {
            int i = var(k);
            if (a[i] != b[i])
                return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }
    bool less(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }

private:
    Kind kind_ = Kind::degrevlex;
    std::vector<int> perm_;
    std::vector<int> elim_;
};

// x^u - lambda x^v; lambda == 0 encodes the monomial x^u
struct Binomial {
    Exponent u, v;
    Scalar lambda;

    Binomial() = default;
    Binomial(Exponent u_, Exponent v_, Scalar l = Scalar(1)) : u(std::move(u_)), v(std::move(v_)), lambda(std::move(l))
    {
        if (u.size() != v.size())
            throw invariant_violation("binomial exponents differ in length");
        for (auto x : u)
            if (x < 0)
                throw invariant_violation("negative exponent");
        for (auto x : v)
            if (x < 0)
                throw invariant_violation("negative exponent");
        if (lambda.is_zero())
            v.assign(u.size(), 0);
        else if (u == v && lambda.is_one())
            throw invariant_violation("binomial x^u - x^u is zero");
    }
    static Binomial monomial(Exponent u)
    {
        Exponent v(u.size(), 0);
        return Binomial(std::move(u), std::move(v), Scalar(0));
    }
    bool is_monomial() const { return lambda.is_zero(); }
    int degree() const { return is_monomial() ? total_degree(u) : std::max(total_degree(u), total_degree(v)); }
    bool operator==(const Binomial& o) const { return u == o.u && v == o.v && lambda == o.lambda; }
};

struct BinomialIdeal {
    int n = 0;
    std::vector<std::string> vars;
    std::vector<Binomial> generators;
    int zeta_order = 1;

    BinomialIdeal() = default;
    explicit BinomialIdeal(int n_, std::vector<Binomial> gens = {}, std::vector<std::string> names = {})
        : n(n_), vars(std::move(names)), generators(std::move(gens))
    {
        if (vars.empty())
            vars = default_names(n);
        for (auto& g : generators) {
            if (static_cast<int>(g.u.size()) != n)
                throw invariant_violation("generator exponent length differs from n");
            zeta_order = std::lcm(zeta_order, g.lambda.order());
        }
    }

    static std::vector<std::string> default_names(int n)
    {
        std::vector<std::string> v;
        const char* abc = "xyzw";
        if (n <= 4) {
            for (int i = 0; i < n; ++i)
                v.emplace_back(1, abc[i]);
        } else {
            for (int i = 0; i < n; ++i)
                v.push_back("x" + std::to_string(i + 1));
        }
        return v;
    }

    int max_degree() const
    {
        int d = 0;
        for (auto& g : generators)
            d = std::max(d, g.degree());
        return d;
    }
    BinomialIdeal with(std::vector<Binomial> more) const
    {
        auto g = generators;
        for (auto& b : more)
            g.push_back(std::move(b));
        return BinomialIdeal(n, std::move(g), vars);
    }
};

inline std::string monomial_string(const Exponent& e, const std::vector<std::string>& vars)
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += vars[i];
        if (e[i] > 1)
            s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

inline std::string binomial_string(const Binomial& b, const std::vector<std::string>& vars)
{
    std::string s = monomial_string(b.u, vars);
    if (b.is_monomial())
        return s;
    Scalar neg = -b.lambda;
    std::string coeff = neg.str();
    bool simple = neg.terms().size() == 1;
    std::string tail = monomial_string(b.v, vars);
    if (simple && coeff == "1")
        return s + " + " + tail;
    if (simple && coeff == "-1")
        return s + " - " + tail;
    if (simple && coeff[0] == '-')
        return s + " - " + coeff.substr(1) + (tail == "1" ? "" : "*" + tail);
    return s + " + (" + coeff + ")" + (tail == "1" ? "" : "*" + tail);
}

}  // namespace binom
