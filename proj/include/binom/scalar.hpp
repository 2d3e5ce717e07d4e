#pragma once

// Elements of Q(zeta_m) as rational polynomials in zeta reduced modulo the m-th cyclotomic polynomial.

#include "integer.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace binom {

struct unsupported_character : error {
    using error::error;
};

namespace cyclo {

using Poly = std::vector<Rational>;  // coefficient of x^i at index i

inline void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty())
        return {};
    Poly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0)
                c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

// a = q*b + r
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b)
{
    trim(a);
    Poly q;
    const long nb = static_cast<long>(b.size());
    if (static_cast<long>(a.size()) < nb)
        return {q, a};
    q.assign(a.size() - b.size() + 1, Rational(0));
    const Rational& lead = b.back();
    for (long k = static_cast<long>(a.size()) - 1; k >= nb - 1; --k) {
        Rational f = a[k] / lead;
        if (f == 0)
            continue;
        q[k - (nb - 1)] = f;
        for (long j = 0; j < nb; ++j)
            a[k - (nb - 1) + j] -= f * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline int euler_phi(int m)
{
    int r = m;
    for (int p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            while (m % p == 0)
                m /= p;
            r -= r / p;
        }
    if (m > 1)
        r -= r / m;
    return r;
}

inline const Poly& phi(int m)
{
    static std::mutex mu;
    static std::map<int, Poly> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(m); it != cache.end())
        return it->second;
    // divisors in increasing order, each from x^d - 1 over its proper divisors
    for (int d = 1; d <= m; ++d) {
        if (m % d || cache.count(d))
            continue;
        Poly p(d + 1);
        p[0] = -1;
        p[d] = 1;
        for (int e = 1; e < d; ++e)
            if (d % e == 0)
                p = divmod(p, cache.at(e)).first;
        cache[d] = p;
    }
    return cache.at(m);
}

}  // namespace cyclo

class Scalar {
public:
    Scalar() : m_(1), c_{Rational(0)} {}
    Scalar(long q) : m_(1), c_{Rational(q)} {}
    Scalar(const Rational& q) : m_(1), c_{q} {}
    Scalar(const Integer& q) : m_(1), c_{Rational(q)} {}

    static Scalar root_of_unity(int m, long k)
    {
        Scalar s;
        s.m_ = m;
        long e = ((k % m) + m) % m;
        cyclo::Poly p(e + 1);
        p[e] = 1;
        s.set_poly(p);
        return s;
    }
    // sum of q * zeta_m^k
    static Scalar from_terms(int m, const std::vector<std::pair<Rational, long>>& terms)
    {
        Scalar s;
        s.m_ = m;
        cyclo::Poly p;
        for (auto& [q, k] : terms) {
            long e = ((k % m) + m) % m;
            if (static_cast<long>(p.size()) <= e)
                p.resize(e + 1);
            p[e] += q;
        }
        s.set_poly(p);
        return s;
    }

    int order() const { return m_; }
    bool is_zero() const
    {
        for (auto& x : c_)
            if (x != 0)
                return false;
        return true;
    }
    bool is_one() const { return *this == Scalar(1); }

    std::optional<Rational> as_rational() const
    {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0)
                return std::nullopt;
        return c_[0];
    }

    Scalar lifted(int M) const
    {
        if (M == m_)
            return *this;
        if (M % m_ != 0)
            throw invariant_violation("scalar lift to incompatible order");
        const int f = M / m_;
        cyclo::Poly p;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0)
                continue;
            std::size_t e = i * f;
            if (p.size() <= e)
                p.resize(e + 1);
            p[e] += c_[i];
        }
        Scalar s;
        s.m_ = M;
        s.set_poly(p);
        return s;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return combine(a, b, 1); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return combine(a, b, -1); }
    Scalar operator-() const
    {
        Scalar s = *this;
        for (auto& x : s.c_)
            x = -x;
        return s;
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b)
    {
        const int M = std::lcm(a.m_, b.m_);
        Scalar x = a.lifted(M), y = b.lifted(M);
        if (M == 1)
            return Scalar(x.c_[0] * y.c_[0]);
        Scalar s;
        s.m_ = M;
        s.set_poly(cyclo::mul(x.poly(), y.poly()));
        return s;
    }
    Scalar inverse() const
    {
        if (is_zero())
            throw error("division by zero scalar");
        if (m_ == 1)
            return Scalar(Rational(1) / c_[0]);
        // extended Euclid: a*f + b*phi = g (constant)
        cyclo::Poly r0 = cyclo::phi(m_), r1 = poly();
        cyclo::Poly s0, s1{Rational(1)};
        while (r1.size() > 1) {
            auto [q, r] = cyclo::divmod(r0, r1);
            cyclo::Poly ns = s0;
            auto qs = cyclo::mul(q, s1);
            if (ns.size() < qs.size())
                ns.resize(qs.size());
            for (std::size_t i = 0; i < qs.size(); ++i)
                ns[i] -= qs[i];
            cyclo::trim(ns);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(ns);
        }
        Rational g = r1[0];
        for (auto& x : s1)
            x /= g;
        Scalar s;
        s.m_ = m_;
        s.set_poly(s1);
        return s;
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar pow(Integer e) const
    {
        Scalar base = e < 0 ? inverse() : *this;
        if (e < 0)
            e = -e;
        Scalar r = Scalar(1).lifted(m_);
        while (e > 0) {
            if (e % 2 == 1)
                r = r * base;
            base = base * base;
            e /= 2;
        }
        return r;
    }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        const int M = std::lcm(a.m_, b.m_);
        return a.lifted(M).c_ == b.lifted(M).c_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    // total order among scalars of one context
    friend bool operator<(const Scalar& a, const Scalar& b)
    {
        const int M = std::lcm(a.m_, b.m_);
        return a.lifted(M).c_ < b.lifted(M).c_;
    }

    // nonzero (coefficient, power of zeta_m)
    std::vector<std::pair<Rational, long>> terms() const
    {
        std::vector<std::pair<Rational, long>> t;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0)
                t.emplace_back(c_[i], static_cast<long>(i));
        return t;
    }

    std::complex<double> to_complex() const
    {
        std::complex<double> z = 0;
        const double pi = std::acos(-1.0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0)
                z += c_[i].convert_to<double>() * std::polar(1.0, 2 * pi * static_cast<double>(i) / m_);
        return z;
    }

    // s = q * zeta_M^k with q rational, M = lcm(order, 2)
    std::optional<std::pair<Rational, long>> as_rational_times_root() const
    {
        if (is_zero())
            return std::nullopt;
        const int M = std::lcm(m_, 2);
        Scalar s = lifted(M);
        for (long k = 0; k < M; ++k) {
            Scalar t = s * root_of_unity(M, -k);
            if (auto q = t.as_rational())
                return std::make_pair(*q, k);
        }
        return std::nullopt;
    }

    std::string str() const
    {
        auto t = terms();
        if (t.empty())
            return "0";
        std::string out;
        for (auto& [q, k] : t) {
            std::string qs = to_string(q);
            bool neg = qs[0] == '-';
            if (neg)
                qs = qs.substr(1);
            if (!out.empty())
                out += neg ? " - " : " + ";
            else if (neg)
                out += "-";
            if (k == 0) {
                out += qs;
            } else {
                if (qs != "1")
                    out += qs + "*";
                out += "z" + std::to_string(m_);
                if (k != 1)
                    out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    static Scalar combine(const Scalar& a, const Scalar& b, int sign)
    {
        const int M = std::lcm(a.m_, b.m_);
        Scalar x = a.lifted(M);
        Scalar y = b.lifted(M);
        for (std::size_t i = 0; i < x.c_.size(); ++i)
            x.c_[i] += sign > 0 ? y.c_[i] : Rational(-y.c_[i]);
        return x;
    }
    cyclo::Poly poly() const
    {
        cyclo::Poly p = c_;
        cyclo::trim(p);
        return p;
    }
    void set_poly(cyclo::Poly p)
    {
        const auto& ph = cyclo::phi(m_);
        if (p.size() >= ph.size())
            p = cyclo::divmod(p, ph).second;
        p.resize(ph.size() - 1);
        c_ = std::move(p);
    }

    int m_;
    std::vector<Rational> c_;
};

// d-th roots of s, as a list of d scalars; throws if a root leaves the cyclotomic model
inline std::vector<Scalar> roots_of(const Scalar& s, const Integer& dd)
{
    const long d = static_cast<long>(dd);
    if (d == 1)
        return {s};
    auto qk = s.as_rational_times_root();
    if (!qk)
        throw unsupported_character("character value " + s.str() + " is not a rational times a root of unity");
    auto [q, k] = *qk;
    int M = std::lcm(s.order(), 2);
    if (q < 0) {
        q = -q;
        k = (k + M / 2) % M;
    }
    auto iroot = [&](const Integer& z) -> std::optional<Integer> {
        // integer d-th root by bisection
        Integer lo = 0, hi = z + 1;
        while (hi - lo > 1) {
            Integer mid = (lo + hi) / 2;
            if (boost::multiprecision::pow(mid, static_cast<unsigned>(d)) <= z)
                lo = mid;
            else
                hi = mid;
        }
        if (boost::multiprecision::pow(lo, static_cast<unsigned>(d)) == z)
            return lo;
        return std::nullopt;
    };
    auto rn = iroot(numerator_of(q));
    auto rd = iroot(denominator_of(q));
    if (!rn || !rd)
        throw unsupported_character("root of " + to_string(q) + " is irrational");
    Rational base = Rational(*rn) / Rational(*rd);
    const int N = M * static_cast<int>(d);
    std::vector<Scalar> out;
    for (long t = 0; t < d; ++t)
        out.push_back(Scalar(base) * Scalar::root_of_unity(N, k + static_cast<long>(M) * t));
    return out;
}

}  // namespace binom
