#pragma once

#include "decomposition.hpp"
#include "lattice.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace binom {

struct step_underflow : error {
    using error::error;
};

struct Reaction {
    Exponent a, b;
    Rational k_fwd, k_rev;
};

struct ReactionNetwork {
    std::vector<std::string> species;
    std::vector<Reaction> reactions;

    ReactionNetwork() = default;
    ReactionNetwork(std::vector<std::string> names, std::vector<Reaction> rs) : species(std::move(names)), reactions(std::move(rs))
    {
        const std::size_t n = species.size();
        for (auto& r : reactions) {
            if (r.a.size() != n || r.b.size() != n)
                throw invariant_violation("complex has the wrong number of species");
            if (r.a == r.b)
                throw invariant_violation("reaction with equal complexes");
            for (std::size_t i = 0; i < n; ++i)
                if (r.a[i] < 0 || r.b[i] < 0)
                    throw invariant_violation("negative stoichiometric coefficient");
            if (r.k_fwd <= 0 || r.k_rev <= 0)
                throw invariant_violation("rate constants must be positive");
        }
    }
    std::size_t n() const { return species.size(); }
};

namespace detail {

template <class T>
T monomial_value(const std::vector<T>& x, const Exponent& e)
{
    T v(1);
    for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k)
            v *= x[i];
    return v;
}

inline double as_double(const Rational& q) { return q.convert_to<double>(); }
inline Rational as_rate(const Rational& q, Rational*) { return q; }
inline double as_rate(const Rational& q, double*) { return as_double(q); }

}  // namespace detail

// sum over reactions of (b - a)(k_fwd x^a - k_rev x^b)
template <class T>
std::vector<T> mass_action_rhs(const ReactionNetwork& net, const std::vector<T>& x)
{
    std::vector<T> out(net.n(), T(0));
    for (auto& r : net.reactions) {
        T kf = detail::as_rate(r.k_fwd, static_cast<T*>(nullptr));
        T kr = detail::as_rate(r.k_rev, static_cast<T*>(nullptr));
        T flux = kf * detail::monomial_value(x, r.a) - kr * detail::monomial_value(x, r.b);
        for (std::size_t i = 0; i < net.n(); ++i)
            if (r.b[i] != r.a[i])
                out[i] += T(r.b[i] - r.a[i]) * flux;
    }
    return out;
}

inline BinomialIdeal detailed_balance_ideal(const ReactionNetwork& net)
{
    std::vector<Binomial> g;
    for (auto& r : net.reactions)
        g.push_back(Binomial(r.a, r.b, Scalar(r.k_rev / r.k_fwd)));
    return BinomialIdeal(static_cast<int>(net.n()), std::move(g), net.species);
}

struct StoichiometryData {
    std::vector<std::vector<Integer>> S_basis;
    std::vector<std::vector<Integer>> conserved_basis;
};

inline StoichiometryData conserved_quantities(const ReactionNetwork& net)
{
    const std::size_t n = net.n();
    std::vector<std::vector<Integer>> rows;
    for (auto& r : net.reactions) {
        std::vector<Integer> v;
        for (std::size_t i = 0; i < n; ++i)
            v.emplace_back(r.b[i] - r.a[i]);
        rows.push_back(v);
    }
    StoichiometryData s;
    s.S_basis = Lattice(static_cast<int>(n), rows).basis_vectors();
    if (rows.empty()) {
        s.conserved_basis = IntegerMatrix::identity(n).row_list();
        return s;
    }
    s.conserved_basis = kernel_saturated(IntegerMatrix::from_rows(rows, n)).basis_vectors();
    return s;
}

// log of a positive rational as exponents over primes
using LogVector = std::map<Integer, Rational>;

inline LogVector log_factor(const Rational& q)
{
    if (q <= 0)
        throw invariant_violation("log of a nonpositive rate");
    LogVector out;
    auto add = [&](Integer m, int sign) {
        for (Integer p = 2; p * p <= m; ++p)
            while (m % p == 0) {
                out[p] += sign;
                m /= p;
            }
        if (m > 1)
            out[m] += sign;
    };
    add(numerator_of(q), 1);
    add(denominator_of(q), -1);
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

struct Equilibrium {
    bool feasible = false;
    std::vector<LogVector> log_point;  // log x_i over primes
    std::vector<double> point;
    std::vector<Integer> circuit;      // y with y M = 0 and y R != 0
    // rational part times prime powers with exponents in (0, 1)
    std::vector<std::string> exact() const
    {
        std::vector<std::string> out;
        for (auto& l : log_point) {
            Rational r = 1;
            std::string s;
            for (auto& [p, e] : l) {
                Integer fl = floor_div(numerator_of(e), denominator_of(e));
                Rational frac = e - fl;
                Rational pw{Integer(boost::multiprecision::pow(p, abs(fl).convert_to<unsigned>()))};
                r = fl < 0 ? r / pw : r * pw;
                if (frac != 0)
                    s += "*" + to_string(p) + "^(" + to_string(frac) + ")";
            }
            if (s.empty())
                out.push_back(to_string(r));
            else
                out.push_back(r == 1 ? s.substr(1) : to_string(r) + s);
        }
        return out;
    }
};

// (b - a) . log x = log(k_fwd / k_rev) for every reaction
inline Equilibrium detailed_balanced_equilibrium(const ReactionNetwork& net)
{
    const std::size_t n = net.n(), m = net.reactions.size();
    std::vector<std::vector<Rational>> M(m, std::vector<Rational>(n));
    std::vector<LogVector> R(m);
    std::vector<std::vector<Rational>> Y(m, std::vector<Rational>(m));  // row operations
    for (std::size_t r = 0; r < m; ++r) {
        auto& re = net.reactions[r];
        for (std::size_t i = 0; i < n; ++i)
            M[r][i] = re.b[i] - re.a[i];
        R[r] = log_factor(re.k_fwd / re.k_rev);
        Y[r][r] = 1;
    }
    auto axpy = [](LogVector& y, const Rational& f, const LogVector& x) {
        for (auto& [p, e] : x) {
            y[p] += f * e;
            if (y[p] == 0)
                y.erase(p);
        }
    };
    // reduced echelon form with pivots taken from the last column down
    std::size_t row = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    for (std::size_t cc = n; cc-- > 0 && row < m;) {
        std::size_t p = row;
        while (p < m && M[p][cc] == 0)
            ++p;
        if (p == m)
            continue;
        std::swap(M[row], M[p]);
        std::swap(R[row], R[p]);
        std::swap(Y[row], Y[p]);
        Rational f = M[row][cc];
        for (auto& x : M[row])
            x /= f;
        for (auto& [q, e] : R[row])
            e /= f;
        for (auto& x : Y[row])
            x /= f;
        for (std::size_t i = 0; i < m; ++i)
            if (i != row && M[i][cc] != 0) {
                Rational g = M[i][cc];
                for (std::size_t k = 0; k < n; ++k)
                    M[i][k] -= g * M[row][k];
                axpy(R[i], -g, R[row]);
                for (std::size_t k = 0; k < m; ++k)
                    Y[i][k] -= g * Y[row][k];
            }
        pivots.push_back({row, cc});
        ++row;
    }
    Equilibrium eq;
    for (std::size_t i = row; i < m; ++i)
        if (!R[i].empty()) {
            Integer den = 1;
            for (auto& y : Y[i])
                den = integer_lcm(den, denominator_of(y));
            for (auto& y : Y[i])
                eq.circuit.push_back(numerator_of(y * den));
            return eq;
        }
    eq.feasible = true;
    eq.log_point.assign(n, {});
    for (auto& [r, c] : pivots)
        eq.log_point[c] = R[r];
    for (auto& l : eq.log_point) {
        double v = 0;
        for (auto& [p, e] : l)
            v += detail::as_double(e) * std::log(p.convert_to<double>());
        eq.point.push_back(std::exp(v));
    }
    return eq;
}

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    double dt = 0;
    double max_drift = 0;
    std::size_t rejected = 0;
};

inline std::vector<double> rk4_step(const ReactionNetwork& net, const std::vector<double>& x, double h)
{
    auto f = [&](const std::vector<double>& y) { return mass_action_rhs(net, y); };
    auto add = [](const std::vector<double>& y, const std::vector<double>& k, double s) {
        std::vector<double> o(y);
        for (std::size_t i = 0; i < o.size(); ++i)
            o[i] += s * k[i];
        return o;
    };
    auto k1 = f(x);
    auto k2 = f(add(x, k1, h / 2));
    auto k3 = f(add(x, k2, h / 2));
    auto k4 = f(add(x, k3, h));
    std::vector<double> out(x);
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

inline Trajectory simulate(const ReactionNetwork& net, const std::vector<double>& x0, double t_end, double dt, double min_dt = 1e-12, std::size_t record_every = 1)
{
    if (x0.size() != net.n())
        throw invariant_violation("initial state has the wrong length");
    for (double v : x0)
        if (!(v > 0))
            throw invariant_violation("initial state must be positive");
    if (!(dt > 0))
        throw invariant_violation("step size must be positive");
    auto cons = conserved_quantities(net).conserved_basis;
    auto conserved = [&](const std::vector<double>& x) {
        std::vector<double> c;
        for (auto& row : cons) {
            double s = 0;
            for (std::size_t i = 0; i < x.size(); ++i)
                s += row[i].convert_to<double>() * x[i];
            c.push_back(s);
        }
        return c;
    };
    Trajectory tr;
    tr.dt = dt;
    tr.times.push_back(0);
    tr.states.push_back(x0);
    auto c0 = conserved(x0);
    std::vector<double> x = x0;
    double t = 0;
    std::size_t steps = 0;
    const double eps = dt * 1e-6;
    while (t < t_end - eps) {
        double h = t_end - t - dt < eps ? t_end - t : dt;
        std::vector<double> y;
        for (;;) {
            y = rk4_step(net, x, h);
            if (std::all_of(y.begin(), y.end(), [](double v) { return v >= 0; }))
                break;
            ++tr.rejected;
            h /= 2;
            if (h < min_dt)
                throw step_underflow("step size fell below the minimum at t = " + std::to_string(t));
        }
        x = y;
        t += h;
        ++steps;
        auto c = conserved(x);
        for (std::size_t i = 0; i < c.size(); ++i)
            tr.max_drift = std::max(tr.max_drift, std::abs(c[i] - c0[i]));
        if (steps % record_every == 0 || t >= t_end - eps) {
            tr.times.push_back(t);
            tr.states.push_back(x);
        }
    }
    return tr;
}

struct BoundaryPrime {
    BinomialPrime prime;
    Subset zero_species;     // forced to vanish
    bool positive_real = false;  // has zeros with positive real coordinates on J
};

struct BoundaryFace {
    Subset support;  // species allowed nonzero
    bool has_zeros = false;
    bool positive_real = false;
};

struct BoundaryReport {
    std::vector<BoundaryPrime> primes;
    std::vector<BoundaryFace> faces;
};

inline bool positive_real_character(const BinomialPrime& p)
{
    for (auto& v : p.sigma) {
        auto c = v.to_complex();
        if (std::abs(c.imag()) > 1e-12 || c.real() <= 0)
            return false;
    }
    return true;
}

// every zero set of a prime over the support is positive real when the character is
inline BoundaryReport boundary_equilibria(const ReactionNetwork& net)
{
    BoundaryReport rep;
    auto I = detailed_balance_ideal(net);
    const int n = I.n;
    for (auto& p : associated_primes(I))
        rep.primes.push_back({p, complement(p.J, n), positive_real_character(p)});
    for (unsigned mask = 0; mask + 1 < (1u << n); ++mask) {
        Subset F;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1)
                F.push_back(i);
        auto R = saturate_at(I.with(variables_outside(n, F)), F);
        BoundaryFace f{F, !is_unit_ideal(R), false};
        if (f.has_zeros)
            for (auto& w : potentially_associated(R))
                for (auto& p : character_extensions(w.meso))
                    if (p.J == F && positive_real_character(p))
                        f.positive_real = true;
        rep.faces.push_back(f);
    }
    return rep;
}

// sup-norm distance from the trajectory to the face where species outside F vanish
inline double face_distance(const Trajectory& tr, const Subset& F)
{
    double best = INFINITY;
    for (auto& x : tr.states) {
        double d = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!std::binary_search(F.begin(), F.end(), static_cast<int>(i)))
                d = std::max(d, std::abs(x[i]));
        best = std::min(best, d);
    }
    return best;
}

}  // namespace binom
