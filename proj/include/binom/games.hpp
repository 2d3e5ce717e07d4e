#pragma once

#include "binomial.hpp"
#include "lattice.hpp"
#include "lp.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace binom {

struct bad_octal : error {
    using error::error;
};
struct misere_unsupported : error {
    using error::error;
};
struct not_squarefree : error {
    using error::error;
};
struct not_free : error {
    using error::error;
};
struct not_disjoint : error {
    using error::error;
};
struct out_of_box : error {
    using error::error;
};

struct ExponentHash {
    std::size_t operator()(const Exponent& e) const
    {
        std::size_t h = 1469598103934665603ull;
        for (int x : e)
            h = (h ^ static_cast<std::size_t>(x + 0x9e37)) * 1099511628211ull;
        return h;
    }
};

struct RuleSet {
    int d = 0;
    std::vector<Exponent> gamma;
};

inline std::string position_string(const Exponent& p)
{
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

inline RuleSet nim_rules(int d)
{
    RuleSet r{d, {}};
    for (int j = 0; j < d; ++j) {
        r.gamma.push_back(unit_exp(d, j));
        for (int i = 0; i < j; ++i) {
            Exponent g(d, 0);
            g[j] = 1;
            g[i] = -1;
            r.gamma.push_back(g);
        }
    }
    std::sort(r.gamma.begin(), r.gamma.end());
    return r;
}

// digit k, bit 1: destroy a k-heap; bit 2: j -> j-k; bit 4: j -> i + (j-k-i)
inline RuleSet octal_rules(const std::string& code, int d)
{
    std::string s = code;
    if (s.size() >= 2 && s[0] == '0' && s[1] == '.')
        s = s.substr(1);
    if (s.empty() || s[0] != '.')
        throw bad_octal("octal code must start with '.': " + code);
    std::set<Exponent> out;
    for (std::size_t k = 1; k < s.size(); ++k) {
        char c = s[k];
        if (c < '0' || c > '7')
            throw bad_octal("invalid octal digit '" + std::string(1, c) + "' in " + code);
        int digit = c - '0';
        int K = static_cast<int>(k);
        if (digit & 1 && K <= d)
            out.insert(unit_exp(d, K - 1));
        if (digit & 2)
            for (int j = K + 1; j <= d; ++j) {
                Exponent g(d, 0);
                g[j - 1] += 1;
                g[j - K - 1] -= 1;
                out.insert(g);
            }
        if (digit & 4)
            for (int j = K + 2; j <= d; ++j)
                for (int i = 1; i <= j - K - i; ++i) {
                    Exponent g(d, 0);
                    g[j - 1] += 1;
                    g[i - 1] -= 1;
                    g[j - K - i - 1] -= 1;
                    out.insert(g);
                }
    }
    return {d, {out.begin(), out.end()}};
}

inline RuleSet explicit_rules(int d, std::vector<Exponent> gamma)
{
    for (auto& g : gamma) {
        if (static_cast<int>(g.size()) != d)
            throw invariant_violation("rule has the wrong dimension");
        if (is_zero_exp(g))
            throw invariant_violation("zero is not a rule");
    }
    std::sort(gamma.begin(), gamma.end());
    gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
    return {d, std::move(gamma)};
}

// integer functional with l(g) >= 1 on every rule
inline std::optional<std::vector<long>> rule_functional(const RuleSet& r)
{
    std::vector<std::vector<Integer>> gens;
    for (auto& g : r.gamma)
        gens.push_back(to_integers(g));
    auto c = find_positive_functional(gens, r.d);
    if (!c)
        return std::nullopt;
    Integer den = 1;
    for (auto& x : *c)
        den = integer_lcm(den, denominator_of(x));
    std::vector<long> out;
    for (auto& x : *c)
        out.push_back(static_cast<long>((numerator_of(x) * (den / denominator_of(x))).convert_to<long>()));
    return out;
}

inline long apply_functional(const std::vector<long>& l, const Exponent& p)
{
    long s = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        s += l[i] * p[i];
    return s;
}

inline std::vector<Exponent> box_positions(const Exponent& box)
{
    std::vector<Exponent> out;
    Exponent p(box.size(), 0);
    for (;;) {
        out.push_back(p);
        std::size_t i = 0;
        while (i < p.size() && p[i] == box[i]) {
            p[i] = 0;
            ++i;
        }
        if (i == p.size())
            break;
        ++p[i];
    }
    return out;
}

inline Exponent uniform_box(int d, int b) { return Exponent(d, b); }

namespace detail {

// points q >= 0 with l(q) <= M; nullopt past the cap
inline std::optional<std::vector<Exponent>> functional_region(const std::vector<long>& l, long M, std::size_t cap)
{
    const int d = static_cast<int>(l.size());
    std::vector<Exponent> out;
    Exponent p(d, 0);
    bool over = false;
    auto rec = [&](auto&& self, int k, long left) -> void {
        if (over)
            return;
        if (k == d) {
            out.push_back(p);
            if (out.size() > cap)
                over = true;
            return;
        }
        for (int a = 0; static_cast<long>(a) * l[k] <= left; ++a) {
            p[k] = a;
            self(self, k + 1, left - a * l[k]);
            if (over)
                return;
        }
        p[k] = 0;
    };
    rec(rec, 0, M);
    if (over)
        return std::nullopt;
    return out;
}

}  // namespace detail

struct RuleSetVerdict {
    enum class Kind { valid, not_pointed, path_fail, unknown };
    Kind kind = Kind::unknown;
    Exponent witness;
    std::string name() const
    {
        switch (kind) {
        case Kind::valid:
            return "Valid";
        case Kind::not_pointed:
            return "NotPointed";
        case Kind::path_fail:
            return "PathFail";
        default:
            return "Unknown";
        }
    }
};

inline RuleSetVerdict validate_ruleset(const RuleSet& r, const Exponent& box, std::size_t cap = 2000000)
{
    RuleSetVerdict v;
    auto l = rule_functional(r);
    if (!l) {
        v.kind = RuleSetVerdict::Kind::not_pointed;
        return v;
    }
    for (int i = 0; i < r.d; ++i)
        if ((*l)[i] <= 0 && box[i] > 0) {
            v.kind = RuleSetVerdict::Kind::path_fail;
            v.witness = unit_exp(r.d, i);
            return v;
        }
    auto forward = [&](const std::vector<Exponent>& region) {
        std::unordered_map<Exponent, bool, ExponentHash> seen;
        for (auto& p : region)
            seen[p] = false;
        std::deque<Exponent> q;
        Exponent z(r.d, 0);
        seen[z] = true;
        q.push_back(z);
        while (!q.empty()) {
            Exponent p = q.front();
            q.pop_front();
            for (auto& g : r.gamma) {
                Exponent n = p + g;
                auto it = seen.find(n);
                if (it == seen.end() || it->second)
                    continue;
                it->second = true;
                q.push_back(n);
            }
        }
        return seen;
    };
    auto positions = box_positions(box);
    auto in_box = forward(positions);
    std::vector<Exponent> missing;
    for (auto& p : positions)
        if (!in_box[p])
            missing.push_back(p);
    if (missing.empty()) {
        v.kind = RuleSetVerdict::Kind::valid;
        return v;
    }
    auto region = detail::functional_region(*l, apply_functional(*l, box), cap);
    if (!region)
        return v;
    auto full = forward(*region);
    std::sort(missing.begin(), missing.end(), [&](const Exponent& a, const Exponent& b) {
        long la = apply_functional(*l, a), lb = apply_functional(*l, b);
        return la != lb ? la < lb : a < b;
    });
    for (auto& p : missing)
        if (!full[p]) {
            v.kind = RuleSetVerdict::Kind::path_fail;
            v.witness = p;
            return v;
        }
    v.kind = RuleSetVerdict::Kind::valid;
    return v;
}

struct LatticeGame {
    RuleSet rules;
    std::vector<Exponent> defeated;
    std::vector<long> functional;

    LatticeGame() = default;
    LatticeGame(RuleSet r, std::vector<Exponent> D = {}) : rules(std::move(r)), defeated(std::move(D))
    {
        if (rules.gamma.empty())
            throw invariant_violation("empty rule set");
        auto l = rule_functional(rules);
        if (!l)
            throw invariant_violation("rule set does not generate a pointed semigroup");
        functional = *l;
        for (long x : functional)
            if (x <= 0)
                throw invariant_violation("some unit position has no path to 0");
        std::sort(defeated.begin(), defeated.end());
        for (auto& q : defeated) {
            if (static_cast<int>(q.size()) != rules.d || std::any_of(q.begin(), q.end(), [](int x) { return x < 0; }))
                throw invariant_violation("defeated position outside the board cone");
            for (auto& g : rules.gamma) {
                Exponent p = q - g;
                if (std::all_of(p.begin(), p.end(), [](int x) { return x >= 0; }) && !is_defeated(p))
                    throw invariant_violation("defeated positions are not an order ideal");
            }
        }
    }

    int d() const { return rules.d; }
    bool is_defeated(const Exponent& p) const { return std::binary_search(defeated.begin(), defeated.end(), p); }
    bool is_position(const Exponent& p) const { return std::all_of(p.begin(), p.end(), [](int x) { return x >= 0; }); }
    bool on_board(const Exponent& p) const { return is_position(p) && !is_defeated(p); }
    bool normal_play() const { return defeated.empty(); }
};

inline LatticeGame nim_game(int d, bool misere = false)
{
    return LatticeGame(nim_rules(d), misere ? std::vector<Exponent>{Exponent(d, 0)} : std::vector<Exponent>{});
}

enum class Status : std::int8_t { winning, losing, unknown, defeated };

inline std::string status_name(Status s)
{
    switch (s) {
    case Status::winning:
        return "W";
    case Status::losing:
        return "L";
    case Status::defeated:
        return "D";
    default:
        return "?";
    }
}

struct WinLossTable {
    Exponent box;
    bool exact = false;  // every box position certified
    std::unordered_map<Exponent, Status, ExponentHash> status_of;

    Status status(const Exponent& p) const
    {
        auto it = status_of.find(p);
        return it == status_of.end() ? Status::unknown : it->second;
    }
    bool in_box(const Exponent& p) const
    {
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] < 0 || p[i] > box[i])
                return false;
        return true;
    }
    std::vector<Exponent> with_status(Status s) const
    {
        std::vector<Exponent> out;
        for (auto& p : box_positions(box))
            if (status(p) == s)
                out.push_back(p);
        return out;
    }
    std::vector<Exponent> winning() const { return with_status(Status::winning); }
    std::vector<Exponent> losing() const { return with_status(Status::losing); }
    std::vector<Exponent> unknown() const { return with_status(Status::unknown); }
};

namespace detail {

inline std::vector<Exponent> game_region(const LatticeGame& g, const Exponent& box, std::size_t cap, bool& closed)
{
    auto r = functional_region(g.functional, apply_functional(g.functional, box), cap);
    closed = r.has_value();
    auto out = r ? *r : box_positions(box);
    std::sort(out.begin(), out.end(), [&](const Exponent& a, const Exponent& b) {
        long la = apply_functional(g.functional, a), lb = apply_functional(g.functional, b);
        return la != lb ? la < lb : a < b;
    });
    return out;
}

}  // namespace detail

// positions in increasing functional order; a move target outside the region is unknown
inline WinLossTable compute_win_loss(const LatticeGame& g, const Exponent& box, std::size_t cap = 2000000)
{
    WinLossTable t;
    t.box = box;
    bool closed = false;
    auto region = detail::game_region(g, box, cap, closed);
    t.status_of.reserve(region.size() * 2);
    for (auto& p : region) {
        if (g.is_defeated(p)) {
            t.status_of[p] = Status::defeated;
            continue;
        }
        bool win_target = false, unknown = false;
        for (auto& m : g.rules.gamma) {
            Exponent q = p - m;
            if (!g.on_board(q))
                continue;
            auto it = t.status_of.find(q);
            Status s = it == t.status_of.end() ? Status::unknown : it->second;
            if (s == Status::winning) {
                win_target = true;
                break;
            }
            if (s == Status::unknown)
                unknown = true;
        }
        t.status_of[p] = win_target ? Status::losing : unknown ? Status::unknown : Status::winning;
    }
    t.exact = t.unknown().empty();
    return t;
}

// status of one position, exact
inline Status position_status(const LatticeGame& g, const Exponent& p)
{
    if (!g.on_board(p))
        return Status::defeated;
    auto t = compute_win_loss(g, p, 50000000);
    return t.status(p);
}

// -1 marks an uncertified value
inline std::unordered_map<Exponent, int, ExponentHash> grundy_values(const LatticeGame& g, const Exponent& box, std::size_t cap = 2000000)
{
    if (!g.normal_play())
        throw misere_unsupported("Grundy values need normal play");
    bool closed = false;
    auto region = detail::game_region(g, box, cap, closed);
    std::unordered_map<Exponent, int, ExponentHash> G;
    G.reserve(region.size() * 2);
    for (auto& p : region) {
        std::vector<bool> seen;
        bool unknown = false;
        for (auto& m : g.rules.gamma) {
            Exponent q = p - m;
            if (!g.is_position(q))
                continue;
            auto it = G.find(q);
            if (it == G.end() || it->second < 0) {
                unknown = true;
                break;
            }
            if (static_cast<std::size_t>(it->second) >= seen.size())
                seen.resize(it->second + 1, false);
            seen[it->second] = true;
        }
        int mex = 0;
        while (mex < static_cast<int>(seen.size()) && seen[mex])
            ++mex;
        G[p] = unknown ? -1 : mex;
    }
    return G;
}

// does the table satisfy B = W + L and (W + Gamma) cap B = L on its certified positions
inline std::optional<Exponent> check_defining_conditions(const LatticeGame& g, const WinLossTable& t)
{
    for (auto& p : box_positions(t.box)) {
        Status s = t.status(p);
        if (s == Status::unknown)
            continue;
        if (g.is_defeated(p) != (s == Status::defeated))
            return p;
        if (s == Status::defeated)
            continue;
        bool to_win = false, blind = false;
        for (auto& m : g.rules.gamma) {
            Exponent q = p - m;
            if (!g.on_board(q))
                continue;
            Status sq = t.status(q);
            if (sq == Status::winning)
                to_win = true;
            if (sq == Status::unknown)
                blind = true;
        }
        if (s == Status::losing && !to_win)
            return p;
        if (s == Status::winning && (to_win || blind))
            return p;
    }
    return std::nullopt;
}

// translate + N{generators}; generators are the columns
struct StratumPiece {
    Exponent translate;
    std::vector<Exponent> generators;

    std::optional<std::vector<Integer>> coefficients(const Exponent& p) const;
    bool contains(const Exponent& p) const
    {
        auto c = coefficients(p);
        return c && std::all_of(c->begin(), c->end(), [](const Integer& x) { return x >= 0; });
    }
};

namespace detail {

// exact solution of sum c_k g_k = v when the g_k are independent
inline std::optional<std::vector<Rational>> solve_independent(const std::vector<Exponent>& gens, const Exponent& v)
{
    const std::size_t d = v.size(), k = gens.size();
    std::vector<std::vector<Rational>> M(d, std::vector<Rational>(k + 1));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            M[i][j] = gens[j][i];
        M[i][k] = v[i];
    }
    std::size_t r = 0;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < k && r < d; ++c) {
        std::size_t p = r;
        while (p < d && M[p][c] == 0)
            ++p;
        if (p == d)
            continue;
        std::swap(M[r], M[p]);
        for (std::size_t i = 0; i < d; ++i)
            if (i != r && M[i][c] != 0) {
                Rational f = M[i][c] / M[r][c];
                for (std::size_t j = c; j <= k; ++j)
                    M[i][j] -= f * M[r][j];
            }
        piv.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < d; ++i)
        if (M[i][k] != 0)
            return std::nullopt;
    std::vector<Rational> x(k);
    for (std::size_t i = 0; i < r; ++i)
        x[piv[i]] = M[i][k] / M[i][piv[i]];
    return x;
}

}  // namespace detail

inline std::optional<std::vector<Integer>> StratumPiece::coefficients(const Exponent& p) const
{
    auto x = detail::solve_independent(generators, p - translate);
    if (!x)
        return std::nullopt;
    std::vector<Integer> out;
    for (auto& q : *x) {
        if (!is_integer(q))
            return std::nullopt;
        out.push_back(numerator_of(q));
    }
    return out;
}

struct AffineStratification {
    std::vector<StratumPiece> pieces;

    bool contains(const Exponent& p) const
    {
        return std::any_of(pieces.begin(), pieces.end(), [&](const StratumPiece& s) { return s.contains(p); });
    }
};

struct StratificationVerdict {
    bool equal = false;
    std::optional<Exponent> mismatch;
    std::size_t checked = 0;
};

inline StratificationVerdict verify_stratification(const AffineStratification& s, const LatticeGame& g, const WinLossTable& t)
{
    StratificationVerdict v;
    auto pos = box_positions(t.box);
    std::sort(pos.begin(), pos.end(), [&](const Exponent& a, const Exponent& b) {
        long la = apply_functional(g.functional, a), lb = apply_functional(g.functional, b);
        return la != lb ? la < lb : a < b;
    });
    for (auto& p : pos) {
        Status st = t.status(p);
        if (st == Status::unknown)
            continue;
        ++v.checked;
        if ((st == Status::winning) != s.contains(p)) {
            v.mismatch = p;
            return v;
        }
    }
    v.equal = true;
    return v;
}

struct StrategyTerm {
    Exponent numerator;
    std::vector<Exponent> denominators;  // factors 1 - t^g
};

inline std::string variable_name(int d, int i)
{
    if (d <= 4)
        return std::string(1, static_cast<char>('a' + i));
    return "t" + std::to_string(i + 1);
}

inline std::string power_product(const Exponent& e)
{
    const int d = static_cast<int>(e.size());
    std::string s;
    for (int i = 0; i < d; ++i) {
        if (!e[i])
            continue;
        if (!s.empty())
            s += "*";
        s += variable_name(d, i);
        if (e[i] != 1)
            s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

struct RationalStrategy {
    int d = 0;
    std::vector<StrategyTerm> terms;

    // coefficient of t^p in the expanded series
    std::size_t coefficient(const Exponent& p) const
    {
        std::size_t c = 0;
        for (auto& t : terms)
            if (StratumPiece{t.numerator, t.denominators}.contains(p))
                ++c;
        return c;
    }
    std::string str() const
    {
        std::string s;
        for (auto& t : terms) {
            if (!s.empty())
                s += " + ";
            s += power_product(t.numerator);
            if (t.denominators.empty())
                continue;
            std::string den;
            for (auto& g : t.denominators)
                den += "(1-" + power_product(g) + ")";
            s += "/" + (t.denominators.size() == 1 ? den : "(" + den + ")");
        }
        return s.empty() ? "0" : s;
    }
};

inline RationalStrategy rational_strategy(const AffineStratification& s, int box = 12)
{
    RationalStrategy r;
    for (auto& p : s.pieces) {
        r.d = static_cast<int>(p.translate.size());
        std::vector<std::vector<Integer>> rows;
        for (auto& g : p.generators)
            rows.push_back(to_integers(g));
        if (!rows.empty() && rank_of(IntegerMatrix::from_rows(rows, p.translate.size())) != rows.size())
            throw not_free("piece generators are dependent");
        for (auto& g : p.generators)
            if (std::any_of(g.begin(), g.end(), [](int x) { return x < 0; }))
                throw not_free("piece generators must be nonnegative");
        r.terms.push_back({p.translate, p.generators});
    }
    if (r.d > 0)
        for (auto& q : box_positions(uniform_box(r.d, box))) {
            int hits = 0;
            for (auto& p : s.pieces)
                hits += p.contains(q);
            if (hits > 1)
                throw not_disjoint("pieces overlap at " + position_string(q));
        }
    return r;
}

struct SquarefreeSolution {
    std::vector<Exponent> W0;
    AffineStratification stratification;
    RationalStrategy strategy;
};

inline SquarefreeSolution squarefree_solve(const LatticeGame& g)
{
    if (!g.normal_play())
        throw misere_unsupported("squarefree closed form holds for normal play");
    for (auto& m : g.rules.gamma)
        if (*std::max_element(m.begin(), m.end()) > 1)
            throw not_squarefree("rule has an entry above 1");
    const int d = g.d();
    auto t = compute_win_loss(g, uniform_box(d, 1), 50000000);
    SquarefreeSolution s;
    s.W0 = t.winning();
    std::vector<Exponent> twos;
    for (int i = 0; i < d; ++i) {
        Exponent e(d, 0);
        e[i] = 2;
        twos.push_back(e);
    }
    for (auto& w : s.W0)
        s.stratification.pieces.push_back({w, twos});
    s.strategy = rational_strategy(s.stratification, 3);
    return s;
}

// some gamma with p - gamma winning and on the board; nullopt when p is winning
inline std::optional<Exponent> winning_move(const LatticeGame& g, const WinLossTable& t, const Exponent& p)
{
    if (!g.on_board(p))
        throw invariant_violation("position is not on the board");
    Status s = t.status(p);
    if (s == Status::unknown)
        throw out_of_box("position is outside the certified region");
    if (s == Status::winning)
        return std::nullopt;
    for (auto& m : g.rules.gamma) {
        Exponent q = p - m;
        if (g.on_board(q) && t.status(q) == Status::winning)
            return m;
    }
    throw invariant_violation("losing position without a winning reply");
}

inline std::optional<Exponent> winning_move(const LatticeGame& g, const AffineStratification& s, const Exponent& p)
{
    if (!g.on_board(p))
        throw invariant_violation("position is not on the board");
    if (s.contains(p))
        return std::nullopt;
    for (auto& m : g.rules.gamma) {
        Exponent q = p - m;
        if (g.on_board(q) && s.contains(q))
            return m;
    }
    throw out_of_box("stratification gives no winning reply");
}

struct MisereQuotient {
    bool finite = false;
    std::vector<Exponent> elements;            // smallest representative of each class
    std::vector<std::vector<int>> table;       // element product
    std::map<Exponent, int> map;               // sub-box position -> element
    int identity = 0;
    std::string note;

    int element_of(const Exponent& p) const
    {
        auto it = map.find(p);
        if (it == map.end())
            throw out_of_box("position outside the quotient's box");
        return it->second;
    }
    int multiply(int a, int b) const { return table[a][b]; }
    std::size_t size() const { return elements.size(); }
    bool associative() const
    {
        const int n = static_cast<int>(size());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (table[table[a][b]][c] != table[a][table[b][c]])
                        return false;
        return true;
    }
    bool commutative() const
    {
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b = 0; b < size(); ++b)
                if (table[a][b] != table[b][a])
                    return false;
        return true;
    }
};

namespace detail {

// classes of [0, box/2]^d by W-patterns over windows [0, box/2]^d
inline std::optional<MisereQuotient> quotient_on_box(const LatticeGame& g, int box)
{
    const int d = g.d();
    auto t = compute_win_loss(g, uniform_box(d, box));
    const int m = box / 2;
    auto sub = box_positions(uniform_box(d, m));
    auto window = box_positions(uniform_box(d, box - m));
    std::map<std::vector<std::int8_t>, int> ids;
    MisereQuotient q;
    for (auto& p : sub) {
        std::vector<std::int8_t> pat;
        pat.reserve(window.size());
        for (auto& r : window) {
            Status s = t.status(p + r);
            if (s == Status::unknown)
                return std::nullopt;
            pat.push_back(s == Status::winning);
        }
        auto [it, fresh] = ids.emplace(pat, static_cast<int>(q.elements.size()));
        if (fresh)
            q.elements.push_back(p);
        q.map[p] = it->second;
    }
    // representatives are the first in box order; keep the smallest by total degree
    for (auto& [p, id] : q.map)
        if (total_degree(p) < total_degree(q.elements[id]))
            q.elements[id] = p;
    const int n = static_cast<int>(q.elements.size());
    q.table.assign(n, std::vector<int>(n, -1));
    for (auto& [p, a] : q.map)
        for (auto& [r, b] : q.map) {
            Exponent s = p + r;
            auto it = q.map.find(s);
            if (it == q.map.end())
                continue;
            if (q.table[a][b] >= 0 && q.table[a][b] != it->second) {
                q.note = "class product is not well defined";
                return q;
            }
            q.table[a][b] = it->second;
        }
    for (auto& row : q.table)
        for (int x : row)
            if (x < 0) {
                q.note = "product table incomplete on the box";
                return q;
            }
    q.identity = q.map.at(Exponent(d, 0));
    return q;
}

}  // namespace detail

// finite only when the class count and table survive one box doubling
inline MisereQuotient misere_quotient(const LatticeGame& g, int box)
{
    auto a = detail::quotient_on_box(g, box);
    auto b = detail::quotient_on_box(g, 2 * box);
    MisereQuotient out;
    if (!a || !b) {
        out.note = "win/loss table not certified on the box";
        return a ? *a : out;
    }
    out = *b;
    if (!a->note.empty() || !b->note.empty()) {
        out.finite = false;
        out.note = !b->note.empty() ? b->note : a->note;
        return out;
    }
    if (a->size() != b->size()) {
        out.finite = false;
        out.note = "class count changed under box doubling";
        return out;
    }
    // the smaller box's classes must map consistently
    std::map<int, int> f;
    for (auto& [p, id] : a->map) {
        int other = b->element_of(p);
        auto [it, fresh] = f.emplace(id, other);
        if (!fresh && it->second != other) {
            out.finite = false;
            out.note = "classes split under box doubling";
            return out;
        }
    }
    out.finite = out.associative() && out.commutative();
    if (!out.finite)
        out.note = "product table is not a commutative monoid";
    return out;
}

}  // namespace binom
