#pragma once

#include "chem.hpp"
#include "decomposition.hpp"
#include "games.hpp"
#include "horn.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace binom {

using Json = nlohmann::ordered_json;

namespace io {

inline Json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw parse_error(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // report the line rather than the byte offset
        std::size_t line = 1 + std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n');
        throw parse_error(path + ":" + std::to_string(line) + ": " + e.what());
    }
}

inline const Json& field(const Json& j, const std::string& key, const std::string& ctx)
{
    if (!j.is_object())
        throw parse_error(ctx + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw parse_error(ctx + ": missing field '" + key + "'");
    return *it;
}

inline Integer integer(const Json& j, const std::string& ctx)
{
    if (j.is_number_integer())
        return Integer(j.get<long long>());
    if (j.is_string()) {
        auto q = parse_rational(j.get<std::string>());
        if (!is_integer(q))
            throw parse_error(ctx + ": expected an integer");
        return numerator_of(q);
    }
    throw parse_error(ctx + ": expected an integer");
}

inline Rational rational(const Json& j, const std::string& ctx)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const parse_error& e) {
            throw parse_error(ctx + ": " + e.what());
        }
    }
    throw parse_error(ctx + ": expected a rational string");
}

inline int small_int(const Json& j, const std::string& ctx)
{
    if (!j.is_number_integer())
        throw parse_error(ctx + ": expected an integer");
    auto v = j.get<long long>();
    if (v < INT_MIN || v > INT_MAX)
        throw parse_error(ctx + ": integer out of range");
    return static_cast<int>(v);
}

inline Exponent exponent(const Json& j, std::optional<std::size_t> len, const std::string& ctx)
{
    if (!j.is_array())
        throw parse_error(ctx + ": expected an array");
    if (len && j.size() != *len)
        throw invariant_violation(ctx + ": expected length " + std::to_string(*len) + ", got " + std::to_string(j.size()));
    Exponent e;
    for (std::size_t i = 0; i < j.size(); ++i)
        e.push_back(small_int(j[i], ctx + "[" + std::to_string(i) + "]"));
    return e;
}

inline std::vector<Integer> integer_vector(const Json& j, const std::string& ctx)
{
    if (!j.is_array())
        throw parse_error(ctx + ": expected an array");
    std::vector<Integer> v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(integer(j[i], ctx + "[" + std::to_string(i) + "]"));
    return v;
}

inline IntegerMatrix matrix(const Json& j, const std::string& ctx)
{
    if (!j.is_array() || j.empty())
        throw parse_error(ctx + ": expected a nonempty array of rows");
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(integer_vector(j[i], ctx + "[" + std::to_string(i) + "]"));
        if (rows.back().size() != rows.front().size())
            throw invariant_violation(ctx + "[" + std::to_string(i) + "]: ragged row");
    }
    return IntegerMatrix::from_rows(rows, rows.front().size());
}

inline Scalar coefficient(const Json& j, int zeta, const std::string& ctx)
{
    if (!j.is_array())
        return Scalar(rational(j, ctx));
    std::vector<std::pair<Rational, long>> terms;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string c = ctx + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2)
            throw parse_error(c + ": expected a [rational, power] pair");
        terms.push_back({rational(j[i][0], c), small_int(j[i][1], c)});
    }
    return Scalar::from_terms(zeta, terms);
}

inline BinomialIdeal ideal(const Json& j)
{
    const std::string ctx = "ideal";
    int n = small_int(field(j, "n", ctx), ctx + ".n");
    if (n < 0)
        throw invariant_violation(ctx + ".n: negative");
    std::vector<std::string> vars;
    if (j.contains("vars")) {
        for (auto& v : j["vars"])
            vars.push_back(v.get<std::string>());
        if (static_cast<int>(vars.size()) != n)
            throw invariant_violation(ctx + ".vars: expected " + std::to_string(n) + " names");
    }
    int zeta = j.contains("zeta_order") ? small_int(j["zeta_order"], ctx + ".zeta_order") : 1;
    if (zeta < 1)
        throw invariant_violation(ctx + ".zeta_order: must be positive");
    std::vector<Binomial> gens;
    if (j.contains("binomials"))
        for (std::size_t i = 0; i < j["binomials"].size(); ++i) {
            auto& b = j["binomials"][i];
            std::string c = ctx + ".binomials[" + std::to_string(i) + "]";
            auto u = exponent(field(b, "u", c), n, c + ".u");
            auto v = exponent(field(b, "v", c), n, c + ".v");
            Scalar s = b.contains("coeff") ? coefficient(b["coeff"], zeta, c + ".coeff") : Scalar(1);
            try {
                gens.emplace_back(u, v, s);
            } catch (const invariant_violation& e) {
                throw invariant_violation(c + ": " + e.what());
            }
        }
    if (j.contains("monomials"))
        for (std::size_t i = 0; i < j["monomials"].size(); ++i) {
            std::string c = ctx + ".monomials[" + std::to_string(i) + "]";
            auto u = exponent(j["monomials"][i], n, c);
            try {
                gens.push_back(Binomial::monomial(u));
            } catch (const invariant_violation& e) {
                throw invariant_violation(c + ": " + e.what());
            }
        }
    return BinomialIdeal(n, std::move(gens), std::move(vars));
}

struct HornInput {
    IntegerMatrix B;
    std::optional<IntegerMatrix> A;
    std::vector<Rational> beta;
};

// either {"B": rows, "A": rows?, "beta": [...]?} or a bare array of rows
inline HornInput horn(const Json& j)
{
    HornInput h;
    if (j.is_array()) {
        h.B = matrix(j, "B");
        return h;
    }
    h.B = matrix(field(j, "B", "horn"), "horn.B");
    if (j.contains("A"))
        h.A = matrix(j["A"], "horn.A");
    if (j.contains("beta"))
        for (std::size_t i = 0; i < j["beta"].size(); ++i)
            h.beta.push_back(rational(j["beta"][i], "horn.beta[" + std::to_string(i) + "]"));
    return h;
}

inline LatticeGame game(const Json& j)
{
    const std::string ctx = "game";
    int d = small_int(field(j, "d", ctx), ctx + ".d");
    if (d < 1)
        throw invariant_violation(ctx + ".d: must be positive");
    RuleSet r;
    if (j.contains("octal")) {
        r = octal_rules(field(j, "octal", ctx).get<std::string>(), d);
    } else {
        auto& g = field(j, "gamma", ctx);
        std::vector<Exponent> gamma;
        for (std::size_t i = 0; i < g.size(); ++i)
            gamma.push_back(exponent(g[i], d, ctx + ".gamma[" + std::to_string(i) + "]"));
        r = explicit_rules(d, gamma);
    }
    std::vector<Exponent> D;
    if (j.contains("defeated"))
        for (std::size_t i = 0; i < j["defeated"].size(); ++i)
            D.push_back(exponent(j["defeated"][i], d, ctx + ".defeated[" + std::to_string(i) + "]"));
    if (j.value("misere", false) && std::find(D.begin(), D.end(), Exponent(d, 0)) == D.end())
        D.push_back(Exponent(d, 0));
    return LatticeGame(r, D);
}

inline AffineStratification stratification(const Json& j, int d)
{
    AffineStratification s;
    auto& pieces = field(j, "pieces", "strategy");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        std::string c = "strategy.pieces[" + std::to_string(i) + "]";
        StratumPiece p;
        p.translate = exponent(field(pieces[i], "translate", c), d, c + ".translate");
        auto& g = field(pieces[i], "generators", c);
        for (std::size_t k = 0; k < g.size(); ++k)
            p.generators.push_back(exponent(g[k], d, c + ".generators[" + std::to_string(k) + "]"));
        s.pieces.push_back(p);
    }
    return s;
}

inline ReactionNetwork network(const Json& j)
{
    const std::string ctx = "network";
    std::vector<std::string> species;
    for (auto& s : field(j, "species", ctx))
        species.push_back(s.get<std::string>());
    std::vector<Reaction> rs;
    auto& rj = field(j, "reactions", ctx);
    for (std::size_t i = 0; i < rj.size(); ++i) {
        std::string c = ctx + ".reactions[" + std::to_string(i) + "]";
        Reaction r{exponent(field(rj[i], "a", c), species.size(), c + ".a"), exponent(field(rj[i], "b", c), species.size(), c + ".b"),
                   rational(field(rj[i], "k_fwd", c), c + ".k_fwd"), rational(field(rj[i], "k_rev", c), c + ".k_rev")};
        rs.push_back(r);
    }
    try {
        return ReactionNetwork(std::move(species), std::move(rs));
    } catch (const invariant_violation& e) {
        throw invariant_violation(ctx + ": " + e.what());
    }
}

// comma separated lists on the command line
inline std::vector<Rational> rational_list(const std::string& s)
{
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_rational(item));
    return out;
}

inline Exponent int_list(const std::string& s)
{
    Exponent out;
    for (auto& q : rational_list(s)) {
        if (!is_integer(q))
            throw parse_error("expected integers in '" + s + "'");
        out.push_back(numerator_of(q).convert_to<int>());
    }
    return out;
}

// emission

inline Json json_of(const std::vector<Integer>& v)
{
    Json a = Json::array();
    for (auto& x : v) {
        if (x > INT64_MAX || x < INT64_MIN)
            a.push_back(to_string(x));
        else
            a.push_back(x.convert_to<long long>());
    }
    return a;
}

inline Json json_of(const Exponent& e) { return Json(std::vector<int>(e.begin(), e.end())); }

inline Json json_of(const Scalar& s)
{
    Json a = Json::array();
    for (auto& [q, k] : s.terms())
        a.push_back({to_string(q), k});
    return a;
}

inline Json json_of(const BinomialIdeal& I)
{
    Json j;
    j["n"] = I.n;
    j["vars"] = I.vars;
    j["zeta_order"] = I.zeta_order;
    j["binomials"] = Json::array();
    j["monomials"] = Json::array();
    for (auto& b : I.generators) {
        if (b.is_monomial()) {
            j["monomials"].push_back(json_of(b.u));
        } else {
            Json g;
            g["u"] = json_of(b.u);
            g["v"] = json_of(b.v);
            g["coeff"] = json_of(b.lambda);
            j["binomials"].push_back(g);
        }
    }
    return j;
}

inline Json strings_of(const BinomialIdeal& I)
{
    Json a = Json::array();
    for (auto& b : I.generators)
        a.push_back(binomial_string(b, I.vars));
    return a;
}

inline Json names_of(const Subset& J, const std::vector<std::string>& vars)
{
    Json a = Json::array();
    for (int i : J)
        a.push_back(vars.at(i));
    return a;
}

inline Json json_of(const Lattice& L)
{
    Json a = Json::array();
    for (auto& v : L.basis_vectors())
        a.push_back(json_of(v));
    return a;
}

inline Json json_of(const Mesoprime& p, const std::vector<std::string>& vars)
{
    Json j;
    j["J"] = names_of(p.J, vars);
    j["lattice"] = json_of(p.L);
    Json c = Json::array();
    for (auto& s : p.sigma)
        c.push_back(s.str());
    j["character"] = c;
    j["generators"] = strings_of(reduced_groebner(prime_ideal(p, vars)));
    return j;
}

inline Json json_of(const TruncationVerdict& v)
{
    Json j;
    j["status"] = v.name();
    j["degree_bound"] = v.degree_bound;
    if (v.kind != TruncationVerdict::Kind::equal)
        j["witness"] = v.witness_text;
    return j;
}

inline Json json_of(const PrimaryComponent& c, const std::vector<std::string>& vars)
{
    Json j;
    j["prime"] = json_of(c.prime, vars);
    auto G = reduced_groebner(c.ideal);
    G.vars = vars;
    j["generators"] = strings_of(G);
    if (c.cutoff)
        j["cutoff"] = *c.cutoff;
    else
        j["cutoff"] = nullptr;
    return j;
}

inline Json json_of(const Decomposition& d, const std::vector<std::string>& vars)
{
    Json j;
    j["components"] = Json::array();
    for (auto& c : d.components)
        j["components"].push_back(json_of(c, vars));
    j["candidates"] = Json::array();
    for (auto& p : d.candidates)
        j["candidates"].push_back(json_of(p, vars));
    j["verification"] = json_of(d.verification);
    j["cutoff"] = d.cutoff;
    return j;
}

inline Json json_of(const AffineSubspace& s)
{
    Json j;
    Json off = Json::array();
    for (auto& x : s.offset)
        off.push_back(to_string(x));
    j["offset"] = off;
    j["columns"] = Json::array();
    for (int c : s.J)
        j["columns"].push_back(c + 1);
    j["dim"] = s.dim();
    return j;
}

inline Json json_of(const ToralAndeanReport& r, const std::vector<std::string>& vars)
{
    Json j;
    j["components"] = Json::array();
    for (auto& c : r.components) {
        Json cj = json_of(c.component, vars);
        cj["kind"] = c.toral ? "toral" : "andean";
        cj["hilbert"] = c.hilbert;
        j["components"].push_back(cj);
    }
    j["andean_arrangement"] = Json::array();
    for (auto& s : r.andean_arrangement)
        j["andean_arrangement"].push_back(json_of(s));
    j["verification"] = json_of(r.verification);
    return j;
}

inline Json json_of(const RankReport& r, const std::vector<std::string>& vars)
{
    Json j;
    j["summands"] = Json::array();
    for (auto& s : r.summands) {
        Json sj;
        sj["J"] = names_of(s.J, vars);
        sj["lattice"] = json_of(s.L);
        sj["iota"] = to_string(s.iota);
        sj["characters"] = s.characters;
        sj["mu"] = s.mu;
        sj["vol"] = to_string(s.vol);
        sj["product"] = to_string(s.product);
        j["summands"].push_back(sj);
    }
    j["total"] = to_string(r.total);
    j["full_support"] = to_string(r.full_support);
    j["finite_support"] = to_string(r.finite_support);
    j["analysis"] = json_of(r.analysis, vars);
    return j;
}

inline std::vector<Exponent> sorted(std::vector<Exponent> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

inline Json positions(const std::vector<Exponent>& ps)
{
    Json a = Json::array();
    for (auto& p : sorted(ps))
        a.push_back(json_of(p));
    return a;
}

inline Json json_of(const WinLossTable& t)
{
    Json j;
    j["box"] = json_of(t.box);
    j["exact"] = t.exact;
    j["winning"] = positions(t.winning());
    j["losing"] = positions(t.losing());
    j["unknown"] = positions(t.unknown());
    return j;
}

inline Json json_of(const AffineStratification& s)
{
    Json a = Json::array();
    for (auto& p : s.pieces) {
        Json pj;
        pj["translate"] = json_of(p.translate);
        pj["generators"] = Json::array();
        for (auto& g : p.generators)
            pj["generators"].push_back(json_of(g));
        a.push_back(pj);
    }
    return a;
}

inline std::string element_name(const MisereQuotient& q, int e)
{
    return power_product(q.elements.at(e));
}

// smallest relation g^k = g^j, j < k, for each generator
inline Json quotient_relations(const MisereQuotient& q, int d)
{
    Json a = Json::array();
    for (int i = 0; i < d; ++i) {
        Exponent ei(d, 0);
        ei[i] = 1;
        if (!q.map.count(ei))
            continue;
        int g = q.element_of(ei);
        std::vector<int> powers{q.identity};
        for (int k = 1; k <= static_cast<int>(q.size()) + 1; ++k) {
            int p = q.multiply(powers.back(), g);
            auto it = std::find(powers.begin(), powers.end(), p);
            if (it != powers.end()) {
                long j = it - powers.begin();
                std::string lhs = variable_name(d, i) + "^" + std::to_string(k);
                std::string rhs = j == 0 ? "1" : j == 1 ? variable_name(d, i) : variable_name(d, i) + "^" + std::to_string(j);
                a.push_back(lhs + "=" + rhs);
                break;
            }
            powers.push_back(p);
        }
    }
    return a;
}

inline Json json_of(const MisereQuotient& q, int d)
{
    Json j;
    j["finite"] = q.finite;
    j["size"] = q.size();
    Json els = Json::array();
    for (std::size_t e = 0; e < q.size(); ++e)
        els.push_back(element_name(q, static_cast<int>(e)));
    j["elements"] = els;
    j["identity"] = element_name(q, q.identity);
    Json tab = Json::array();
    for (auto& row : q.table) {
        Json r = Json::array();
        for (int x : row)
            r.push_back(element_name(q, x));
        tab.push_back(r);
    }
    j["table"] = tab;
    j["relations"] = quotient_relations(q, d);
    j["associative"] = q.associative();
    j["commutative"] = q.commutative();
    j["note"] = q.note;
    return j;
}

inline Json json_of(const Equilibrium& e, const ReactionNetwork& net)
{
    Json j;
    j["feasible"] = e.feasible;
    if (e.feasible) {
        Json ex, num;
        auto s = e.exact();
        for (std::size_t i = 0; i < net.n(); ++i) {
            ex[net.species[i]] = s[i];
            num[net.species[i]] = e.point[i];
        }
        j["exact"] = ex;
        j["point"] = num;
    } else {
        j["circuit"] = json_of(e.circuit);
    }
    return j;
}

inline Json json_of(const BoundaryReport& b, const ReactionNetwork& net)
{
    Json j;
    j["primes"] = Json::array();
    for (auto& p : b.primes) {
        Json pj = json_of(p.prime, net.species);
        pj["zero_species"] = names_of(p.zero_species, net.species);
        pj["positive_real"] = p.positive_real;
        j["primes"].push_back(pj);
    }
    j["faces"] = Json::array();
    for (auto& f : b.faces)
        if (f.has_zeros) {
            Json fj;
            fj["support"] = names_of(f.support, net.species);
            fj["positive_real"] = f.positive_real;
            j["faces"].push_back(fj);
        }
    return j;
}

}  // namespace io
}  // namespace binom
