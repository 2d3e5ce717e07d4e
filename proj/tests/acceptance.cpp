// One line per acceptance criterion; exit status 1 if any fails.
#include <binom/chem.hpp>
#include <binom/congruence.hpp>
#include <binom/games.hpp>
#include <binom/horn.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace binom;

namespace {

struct Failure {
    std::string what;
};

void need(bool ok, const std::string& what)
{
    if (!ok)
        throw Failure{what};
}

Binomial bin(Exponent u, Exponent v, long c = 1) { return Binomial(std::move(u), std::move(v), Scalar(c)); }
Binomial mono(Exponent u) { return Binomial::monomial(std::move(u)); }

bool same_gb(const BinomialIdeal& a, const BinomialIdeal& b) { return groebner_basis(a) == groebner_basis(b); }

std::set<Exponent> as_set(const std::vector<Exponent>& v) { return {v.begin(), v.end()}; }

int nim_sum(const Exponent& p)
{
    int s = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] % 2)
            s ^= static_cast<int>(i + 1);
    return s;
}

const IntegerMatrix A0123{{1, 1, 1, 1}, {0, 1, 2, 3}};
const IntegerMatrix A1100{{1, 1, 0, 0}, {0, 1, 1, 1}};
const IntegerMatrix B0123{{1, 0}, {-2, 1}, {1, -2}, {0, 1}};
const IntegerMatrix B1100{{1, 1}, {-1, -1}, {1, 0}, {0, 1}};

void toric()
{
    BinomialIdeal c0123(4, {bin({1, 0, 1, 0}, {0, 2, 0, 0}), bin({0, 1, 0, 1}, {0, 0, 2, 0}), bin({1, 0, 0, 1}, {0, 1, 1, 0})});
    need(same_gb(toric_ideal(A0123), c0123), "0123 toric ideal");
    BinomialIdeal c1100(4, {bin({1, 0, 1, 0}, {0, 1, 0, 0}), bin({0, 0, 1, 0}, {0, 0, 0, 1})});
    need(same_gb(toric_ideal(A1100), c1100), "1100 toric ideal");
}

void collapse()
{
    auto G = reduced_groebner(BinomialIdeal(2, {bin({3, 0}, {0, 2}), bin({3, 0}, {0, 2}, 2)}));
    need(G.generators.size() == 2, "basis size");
    for (auto& g : G.generators)
        need(g.is_monomial() && (g.u == Exponent{3, 0} || g.u == Exponent{0, 2}), "basis is {x^3, y^2}");
    auto H = groebner_basis(BinomialIdeal(2, {bin({2, 0}, {1, 1}), bin({1, 1}, {0, 2}, 2)}));
    need(H.contains_monomial({2, 1}), "x^2 y reduces to zero");
    need(H.contains_monomial({1, 2}), "x y^2 reduces to zero");
}

void decompositions()
{
    using clock = std::chrono::steady_clock;
    BinomialIdeal graph(2, {bin({2, 0}, {1, 1}), bin({1, 1}, {0, 2})});
    auto t0 = clock::now();
    auto d = primary_decompose(graph);
    need(d.components.size() == 2, "graph: two components");
    std::vector<BinomialIdeal> want{BinomialIdeal(2, {mono({2, 0}), mono({1, 1}), mono({0, 2})}), BinomialIdeal(2, {bin({1, 0}, {0, 1})})};
    for (auto& w : want)
        need(std::any_of(d.components.begin(), d.components.end(), [&](auto& c) { return ideal_equal(c.ideal, w); }), "graph component");
    need(graded_truncation_compare(graph, ideals_of(d.components), 8).kind == TruncationVerdict::Kind::equal, "graph truncation");
    need(clock::now() - t0 < std::chrono::seconds(10), "graph runtime");

    BinomialIdeal ex(3, {bin({1, 0, 1}, {0, 1, 1}), bin({2, 0, 0}, {3, 0, 0})});
    t0 = clock::now();
    auto e = primary_decompose(ex);
    need(e.components.size() == 4, "exercise: four components");
    std::set<Subset> Js;
    for (auto& c : e.components)
        Js.insert(c.prime.J);
    need(Js == std::set<Subset>{{2}, {0, 1, 2}, {1}, {0, 1}}, "exercise J-sets");
    std::vector<BinomialIdeal> four{
        BinomialIdeal(3, {bin({1, 0, 0}, {0, 1, 0}), mono({2, 0, 0}), mono({1, 1, 0}), mono({0, 2, 0})}),
        BinomialIdeal(3, {bin({1, 0, 0}, {0, 0, 0}), bin({0, 1, 0}, {0, 0, 0})}),
        BinomialIdeal(3, {mono({2, 0, 0}), mono({0, 0, 1})}),
        BinomialIdeal(3, {bin({1, 0, 0}, {0, 0, 0}), mono({0, 0, 1})}),
    };
    for (auto& w : four)
        need(std::any_of(e.components.begin(), e.components.end(), [&](auto& c) { return ideal_equal(c.ideal, w); }), "exercise component");
    need(graded_truncation_compare(ex, ideals_of(e.components), 8).kind == TruncationVerdict::Kind::equal, "exercise truncation");
    need(clock::now() - t0 < std::chrono::seconds(10), "exercise runtime");
}

void boundedness()
{
    // x - y with x inverted: a pump along the antidiagonal
    auto r = class_boundedness(BinomialIdeal(2, {bin({1, 0}, {0, 1})}), {1, 0}, {0});
    need(r.kind == Boundedness::Kind::unbounded, "<x - y> is unbounded");
    need(r.pump[1] > 0 && r.pump[0] == -r.pump[1], "pump certificate");

    // xz - yz with x, y inverted: heights z >= 1 are single cosets of the line
    BinomialIdeal F(3, {bin({1, 0, 1}, {0, 1, 1})});
    auto h = class_boundedness(F, {1, 0, 1}, {0, 1});
    need(h.is_bounded() && h.stabilizer == Lattice(3, {{1, -1, 0}}), "height one is a coset of x = -y");
    auto base = class_boundedness(F, {1, 0, 0}, {0, 1});
    need(base.is_bounded() && base.stabilizer.rank() == 0, "height zero is a point");

    // x - y, x^2 with z inverted: pairs
    BinomialIdeal P(3, {bin({1, 0, 0}, {0, 1, 0}), mono({2, 0, 0})});
    auto p = class_boundedness(P, {1, 0, 0}, {2});
    need(p.is_bounded() && p.states == std::vector<Exponent>{{0, 1}, {1, 0}}, "pairs certificate");
}

void horn()
{
    auto r = toral_andean_analysis(lattice_basis_ideal(B1100), A1100);
    need(r.andean_arrangement.size() == 1, "one Andean subspace");
    auto& s = r.andean_arrangement[0];
    need(s.dim() == 1 && s.contains({0, 5}) && s.contains({0, -2}) && !s.contains({1, 0}), "arrangement is beta1 = 0");
    HornSystem h(B1100, A1100);
    need(!finite_rank_test(h, {0, 5}), "beta = (0,5) infinite");
    need(finite_rank_test(h, {1, 1}), "beta = (1,1) finite");

    auto z = toral_andean_analysis(lattice_basis_ideal(B0123), A0123);
    need(z.andean_arrangement.empty(), "0123 arrangement empty");
    auto rank = generic_rank(HornSystem(B0123, A0123));
    need(rank.total == 4, "0123 rank 4");
    std::multiset<long> vols;
    for (auto& x : rank.summands)
        vols.insert(x.vol.convert_to<long>());
    need(vols == std::multiset<long>{1, 3}, "volumes 3 and 1");
}

void games()
{
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    auto normal = compute_win_loss(nim_game(2), uniform_box(2, 12));
    std::set<Exponent> even, mis;
    for (int a = 0; a <= 12; ++a)
        for (int b = 0; b <= 12; ++b) {
            if (a % 2 == 0 && b % 2 == 0)
                even.insert({a, b});
            if ((b == 0 && a % 2 == 1) || (b >= 2 && a % 2 == 0 && b % 2 == 0))
                mis.insert({a, b});
        }
    need(normal.exact && as_set(normal.winning()) == even, "normal nim2");
    auto misere = compute_win_loss(nim_game(2, true), uniform_box(2, 12));
    need(misere.exact && as_set(misere.winning()) == mis, "misere nim2");

    auto sq = squarefree_solve(nim_game(2));
    need(sq.strategy.str() == "1/((1-a^2)(1-b^2))", "normal strategy");
    AffineStratification s{{{{1, 0}, {{2, 0}}}, {{0, 2}, {{2, 0}, {0, 2}}}}};
    need(verify_stratification(s, nim_game(2, true), misere).equal, "misere stratification");
    auto rs = rational_strategy(s);
    need(rs.terms.size() == 2 && rs.terms[0].numerator == Exponent{1, 0} && rs.terms[0].denominators == std::vector<Exponent>{{2, 0}} &&
             rs.terms[1].numerator == Exponent{0, 2} && rs.terms[1].denominators == std::vector<Exponent>{{2, 0}, {0, 2}},
         "misere strategy terms");

    auto q = misere_quotient(nim_game(2, true), 24);
    need(q.finite && q.size() == 6, "quotient has 6 elements");
    int a = q.element_of({1, 0}), b = q.element_of({0, 1});
    need(q.multiply(a, a) == q.identity, "a^2 = 1");
    need(q.multiply(b, q.multiply(b, b)) == b, "b^3 = b");

    auto g3 = nim_game(3);
    auto t3 = compute_win_loss(g3, uniform_box(3, 8));
    auto G = grundy_values(g3, uniform_box(3, 8));
    for (auto& p : box_positions(uniform_box(3, 8)))
        need((G.at(p) == 0) == (t3.status(p) == Status::winning), "Grundy zero is W");
    Exponent p374{0, 0, 1, 1, 0, 0, 1};
    need(nim_sum(p374) == 0 && position_status(nim_game(7), p374) == Status::winning, "3-7-4 position");
    need(clock::now() - t0 < std::chrono::seconds(30), "games runtime");
}

void dawson()
{
    for (int d = 1; d <= 6; ++d) {
        LatticeGame mis(octal_rules(".137", d), {Exponent(d, 0)});
        auto tm = compute_win_loss(mis, uniform_box(d, 4));
        need(!check_defining_conditions(mis, tm), "misere conditions, d = " + std::to_string(d));
        LatticeGame normal(octal_rules(".137", d));
        auto tn = compute_win_loss(normal, uniform_box(d, 4));
        need(!check_defining_conditions(normal, tn), "normal conditions, d = " + std::to_string(d));
        auto G = grundy_values(normal, uniform_box(d, 4));
        for (auto& p : box_positions(uniform_box(d, 4)))
            if (G.at(p) >= 0 && tn.status(p) != Status::unknown)
                need((G.at(p) == 0) == (tn.status(p) == Status::winning), "Grundy zero is W, d = " + std::to_string(d));
    }
}

void chemistry()
{
    auto peroxide = [](Rational l, Rational m) { return ReactionNetwork({"x", "y", "z"}, {{{2, 0, 0}, {0, 2, 1}, l, m}}); };
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    for (int i = 0; i < 5; ++i) {
        Rational l(den(rng), den(rng)), m(den(rng), den(rng));
        std::vector<Rational> x{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
        auto f = mass_action_rhs(peroxide(l, m), x);
        Rational y2z = x[1] * x[1] * x[2];
        need(f[0] == 2 * m * y2z - 2 * l * x[0] * x[0], "xdot");
        need(f[1] == 2 * l * x[0] * x[0] - 2 * m * y2z, "ydot");
        need(f[2] == l * x[0] * x[0] - m * y2z, "zdot");
    }
    auto net = peroxide(1, Rational(1, 10));
    Lattice cons(3, conserved_quantities(net).conserved_basis);
    need(cons == Lattice(3, {{1, 1, 0}, {1, 0, 2}}), "conserved x + y and x + 2z");
    auto tr = simulate(net, {2, 1, 1}, 10, 1e-3);
    auto& xe = tr.states.back();
    need(tr.max_drift <= 1e-8, "drift");
    need(std::abs(xe[0] + xe[1] - 3) <= 1e-8 && std::abs(xe[0] + 2 * xe[2] - 4) <= 1e-8, "x + y and x + 2z");
    auto fine = simulate(net, {2, 1, 1}, 10, 1e-4);
    for (int i = 0; i < 3; ++i)
        need(std::abs(fine.states.back()[i] - xe[i]) <= 1e-8, "tenth-step oracle");

    // rates that are rational powers: zeroes the binomial exactly
    auto e = detailed_balanced_equilibrium(peroxide(4, Rational(1, 2)));
    need(e.feasible, "feasible");
    std::vector<Rational> xr;
    for (auto& l : e.log_point) {
        Rational v = 1;
        for (auto& [p, ex] : l) {
            need(is_integer(ex), "integral exponents");
            Integer k = numerator_of(ex);
            for (Integer j = 0; j < abs(k); ++j)
                v = k > 0 ? v * Rational(p) : v / Rational(p);
        }
        xr.push_back(v);
    }
    need(4 * xr[0] * xr[0] == Rational(1, 2) * xr[1] * xr[1] * xr[2], "binomial vanishes");

    ReactionNetwork cycle({"A", "B", "C"}, {{{1, 0, 0}, {0, 1, 0}, 1, 1}, {{0, 1, 0}, {0, 0, 1}, 1, 1}, {{0, 0, 1}, {1, 0, 0}, 3, 1}});
    need(!detailed_balanced_equilibrium(cycle).feasible, "inconsistent cycle is infeasible");
}

// compact versions of the randomized suites
void properties()
{
    std::mt19937 rng(2024);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto expo = [&](int n, int hi) {
        Exponent e(n);
        for (auto& x : e)
            x = uni(0, hi);
        return e;
    };
    const int cases = 200;

    for (int t = 0; t < cases; ++t) {
        int n = uni(2, 3);
        std::vector<Binomial> gens;
        while (gens.size() < 2) {
            Exponent u = expo(n, 3), v = expo(n, 3);
            if (u != v)
                gens.emplace_back(u, v, Scalar(uni(1, 3)));
        }
        BinomialIdeal I(n, gens);
        auto G = groebner_basis(I);
        for (auto& g : gens)
            need(G.contains(g), "generator in its basis");
        auto& el = G.elements();
        for (std::size_t i = 0; i < el.size(); ++i)
            for (std::size_t j = i + 1; j < el.size(); ++j)
                if (auto s = detail::spair(el[i], el[j])) {
                    // x^lead - lambda x^tail reduces to zero
                    auto r1 = G.reduce({Scalar(1), s->lead});
                    auto r2 = s->monomial ? std::nullopt : G.reduce({s->lambda, s->tail});
                    need(r1.has_value() == r2.has_value(), "S-pair closure");
                    if (r1)
                        need(r1->exp == r2->exp && r1->coeff == r2->coeff, "S-pair closure");
                }
        // congruence classes and normal forms
        auto C = congruence_classes(I, Exponent(n, 2));
        for (auto& [u, k] : C.class_of)
            for (auto& v : C.classes[k])
                if (u != v)
                    need(G.contains(Binomial(u, v, *C.scalar(u, v))), "class members are congruent");
    }

    for (int t = 0; t < cases; ++t) {
        std::vector<std::vector<Integer>> rows(uni(1, 3), std::vector<Integer>(uni(2, 4)));
        for (auto& r : rows)
            for (auto& x : r)
                x = uni(-4, 4);
        auto mixed = rows;
        std::shuffle(mixed.begin(), mixed.end(), rng);
        if (mixed.size() > 1)
            for (std::size_t q = 0; q < mixed[0].size(); ++q)
                mixed[0][q] += 2 * mixed[1][q];
        auto c = rows[0].size();
        need(hermite(IntegerMatrix::from_rows(rows, c)).H == hermite(IntegerMatrix::from_rows(mixed, c)).H, "HNF canonical");
    }

    for (int t = 0; t < cases; ++t) {
        std::vector<Exponent> gamma{{1, 0}};
        for (int s = 2; s <= 5; ++s)
            if (uni(0, 1))
                gamma.push_back({s, 0});
        gamma.push_back({-uni(0, 1), 1});
        std::vector<Exponent> D;
        if (uni(0, 1))
            D.push_back({0, 0});
        LatticeGame g(explicit_rules(2, gamma), D);
        need(!check_defining_conditions(g, compute_win_loss(g, uniform_box(2, 6))), "win/loss conditions");
    }

    for (int t = 0; t < cases; ++t) {
        std::vector<Exponent> gamma;
        for (int s = 1; s <= 4; ++s)
            if (uni(0, 1))
                gamma.push_back({s});
        if (gamma.empty())
            gamma.push_back({1});
        auto q = misere_quotient(LatticeGame(explicit_rules(1, gamma), {{0}}), 16);
        need(q.associative() && q.commutative(), "quotient associativity");
    }

    for (int t = 0; t < cases; ++t) {
        int n = uni(2, 4);
        std::vector<Reaction> rs;
        while (rs.size() < 3) {
            Exponent a = expo(n, 2), b = expo(n, 2);
            if (a != b)
                rs.push_back({a, b, Rational(uni(1, 5)), Rational(uni(1, 5))});
        }
        ReactionNetwork net(std::vector<std::string>(n, "s"), rs);
        for (auto& w : conserved_quantities(net).conserved_basis)
            for (auto& r : rs) {
                Integer s = 0;
                for (int i = 0; i < n; ++i)
                    s += w[i] * (r.b[i] - r.a[i]);
                need(s == 0, "conservation orthogonality");
            }
    }
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        std::function<void()> run;
    };
    std::vector<Criterion> all{
        {1, "toric ideals of 0123 and 1100", toric},
        {2, "monomial collapse", collapse},
        {3, "primary decomposition golden tests", decompositions},
        {4, "boundedness after localization", boundedness},
        {5, "Horn arrangement and generic rank", horn},
        {6, "nim winning sets, strategies and quotient", games},
        {7, "Dawson sanity, d <= 6, box 4", dawson},
        {8, "peroxide kinetics and equilibria", chemistry},
        {9, "randomized property suites", properties},
    };
    int failures = 0;
    for (auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        std::string why;
        try {
            c.run();
        } catch (const Failure& f) {
            why = f.what;
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %d %s (%.2f s)%s%s\n", why.empty() ? "PASS" : "FAIL", c.id, c.title, secs, why.empty() ? "" : ": ", why.c_str());
        failures += !why.empty();
    }
    return failures ? 1 : 0;
}
