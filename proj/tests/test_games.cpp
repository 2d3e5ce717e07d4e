#include <binom/games.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace binom;

namespace {

std::set<Exponent> as_set(const std::vector<Exponent>& v) { return {v.begin(), v.end()}; }

std::set<Exponent> nim2_misere_w(int box)
{
    std::set<Exponent> w;
    for (int a = 1; a <= box; a += 2)
        w.insert({a, 0});
    for (int a = 0; a <= box; a += 2)
        for (int b = 2; b <= box; b += 2)
            w.insert({a, b});
    return w;
}

int nim_sum_of(const Exponent& p)
{
    int s = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] % 2)
            s ^= static_cast<int>(i + 1);
    return s;
}

}  // namespace

TEST_CASE("rule sets")
{
    auto n2 = nim_rules(2);
    REQUIRE(as_set(n2.gamma) == std::set<Exponent>{{1, 0}, {0, 1}, {-1, 1}});

    auto dw = octal_rules(".137", 7);
    auto D = as_set(dw.gamma);
    REQUIRE(D.count({1, 0, 0, 0, 0, 0, 0}));
    REQUIRE(D.count({0, 1, 0, 0, 0, 0, 0}));
    REQUIRE(D.count({0, 0, 1, 0, 0, 0, 0}));
    REQUIRE_FALSE(D.count({0, 0, 0, 1, 0, 0, 0}));
    REQUIRE(D.count({-1, 0, 1, 0, 0, 0, 0}));   // e3 - e1
    REQUIRE(D.count({-1, 0, 0, 1, 0, 0, 0}));   // e4 - e1
    REQUIRE(D.count({-2, 0, 0, 0, 1, 0, 0}));   // e5 - 2 e1
    REQUIRE(D.count({-1, -1, 0, 0, 0, 1, 0}));  // e6 - e1 - e2
    REQUIRE_FALSE(D.count({-1, 0, 0, 0, 1, 0, 0}));
    // 3 destroys, 5 + 4 reductions, 1 + 1 + 2 splits
    REQUIRE(D.size() == 3 + (5 + 4) + (1 + 1 + 2));
    REQUIRE_THROWS_AS(octal_rules(".18", 3), bad_octal);
    REQUIRE_THROWS_AS(octal_rules("137", 3), bad_octal);
    REQUIRE(octal_rules(".0", 3).gamma.empty());
}

TEST_CASE("rule set validation")
{
    REQUIRE(validate_ruleset(nim_rules(3), uniform_box(3, 5)).kind == RuleSetVerdict::Kind::valid);
    auto odd = validate_ruleset(explicit_rules(2, {{2, 0}, {0, 1}}), uniform_box(2, 5));
    REQUIRE(odd.kind == RuleSetVerdict::Kind::path_fail);
    REQUIRE(odd.witness == Exponent{1, 0});
    REQUIRE(validate_ruleset(octal_rules(".137", 7), uniform_box(7, 4)).kind == RuleSetVerdict::Kind::valid);
    REQUIRE(validate_ruleset(octal_rules(".0", 2), uniform_box(2, 3)).kind == RuleSetVerdict::Kind::path_fail);
    REQUIRE(validate_ruleset(explicit_rules(1, {{1}, {-1}}), {3}).kind == RuleSetVerdict::Kind::not_pointed);
}

TEST_CASE("nim2 normal and misere winning sets")
{
    auto normal = compute_win_loss(nim_game(2), uniform_box(2, 12));
    REQUIRE(normal.exact);
    std::set<Exponent> even;
    for (int a = 0; a <= 12; a += 2)
        for (int b = 0; b <= 12; b += 2)
            even.insert({a, b});
    REQUIRE(as_set(normal.winning()) == even);

    auto g = nim_game(2, true);
    auto misere = compute_win_loss(g, uniform_box(2, 12));
    REQUIRE(misere.exact);
    REQUIRE(as_set(misere.winning()) == nim2_misere_w(12));
    REQUIRE(misere.status({0, 0}) == Status::defeated);
    REQUIRE_FALSE(check_defining_conditions(g, misere));
}

TEST_CASE("box-only tables leave the edge uncertified")
{
    auto g = octal_rules(".137", 5);
    LatticeGame dawson(g, {Exponent(5, 0)});
    auto t = compute_win_loss(dawson, uniform_box(5, 3), 100);
    REQUIRE_FALSE(t.exact);
    REQUIRE_FALSE(t.unknown().empty());
    REQUIRE_FALSE(check_defining_conditions(dawson, t));
    REQUIRE(t.status({1, 0, 0, 0, 0}) == Status::winning);
    REQUIRE(t.status({0, 0, 0, 1, 0}) == Status::losing);
}

TEST_CASE("Grundy values agree with W")
{
    auto g = nim_game(3);
    auto t = compute_win_loss(g, uniform_box(3, 8));
    auto G = grundy_values(g, uniform_box(3, 8));
    for (auto& p : box_positions(uniform_box(3, 8))) {
        REQUIRE(G.at(p) >= 0);
        REQUIRE((G.at(p) == 0) == (t.status(p) == Status::winning));
        REQUIRE(G.at(p) == nim_sum_of(p));
    }
    REQUIRE(G.at({0, 0, 1}) == 3);
    REQUIRE_THROWS_AS(grundy_values(nim_game(2, true), uniform_box(2, 3)), misere_unsupported);
}

TEST_CASE("the 3-7-4 position")
{
    auto g = nim_game(7);
    Exponent p{0, 0, 1, 1, 0, 0, 1};
    REQUIRE(position_status(g, p) == Status::winning);
    REQUIRE(nim_sum_of(p) == 0);
    auto t = compute_win_loss(g, p);
    REQUIRE_FALSE(winning_move(g, t, p));
    // every move away has a reply back
    for (auto& m : g.rules.gamma) {
        Exponent q = p - m;
        if (!g.on_board(q))
            continue;
        auto tq = compute_win_loss(g, q);
        auto reply = winning_move(g, tq, q);
        REQUIRE(reply);
        REQUIRE(nim_sum_of(q - *reply) == 0);
    }
}

TEST_CASE("squarefree closed form")
{
    auto s = squarefree_solve(nim_game(2));
    REQUIRE(s.W0 == std::vector<Exponent>{{0, 0}});
    REQUIRE(s.strategy.str() == "1/((1-a^2)(1-b^2))");

    auto s3 = squarefree_solve(nim_game(3));
    for (auto& w : s3.W0)
        REQUIRE(nim_sum_of(w) == 0);
    auto t3 = compute_win_loss(nim_game(3), uniform_box(3, 4));
    REQUIRE(verify_stratification(s3.stratification, nim_game(3), t3).equal);

    auto one = squarefree_solve(LatticeGame(explicit_rules(1, {{1}})));
    REQUIRE(one.W0 == std::vector<Exponent>{{0}});

    REQUIRE_THROWS_AS(squarefree_solve(nim_game(2, true)), misere_unsupported);
    REQUIRE_THROWS_AS(squarefree_solve(LatticeGame(explicit_rules(1, {{2}, {1}}))), not_squarefree);
}

TEST_CASE("stratifications and rational strategies")
{
    auto g = nim_game(2, true);
    auto t = compute_win_loss(g, uniform_box(2, 8));
    AffineStratification s{{{{1, 0}, {{2, 0}}}, {{0, 2}, {{2, 0}, {0, 2}}}}};
    REQUIRE(verify_stratification(s, g, t).equal);

    auto r = rational_strategy(s);
    REQUIRE(r.terms.size() == 2);
    REQUIRE(r.terms[0].numerator == Exponent{1, 0});
    REQUIRE(r.terms[0].denominators == std::vector<Exponent>{{2, 0}});
    REQUIRE(r.terms[1].numerator == Exponent{0, 2});
    REQUIRE(r.terms[1].denominators == std::vector<Exponent>{{2, 0}, {0, 2}});
    REQUIRE(r.str() == "a/(1-a^2) + b^2/((1-a^2)(1-b^2))");
    for (auto& p : box_positions(uniform_box(2, 8)))
        REQUIRE((r.coefficient(p) == 1) == (t.status(p) == Status::winning));

    auto normal = compute_win_loss(nim_game(2), uniform_box(2, 8));
    AffineStratification even{{{{0, 0}, {{2, 0}, {0, 2}}}}};
    REQUIRE(verify_stratification(even, nim_game(2), normal).equal);

    auto empty = verify_stratification({}, nim_game(2), normal);
    REQUIRE_FALSE(empty.equal);
    REQUIRE(*empty.mismatch == Exponent{0, 0});

    AffineStratification line{{{{0}, {{3}}}}};
    REQUIRE(rational_strategy(line).str() == "1/(1-a^3)");
    AffineStratification overlap{{{{0}, {{1}}}, {{2}, {{2}}}}};
    REQUIRE_THROWS_AS(rational_strategy(overlap), not_disjoint);
    AffineStratification dep{{{{0, 0}, {{1, 1}, {2, 2}}}}};
    REQUIRE_THROWS_AS(rational_strategy(dep), not_free);
}

TEST_CASE("winning moves")
{
    auto g = nim_game(2, true);
    auto t = compute_win_loss(g, uniform_box(2, 6));
    REQUIRE(*winning_move(g, t, {0, 1}) == Exponent{-1, 1});
    REQUIRE_FALSE(winning_move(g, t, {1, 0}));
    REQUIRE_THROWS_AS(winning_move(g, t, {0, 0}), invariant_violation);
    AffineStratification s{{{{1, 0}, {{2, 0}}}, {{0, 2}, {{2, 0}, {0, 2}}}}};
    REQUIRE(*winning_move(g, s, {0, 1}) == Exponent{-1, 1});
    auto m = winning_move(g, s, {5, 3});
    REQUIRE(m);
    REQUIRE(s.contains(Exponent{5, 3} - *m));
}

TEST_CASE("misere quotient of nim2")
{
    auto q = misere_quotient(nim_game(2, true), 12);
    REQUIRE(q.finite);
    REQUIRE(q.size() == 6);
    int a = q.element_of({1, 0}), b = q.element_of({0, 1});
    REQUIRE(q.multiply(a, a) == q.identity);
    REQUIRE(q.multiply(b, q.multiply(b, b)) == b);
    REQUIRE(q.multiply(b, b) != b);
    REQUIRE(q.associative());
    REQUIRE(q.commutative());
}

TEST_CASE("small quotients")
{
    auto z2 = misere_quotient(LatticeGame(explicit_rules(1, {{1}})), 8);
    REQUIRE(z2.finite);
    REQUIRE(z2.size() == 2);
    int x = z2.element_of({1});
    REQUIRE(z2.multiply(x, x) == z2.identity);

    auto sq = misere_quotient(nim_game(3), 6);
    REQUIRE(sq.finite);
    REQUIRE(sq.size() <= 8);
}

TEST_CASE("Dawson tables satisfy the defining conditions")
{
    LatticeGame dawson(octal_rules(".137", 7), {Exponent(7, 0)});
    auto t = compute_win_loss(dawson, uniform_box(7, 4));
    REQUIRE_FALSE(check_defining_conditions(dawson, t));
    // a single 1-, 2- or 3-heap: the only move reaches the defeated position
    REQUIRE(t.status({1, 0, 0, 0, 0, 0, 0}) == Status::winning);
    LatticeGame normal(octal_rules(".137", 7));
    auto tn = compute_win_loss(normal, uniform_box(7, 2));
    auto G = grundy_values(normal, uniform_box(7, 2));
    std::size_t certified = 0;
    for (auto& p : box_positions(uniform_box(7, 2))) {
        if (G.at(p) < 0 || tn.status(p) == Status::unknown)
            continue;
        ++certified;
        REQUIRE((G.at(p) == 0) == (tn.status(p) == Status::winning));
    }
    REQUIRE(certified > 0);
}
