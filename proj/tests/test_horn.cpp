#include <binom/horn.hpp>

#include <catch_amalgamated.hpp>

using namespace binom;

namespace {

Binomial bin(Exponent u, Exponent v) { return Binomial(std::move(u), std::move(v)); }
Binomial mono(Exponent u) { return Binomial::monomial(std::move(u)); }

const IntegerMatrix B0123{{1, 0}, {-2, 1}, {1, -2}, {0, 1}};
const IntegerMatrix A0123{{1, 1, 1, 1}, {0, 1, 2, 3}};
const IntegerMatrix B1100{{1, 1}, {-1, -1}, {1, 0}, {0, 1}};
const IntegerMatrix A1100{{1, 1, 0, 0}, {0, 1, 1, 1}};

std::vector<Rational> q(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("mixed matrices")
{
    REQUIRE(check_mixed(B0123));
    REQUIRE(check_mixed(B1100));
    REQUIRE_FALSE(check_mixed(IntegerMatrix{{1}, {0}}));
    REQUIRE_FALSE(check_mixed(IntegerMatrix{{1, 0}, {-1, 1}, {0, 0}}));
}

TEST_CASE("lattice basis ideals")
{
    auto I = lattice_basis_ideal(B0123);
    REQUIRE(ideal_equal(I, BinomialIdeal(4, {bin({1, 0, 1, 0}, {0, 2, 0, 0}), bin({0, 1, 0, 1}, {0, 0, 2, 0})})));
    auto J = lattice_basis_ideal(B1100);
    REQUIRE(ideal_equal(J, BinomialIdeal(4, {bin({1, 0, 1, 0}, {0, 1, 0, 0}), bin({1, 0, 0, 1}, {0, 1, 0, 0})})));
    REQUIRE_THROWS_AS(lattice_basis_ideal(IntegerMatrix{{0}, {0}}), invariant_violation);
}

TEST_CASE("canonical grading matrix")
{
    auto A = grading_matrix(B0123);
    REQUIRE(A.rows() == 2);
    auto AB = A * B0123;
    for (std::size_t i = 0; i < AB.rows(); ++i)
        for (std::size_t j = 0; j < AB.cols(); ++j)
            REQUIRE(AB(i, j) == 0);
    REQUIRE(grading_matrix(B0123) == A);
    REQUIRE(Lattice(4, A.row_list()) == Lattice(4, A0123.row_list()));
    REQUIRE_THROWS_AS(HornSystem(B0123, IntegerMatrix{{1, 1, 1, 1}, {0, 1, 2, 4}}), invariant_violation);
}

TEST_CASE("toral and Andean components of 1100")
{
    auto r = toral_andean_analysis(lattice_basis_ideal(B1100), A1100);
    REQUIRE(r.components.size() == 2);
    auto IA = toric_ideal(A1100);
    int toral = 0, andean = 0;
    for (auto& c : r.components) {
        if (c.toral) {
            ++toral;
            REQUIRE(ideal_equal(c.component.ideal, IA));
            for (auto h : c.hilbert)
                REQUIRE(h == 1);
        } else {
            ++andean;
            REQUIRE(ideal_equal(c.component.ideal, BinomialIdeal(4, {mono({1, 0, 0, 0}), mono({0, 1, 0, 0})})));
            // Hilbert function grows along the Andean ray
            for (std::size_t k = 1; k < c.hilbert.size(); ++k)
                REQUIRE(c.hilbert[k] > c.hilbert[k - 1]);
        }
    }
    REQUIRE(toral == 1);
    REQUIRE(andean == 1);
    REQUIRE(r.andean_arrangement.size() == 1);
    auto& axis = r.andean_arrangement[0];
    REQUIRE(axis.dim() == 1);
    REQUIRE(axis.contains(q({0, 5})));
    REQUIRE(axis.contains(q({0, -3})));
    REQUIRE_FALSE(axis.contains(q({1, 1})));
}

TEST_CASE("0123 has only toral primes")
{
    auto r = toral_andean_analysis(lattice_basis_ideal(B0123), A0123);
    REQUIRE(r.components.size() == 2);
    for (auto& c : r.components) {
        REQUIRE(c.toral);
        for (std::size_t k = 1; k < c.hilbert.size(); ++k)
            REQUIRE(c.hilbert[k] == c.hilbert[0]);
    }
    REQUIRE(r.andean_arrangement.empty());
    REQUIRE(toral_andean_analysis(toric_ideal(A0123), A0123).andean_arrangement.empty());
}

TEST_CASE("quasidegrees")
{
    auto axis = quasidegrees(BinomialIdeal(4, {mono({1, 0, 0, 0}), mono({0, 1, 0, 0})}), A1100);
    REQUIRE(axis.size() == 1);
    REQUIRE(axis[0].contains(q({0, 7})));
    REQUIRE_FALSE(axis[0].contains(q({1, 0})));

    auto two = quasidegrees(BinomialIdeal(4, {mono({2, 0, 0, 0}), mono({0, 1, 0, 0})}), A1100);
    REQUIRE(two.size() == 2);
    REQUIRE(two[0].contains(q({0, 0})));
    REQUIRE(two[1].contains(q({1, 4})));

    auto all = quasidegrees(toric_ideal(A1100), A1100);
    REQUIRE(all.size() == 1);
    REQUIRE(all[0].dim() == 2);

    REQUIRE_THROWS_AS(quasidegrees(BinomialIdeal(4, {bin({1, 0, 0, 0}, {0, 0, 1, 0})}), A1100), not_graded);
}

TEST_CASE("arrangement is stable under its own translations")
{
    auto r = toral_andean_analysis(lattice_basis_ideal(B1100), A1100);
    auto& s = r.andean_arrangement[0];
    for (long k = -3; k <= 3; ++k)
        for (int j : s.J) {
            auto p = q({0, 2});
            for (std::size_t i = 0; i < 2; ++i)
                p[i] += Rational(A1100(i, j) * k);
            REQUIRE(s.contains(p));
        }
}

TEST_CASE("generic rank of 0123")
{
    HornSystem sys(B0123, A0123);
    auto r = generic_rank(sys);
    REQUIRE(r.total == 4);
    REQUIRE(r.summands.size() == 2);
    std::set<std::pair<Subset, long>> seen;
    for (auto& s : r.summands) {
        REQUIRE(s.iota == 1);
        REQUIRE(s.mu == 1);
        seen.insert({s.J, s.vol.convert_to<long>()});
    }
    REQUIRE(seen == std::set<std::pair<Subset, long>>{{{0, 1, 2, 3}, 3}, {{0, 3}, 1}});
    REQUIRE(r.full_support == 3);
    REQUIRE(r.finite_support == 1);
}

TEST_CASE("generic rank of 1100 counts the toric summand")
{
    HornSystem sys(B1100, A1100);
    auto r = generic_rank(sys);
    REQUIRE(r.summands.size() == 1);
    REQUIRE(r.summands[0].J == Subset{0, 1, 2, 3});
    REQUIRE(r.summands[0].vol == 2);
    REQUIRE(r.total == 2);
    REQUIRE_THROWS_AS(generic_rank(HornSystem(IntegerMatrix{{1}, {0}}, IntegerMatrix{{0, 1}})), not_mixed);
}

TEST_CASE("rank is invariant under column operations")
{
    // swap columns and replace b2 by b1 + b2
    IntegerMatrix B{{1, 1}, {-1, -2}, {-1, 1}, {1, 0}};
    HornSystem sys(B, A0123);
    REQUIRE(generic_rank(sys).total == 4);
}

TEST_CASE("finite rank test")
{
    HornSystem h(B1100, A1100);
    REQUIRE_FALSE(finite_rank_test(h, q({0, 5})));
    REQUIRE(finite_rank_test(h, q({1, 1})));
    HornSystem z(B0123, A0123);
    REQUIRE(finite_rank_test(z, q({0, 0})));
    REQUIRE(finite_rank_test(z, q({2, 7})));
}

TEST_CASE("Euler operators")
{
    HornSystem h(B1100, A1100, q({1, 2}));
    auto e = h.euler_operators();
    REQUIRE(e == std::vector<std::string>{"x1d1 + x2d2 - 1", "x2d2 + x3d3 + x4d4 - 2"});
}
