#include <binom/congruence.hpp>

#include <catch_amalgamated.hpp>

#include <set>

using namespace binom;

namespace {

Binomial bin(Exponent u, Exponent v, long c = 1) { return Binomial(std::move(u), std::move(v), Scalar(c)); }
Binomial mono(Exponent u) { return Binomial::monomial(std::move(u)); }

std::set<std::vector<Exponent>> as_set(const CongruenceClasses& C)
{
    return {C.classes.begin(), C.classes.end()};
}

}  // namespace

TEST_CASE("classes of x^2 - xy, xy - y^2")
{
    BinomialIdeal I(2, {bin({2, 0}, {1, 1}), bin({1, 1}, {0, 2})});
    auto C = congruence_classes(I, {4, 4});
    std::set<std::vector<Exponent>> expect{{{0, 0}}, {{1, 0}}, {{0, 1}}};
    for (int k = 2; k <= 8; ++k) {
        std::vector<Exponent> diag;
        for (int a = 0; a <= 4; ++a)
            if (k - a >= 0 && k - a <= 4)
                diag.push_back({a, k - a});
        std::sort(diag.begin(), diag.end());
        expect.insert(diag);
    }
    REQUIRE(as_set(C) == expect);
    REQUIRE(C.monomial_class.empty());
    REQUIRE(*C.scalar({2, 0}, {0, 2}) == Scalar(1));
}

TEST_CASE("zero ideal has singleton classes")
{
    auto C = congruence_classes(BinomialIdeal(2), {3, 3});
    REQUIRE(C.classes.size() == 16);
}

TEST_CASE("localizing xz - yz")
{
    BinomialIdeal I(3, {bin({1, 0, 1}, {0, 1, 1})});
    auto plain = congruence_classes(I, {3, 3, 2});
    REQUIRE(plain.same_class({1, 0, 1}, {0, 1, 1}));
    REQUIRE(plain.same_class({3, 0, 2}, {0, 3, 2}));
    REQUIRE_FALSE(plain.same_class({1, 0, 0}, {0, 1, 0}));
    // inverting x and y keeps every positive height joined along antidiagonals
    auto xy = congruence_classes(I, {3, 3, 2}, Subset{0, 1});
    REQUIRE(as_set(xy) == as_set(plain));
    // inverting z joins height 0 as well
    auto z = congruence_classes(I, {3, 3, 2}, Subset{2});
    REQUIRE(z.same_class({1, 0, 0}, {0, 1, 0}));
    REQUIRE(z.classes.size() == 7 * 3);
}

TEST_CASE("scalars along classes")
{
    BinomialIdeal I(2, {bin({1, 0}, {0, 1}, 3)});  // x = 3y
    auto C = congruence_classes(I, {3, 3});
    REQUIRE(*C.scalar({2, 0}, {0, 2}) == Scalar(9));
    REQUIRE(*C.scalar({1, 1}, {0, 2}) == Scalar(3));
}

TEST_CASE("boundedness after localization")
{
    // <x - y>, invert x: rays to the northwest
    auto r = class_boundedness(BinomialIdeal(2, {bin({1, 0}, {0, 1})}), {1, 0}, {0});
    REQUIRE(r.kind == Boundedness::Kind::unbounded);
    REQUIRE(r.pump[1] > 0);
    REQUIRE(r.pump[0] == -r.pump[1]);

    auto z = class_boundedness(BinomialIdeal(3), {1, 2, 0}, {2});
    REQUIRE(z.kind == Boundedness::Kind::bounded);
    REQUIRE(z.stabilizer.rank() == 0);

    // <x - y, x^2>, invert z: pairs
    BinomialIdeal P(3, {bin({1, 0, 0}, {0, 1, 0}), mono({2, 0, 0})});
    auto p = class_boundedness(P, {1, 0, 0}, {2});
    REQUIRE(p.kind == Boundedness::Kind::bounded);
    REQUIRE(p.stabilizer.rank() == 0);
    REQUIRE(p.states == std::vector<Exponent>{{0, 1}, {1, 0}});
    REQUIRE(class_boundedness(P, {1, 1, 0}, {2}).kind == Boundedness::Kind::monomial);

    // <xz - yz>, invert x and y: heights >= 1 become cosets of the line x = -y
    BinomialIdeal F(3, {bin({1, 0, 1}, {0, 1, 1})});
    REQUIRE(class_boundedness(F, {1, 0, 0}, {0, 1}).is_bounded());
    auto h = class_boundedness(F, {1, 0, 1}, {0, 1});
    REQUIRE(h.is_bounded());
    REQUIRE(h.stabilizer == Lattice(3, {{1, -1, 0}}));
    // inverting z instead: x ~ y on every positive height and the stabilizer is trivial
    auto fz = class_boundedness(F, {1, 0, 1}, {2});
    REQUIRE(fz.is_bounded());
    REQUIRE(fz.states.size() == 2);
}

TEST_CASE("stabilizers pick up lattice cycles")
{
    // x^2 - 1 in one variable, J = {x}: stabilizer 2Z
    auto r = class_boundedness(BinomialIdeal(1, {bin({2}, {0})}), {0}, {0});
    REQUIRE(r.is_bounded());
    REQUIRE(r.stabilizer == Lattice(1, {{2}}));
}

TEST_CASE("graded truncation comparison")
{
    BinomialIdeal I(2, {bin({2, 0}, {1, 1}), bin({1, 1}, {0, 2})});
    BinomialIdeal M(2, {mono({2, 0}), mono({1, 1}), mono({0, 2})});
    BinomialIdeal P(2, {bin({1, 0}, {0, 1})});
    REQUIRE(graded_truncation_compare(I, {M, P}, 6).kind == TruncationVerdict::Kind::equal);
    REQUIRE(graded_truncation_compare(I, {I}, 4).kind == TruncationVerdict::Kind::equal);

    BinomialIdeal X(1, {mono({1})}), X2(1, {mono({2})});
    auto v = graded_truncation_compare(X, {X2}, 3);
    REQUIRE(v.kind == TruncationVerdict::Kind::incomparable);
    REQUIRE(v.witness_text == "x");

    auto s = graded_truncation_compare(X2, {X}, 3);
    REQUIRE(s.kind == TruncationVerdict::Kind::lhs_strictly_smaller);
    REQUIRE(s.witness_text == "x");

    // dropping the embedded component is detected
    REQUIRE(graded_truncation_compare(I, {P}, 6).kind == TruncationVerdict::Kind::lhs_strictly_smaller);
}
