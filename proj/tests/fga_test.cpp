#include <gtest/gtest.h>

#include "kdual/brute_force.hpp"
#include "kdual/fga.hpp"
#include "kdual/literal.hpp"
#include "test_support.hpp"

using namespace kdual;
using kdual::testing::Gen;

namespace {

FgaGroup G(const char* s) { return parse_group(s); }

const std::vector<long> kPrimes{2, 3, 5};

}  // namespace

TEST(Canonical, CrtSplitAndOrdering) {
  EXPECT_EQ(FgaGroup::cyclic(6), FgaGroup(0, {{2, {1}}, {3, {1}}}));
  EXPECT_TRUE(is_isomorphic(direct_sum(FgaGroup::cyclic(2), FgaGroup::cyclic(3)), FgaGroup::cyclic(6)));
  EXPECT_FALSE(is_isomorphic(FgaGroup::cyclic(4), direct_sum(FgaGroup::cyclic(2), FgaGroup::cyclic(2))));
  EXPECT_TRUE(is_isomorphic(G("Z + Z/2"), G("Z/2 + Z")));
  EXPECT_EQ(G("Z/12").invariant_factors(), std::vector<Int>{12});
  EXPECT_EQ(G("Z/2 + Z/4 + Z/3").invariant_factors(), (std::vector<Int>{2, 12}));
  EXPECT_THROW(FgaGroup(0, {{4, {1}}}), DomainError);
}

TEST(Presentation, Examples) {
  EXPECT_EQ(from_presentation(IntMatrix{{2, 0}, {0, 3}}), G("Z/6"));
  EXPECT_EQ(from_presentation(IntMatrix{{2, 4}, {6, 8}}), G("Z/2 + Z/4"));
  EXPECT_EQ(from_presentation(IntMatrix(0, 2), 2), FgaGroup::free(2));
  EXPECT_EQ(from_presentation(IntMatrix{{1, 1}}), FgaGroup::free(1));
}

TEST(Presentation, RoundTripAndUnimodularInvariance) {
  Gen gen(21);
  for (int iter = 0; iter < 300; ++iter) {
    const FgaGroup g = gen.group(kPrimes, 4, 3, 2);
    const IntMatrix r = presentation(g);
    EXPECT_EQ(from_presentation(r, g.factor_count() + g.free_rank()), g);
    const std::size_t n = r.cols();
    if (r.rows() == 0 || n == 0) continue;
    const IntMatrix moved = gen.unimodular(r.rows()) * r * gen.unimodular(n);
    EXPECT_EQ(from_presentation(moved, n), g) << g.to_string();
  }
}

TEST(DirectSum, Examples) {
  EXPECT_EQ(direct_sum(G("Z/2"), G("Z/2")), FgaGroup(0, {{2, {1, 1}}}));
  EXPECT_EQ(direct_sum(G("Z"), G("Z/3")), FgaGroup(1, {{3, {1}}}));
  EXPECT_EQ(direct_sum(G("Z/4 + Z/2"), G("Z/8")), FgaGroup(0, {{2, {1, 2, 3}}}));
  EXPECT_EQ(direct_power(G("Z/2"), 0), FgaGroup());
  EXPECT_EQ(direct_power(G("Z + Z/3"), 2), G("Z^2 + Z/3 + Z/3"));
}

TEST(DirectSum, CommutativeAssociativeWithUnit) {
  Gen gen(22);
  for (int iter = 0; iter < 500; ++iter) {
    const FgaGroup a = gen.group(kPrimes, 3, 2, 2), b = gen.group(kPrimes, 3, 2, 2), c = gen.group(kPrimes, 3, 2, 2);
    EXPECT_EQ(direct_sum(a, b), direct_sum(b, a));
    EXPECT_EQ(direct_sum(direct_sum(a, b), c), direct_sum(a, direct_sum(b, c)));
    EXPECT_EQ(direct_sum(a, FgaGroup()), a);
    EXPECT_EQ(direct_sum(a, b).torsion_order(), a.torsion_order() * b.torsion_order());
  }
}

TEST(Quotient, Examples) {
  const FgaGroup g = G("Z/4 + Z/16");
  const GroupElement e(g, {2, 4}, {});
  EXPECT_EQ(quotient_by(g, e), G("Z/2 + Z/8"));
  EXPECT_EQ(quotient_by(g, e), kdual::testing::quotient_by_counting(g, e));
  EXPECT_EQ(quotient_by(g, e).torsion_order(), 64 / 4);
  EXPECT_EQ(quotient_by(g, GroupElement::zero(g)), g);
  EXPECT_EQ(quotient_by(G("Z"), GroupElement(G("Z"), {}, {2})), G("Z/2"));
  EXPECT_EQ(quotient_by(G("Z^2"), std::vector<GroupElement>{}), G("Z^2"));
  EXPECT_THROW(quotient_by(G("Z/2"), GroupElement::zero(G("Z/4"))), DomainError);
}

TEST(Quotient, MatchesCountingOracleOnFiniteGroups) {
  Gen gen(23);
  for (int iter = 0; iter < 300; ++iter) {
    const FgaGroup g = gen.group({2, 3}, 3, 3, 0);
    if (g.torsion_order() > 512) continue;
    std::vector<GroupElement> gens;
    for (long k = gen.range(1, 2); k > 0; --k) gens.push_back(gen.element(g));
    EXPECT_EQ(quotient_by(g, gens), kdual::testing::quotient_by_counting(g, gens)) << g.to_string();
  }
}

TEST(Quotient, OrderIdentity) {
  Gen gen(24);
  for (int iter = 0; iter < 500; ++iter) {
    const FgaGroup g = gen.group(kPrimes, 4, 3, 0);
    const GroupElement e = gen.element(g);
    EXPECT_EQ(quotient_by(g, e).torsion_order() * *element_order(e), g.torsion_order());
  }
}

TEST(Quotient, FreeRankDropsForInfiniteOrder) {
  Gen gen(25);
  for (int iter = 0; iter < 300; ++iter) {
    const FgaGroup g = gen.group(kPrimes, 3, 2, 3);
    const GroupElement e = gen.element(g);
    const FgaGroup q = quotient_by(g, e);
    EXPECT_EQ(q.free_rank() + (e.has_finite_order() ? 0 : 1), g.free_rank());
  }
}

TEST(ElementOrder, Examples) {
  const FgaGroup g = G("Z/4 + Z/16");
  EXPECT_EQ(element_order(GroupElement(g, {2, 4}, {})), Int(4));
  EXPECT_EQ(element_order(GroupElement::zero(g)), Int(1));
  EXPECT_FALSE(element_order(GroupElement(G("Z/2 + Z"), {1}, {1})).has_value());
}

TEST(ElementOrder, LcmOfFactorOrders) {
  Gen gen(26);
  for (int iter = 0; iter < 500; ++iter) {
    const FgaGroup g = gen.group(kPrimes, 4, 3, 0);
    const GroupElement e = gen.element(g);
    Int expected = 1;
    const auto mods = g.moduli();
    for (std::size_t i = 0; i < mods.size(); ++i) {
      const Int o = mods[i] / kdual::testing::gcd(mods[i], e.torsion_coords()[i]);
      mpz_lcm(expected.get_mpz_t(), expected.get_mpz_t(), o.get_mpz_t());
    }
    EXPECT_EQ(element_order(e), expected);
    EXPECT_TRUE(e.scaled(expected).is_zero());
  }
}

TEST(Elements, ArithmeticAndCrtCoordinates) {
  const FgaGroup z6 = G("Z/6");
  const GroupElement five = parse_element("(1,2;)", z6);
  EXPECT_EQ(five.scaled(2), GroupElement(z6, {0, 1}, {}));
  EXPECT_EQ(five + five.scaled(5), GroupElement::zero(z6));
  EXPECT_EQ(-five, GroupElement(z6, {1, 1}, {}));
  EXPECT_EQ(GroupElement(z6, {-1, 5}, {}), GroupElement(z6, {1, 2}, {}));
  const FgaGroup g = G("Z/2 + Z^2");
  EXPECT_EQ(GroupElement(g, {1}, {4, -6}).free_content(), 2);
  EXPECT_THROW(GroupElement(g, {1}, {1}), DomainError);
  EXPECT_THROW(GroupElement(g, {1}, {1, 2}) + GroupElement::zero(z6), DomainError);
}

TEST(Tensor, Examples) {
  EXPECT_EQ(tensor(G("Z/4"), G("Z/6")), G("Z/2"));
  EXPECT_EQ(tensor(G("Z + Z/2"), G("Z/4")), G("Z/4 + Z/2"));
  EXPECT_EQ(tensor(G("Z^2"), G("Z^3")), G("Z^6"));
  EXPECT_EQ(tensor(G("Z/3"), G("Z/2")), FgaGroup());
}

TEST(Tor, Examples) {
  EXPECT_EQ(tor(G("Z/4"), G("Z/6")), G("Z/2"));
  EXPECT_EQ(tor(G("Z/8"), G("Z/4")), G("Z/4"));
  EXPECT_EQ(tor(G("Z"), G("Z/8 + Z^2")), FgaGroup());
}

TEST(Tensor, IdentitiesAndGcdOracle) {
  Gen gen(27);
  for (int iter = 0; iter < 400; ++iter) {
    const FgaGroup a = gen.group(kPrimes, 3, 2, 2), b = gen.group(kPrimes, 3, 2, 2), c = gen.group(kPrimes, 3, 2, 1);
    EXPECT_EQ(tensor(a, G("Z")), a);
    EXPECT_EQ(tor(a, G("Z")), FgaGroup());
    EXPECT_EQ(tensor(a, b), tensor(b, a));
    EXPECT_EQ(tor(a, b), tor(b, a));
    EXPECT_EQ(tensor(a, direct_sum(b, c)), direct_sum(tensor(a, b), tensor(a, c)));
    EXPECT_EQ(tor(a, direct_sum(b, c)), direct_sum(tor(a, b), tor(a, c)));
    EXPECT_EQ(tensor(a, b), kdual::testing::tensor_by_gcd(a, b));
    EXPECT_EQ(tor(a, b), kdual::testing::tor_by_gcd(a, b));
  }
}

TEST(Numbers, FactorizeAndValuation) {
  EXPECT_EQ(factorize(360), (std::vector<std::pair<Int, unsigned>>{{2, 3}, {3, 2}, {5, 1}}));
  EXPECT_EQ(valuation(48, 2), 4u);
  EXPECT_THROW(valuation(0, 3), DomainError);
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(1));
  EXPECT_EQ(ipow(3, 4), 81);
}

TEST(Hashing, EqualGroupsHashEqual) {
  Gen gen(28);
  for (int iter = 0; iter < 200; ++iter) {
    const FgaGroup g = gen.group(kPrimes, 3, 2, 2);
    EXPECT_EQ(FgaGroupHash{}(g), FgaGroupHash{}(parse_group(g.to_string())));
  }
}
