#include <gtest/gtest.h>

#include <set>

#include "kdual/brute_force.hpp"
#include "kdual/catalog.hpp"
#include "kdual/literal.hpp"
#include "kdual/p_invariants.hpp"

using namespace kdual;

namespace {

FgaGroup G(const char* s) { return parse_group(s); }

std::set<std::string> rendered(const std::vector<FgaGroup>& gs) {
  std::set<std::string> out;
  for (const FgaGroup& g : gs) out.insert(g.to_string());
  return out;
}

}  // namespace

TEST(Bounds, DefaultsAndParsing) {
  const CatalogBounds d;
  EXPECT_EQ(d.primes, (std::vector<Int>{2, 3}));
  EXPECT_EQ(d.max_exponent, 3u);
  EXPECT_EQ(d.max_factors_per_prime, 2u);
  EXPECT_EQ(d.max_free_rank, 2u);
  EXPECT_EQ(d.max_unit_content, 4u);

  const CatalogBounds b = CatalogBounds::parse(" primes = 5,2 ; exp=4;rank=0; order=64 ");
  EXPECT_EQ(b.primes, (std::vector<Int>{2, 5}));
  EXPECT_EQ(b.max_exponent, 4u);
  EXPECT_EQ(b.max_free_rank, 0u);
  EXPECT_EQ(b.max_order, 64);
  EXPECT_EQ(b.max_factors_per_prime, 2u);
  EXPECT_EQ(CatalogBounds::parse(b.to_string()).to_string(), b.to_string());

  for (const char* bad : {"primes=4", "exp", "exp=-1", "size=3", "primes=", "rank=x"})
    EXPECT_THROW(CatalogBounds::parse(bad), ParseError) << bad;
}

TEST(Groups, Examples) {
  EXPECT_EQ(rendered(enumerate_groups(CatalogBounds::parse("primes=2;exp=1;factors=1;rank=0"))),
            (std::set<std::string>{"0", "Z/2"}));
  const auto six = enumerate_groups(CatalogBounds::parse("primes=2;exp=2;factors=2;rank=0"));
  EXPECT_EQ(rendered(six), (std::set<std::string>{"0", "Z/2", "Z/4", "Z/2 + Z/2", "Z/2 + Z/4", "Z/4 + Z/4"}));
  const auto twelve = enumerate_groups(CatalogBounds::parse("primes=2;exp=2;factors=2;rank=1"));
  EXPECT_EQ(twelve.size(), 12u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(twelve[i + 6], direct_sum(twelve[i], G("Z")));
}

TEST(Groups, DefaultCatalogHasNoDuplicates) {
  const auto gs = enumerate_groups(CatalogBounds{});
  // 10 exponent multisets per prime, two primes, three ranks.
  EXPECT_EQ(gs.size(), 300u);
  EXPECT_EQ(std::set<FgaGroup>(gs.begin(), gs.end()).size(), gs.size());
  EXPECT_EQ(enumerate_groups(CatalogBounds{}), gs);
}

TEST(Groups, OrderBoundsFilter) {
  for (const FgaGroup& g : enumerate_groups(CatalogBounds::parse("primes=2,3,5;exp=6;factors=6;rank=0;order=64")))
    EXPECT_LE(g.torsion_order(), 64);
  for (const FgaGroup& g : enumerate_groups(CatalogBounds::parse("primes=2,3;exp=5;factors=6;rank=0;logorder=6")))
    for (const auto& c : g.torsion()) {
      unsigned sum = 0;
      for (unsigned e : c.exponents) sum += e;
      EXPECT_LE(sum, 6u);
    }
}

TEST(Units, Examples) {
  const CatalogBounds b;
  EXPECT_EQ(unit_transversal(G("Z/2"), b).size(), 2u);
  const auto z4 = unit_transversal(G("Z/4"), b);
  ASSERT_EQ(z4.size(), 3u);
  EXPECT_EQ(z4[0], GroupElement(G("Z/4"), {0}, {}));
  EXPECT_EQ(z4[1], GroupElement(G("Z/4"), {1}, {}));
  EXPECT_EQ(z4[2], GroupElement(G("Z/4"), {2}, {}));
  const auto z = unit_transversal(G("Z"), b);
  ASSERT_EQ(z.size(), 5u);
  for (long c = 0; c <= 4; ++c) EXPECT_EQ(z[static_cast<std::size_t>(c)], GroupElement(G("Z"), {}, {c}));
  EXPECT_EQ(TripleCatalog(CatalogBounds::parse("primes=2;exp=1;factors=1;rank=0")).size(), 3u * 2u);
}

TEST(Units, OneRepresentativePerOrbitOnFiniteGroups) {
  const CatalogBounds b = CatalogBounds::parse("primes=2,3;exp=3;factors=2;rank=0");
  for (const FgaGroup& g : enumerate_groups(b)) {
    if (g.torsion_order() > 300) continue;
    const auto units = unit_transversal(g, b);
    const auto orbit = automorphism_orbits(g);
    std::set<std::size_t> ids(orbit.begin(), orbit.end());
    EXPECT_EQ(units.size(), ids.size()) << g.to_string();
    for (std::size_t i = 0; i < units.size(); ++i)
      for (std::size_t j = i + 1; j < units.size(); ++j) EXPECT_FALSE(brute_force_aut(g, units[i], units[j], 0));
  }
}

TEST(Units, CoverEveryBoundedElementWithFreePart) {
  const CatalogBounds b;
  for (const char* s : {"Z + Z/4", "Z^2 + Z/2", "Z + Z/2 + Z/3", "Z^2 + Z/2 + Z/2"}) {
    const FgaGroup g = G(s);
    const auto units = unit_transversal(g, b);
    for (long f0 = -3; f0 <= 3; ++f0)
      for (long f1 = -3; f1 <= 3; ++f1) {
        std::vector<Int> free{f0};
        if (g.free_rank() == 2) free.push_back(f1);
        else if (f1 != 0) continue;
        for (const GroupElement& t : all_elements(g.torsion_subgroup())) {
          const GroupElement e(g, t.torsion_coords(), free);
          std::size_t hits = 0;
          for (const GroupElement& u : units) hits += aut_sends(g, e, u) ? 1 : 0;
          EXPECT_EQ(hits, 1u) << s << " " << e.to_string();
        }
      }
  }
}

TEST(Triples, IndexingIsDeterministic) {
  const CatalogBounds b = CatalogBounds::parse("primes=2;exp=2;factors=1;rank=1");
  const TripleCatalog cat(b);
  const auto all = enumerate_triples(b);
  ASSERT_EQ(all.size(), cat.size());
  EXPECT_EQ(cat.size(), cat.pointed_count() * cat.groups().size());
  for (std::uint64_t i = 0; i < cat.size(); ++i) EXPECT_EQ(all[static_cast<std::size_t>(i)], cat.triple(i));
  EXPECT_EQ(enumerate_triples(b), all);
}
