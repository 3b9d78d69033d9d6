#pragma once

// Deterministic enumeration of bounded groups, unit transversals and pointed
// K-triples.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kdual/fga.hpp"
#include "kdual/k_calculus.hpp"

namespace kdual {

struct CatalogBounds {
  std::vector<Int> primes{2, 3};
  unsigned max_exponent = 3;
  unsigned max_factors_per_prime = 2;
  unsigned max_free_rank = 2;
  /// Largest free content of an enumerated unit.
  unsigned max_unit_content = 4;
  /// Bound on the torsion order; 0 means unbounded.
  Int max_order = 0;
  /// Bound on the sum of exponents at each prime; 0 means unbounded.
  unsigned max_log_order = 0;
  /// Largest l in the augmented normal forms (G + Z, (g, p^l)).
  unsigned max_augment_exponent = 4;
  /// Search bound for the quadratic cancellation lemma.
  unsigned ele_bound = 30;

  /// Parses "primes=2,3;exp=3;factors=2;rank=2" over `base`; further keys are
  /// content, order, logorder, aug and ele. Omitted keys keep their value.
  /// Throws ParseError.
  static CatalogBounds parse(std::string_view text, CatalogBounds base);
  static CatalogBounds parse(std::string_view text) { return parse(text, CatalogBounds{}); }

  std::string to_string() const;
};

/// Every canonical group within the bounds exactly once: free rank outermost,
/// then primes in order, each with exponent multisets in lexicographic order.
std::vector<FgaGroup> enumerate_groups(const CatalogBounds& b);

/// One unit per Aut(g)-orbit among the candidates with torsion coordinates in
/// {0, p^j} and free part (c, 0, ..., 0), 0 <= c <= max_unit_content.
std::vector<GroupElement> unit_transversal(const FgaGroup& g, const CatalogBounds& b);

/// The triple catalog: pointed groups (K_0, unit) crossed with K_1 groups.
class TripleCatalog {
 public:
  explicit TripleCatalog(const CatalogBounds& b);

  std::uint64_t size() const noexcept { return static_cast<std::uint64_t>(pointed_.size()) * groups_.size(); }
  KTriple triple(std::uint64_t index) const;

  const std::vector<FgaGroup>& groups() const noexcept { return groups_; }
  std::size_t pointed_count() const noexcept { return pointed_.size(); }

 private:
  std::vector<FgaGroup> groups_;
  std::vector<std::pair<std::size_t, GroupElement>> pointed_;
};

std::vector<KTriple> enumerate_triples(const CatalogBounds& b);

}  // namespace kdual
