#pragma once

// Finitely generated abelian groups in primary-decomposition canonical form,
// their elements, and the exact constructions (quotients, sums, tensor, Tor)
// everything else is built on.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kdual/errors.hpp"
#include "kdual/int_matrix.hpp"

namespace kdual {

/// The p-primary part Z/p^{k_1} + ... + Z/p^{k_t}, exponents ascending.
struct PrimaryComponent {
  Int prime;
  std::vector<unsigned> exponents;

  bool operator==(const PrimaryComponent&) const = default;
};

struct CyclicFactor {
  Int prime;
  unsigned exponent = 0;
  Int modulus;  // prime^exponent
};

/// Z^F + (+)_p G(p). Two values compare equal iff the groups are isomorphic.
class FgaGroup {
 public:
  FgaGroup() = default;
  /// Canonicalizes: merges repeated primes, sorts, drops zero exponents.
  /// Throws DomainError if a listed "prime" is not prime.
  FgaGroup(std::size_t free_rank, std::vector<PrimaryComponent> torsion);

  static FgaGroup free(std::size_t rank) { return FgaGroup(rank, {}); }
  /// Z/n for n >= 1, split into prime powers; n == 0 gives Z.
  static FgaGroup cyclic(const Int& n);
  static FgaGroup prime_power(const Int& p, unsigned k);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<PrimaryComponent>& torsion() const noexcept { return torsion_; }

  /// Number of cyclic torsion factors (the length of an element's torsion coordinates).
  std::size_t factor_count() const noexcept;
  /// Cyclic torsion factors in canonical coordinate order.
  std::vector<CyclicFactor> factors() const;
  std::vector<Int> moduli() const;

  /// The p-component, or nullptr when G(p) = 0.
  const PrimaryComponent* component(const Int& p) const;
  std::vector<Int> primes() const;

  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  bool is_p_group(const Int& p) const;

  /// Order of the torsion subgroup.
  Int torsion_order() const;
  FgaGroup torsion_subgroup() const { return FgaGroup(0, torsion_); }
  /// Exponent (lcm of orders) of the torsion subgroup; 1 if it is trivial.
  Int torsion_exponent() const;

  /// Invariant-factor view d_1 | ... | d_m of the torsion subgroup (display only).
  std::vector<Int> invariant_factors() const;

  /// Literal form, e.g. "Z^2 + Z/8 + Z/3"; the trivial group renders as "0".
  std::string to_string() const;

  bool operator==(const FgaGroup&) const = default;
  bool operator<(const FgaGroup& rhs) const;

 private:
  std::size_t free_rank_ = 0;
  std::vector<PrimaryComponent> torsion_;
};

/// An element in canonical coordinates: one residue per torsion factor, one
/// integer per free generator.
class GroupElement {
 public:
  GroupElement() = default;
  /// Residues are reduced into [0, p^k). Throws DomainError on arity mismatch.
  GroupElement(FgaGroup shape, std::vector<Int> torsion, std::vector<Int> free);

  static GroupElement zero(const FgaGroup& shape);
  /// The i-th canonical generator (torsion generators first, then free).
  static GroupElement generator(const FgaGroup& shape, std::size_t index);

  const FgaGroup& shape() const noexcept { return shape_; }
  const std::vector<Int>& torsion_coords() const noexcept { return torsion_; }
  const std::vector<Int>& free_coords() const noexcept { return free_; }

  bool is_zero() const;
  bool has_finite_order() const;
  /// gcd of the free coordinates (0 for torsion elements).
  Int free_content() const;

  GroupElement operator+(const GroupElement& rhs) const;
  GroupElement operator-() const;
  GroupElement scaled(const Int& factor) const;

  /// "(t1,t2;f1)"
  std::string to_string() const;

  bool operator==(const GroupElement&) const = default;

 private:
  FgaGroup shape_;
  std::vector<Int> torsion_;
  std::vector<Int> free_;
};

Int ipow(const Int& base, unsigned exponent);
/// Largest v with p^v | x; x must be nonzero.
unsigned valuation(const Int& x, const Int& p);
/// Prime factorization n = prod p^e, primes ascending; n >= 1.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);
bool is_prime(const Int& n);

/// Diagonal relation matrix of the canonical presentation (one row per torsion factor).
IntMatrix presentation(const FgaGroup& g);

/// Z^cols / rowspan(relations), canonicalized.
FgaGroup from_presentation(const IntMatrix& relations);
FgaGroup from_presentation(const IntMatrix& relations, std::size_t generators);

bool is_isomorphic(const FgaGroup& g, const FgaGroup& h);
FgaGroup direct_sum(const FgaGroup& g, const FgaGroup& h);
FgaGroup direct_power(const FgaGroup& g, std::size_t copies);

/// The pair (a, b) as an element of direct_sum(a.shape(), b.shape()).
GroupElement direct_sum_element(const GroupElement& a, const GroupElement& b);

/// G / <elems>, by stacking the defining relations of G with the element rows.
FgaGroup quotient_by(const FgaGroup& g, std::span<const GroupElement> elems);
FgaGroup quotient_by(const FgaGroup& g, const GroupElement& elem);

/// Least n >= 1 with n e = 0; std::nullopt when the order is infinite.
std::optional<Int> element_order(const GroupElement& e);

FgaGroup tensor(const FgaGroup& g, const FgaGroup& h);
FgaGroup tor(const FgaGroup& g, const FgaGroup& h);

struct FgaGroupHash {
  std::size_t operator()(const FgaGroup& g) const noexcept;
};

}  // namespace kdual
