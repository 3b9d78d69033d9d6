#pragma once

// K-invariant calculus for unital Kirchberg algebras satisfying the UCT, where
// an algebra is represented by its pointed triple (K_0, [1]_0, K_1).

#include <string>

#include "kdual/fga.hpp"

namespace kdual {

struct KPair {
  FgaGroup k0;
  FgaGroup k1;

  bool operator==(const KPair&) const = default;
};

class KTriple {
 public:
  KTriple() : unit_(GroupElement::zero(FgaGroup())) {}
  /// Throws DomainError if `unit` does not live in `k0`.
  KTriple(FgaGroup k0, GroupElement unit, FgaGroup k1);

  const KPair& pair() const noexcept { return pair_; }
  const FgaGroup& k0() const noexcept { return pair_.k0; }
  const FgaGroup& k1() const noexcept { return pair_.k1; }
  const GroupElement& unit() const noexcept { return unit_; }

  /// "(K0, unit, K1)" using the literal grammar.
  std::string to_string() const;

  bool operator==(const KTriple&) const = default;

 private:
  KPair pair_;
  GroupElement unit_;
};

/// pi_odd = pi_i(Aut A) for odd i >= 1, pi_even for even i >= 2.
struct HomotopyProfile {
  FgaGroup pi_odd;
  FgaGroup pi_even;

  bool operator==(const HomotopyProfile&) const = default;
  bool operator<(const HomotopyProfile& rhs) const;
};

struct HomotopyProfileHash {
  std::size_t operator()(const HomotopyProfile& h) const noexcept;
};

enum class ClassifyVerdict { Isomorphic, Reciprocal, Distinct };

std::string to_string(ClassifyVerdict v);

/// K-groups of the mapping cone of the unit: K_1(C) = K_0 / <u>, and
/// K_0(C) = K_1 + Z when u has finite order, K_1 otherwise.
KPair cone_k(const KTriple& t);

/// Spanier-Whitehead dual: free ranks stay in degree, torsion swaps degree.
KPair sw_dual_pair(const KPair& p);

/// Z/2-graded Kunneth formula.
KPair kunneth_pair(const KPair& a, const KPair& b);

/// An element u of g with g / <u> isomorphic to `target`. Constructive from
/// normal-form shapes with an exhaustive fallback; throws DomainError when the
/// free ranks are incompatible and std::logic_error if no witness exists.
GroupElement find_unit(const FgaGroup& g, const FgaGroup& target);

/// The reciprocal partner B of t.
KTriple reciprocal(const KTriple& t);

/// Homotopy groups of Aut(A) as K_*(A (x) D(C_u)).
HomotopyProfile aut_homotopy(const KTriple& t);

/// The same groups assembled prime by prime from the closed-form displays in
/// terms of A_p = K_1(A)(p) + K_0(A)(p) and A~_p = K_1(A)(p) + K_1(C)(p).
HomotopyProfile aut_homotopy_closed_form(const KTriple& t);

/// Isomorphism of triples carrying unit to unit.
bool pointed_isomorphic(const KTriple& a, const KTriple& b);

ClassifyVerdict classify_triples(const KTriple& a, const KTriple& b);

/// The (**) compatibility between K_0(A) and K_1(C_u) at every prime.
bool check_vn(const KTriple& t);

}  // namespace kdual
