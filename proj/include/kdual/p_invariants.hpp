#pragma once

// p-local invariants of finite abelian groups: exponent multisets, the
// interleaving conditions (*) and (**), constructive normal forms of single
// elements of G and of G + Z, the closed-form quotients they predict, and the
// automorphism-existence criterion built on them.

#include <optional>
#include <vector>

#include "kdual/fga.hpp"

namespace kdual {

/// Multiset I(G(p)) of exponents of the p-part, kept sorted ascending.
struct PExponentProfile {
  Int p;
  std::vector<unsigned> exponents;

  std::size_t length() const noexcept { return exponents.size(); }
  /// Largest exponent, 0 for the trivial profile.
  unsigned max_exp() const noexcept { return exponents.empty() ? 0 : exponents.back(); }

  bool operator==(const PExponentProfile&) const = default;
};

enum class NormalFormMode {
  Finite,              // g in G, g != 0
  Augmented,           // (g, p^l) in G + Z, not equivalent to (0, p^l)
  AugmentedReducible,  // (g, p^l) equivalent to (0, p^l)
};

/// An automorphism given by the images of the canonical generators.
/// In augmented mode every vector has one extra trailing coordinate for Z.
struct GeneratorImages {
  std::vector<std::vector<Int>> images;
  /// The normalized element, in the same coordinates.
  std::vector<Int> normalized;
};

/// Normal-form data of an element: untouched factor exponents n_j, pivot
/// exponents k_1 < ... < k_s and order exponents r_1 < ... < r_s. The element
/// is equivalent to 0 on the untouched factors and p^{k_i - r_i} on the pivots.
struct NormalFormData {
  Int p;
  unsigned l = 0;
  std::vector<unsigned> untouched;
  std::vector<unsigned> k;
  std::vector<unsigned> r;
  NormalFormMode mode = NormalFormMode::Finite;
  std::optional<GeneratorImages> witness;

  /// All exponents {n_j} + {k_i}, sorted.
  std::vector<unsigned> exponents() const;
  /// Checks the ordering invariants of the mode.
  bool invariants_hold() const;
};

FgaGroup primary_part(const FgaGroup& g, const Int& p);
PExponentProfile invariant_I(const FgaGroup& g, const Int& p);

/// Min-multiplicity multiset intersection. Throws DomainError on prime mismatch.
PExponentProfile i_intersect(const PExponentProfile& a, const PExponentProfile& b);
/// a \ (a ∩ b).
PExponentProfile i_difference(const PExponentProfile& a, const PExponentProfile& b);

bool satisfies_star(const FgaGroup& g, const FgaGroup& h, const Int& p);
bool satisfies_star_star(const FgaGroup& g, const FgaGroup& h, const Int& p);

/// Normal form of a nonzero element of a finite p-group (FINITE mode), with the
/// witnessing automorphism. Throws DomainError if e = 0 or G is not a p-group.
NormalFormData g1_normal_form(const FgaGroup& g, const GroupElement& e, const Int& p);

/// Normal form of (e, p^l) in G + Z. Throws DomainError if G is not a finite p-group.
NormalFormData g3_normal_form(const FgaGroup& g, const GroupElement& e, unsigned l, const Int& p);

/// G / <g> predicted from FINITE-mode data.
FgaGroup g2_quotient_closed_form(const NormalFormData& d);

struct AugmentedQuotient {
  FgaGroup q;
  GroupElement t_tilde;  // q / <t_tilde> is isomorphic to G
};

/// (G + Z) / <(g, p^l)> and its distinguished element, from AUGMENTED or
/// AUGMENTED_REDUCIBLE data.
AugmentedQuotient g4_quotient_closed_form(const NormalFormData& d);

/// The element p^{k_i - r_i} on pivot factors, 0 elsewhere, in canonical
/// coordinates of the p-group with exponent multiset d.exponents().
GroupElement normal_form_element(const NormalFormData& d);

/// Every admissible normal-form datum for a p-group with the given sorted
/// exponents: FINITE mode when `augment_l` is empty, otherwise AUGMENTED data
/// with that l plus the single reducible datum.
std::vector<NormalFormData> normal_form_shapes(const Int& p, const std::vector<unsigned>& exponents,
                                               std::optional<unsigned> augment_l);

/// Whether some automorphism of G sends e1 to e2. Decided by comparing the
/// p-local closed-form quotients prime by prime after reducing the free part.
bool aut_sends(const FgaGroup& g, const GroupElement& e1, const GroupElement& e2);

/// Extended-gcd unimodular reduction of an integer vector v to (content, 0, ..., 0).
/// Returns D with D * v = (n, 0, ..., 0), n = gcd(v) >= 0, det D = +-1.
IntMatrix reduce_free_vector(const std::vector<Int>& v);

}  // namespace kdual
