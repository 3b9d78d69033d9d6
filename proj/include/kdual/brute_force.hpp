#pragma once

// Exhaustive oracles that avoid the structural shortcuts used by the library:
// automorphism orbits by search over generator images, tensor products from
// Kronecker presentations and Tor groups by counting element orders.

#include <cstdint>
#include <optional>
#include <vector>

#include "kdual/fga.hpp"

namespace kdual {

/// All elements of a finite group in mixed-radix order of the canonical coordinates.
std::vector<GroupElement> all_elements(const FgaGroup& g);

enum class AutSearchOutcome { Found, Exhausted, Inconclusive };

struct AutSearchResult {
  AutSearchOutcome outcome = AutSearchOutcome::Exhausted;
  /// Images of the canonical generators (torsion first, then free) when found.
  std::vector<GroupElement> images;

  bool found() const noexcept { return outcome == AutSearchOutcome::Found; }
};

/// Searches for an automorphism of g sending e1 to e2. Exact for finite g; with
/// a free part the GL(F, Z) block is searched with entries bounded by
/// coeff_bound and a miss is Inconclusive. Throws DomainError for infinite g
/// with coeff_bound == 0.
AutSearchResult brute_force_aut_search(const FgaGroup& g, const GroupElement& e1, const GroupElement& e2,
                                       unsigned coeff_bound);

bool brute_force_aut(const FgaGroup& g, const GroupElement& e1, const GroupElement& e2, unsigned coeff_bound);

/// The Aut(g)-orbit partition of a finite group: orbit id per element index of
/// all_elements(g).
std::vector<std::size_t> automorphism_orbits(const FgaGroup& g);

/// Applies an automorphism given by generator images.
GroupElement apply_images(const std::vector<GroupElement>& images, const GroupElement& x);

/// Counts bijective endomorphisms of a finite group by explicit enumeration of
/// generator images.
std::uint64_t count_automorphisms_enumerated(const FgaGroup& g);

/// |Aut| of a finite abelian group as the product of the p-group formula
/// prod_k (p^{d_k} - p^{k-1}) prod_j (p^{e_j})^{n-d_j} prod_i (p^{e_i-1})^{n-c_i+1}.
Int automorphism_count_formula(const FgaGroup& g);

/// G (x) H as the cokernel of the Kronecker presentation [R_G (x) I ; I (x) R_H].
FgaGroup tensor_oracle(const FgaGroup& g, const FgaGroup& h);

/// Tor(G, H) = (+)_i H[m_i] for G = (+)_i Z/m_i, with each H[m] assembled from
/// element-order counts. Needs a finite torsion subgroup of H small enough to enumerate.
FgaGroup tor_oracle(const FgaGroup& g, const FgaGroup& h);

/// Recovers a finite group from the elements of a subgroup by counting, for
/// every prime p and k, the elements killed by p^k.
FgaGroup group_from_elements(const std::vector<GroupElement>& elems);

}  // namespace kdual
